"""Reader for the plain-text triangle mesh format.

The format is whitespace separated with '#' comments:

    nodes N
    x y            (N lines)
    tris M
    i j k          (M lines, 0-based, counter-clockwise)
    bedges K
    i j            (K lines)
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from utils import GeometryError, WSLogger

logger = WSLogger.get_logger(__name__)

_BLOCKS = (("nodes", 2, float), ("tris", 3, int), ("bedges", 2, int))


def _content_lines(text: str) -> list[tuple[int, list[str]]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split("#", 1)[0].split()
        if fields:
            lines.append((number, fields))
    return lines


def parse_mesh(text: str, origin: str = "<string>") -> tuple[NDArray, NDArray, NDArray]:
    """Parse mesh text into (nodes, triangles, boundary_edges) arrays.

    Args:
        text: File content.
        origin: Name used in diagnostics.

    Returns:
        Tuple (nodes (N, 2), triangles (M, 3), boundary_edges (K, 2)).

    Raises:
        GeometryError: On malformed content; the context names the line.
    """
    lines = _content_lines(text)
    cursor = 0
    arrays = []
    for keyword, width, cast in _BLOCKS:
        if cursor >= len(lines):
            raise GeometryError(f"Missing '{keyword}' block", context={"file": origin})
        number, fields = lines[cursor]
        if len(fields) != 2 or fields[0] != keyword:
            raise GeometryError(f"Expected '{keyword} <count>'", context={"file": origin, "line": number})
        try:
            count = int(fields[1])
        except ValueError as e:
            raise GeometryError(f"Invalid {keyword} count", context={"file": origin, "line": number}) from e
        if count < 0:
            raise GeometryError(f"Negative {keyword} count", context={"file": origin, "line": number})
        rows = lines[cursor + 1 : cursor + 1 + count]
        if len(rows) < count:
            raise GeometryError(
                f"File ends inside the '{keyword}' block",
                context={"file": origin, "expected": count, "found": len(rows)},
            )
        block = []
        for row_number, row in rows:
            if len(row) != width:
                raise GeometryError(
                    f"Expected {width} values per {keyword} line", context={"file": origin, "line": row_number}
                )
            try:
                block.append([cast(v) for v in row])
            except ValueError as e:
                raise GeometryError(f"Invalid {keyword} entry", context={"file": origin, "line": row_number}) from e
        arrays.append(np.array(block, dtype=cast).reshape(count, width))
        cursor += 1 + count

    if cursor < len(lines):
        raise GeometryError(
            "Unexpected content after the 'bedges' block", context={"file": origin, "line": lines[cursor][0]}
        )
    return arrays[0], arrays[1], arrays[2]


def read_mesh(path: Path) -> tuple[NDArray, NDArray, NDArray]:
    """Read a mesh file.

    Raises:
        GeometryError: If the file cannot be read or is malformed.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise GeometryError("Cannot read mesh file", context={"file": str(path)}) from e
    nodes, triangles, edges = parse_mesh(text, str(path))
    logger.debug(f"Read mesh {path}: {len(nodes)} nodes, {len(triangles)} triangles, {len(edges)} boundary edges")
    return nodes, triangles, edges


def mesh_descriptor(path: Path, backend: str | None = None) -> dict:
    """Geometry descriptor of a mesh file for make_cross_section."""
    nodes, triangles, edges = read_mesh(path)
    descriptor = {"kind": "mesh", "nodes": nodes, "triangles": triangles, "boundary_edges": edges}
    if backend:
        descriptor["backend"] = backend
    return descriptor
