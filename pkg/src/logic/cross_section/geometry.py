"""Cross-section construction, mesh validation and structured meshing."""

from __future__ import annotations

import math
from collections.abc import Mapping
from typing import Any

import numpy as np
from numpy.typing import NDArray
from scipy.spatial import Delaunay

from utils import GeometryError, WSLogger

from .models import Backend, CrossSection, SectionKind, TriangleMesh

logger = WSLogger.get_logger(__name__)

DEFAULT_MESH_SIZE = 0.05


def _positive(descriptor: Mapping[str, Any], name: str) -> float:
    value = descriptor.get(name)
    if value is None:
        raise GeometryError(f"Missing dimension '{name}'", context={"descriptor": dict(descriptor)})
    value = float(value)
    if not value > 0.0 or not math.isfinite(value):
        raise GeometryError(
            f"Dimension '{name}' must be positive", context={name: value}
        )
    return value


def make_cross_section(descriptor: Mapping[str, Any]) -> CrossSection:
    """Build a validated cross-section from a geometry descriptor.

    The descriptor is a mapping with a ``kind`` key:
      - ``rectangle`` with ``a`` and ``b`` (domain [0, a] x [0, b]),
      - ``disc`` with ``radius`` (centred at the origin),
      - ``mesh`` with ``nodes``, ``triangles`` and ``boundary_edges``.
    Rectangles and discs default to the analytic backend; ``backend = fem``
    meshes them with mesh size ``h``.

    Args:
        descriptor: Geometry descriptor.

    Returns:
        A validated CrossSection.

    Raises:
        GeometryError: If dimensions or the mesh are invalid.
    """
    try:
        kind = SectionKind(str(descriptor.get("kind", "")).lower())
    except ValueError as e:
        raise GeometryError(
            f"Unknown cross-section kind '{descriptor.get('kind')}'",
            context={"descriptor": dict(descriptor)},
        ) from e

    default_backend = Backend.FEM if kind is SectionKind.MESH else Backend.ANALYTIC
    try:
        backend = Backend(str(descriptor.get("backend") or default_backend.value).lower())
    except ValueError as e:
        raise GeometryError(
            f"Unknown backend '{descriptor.get('backend')}'", context={"kind": kind.value}
        ) from e

    if kind is SectionKind.MESH:
        if backend is Backend.ANALYTIC:
            raise GeometryError("The analytic backend only supports rectangles and discs")
        mesh = validate_mesh(
            descriptor.get("nodes"), descriptor.get("triangles"), descriptor.get("boundary_edges")
        )
        return CrossSection(kind=kind, backend=backend, mesh=mesh)

    h = float(descriptor.get("h") or DEFAULT_MESH_SIZE)
    if kind is SectionKind.RECTANGLE:
        a, b = _positive(descriptor, "a"), _positive(descriptor, "b")
        mesh = rectangle_mesh(a, b, h) if backend is Backend.FEM else None
        cs = CrossSection(kind=kind, backend=backend, a=a, b=b, mesh=mesh,
                          mesh_size=h if mesh is not None else None)
    else:
        radius = _positive(descriptor, "radius")
        mesh = disc_mesh(radius, h) if backend is Backend.FEM else None
        cs = CrossSection(kind=kind, backend=backend, radius=radius, mesh=mesh,
                          mesh_size=h if mesh is not None else None)

    logger.debug(f"Built cross-section {cs}")
    return cs


def validate_mesh(nodes: Any, triangles: Any, boundary_edges: Any) -> TriangleMesh:
    """Check a triangle mesh describes a simply connected polygonal domain.

    Args:
        nodes: Node coordinates, shape (n, 2).
        triangles: Counter-clockwise node triples, shape (m, 3).
        boundary_edges: Boundary node pairs, shape (K, 2).

    Returns:
        The validated TriangleMesh.

    Raises:
        GeometryError: For malformed arrays, non-positive triangles, a
            boundary that is open, self-intersecting, inconsistent with the
            triangles, or made of several loops.
    """
    try:
        nodes = np.asarray(nodes, dtype=float).reshape(-1, 2)
        triangles = np.asarray(triangles, dtype=np.int64).reshape(-1, 3)
        boundary_edges = np.asarray(boundary_edges, dtype=np.int64).reshape(-1, 2)
    except (TypeError, ValueError) as e:
        raise GeometryError("Mesh arrays have the wrong shape") from e

    n = len(nodes)
    if n < 3 or len(triangles) == 0 or len(boundary_edges) < 3:
        raise GeometryError("Mesh needs at least one triangle and a boundary loop")
    if not np.isfinite(nodes).all():
        raise GeometryError("Mesh node coordinates must be finite")
    for name, array in (("triangles", triangles), ("boundary_edges", boundary_edges)):
        if array.min() < 0 or array.max() >= n:
            raise GeometryError(f"Node index out of range in {name}", context={"nodes": n})

    mesh = TriangleMesh(nodes=nodes, triangles=triangles, boundary_edges=boundary_edges)

    areas = mesh.signed_areas
    if (areas <= 0.0).any():
        bad = int(np.argmax(areas <= 0.0))
        raise GeometryError(
            "Triangle has non-positive signed area",
            context={"triangle": bad, "area": float(areas[bad])},
        )

    degree = np.bincount(boundary_edges.ravel(), minlength=n)
    touched = degree[degree > 0]
    if (touched != 2).any():
        raise GeometryError(
            "Boundary edges do not form closed loops",
            context={"bad_nodes": np.flatnonzero((degree > 0) & (degree != 2)).tolist()},
        )

    loops = _count_loops(boundary_edges)
    if loops != 1:
        raise GeometryError(
            "Cross-section is multiply-connected", context={"boundary_loops": loops}
        )

    edges = np.sort(
        np.concatenate([triangles[:, [0, 1]], triangles[:, [1, 2]], triangles[:, [2, 0]]]),
        axis=1,
    )
    unique, counts = np.unique(edges, axis=0, return_counts=True)
    topological = {tuple(e) for e in unique[counts == 1]}
    declared = {tuple(e) for e in np.sort(boundary_edges, axis=1)}
    if topological != declared:
        raise GeometryError(
            "Boundary edges do not match the mesh boundary",
            context={"missing": len(topological - declared), "extra": len(declared - topological)},
        )

    if _self_intersects(nodes, boundary_edges):
        raise GeometryError("Boundary loop is self-intersecting")

    return mesh


def _count_loops(boundary_edges: NDArray[np.int64]) -> int:
    """Count the closed loops of a boundary in which every node has degree 2."""
    neighbours: dict[int, list[int]] = {}
    for i, j in boundary_edges.tolist():
        neighbours.setdefault(i, []).append(j)
        neighbours.setdefault(j, []).append(i)

    unvisited = set(neighbours)
    loops = 0
    while unvisited:
        loops += 1
        stack = [unvisited.pop()]
        while stack:
            for nxt in neighbours[stack.pop()]:
                if nxt in unvisited:
                    unvisited.remove(nxt)
                    stack.append(nxt)
    return loops


def _self_intersects(nodes: NDArray, boundary_edges: NDArray, chunk: int = 512) -> bool:
    """Check whether two non-adjacent boundary segments cross or overlap."""
    p = nodes[boundary_edges[:, 0]]
    q = nodes[boundary_edges[:, 1]]
    scale = np.abs(nodes).max() or 1.0
    eps = 1e-12 * scale * scale

    def orient(a, b, c):
        return (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) - (
            b[..., 1] - a[..., 1]
        ) * (c[..., 0] - a[..., 0])

    lo, hi = np.minimum(p, q), np.maximum(p, q)
    for start in range(0, len(p), chunk):
        pa, qa = p[start : start + chunk, None], q[start : start + chunk, None]
        pb, qb = p[None], q[None]
        d1, d2 = orient(pa, qa, pb), orient(pa, qa, qb)
        d3, d4 = orient(pb, qb, pa), orient(pb, qb, qa)
        proper = (d1 * d2 < -eps * eps) & (d3 * d4 < -eps * eps)

        collinear = (np.abs(d1) <= eps) & (np.abs(d2) <= eps)
        lo_a, hi_a = lo[start : start + chunk, None], hi[start : start + chunk, None]
        overlap = (np.minimum(hi_a, hi[None]) - np.maximum(lo_a, lo[None]) > eps).any(axis=2)

        rows = boundary_edges[start : start + chunk]
        shares = (
            (rows[:, None, 0] == boundary_edges[None, :, 0])
            | (rows[:, None, 0] == boundary_edges[None, :, 1])
            | (rows[:, None, 1] == boundary_edges[None, :, 0])
            | (rows[:, None, 1] == boundary_edges[None, :, 1])
        )
        if ((proper | (collinear & overlap)) & ~shares).any():
            return True
    return False


def rectangle_mesh(a: float, b: float, h: float) -> TriangleMesh:
    """Structured right-triangle mesh of [0, a] x [0, b] with mesh size about h.

    Args:
        a: Width.
        b: Height.
        h: Target edge length.

    Returns:
        A TriangleMesh with a counter-clockwise boundary loop.
    """
    nx, ny = max(1, math.ceil(a / h - 1e-9)), max(1, math.ceil(b / h - 1e-9))
    x = np.linspace(0.0, a, nx + 1)
    y = np.linspace(0.0, b, ny + 1)
    xx, yy = np.meshgrid(x, y, indexing="ij")
    nodes = np.column_stack([xx.ravel(), yy.ravel()])

    def index(i, j):
        return i * (ny + 1) + j

    i, j = np.meshgrid(np.arange(nx), np.arange(ny), indexing="ij")
    i, j = i.ravel(), j.ravel()
    sw, se, ne, nw = index(i, j), index(i + 1, j), index(i + 1, j + 1), index(i, j + 1)
    triangles = np.concatenate([np.column_stack([sw, se, ne]), np.column_stack([sw, ne, nw])])

    loop = (
        [index(i, 0) for i in range(nx)]
        + [index(nx, j) for j in range(ny)]
        + [index(i, ny) for i in range(nx, 0, -1)]
        + [index(0, j) for j in range(ny, 0, -1)]
    )
    boundary_edges = np.column_stack([loop, np.roll(loop, -1)])
    logger.debug(f"Rectangle mesh {nx}x{ny} cells, {len(nodes)} nodes")
    return TriangleMesh(nodes=nodes, triangles=triangles, boundary_edges=boundary_edges)


def disc_mesh(radius: float, h: float) -> TriangleMesh:
    """Ring mesh of the disc of given radius with mesh size about h.

    Nodes sit on concentric rings with roughly h spacing; the convex point
    set is triangulated with a Delaunay triangulation.

    Args:
        radius: Disc radius.
        h: Target edge length.

    Returns:
        A TriangleMesh whose boundary is the outermost ring polygon.
    """
    rings = max(2, math.ceil(radius / h - 1e-9))
    points = [np.zeros((1, 2))]
    for ring in range(1, rings + 1):
        r = radius * ring / rings
        count = max(6, math.ceil(2.0 * np.pi * r / h))
        # staggered start angles avoid co-circular point quadruples
        theta = 2.0 * np.pi * (np.arange(count) + 0.5 * (ring % 2)) / count
        points.append(np.column_stack([r * np.cos(theta), r * np.sin(theta)]))
    nodes = np.concatenate(points)

    triangles = Delaunay(nodes).simplices.astype(np.int64)
    p = nodes[triangles]
    e1, e2 = p[:, 1] - p[:, 0], p[:, 2] - p[:, 0]
    clockwise = e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0] < 0.0
    triangles[clockwise] = triangles[clockwise][:, [0, 2, 1]]

    outer_count = len(points[-1])
    first = len(nodes) - outer_count
    loop = np.arange(first, len(nodes))
    boundary_edges = np.column_stack([loop, np.roll(loop, -1)])
    logger.debug(f"Disc mesh {rings} rings, {len(nodes)} nodes")
    return TriangleMesh(nodes=nodes, triangles=triangles, boundary_edges=boundary_edges)
