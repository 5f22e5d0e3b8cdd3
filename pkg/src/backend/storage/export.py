"""Machine-readable exports of scattering matrices, ledgers and tables."""

from __future__ import annotations

import csv
import io
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any, cast

import numpy as np
import orjson

from logic.scattering import ScatteringMatrix
from logic.waves import Channel, Direction, ModeLedger
from utils import ExportError, WSLogger, format_real, round_real

logger = WSLogger.get_logger(__name__)

TRACE_HEADER = ("k", "i", "j", "re", "im")
RESIDUAL_HEADER = ("k", "dimension", "unitarity", "inverse")


def _complex(value: complex, precision: int) -> list[float]:
    return [round_real(value.real, precision), round_real(value.imag, precision)]


def smatrix_document(s: ScatteringMatrix, precision: int) -> dict:
    """The JSON document of a scattering matrix.

    Entries are (re, im) pairs rounded to `precision` significant digits.
    """
    return {
        "k": round_real(s.k, precision),
        "dimension": s.dimension,
        "truncation": s.truncation,
        "rows": [c.as_tuple() for c in s.rows],
        "cols": [c.as_tuple() for c in s.cols],
        "entries": [[_complex(v, precision) for v in row] for row in s.entries],
        "unitarity_residual": round_real(s.unitarity_residual, 3),
        "reciprocity_residual": round_real(s.reciprocity_residual, 3),
        "inverse_residual": None if s.inverse_residual is None else round_real(s.inverse_residual, 3),
        "condition_number": round_real(s.condition_number, 3),
    }


def ledger_document(ledger: ModeLedger, precision: int) -> dict:
    """The JSON document of a mode ledger."""
    ends = []
    for end in ledger.ends:
        ends.append(
            {
                "end": end.end_index,
                "kappa": end.kappa,
                "e_waves": [_wave(w, precision) for w in end.e_waves],
                "gamma_waves": [_wave(w, precision) for w in end.gamma_waves],
                "evanescent": [
                    {
                        "bc": p.bc_origin.value,
                        "mu": round_real(p.mu, precision),
                        "decay": round_real(complex(p.lam).imag, precision),
                    }
                    for p in end.evanescent
                ],
            }
        )
    distance = ledger.threshold_distance
    return {
        "k": round_real(ledger.k, precision),
        "upsilon": ledger.upsilon,
        "t_total": ledger.t_total,
        "threshold_distance": round_real(distance, precision) if np.isfinite(distance) else None,
        "delta": round_real(ledger.delta, precision),
        "ends": ends,
    }


def _wave(wave, precision: int) -> dict:
    return {
        "family": wave.family.value,
        "mode": list(wave.label),
        "lambda": round_real(wave.lam, precision),
        "direction": wave.direction.value,
        "flux": round_real(wave.flux, precision),
    }


def dumps(document: dict) -> bytes:
    """Serialize a document deterministically."""
    return orjson.dumps(document, option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS)


def write_json(document: dict, path: Path) -> Path:
    """Write a JSON document, creating parent directories.

    Raises:
        ExportError: If the file cannot be written.
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(dumps(document))
    except (OSError, TypeError) as e:
        raise ExportError("Failed to write export", context={"path": str(path), "error": str(e)}) from e
    logger.info(f"Wrote {path}")
    return path


def _channel(row: Sequence[Any]) -> Channel:
    end, family, mode, direction = row
    return Channel(int(end), str(family), tuple(int(i) for i in mode), Direction(direction))


def parse_smatrix(data: bytes | str) -> ScatteringMatrix:
    """Re-parse an exported scattering matrix.

    Raises:
        ExportError: If the document is malformed.
    """
    try:
        doc = cast(dict, orjson.loads(data))
        entries = np.array([[complex(re, im) for re, im in row] for row in doc["entries"]], dtype=complex)
        n = int(doc["dimension"])
        return ScatteringMatrix(
            k=float(doc["k"]),
            entries=entries.reshape(n, n),
            rows=tuple(_channel(r) for r in doc["rows"]),
            cols=tuple(_channel(c) for c in doc["cols"]),
            truncation=int(doc["truncation"]),
            condition_number=float(doc["condition_number"]),
            inverse_residual=doc.get("inverse_residual"),
        )
    except (orjson.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise ExportError("Malformed scattering matrix export", context={"error": str(e)}) from e


def read_smatrix(path: Path) -> ScatteringMatrix:
    """Read an exported scattering matrix back.

    Raises:
        ExportError: If the file is missing or malformed.
    """
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise ExportError("Cannot read export", context={"path": str(path)}) from e
    return parse_smatrix(data)


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]], precision: int) -> str:
    """Render rows as CSV; floats use format_real so output is locale independent."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_real(v, precision) if isinstance(v, float) else v for v in row])
    return buffer.getvalue()


def trace_rows(s: ScatteringMatrix) -> list[tuple]:
    """(k, i, j, re, im) for every entry of a matrix."""
    return [
        (float(s.k), i, j, float(v.real), float(v.imag))
        for i, row in enumerate(s.entries)
        for j, v in enumerate(row)
    ]


def write_csv(header: Sequence[str], rows: Iterable[Sequence[Any]], path: Path, precision: int) -> Path:
    """Write a CSV table.

    Raises:
        ExportError: If the file cannot be written.
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(render_csv(header, rows, precision), encoding="utf-8")
    except OSError as e:
        raise ExportError("Failed to write table", context={"path": str(path), "error": str(e)}) from e
    logger.info(f"Wrote {path}")
    return path
