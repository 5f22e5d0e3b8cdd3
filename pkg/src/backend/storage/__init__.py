"""Exports, mesh files and geometry presets."""

from .export import (
    ledger_document,
    parse_smatrix,
    read_smatrix,
    render_csv,
    smatrix_document,
    trace_rows,
    write_csv,
    write_json,
)
from .mesh_file import mesh_descriptor, parse_mesh, read_mesh
from .presets import get_preset, load_presets

__all__ = [
    "get_preset",
    "ledger_document",
    "load_presets",
    "mesh_descriptor",
    "parse_mesh",
    "parse_smatrix",
    "read_mesh",
    "read_smatrix",
    "render_csv",
    "smatrix_document",
    "trace_rows",
    "write_csv",
    "write_json",
]
