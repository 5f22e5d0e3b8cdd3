"""Parser for the flat `section.key = value` run-config format.

Example:

    # unit square, both spectra
    geometry.kind = rectangle
    geometry.a = 1
    geometry.b = 1
    solve.bc = dirichlet, neumann
    solve.cutoff = 60
    sweep.k_start = 3.5
    sweep.k_end = 4.4
    sweep.samples = 10
    output.format = json
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from backend.config import DEFAULT_MESH_SIZE, DEFAULT_PRECISION, PRECISION_RANGE, PRESETS_PATH
from backend.storage.mesh_file import mesh_descriptor
from backend.storage.presets import get_preset
from logic.cross_section import BoundaryCondition, CrossSection, make_cross_section
from logic.scattering import BLOCKS, DEFAULT_TRUNCATION, SeparableStep, StraightGuide
from utils import ConfigurationError, WSLogger

logger = WSLogger.get_logger(__name__)

_SECTION_KEYS = ("kind", "a", "b", "radius", "mesh", "backend", "h", "preset")

KEYS: dict[str, frozenset[str]] = {
    "geometry": frozenset(_SECTION_KEYS + ("section", "length", "a1", "a2", "offset", "height")),
    "end": frozenset(_SECTION_KEYS),
    "solve": frozenset(("bc", "cutoff", "h", "truncation", "order", "k", "k_max", "block", "evanescent_cutoff")),
    "sweep": frozenset(("k_start", "k_end", "samples", "skip_radius")),
    "output": frozenset(("format", "path", "precision")),
    "source": frozenset(("family", "mode", "center", "width", "amplitude")),
}

FORMATS = ("json", "csv")
SOURCE_FAMILIES = ("TE", "TM", "gradient", "potential_gradient", "evanescent")

_LINE = re.compile(r"^(?P<section>[a-z]+)(?P<index>\d*)\.(?P<key>[a-z_0-9]+)\s*=\s*(?P<value>.*)$")


@dataclass(frozen=True)
class Entry:
    """A raw value with the line it came from (0 for preset values)."""

    value: Any
    line: int


class Section(dict):
    """The entries of one section, with typed getters that name the field on error."""

    def __init__(self, name: str, entries: dict[str, Entry] | None = None) -> None:
        super().__init__(entries or {})
        self.name = name

    def error(self, key: str, message: str) -> ConfigurationError:
        entry = self.get(key)
        context = {"field": f"{self.name}.{key}"}
        if entry is not None and entry.line:
            context["line"] = entry.line
        return ConfigurationError(message, context=context)

    def text(self, key: str, default: str | None = None) -> str | None:
        entry = self.get(key)
        return default if entry is None else str(entry.value).strip()

    def real(self, key: str, default: float | None = None) -> float | None:
        entry = self.get(key)
        if entry is None:
            return default
        try:
            value = float(entry.value)
        except (TypeError, ValueError) as e:
            raise self.error(key, f"'{entry.value}' is not a number") from e
        if not np.isfinite(value):
            raise self.error(key, "Value must be finite")
        return value

    def integer(self, key: str, default: int | None = None) -> int | None:
        entry = self.get(key)
        if entry is None:
            return default
        try:
            return int(str(entry.value).strip())
        except ValueError as e:
            raise self.error(key, f"'{entry.value}' is not an integer") from e

    def choice(self, key: str, allowed: tuple[str, ...], default: str | None = None) -> str | None:
        value = self.text(key)
        if value is None:
            return default
        lookup = {a.lower(): a for a in allowed}
        if value.lower() not in lookup:
            raise self.error(key, f"'{value}' must be one of {', '.join(allowed)}")
        return lookup[value.lower()]

    def require(self, key: str) -> Entry:
        if key not in self:
            raise ConfigurationError(f"Missing field '{self.name}.{key}'", context={"field": f"{self.name}.{key}"})
        return self[key]


@dataclass(frozen=True)
class SolveSettings:
    bcs: tuple[BoundaryCondition, ...] = (BoundaryCondition.DIRICHLET, BoundaryCondition.NEUMANN)
    cutoff: float | None = None
    h: float = DEFAULT_MESH_SIZE
    truncation: int = DEFAULT_TRUNCATION
    order: int | None = None
    k: float | None = None
    k_max: float | None = None
    block: str = "maxwell"
    evanescent_cutoff: float | None = None


@dataclass(frozen=True)
class SweepSettings:
    """A uniform frequency sweep with automatic threshold skipping."""

    k_start: float
    k_end: float
    samples: int = 10
    skip_radius: float = 1e-3

    def frequencies(self) -> np.ndarray:
        if self.samples == 1:
            return np.array([self.k_start])
        return np.linspace(self.k_start, self.k_end, self.samples)


@dataclass(frozen=True)
class OutputSettings:
    format: str = "json"
    path: Path | None = None
    precision: int = DEFAULT_PRECISION


@dataclass(frozen=True)
class SourceSettings:
    family: str = "TE"
    mode: int = 0
    center: float | None = None
    width: float | None = None
    amplitude: float = 1.0


@dataclass(frozen=True, eq=False)
class RunConfig:
    """A parsed and validated run configuration.

    Attributes:
        ends: Cross-sections of the ends (geometry ends, then endN overrides).
        junction: The straight guide or step, when the geometry is one.
        solve: Solver settings.
        sweep: Sweep settings, when a sweep section is present.
        output: Output settings.
        source: Source settings, when a source section is present.
        origin: File the config was read from.
    """

    ends: tuple[CrossSection, ...]
    junction: StraightGuide | SeparableStep | None = None
    solve: SolveSettings = field(default_factory=SolveSettings)
    sweep: SweepSettings | None = None
    output: OutputSettings = field(default_factory=OutputSettings)
    source: SourceSettings | None = None
    origin: str = "<string>"

    def frequencies(self) -> np.ndarray:
        """The sweep frequencies, or the single solve.k.

        Raises:
            ConfigurationError: If neither is configured.
        """
        if self.sweep is not None:
            return self.sweep.frequencies()
        if self.solve.k is not None:
            return np.array([self.solve.k])
        raise ConfigurationError("Set solve.k or a sweep section", context={"file": self.origin})


def _split(text: str, origin: str) -> dict[str, Section]:
    """Group the lines of a config into sections, rejecting unknown and duplicate keys."""
    sections: dict[str, Section] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = _LINE.match(line)
        if match is None:
            raise ConfigurationError("Expected 'section.key = value'", context={"file": origin, "line": number})

        base, index, key = match["section"], match["index"], match["key"]
        name = base + index
        if base not in KEYS or (index and base != "end") or (base == "end" and not index):
            raise ConfigurationError(f"Unknown section '{name}'", context={"file": origin, "line": number})
        if key not in KEYS[base]:
            raise ConfigurationError(
                f"Unknown key '{name}.{key}'", context={"file": origin, "line": number, "field": f"{name}.{key}"}
            )

        section = sections.setdefault(name, Section(name))
        if key in section:
            raise ConfigurationError(
                f"Duplicate key '{name}.{key}'",
                context={"file": origin, "line": number, "first": section[key].line},
            )
        section[key] = Entry(match["value"].strip(), number)
    return sections


def _with_preset(section: Section, presets_path: Path) -> Section:
    """Seed a section with its preset; explicit keys win."""
    name = section.text("preset")
    if name is None:
        return section
    allowed = KEYS["end" if section.name.startswith("end") else "geometry"]
    merged = Section(section.name)
    for key, value in get_preset(name, presets_path).items():
        if key not in allowed or key == "preset":
            raise ConfigurationError(
                f"Preset '{name}' sets unknown key '{key}'", context={"field": f"{section.name}.{key}"}
            )
        merged[key] = Entry(value, section["preset"].line)
    merged.update({k: v for k, v in section.items() if k != "preset"})
    return merged


def _cross_section(section: Section, base_dir: Path, default_h: float, kind_key: str = "kind") -> CrossSection:
    kind = section.text(kind_key, "rectangle")
    backend = section.text("backend")
    if kind == "mesh":
        entry = section.require("mesh")
        path = Path(str(entry.value))
        return make_cross_section(mesh_descriptor(path if path.is_absolute() else base_dir / path, backend))

    descriptor: dict[str, Any] = {"kind": kind, "h": section.real("h", default_h)}
    if backend:
        descriptor["backend"] = backend
    for key in ("a", "b", "radius"):
        value = section.real(key)
        if value is not None:
            descriptor[key] = value
    return make_cross_section(descriptor)


def _geometry(
    geometry: Section, base_dir: Path, default_h: float
) -> tuple[list[CrossSection], StraightGuide | SeparableStep | None]:
    kind = geometry.text("kind", "rectangle")
    if kind == "straight":
        length = geometry.real("length", 1.0)
        guide = StraightGuide(_cross_section(geometry, base_dir, default_h, kind_key="section"), length)
        return guide.ends, guide
    if kind == "step":
        for key in ("a1", "a2"):
            geometry.require(key)
        step = SeparableStep(
            a1=geometry.real("a1"),
            a2=geometry.real("a2"),
            offset=geometry.real("offset", 0.0),
            height=geometry.real("height", 1.0),
        )
        return step.ends, step
    return [_cross_section(geometry, base_dir, default_h)], None


def _solve(section: Section) -> SolveSettings:
    defaults = SolveSettings()
    bcs = defaults.bcs
    text = section.text("bc")
    if text is not None:
        try:
            bcs = tuple(BoundaryCondition(part.strip().lower()) for part in text.split(",") if part.strip())
        except ValueError as e:
            raise section.error("bc", "Boundary conditions must be dirichlet and/or neumann") from e
        if not bcs:
            raise section.error("bc", "At least one boundary condition is required")

    settings = SolveSettings(
        bcs=bcs,
        cutoff=section.real("cutoff"),
        h=section.real("h", defaults.h),
        truncation=section.integer("truncation", defaults.truncation),
        order=section.integer("order"),
        k=section.real("k"),
        k_max=section.real("k_max"),
        block=section.choice("block", BLOCKS, defaults.block),
        evanescent_cutoff=section.real("evanescent_cutoff"),
    )
    for key in ("cutoff", "h", "k_max", "evanescent_cutoff"):
        value = getattr(settings, key)
        if value is not None and not value > 0.0:
            raise section.error(key, "Value must be positive")
    if settings.truncation < 1:
        raise section.error("truncation", "Truncation must be at least 1")
    if settings.order is not None and settings.order < 1:
        raise section.error("order", "Quadrature order must be at least 1")
    return settings


def _sweep(section: Section) -> SweepSettings | None:
    if not section:
        return None
    section.require("k_start")
    section.require("k_end")
    sweep = SweepSettings(
        k_start=section.real("k_start"),
        k_end=section.real("k_end"),
        samples=section.integer("samples", 10),
        skip_radius=section.real("skip_radius", 1e-3),
    )
    if not sweep.k_start < sweep.k_end:
        raise section.error("k_end", "k_start must be smaller than k_end")
    if sweep.samples < 1:
        raise section.error("samples", "At least one sample is required")
    if not sweep.skip_radius > 0.0:
        raise section.error("skip_radius", "Skip radius must be positive")
    return sweep


def _output(section: Section, base_dir: Path) -> OutputSettings:
    path = section.text("path")
    precision = section.integer("precision", DEFAULT_PRECISION)
    lo, hi = PRECISION_RANGE
    if not lo <= precision <= hi:
        raise section.error("precision", f"Precision must lie in {lo}..{hi}")
    return OutputSettings(
        format=section.choice("format", FORMATS, "json"),
        path=None if path is None else (Path(path) if Path(path).is_absolute() else base_dir / path),
        precision=precision,
    )


def _source(section: Section) -> SourceSettings | None:
    if not section:
        return None
    source = SourceSettings(
        family=section.choice("family", SOURCE_FAMILIES, "TE"),
        mode=section.integer("mode", 0),
        center=section.real("center"),
        width=section.real("width"),
        amplitude=section.real("amplitude", 1.0),
    )
    if source.mode < 0:
        raise section.error("mode", "Mode index must be non-negative")
    if source.width is not None and not source.width > 0.0:
        raise section.error("width", "Width must be positive")
    return source


def parse_run_config(
    text: str, base_dir: Path = Path("."), origin: str = "<string>", presets_path: Path = PRESETS_PATH
) -> RunConfig:
    """Parse run-config text.

    Args:
        text: The config content.
        base_dir: Directory that relative mesh and output paths resolve against.
        origin: Name used in diagnostics.
        presets_path: YAML file with geometry presets.

    Returns:
        The validated RunConfig.

    Raises:
        ConfigurationError: On syntax errors, unknown or duplicate keys,
            invalid values or a missing geometry section.
        GeometryError: If the geometry itself is invalid.
    """
    sections = _split(text, origin)
    if "geometry" not in sections:
        raise ConfigurationError("Missing geometry section", context={"file": origin, "field": "geometry.kind"})

    solve = _solve(sections.get("solve", Section("solve")))
    geometry = _with_preset(sections["geometry"], presets_path)
    ends, junction = _geometry(geometry, base_dir, solve.h)

    overrides = sorted((int(name[3:]), s) for name, s in sections.items() if name.startswith("end"))
    for index, section in overrides:
        if index < 1 or index > len(ends) + 1:
            raise ConfigurationError(
                "End sections must be numbered consecutively from 1", context={"field": section.name}
            )
        cs = _cross_section(_with_preset(section, presets_path), base_dir, solve.h)
        if index <= len(ends):
            ends[index - 1] = cs
        else:
            ends.append(cs)

    config = RunConfig(
        ends=tuple(ends),
        junction=junction,
        solve=solve,
        sweep=_sweep(sections.get("sweep", Section("sweep"))),
        output=_output(sections.get("output", Section("output")), base_dir),
        source=_source(sections.get("source", Section("source"))),
        origin=origin,
    )
    logger.debug(f"Parsed run config {origin}: {len(config.ends)} end(s), junction={type(junction).__name__}")
    return config


def load_run_config(path: Path) -> RunConfig:
    """Read and parse a run-config file.

    Raises:
        ConfigurationError: If the file cannot be read or is invalid.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigurationError("Cannot read run config", context={"file": str(path)}) from e
    return parse_run_config(text, path.parent, str(path))
