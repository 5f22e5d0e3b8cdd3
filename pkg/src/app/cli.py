"""Command-line front end: spectra, thresholds, ledgers, scattering sweeps and radiation checks."""

from __future__ import annotations

import argparse
import sys
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from backend.config import WORKERS, validate_config
from backend.run_config import RunConfig, SourceSettings, load_run_config
from backend.storage.export import (
    RESIDUAL_HEADER,
    TRACE_HEADER,
    dumps,
    ledger_document,
    render_csv,
    smatrix_document,
    trace_rows,
    write_csv,
    write_json,
)
from logic.cross_section import (
    Backend,
    BoundaryCondition,
    CrossSection,
    SectionKind,
    helmholtz_eigs,
    make_cross_section,
)
from logic.pencil import BumpProfile, threshold_values, thresholds
from logic.scattering import (
    ScatteringMatrix,
    SeparableStep,
    SourceField,
    StraightGuide,
    gradient_source,
    incoming_basis_smatrix,
    junction_smatrix,
    modal_radiation_amplitudes,
    modal_source,
    potential_gradient_source,
    radiation_coefficients,
)
from logic.scattering.step import channel_basis
from logic.waves import build_ledger
from utils import ConfigurationError, EmptyBandError, WSLogger, format_real
from utils.handler import handle_error

from .console import banner, notice, show_table

logger = WSLogger.get_logger(__name__)

DEFAULT_CUTOFF = 100.0
DEFAULT_RESULTS_DIR = Path("results")

MODES_HEADER = ("end", "bc", "index", "mu", "label", "rel_error")
THRESHOLDS_HEADER = ("k", "end", "bc", "multiplicity")
RADIATION_HEADER = ("end", "family", "mode", "re_formula", "im_formula", "re_direct", "im_direct", "difference")


def _emit(payload: bytes | str, out: Path | None) -> None:
    """Write a payload to a file, or to stdout when no path is given."""
    if out is None:
        sys.stdout.write(payload.decode() if isinstance(payload, bytes) else payload)
        sys.stdout.flush()
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(payload, bytes):
        out.write_bytes(payload)
    else:
        out.write_text(payload, encoding="utf-8")
    logger.info(f"Wrote {out}")


def _table(config: RunConfig, header: Sequence[str], rows: list[tuple], key: str, out: Path | None) -> None:
    precision = config.output.precision
    if config.output.format == "csv":
        _emit(render_csv(header, rows, precision), out)
        return
    records = [
        {name: float(format_real(v, precision)) if isinstance(v, float) else v for name, v in zip(header, row)}
        for row in rows
    ]
    _emit(dumps({key: records}), out)


def _analytic_twin(cs: CrossSection) -> CrossSection | None:
    """The analytic counterpart of a fem rectangle or disc."""
    if cs.backend is not Backend.FEM or cs.kind is SectionKind.MESH:
        return None
    return make_cross_section({"kind": cs.kind.value, "a": cs.a, "b": cs.b, "radius": cs.radius})


def modes_rows(config: RunConfig) -> list[tuple]:
    """(end, bc, index, mu, label, rel_error) for every end and boundary condition.

    rel_error compares fem eigenvalues against the analytic spectrum of the
    same rectangle or disc and is empty otherwise.
    """
    cutoff = config.solve.cutoff or DEFAULT_CUTOFF
    rows = []
    for end, cs in enumerate(config.ends, start=1):
        twin = _analytic_twin(cs)
        for bc in config.solve.bcs:
            pairs = helmholtz_eigs(cs, bc, cutoff)
            exact = [p.mu for p in helmholtz_eigs(twin, bc, 2.0 * cutoff)] if twin else []
            for index, pair in enumerate(pairs):
                error = None
                if index < len(exact):
                    error = abs(pair.mu - exact[index]) / max(abs(exact[index]), 1.0)
                label = ",".join(str(i) for i in pair.label) or "const"
                rows.append((end, bc.value, index, float(pair.mu), label, error))
    return rows


def cmd_modes(config: RunConfig, out: Path | None = None) -> int:
    rows = modes_rows(config)
    _table(config, MODES_HEADER, rows, "modes", out)
    show_table("Cross-section eigenvalues", MODES_HEADER, rows)
    return 0


def _k_max(config: RunConfig) -> float:
    if config.solve.k_max is not None:
        return config.solve.k_max
    if config.sweep is not None:
        return config.sweep.k_end
    if config.solve.k is not None:
        return abs(config.solve.k)
    raise ConfigurationError("Set solve.k_max, solve.k or a sweep section", context={"field": "solve.k_max"})


def thresholds_rows(config: RunConfig) -> list[tuple]:
    """(k, end, bc, multiplicity) sorted by k, merged over all ends."""
    return [(t.k, t.end, t.bc.value, t.multiplicity) for t in thresholds(config.ends, _k_max(config))]


def cmd_thresholds(config: RunConfig, out: Path | None = None) -> int:
    rows = thresholds_rows(config)
    _table(config, THRESHOLDS_HEADER, rows, "thresholds", out)
    if rows:
        show_table("Thresholds", THRESHOLDS_HEADER, rows)
    else:
        notice("No threshold below k_max")
    return 0


def _sweep_thresholds(config: RunConfig, k_max: float) -> np.ndarray:
    """Threshold frequencies relevant to the configured computation."""
    junction = config.junction
    if isinstance(junction, SeparableStep) and config.solve.block in ("dirichlet", "neumann"):
        bc = BoundaryCondition(config.solve.block)
        count = int(k_max * max(junction.a1, junction.a2) / np.pi) + 2
        values = np.concatenate([channel_basis(bc, count, w)[0] for w in (junction.a1, junction.a2)])
        return np.unique(values[(values > 0.0) & (values <= k_max)])
    ends = junction.ends if junction is not None else config.ends
    return threshold_values(ends, k_max)


def retained_frequencies(config: RunConfig) -> tuple[np.ndarray, np.ndarray]:
    """Split the configured frequencies into (kept, dropped) by threshold proximity.

    Raises:
        EmptyBandError: If every frequency lies within the skip radius.
    """
    ks = config.frequencies()
    radius = config.sweep.skip_radius if config.sweep is not None else 0.0
    values = _sweep_thresholds(config, float(np.abs(ks).max()) + radius)
    if radius > 0.0 and values.size:
        near = np.array([np.abs(values - abs(k)).min() <= radius for k in ks])
    else:
        near = np.zeros(len(ks), dtype=bool)
    kept, dropped = ks[~near], ks[near]
    if dropped.size:
        listed = ", ".join(format_real(k, 8) for k in dropped)
        logger.warning(f"Dropped {dropped.size} sweep point(s) near thresholds: {listed}")
        notice(f"Dropped k near thresholds: {listed}")
    if not kept.size:
        raise EmptyBandError("No sweep point remains after threshold skipping", context={"dropped": dropped.tolist()})
    return kept, dropped


def _parallel(fn: Callable[[float], object], ks: np.ndarray) -> list:
    """Evaluate fn over ks on the worker pool; results come back in k order."""
    with ThreadPoolExecutor(max_workers=WORKERS) as executor:
        return list(executor.map(fn, [float(k) for k in ks]))


def cmd_ledger(config: RunConfig, out: Path | None = None) -> int:
    kept, _ = retained_frequencies(config)
    cutoff = config.solve.evanescent_cutoff
    ledgers = _parallel(lambda k: build_ledger(config.ends, k, mu_cutoff=cutoff), kept)
    precision = config.output.precision
    _emit(dumps({"ledgers": [ledger_document(ledger, precision) for ledger in ledgers]}), out)
    show_table(
        "Mode ledger",
        ("k", "upsilon", "t_total", "delta"),
        [(format_real(lg.k, 8), lg.upsilon, lg.t_total, format_real(lg.delta, 6)) for lg in ledgers],
    )
    return 0


def _scatter_one(config: RunConfig, k: float) -> ScatteringMatrix:
    geom, block, truncation = config.junction, config.solve.block, config.solve.truncation
    s = junction_smatrix(geom, k, block, truncation)
    t = incoming_basis_smatrix(geom, k, block, truncation)
    return s.with_inverse(t)


def cmd_scatter(config: RunConfig, out: Path | None = None) -> int:
    """Sweep the junction's scattering matrix and write one export per retained k.

    JSON output writes smatrix_<index>_k<k>.json per frequency, CSV output a single
    trace.csv; both write residuals.csv with the unitarity and inverse-pair
    residuals versus k.
    """
    if config.junction is None:
        raise ConfigurationError("scatter needs a straight or step geometry", context={"field": "geometry.kind"})
    kept, _ = retained_frequencies(config)
    matrices = _parallel(lambda k: _scatter_one(config, k), kept)

    directory = out or config.output.path or DEFAULT_RESULTS_DIR
    precision = config.output.precision
    if config.output.format == "json":
        for index, s in enumerate(matrices):
            write_json(smatrix_document(s, precision), directory / f"smatrix_{index:03d}_k{s.k:.6f}.json")
    else:
        write_csv(TRACE_HEADER, [row for s in matrices for row in trace_rows(s)], directory / "trace.csv", precision)

    residuals = [(float(s.k), s.dimension, s.unitarity_residual, s.inverse_residual) for s in matrices]
    write_csv(RESIDUAL_HEADER, residuals, directory / "residuals.csv", precision)

    show_table(
        f"Scattering sweep ({config.solve.block})",
        RESIDUAL_HEADER,
        [(format_real(k, 8), n, format_real(u, 3), format_real(i, 3)) for k, n, u, i in residuals],
    )
    banner(f"{len(matrices)} scattering matrices written to {directory}")
    return 0


def build_source(config: RunConfig, geom: StraightGuide, k: float) -> SourceField:
    """The configured source in a straight guide.

    TE, gradient and potential-gradient sources use propagating Neumann
    potentials, TM sources propagating Dirichlet ones, evanescent sources
    Neumann potentials with mu > k^2; source.mode indexes that list.

    Raises:
        ConfigurationError: If there is no such potential.
    """
    settings = config.source or SourceSettings()
    cs = geom.section
    cutoff = max(config.solve.cutoff or 0.0, 2.0 * k * k + 20.0)
    bc = BoundaryCondition.DIRICHLET if settings.family == "TM" else BoundaryCondition.NEUMANN
    pairs = [p for p in helmholtz_eigs(cs, bc, cutoff) if p.mu > 0.0]
    if settings.family == "evanescent":
        pairs = [p for p in pairs if p.mu > k * k]
    else:
        pairs = [p for p in pairs if p.mu < k * k]
    if settings.mode >= len(pairs):
        raise ConfigurationError(
            f"No {settings.family} potential with index {settings.mode}",
            context={"field": "source.mode", "available": len(pairs)},
        )
    potential = pairs[settings.mode]

    center = geom.length / 2.0 if settings.center is None else settings.center
    width = geom.length / 2.0 if settings.width is None else settings.width
    profile = BumpProfile(center - width / 2.0, center + width / 2.0, amplitude=settings.amplitude)

    if settings.family == "gradient":
        return gradient_source(cs, potential, profile)
    if settings.family == "potential_gradient":
        return potential_gradient_source(cs, potential, profile, k)
    return modal_source(cs, potential, profile)


def radiation_rows(config: RunConfig) -> list[tuple]:
    """Formula and direct-solve amplitudes per outgoing channel."""
    geom = config.junction
    if not isinstance(geom, StraightGuide):
        raise ConfigurationError("radiate needs a straight geometry", context={"field": "geometry.kind"})
    k = float(config.frequencies()[0])
    source = build_source(config, geom, k)
    formula = radiation_coefficients(source, geom, k, order=config.solve.order)
    direct = modal_radiation_amplitudes(source, geom, k, order=config.solve.order)
    logger.info(f"Radiation at k={k:.6g}: max difference {formula.max_difference(direct):.3g}")
    return [
        (c.end, c.family, ",".join(str(i) for i in c.mode), a.real, a.imag, b.real, b.imag, abs(a - b))
        for c, a, b in zip(formula.channels, formula.coefficients, direct.coefficients)
    ]


def cmd_radiate(config: RunConfig, out: Path | None = None) -> int:
    rows = radiation_rows(config)
    _table(config, RADIATION_HEADER, rows, "radiation", out)
    show_table(
        "Radiation coefficients",
        RADIATION_HEADER,
        [tuple(format_real(v, 6) if isinstance(v, float) else v for v in row) for row in rows],
    )
    return 0


COMMANDS: dict[str, Callable[[RunConfig, Path | None], int]] = {
    "modes": cmd_modes,
    "thresholds": cmd_thresholds,
    "ledger": cmd_ledger,
    "scatter": cmd_scatter,
    "radiate": cmd_radiate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, required=True, help="Run-config file")
    common.add_argument("--out", type=Path, default=None, help="Output file (directory for scatter)")
    common.add_argument("--verbose", action="store_true", help="Log at DEBUG level")

    parser = argparse.ArgumentParser(
        prog="waveguide-scatter", description="Spectral and scattering computations for cylindrical waveguides"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    helps = {
        "modes": "Cross-section eigenvalues of every end",
        "thresholds": "Threshold frequencies up to k_max",
        "ledger": "Normalized waves and counts per frequency",
        "scatter": "Scattering matrices over the sweep",
        "radiate": "Radiation coefficients of a source in a straight guide",
    }
    for name, text in helps.items():
        subparsers.add_parser(name, parents=[common], help=text)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point of the waveguide-scatter console script.

    Returns:
        0 on success, 2 for configuration and input errors, 3 for solver
        errors, 4 when threshold skipping empties the sweep.
    """
    args = build_parser().parse_args(argv)
    if args.verbose:
        WSLogger.set_level("DEBUG")
    try:
        validate_config()
        config = load_run_config(args.config)
        return COMMANDS[args.command](config, args.out)
    except Exception as e:
        return handle_error(e)


if __name__ == "__main__":
    sys.exit(main())
