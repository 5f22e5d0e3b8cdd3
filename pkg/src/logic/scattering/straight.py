"""Scattering in a straight guide: pure transmission with axial phases."""

from __future__ import annotations

import numpy as np

from logic.pencil import default_family, real_maxwell_spectrum
from logic.waves import Channel, Direction
from utils import InvalidInputError, WSLogger

from .assembly import assemble_sigma
from .models import ScatteringMatrix, StraightGuide

logger = WSLogger.get_logger(__name__)

FAMILY_FILTERS = ("maxwell", "scalar", "all")


def _port_modes(geom: StraightGuide, k: float, scalar: bool) -> list[tuple[str, tuple[int, ...], float]]:
    """(family, label, lambda) of the forward waves of one port."""
    modes = [
        (default_family(p.bc_origin, scalar=scalar).value, p.potential.label, p.real_lambda)
        for p in real_maxwell_spectrum(geom.section, k)
        if p.real_lambda > 0.0
    ]
    if scalar:
        modes.append(("constant_special", (), abs(k)))
    return modes


def straight_smatrix(
    geom: StraightGuide, k: float, family_filter: str = "maxwell", reverse: bool = False
) -> ScatteringMatrix:
    """Scattering matrix of a straight guide between its two ports.

    No wave is reflected or converted: the wave entering end 1 leaves end 2
    with phase exp(i lam L) and vice versa, so s = [[0, D], [D, 0]].

    Args:
        geom: The guide.
        k: Frequency off the thresholds.
        family_filter: "maxwell" for the s block, "scalar" for the upsilon
            block, "all" for sigma = diag(s, upsilon).
        reverse: Build t (incoming and outgoing roles exchanged) instead of s.

    Returns:
        The scattering matrix.

    Raises:
        InvalidInputError: On an unknown family filter.
        ThresholdError: If k is on a threshold.
    """
    if family_filter not in FAMILY_FILTERS:
        raise InvalidInputError(f"Unknown family filter '{family_filter}'", context={"allowed": FAMILY_FILTERS})
    if family_filter == "all":
        return assemble_sigma(
            straight_smatrix(geom, k, "maxwell", reverse), straight_smatrix(geom, k, "scalar", reverse)
        )

    modes = _port_modes(geom, k, scalar=family_filter == "scalar")
    lams = np.array([lam for _, _, lam in modes])
    sign = -1.0 if reverse else 1.0
    phases = np.diag(np.exp(sign * 1j * lams * geom.length))
    n = len(modes)
    entries = np.zeros((2 * n, 2 * n), dtype=complex)
    entries[:n, n:] = phases
    entries[n:, :n] = phases

    rows, cols = [], []
    for end in (1, 2):
        for family, label, _ in modes:
            rows.append(Channel(end, family, label, Direction.INCOMING))
            cols.append(Channel(end, family, label, Direction.OUTGOING))
    logger.debug(f"Straight guide {family_filter} block at k={k:.6g}: dimension {2 * n}")
    return ScatteringMatrix(k=k, entries=entries, rows=tuple(rows), cols=tuple(cols))
