"""The per-frequency ledger of propagating waves over all ends."""

from __future__ import annotations

import math
from collections.abc import Sequence

from logic.cross_section import CrossSection
from logic.pencil import (
    build_mode,
    default_family,
    ensure_off_threshold,
    evanescent_points,
    real_maxwell_spectrum,
    spectral_gap,
    special_vectors,
    threshold_values,
)
from utils import InvalidInputError, WSLogger

from .flux import normalize_and_orient
from .models import CutoffProfile, EndInventory, ModeLedger

logger = WSLogger.get_logger(__name__)


def default_mu_cutoff(k: float) -> float:
    return 2.0 * k * k + 20.0


def _end_inventory(end: int, cs: CrossSection, k: float, mu_cutoff: float, cutoff: CutoffProfile) -> EndInventory:
    points = real_maxwell_spectrum(cs, k)
    e_waves = tuple(normalize_and_orient(p, build_mode(p, k), end, cutoff) for p in points)

    gamma = [
        normalize_and_orient(p, build_mode(p, k, default_family(p.bc_origin, scalar=True)), end, cutoff)
        for p in points
    ]
    gamma.extend(normalize_and_orient(p, section, end, cutoff) for p, section in special_vectors(cs, k))

    return EndInventory(
        end_index=end,
        section=cs,
        e_waves=e_waves,
        gamma_waves=tuple(gamma),
        evanescent=tuple(evanescent_points(cs, k, mu_cutoff)),
    )


def build_ledger(
    ends: Sequence[CrossSection],
    k: float,
    mu_cutoff: float | None = None,
    cutoff: CutoffProfile | None = None,
) -> ModeLedger:
    """Enumerate the normalized propagating waves of both families on all ends.

    Per end the E family holds the TE/TM waves of the Maxwell pencil and the
    Gamma family the alpha/beta scalar waves plus the two constant special
    waves at lambda = +k and -k.

    Args:
        ends: Cross-sections of the ends, end 1 first.
        k: Nonzero frequency off the thresholds.
        mu_cutoff: Largest eigenvalue listed among the evanescent points;
            defaults to 2 k^2 + 20.
        cutoff: Cutoff window attached to every wave.

    Returns:
        The ledger.

    Raises:
        InvalidInputError: If k = 0 or no end is given.
        ThresholdError: If k lies on a threshold of any end.
    """
    if k == 0.0:
        raise InvalidInputError("The mode ledger is not defined for k = 0")
    if not ends:
        raise InvalidInputError("At least one end is required")
    ensure_off_threshold(ends, k)

    mu_cutoff = mu_cutoff if mu_cutoff is not None else default_mu_cutoff(k)
    cutoff = cutoff or CutoffProfile()
    inventories = tuple(_end_inventory(end, cs, k, mu_cutoff, cutoff) for end, cs in enumerate(ends, start=1))

    nearby = threshold_values(ends, 2.0 * abs(k) + 10.0)
    distance = float(min(abs(abs(k) - nearby))) if len(nearby) else math.inf

    ledger = ModeLedger(k=k, ends=inventories, threshold_distance=distance, delta=spectral_gap(ends, abs(k)))
    logger.debug(f"Ledger at k={k:.6g}: Upsilon={ledger.upsilon}, T={ledger.t_total}")
    return ledger
