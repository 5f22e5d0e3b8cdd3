"""Real pencil spectra, thresholds and multiplicities."""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np

from logic.cross_section import BoundaryCondition, CrossSection, ScalarEigenpair, helmholtz_eigs
from utils import InvalidInputError, ThresholdError, WSLogger

from .models import MultiplicityReport, PencilPoint, Threshold

logger = WSLogger.get_logger(__name__)

THRESHOLD_RTOL = 1e-8
MULTIPLICITY_RTOL = 1e-8
BC_ORDER = (BoundaryCondition.DIRICHLET, BoundaryCondition.NEUMANN)


def threshold_tolerance(k: float) -> float:
    """Absolute tolerance on |k^2 - mu| that counts as sitting on a threshold."""
    return THRESHOLD_RTOL * max(1.0, k * k)


def _positive_pairs(cs: CrossSection, bc: BoundaryCondition, cutoff: float) -> list[ScalarEigenpair]:
    if cutoff <= 0.0:
        return []
    return [p for p in helmholtz_eigs(cs, bc, cutoff) if p.mu > 0.0]


def ensure_off_threshold(cs_list: Sequence[CrossSection], k: float) -> None:
    """Raise if k^2 is within tolerance of a positive eigenvalue of any end.

    Args:
        cs_list: Cross-sections of the ends.
        k: Frequency.

    Raises:
        ThresholdError: If k sits on a threshold.
    """
    tol = threshold_tolerance(k)
    for end, cs in enumerate(cs_list, start=1):
        for bc in BC_ORDER:
            for pair in _positive_pairs(cs, bc, k * k + 2.0 * tol):
                if abs(k * k - pair.mu) < tol:
                    raise ThresholdError(
                        "Frequency lies on a threshold",
                        context={"k": k, "threshold": math.sqrt(pair.mu), "end": end, "bc": bc.value},
                    )


def real_maxwell_spectrum(cs: CrossSection, k: float) -> list[PencilPoint]:
    """Real eigenvalues of the Maxwell pencil at frequency k.

    Every Dirichlet mu < k^2 and every positive Neumann mu < k^2 yields the
    pair lambda = +sqrt(k^2 - mu), -sqrt(k^2 - mu). Points are ordered by mu
    (Dirichlet before Neumann on ties), + before -.

    Args:
        cs: The cross-section.
        k: Nonzero frequency off the thresholds.

    Returns:
        List of pencil points; its length is kappa(k).

    Raises:
        InvalidInputError: If k = 0.
        ThresholdError: If k is on a threshold.
    """
    if k == 0.0:
        raise InvalidInputError("The Maxwell spectrum is not defined for k = 0")
    ensure_off_threshold([cs], k)

    pairs = [(p.mu, rank, p) for rank, bc in enumerate(BC_ORDER) for p in _positive_pairs(cs, bc, k * k)]
    pairs.sort(key=lambda item: (item[0], item[1]))

    points = []
    for mu, _, pair in pairs:
        lam = math.sqrt(k * k - mu)
        for sign in (1.0, -1.0):
            points.append(PencilPoint(k=k, lam=sign * lam, mu=mu, bc_origin=pair.bc, potential=pair))
    logger.debug(f"kappa({k:.6g}) = {len(points)} on {cs}")
    return points


def evanescent_points(cs: CrossSection, k: float, mu_cutoff: float) -> list[PencilPoint]:
    """Evanescent pencil points lambda = i sqrt(mu - k^2) with k^2 < mu <= mu_cutoff."""
    pairs = [
        (p.mu, rank, p)
        for rank, bc in enumerate(BC_ORDER)
        for p in _positive_pairs(cs, bc, mu_cutoff)
        if p.mu > k * k
    ]
    pairs.sort(key=lambda item: (item[0], item[1]))
    return [
        PencilPoint(k=k, lam=1j * math.sqrt(mu - k * k), mu=mu, bc_origin=pair.bc, potential=pair)
        for mu, _, pair in pairs
    ]


def first_evanescent_mu(cs: CrossSection, k: float) -> float:
    """Smallest eigenvalue (either condition) above k^2."""
    cutoff = max(2.0 * k * k, k * k + 10.0)
    for _ in range(12):
        above = [
            p.mu for bc in BC_ORDER for p in _positive_pairs(cs, bc, cutoff) if p.mu > k * k
        ]
        if above:
            return min(above)
        cutoff *= 2.0
    raise InvalidInputError("No eigenvalue found above k^2", context={"k": k, "section": str(cs)})


def spectral_gap(cs_list: Sequence[CrossSection], k: float) -> float:
    """Decay rate delta: half the smallest evanescent exponent over all ends."""
    return min(0.5 * math.sqrt(first_evanescent_mu(cs, k) - k * k) for cs in cs_list)


def _clusters(values: list[float]) -> list[list[float]]:
    groups: list[list[float]] = []
    for value in sorted(values):
        if groups and value - groups[-1][0] <= MULTIPLICITY_RTOL * max(1.0, value):
            groups[-1].append(value)
        else:
            groups.append([value])
    return groups


def thresholds(cs_list: Sequence[CrossSection], k_max: float) -> list[Threshold]:
    """All thresholds sqrt(mu) <= k_max of the given ends.

    Equal eigenvalues of one end and condition are merged with their
    multiplicity; rows are sorted by (k, end, condition).

    Args:
        cs_list: Cross-sections of the ends.
        k_max: Largest frequency of interest.

    Returns:
        Sorted list of thresholds.

    Raises:
        InvalidInputError: If k_max is not positive.
    """
    if not k_max > 0.0:
        raise InvalidInputError("k_max must be positive", context={"k_max": k_max})

    rows = []
    for end, cs in enumerate(cs_list, start=1):
        for rank, bc in enumerate(BC_ORDER):
            mus = [p.mu for p in _positive_pairs(cs, bc, k_max * k_max)]
            for group in _clusters(mus):
                rows.append(
                    (math.sqrt(group[0]), end, rank, Threshold(math.sqrt(group[0]), end, bc, len(group)))
                )
    rows.sort(key=lambda row: row[:3])
    return [row[3] for row in rows]


def threshold_values(cs_list: Sequence[CrossSection], k_max: float) -> np.ndarray:
    """Distinct threshold frequencies of all ends up to k_max."""
    distinct: list[float] = []
    for value in sorted(t.k for t in thresholds(cs_list, k_max)):
        if not distinct or value - distinct[-1] > 1e-10 * max(1.0, value):
            distinct.append(value)
    return np.array(distinct)


def multiplicity_report(cs: CrossSection, k: float, lam: complex) -> MultiplicityReport:
    """Multiplicities of lambda as an eigenvalue of the pencils at k.

    Args:
        cs: The cross-section.
        k: Frequency.
        lam: Candidate eigenvalue, lambda^2 != k^2.

    Returns:
        The report; all counts are zero when mu = k^2 - lambda^2 is in
        neither spectrum.

    Raises:
        InvalidInputError: If lambda^2 = k^2.
    """
    mu = k * k - complex(lam) ** 2
    scale = max(1.0, abs(mu))
    if abs(mu) <= THRESHOLD_RTOL * max(1.0, k * k):
        raise InvalidInputError("lambda^2 = k^2 is handled by the special vectors", context={"k": k, "lambda": lam})
    if abs(mu.imag) > MULTIPLICITY_RTOL * scale or mu.real <= 0.0:
        return MultiplicityReport(0, 0, 0, 0)

    target = mu.real
    counts = {}
    for bc in BC_ORDER:
        pairs = _positive_pairs(cs, bc, target * (1.0 + 1e-6) + 1e-6)
        counts[bc] = sum(1 for p in pairs if abs(p.mu - target) <= MULTIPLICITY_RTOL * scale)
    kd, kn = counts[BoundaryCondition.DIRICHLET], counts[BoundaryCondition.NEUMANN]
    return MultiplicityReport(kappa_A=2 * (kd + kn), kappa_M=kd + kn, kappa_D=kd, kappa_N=kn)
