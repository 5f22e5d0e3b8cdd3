"""Axial energy flux of mode sections and flux normalization."""

from __future__ import annotations

import numpy as np

from logic.cross_section import CrossSection
from logic.pencil import ALPHA, BETA, ModeFamily, PencilPoint, VectorModeSection
from utils import InvalidInputError, ThresholdError, WSLogger

from .models import CutoffProfile, CylinderWave, Direction

logger = WSLogger.get_logger(__name__)

FLUX_FLOOR = 1e-12
PHASE_FLOOR = 1e-8

# Component carrying the generating potential of each family
POTENTIAL_ROW = {
    ModeFamily.TM: 2,
    ModeFamily.TE: 6,
    ModeFamily.ALPHA_SCALAR: ALPHA,
    ModeFamily.BETA_SCALAR: BETA,
    ModeFamily.CONSTANT_SPECIAL: ALPHA,
}


def _require_propagating(lam: complex) -> float:
    lam = complex(lam)
    if abs(lam.imag) > 1e-12 * max(1.0, abs(lam)):
        raise InvalidInputError("Flux is only defined for propagating waves", context={"lambda": lam})
    return lam.real


def _scalar_weight(family: ModeFamily, lam: float, k: float) -> float:
    if family is ModeFamily.CONSTANT_SPECIAL:
        if k == 0.0:
            raise InvalidInputError("The constant special wave carries no flux at k = 0")
        return lam / k
    return lam


def _poynting(a: VectorModeSection, b: VectorModeSection, order: int | None) -> complex:
    """Integral of (phi_a x conj(psi_b))_3 over the cross-section."""
    points, weights = a.section.quadrature(order)
    va, vb = a.values(points), b.values(points)
    integrand = va[0] * np.conj(vb[5]) - va[1] * np.conj(vb[4])
    return complex(np.sum(weights * integrand))


def _scalar_overlap(a: VectorModeSection, b: VectorModeSection, order: int | None) -> complex:
    points, weights = a.section.quadrature(order)
    va, vb = a.values(points), b.values(points)
    integrand = va[ALPHA] * np.conj(vb[ALPHA]) + va[BETA] * np.conj(vb[BETA])
    return complex(np.sum(weights * integrand))


def axial_flux(section: VectorModeSection, lam: complex, k: float, order: int | None = None) -> float:
    """Signed axial energy flux of a propagating section.

    TE and TM sections use the axial Poynting flux Re of the integral of
    (phi x conj psi)_3; scalar sections lam * ||u||^2 and the constant special
    section (lam / k) * ||alpha||^2.

    Args:
        section: The section.
        lam: Real axial wavenumber.
        k: Frequency.
        order: Quadrature order.

    Returns:
        The flux; positive values carry energy toward t = +infinity.

    Raises:
        InvalidInputError: If lam is not real, or for the special section at k = 0.
    """
    lam = _require_propagating(lam)
    if section.family.is_maxwell:
        return _poynting(section, section, order).real
    return _scalar_weight(section.family, lam, k) * _scalar_overlap(section, section, order).real


def flux_pairing(a: CylinderWave, b: CylinderWave, order: int | None = None) -> complex:
    """Sesquilinear flux pairing of two waves at the same frequency and end.

    Reduces to the axial flux when a is b. Distinct normalized waves pair to
    zero.

    Raises:
        InvalidInputError: If the waves live at different frequencies or one
            is a Maxwell wave and the other is not.
    """
    if a.k != b.k:
        raise InvalidInputError("Flux pairing needs waves at the same frequency", context=(a.k, b.k))
    if a.family.is_maxwell != b.family.is_maxwell:
        raise InvalidInputError("Cannot pair a Maxwell wave with an augmented wave", context=(str(a), str(b)))
    if a.end_index != b.end_index:
        return 0j
    if a.family.is_maxwell:
        return 0.5 * (_poynting(a.section, b.section, order) + np.conj(_poynting(b.section, a.section, order)))
    wa = _scalar_weight(a.family, a.lam, a.k)
    wb = _scalar_weight(b.family, b.lam, b.k)
    return 0.5 * (wa + wb) * _scalar_overlap(a.section, b.section, order)


def _phase_factor(section: VectorModeSection, cs: CrossSection) -> complex:
    """Unit factor turning the potential component real-positive at a reference point."""
    row = POTENTIAL_ROW[section.family]
    values = section.values(cs.reference_points())[row]
    magnitudes = np.abs(values)
    if not magnitudes.size or magnitudes.max() == 0.0:
        return 1.0
    first = int(np.argmax(magnitudes > PHASE_FLOOR * magnitudes.max()))
    value = values[first]
    return np.conj(value) / abs(value)


def normalize_and_orient(
    point: PencilPoint,
    section: VectorModeSection,
    end: int,
    cutoff: CutoffProfile | None = None,
) -> CylinderWave:
    """Scale a section to unit flux, fix its phase and classify its direction.

    Args:
        point: The pencil point of the section.
        section: The raw section.
        end: 1-based end index.
        cutoff: Cutoff window for the extension; defaults to CutoffProfile().

    Returns:
        The cylinder wave.

    Raises:
        ThresholdError: If the flux is numerically zero.
    """
    flux = axial_flux(section, point.lam, point.k)
    if abs(flux) < FLUX_FLOOR:
        raise ThresholdError(
            "Zero-flux mode; frequency degenerates to a threshold",
            context={"k": point.k, "lambda": point.lam, "flux": flux},
        )
    normalized = section.scaled(1.0 / np.sqrt(abs(flux)))
    normalized = normalized.scaled(_phase_factor(normalized, section.section))
    direction = Direction.OUTGOING if flux > 0.0 else Direction.INCOMING
    return CylinderWave(
        end_index=end,
        section=normalized,
        lam=point.real_lambda,
        k=point.k,
        direction=direction,
        flux=flux,
        family=section.family,
        cutoff=cutoff or CutoffProfile(),
    )
