"""Radiation coefficients of compatible sources in a straight guide."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.integrate import quad

from logic.pencil import BumpProfile, ModeFamily, VectorModeSection, build_mode, real_maxwell_spectrum
from logic.waves import Channel, Direction, normalize_and_orient
from logic.waves.flux import POTENTIAL_ROW
from utils import IncompatibleSourceError, InvalidInputError, SupportViolationError, WSLogger

from .models import StraightGuide
from .sources import SourceField, SourceTerm, compatibility_residual

logger = WSLogger.get_logger(__name__)

COMPATIBILITY_TOL = 1e-8
# Waves entering the Green formula carry half the unit axial flux
GREEN_SCALE = 1.0 / np.sqrt(2.0)
# Only f = (f1, f2) pairs with a wave; h1 and h2 do not
PAIRED_ROWS = [0, 1, 2, 4, 5, 6]
# Transverse rows of the block without the potential: phi for TE, psi for TM
_TRANSVERSE_ROWS = {ModeFamily.TE: [0, 1], ModeFamily.TM: [4, 5]}


@dataclass(frozen=True)
class RadiationReport:
    """Outgoing amplitudes of a forced solution, one per outgoing channel.

    End 2 channels are the waves exp(i lam t) Phi with lam > 0, end 1 channels
    those with lam < 0, both in the guide's global axial coordinate.
    """

    k: float
    channels: tuple[Channel, ...]
    coefficients: NDArray[np.complex128]

    def max_difference(self, other: RadiationReport) -> float:
        if other.channels != self.channels:
            raise InvalidInputError("Reports list different channels")
        if not len(self.coefficients):
            return 0.0
        return float(np.abs(self.coefficients - other.coefficients).max())


def _check_source(F: SourceField, geom: StraightGuide, k: float) -> None:
    lo, hi = F.support
    if F.terms and (lo < 0.0 or hi > geom.length):
        raise SupportViolationError(
            "Source support leaves the guide segment", context={"support": (lo, hi), "length": geom.length}
        )
    scale = max(1.0, max((float(np.abs(t.coefficients).max()) for t in F.terms), default=0.0))
    residuals = compatibility_residual(F, k)
    if max(residuals) > COMPATIBILITY_TOL * scale:
        raise IncompatibleSourceError(
            "Source violates the compatibility conditions",
            context={"r1": residuals[0], "r2": residuals[1], "r3": residuals[2]},
        )


def _channel_waves(geom: StraightGuide, k: float):
    """(channel, point, raw section, normalized wave) of every outgoing wave."""
    for point in real_maxwell_spectrum(geom.section, k):
        raw = build_mode(point, k)
        end = 2 if point.real_lambda > 0.0 else 1
        wave = normalize_and_orient(point, raw, end)
        channel = Channel(end, wave.family.value, wave.label, Direction.OUTGOING)
        yield channel, point, raw, wave


def _ordered(entries: list[tuple[Channel, complex]]) -> tuple[tuple[Channel, ...], NDArray[np.complex128]]:
    entries.sort(key=lambda item: (item[0].end, item[0].family, item[0].mode))
    return tuple(c for c, _ in entries), np.array([v for _, v in entries], dtype=complex)


def radiation_coefficients(
    F: SourceField, geom: StraightGuide, k: float, order: int | None = None, axial_order: int = 64
) -> RadiationReport:
    """c_j = i (f, W_j) over the guide for every outgoing wave W_j.

    In a straight guide the continuous spectrum eigenfunctions are the waves
    exp(i lam t) Phi themselves; they enter with half the unit flux.

    Args:
        F: A compatible source supported in [0, length].
        geom: The guide.
        k: Frequency off the thresholds.
        order: Cross-section quadrature order.
        axial_order: Gauss points per term support in t.

    Returns:
        The coefficients per outgoing channel.

    Raises:
        IncompatibleSourceError: If a compatibility residual exceeds 1e-8.
        SupportViolationError: If the source leaves [0, length].
    """
    _check_source(F, geom, k)
    points, weights = geom.section.quadrature(order)
    grids = [term.profile.quadrature(axial_order) for term in F.terms]

    entries = []
    for channel, point, _, wave in _channel_waves(geom, k):
        phi = GREEN_SCALE * wave.section.values(points)
        total = 0j
        # each term is integrated on its own support only
        for term, (t, wt) in zip(F.terms, grids):
            f = term.values(points, t)
            field = phi[:, :, None] * np.exp(1j * point.real_lambda * t)[None, None, :]
            integrand = np.sum(f[PAIRED_ROWS] * np.conj(field[PAIRED_ROWS]), axis=0)
            total += np.einsum("p,pt,t->", weights, integrand, wt)
        entries.append((channel, 1j * total))

    channels, values = _ordered(entries)
    logger.debug(f"Radiation coefficients at k={k:.6g}: {len(values)} channels")
    return RadiationReport(k, channels, values)


def fourier_quad(profile: BumpProfile, lam: float) -> complex:
    """Integral of exp(-i lam s) g(s) ds by adaptive quadrature."""
    re = quad(lambda s: (np.exp(-1j * lam * s) * profile(s)).real, profile.start, profile.stop, limit=200)[0]
    im = quad(lambda s: (np.exp(-1j * lam * s) * profile(s)).imag, profile.start, profile.stop, limit=200)[0]
    return complex(re, im)


def axial_response(profile: BumpProfile, lam: complex, t: NDArray[np.float64]) -> NDArray[np.complex128]:
    """w(t) solving w'' + lam^2 w = g with outgoing (or decaying) behaviour.

    w = integral of G(t - s) g(s) ds with G(t) = exp(i lam |t|) / (2 i lam);
    evanescent modes use lam on the positive imaginary axis.
    """
    lam = complex(lam)
    out = []
    for ti in np.atleast_1d(np.asarray(t, dtype=float)):
        pieces = [(profile.start, min(ti, profile.stop)), (max(ti, profile.start), profile.stop)]
        value = 0j
        for lo, hi in pieces:
            if hi <= lo:
                continue

            def kernel(s, part):
                z = np.exp(1j * lam * abs(ti - s)) / (2j * lam) * profile(s)
                return z.real if part == 0 else z.imag

            value += quad(kernel, lo, hi, args=(0,), limit=200)[0] + 1j * quad(kernel, lo, hi, args=(1,), limit=200)[0]
        out.append(value)
    return np.array(out)


def _projection(term: SourceTerm, raw: VectorModeSection, points, weights) -> NDArray[np.complex128]:
    """Cross-section integrals of (f1, f2) . conj(raw), one per axial derivative order of g."""
    jet = term.potential.jet(points, order=1)
    rows = raw.values(points)[PAIRED_ROWS]
    return np.einsum("cjo,jp,cp,p->o", term.coefficients[PAIRED_ROWS], jet, np.conj(rows), weights)


def _modal_weight(raw: VectorModeSection, k: float, points, weights) -> float:
    """Factor turning the projected forcing into the right-hand side of w'' + lam^2 w."""
    values = raw.values(points)[_TRANSVERSE_ROWS[raw.family]]
    return -k / float(np.sum(weights * np.abs(values) ** 2))


def modal_radiation_amplitudes(
    F: SourceField, geom: StraightGuide, k: float, order: int | None = None
) -> RadiationReport:
    """Outgoing amplitudes from the direct mode-by-mode solve of the forced problem.

    Each term is projected onto the raw section of every propagating mode,
    giving a forcing q(t) = sum a_o g^(o)(t). The amplitude w of the mode then
    solves w'' + lam^2 w = weight * q(t), and its outgoing value is read off
    the 1D Green solution at the guide end the wave leaves through.

    Args:
        F: A compatible source supported in [0, length].
        geom: The guide.
        k: Frequency off the thresholds.
        order: Cross-section quadrature order.

    Returns:
        The amplitudes per outgoing channel, in the same wave scale as
        radiation_coefficients.

    Raises:
        IncompatibleSourceError: If the source has no forced solution.
        SupportViolationError: If the source leaves [0, length].
    """
    _check_source(F, geom, k)
    points, weights = geom.section.quadrature(order)

    entries = []
    for channel, point, raw, wave in _channel_waves(geom, k):
        lam = point.real_lambda
        station = geom.length if channel.end == 2 else 0.0
        weight = _modal_weight(raw, k, points, weights)
        amplitude = 0j
        for term in F.terms:
            a = _projection(term, raw, points, weights)
            # g^(o) outside the support responds as (i lam)^o times the g response
            factor = np.sum(a * (1j * lam) ** np.arange(len(a)))
            if abs(factor) == 0.0:
                continue
            tail = axial_response(term.profile, abs(lam), np.array([station]))[0]
            amplitude += weight * factor * tail * np.exp(-1j * lam * station)
        row = POTENTIAL_ROW[raw.family]
        scale = GREEN_SCALE * wave.section.coefficients[row, 0] / raw.coefficients[row, 0]
        entries.append((channel, amplitude / scale))

    channels, values = _ordered(entries)
    logger.debug(f"Direct modal amplitudes at k={k:.6g}: {len(values)} channels")
    return RadiationReport(k, channels, values)
