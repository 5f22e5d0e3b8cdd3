"""Extension of cylinder waves to the whole domain by a smooth axial cutoff."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from utils import SupportViolationError

from .models import CutoffProfile, CylinderWave


@dataclass(frozen=True)
class SmoothstepCutoff:
    """Quintic smoothstep rising from 0 at t_inner to 1 at t_outer."""

    profile: CutoffProfile

    @property
    def width(self) -> float:
        return self.profile.t_outer - self.profile.t_inner

    def _x(self, t: NDArray) -> NDArray:
        return np.clip((np.asarray(t, dtype=float) - self.profile.t_inner) / self.width, 0.0, 1.0)

    def __call__(self, t: NDArray[np.float64]) -> NDArray[np.float64]:
        x = self._x(t)
        return x**3 * (10.0 - 15.0 * x + 6.0 * x**2)

    def derivative(self, t: NDArray[np.float64]) -> NDArray[np.float64]:
        x = self._x(t)
        return 30.0 * x**2 * (1.0 - x) ** 2 / self.width


@dataclass(frozen=True, eq=False)
class WaveExtension:
    """The field chi(t) exp(i lam t) Phi(y) on one end, zero on the others."""

    wave: CylinderWave
    cutoff: SmoothstepCutoff

    @property
    def end_index(self) -> int:
        return self.wave.end_index

    def evaluate(self, end: int, points: NDArray[np.float64], t: NDArray[np.float64]) -> NDArray[np.complex128]:
        """Evaluate at cross-section points and end-local axial coordinates.

        Args:
            end: 1-based end index of the evaluation points.
            points: Cross-section points, shape (P, 2).
            t: Axial coordinates, shape (P,) or scalar.

        Returns:
            The eight components, shape (8, P).
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        t = np.broadcast_to(np.asarray(t, dtype=float), (len(points),))
        if end != self.wave.end_index:
            return np.zeros((8, len(points)), dtype=complex)
        factor = self.cutoff(t) * np.exp(1j * self.wave.lam * t)
        return self.wave.section.values(points) * factor


def extend_to_domain(
    wave: CylinderWave, t_outer: float | None = None, cylinder_start: float = 0.0
) -> WaveExtension:
    """Cut a wave off smoothly so that it lives only in the cylindrical part of its end.

    Args:
        wave: The wave.
        t_outer: Start of the chi = 1 region; defaults to the wave's cutoff.
        cylinder_start: Axial coordinate where the end's half-cylinder begins.

    Returns:
        The extension descriptor.

    Raises:
        SupportViolationError: If the cutoff ramp starts before the cylinder.
    """
    profile = CutoffProfile(t_outer) if t_outer is not None else wave.cutoff
    if profile.t_inner < cylinder_start:
        raise SupportViolationError(
            "Cutoff support leaves the cylindrical part of the end",
            context={"t_inner": profile.t_inner, "cylinder_start": cylinder_start},
        )
    return WaveExtension(wave, SmoothstepCutoff(profile))
