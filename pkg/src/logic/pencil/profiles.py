"""Compactly supported polynomial axial profiles."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.polynomial import Polynomial
from numpy.typing import NDArray

from utils import InvalidInputError


@dataclass(frozen=True, eq=False)
class BumpProfile:
    """The bump amplitude * (1 - s^2)^power on [start, stop], zero elsewhere.

    s maps [start, stop] onto [-1, 1]; the bump has power - 1 continuous
    derivatives at the ends of its support.
    """

    start: float
    stop: float
    amplitude: complex = 1.0
    power: int = 4

    def __post_init__(self) -> None:
        if not self.stop > self.start:
            raise InvalidInputError("Bump support must have positive length", context=(self.start, self.stop))

    @property
    def center(self) -> float:
        return 0.5 * (self.start + self.stop)

    @property
    def half_width(self) -> float:
        return 0.5 * (self.stop - self.start)

    @cached_property
    def _shape(self) -> Polynomial:
        return Polynomial([1.0, 0.0, -1.0]) ** self.power

    def derivative(self, t: NDArray[np.float64], order: int = 0) -> NDArray[np.complex128]:
        """The order-th t-derivative of the profile at t."""
        t = np.asarray(t, dtype=float)
        s = (t - self.center) / self.half_width
        poly = self._shape.deriv(order) if order else self._shape
        inside = np.abs(s) <= 1.0
        return np.where(inside, self.amplitude * poly(s) / self.half_width**order, 0.0)

    def __call__(self, t: NDArray[np.float64]) -> NDArray[np.complex128]:
        return self.derivative(t, 0)

    def quadrature(self, order: int = 24) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """Gauss-Legendre nodes and weights on the support."""
        x, w = np.polynomial.legendre.leggauss(order)
        return self.center + self.half_width * x, self.half_width * w

    def fourier(self, lam: complex, order: int = 64) -> complex:
        """The transform integral of exp(-i lam t) g(t) dt over the support."""
        t, w = self.quadrature(order)
        return complex(np.sum(w * np.exp(-1j * lam * t) * self(t)))
