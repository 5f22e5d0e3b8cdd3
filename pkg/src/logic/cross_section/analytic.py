"""Closed-form Helmholtz eigenpairs of rectangles and discs."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.special import jn_zeros, jnp_zeros, jv

from .models import BoundaryCondition, CrossSection, ScalarEigenpair


@dataclass(frozen=True)
class ConstantMode:
    """The constant Neumann eigenfunction 1/sqrt(|Omega|)."""

    value: float

    def jet(self, points: NDArray[np.float64], order: int) -> NDArray[np.float64]:
        out = np.zeros((3 if order < 2 else 6, len(points)))
        out[0] = self.value
        return out


@dataclass(frozen=True)
class RectangleMode:
    """Separable mode c X_m(x) Y_n(y) on [0, a] x [0, b]."""

    a: float
    b: float
    m: int
    n: int
    bc: BoundaryCondition

    @property
    def normalization(self) -> float:
        if self.bc is BoundaryCondition.DIRICHLET:
            return 2.0 / math.sqrt(self.a * self.b)
        cx = math.sqrt((1.0 if self.m == 0 else 2.0) / self.a)
        cy = math.sqrt((1.0 if self.n == 0 else 2.0) / self.b)
        return cx * cy

    def _factor(self, s: NDArray, p: float) -> tuple[NDArray, NDArray, NDArray]:
        if self.bc is BoundaryCondition.DIRICHLET:
            f, df = np.sin(p * s), p * np.cos(p * s)
        else:
            f, df = np.cos(p * s), -p * np.sin(p * s)
        return f, df, -p * p * f

    def jet(self, points: NDArray[np.float64], order: int) -> NDArray[np.float64]:
        c = self.normalization
        x, dx, ddx = self._factor(points[:, 0], self.m * np.pi / self.a)
        y, dy, ddy = self._factor(points[:, 1], self.n * np.pi / self.b)
        rows = [x * y, dx * y, x * dy]
        if order >= 2:
            rows += [ddx * y, dx * dy, x * ddy]
        return c * np.array(rows)


@dataclass(frozen=True)
class DiscMode:
    """Bessel mode c J_n(kappa r) cos(n theta) (parity 0) or sin(n theta) (parity 1).

    Derivatives use the ladder relations of the complex Bessel waves
    F_n = J_n(kappa r) exp(i n theta), which stay regular at the centre.
    """

    radius: float
    n: int
    kappa: float
    parity: int
    normalization: float

    def _wave(self, order: int, r: NDArray, theta: NDArray) -> NDArray[np.complex128]:
        return jv(order, self.kappa * r) * np.exp(1j * order * theta)

    def jet(self, points: NDArray[np.float64], order: int) -> NDArray[np.float64]:
        r = np.hypot(points[:, 0], points[:, 1])
        theta = np.arctan2(points[:, 1], points[:, 0])
        n, kap = self.n, self.kappa
        f = {j: self._wave(n + j, r, theta) for j in range(-2, 3)}

        rows = [
            f[0],
            0.5 * kap * (f[-1] - f[1]),
            0.5j * kap * (f[1] + f[-1]),
        ]
        if order >= 2:
            q = 0.25 * kap * kap
            rows += [
                q * (f[-2] - 2.0 * f[0] + f[2]),
                1j * q * (f[-2] - f[2]),
                -q * (f[2] + 2.0 * f[0] + f[-2]),
            ]
        stacked = np.array(rows)
        part = stacked.real if self.parity == 0 else stacked.imag
        return self.normalization * part


def constant_pair(cs: CrossSection) -> ScalarEigenpair:
    """The exact mu = 0 Neumann pair of a connected cross-section."""
    return ScalarEigenpair(
        bc=BoundaryCondition.NEUMANN,
        mu=0.0,
        eigenfunction=ConstantMode(1.0 / math.sqrt(cs.area)),
        section=cs,
        label=(),
    )


def rectangle_pairs(cs: CrossSection, bc: BoundaryCondition, cutoff: float) -> list[ScalarEigenpair]:
    """All rectangle eigenpairs with mu <= cutoff, ordered by (mu, m, n).

    Args:
        cs: Analytic rectangle section.
        bc: Boundary condition.
        cutoff: Largest eigenvalue to include.

    Returns:
        Ordered list of eigenpairs.
    """
    a, b = cs.a, cs.b
    lowest = 1 if bc is BoundaryCondition.DIRICHLET else 0
    m_max = int(math.floor(a * math.sqrt(cutoff) / math.pi)) + 1
    n_max = int(math.floor(b * math.sqrt(cutoff) / math.pi)) + 1

    found = []
    for m in range(lowest, m_max + 1):
        for n in range(lowest, n_max + 1):
            mu = (m * math.pi / a) ** 2 + (n * math.pi / b) ** 2
            if mu <= cutoff:
                found.append((mu, m, n))
    found.sort()

    pairs = []
    for mu, m, n in found:
        if m == 0 and n == 0:
            pairs.append(constant_pair(cs))
            continue
        pairs.append(
            ScalarEigenpair(
                bc=bc, mu=mu, eigenfunction=RectangleMode(a, b, m, n, bc), section=cs, label=(m, n)
            )
        )
    return pairs


def disc_pairs(cs: CrossSection, bc: BoundaryCondition, cutoff: float) -> list[ScalarEigenpair]:
    """All disc eigenpairs with mu <= cutoff, ordered by (mu, n, s, parity).

    Dirichlet modes use the zeros j_{n,s} of J_n, Neumann modes the zeros
    j'_{n,s} of J_n' (with the constant mode for mu = 0).

    Args:
        cs: Analytic disc section.
        bc: Boundary condition.
        cutoff: Largest eigenvalue to include.

    Returns:
        Ordered list of eigenpairs.
    """
    R = cs.radius
    limit = R * math.sqrt(cutoff)
    found = []
    # j_{n,1} and j'_{n,1} both exceed n
    for n in range(int(limit) + 2):
        count = int(limit / math.pi) + 3
        zeros = jn_zeros(n, count) if bc is BoundaryCondition.DIRICHLET else jnp_zeros(n, count)
        zeros = zeros[zeros <= limit]
        for s, z in enumerate(zeros, start=1):
            for parity in (0, 1) if n > 0 else (0,):
                found.append(((z / R) ** 2, n, s, parity, float(z)))
    found.sort()

    pairs = [constant_pair(cs)] if bc is BoundaryCondition.NEUMANN else []
    for mu, n, s, parity, z in found:
        angular = 2.0 * math.pi if n == 0 else math.pi
        if bc is BoundaryCondition.DIRICHLET:
            radial = 0.5 * R * R * jv(n + 1, z) ** 2
        else:
            radial = 0.5 * R * R * (1.0 - (n / z) ** 2) * jv(n, z) ** 2
        norm = 1.0 / math.sqrt(angular * radial)
        pairs.append(
            ScalarEigenpair(
                bc=bc,
                mu=mu,
                eigenfunction=DiscMode(R, n, z / R, parity, norm),
                section=cs,
                label=(n, s, parity),
            )
        )
    return pairs
