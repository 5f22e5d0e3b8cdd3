"""Data models for pencil points, vector mode sections and residuals."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from logic.cross_section import BoundaryCondition, ScalarEigenpair
from utils import InvalidInputError

# Component order of an augmented section Phi = (phi, alpha, psi, beta)
COMPONENTS = ("phi1", "phi2", "phi3", "alpha", "psi1", "psi2", "psi3", "beta")
PHI = slice(0, 3)
ALPHA = 3
PSI = slice(4, 7)
BETA = 7


class ModeFamily(str, Enum):
    """Family tag of a vector mode."""

    TM = "TM"
    TE = "TE"
    ALPHA_SCALAR = "alpha_scalar"
    BETA_SCALAR = "beta_scalar"
    CONSTANT_SPECIAL = "constant_special"

    @property
    def is_maxwell(self) -> bool:
        return self in (ModeFamily.TE, ModeFamily.TM)


@dataclass(frozen=True, eq=False)
class PencilPoint:
    """An eigenvalue lambda of the pencil at frequency k.

    Attributes:
        k: Frequency.
        lam: Axial wavenumber; real when propagating, i*sqrt(mu - k^2) when
            evanescent.
        mu: Cross-section eigenvalue k^2 - lam^2.
        bc_origin: Boundary condition of the generating scalar problem.
        potential: The generating scalar eigenpair.
    """

    k: float
    lam: complex
    mu: float
    bc_origin: BoundaryCondition
    potential: ScalarEigenpair

    def __post_init__(self) -> None:
        lam = complex(self.lam)
        scale = max(1.0, self.k**2, abs(self.mu))
        if abs(self.k**2 - lam**2 - self.mu) > 1e-12 * scale:
            raise InvalidInputError(
                "Pencil point violates mu = k^2 - lambda^2",
                context={"k": self.k, "lambda": lam, "mu": self.mu},
            )
        if self.mu <= self.k**2 and abs(lam.imag) > 1e-12 * scale:
            raise InvalidInputError("Propagating pencil point must have real lambda")
        if self.mu > self.k**2 and not (lam.imag > 0.0 and abs(lam.real) <= 1e-12 * scale):
            raise InvalidInputError("Evanescent pencil point must have lambda on the positive imaginary axis")

    @property
    def is_propagating(self) -> bool:
        return self.mu <= self.k**2

    @property
    def real_lambda(self) -> float:
        return float(complex(self.lam).real)

    def __str__(self) -> str:
        return f"lambda={complex(self.lam):.8g} ({self.bc_origin.value}, mu={self.mu:.8g})"


@dataclass(frozen=True, eq=False)
class VectorModeSection:
    """A section Phi = (phi, alpha, psi, beta) driven by one scalar potential.

    Every component is a fixed linear combination of the potential u and its
    first derivatives: Phi = C @ [u, d1 u, d2 u].

    Attributes:
        potential: The generating scalar eigenpair.
        coefficients: Complex matrix C of shape (8, 3).
        family: Family tag.
    """

    potential: ScalarEigenpair
    coefficients: NDArray[np.complex128]
    family: ModeFamily

    @classmethod
    def zero(cls, potential: ScalarEigenpair, family: ModeFamily = ModeFamily.TE) -> VectorModeSection:
        return cls(potential, np.zeros((8, 3), dtype=complex), family)

    @property
    def section(self):
        return self.potential.section

    @property
    def in_maxwell_domain(self) -> bool:
        """True when alpha and beta vanish identically."""
        return not (np.any(self.coefficients[ALPHA]) or np.any(self.coefficients[BETA]))

    def scaled(self, factor: complex) -> VectorModeSection:
        return VectorModeSection(self.potential, self.coefficients * factor, self.family)

    def values(self, points: NDArray[np.float64]) -> NDArray[np.complex128]:
        """Components at points, shape (8, P)."""
        jet = self.potential.jet(points, order=1)
        return self.coefficients @ jet

    def derivatives(
        self, points: NDArray[np.float64]
    ) -> tuple[NDArray[np.complex128], NDArray[np.complex128], NDArray[np.complex128]]:
        """Components and their transverse derivatives, each of shape (8, P)."""
        jet = self.potential.jet(points, order=2)
        C = self.coefficients
        return C @ jet[[0, 1, 2]], C @ jet[[1, 3, 4]], C @ jet[[2, 4, 5]]

    def boundary_residual(self, count: int = 100) -> float:
        """Largest violation of phi_tau = 0, psi_nu = 0, beta = 0 at boundary samples."""
        points, normals = self.section.boundary_samples(count)
        v = self.values(points)
        nx, ny = normals[:, 0], normals[:, 1]
        tangential_phi = -ny * v[0] + nx * v[1]
        normal_psi = nx * v[4] + ny * v[5]
        parts = np.abs(np.vstack([tangential_phi, v[2], normal_psi, v[BETA]]))
        return float(parts.max()) if parts.size else 0.0


@dataclass(frozen=True, eq=False)
class ResidualField:
    """An eight-component field sampled at points."""

    points: NDArray[np.float64]
    values: NDArray[np.complex128]

    @property
    def max_norm(self) -> float:
        return float(np.abs(self.values).max()) if self.values.size else 0.0


@dataclass(frozen=True)
class MultiplicityReport:
    """Multiplicities of a pencil eigenvalue.

    kappa_A = 2 kappa_M = 2 kappa_D + 2 kappa_N off the points lambda^2 = k^2.
    """

    kappa_A: int
    kappa_M: int
    kappa_D: int
    kappa_N: int

    def __post_init__(self) -> None:
        if not (self.kappa_A == 2 * self.kappa_M == 2 * self.kappa_D + 2 * self.kappa_N):
            raise InvalidInputError("Inconsistent multiplicity report", context=self)


@dataclass(frozen=True)
class Threshold:
    """A threshold frequency sqrt(mu) of one end.

    Attributes:
        k: Threshold frequency.
        end: 1-based end index.
        bc: Boundary condition of the eigenvalue.
        multiplicity: Multiplicity of mu in that spectrum.
    """

    k: float
    end: int
    bc: BoundaryCondition
    multiplicity: int
