"""Compactly supported source fields in a straight guide."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from logic.cross_section import BoundaryCondition, CrossSection, ScalarEigenpair
from logic.pencil import BumpProfile
from utils import InvalidInputError

# Jet columns of the potential
U, D1, D2 = 0, 1, 2
# Jet rows holding d1 and d2 of [u, u_1, u_2]
_D1_ROWS = [1, 3, 4]
_D2_ROWS = [2, 4, 5]


class SourceKind(str, Enum):
    """How a source term was built."""

    TE = "TE"
    TM = "TM"
    GRADIENT = "gradient"
    POTENTIAL_GRADIENT = "potential_gradient"


@dataclass(frozen=True, eq=False)
class SourceTerm:
    """One separable term F(y, t) = sum C[c, j, o] * jet_j u(y) * g^(o)(t).

    Attributes:
        potential: Scalar eigenpair u.
        coefficients: Complex array of shape (8, 3, 3): component, jet column
            (u, d1 u, d2 u), axial derivative order of g.
        profile: Axial profile g.
        kind: Construction tag.
    """

    potential: ScalarEigenpair
    coefficients: NDArray[np.complex128]
    profile: BumpProfile
    kind: SourceKind

    def __post_init__(self) -> None:
        if np.shape(self.coefficients) != (8, 3, 3):
            raise InvalidInputError("Source coefficients must have shape (8, 3, 3)")

    def _axial(self, t: NDArray, shift: int = 0) -> NDArray[np.complex128]:
        return np.stack([self.profile.derivative(t, o + shift) for o in range(3)])

    def values(self, points: NDArray[np.float64], t: NDArray[np.float64]) -> NDArray[np.complex128]:
        """Components on the grid points x t, shape (8, P, T)."""
        jet = self.potential.jet(points, order=1)
        return np.einsum("cjo,jp,ot->cpt", self.coefficients, jet, self._axial(t))

    def derivatives(self, points: NDArray[np.float64], t: NDArray[np.float64]):
        """Components and their d1, d2 and axial derivatives, each (8, P, T)."""
        jet = self.potential.jet(points, order=2)
        g = self._axial(t)
        C = self.coefficients
        return (
            np.einsum("cjo,jp,ot->cpt", C, jet[[0, 1, 2]], g),
            np.einsum("cjo,jp,ot->cpt", C, jet[_D1_ROWS], g),
            np.einsum("cjo,jp,ot->cpt", C, jet[_D2_ROWS], g),
            np.einsum("cjo,jp,ot->cpt", C, jet[[0, 1, 2]], self._axial(t, shift=1)),
        )


@dataclass(frozen=True, eq=False)
class SourceField:
    """F = (f1, h1, f2, h2) as a sum of separable terms on one cross-section."""

    section: CrossSection
    terms: tuple[SourceTerm, ...] = ()

    @property
    def support(self) -> tuple[float, float]:
        if not self.terms:
            return 0.0, 0.0
        return min(t.profile.start for t in self.terms), max(t.profile.stop for t in self.terms)

    def __add__(self, other: SourceField) -> SourceField:
        if other.section is not self.section:
            raise InvalidInputError("Sources live on different cross-sections")
        return SourceField(self.section, self.terms + other.terms)

    def values(self, points: NDArray[np.float64], t: NDArray[np.float64]) -> NDArray[np.complex128]:
        points = np.atleast_2d(points)
        t = np.atleast_1d(np.asarray(t, dtype=float))
        total = np.zeros((8, len(points), len(t)), dtype=complex)
        for term in self.terms:
            total += term.values(points, t)
        return total


def _single(cs: CrossSection, potential: ScalarEigenpair, C: NDArray, profile: BumpProfile, kind: SourceKind):
    if potential.section is not cs and potential.section.key != cs.key:
        raise InvalidInputError("Potential does not belong to the guide's cross-section")
    return SourceField(cs, (SourceTerm(potential, C, profile, kind),))


def modal_source(cs: CrossSection, potential: ScalarEigenpair, profile: BumpProfile) -> SourceField:
    """A source that drives exactly one TE or TM mode.

    Neumann potentials give f1 = (i g / mu)(-d2 u, d1 u, 0), Dirichlet ones
    f2 = (i g / mu)(d2 u, -d1 u, 0); both are divergence free and meet the
    boundary compatibility condition.

    Raises:
        InvalidInputError: For the constant potential.
    """
    if potential.mu <= 0.0:
        raise InvalidInputError("Modal sources need a positive eigenvalue", context={"mu": potential.mu})
    C = np.zeros((8, 3, 3), dtype=complex)
    scale = 1j / potential.mu
    if potential.bc is BoundaryCondition.NEUMANN:
        C[0, D2, 0], C[1, D1, 0] = -scale, scale
        kind = SourceKind.TE
    else:
        C[4, D2, 0], C[5, D1, 0] = scale, -scale
        kind = SourceKind.TM
    return _single(cs, potential, C, profile, kind)


def gradient_source(cs: CrossSection, potential: ScalarEigenpair, profile: BumpProfile) -> SourceField:
    """f1 = grad(u g) with h = 0; violates div f1 - i k h2 = 0."""
    C = np.zeros((8, 3, 3), dtype=complex)
    C[0, D1, 0] = C[1, D2, 0] = 1.0
    C[2, U, 1] = 1.0
    return _single(cs, potential, C, profile, SourceKind.GRADIENT)


def potential_gradient_source(
    cs: CrossSection, potential: ScalarEigenpair, profile: BumpProfile, k: float
) -> SourceField:
    """f2 = grad(u g), h1 = (i / k)(g'' - mu g) u for a Neumann potential u.

    Compatible, and radiates nothing: u2 = -grad(u g) / k solves the problem
    with compact support.

    Raises:
        InvalidInputError: If k = 0 or the potential is not a Neumann one.
    """
    if k == 0.0:
        raise InvalidInputError("Potential-gradient sources need k != 0")
    if potential.bc is not BoundaryCondition.NEUMANN:
        raise InvalidInputError("Potential-gradient sources need a Neumann potential")
    C = np.zeros((8, 3, 3), dtype=complex)
    C[4, D1, 0] = C[5, D2, 0] = 1.0
    C[6, U, 1] = 1.0
    C[3, U, 2] = 1j / k
    C[3, U, 0] = -1j * potential.mu / k
    return _single(cs, potential, C, profile, SourceKind.POTENTIAL_GRADIENT)


def compatibility_residual(
    F: SourceField, k: float, order: int | None = None, axial_order: int = 24, boundary_count: int = 100
) -> tuple[float, float, float]:
    """Max-norm residuals of the compatibility conditions of a source.

    r1 = div f1 - i k h2 and r2 = div f2 + i k h1 in the guide,
    r3 = <f2, nu> on its lateral boundary.

    Args:
        F: The source.
        k: Frequency.
        order: Cross-section quadrature order of the volume grid.
        axial_order: Gauss points per term support in t.
        boundary_count: Boundary samples per axial station.

    Returns:
        Tuple (r1, r2, r3).
    """
    cs = F.section
    points, _ = cs.quadrature(order)
    bpoints, normals = cs.boundary_samples(boundary_count)
    r1 = r2 = r3 = 0.0
    for term in F.terms:
        t, _ = term.profile.quadrature(axial_order)
        values, d1, d2, d3 = (np.zeros((8, len(points), len(t)), dtype=complex) for _ in range(4))
        for other in F.terms:
            parts = other.derivatives(points, t)
            values, d1, d2, d3 = (acc + part for acc, part in zip((values, d1, d2, d3), parts))
        div_f1 = d1[0] + d2[1] + d3[2]
        div_f2 = d1[4] + d2[5] + d3[6]
        r1 = max(r1, float(np.abs(div_f1 - 1j * k * values[7]).max()))
        r2 = max(r2, float(np.abs(div_f2 + 1j * k * values[3]).max()))
        bvalues = F.values(bpoints, t)
        normal_f2 = bvalues[4] * normals[:, 0, None] + bvalues[5] * normals[:, 1, None]
        r3 = max(r3, float(np.abs(normal_f2).max()))
    return r1, r2, r3
