"""Reconstruction of vector modes from scalar potentials."""

from __future__ import annotations

import numpy as np

from logic.cross_section import BoundaryCondition, CrossSection, constant_pair
from utils import InvalidInputError

from .models import ModeFamily, PencilPoint, VectorModeSection
from .spectrum import threshold_tolerance

# Jet columns
U, D1, D2 = 0, 1, 2

_FAMILY_BC = {
    ModeFamily.TM: BoundaryCondition.DIRICHLET,
    ModeFamily.BETA_SCALAR: BoundaryCondition.DIRICHLET,
    ModeFamily.TE: BoundaryCondition.NEUMANN,
    ModeFamily.ALPHA_SCALAR: BoundaryCondition.NEUMANN,
}


def default_family(bc: BoundaryCondition, scalar: bool = False) -> ModeFamily:
    """TM/TE for Maxwell modes, beta/alpha scalar for the augmented ones."""
    if bc is BoundaryCondition.DIRICHLET:
        return ModeFamily.BETA_SCALAR if scalar else ModeFamily.TM
    return ModeFamily.ALPHA_SCALAR if scalar else ModeFamily.TE


def build_mode(point: PencilPoint, k: float, family: ModeFamily | None = None) -> VectorModeSection:
    """Build the eigenvector of the augmented pencil generated by a potential.

    The transverse components follow from the potential through
        phi1 = (i lam d1 phi3 + i k d2 psi3 - i lam d2 alpha + i k d1 beta) / mu
        phi2 = (i lam d2 phi3 - i k d1 psi3 + i lam d1 alpha + i k d2 beta) / mu
        psi1 = (-i k d2 phi3 + i lam d1 psi3 - i k d1 alpha - i lam d2 beta) / mu
        psi2 = (i k d1 phi3 + i lam d2 psi3 - i k d2 alpha + i lam d1 beta) / mu
    with exactly one of phi3 (TM), psi3 (TE), alpha or beta equal to u.

    Args:
        point: The pencil point carrying lambda, mu and the potential.
        k: Frequency.
        family: Mode family; defaults to TM for Dirichlet and TE for Neumann
            potentials.

    Returns:
        The vector mode section.

    Raises:
        InvalidInputError: If mu is numerically zero or the family does not
            match the potential's boundary condition.
    """
    mu = point.mu
    if abs(mu) <= threshold_tolerance(k):
        raise InvalidInputError(
            "mu = k^2 - lambda^2 vanishes; use special_vectors", context={"k": k, "lambda": point.lam}
        )
    family = family or default_family(point.bc_origin)
    if _FAMILY_BC.get(family) is not point.bc_origin:
        raise InvalidInputError(
            f"Family {family.value} cannot be built from a {point.bc_origin.value} potential"
        )

    il = 1j * complex(point.lam) / mu
    ik = 1j * k / mu
    C = np.zeros((8, 3), dtype=complex)

    if family is ModeFamily.TM:
        C[2, U] = 1.0
        C[0, D1], C[1, D2] = il, il
        C[4, D2], C[5, D1] = -ik, ik
    elif family is ModeFamily.TE:
        C[6, U] = 1.0
        C[0, D2], C[1, D1] = ik, -ik
        C[4, D1], C[5, D2] = il, il
    elif family is ModeFamily.ALPHA_SCALAR:
        C[3, U] = 1.0
        C[0, D2], C[1, D1] = -il, il
        C[4, D1], C[5, D2] = -ik, -ik
    else:
        C[7, U] = 1.0
        C[0, D1], C[1, D2] = ik, ik
        C[4, D2], C[5, D1] = -il, il

    return VectorModeSection(point.potential, C, family)


def special_vectors(cs: CrossSection, k: float) -> list[tuple[PencilPoint, VectorModeSection]]:
    """Eigenvectors built from the constant Neumann potential.

    For k != 0 these sit at lambda = +k and -k with alpha = c and
    psi3 = (lambda / k) c; they have alpha != 0 and so lie outside the Maxwell
    domain. For k = 0 both sit at lambda = 0: one with alpha = c, one with
    psi3 = c (the latter is a Maxwell eigenvector).

    Args:
        cs: The cross-section.
        k: Frequency.

    Returns:
        List of (pencil point, section) pairs.
    """
    const = constant_pair(cs)
    vectors = []
    if k == 0.0:
        for row in (3, 6):
            C = np.zeros((8, 3), dtype=complex)
            C[row, U] = 1.0
            point = PencilPoint(k=0.0, lam=0.0, mu=0.0, bc_origin=BoundaryCondition.NEUMANN, potential=const)
            vectors.append((point, VectorModeSection(const, C, ModeFamily.CONSTANT_SPECIAL)))
        return vectors

    for lam in (k, -k):
        C = np.zeros((8, 3), dtype=complex)
        C[3, U] = 1.0
        C[6, U] = lam / k
        point = PencilPoint(k=k, lam=lam, mu=0.0, bc_origin=BoundaryCondition.NEUMANN, potential=const)
        vectors.append((point, VectorModeSection(const, C, ModeFamily.CONSTANT_SPECIAL)))
    return vectors
