"""The augmented operator and its pencil action."""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from .models import ResidualField, VectorModeSection


def augmented_operator(
    values: NDArray[np.complex128],
    d1: NDArray[np.complex128],
    d2: NDArray[np.complex128],
    d3: NDArray[np.complex128],
    k: float,
) -> NDArray[np.complex128]:
    """Apply the augmented Maxwell operator to an eight-component field.

    With U = (u1, a1, u2, a2) laid out as (phi, alpha, psi, beta):
        i rot psi + i grad beta - k phi
        -i div psi - k alpha
        -i rot phi - i grad alpha - k psi
        i div phi - k beta

    Args:
        values: Field components, shape (8, ...).
        d1: First transverse derivatives, same shape.
        d2: Second transverse derivatives, same shape.
        d3: Axial derivatives, same shape (i*lambda*values for the pencil).
        k: Frequency.

    Returns:
        The eight components of the operator applied to the field.
    """

    def rot(lo: int) -> NDArray:
        return np.stack(
            [
                d2[lo + 2] - d3[lo + 1],
                d3[lo] - d1[lo + 2],
                d1[lo + 1] - d2[lo],
            ]
        )

    def div(lo: int) -> NDArray:
        return d1[lo] + d2[lo + 1] + d3[lo + 2]

    def grad(i: int) -> NDArray:
        return np.stack([d1[i], d2[i], d3[i]])

    out = np.empty_like(values, dtype=complex)
    out[0:3] = 1j * rot(4) + 1j * grad(7) - k * values[0:3]
    out[3] = -1j * div(4) - k * values[3]
    out[4:7] = -1j * rot(0) - 1j * grad(3) - k * values[4:7]
    out[7] = 1j * div(0) - k * values[7]
    return out


def apply_pencil(
    section: VectorModeSection, lam: complex, k: float, order: int | None = None
) -> ResidualField:
    """Evaluate the pencil A(lambda, k) applied to a section on a quadrature grid.

    Args:
        section: The section Phi.
        lam: Axial wavenumber.
        k: Frequency.
        order: Quadrature order of the grid.

    Returns:
        The residual field; its max norm vanishes for a true eigenvector.
    """
    points, _ = section.section.quadrature(order)
    values, d1, d2 = section.derivatives(points)
    return ResidualField(points, augmented_operator(values, d1, d2, 1j * lam * values, k))
