"""Integration-by-parts identities of the pencil, evaluated by quadrature.

These are diagnostics: every function returns defects rather than raising,
so a large number only means the trial fields or the quadrature are too
rough.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P
from numpy.typing import NDArray

from logic.cross_section import CrossSection
from utils import InvalidInputError

from .operator import augmented_operator
from .profiles import BumpProfile

# Support of the axial cutoff inside the segment (0, 1) of the Green-formula check
SEGMENT_SUPPORT = (0.1, 0.9)


@dataclass(frozen=True, eq=False)
class PolynomialField:
    """An eight-component field whose components are polynomials in (x, y).

    coefficients[c, i, j] multiplies x**i * y**j in component c.
    """

    coefficients: NDArray[np.complex128]

    def __post_init__(self) -> None:
        c = np.asarray(self.coefficients)
        if c.ndim != 3 or c.shape[0] != 8:
            raise InvalidInputError("Polynomial field needs coefficients of shape (8, d, d)", context=c.shape)

    @property
    def degree(self) -> int:
        return max(self.coefficients.shape[1:]) - 1

    def _eval(self, coeffs: NDArray, points: NDArray) -> NDArray[np.complex128]:
        x, y = points[:, 0], points[:, 1]
        return np.stack([P.polyval2d(x, y, c) for c in coeffs])

    def values(self, points: NDArray[np.float64]) -> NDArray[np.complex128]:
        return self._eval(self.coefficients, points)

    def derivatives(
        self, points: NDArray[np.float64]
    ) -> tuple[NDArray[np.complex128], NDArray[np.complex128], NDArray[np.complex128]]:
        """Values and the x- and y-derivatives, each of shape (8, P)."""
        c = self.coefficients
        return (
            self._eval(c, points),
            self._eval(P.polyder(c, axis=1), points),
            self._eval(P.polyder(c, axis=2), points),
        )


@dataclass(frozen=True)
class IdentityResiduals:
    """Defects of the identities plus their boundary terms.

    Attributes:
        ort1: |(grad alpha, phi) - boundary + (alpha, div phi)|.
        ort2: |(rot phi, psi) - boundary - (phi, rot psi)|.
        green: Defect of the Green formula on a finite cylinder segment.
        ort1_boundary: Boundary integral of alpha * conj(phi . nu).
        ort2_boundary: Boundary integral of phi . conj(psi x nu).
        green_bq: The lateral pairing (BU, QV).
        green_qb: The lateral pairing (QU, BV).
    """

    ort1: float
    ort2: float
    green: float
    ort1_boundary: complex
    ort2_boundary: complex
    green_bq: complex
    green_qb: complex

    @property
    def max_defect(self) -> float:
        return max(self.ort1, self.ort2, self.green)


def _grad(alpha: NDArray, d1: NDArray, d2: NDArray, lam: complex) -> NDArray:
    return np.stack([d1, d2, 1j * lam * alpha])


def _div(vec: NDArray, d1: NDArray, d2: NDArray, lam: complex) -> NDArray:
    return d1[0] + d2[1] + 1j * lam * vec[2]


def _rot(vec: NDArray, d1: NDArray, d2: NDArray, lam: complex) -> NDArray:
    return np.stack(
        [
            d2[2] - 1j * lam * vec[1],
            1j * lam * vec[0] - d1[2],
            d1[1] - d2[0],
        ]
    )


def _cross_normal(vec: NDArray, normals: NDArray) -> NDArray:
    """vec x nu for a transverse normal nu = (n1, n2, 0)."""
    n1, n2 = normals[:, 0], normals[:, 1]
    return np.stack([-vec[2] * n2, vec[2] * n1, vec[0] * n2 - vec[1] * n1])


def _normal_cross(vec: NDArray, normals: NDArray) -> NDArray:
    """nu x vec for a transverse normal nu = (n1, n2, 0)."""
    return -_cross_normal(vec, normals)


def _dot_normal(vec: NDArray, normals: NDArray) -> NDArray:
    return vec[0] * normals[:, 0] + vec[1] * normals[:, 1]


def _pair(a: NDArray, b: NDArray, weights: NDArray) -> complex:
    """Sum over components and points of w * a * conj(b)."""
    return complex(np.sum(weights * np.sum(np.atleast_2d(a) * np.conj(np.atleast_2d(b)), axis=0)))


def _orthogonality(cs: CrossSection, lam: complex, u: PolynomialField, v: PolynomialField, order: int):
    points, weights = cs.quadrature(order)
    bpoints, bweights, normals = cs.boundary_quadrature(order)
    uv, u1, u2 = u.derivatives(points)
    vv, v1, v2 = v.derivatives(points)
    ub = u.values(bpoints)
    vb = v.values(bpoints)
    lam_bar = np.conj(lam)

    # (grad(lam) alpha_u, phi_v) = <alpha_u, phi_v . nu> - (alpha_u, div(conj lam) phi_v)
    lhs1 = _pair(_grad(uv[3], u1[3], u2[3], lam), vv[0:3], weights)
    boundary1 = _pair(ub[3], _dot_normal(vb[0:3], normals), bweights)
    volume1 = _pair(uv[3], _div(vv[0:3], v1[0:3], v2[0:3], lam_bar), weights)
    ort1 = abs(lhs1 - boundary1 + volume1)

    # (rot(lam) phi_u, psi_v) = <phi_u, psi_v x nu> + (phi_u, rot(conj lam) psi_v)
    lhs2 = _pair(_rot(uv[0:3], u1[0:3], u2[0:3], lam), vv[4:7], weights)
    boundary2 = _pair(ub[0:3], _cross_normal(vb[4:7], normals), bweights)
    volume2 = _pair(uv[0:3], _rot(vv[4:7], v1[4:7], v2[4:7], lam_bar), weights)
    ort2 = abs(lhs2 - boundary2 - volume2)

    return ort1, ort2, boundary1, boundary2


def _boundary_operators(values: NDArray, normals: NDArray) -> tuple[NDArray, NDArray]:
    """B U = (nu x u1, <u2, nu>, a2) and Q U = (-i u2, -i a1, <i u1, nu>), stacked as 5 rows."""
    b = np.vstack(
        [
            _normal_cross(values[0:3], normals),
            _dot_normal(values[4:7], normals)[None],
            values[7][None],
        ]
    )
    q = np.vstack(
        [
            -1j * values[4:7],
            -1j * values[3][None],
            1j * _dot_normal(values[0:3], normals)[None],
        ]
    )
    return b, q


def _green(cs: CrossSection, lam: complex, k: float, u: PolynomialField, v: PolynomialField, order: int):
    """Green formula on the segment of Omega x (0, 1) with U = g(t) e^{i lam t} u(y)."""
    profile = BumpProfile(*SEGMENT_SUPPORT)
    t, wt = profile.quadrature(max(2 * order, 32))
    g = profile(t)
    dg = profile.derivative(t, 1)
    phase = np.exp(1j * lam * t)

    points, weights = cs.quadrature(order)
    bpoints, bweights, normals = cs.boundary_quadrature(order)
    uv, u1, u2 = u.derivatives(points)
    vv, v1, v2 = v.derivatives(points)
    ub, vb = u.values(bpoints), v.values(bpoints)
    bu, qu = _boundary_operators(ub, normals)
    bv, qv = _boundary_operators(vb, normals)

    au_v = u_av = bq = qb = 0.0j
    for wj, gj, dgj, ph in zip(wt, g, dg, phase):
        s, ds = gj * ph, (dgj + 1j * lam * gj) * ph
        # V carries the same axial factor as U
        au = augmented_operator(s * uv, s * u1, s * u2, ds * uv, k)
        av = augmented_operator(s * vv, s * v1, s * v2, ds * vv, k)
        au_v += wj * _pair(au, s * vv, weights)
        u_av += wj * _pair(s * uv, av, weights)
        scale = wj * abs(s) ** 2
        bq += scale * _pair(bu, qv, bweights)
        qb += scale * _pair(qu, bv, bweights)

    return abs(au_v + bq - u_av - qb), bq, qb


def identity_residuals(
    cs: CrossSection,
    lam: complex,
    u: PolynomialField,
    v: PolynomialField,
    k: float = 1.0,
    order: int | None = None,
) -> IdentityResiduals:
    """Check the pencil's integration-by-parts identities for two trial fields.

    The two transverse identities pair alpha and phi of u with phi and psi of
    v on the cross-section; the Green formula is evaluated on the cylinder
    segment Omega x (0, 1) for fields cut off by a polynomial bump in t.

    Args:
        cs: The cross-section.
        lam: Axial wavenumber, may be complex.
        u: First trial field.
        v: Second trial field.
        k: Frequency used by the Green formula.
        order: Quadrature order; defaults to one that is exact for the trial
            polynomials on rectangles.

    Returns:
        The defects and boundary terms.
    """
    order = order or max(u.degree, v.degree) + 6
    ort1, ort2, boundary1, boundary2 = _orthogonality(cs, lam, u, v, order)
    green, bq, qb = _green(cs, lam, k, u, v, order)
    return IdentityResiduals(ort1, ort2, green, boundary1, boundary2, bq, qb)
