"""Quadrature rules and sample points on cross-sections."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
from numpy.polynomial.legendre import leggauss
from numpy.typing import NDArray

from .models import Backend, SectionKind

if TYPE_CHECKING:
    from .models import CrossSection

DEFAULT_ORDER = 40

# Barycentric coordinates of the edge midpoints
_MIDPOINT_RULE = np.array([[0.5, 0.5, 0.0], [0.0, 0.5, 0.5], [0.5, 0.0, 0.5]])


def gauss_interval(lo: float, hi: float, order: int) -> tuple[NDArray, NDArray]:
    """Gauss-Legendre nodes and weights mapped to [lo, hi]."""
    x, w = leggauss(order)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w


def area_rule(cs: CrossSection, order: int | None = None) -> tuple[NDArray, NDArray]:
    """Area quadrature rule of a cross-section.

    Rectangles use a tensor Gauss-Legendre rule, discs Gauss-Legendre in the
    radius times the trapezoidal rule in angle, meshes the edge-midpoint rule
    on every triangle (exact for P1 products).

    Args:
        cs: The cross-section.
        order: Points per direction; ignored for meshes.

    Returns:
        Tuple (points (P, 2), weights (P,)).
    """
    order = order or DEFAULT_ORDER

    if cs.backend is Backend.FEM:
        mesh = cs.mesh
        corners = mesh.nodes[mesh.triangles]
        points = np.einsum("qi,tij->tqj", _MIDPOINT_RULE, corners).reshape(-1, 2)
        weights = np.repeat(mesh.signed_areas / 3.0, 3)
        return points, weights

    if cs.kind is SectionKind.RECTANGLE:
        x, wx = gauss_interval(0.0, cs.a, order)
        y, wy = gauss_interval(0.0, cs.b, order)
        xx, yy = np.meshgrid(x, y, indexing="ij")
        return np.column_stack([xx.ravel(), yy.ravel()]), np.outer(wx, wy).ravel()

    r, wr = gauss_interval(0.0, cs.radius, order)
    n_theta = 4 * order
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    rr, tt = np.meshgrid(r, theta, indexing="ij")
    weights = np.outer(wr * r, np.full(n_theta, 2.0 * np.pi / n_theta)).ravel()
    points = np.column_stack([(rr * np.cos(tt)).ravel(), (rr * np.sin(tt)).ravel()])
    return points, weights


def boundary_rule(
    cs: CrossSection, order: int | None = None
) -> tuple[NDArray, NDArray, NDArray]:
    """Boundary quadrature rule with outward unit normals.

    Args:
        cs: The cross-section.
        order: Points per side (rectangle), per edge (mesh, capped at 4) or a
            quarter of the angular count (disc).

    Returns:
        Tuple (points (P, 2), weights (P,), normals (P, 2)).
    """
    order = order or DEFAULT_ORDER

    if cs.backend is Backend.FEM:
        mesh = cs.mesh
        edge_order = min(order, 4)
        s, ws = gauss_interval(0.0, 1.0, edge_order)
        start = mesh.nodes[mesh.boundary_edges[:, 0]]
        stop = mesh.nodes[mesh.boundary_edges[:, 1]]
        delta = stop - start
        lengths = np.linalg.norm(delta, axis=1)
        normals = np.column_stack([delta[:, 1], -delta[:, 0]]) / lengths[:, None]
        normals *= _outward_signs(cs, start, stop, normals)[:, None]
        points = (start[:, None, :] + s[None, :, None] * delta[:, None, :]).reshape(-1, 2)
        weights = (lengths[:, None] * ws[None, :]).ravel()
        return points, weights, np.repeat(normals, edge_order, axis=0)

    if cs.kind is SectionKind.RECTANGLE:
        a, b = cs.a, cs.b
        x, wx = gauss_interval(0.0, a, order)
        y, wy = gauss_interval(0.0, b, order)
        sides = [
            (np.column_stack([x, np.zeros_like(x)]), wx, (0.0, -1.0)),
            (np.column_stack([np.full_like(y, a), y]), wy, (1.0, 0.0)),
            (np.column_stack([x, np.full_like(x, b)]), wx, (0.0, 1.0)),
            (np.column_stack([np.zeros_like(y), y]), wy, (-1.0, 0.0)),
        ]
        points = np.concatenate([p for p, _, _ in sides])
        weights = np.concatenate([w for _, w, _ in sides])
        normals = np.concatenate([np.tile(n, (len(w), 1)) for _, w, n in sides])
        return points, weights, normals

    n_theta = 4 * order
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    normals = np.column_stack([np.cos(theta), np.sin(theta)])
    weights = np.full(n_theta, 2.0 * np.pi * cs.radius / n_theta)
    return cs.radius * normals, weights, normals


def _outward_signs(cs: CrossSection, start: NDArray, stop: NDArray, normals: NDArray) -> NDArray:
    """+1 where the candidate normal points out of the mesh, -1 otherwise."""
    probe = 0.5 * (start + stop) + 1e-7 * cs.diameter * normals
    return np.where(cs.contains(probe, tol=0.0), -1.0, 1.0)


def boundary_samples(cs: CrossSection, count: int = 100) -> tuple[NDArray, NDArray]:
    """Boundary points with outward normals, equally spaced in arc length.

    Points are taken at the middle of equal arc-length cells, so corners are
    never sampled.

    Args:
        cs: The cross-section.
        count: Number of samples.

    Returns:
        Tuple (points (count, 2), normals (count, 2)).
    """
    if cs.kind is SectionKind.DISC and cs.backend is Backend.ANALYTIC:
        theta = 2.0 * np.pi * (np.arange(count) + 0.5) / count
        normals = np.column_stack([np.cos(theta), np.sin(theta)])
        return cs.radius * normals, normals

    if cs.backend is Backend.FEM:
        mesh = cs.mesh
        start = mesh.nodes[mesh.boundary_edges[:, 0]]
        stop = mesh.nodes[mesh.boundary_edges[:, 1]]
    else:
        corners = np.array([[0.0, 0.0], [cs.a, 0.0], [cs.a, cs.b], [0.0, cs.b]])
        start, stop = corners, np.roll(corners, -1, axis=0)

    delta = stop - start
    lengths = np.linalg.norm(delta, axis=1)
    cumulative = np.concatenate([[0.0], np.cumsum(lengths)])
    s = cumulative[-1] * (np.arange(count) + 0.5) / count
    edge = np.clip(np.searchsorted(cumulative, s, side="right") - 1, 0, len(lengths) - 1)
    frac = (s - cumulative[edge]) / lengths[edge]
    points = start[edge] + frac[:, None] * delta[edge]
    normals = np.column_stack([delta[edge, 1], -delta[edge, 0]]) / lengths[edge, None]
    if cs.backend is Backend.FEM:
        normals *= _outward_signs(cs, start[edge], stop[edge], normals)[:, None]
    return points, normals


def reference_points(cs: CrossSection) -> NDArray[np.float64]:
    """Deterministic interior probe points, centroid first.

    Analytic sections add points on a golden-angle spiral around the centroid;
    fem sections use their interior nodes in index order.
    """
    if cs.backend is Backend.FEM:
        return cs.mesh.nodes[cs.mesh.interior_nodes]

    golden = np.pi * (3.0 - np.sqrt(5.0))
    j = np.arange(1, 24)
    radius = 0.45 * np.sqrt(j / len(j))
    offsets = np.column_stack([np.cos(golden * j), np.sin(golden * j)]) * radius[:, None]
    if cs.kind is SectionKind.RECTANGLE:
        offsets = offsets * np.array([cs.a, cs.b])
    else:
        offsets = offsets * 2.0 * cs.radius * 0.9
    return np.vstack([cs.centroid, cs.centroid + offsets])
