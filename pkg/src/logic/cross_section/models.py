"""Data models for cross-section domains and their scalar eigenpairs."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Protocol

import numpy as np
from numpy.typing import NDArray

from utils import GeometryError


class BoundaryCondition(str, Enum):
    """Boundary condition of a scalar Helmholtz problem."""

    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"


class SectionKind(str, Enum):
    """Shape family of a cross-section."""

    RECTANGLE = "rectangle"
    DISC = "disc"
    MESH = "mesh"


class Backend(str, Enum):
    """Eigensolver backend tag."""

    ANALYTIC = "analytic"
    FEM = "fem"


@dataclass(frozen=True, eq=False)
class TriangleMesh:
    """Linear triangle mesh of a planar domain.

    Attributes:
        nodes: Node coordinates, shape (n, 2).
        triangles: Node indices of each triangle, shape (m, 3), counter-clockwise.
        boundary_edges: Node index pairs of the boundary loop, shape (K, 2).
    """

    nodes: NDArray[np.float64]
    triangles: NDArray[np.int64]
    boundary_edges: NDArray[np.int64]

    @cached_property
    def signed_areas(self) -> NDArray[np.float64]:
        """Signed area of every triangle (positive when counter-clockwise)."""
        p = self.nodes[self.triangles]
        e1 = p[:, 1] - p[:, 0]
        e2 = p[:, 2] - p[:, 0]
        return 0.5 * (e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])

    @cached_property
    def area(self) -> float:
        return float(self.signed_areas.sum())

    @cached_property
    def inverse_maps(self) -> NDArray[np.float64]:
        """Inverse affine maps of the triangles, shape (m, 2, 2).

        Row i of the map is the gradient of the barycentric coordinate of
        vertex i + 1.
        """
        p = self.nodes[self.triangles]
        jac = np.stack([p[:, 1] - p[:, 0], p[:, 2] - p[:, 0]], axis=2)
        return np.linalg.inv(jac)

    @cached_property
    def basis_gradients(self) -> NDArray[np.float64]:
        """Gradients of the three P1 basis functions per triangle, shape (m, 3, 2)."""
        inv = self.inverse_maps
        return np.stack([-inv[:, 0] - inv[:, 1], inv[:, 0], inv[:, 1]], axis=1)

    @cached_property
    def boundary_nodes(self) -> NDArray[np.int64]:
        return np.unique(self.boundary_edges)

    @cached_property
    def interior_nodes(self) -> NDArray[np.int64]:
        mask = np.ones(len(self.nodes), dtype=bool)
        mask[self.boundary_nodes] = False
        return np.flatnonzero(mask)

    @cached_property
    def fingerprint(self) -> str:
        digest = hashlib.sha1()
        for array in (self.nodes, self.triangles, self.boundary_edges):
            digest.update(np.ascontiguousarray(array).tobytes())
        return digest.hexdigest()

    def locate(
        self, points: NDArray[np.float64], tol: float = 1e-10, chunk: int = 256
    ) -> tuple[NDArray[np.int64], NDArray[np.float64]]:
        """Find the containing triangle and barycentric coordinates of points.

        Args:
            points: Query points, shape (P, 2).
            tol: Barycentric slack for points on edges.
            chunk: Number of points tested against all triangles at once.

        Returns:
            Tuple (triangle index per point, -1 when outside; barycentric
            coordinates, shape (P, 3)).
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        origin = self.nodes[self.triangles[:, 0]]
        inv = self.inverse_maps
        owners = np.full(len(points), -1, dtype=np.int64)
        bary = np.zeros((len(points), 3))

        for start in range(0, len(points), chunk):
            block = points[start : start + chunk]
            rel = block[:, None, :] - origin[None, :, :]
            l12 = np.einsum("tij,ptj->pti", inv, rel)
            l0 = 1.0 - l12.sum(axis=2)
            coords = np.concatenate([l0[..., None], l12], axis=2)
            worst = coords.min(axis=2)
            best = np.argmax(worst, axis=1)
            inside = worst[np.arange(len(block)), best] >= -tol
            idx = np.arange(start, start + len(block))
            owners[idx[inside]] = best[inside]
            bary[idx] = coords[np.arange(len(block)), best]

        return owners, bary


@dataclass(frozen=True, eq=False)
class CrossSection:
    """Validated 2D cross-section of a cylindrical end.

    Build instances with make_cross_section(); the constructor does not
    validate meshes.
    """

    kind: SectionKind
    backend: Backend
    a: float | None = None
    b: float | None = None
    radius: float | None = None
    mesh: TriangleMesh | None = None
    mesh_size: float | None = None

    @property
    def key(self) -> tuple:
        """Hashable identity used by the spectrum cache."""
        if self.kind is SectionKind.RECTANGLE:
            shape: tuple = (self.kind.value, self.a, self.b)
        elif self.kind is SectionKind.DISC:
            shape = (self.kind.value, self.radius)
        else:
            shape = (self.kind.value,)
        if self.backend is Backend.FEM and self.mesh is not None:
            return (*shape, self.backend.value, self.mesh.fingerprint)
        return (*shape, self.backend.value)

    @property
    def area(self) -> float:
        """Domain area; the polygonal area for fem-discretized sections."""
        if self.backend is Backend.FEM and self.mesh is not None:
            return self.mesh.area
        if self.kind is SectionKind.RECTANGLE:
            return float(self.a * self.b)
        return float(np.pi * self.radius**2)

    @property
    def diameter(self) -> float:
        if self.kind is SectionKind.RECTANGLE:
            return float(np.hypot(self.a, self.b))
        if self.kind is SectionKind.DISC:
            return 2.0 * self.radius
        extent = self.mesh.nodes.max(axis=0) - self.mesh.nodes.min(axis=0)
        return float(np.hypot(*extent))

    @property
    def perimeter(self) -> float:
        if self.kind is SectionKind.RECTANGLE:
            return 2.0 * (self.a + self.b)
        if self.kind is SectionKind.DISC:
            return 2.0 * np.pi * self.radius
        edges = self.mesh.nodes[self.mesh.boundary_edges]
        return float(np.linalg.norm(edges[:, 1] - edges[:, 0], axis=1).sum())

    @property
    def centroid(self) -> NDArray[np.float64]:
        if self.kind is SectionKind.RECTANGLE:
            return np.array([self.a / 2.0, self.b / 2.0])
        if self.kind is SectionKind.DISC:
            return np.zeros(2)
        mesh = self.mesh
        centres = mesh.nodes[mesh.triangles].mean(axis=1)
        weights = mesh.signed_areas
        return (centres * weights[:, None]).sum(axis=0) / weights.sum()

    def contains(self, points: NDArray[np.float64], tol: float = 1e-10) -> NDArray[np.bool_]:
        """Test whether points lie in the closure of the domain.

        Args:
            points: Points, shape (P, 2).
            tol: Absolute slack.

        Returns:
            Boolean mask of shape (P,).
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if self.backend is Backend.FEM:
            owners, _ = self.mesh.locate(points, tol=tol)
            return owners >= 0
        if self.kind is SectionKind.RECTANGLE:
            x, y = points[:, 0], points[:, 1]
            return (x >= -tol) & (x <= self.a + tol) & (y >= -tol) & (y <= self.b + tol)
        return np.hypot(points[:, 0], points[:, 1]) <= self.radius + tol

    def require_inside(self, points: NDArray[np.float64]) -> NDArray[np.float64]:
        """Return points as an array, raising if any lies outside the domain."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        outside = ~self.contains(points)
        if outside.any():
            raise GeometryError(
                "Point outside the cross-section",
                context={"point": points[np.argmax(outside)].tolist(), "section": str(self)},
            )
        return points

    def quadrature(self, order: int | None = None):
        """Area quadrature rule (points (P, 2), weights (P,))."""
        from .quadrature import area_rule

        return area_rule(self, order)

    def boundary_quadrature(self, order: int | None = None):
        """Boundary quadrature rule (points (P, 2), weights (P,), normals (P, 2))."""
        from .quadrature import boundary_rule

        return boundary_rule(self, order)

    def boundary_samples(self, count: int = 100):
        """Sample points and outward normals away from corners (points, normals)."""
        from .quadrature import boundary_samples

        return boundary_samples(self, count)

    def reference_points(self) -> NDArray[np.float64]:
        """Deterministic interior points used for phase fixing.

        The centroid comes first for analytic sections; fem sections use their
        interior nodes in index order.
        """
        from .quadrature import reference_points

        return reference_points(self)

    def __str__(self) -> str:
        if self.kind is SectionKind.RECTANGLE:
            shape = f"rectangle({self.a:g} x {self.b:g})"
        elif self.kind is SectionKind.DISC:
            shape = f"disc(R={self.radius:g})"
        else:
            shape = f"mesh({len(self.mesh.nodes)} nodes)"
        return f"{shape} [{self.backend.value}]"


class ScalarField(Protocol):
    """Scalar field over a cross-section that can report its derivatives."""

    def jet(self, points: NDArray[np.float64], order: int) -> NDArray[np.float64]:
        """Return [u, u_1, u_2] (order 1) or [u, u_1, u_2, u_11, u_12, u_22] (order 2)."""
        ...


@dataclass(frozen=True, eq=False)
class ScalarEigenpair:
    """A (mu, u) pair of the Dirichlet or Neumann Laplacian, L2-normalized.

    Attributes:
        bc: Boundary condition of the problem.
        mu: Eigenvalue.
        eigenfunction: The eigenfunction (closed form or nodal).
        section: The cross-section this pair lives on.
        label: Deterministic mode identifier, e.g. (m, n) for rectangles.
    """

    bc: BoundaryCondition
    mu: float
    eigenfunction: ScalarField
    section: CrossSection
    label: tuple[int, ...] = ()

    def jet(self, points: NDArray[np.float64], order: int = 2) -> NDArray[np.float64]:
        return self.eigenfunction.jet(np.atleast_2d(np.asarray(points, dtype=float)), order)

    @property
    def is_constant(self) -> bool:
        return self.bc is BoundaryCondition.NEUMANN and self.mu == 0.0

    def __str__(self) -> str:
        label = ",".join(str(i) for i in self.label) or "const"
        return f"{self.bc.value}[{label}] mu={self.mu:.10g}"
