"""Tests for cross-section construction and the analytic spectra."""

import math

import numpy as np
import pytest

from logic.cross_section import (
    Backend,
    BoundaryCondition,
    SectionKind,
    eigenvalues,
    eval_field,
    helmholtz_eigs,
    make_cross_section,
    validate_mesh,
)
from utils.errors import GeometryError, InvalidInputError

PI2 = math.pi**2
JP11 = 1.8411837813406593


class TestMakeCrossSection:
    """Tests for geometry descriptors."""

    def test_rectangle_defaults_to_analytic(self, unit_square):
        """Test rectangles use the closed-form backend unless asked otherwise."""
        assert unit_square.kind is SectionKind.RECTANGLE
        assert unit_square.backend is Backend.ANALYTIC
        assert unit_square.area == pytest.approx(1.0)

    def test_fem_rectangle_is_meshed(self):
        """Test backend = fem meshes a rectangle."""
        cs = make_cross_section({"kind": "rectangle", "a": 1.0, "b": 0.5, "backend": "fem", "h": 0.25})
        assert cs.backend is Backend.FEM
        assert cs.mesh is not None
        assert cs.mesh.area == pytest.approx(0.5)

    @pytest.mark.parametrize(
        "descriptor",
        [
            {"kind": "rectangle", "a": 1.0, "b": 0.0},
            {"kind": "rectangle", "a": -1.0, "b": 1.0},
            {"kind": "disc", "radius": 0.0},
            {"kind": "disc"},
            {"kind": "hexagon", "a": 1.0},
            {"kind": "rectangle", "a": 1.0, "b": 1.0, "backend": "spectral"},
        ],
    )
    def test_invalid_descriptors(self, descriptor):
        """Test non-positive dimensions and unknown kinds are rejected."""
        with pytest.raises(GeometryError):
            make_cross_section(descriptor)

    def test_analytic_mesh_rejected(self):
        """Test meshes cannot use the analytic backend."""
        with pytest.raises(GeometryError):
            make_cross_section(
                {"kind": "mesh", "backend": "analytic", "nodes": [], "triangles": [], "boundary_edges": []}
            )


class TestValidateMesh:
    """Tests for mesh validation."""

    def test_square_mesh_is_valid(self):
        """Test a two-triangle square passes."""
        mesh = validate_mesh([(0, 0), (1, 0), (1, 1), (0, 1)], [(0, 1, 2), (0, 2, 3)], [(0, 1), (1, 2), (2, 3), (3, 0)])
        assert mesh.area == pytest.approx(1.0)

    def test_hole_is_rejected(self, holed_square_mesh):
        """Test a square with a square hole is multiply-connected."""
        with pytest.raises(GeometryError) as exc_info:
            validate_mesh(*holed_square_mesh)
        assert exc_info.value.context == {"boundary_loops": 2}

    def test_open_boundary_is_rejected(self):
        """Test a boundary missing an edge is not a closed loop."""
        with pytest.raises(GeometryError, match="closed loops"):
            validate_mesh([(0, 0), (1, 0), (1, 1), (0, 1)], [(0, 1, 2), (0, 2, 3)], [(0, 1), (1, 2), (2, 3)])

    def test_clockwise_triangle_is_rejected(self):
        """Test triangles must be counter-clockwise."""
        with pytest.raises(GeometryError, match="signed area"):
            validate_mesh([(0, 0), (1, 0), (1, 1), (0, 1)], [(0, 2, 1), (0, 2, 3)], [(0, 1), (1, 2), (2, 3), (3, 0)])

    def test_index_out_of_range(self):
        """Test triangle indices are bounds-checked."""
        with pytest.raises(GeometryError, match="out of range"):
            validate_mesh([(0, 0), (1, 0), (1, 1)], [(0, 1, 3)], [(0, 1), (1, 2), (2, 0)])


class TestAnalyticSpectrum:
    """Tests for closed-form eigenpairs."""

    def test_unit_square_neumann(self, unit_square):
        """Test the Neumann spectrum starts with the constant and a double pi^2."""
        mus = eigenvalues(unit_square, BoundaryCondition.NEUMANN, 15.0)
        np.testing.assert_allclose(mus, [0.0, PI2, PI2], atol=1e-12)

    def test_unit_square_dirichlet(self, unit_square):
        """Test the Dirichlet spectrum of the unit square."""
        mus = eigenvalues(unit_square, "dirichlet", 60.0)
        np.testing.assert_allclose(mus, [2 * PI2, 5 * PI2, 5 * PI2], rtol=1e-14)

    def test_labels_are_deterministic(self, unit_square):
        """Test rectangle modes are labelled (m, n) in (mu, m, n) order."""
        pairs = helmholtz_eigs(unit_square, BoundaryCondition.NEUMANN, 15.0)
        assert [p.label for p in pairs] == [(), (0, 1), (1, 0)]
        assert pairs[0].is_constant

    def test_unit_disc_first_neumann(self, unit_disc):
        """Test the first positive Neumann eigenvalue of the disc is j'_{1,1}^2 (twice)."""
        mus = eigenvalues(unit_disc, BoundaryCondition.NEUMANN, 4.0)
        np.testing.assert_allclose(mus, [0.0, JP11**2, JP11**2], rtol=1e-12)

    @pytest.mark.parametrize("name", ["unit_square", "unit_disc"])
    def test_neumann_below_dirichlet(self, request, name):
        """Test the j-th Neumann eigenvalue never exceeds the j-th Dirichlet one."""
        cs = request.getfixturevalue(name)
        dirichlet = eigenvalues(cs, BoundaryCondition.DIRICHLET, 60.0)
        neumann = eigenvalues(cs, BoundaryCondition.NEUMANN, 60.0)
        assert len(neumann) >= len(dirichlet)
        assert np.all(neumann[: len(dirichlet)] <= dirichlet)

    def test_dirichlet_grows_on_smaller_domain(self, unit_square):
        """Test a 0.8 x 0.9 rectangle, which fits inside the unit square, has larger Dirichlet eigenvalues."""
        large = eigenvalues(unit_square, BoundaryCondition.DIRICHLET, 200.0)
        inner = make_cross_section({"kind": "rectangle", "a": 0.8, "b": 0.9})
        small = eigenvalues(inner, BoundaryCondition.DIRICHLET, 400.0)
        assert len(small) >= len(large) == 14
        assert np.all(small[: len(large)] > large)

    def test_nonpositive_cutoff(self, unit_square):
        """Test the cutoff must be positive."""
        with pytest.raises(InvalidInputError):
            helmholtz_eigs(unit_square, BoundaryCondition.DIRICHLET, 0.0)

    def test_smaller_cutoff_filters_cached_list(self, unit_square):
        """Test a smaller request returns a prefix of a larger one."""
        large = helmholtz_eigs(unit_square, BoundaryCondition.DIRICHLET, 200.0)
        small = helmholtz_eigs(unit_square, BoundaryCondition.DIRICHLET, 60.0)
        assert len(small) == 3
        assert all(a is b for a, b in zip(small, large))

    @pytest.mark.parametrize("bc", [BoundaryCondition.DIRICHLET, BoundaryCondition.NEUMANN])
    def test_eigenfunctions_are_orthonormal(self, unit_square, bc):
        """Test the L2 Gram matrix is the identity."""
        pairs = helmholtz_eigs(unit_square, bc, 100.0)
        points, weights = unit_square.quadrature(30)
        values = np.stack([p.jet(points, 0)[0] for p in pairs])
        gram = (values * weights) @ values.T
        np.testing.assert_allclose(gram, np.eye(len(pairs)), atol=1e-10)

    def test_disc_eigenfunctions_solve_helmholtz(self, unit_disc):
        """Test -Laplace u = mu u at interior points for a disc mode."""
        pair = helmholtz_eigs(unit_disc, BoundaryCondition.DIRICHLET, 30.0)[2]
        points = np.array([[0.3, 0.2], [-0.4, 0.1], [0.0, -0.5]])
        jet = pair.jet(points, 2)
        laplacian = jet[3] + jet[5]
        np.testing.assert_allclose(-laplacian, pair.mu * jet[0], atol=1e-9)


class TestEvalField:
    """Tests for eval_field."""

    def test_values_and_gradients(self, unit_square):
        """Test the (1, 0) Neumann mode sqrt(2) cos(pi x)."""
        pair = helmholtz_eigs(unit_square, BoundaryCondition.NEUMANN, 15.0)[2]
        values, gradients = eval_field(pair, np.array([[0.25, 0.5]]))
        assert values[0] == pytest.approx(math.sqrt(2) * math.cos(math.pi / 4))
        assert gradients[0, 0] == pytest.approx(-math.sqrt(2) * math.pi * math.sin(math.pi / 4))
        assert gradients[0, 1] == pytest.approx(0.0, abs=1e-14)

    def test_dirichlet_ground_mode(self, unit_square):
        """Test 2 sin(pi x) sin(pi y) peaks at the centre and vanishes on the boundary."""
        pair = helmholtz_eigs(unit_square, BoundaryCondition.DIRICHLET, 30.0)[0]
        values, gradients = eval_field(pair, np.array([[0.5, 0.5], [0.0, 0.3]]))
        assert values[0] == pytest.approx(2.0)
        np.testing.assert_allclose(gradients[0], [0.0, 0.0], atol=1e-14)
        assert values[1] == pytest.approx(0.0, abs=1e-14)

    def test_point_outside_raises(self, unit_square):
        """Test evaluation outside the closure is rejected."""
        pair = helmholtz_eigs(unit_square, BoundaryCondition.DIRICHLET, 30.0)[0]
        with pytest.raises(GeometryError):
            eval_field(pair, np.array([[1.5, 0.5]]))
