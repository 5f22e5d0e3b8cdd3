"""Tests for mode matching at separable steps and the decay diagnostic."""

import numpy as np
import pytest

from logic.cross_section import BoundaryCondition
from logic.scattering import (
    SeparableStep,
    StepJunction,
    augmented_step_smatrix,
    decay_diagnostic,
    incoming_basis_smatrix,
    junction_smatrix,
    maxwell_step_smatrix,
    overlap_matrix,
    step_smatrix,
)
from utils.errors import GeometryError, InvalidInputError, ThresholdError

K = 4.5
M = 40


class TestGeometry:
    """Tests for SeparableStep validation."""

    def test_narrow_channel_must_fit(self):
        with pytest.raises(GeometryError):
            SeparableStep(a1=1.5, a2=2.0, offset=1.0)

    def test_positive_widths(self):
        with pytest.raises(GeometryError):
            SeparableStep(a1=0.0, a2=2.0)

    def test_ends(self, maxwell_step):
        """Test the 3D reduction has rectangular ends of the passive height."""
        narrow, wide = maxwell_step.ends
        assert (narrow.a, narrow.b) == (1.0, 0.4)
        assert (wide.a, wide.b) == (2.0, 0.4)


class TestOverlap:
    """Tests for the aperture overlap matrix."""

    def test_equal_channels_give_identity(self):
        """Test the overlap of a channel with itself is the identity."""
        step = SeparableStep(a1=1.0, a2=1.0)
        for bc in BoundaryCondition:
            assert np.allclose(overlap_matrix(step, bc, 8), np.eye(8), atol=1e-12)

    def test_against_quadrature(self, dirichlet_step):
        """Test the closed form against Gauss quadrature over the aperture."""
        x, w = np.polynomial.legendre.leggauss(60)
        x = 1.0 + 0.5 * x
        w = 0.5 * w
        X = overlap_matrix(dirichlet_step, BoundaryCondition.NEUMANN, 4)
        for n in range(4):
            for m in range(4):
                v = np.cos(n * np.pi * x / 2.0) * (np.sqrt(1.0 / 2.0) if n == 0 else 1.0)
                u = np.cos(m * np.pi * (x - 0.5)) * (1.0 if m == 0 else np.sqrt(2.0))
                assert X[n, m] == pytest.approx(np.sum(w * v * u), abs=1e-12)


class TestScalarStep:
    """Tests for the 2D scalar step problems."""

    def test_dirichlet_step(self, dirichlet_step):
        """Test unitarity and t s = I at M = 40."""
        s = step_smatrix(dirichlet_step, K, "dirichlet", M)
        t = step_smatrix(dirichlet_step, K, "dirichlet", M, reverse=True)
        assert s.dimension == 3
        assert s.unitarity_residual < 1e-3
        assert s.inverse_check(t) < 2e-3
        assert s.truncation == M
        assert s.condition_number < 1e12

    def test_neumann_step(self, dirichlet_step):
        s = step_smatrix(dirichlet_step, K, BoundaryCondition.NEUMANN, M)
        assert s.dimension == 5
        assert s.unitarity_residual < 1e-3
        assert [c.mode for c in s.rows] == [(0,), (1,), (0,), (1,), (2,)]

    @pytest.mark.parametrize("bc", ["dirichlet", "neumann"])
    @pytest.mark.parametrize("k", [2.0, 3.8, 4.0, 5.0, 5.5])
    def test_band_interior_frequencies(self, dirichlet_step, bc, k):
        """Test unitarity and the inverse pair across the first bands."""
        s = step_smatrix(dirichlet_step, k, bc, M)
        t = step_smatrix(dirichlet_step, k, bc, M, reverse=True)
        assert s.unitarity_residual < 1e-3
        assert s.inverse_check(t) < 2e-3

    @pytest.mark.parametrize("truncation", [10, 20, 40, 80])
    def test_every_truncation_conserves_flux(self, dirichlet_step, truncation):
        s = step_smatrix(dirichlet_step, K, "dirichlet", truncation)
        assert s.unitarity_residual < 1e-3

    def test_channel_labels(self, dirichlet_step):
        """Test channels list the narrow side first with their mode numbers."""
        s = step_smatrix(dirichlet_step, K, "dirichlet", M)
        assert [(c.end, c.mode) for c in s.cols] == [(1, (1,)), (2, (1,)), (2, (2,))]
        assert {c.family for c in s.cols} == {"dirichlet"}

    def test_reference_reflection(self, dirichlet_step):
        """Test |s11| at M = 200 against its recorded value and the error of coarser truncations."""
        reference = abs(step_smatrix(dirichlet_step, K, "dirichlet", 200).entries[0, 0])
        assert reference == pytest.approx(0.09236134, abs=1e-6)
        bounds = {10: 2e-2, 20: 8e-3, 40: 3e-3, 80: 1e-3}
        for truncation, bound in bounds.items():
            s11 = step_smatrix(dirichlet_step, K, "dirichlet", truncation).entries[0, 0]
            assert abs(abs(s11) - reference) < bound

    @pytest.mark.parametrize("bc", ["dirichlet", "neumann"])
    def test_reverse_is_conjugate(self, dirichlet_step, bc):
        """Test t is the entrywise conjugate of s."""
        s = step_smatrix(dirichlet_step, K, bc, M)
        t = step_smatrix(dirichlet_step, K, bc, M, reverse=True)
        np.testing.assert_allclose(t.entries, s.entries.conj(), atol=1e-12)

    @pytest.mark.parametrize("bc", ["dirichlet", "neumann"])
    def test_equal_widths_swap_ports(self, bc):
        """Test a step between equal channels transmits every wave unchanged."""
        s = step_smatrix(SeparableStep(a1=1.0, a2=1.0), K, bc, 16)
        n = s.dimension // 2
        zeros, eye = np.zeros((n, n)), np.eye(n)
        np.testing.assert_allclose(s.entries, np.block([[zeros, eye], [eye, zeros]]), atol=1e-12)

    def test_below_cutoff(self, dirichlet_step):
        """Test no channel propagates below the first threshold."""
        s = step_smatrix(dirichlet_step, 1.0, "dirichlet", 10)
        assert s.dimension == 0
        assert s.unitarity_residual == 0.0

    def test_threshold_rejected(self, dirichlet_step):
        with pytest.raises(ThresholdError):
            step_smatrix(dirichlet_step, np.pi, "dirichlet", 10)

    def test_truncation_must_be_positive(self, dirichlet_step):
        with pytest.raises(InvalidInputError):
            StepJunction(dirichlet_step, K, BoundaryCondition.DIRICHLET, 0)


class TestMaxwellStep:
    """Tests for the 3D step reduced along its passive direction."""

    def test_maxwell_block(self, maxwell_step):
        """Test the band below the first passive threshold is purely TE."""
        s = maxwell_step_smatrix(maxwell_step, K, M)
        assert s.dimension == 3
        assert {c.family for c in s.rows} == {"TE"}
        assert s.unitarity_residual < 1e-3

    def test_maxwell_block_is_reciprocal_and_reverses(self, maxwell_step):
        """Test the Maxwell block is symmetric and t is its conjugate."""
        s = maxwell_step_smatrix(maxwell_step, K, M)
        t = maxwell_step_smatrix(maxwell_step, K, M, reverse=True)
        assert s.reciprocity_residual < 1e-10
        np.testing.assert_allclose(t.entries, s.entries.conj(), atol=1e-12)

    def test_augmented_block(self, maxwell_step):
        """Test the augmented block has dimension Upsilon + 2."""
        upsilon = augmented_step_smatrix(maxwell_step, K, M)
        assert upsilon.dimension == 5
        families = [c.family for c in upsilon.rows]
        assert families.count("constant_special") == 2
        assert upsilon.unitarity_residual < 1e-3

    def test_sigma(self, maxwell_step):
        """Test sigma joins both blocks and inverts with t."""
        sigma = junction_smatrix(maxwell_step, K, "sigma", M)
        t = incoming_basis_smatrix(maxwell_step, K, "sigma", M)
        assert sigma.dimension == 8
        blocks = (maxwell_step_smatrix(maxwell_step, K, M), augmented_step_smatrix(maxwell_step, K, M))
        assert sigma.unitarity_residual <= max(b.unitarity_residual for b in blocks) + 1e-14
        assert np.allclose(sigma.entries[:3, 3:], 0.0)
        assert sigma.inverse_check(t) <= 2 * max(b.unitarity_residual for b in blocks) + 1e-12


class TestDecay:
    """Tests for remainders and the decay diagnostic."""

    def test_remainder_decays(self, dirichlet_step):
        """Test the evanescent remainder decays at least at rate delta."""
        junction = StepJunction(dirichlet_step, K, BoundaryCondition.DIRICHLET, M)
        stations = np.linspace(0.5, 3.0, 12)
        norms = junction.remainder_norms(0, stations)
        fit = decay_diagnostic(stations, norms, junction.delta)
        assert fit.passed
        assert fit.rate <= -junction.delta

    def test_pure_exponential(self):
        """Test the fitted slope of an exact exponential."""
        stations = np.linspace(0.0, 2.0, 10)
        samples = np.exp(-1.5 * stations)[:, None] * np.array([[1.0, -2.0]])
        fit = decay_diagnostic(stations, samples, 1.0)
        assert fit.rate == pytest.approx(-1.5)
        assert fit.passed

    def test_slow_decay_fails(self):
        stations = np.linspace(0.0, 2.0, 10)
        fit = decay_diagnostic(stations, np.exp(-0.2 * stations), 1.0)
        assert not fit.passed

    def test_too_few_stations(self):
        with pytest.raises(InvalidInputError):
            decay_diagnostic(np.linspace(0.0, 1.0, 5), np.ones(5), 1.0)

    def test_vanishing_sample(self):
        stations = np.linspace(0.0, 1.0, 10)
        samples = np.ones(10)
        samples[3] = 0.0
        with pytest.raises(InvalidInputError):
            decay_diagnostic(stations, samples, 1.0)

    def test_incident_index_checked(self, dirichlet_step):
        junction = StepJunction(dirichlet_step, K, BoundaryCondition.DIRICHLET, 10)
        with pytest.raises(InvalidInputError):
            junction.remainder_norms(5, np.linspace(0.5, 1.0, 10))
