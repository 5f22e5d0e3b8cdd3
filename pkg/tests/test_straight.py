"""Tests for straight-guide scattering matrices and sigma assembly."""

import numpy as np
import pytest

from logic.scattering import (
    StraightGuide,
    assemble_sigma,
    incoming_basis_smatrix,
    junction_smatrix,
    straight_smatrix,
)
from logic.waves import Direction, build_ledger
from utils.errors import InvalidInputError, ThresholdError

K = 4.0


class TestStraightGuide:
    """Tests for the transmission-only matrix of a straight guide."""

    def test_phases(self, straight_guide):
        """Test the off-diagonal blocks carry exp(i lambda L)."""
        s = straight_smatrix(straight_guide, K)
        lam = np.sqrt(K**2 - np.pi**2)
        assert s.dimension == 4
        assert np.allclose(s.entries[:2, :2], 0.0)
        assert np.allclose(np.diag(s.entries[:2, 2:]), np.exp(1j * lam * 2.0))
        assert np.allclose(s.entries[2:, :2], s.entries[:2, 2:])

    def test_invariants(self, straight_guide):
        """Test unitarity, symmetry and t s = I."""
        s = straight_smatrix(straight_guide, K)
        t = straight_smatrix(straight_guide, K, reverse=True)
        assert s.unitarity_residual < 1e-12
        assert s.reciprocity_residual < 1e-12
        assert s.energy_defect < 1e-12
        assert s.inverse_check(t) < 1e-12
        assert np.allclose(t.entries, s.entries.conj())

    def test_zero_length_is_identity_transfer(self, unit_square):
        """Test a guide of length 0 passes every wave through unchanged."""
        s = straight_smatrix(StraightGuide(unit_square, 0.0), K)
        assert np.allclose(s.entries, np.array([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]))

    def test_channels(self, straight_guide):
        """Test channel metadata per end and direction."""
        s = straight_smatrix(straight_guide, K)
        assert [c.end for c in s.rows] == [1, 1, 2, 2]
        assert {c.direction for c in s.rows} == {Direction.INCOMING}
        assert {c.direction for c in s.cols} == {Direction.OUTGOING}
        assert {c.family for c in s.rows} == {"TE"}

    def test_dimensions_match_ledger(self, straight_guide):
        """Test s has Upsilon channels, upsilon Upsilon + N and sigma T."""
        ledger = build_ledger(straight_guide.ends, K)
        s = junction_smatrix(straight_guide, K, "maxwell")
        upsilon = junction_smatrix(straight_guide, K, "scalar")
        sigma = junction_smatrix(straight_guide, K, "sigma")
        assert s.dimension == ledger.upsilon
        assert upsilon.dimension == ledger.upsilon + ledger.n_ends
        assert sigma.dimension == ledger.t_total
        assert sigma.unitarity_residual < 1e-12
        assert sigma.inverse_check(incoming_basis_smatrix(straight_guide, K, "sigma")) < 1e-12

    def test_scalar_block_has_special_channel(self, straight_guide):
        upsilon = straight_smatrix(straight_guide, K, "scalar")
        families = [c.family for c in upsilon.rows]
        assert families.count("constant_special") == 2
        assert families.count("alpha_scalar") == 4

    def test_below_first_threshold(self, straight_guide):
        """Test only the special channels remain below the first threshold."""
        assert straight_smatrix(straight_guide, 2.0).dimension == 0
        assert straight_smatrix(straight_guide, 2.0, "scalar").dimension == 2

    def test_threshold_rejected(self, straight_guide):
        with pytest.raises(ThresholdError):
            straight_smatrix(straight_guide, np.pi)

    def test_unknown_filter(self, straight_guide):
        with pytest.raises(InvalidInputError):
            straight_smatrix(straight_guide, K, "hybrid")


class TestAssembly:
    """Tests for block assembly and dispatch."""

    def test_sigma_is_block_diagonal(self, straight_guide):
        s = straight_smatrix(straight_guide, K)
        upsilon = straight_smatrix(straight_guide, K, "scalar")
        sigma = assemble_sigma(s, upsilon)
        assert np.allclose(sigma.entries[:4, 4:], 0.0)
        assert np.allclose(sigma.entries[4:, 4:], upsilon.entries)
        assert sigma.rows[:4] == s.rows

    def test_frequency_mismatch(self, straight_guide):
        """Test blocks at different frequencies are not assembled."""
        with pytest.raises(InvalidInputError):
            assemble_sigma(straight_smatrix(straight_guide, K), straight_smatrix(straight_guide, 4.6, "scalar"))

    def test_unknown_block(self, straight_guide):
        with pytest.raises(InvalidInputError):
            junction_smatrix(straight_guide, K, "vector")

    def test_step_block_needs_step(self, straight_guide):
        with pytest.raises(InvalidInputError):
            junction_smatrix(straight_guide, K, "dirichlet")

    def test_inverse_dimension_mismatch(self, straight_guide):
        s = straight_smatrix(straight_guide, K)
        with pytest.raises(InvalidInputError):
            s.inverse_check(straight_smatrix(straight_guide, K, "scalar"))
