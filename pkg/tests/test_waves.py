"""Tests for flux normalization, pairings and wave extensions."""

import math

import numpy as np
import pytest

from logic.pencil import (
    ALPHA,
    ModeFamily,
    VectorModeSection,
    build_mode,
    default_family,
    real_maxwell_spectrum,
    special_vectors,
)
from logic.waves import (
    CutoffProfile,
    Direction,
    SmoothstepCutoff,
    axial_flux,
    extend_to_domain,
    flux_pairing,
    normalize_and_orient,
)
from utils.errors import InvalidInputError, SupportViolationError

K = 4.0


@pytest.fixture
def points(unit_square):
    return real_maxwell_spectrum(unit_square, K)


def _waves(points, scalar=False):
    return [normalize_and_orient(p, build_mode(p, K, default_family(p.bc_origin, scalar=scalar)), 1) for p in points]


class TestAxialFlux:
    """Tests for the signed axial flux."""

    def test_maxwell_flux(self, points):
        """Test TE and TM sections carry k lambda / mu."""
        for point in points:
            flux = axial_flux(build_mode(point, K), point.lam, K)
            assert flux == pytest.approx(K * point.real_lambda / point.mu, rel=1e-9)

    def test_scalar_flux(self, points):
        """Test scalar sections carry lambda ||u||^2."""
        for point in points:
            section = build_mode(point, K, default_family(point.bc_origin, scalar=True))
            assert axial_flux(section, point.lam, K) == pytest.approx(point.real_lambda, rel=1e-9)

    def test_special_flux(self, unit_square):
        """Test the special sections carry lambda / k, i.e. +1 and -1."""
        fluxes = [axial_flux(mode, p.lam, K) for p, mode in special_vectors(unit_square, K)]
        assert fluxes == pytest.approx([1.0, -1.0])

    @pytest.mark.parametrize("scalar", [False, True])
    def test_flux_scales_with_modulus_squared(self, points, scalar):
        """Test the flux of c * section is |c|^2 times the flux of the section."""
        c = 2.0 - 3.0j
        for point in points:
            mode = build_mode(point, K, default_family(point.bc_origin, scalar=scalar))
            scaled = VectorModeSection(mode.potential, c * mode.coefficients, mode.family)
            expected = abs(c) ** 2 * axial_flux(mode, point.lam, K)
            assert axial_flux(scaled, point.lam, K) == pytest.approx(expected, rel=1e-12)

    def test_evanescent_rejected(self, unit_square, points):
        """Test flux is undefined for complex lambda."""
        with pytest.raises(InvalidInputError):
            axial_flux(build_mode(points[0], K), 1j, K)


class TestNormalization:
    """Tests for normalize_and_orient and the flux pairing."""

    @pytest.mark.parametrize("scalar", [False, True])
    def test_unit_flux_and_direction(self, points, scalar):
        """Test normalized waves carry flux +1 outgoing and -1 incoming."""
        for wave in _waves(points, scalar):
            pairing = flux_pairing(wave, wave)
            expected = 1.0 if wave.direction is Direction.OUTGOING else -1.0
            assert pairing == pytest.approx(expected, abs=1e-9)
            assert (wave.lam > 0) == (wave.direction is Direction.OUTGOING)

    @pytest.mark.parametrize("scalar", [False, True])
    def test_distinct_waves_pair_to_zero(self, points, scalar):
        """Test the pairing is diagonal on the normalized waves of one end."""
        waves = _waves(points, scalar)
        for i, a in enumerate(waves):
            for b in waves[i + 1 :]:
                assert abs(flux_pairing(a, b)) < 1e-9

    def test_maxwell_and_scalar_do_not_pair(self, points):
        """Test the two families are never paired."""
        e_wave = _waves(points)[0]
        gamma_wave = _waves(points, scalar=True)[0]
        with pytest.raises(InvalidInputError):
            flux_pairing(e_wave, gamma_wave)

    def test_different_ends_pair_to_zero(self, points):
        """Test waves on different ends are orthogonal."""
        a = normalize_and_orient(points[0], build_mode(points[0], K), 1)
        b = normalize_and_orient(points[0], build_mode(points[0], K), 2)
        assert flux_pairing(a, b) == 0j

    def test_special_wave_phase(self, unit_square):
        """Test the constant special wave has a real positive alpha."""
        point, mode = special_vectors(unit_square, K)[0]
        wave = normalize_and_orient(point, mode, 1)
        alpha = wave.section.values(unit_square.reference_points()[:1])[ALPHA, 0]
        assert alpha.real > 0.0
        assert abs(alpha.imag) < 1e-12
        assert wave.family is ModeFamily.CONSTANT_SPECIAL
        assert wave.is_gamma

    def test_labels(self, points):
        """Test waves expose the potential's mode label."""
        labels = sorted({wave.label for wave in _waves(points)})
        assert labels == [(0, 1), (1, 0)]


class TestExtension:
    """Tests for the cutoff extension of waves."""

    def test_smoothstep(self):
        """Test the smoothstep rises from 0 to 1 with flat ends."""
        cutoff = SmoothstepCutoff(CutoffProfile(2.0))
        t = np.array([0.0, 1.0, 1.5, 2.0, 3.0])
        assert cutoff(t) == pytest.approx([0.0, 0.0, 0.5, 1.0, 1.0])
        assert cutoff.derivative(np.array([1.0, 2.0])) == pytest.approx([0.0, 0.0])
        assert cutoff.derivative(np.array([1.5]))[0] == pytest.approx(1.875)

    def test_extension_values(self, points):
        """Test the extension equals the wave past t_outer and vanishes before t_inner."""
        wave = _waves(points)[0]
        extension = extend_to_domain(wave)
        y = np.array([[0.3, 0.7]])
        far = extension.evaluate(1, y, 2.5)
        expected = wave.section.values(y) * np.exp(1j * wave.lam * 2.5)
        assert np.allclose(far, expected)
        assert np.all(extension.evaluate(1, y, 0.5) == 0)
        assert np.all(extension.evaluate(2, y, 2.5) == 0)

    def test_support_violation(self, points):
        """Test a cutoff ramp starting before the cylinder is rejected."""
        wave = _waves(points)[0]
        with pytest.raises(SupportViolationError):
            extend_to_domain(wave, t_outer=0.5)
        with pytest.raises(SupportViolationError):
            extend_to_domain(wave, cylinder_start=1.5)

    def test_custom_window(self, points):
        """Test an explicit t_outer moves the window."""
        wave = _waves(points)[0]
        extension = extend_to_domain(wave, t_outer=4.0)
        assert extension.cutoff.profile.t_inner == pytest.approx(3.0)
        assert math.isclose(float(extension.cutoff(np.array([3.5]))[0]), 0.5)
