"""Tests for the per-frequency mode ledger."""

import math

import numpy as np
import pytest

from logic.cross_section import make_cross_section
from logic.waves import Channel, Direction, build_ledger, default_mu_cutoff
from utils.errors import InvalidInputError, ThresholdError


class TestLedger:
    """Tests for build_ledger."""

    def test_unit_square_counts(self, unit_square):
        """Test the unit square at k = 4 has Upsilon = 2 and T = 5."""
        ledger = build_ledger([unit_square], 4.0)
        end = ledger.ends[0]
        assert end.kappa == 4
        assert ledger.upsilon == 2
        assert ledger.t_total == 5
        assert len(ledger.e_outgoing) == len(ledger.e_incoming) == 2
        assert len(end.gamma_waves) == 6
        assert len(ledger.gamma_outgoing) == len(ledger.gamma_incoming) == 3

    def test_diagnostics(self, unit_square):
        """Test the decay rate and the distance to the nearest threshold."""
        ledger = build_ledger([unit_square], 4.0)
        assert ledger.delta == pytest.approx(0.5 * math.sqrt(2 * math.pi**2 - 16.0))
        assert ledger.threshold_distance == pytest.approx(math.sqrt(2.0) * math.pi - 4.0)

    def test_evanescent_inventory(self, unit_square):
        """Test the evanescent points up to the default cutoff."""
        assert default_mu_cutoff(4.0) == pytest.approx(52.0)
        end = build_ledger([unit_square], 4.0).ends[0]
        assert len(end.evanescent) == 8
        assert all(complex(p.lam).imag > 0 for p in end.evanescent)

    @pytest.mark.parametrize("k", [0.5, 2.0, 3.5, 4.0, 4.6, 5.5, 6.5])
    def test_band_counts(self, unit_square, unit_disc, k):
        """Test kappa is even and the family sizes match Upsilon on two ends."""
        ledger = build_ledger([unit_square, unit_disc], k)
        n = ledger.n_ends
        assert sum(end.kappa for end in ledger.ends) % 2 == 0
        assert len(ledger.e_incoming) + len(ledger.e_outgoing) == 2 * ledger.upsilon
        gamma = sum(len(end.gamma_waves) for end in ledger.ends)
        assert gamma == 2 * (ledger.upsilon + n)
        assert ledger.t_total == 2 * ledger.upsilon + n

    def test_below_first_threshold(self, unit_square):
        """Test only the special waves propagate below the first threshold."""
        ledger = build_ledger([unit_square], 3.0)
        assert ledger.upsilon == 0
        assert ledger.t_total == 1
        assert [w.lam for w in ledger.ends[0].gamma_waves] == [3.0, -3.0]

    def test_end_indices(self, unit_square):
        """Test waves carry the index of their end."""
        thin = make_cross_section({"kind": "rectangle", "a": 0.7, "b": 0.4})
        ledger = build_ledger([unit_square, thin], 4.6)
        assert {w.end_index for w in ledger.ends[1].gamma_waves} == {2}
        assert np.all([w.end_index == 1 for w in ledger.ends[0].e_waves])

    def test_channels(self, unit_square):
        """Test channel metadata of the waves."""
        ledger = build_ledger([unit_square], 4.0)
        channel = Channel.of(ledger.e_outgoing[0])
        assert channel.end == 1
        assert channel.family == "TE"
        assert channel.direction is Direction.OUTGOING
        assert channel.as_tuple()[3] == "outgoing"

    def test_zero_frequency_rejected(self, unit_square):
        with pytest.raises(InvalidInputError):
            build_ledger([unit_square], 0.0)

    def test_no_ends_rejected(self):
        with pytest.raises(InvalidInputError):
            build_ledger([], 2.0)

    def test_threshold_rejected(self, unit_square):
        """Test a frequency on a threshold is refused."""
        with pytest.raises(ThresholdError):
            build_ledger([unit_square], math.pi)


BANDS = [
    (math.pi, math.sqrt(2.0) * math.pi, 2),
    (math.sqrt(2.0) * math.pi, 2.0 * math.pi, 4),
    (2.0 * math.pi, math.sqrt(5.0) * math.pi, 6),
]


class TestBands:
    """Counts stay constant between consecutive thresholds of the unit square."""

    @pytest.mark.parametrize("lo,hi,upsilon", BANDS)
    def test_counts_in_band(self, unit_square, lo, hi, upsilon):
        for k in np.linspace(lo, hi, 7)[1:-1]:
            ledger = build_ledger([unit_square], float(k))
            assert ledger.upsilon == upsilon
            assert len(ledger.e_incoming) + len(ledger.e_outgoing) == 2 * upsilon
            assert len(ledger.ends[0].gamma_waves) == 2 * (upsilon + 1)
