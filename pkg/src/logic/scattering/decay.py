"""Exponential decay diagnostics for remainders along an end."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from utils import InvalidInputError

MIN_STATIONS = 10


@dataclass(frozen=True)
class DecayFit:
    """Fitted decay of a field along an end.

    Attributes:
        rate: Least-squares slope of log max-norm against t.
        delta: Required decay rate.
        tolerance: Slack on the comparison.
    """

    rate: float
    delta: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.rate <= -self.delta + self.tolerance


def decay_diagnostic(
    stations: NDArray[np.float64], samples: NDArray, delta: float, fit_tol: float = 1e-6
) -> DecayFit:
    """Fit the exponential rate of a sampled field and compare it with -delta.

    Args:
        stations: Axial positions, at least 10.
        samples: Field samples, first axis over stations; any further axes are
            reduced by the max norm.
        delta: Required decay rate.
        fit_tol: Slack added to -delta.

    Returns:
        The fit.

    Raises:
        InvalidInputError: On fewer than 10 stations, mismatched shapes or a
            vanishing sample.
    """
    stations = np.asarray(stations, dtype=float)
    samples = np.asarray(samples)
    if stations.ndim != 1 or len(stations) < MIN_STATIONS:
        raise InvalidInputError(
            f"Decay fit needs at least {MIN_STATIONS} stations", context={"stations": stations.size}
        )
    if samples.shape[0] != len(stations):
        raise InvalidInputError("One sample block per station is required", context=samples.shape)

    norms = np.abs(samples.reshape(len(stations), -1)).max(axis=1)
    if not np.all(norms > 0.0):
        raise InvalidInputError("Field vanishes at a station; the decay rate is undefined")
    slope = np.polyfit(stations, np.log(norms), 1)[0]
    return DecayFit(rate=float(slope), delta=delta, tolerance=fit_tol)
