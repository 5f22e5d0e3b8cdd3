"""Junction geometries and scattering matrices."""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np
from numpy.typing import NDArray

from logic.cross_section import CrossSection, make_cross_section
from logic.waves import Channel
from utils import GeometryError, InvalidInputError


@dataclass(frozen=True, eq=False)
class StraightGuide:
    """A straight guide Omega x R with ports at t = 0 (end 1) and t = length (end 2)."""

    section: CrossSection
    length: float

    def __post_init__(self) -> None:
        if not self.length >= 0.0:
            raise GeometryError("Straight guide length must be non-negative", context={"length": self.length})

    @property
    def ends(self) -> list[CrossSection]:
        return [self.section, self.section]


@dataclass(frozen=True)
class SeparableStep:
    """A step between the channels (offset, offset + a1) and (0, a2).

    End 1 is the narrow channel on the t < 0 side, end 2 the wide one on the
    t > 0 side; the step wall is the part of (0, a2) outside the aperture.
    height is the passive transverse extent used by the 3D reductions.
    """

    a1: float
    a2: float
    offset: float = 0.0
    height: float = 1.0

    def __post_init__(self) -> None:
        for name in ("a1", "a2", "height"):
            if not getattr(self, name) > 0.0:
                raise GeometryError(f"Step {name} must be positive", context={name: getattr(self, name)})
        if self.offset < 0.0 or self.offset + self.a1 > self.a2 * (1.0 + 1e-12):
            raise GeometryError(
                "Narrow channel must lie inside the wide one",
                context={"a1": self.a1, "a2": self.a2, "offset": self.offset},
            )

    @property
    def aperture(self) -> tuple[float, float]:
        return self.offset, self.offset + self.a1

    @property
    def ends(self) -> list[CrossSection]:
        """Rectangular cross-sections of the 3D reduction."""
        return [
            make_cross_section({"kind": "rectangle", "a": self.a1, "b": self.height}),
            make_cross_section({"kind": "rectangle", "a": self.a2, "b": self.height}),
        ]


@dataclass(frozen=True, eq=False)
class ScatteringMatrix:
    """A scattering matrix with its channel metadata and diagnostics.

    entries[j, q] is the amplitude of the unit-flux outgoing wave cols[q]
    produced by the unit-flux incoming wave rows[j].

    Attributes:
        k: Frequency.
        entries: Complex square matrix.
        rows: Incoming channels.
        cols: Outgoing channels.
        truncation: Number of modes per side used by the solver (0 when exact).
        condition_number: Largest condition number of the solved systems.
        inverse_residual: max |t s - I| once the inverse pair was checked.
    """

    k: float
    entries: NDArray[np.complex128]
    rows: tuple[Channel, ...]
    cols: tuple[Channel, ...]
    truncation: int = 0
    condition_number: float = 1.0
    inverse_residual: float | None = None

    def __post_init__(self) -> None:
        shape = np.shape(self.entries)
        if len(shape) != 2 or shape[0] != shape[1]:
            raise InvalidInputError("Scattering matrix must be square", context=shape)
        if len(self.rows) != shape[0] or len(self.cols) != shape[1]:
            raise InvalidInputError("Channel metadata does not match the matrix", context=shape)

    @property
    def dimension(self) -> int:
        return len(self.rows)

    @cached_property
    def unitarity_residual(self) -> float:
        """max |S* S - I|."""
        if not self.dimension:
            return 0.0
        s = self.entries
        return float(np.abs(s.conj().T @ s - np.eye(self.dimension)).max())

    @cached_property
    def reciprocity_residual(self) -> float:
        """max |S - S^T|."""
        if not self.dimension:
            return 0.0
        return float(np.abs(self.entries - self.entries.T).max())

    @property
    def energy_defect(self) -> float:
        """Largest deviation of the outgoing power of a unit incident wave from 1."""
        if not self.dimension:
            return 0.0
        return float(np.abs((np.abs(self.entries) ** 2).sum(axis=1) - 1.0).max())

    def inverse_check(self, other: ScatteringMatrix) -> float:
        """max |other . self - I|."""
        if other.dimension != self.dimension:
            raise InvalidInputError("Matrix dimensions differ", context=(self.dimension, other.dimension))
        if not self.dimension:
            return 0.0
        return float(np.abs(other.entries @ self.entries - np.eye(self.dimension)).max())

    def with_inverse(self, other: ScatteringMatrix) -> ScatteringMatrix:
        return replace(self, inverse_residual=self.inverse_check(other))
