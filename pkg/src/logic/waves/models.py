"""Data models for cylinder waves and the per-frequency mode ledger."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from logic.cross_section import CrossSection
from logic.pencil import ModeFamily, PencilPoint, VectorModeSection
from utils import InvalidInputError

DEFAULT_T_OUTER = 2.0


class Direction(str, Enum):
    """Propagation direction of a cylinder wave along its end."""

    INCOMING = "incoming"
    OUTGOING = "outgoing"


@dataclass(frozen=True)
class CutoffProfile:
    """Axial window of the cutoff: chi = 0 below t_inner, chi = 1 above t_outer."""

    t_outer: float = DEFAULT_T_OUTER

    @property
    def t_inner(self) -> float:
        return self.t_outer - 1.0


@dataclass(frozen=True, eq=False)
class CylinderWave:
    """A flux-normalized propagating wave exp(i lam t) Phi(y) on one end.

    Attributes:
        end_index: 1-based end index.
        section: Normalized, phase-fixed section.
        lam: Real axial wavenumber.
        k: Frequency.
        direction: Incoming or outgoing.
        flux: Signed axial flux of the section before normalization.
        family: Family tag of the section.
        cutoff: Cutoff window used when the wave is extended to the domain.
    """

    end_index: int
    section: VectorModeSection
    lam: float
    k: float
    direction: Direction
    flux: float
    family: ModeFamily
    cutoff: CutoffProfile = field(default_factory=CutoffProfile)

    @property
    def label(self) -> tuple[int, ...]:
        return self.section.potential.label

    @property
    def is_gamma(self) -> bool:
        """True for waves of the augmented family."""
        return not self.family.is_maxwell

    def __str__(self) -> str:
        label = ",".join(str(i) for i in self.label) or "const"
        return f"end {self.end_index} {self.family.value}[{label}] lambda={self.lam:+.8g} {self.direction.value}"


@dataclass(frozen=True)
class Channel:
    """Index metadata of one row or column of a scattering matrix.

    Attributes:
        end: 1-based end (port) index.
        family: Family tag (TE, TM, hybrid, alpha_scalar, ...).
        mode: Mode identifier within the family.
        direction: Direction of the basis wave.
    """

    end: int
    family: str
    mode: tuple[int, ...]
    direction: Direction = Direction.OUTGOING

    @classmethod
    def of(cls, wave: CylinderWave) -> Channel:
        return cls(wave.end_index, wave.family.value, wave.label, wave.direction)

    def as_tuple(self) -> tuple:
        return (self.end, self.family, list(self.mode), self.direction.value)


@dataclass(frozen=True)
class EndInventory:
    """Propagating waves and evanescent points of one end at one frequency."""

    end_index: int
    section: CrossSection
    e_waves: tuple[CylinderWave, ...]
    gamma_waves: tuple[CylinderWave, ...]
    evanescent: tuple[PencilPoint, ...]

    @property
    def kappa(self) -> int:
        """Number of real Maxwell eigenvalues with multiplicity."""
        return len(self.e_waves)


@dataclass(frozen=True)
class ModeLedger:
    """All waves of all ends at one frequency, with the counts Upsilon and T.

    Attributes:
        k: Frequency.
        ends: Per-end inventories in end order.
        threshold_distance: Distance from k to the nearest threshold.
        delta: Decay rate of remainders (half the smallest evanescent exponent).
    """

    k: float
    ends: tuple[EndInventory, ...]
    threshold_distance: float
    delta: float

    def __post_init__(self) -> None:
        kappa = sum(end.kappa for end in self.ends)
        if kappa % 2:
            raise InvalidInputError("Odd number of real Maxwell eigenvalues", context={"k": self.k, "kappa": kappa})

    @property
    def n_ends(self) -> int:
        return len(self.ends)

    @property
    def upsilon(self) -> int:
        return sum(end.kappa for end in self.ends) // 2

    @property
    def t_total(self) -> int:
        return 2 * self.upsilon + self.n_ends

    def _select(self, gamma: bool, direction: Direction) -> list[CylinderWave]:
        waves = [w for end in self.ends for w in (end.gamma_waves if gamma else end.e_waves)]
        return [w for w in waves if w.direction is direction]

    @property
    def e_incoming(self) -> list[CylinderWave]:
        return self._select(False, Direction.INCOMING)

    @property
    def e_outgoing(self) -> list[CylinderWave]:
        return self._select(False, Direction.OUTGOING)

    @property
    def gamma_incoming(self) -> list[CylinderWave]:
        return self._select(True, Direction.INCOMING)

    @property
    def gamma_outgoing(self) -> list[CylinderWave]:
        return self._select(True, Direction.OUTGOING)
