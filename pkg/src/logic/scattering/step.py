"""Mode matching at separable step junctions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.typing import NDArray

from logic.cross_section import BoundaryCondition
from logic.waves import Channel, Direction
from utils import InvalidInputError, SolverError, ThresholdError, WSLogger

from .assembly import assemble_sigma
from .models import ScatteringMatrix, SeparableStep

logger = WSLogger.get_logger(__name__)

DEFAULT_TRUNCATION = 40
CONDITION_LIMIT = 1e12
THRESHOLD_RTOL = 1e-8


def _cos_integral(rate: NDArray, phase: NDArray, lo: float, hi: float) -> NDArray:
    """Integral of cos(rate x + phase) over [lo, hi], stable at rate = 0."""
    width = hi - lo
    mid = 0.5 * (lo + hi)
    return width * np.cos(rate * mid + phase) * np.sinc(rate * width / (2.0 * np.pi))


def channel_basis(bc: BoundaryCondition, count: int, width: float) -> tuple[NDArray, NDArray]:
    """Wavenumbers and L2 normalizations of the first count channel modes.

    Dirichlet modes are sin(m pi x / width), m >= 1; Neumann modes
    cos(m pi x / width), m >= 0.
    """
    start = 1 if bc is BoundaryCondition.DIRICHLET else 0
    index = np.arange(start, start + count)
    norms = np.full(count, np.sqrt(2.0 / width))
    if bc is BoundaryCondition.NEUMANN:
        norms[0] = np.sqrt(1.0 / width)
    return index * np.pi / width, norms


def overlap_matrix(geom: SeparableStep, bc: BoundaryCondition, count: int) -> NDArray[np.float64]:
    """X[n, m] = integral over the aperture of v_n(x) u_m(x - offset).

    v_n are the modes of the wide channel, u_m those of the narrow one.
    """
    p, cp = channel_basis(bc, count, geom.a2)
    q, cq = channel_basis(bc, count, geom.a1)
    lo, hi = geom.aperture
    P, Q = p[:, None], q[None, :]
    shift = Q * geom.offset
    minus = _cos_integral(P - Q, shift, lo, hi)
    plus = _cos_integral(P + Q, -shift, lo, hi)
    sign = -1.0 if bc is BoundaryCondition.DIRICHLET else 1.0
    return 0.5 * cp[:, None] * cq[None, :] * (minus + sign * plus)


def _axial_numbers(kappa: NDArray, k: float, reverse: bool) -> NDArray[np.complex128]:
    """beta = sqrt(k^2 - kappa^2), or i sqrt(kappa^2 - k^2) when evanescent."""
    gap = k * k - kappa**2
    beta = np.where(gap > 0.0, np.sqrt(np.abs(gap)) + 0j, 1j * np.sqrt(np.abs(gap)))
    if reverse:
        beta = np.where(gap > 0.0, -beta, beta)
    return beta


@dataclass(frozen=True, eq=False)
class StepJunction:
    """Truncated mode-matching solution of the 2D scalar step problem.

    Fields are expanded in `truncation` modes on each side. With incoming
    amplitudes a (narrow side) and d (wide side) and outgoing amplitudes b, c:
    Dirichlet steps continue the field over the aperture and clamp it on the
    wall; Neumann steps continue the axial derivative and clamp it on the wall.

    Attributes:
        geometry: The step.
        k: Wavenumber of the 2D problem.
        bc: Wall condition.
        truncation: Modes per side.
        reverse: Exchange the roles of incoming and outgoing waves.
    """

    geometry: SeparableStep
    k: float
    bc: BoundaryCondition
    truncation: int = DEFAULT_TRUNCATION
    reverse: bool = False

    def __post_init__(self) -> None:
        if self.truncation < 1:
            raise InvalidInputError("Truncation must be positive", context={"truncation": self.truncation})

    @cached_property
    def kappa_left(self) -> NDArray:
        return channel_basis(self.bc, self.truncation, self.geometry.a1)[0]

    @cached_property
    def kappa_right(self) -> NDArray:
        return channel_basis(self.bc, self.truncation, self.geometry.a2)[0]

    @property
    def n_left(self) -> int:
        return int(np.sum(self.kappa_left < abs(self.k)))

    @property
    def n_right(self) -> int:
        return int(np.sum(self.kappa_right < abs(self.k)))

    @property
    def delta(self) -> float:
        """Half the smallest evanescent exponent over both sides."""
        kappas = np.concatenate([self.kappa_left[self.n_left :], self.kappa_right[self.n_right :]])
        if not kappas.size:
            raise InvalidInputError("Truncation leaves no evanescent mode", context={"truncation": self.truncation})
        return 0.5 * float(np.sqrt(kappas.min() ** 2 - self.k**2))

    def check_threshold(self) -> None:
        tol = THRESHOLD_RTOL * max(1.0, self.k**2)
        for side, kappa in (("narrow", self.kappa_left), ("wide", self.kappa_right)):
            hit = np.abs(self.k**2 - kappa**2) < tol
            if hit.any():
                raise ThresholdError(
                    "Frequency lies on a channel threshold",
                    context={"k": self.k, "side": side, "kappa": float(kappa[np.argmax(hit)])},
                )

    @cached_property
    def _solution(self) -> tuple[NDArray[np.complex128], float]:
        self.check_threshold()
        M = self.truncation
        if self.n_left > M or self.n_right > M:
            raise InvalidInputError(
                "Truncation is below the number of propagating modes",
                context={"truncation": M, "propagating": max(self.n_left, self.n_right)},
            )
        X = overlap_matrix(self.geometry, self.bc, M)
        b1 = _axial_numbers(self.kappa_left, self.k, self.reverse)
        b2 = _axial_numbers(self.kappa_right, self.k, self.reverse)
        eye = np.eye(M)

        if self.bc is BoundaryCondition.DIRICHLET:
            system = np.diag(b1) + X.T @ (b2[:, None] * X)
            s11 = 2.0 * np.linalg.solve(system, np.diag(b1)) - eye
            s12 = 2.0 * np.linalg.solve(system, X.T * b2[None, :])
            s21 = X @ (s11 + eye)
            s22 = X @ s12 - eye
        else:
            system = np.diag(1.0 / b1) + X.T @ (X / b2[:, None])
            inv_z = np.linalg.inv(system)
            s11 = eye - 2.0 * inv_z / b1[:, None]
            s12 = 2.0 * (inv_z @ X.T) / b1[:, None]
            s21 = 2.0 * (X @ inv_z) / b2[:, None]
            s22 = eye - 2.0 * (X @ inv_z @ X.T) / b2[:, None]

        condition = float(np.linalg.cond(system))
        logger.debug(f"Step {self.bc.value} k={self.k:.6g} M={M}: cond={condition:.3e}")
        if not np.isfinite(condition) or condition > CONDITION_LIMIT:
            raise SolverError(
                "Mode-matching system is ill-conditioned",
                context={"condition_number": condition, "k": self.k, "truncation": M},
            )
        return np.block([[s11, s12], [s21, s22]]), condition

    @property
    def raw(self) -> NDArray[np.complex128]:
        """[b; c] = raw @ [a; d] over all 2M modal amplitudes."""
        return self._solution[0]

    @property
    def condition_number(self) -> float:
        return self._solution[1]

    @cached_property
    def propagating_index(self) -> NDArray[np.int64]:
        M = self.truncation
        return np.concatenate([np.arange(self.n_left), M + np.arange(self.n_right)])

    @cached_property
    def _flux_scale(self) -> NDArray[np.float64]:
        beta = np.concatenate([
            _axial_numbers(self.kappa_left, self.k, False),
            _axial_numbers(self.kappa_right, self.k, False),
        ])
        return np.sqrt(np.abs(beta[self.propagating_index].real))

    def flux_normalized(self) -> NDArray[np.complex128]:
        """Unit-flux matrix s_hat[out, in] on the propagating modes."""
        idx = self.propagating_index
        scale = self._flux_scale
        block = self.raw[np.ix_(idx, idx)]
        return block * scale[:, None] / scale[None, :]

    def remainder_norms(self, incident: int, stations: NDArray[np.float64], samples: int = 64) -> NDArray[np.float64]:
        """Max norm over the wide channel of the evanescent part of the scattered field.

        Args:
            incident: Index of the unit-flux incident wave among the propagating
                modes (narrow side first).
            stations: Axial positions t > 0 on the wide side.
            samples: Number of transverse sample points.

        Returns:
            One max norm per station.
        """
        idx = self.propagating_index
        if not 0 <= incident < len(idx):
            raise InvalidInputError("Incident index out of range", context={"incident": incident})
        M = self.truncation
        amplitudes = np.zeros(2 * M, dtype=complex)
        amplitudes[idx[incident]] = 1.0 / self._flux_scale[incident]
        c = (self.raw @ amplitudes)[M:]

        kappa, norms = channel_basis(self.bc, M, self.geometry.a2)
        x = self.geometry.a2 * (np.arange(samples) + 0.5) / samples
        trig = np.sin if self.bc is BoundaryCondition.DIRICHLET else np.cos
        modes = norms[:, None] * trig(kappa[:, None] * x[None, :])
        beta = _axial_numbers(kappa, self.k, False)
        evanescent = np.arange(M) >= self.n_right

        stations = np.asarray(stations, dtype=float)
        weights = c[evanescent, None] * np.exp(1j * beta[evanescent, None] * stations[None, :])
        field = weights.T @ modes[evanescent]
        return np.abs(field).max(axis=1)

    def channels(self, family: str | list[str], labels: tuple[list, list] | None = None):
        """Incoming and outgoing channel metadata of the propagating modes."""
        left = labels[0] if labels else [(int(m),) for m in range(self.n_left)]
        right = labels[1] if labels else [(int(m),) for m in range(self.n_right)]
        families = family if isinstance(family, list) else [family] * (len(left) + len(right))
        keyed = [(1, lab) for lab in left] + [(2, lab) for lab in right]
        rows = tuple(Channel(end, fam, lab, Direction.INCOMING) for (end, lab), fam in zip(keyed, families))
        cols = tuple(Channel(end, fam, lab, Direction.OUTGOING) for (end, lab), fam in zip(keyed, families))
        return rows, cols


def _mode_numbers(bc: BoundaryCondition, count: int) -> list[int]:
    start = 1 if bc is BoundaryCondition.DIRICHLET else 0
    return list(range(start, start + count))


def step_smatrix(
    geom: SeparableStep,
    k: float,
    bc: BoundaryCondition | str,
    truncation: int = DEFAULT_TRUNCATION,
    reverse: bool = False,
) -> ScatteringMatrix:
    """Unit-flux scattering matrix of the 2D scalar step problem.

    Args:
        geom: The step.
        k: Wavenumber.
        bc: Wall condition.
        truncation: Modes per side.
        reverse: Build t instead of s.

    Returns:
        The scattering matrix over the propagating modes of both channels;
        0 x 0 below the first threshold of both channels.

    Raises:
        ThresholdError: If k is on a channel threshold.
        SolverError: If the matching system is ill-conditioned.
    """
    bc = BoundaryCondition(bc)
    junction = StepJunction(geom, k, bc, truncation, reverse)
    entries = junction.flux_normalized().T
    numbers_l = _mode_numbers(bc, junction.n_left)
    numbers_r = _mode_numbers(bc, junction.n_right)
    rows, cols = junction.channels(bc.value, ([(m,) for m in numbers_l], [(m,) for m in numbers_r]))
    return ScatteringMatrix(
        k=k,
        entries=entries,
        rows=rows,
        cols=cols,
        truncation=truncation,
        condition_number=junction.condition_number,
    )


def _passive_blocks(geom: SeparableStep, k: float, blocks: list[tuple[BoundaryCondition, int]]):
    """Yield (bc, n, k_eff) for passive indices n with a positive effective wavenumber."""
    tol = THRESHOLD_RTOL * max(1.0, k * k)
    for bc, first in blocks:
        n = first
        while (n * np.pi / geom.height) ** 2 < k * k + tol:
            k_eff2 = k * k - (n * np.pi / geom.height) ** 2
            if bc is BoundaryCondition.NEUMANN and abs(k_eff2) < tol:
                raise ThresholdError("Frequency lies on a passive-direction threshold", context={"k": k, "n": n})
            if k_eff2 > 0.0:
                yield bc, n, float(np.sqrt(k_eff2))
            n += 1


def _block_family(kind: str, bc: BoundaryCondition, m: int, n: int) -> str:
    if kind == "maxwell":
        single = (bc is BoundaryCondition.DIRICHLET and n == 0) or (bc is BoundaryCondition.NEUMANN and m == 0)
        return "TE" if single else "hybrid"
    if bc is BoundaryCondition.NEUMANN:
        return "constant_special" if m == 0 and n == 0 else "alpha_scalar"
    return "beta_scalar"


def _decomposed_smatrix(
    geom: SeparableStep,
    k: float,
    truncation: int,
    reverse: bool,
    kind: str,
    blocks: list[tuple[BoundaryCondition, int]],
) -> ScatteringMatrix:
    pieces = []
    for bc, n, k_eff in _passive_blocks(geom, k, blocks):
        junction = StepJunction(geom, k_eff, bc, truncation, reverse)
        junction.check_threshold()
        if junction.n_left + junction.n_right == 0:
            continue
        left = [(m, n) for m in _mode_numbers(bc, junction.n_left)]
        right = [(m, n) for m in _mode_numbers(bc, junction.n_right)]
        families = [_block_family(kind, bc, m, n) for m, n in left + right]
        rows, cols = junction.channels(families, (left, right))
        pieces.append(
            ScatteringMatrix(
                k=k,
                entries=junction.flux_normalized().T,
                rows=rows,
                cols=cols,
                truncation=truncation,
                condition_number=junction.condition_number,
            )
        )

    result = ScatteringMatrix(k=k, entries=np.zeros((0, 0), dtype=complex), rows=(), cols=(), truncation=truncation)
    for piece in pieces:
        result = assemble_sigma(result, piece)
    logger.debug(f"{kind} step at k={k:.6g}: {len(pieces)} blocks, dimension {result.dimension}")
    return result


def maxwell_step_smatrix(
    geom: SeparableStep, k: float, truncation: int = DEFAULT_TRUNCATION, reverse: bool = False
) -> ScatteringMatrix:
    """Maxwell s block of the 3D step between the rectangles (a1, height) and (a2, height).

    Fields invariant in structure along the passive direction split by the
    passive index n into 2D matching problems at k_eff^2 = k^2 - (n pi / height)^2:
    Dirichlet-wall blocks for n >= 0 and Neumann-wall blocks for n >= 1.
    Channels with a single transverse electric component are tagged TE.
    """
    blocks = [(BoundaryCondition.DIRICHLET, 0), (BoundaryCondition.NEUMANN, 1)]
    return _decomposed_smatrix(geom, k, truncation, reverse, "maxwell", blocks)


def augmented_step_smatrix(
    geom: SeparableStep, k: float, truncation: int = DEFAULT_TRUNCATION, reverse: bool = False
) -> ScatteringMatrix:
    """Augmented upsilon block of the 3D step, dimension Upsilon + 2.

    alpha channels come from Neumann-wall blocks (n >= 0, the constant special
    channel included) and beta channels from Dirichlet-wall blocks (n >= 1).
    """
    blocks = [(BoundaryCondition.NEUMANN, 0), (BoundaryCondition.DIRICHLET, 1)]
    return _decomposed_smatrix(geom, k, truncation, reverse, "scalar", blocks)
