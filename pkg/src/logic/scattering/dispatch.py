"""Uniform entry point over junction kinds and matrix blocks."""

from __future__ import annotations

from logic.cross_section import BoundaryCondition
from utils import InvalidInputError

from .assembly import assemble_sigma
from .models import ScatteringMatrix, SeparableStep, StraightGuide
from .step import DEFAULT_TRUNCATION, augmented_step_smatrix, maxwell_step_smatrix, step_smatrix
from .straight import straight_smatrix

BLOCKS = ("maxwell", "scalar", "sigma", "dirichlet", "neumann")
_STRAIGHT_FILTERS = {"maxwell": "maxwell", "scalar": "scalar", "sigma": "all"}


def junction_smatrix(
    geom: StraightGuide | SeparableStep,
    k: float,
    block: str = "maxwell",
    truncation: int = DEFAULT_TRUNCATION,
    reverse: bool = False,
) -> ScatteringMatrix:
    """Compute one block of the scattering matrix of a junction.

    Args:
        geom: Straight guide or separable step.
        k: Frequency.
        block: maxwell (s), scalar (upsilon), sigma, or dirichlet/neumann for
            the 2D scalar step problem.
        truncation: Modes per side for steps.
        reverse: Build t instead of s.

    Raises:
        InvalidInputError: On an unknown block or one the geometry lacks.
    """
    if block not in BLOCKS:
        raise InvalidInputError(f"Unknown block '{block}'", context={"allowed": BLOCKS})

    if isinstance(geom, StraightGuide):
        if block not in _STRAIGHT_FILTERS:
            raise InvalidInputError(f"Block '{block}' needs a step geometry")
        return straight_smatrix(geom, k, _STRAIGHT_FILTERS[block], reverse)

    if block in ("dirichlet", "neumann"):
        return step_smatrix(geom, k, BoundaryCondition(block), truncation, reverse)
    if block == "maxwell":
        return maxwell_step_smatrix(geom, k, truncation, reverse)
    if block == "scalar":
        return augmented_step_smatrix(geom, k, truncation, reverse)
    return assemble_sigma(
        maxwell_step_smatrix(geom, k, truncation, reverse), augmented_step_smatrix(geom, k, truncation, reverse)
    )


def incoming_basis_smatrix(
    geom: StraightGuide | SeparableStep,
    k: float,
    block: str = "maxwell",
    truncation: int = DEFAULT_TRUNCATION,
) -> ScatteringMatrix:
    """The matrix t of the incoming-based eigenfunctions; t s = I."""
    return junction_smatrix(geom, k, block, truncation, reverse=True)
