"""Scattering matrices, sources and radiation in waveguide junctions."""

from .assembly import assemble_sigma
from .decay import DecayFit, decay_diagnostic
from .dispatch import BLOCKS, incoming_basis_smatrix, junction_smatrix
from .models import ScatteringMatrix, SeparableStep, StraightGuide
from .radiation import (
    RadiationReport,
    axial_response,
    fourier_quad,
    modal_radiation_amplitudes,
    radiation_coefficients,
)
from .sources import (
    SourceField,
    SourceKind,
    SourceTerm,
    compatibility_residual,
    gradient_source,
    modal_source,
    potential_gradient_source,
)
from .step import (
    DEFAULT_TRUNCATION,
    StepJunction,
    augmented_step_smatrix,
    maxwell_step_smatrix,
    overlap_matrix,
    step_smatrix,
)
from .straight import straight_smatrix

__all__ = [
    "BLOCKS",
    "DEFAULT_TRUNCATION",
    "DecayFit",
    "RadiationReport",
    "ScatteringMatrix",
    "SeparableStep",
    "SourceField",
    "SourceKind",
    "SourceTerm",
    "StepJunction",
    "StraightGuide",
    "assemble_sigma",
    "augmented_step_smatrix",
    "axial_response",
    "compatibility_residual",
    "decay_diagnostic",
    "fourier_quad",
    "gradient_source",
    "incoming_basis_smatrix",
    "junction_smatrix",
    "maxwell_step_smatrix",
    "modal_radiation_amplitudes",
    "modal_source",
    "overlap_matrix",
    "potential_gradient_source",
    "radiation_coefficients",
    "step_smatrix",
    "straight_smatrix",
]
