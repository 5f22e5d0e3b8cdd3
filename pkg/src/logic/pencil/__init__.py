"""Maxwell and augmented operator pencils on a cylinder cross-section."""

from .identities import IdentityResiduals, PolynomialField, identity_residuals
from .models import (
    ALPHA,
    BETA,
    COMPONENTS,
    PHI,
    PSI,
    ModeFamily,
    MultiplicityReport,
    PencilPoint,
    ResidualField,
    Threshold,
    VectorModeSection,
)
from .modes import build_mode, default_family, special_vectors
from .operator import apply_pencil, augmented_operator
from .profiles import BumpProfile
from .spectrum import (
    ensure_off_threshold,
    evanescent_points,
    first_evanescent_mu,
    multiplicity_report,
    real_maxwell_spectrum,
    spectral_gap,
    threshold_tolerance,
    threshold_values,
    thresholds,
)

__all__ = [
    "ALPHA",
    "BETA",
    "COMPONENTS",
    "PHI",
    "PSI",
    "BumpProfile",
    "IdentityResiduals",
    "ModeFamily",
    "MultiplicityReport",
    "PencilPoint",
    "PolynomialField",
    "ResidualField",
    "Threshold",
    "VectorModeSection",
    "apply_pencil",
    "augmented_operator",
    "build_mode",
    "default_family",
    "ensure_off_threshold",
    "evanescent_points",
    "first_evanescent_mu",
    "identity_residuals",
    "multiplicity_report",
    "real_maxwell_spectrum",
    "spectral_gap",
    "special_vectors",
    "threshold_tolerance",
    "threshold_values",
    "thresholds",
]
