"""Cross-section domains and scalar Helmholtz eigenproblems."""

from .analytic import constant_pair
from .geometry import make_cross_section, validate_mesh
from .models import (
    Backend,
    BoundaryCondition,
    CrossSection,
    ScalarEigenpair,
    SectionKind,
    TriangleMesh,
)
from .spectrum import eigenvalues, eval_field, helmholtz_eigs

__all__ = [
    "Backend",
    "BoundaryCondition",
    "CrossSection",
    "ScalarEigenpair",
    "SectionKind",
    "TriangleMesh",
    "constant_pair",
    "eigenvalues",
    "eval_field",
    "helmholtz_eigs",
    "make_cross_section",
    "validate_mesh",
]
