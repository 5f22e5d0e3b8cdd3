"""Normalized cylinder waves and the mode ledger."""

from .extension import SmoothstepCutoff, WaveExtension, extend_to_domain
from .flux import axial_flux, flux_pairing, normalize_and_orient
from .ledger import build_ledger, default_mu_cutoff
from .models import (
    DEFAULT_T_OUTER,
    Channel,
    CutoffProfile,
    CylinderWave,
    Direction,
    EndInventory,
    ModeLedger,
)

__all__ = [
    "DEFAULT_T_OUTER",
    "Channel",
    "CutoffProfile",
    "CylinderWave",
    "Direction",
    "EndInventory",
    "ModeLedger",
    "SmoothstepCutoff",
    "WaveExtension",
    "axial_flux",
    "build_ledger",
    "default_mu_cutoff",
    "extend_to_domain",
    "flux_pairing",
    "normalize_and_orient",
]
