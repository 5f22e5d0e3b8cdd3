"""Block assembly of the full scattering matrix sigma."""

from __future__ import annotations

from scipy.linalg import block_diag

from utils import InvalidInputError

from .models import ScatteringMatrix


def assemble_sigma(s: ScatteringMatrix, upsilon: ScatteringMatrix) -> ScatteringMatrix:
    """sigma = diag(s, upsilon) with the channels of s first.

    Raises:
        InvalidInputError: If the blocks were computed at different frequencies.
    """
    if s.k != upsilon.k:
        raise InvalidInputError("Blocks belong to different frequencies", context={"s": s.k, "upsilon": upsilon.k})
    return ScatteringMatrix(
        k=s.k,
        entries=block_diag(s.entries, upsilon.entries).astype(complex),
        rows=s.rows + upsilon.rows,
        cols=s.cols + upsilon.cols,
        truncation=max(s.truncation, upsilon.truncation),
        condition_number=max(s.condition_number, upsilon.condition_number),
    )
