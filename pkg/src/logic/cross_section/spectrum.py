"""Public Helmholtz eigen-API with a synchronized spectrum cache."""

from __future__ import annotations

import threading

import numpy as np
from numpy.typing import NDArray

from utils import InvalidInputError, WSLogger

from .analytic import disc_pairs, rectangle_pairs
from .fem import fem_pairs
from .models import Backend, BoundaryCondition, CrossSection, ScalarEigenpair, SectionKind

logger = WSLogger.get_logger(__name__)


class SpectrumCache:
    """Memo table of eigenpairs per (section key, bc).

    An entry computed for a cutoff answers every request with a smaller one;
    a larger request recomputes and replaces the entry.
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._entries: dict[tuple, tuple[float, list[ScalarEigenpair]]] = {}

    def get(self, key: tuple, cutoff: float) -> list[ScalarEigenpair] | None:
        with self._lock:
            entry = self._entries.get(key)
        if entry is None or entry[0] < cutoff:
            return None
        return entry[1]

    def put(self, key: tuple, cutoff: float, pairs: list[ScalarEigenpair]) -> None:
        with self._lock:
            current = self._entries.get(key)
            if current is None or current[0] < cutoff:
                self._entries[key] = (cutoff, pairs)

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()


_CACHE = SpectrumCache()


def helmholtz_eigs(
    cs: CrossSection, bc: BoundaryCondition | str, cutoff: float
) -> list[ScalarEigenpair]:
    """Eigenpairs of the Dirichlet or Neumann Laplacian with mu <= cutoff.

    Eigenvalues are ascending and repeated by multiplicity, eigenfunctions
    are L2-orthonormal, and the Neumann list starts with the exact constant
    mode.

    Args:
        cs: The cross-section.
        bc: Boundary condition.
        cutoff: Largest eigenvalue to include (must be positive).

    Returns:
        Ordered list of eigenpairs (possibly empty).

    Raises:
        InvalidInputError: If cutoff is not positive.
        SolverError: If the fem eigensolver fails.
    """
    bc = BoundaryCondition(bc)
    if not cutoff > 0.0:
        raise InvalidInputError("Eigenvalue cutoff must be positive", context={"cutoff": cutoff})

    key = (cs.key, bc.value)
    pairs = _CACHE.get(key, cutoff)
    if pairs is None:
        if cs.backend is Backend.FEM:
            pairs = fem_pairs(cs, bc, cutoff)
        elif cs.kind is SectionKind.RECTANGLE:
            pairs = rectangle_pairs(cs, bc, cutoff)
        else:
            pairs = disc_pairs(cs, bc, cutoff)
        logger.debug(f"{len(pairs)} {bc.value} pairs below {cutoff:.6g} on {cs}")
        _CACHE.put(key, cutoff, pairs)

    return [p for p in pairs if p.mu <= cutoff]


def eigenvalues(cs: CrossSection, bc: BoundaryCondition | str, cutoff: float) -> NDArray[np.float64]:
    """Eigenvalues only, as an array."""
    return np.array([p.mu for p in helmholtz_eigs(cs, bc, cutoff)])


def eval_field(
    pair: ScalarEigenpair, points: NDArray[np.float64]
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Evaluate an eigenfunction and its gradient.

    Args:
        pair: The eigenpair.
        points: Points in the closure of the section, shape (P, 2).

    Returns:
        Tuple (values (P,), gradients (P, 2)); fem gradients are constant per
        triangle.

    Raises:
        GeometryError: If a point lies outside the section.
    """
    points = pair.section.require_inside(points)
    jet = pair.jet(points, order=1)
    return jet[0], jet[1:3].T
