"""Pytest configuration and shared fixtures."""

import os
import shutil
import tempfile
from pathlib import Path

import numpy as np
import pytest

_LOG_DIR = tempfile.mkdtemp(prefix="waveguide-scatter-tests-")
os.environ["LOG_DIR"] = _LOG_DIR

from logic.cross_section import CrossSection, make_cross_section
from logic.pencil import PolynomialField
from logic.scattering import SeparableStep, StraightGuide

_HOLE_NODES = [(0, 0), (3, 0), (3, 3), (0, 3), (1, 1), (2, 1), (2, 2), (1, 2)]
_HOLE_TRIANGLES = [(0, 1, 5), (0, 5, 4), (1, 2, 6), (1, 6, 5), (2, 3, 7), (2, 7, 6), (3, 0, 4), (3, 4, 7)]
_HOLE_EDGES = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)]


def pytest_sessionfinish(session, exitstatus):
    """Discard the throwaway log directory this run wrote to.

    Args:
        session: The pytest session that has finished.
        exitstatus: The status the session is exiting with.
    """
    shutil.rmtree(_LOG_DIR, ignore_errors=True)


@pytest.fixture
def holed_square_mesh():
    """Nodes, triangles and boundary edges of a 3 x 3 square with a unit square hole."""
    return _HOLE_NODES, _HOLE_TRIANGLES, _HOLE_EDGES


@pytest.fixture
def unit_square() -> CrossSection:
    """The analytic unit square [0, 1] x [0, 1]."""
    return make_cross_section({"kind": "rectangle", "a": 1.0, "b": 1.0})


@pytest.fixture
def unit_disc() -> CrossSection:
    """The analytic unit disc."""
    return make_cross_section({"kind": "disc", "radius": 1.0})


@pytest.fixture
def straight_guide(unit_square) -> StraightGuide:
    """A unit-square guide of length 2."""
    return StraightGuide(unit_square, 2.0)


@pytest.fixture
def dirichlet_step() -> SeparableStep:
    """A step from a width-1 channel into a width-2 channel, offset 0.5."""
    return SeparableStep(a1=1.0, a2=2.0, offset=0.5)


@pytest.fixture
def maxwell_step() -> SeparableStep:
    """A 3D step whose passive extent keeps the band 4.5 purely TE."""
    return SeparableStep(a1=1.0, a2=2.0, offset=0.5, height=0.4)


@pytest.fixture
def square_mesh_text() -> str:
    """Mesh-file text of the unit square split into two triangles."""
    return "\n".join(
        [
            "# unit square",
            "nodes 4",
            "0 0",
            "1 0",
            "1 1",
            "0 1",
            "tris 2",
            "0 1 2",
            "0 2 3",
            "bedges 4",
            "0 1",
            "1 2",
            "2 3",
            "3 0",
        ]
    )


@pytest.fixture
def write_config(tmp_path):
    """Factory writing run-config text to a file.

    Args:
        tmp_path: The temporary directory path.

    Returns:
        A function taking the config text and returning its path.
    """

    def _write(text: str, name: str = "run.cfg") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write


def _poly(terms: dict[tuple[int, int], complex], size: int = 5) -> np.ndarray:
    c = np.zeros((size, size), dtype=complex)
    for (i, j), value in terms.items():
        c[i, j] = value
    return c


# x(1 - x), y(1 - y) and their product as coefficient grids
X_BUBBLE = {(1, 0): 1.0, (2, 0): -1.0}
Y_BUBBLE = {(0, 1): 1.0, (0, 2): -1.0}
XY_BUBBLE = {(1, 1): 1.0, (2, 1): -1.0, (1, 2): -1.0, (2, 2): 1.0}


@pytest.fixture
def conforming_field():
    """Factory for polynomial fields on the unit square satisfying the lateral conditions.

    phi1 ~ y(1-y), phi2 ~ x(1-x), phi3 ~ xy(1-x)(1-y), psi1 ~ x(1-x),
    psi2 ~ y(1-y), beta ~ xy(1-x)(1-y) and alpha free.
    """

    def _make(scales: tuple[complex, ...] = (1, 2, 1, 1, 1, 1, 1, 1), alpha: dict | None = None) -> PolynomialField:
        alpha = alpha if alpha is not None else {(0, 0): 1.0, (1, 0): 0.5, (0, 1): -0.25, (1, 1): 0.3}
        grids = [Y_BUBBLE, X_BUBBLE, XY_BUBBLE, alpha, X_BUBBLE, Y_BUBBLE, {}, XY_BUBBLE]
        coefficients = np.stack([s * _poly(g) for s, g in zip(scales, grids)])
        return PolynomialField(coefficients)

    return _make
