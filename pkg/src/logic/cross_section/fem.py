"""P1 finite-element Helmholtz eigensolver."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from numpy.typing import NDArray
from scipy.sparse import coo_matrix, csr_matrix
from scipy.sparse.linalg import ArpackNoConvergence, eigsh, splu

from utils import SolverError, WSLogger

from .analytic import constant_pair
from .models import BoundaryCondition, CrossSection, ScalarEigenpair, TriangleMesh
from .quadrature import _MIDPOINT_RULE

logger = WSLogger.get_logger(__name__)

EIGEN_TOL = 1e-10
CLUSTER_GAP = 1e-6
DENSE_LIMIT = 600
SHIFT = -1.0


@dataclass(frozen=True, eq=False)
class NodalField:
    """Piecewise-linear eigenfunction with recovered second derivatives.

    Attributes:
        mesh: The triangle mesh.
        values: Nodal coefficients.
        gradients: Area-averaged nodal gradients, shape (n, 2).
        laplacian: Nodal discrete Laplacian -M^-1 K u.
    """

    mesh: TriangleMesh
    values: NDArray[np.float64]
    gradients: NDArray[np.float64]
    laplacian: NDArray[np.float64]

    def jet(self, points: NDArray[np.float64], order: int) -> NDArray[np.float64]:
        owners, bary = self.mesh.locate(points)
        owners = np.where(owners < 0, 0, owners)
        tri = self.mesh.triangles[owners]
        grads = self.mesh.basis_gradients[owners]  # (P, 3, 2)

        u = np.einsum("pi,pi->p", bary, self.values[tri])
        du = np.einsum("pi,pij->pj", self.values[tri], grads)
        rows = [u, du[:, 0], du[:, 1]]
        if order >= 2:
            # Jacobian of the interpolated recovered gradient, symmetrized,
            # with its trace replaced by the discrete Laplacian
            jac = np.einsum("pik,pil->pkl", self.gradients[tri], grads)
            hess = 0.5 * (jac + jac.transpose(0, 2, 1))
            lap = np.einsum("pi,pi->p", bary, self.laplacian[tri])
            shift = 0.5 * (lap - hess[:, 0, 0] - hess[:, 1, 1])
            rows += [hess[:, 0, 0] + shift, hess[:, 0, 1], hess[:, 1, 1] + shift]
        return np.array(rows)


def assemble(mesh: TriangleMesh) -> tuple[csr_matrix, csr_matrix]:
    """Assemble the P1 stiffness and mass matrices.

    The mass matrix uses the edge-midpoint rule, which is exact for products
    of linear functions.

    Args:
        mesh: The triangle mesh.

    Returns:
        Tuple (stiffness K, mass M), both CSR.
    """
    n = len(mesh.nodes)
    areas = mesh.signed_areas
    grads = mesh.basis_gradients
    stiffness = areas[:, None, None] * np.einsum("tik,tjk->tij", grads, grads)
    mass = (areas / 3.0)[:, None, None] * (_MIDPOINT_RULE.T @ _MIDPOINT_RULE)[None]

    m = len(mesh.triangles)
    rows = np.broadcast_to(mesh.triangles[:, :, None], (m, 3, 3)).ravel()
    cols = np.broadcast_to(mesh.triangles[:, None, :], (m, 3, 3)).ravel()
    K = coo_matrix((stiffness.ravel(), (rows, cols)), shape=(n, n)).tocsr()
    M = coo_matrix((mass.ravel(), (rows, cols)), shape=(n, n)).tocsr()
    return K, M


def recovered_gradients(mesh: TriangleMesh, values: NDArray[np.float64]) -> NDArray[np.float64]:
    """Area-weighted average of the element gradients at every node."""
    areas = mesh.signed_areas
    element = np.einsum("ti,tij->tj", values[mesh.triangles], mesh.basis_gradients)
    total = np.zeros((len(mesh.nodes), 2))
    weight = np.zeros(len(mesh.nodes))
    for corner in range(3):
        np.add.at(total, mesh.triangles[:, corner], areas[:, None] * element)
        np.add.at(weight, mesh.triangles[:, corner], areas)
    return total / weight[:, None]


def _weyl_estimate(cs: CrossSection, bc: BoundaryCondition, cutoff: float) -> int:
    """Two-term Weyl estimate of the eigenvalue count below cutoff."""
    sign = -1.0 if bc is BoundaryCondition.DIRICHLET else 1.0
    count = cs.area * cutoff / (4.0 * math.pi) + sign * cs.perimeter * math.sqrt(cutoff) / (4.0 * math.pi)
    return max(1, int(math.ceil(count)))


def _solve(K: csr_matrix, M: csr_matrix, cutoff: float, estimate: int) -> tuple[NDArray, NDArray]:
    """Return all generalized eigenpairs with eigenvalue <= cutoff."""
    n = K.shape[0]
    if n <= DENSE_LIMIT:
        vals, vecs = scipy.linalg.eigh(
            K.toarray(), M.toarray(), subset_by_value=(-np.inf, cutoff * (1.0 + 1e-9) + 1e-12)
        )
        return vals, vecs

    nev = min(int(1.5 * estimate) + 6, n - 2)
    v0 = np.ones(n)
    while True:
        try:
            vals, vecs = eigsh(K, k=nev, M=M, sigma=SHIFT, which="LM", tol=EIGEN_TOL, v0=v0)
        except ArpackNoConvergence as e:
            raise SolverError(
                "Shift-invert eigensolver did not converge",
                context={"requested": nev, "achieved": len(e.eigenvalues), "cutoff": cutoff},
            ) from e
        order = np.argsort(vals)
        vals, vecs = vals[order], vecs[:, order]
        logger.debug(f"eigsh returned {nev} pairs, largest {vals[-1]:.6g}")
        if vals[-1] > cutoff or nev >= n - 2:
            return vals, vecs
        nev = min(2 * nev, n - 2)


def _canonicalize(vecs: NDArray, M: csr_matrix) -> NDArray:
    """M-orthonormalize, sign-fix and lexicographically order a cluster."""
    gram = vecs.T @ (M @ vecs)
    w, q = np.linalg.eigh(gram)
    vecs = vecs @ (q @ np.diag(1.0 / np.sqrt(w)) @ q.T)

    for j in range(vecs.shape[1]):
        column = vecs[:, j]
        lead = np.flatnonzero(np.abs(column) > 1e-8 * np.abs(column).max())[0]
        if column[lead] < 0.0:
            vecs[:, j] = -column

    keys = [tuple(np.round(vecs[:, j], 10)) for j in range(vecs.shape[1])]
    order = sorted(range(vecs.shape[1]), key=lambda j: keys[j], reverse=True)
    return vecs[:, order]


def fem_pairs(cs: CrossSection, bc: BoundaryCondition, cutoff: float) -> list[ScalarEigenpair]:
    """All P1 eigenpairs of a meshed cross-section with mu <= cutoff.

    Dirichlet nodes are eliminated; the Neumann mu = 0 mode is replaced by
    the exact constant.

    Args:
        cs: Section with a mesh.
        bc: Boundary condition.
        cutoff: Largest eigenvalue to include.

    Returns:
        Ordered list of eigenpairs.

    Raises:
        SolverError: If the eigensolver does not converge.
    """
    mesh = cs.mesh
    K, M = assemble(mesh)
    n = len(mesh.nodes)
    free = mesh.interior_nodes if bc is BoundaryCondition.DIRICHLET else np.arange(n)
    Kf = K[free][:, free].tocsr()
    Mf = M[free][:, free].tocsr()
    logger.debug(f"fem {bc.value} problem on {cs}: {len(free)} unknowns")

    vals, vecs = _solve(Kf, Mf, cutoff, _weyl_estimate(cs, bc, cutoff))

    keep = vals <= cutoff * (1.0 + 1e-12)
    vals, vecs = vals[keep], vecs[:, keep]
    pairs: list[ScalarEigenpair] = []
    if bc is BoundaryCondition.NEUMANN and len(vals):
        pairs.append(constant_pair(cs))
        vals, vecs = vals[1:], vecs[:, 1:]
    if not len(vals):
        return pairs

    # Rayleigh quotients are more accurate than the returned Ritz values
    start = 0
    columns = []
    for stop in range(1, len(vals) + 1):
        if stop == len(vals) or vals[stop] - vals[stop - 1] > CLUSTER_GAP * max(1.0, vals[stop]):
            columns.append(_canonicalize(vecs[:, start:stop], Mf))
            start = stop
    vecs = np.hstack(columns)
    vals = np.einsum("ij,ij->j", vecs, Kf @ vecs) / np.einsum("ij,ij->j", vecs, Mf @ vecs)

    lap_free = -splu(Mf.tocsc()).solve(np.asarray(Kf @ vecs))
    for j in range(vecs.shape[1]):
        values = np.zeros(n)
        laplacian = np.zeros(n)
        values[free] = vecs[:, j]
        laplacian[free] = lap_free[:, j]
        nodal = NodalField(mesh, values, recovered_gradients(mesh, values), laplacian)
        pairs.append(
            ScalarEigenpair(bc=bc, mu=float(vals[j]), eigenfunction=nodal, section=cs, label=(j + 1,))
        )
    return pairs
