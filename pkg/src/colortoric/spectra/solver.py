from __future__ import annotations

import logging
import numpy as np
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from scipy.linalg import eigh
from scipy.sparse.linalg import LinearOperator, eigsh, ArpackNoConvergence

from colortoric.errors import NonConvergence
from colortoric.models import HamiltonianSpec
from colortoric.utils.kernels import apply_terms
from colortoric.utils.tolerances import resolve
from .state import check_cap

logger = logging.getLogger(__name__)

# Small Hilbert spaces are diagonalized densely
DENSE_DIM = 256


@dataclass
class SpectrumReport:
    """
    Lowest eigenvalues in ascending order with residual norms and degeneracy clusters `[start, end)`.
    Eigenvectors are kept in memory only (`vectors`, one per column) and never serialized.
    """
    eigenvalues: List[float]
    residuals: List[float]
    clusters: List[Tuple[int, int]]
    meta: Dict[str, Any] = field(default_factory = dict)
    vectors: Optional[np.ndarray] = field(default = None, repr = False)

    @property
    def ground_energy(self) -> float:
        return self.eigenvalues[0]

    @property
    def degeneracies(self) -> List[int]:
        return [end - start for start, end in self.clusters]

    def cluster_vectors(self, index: int = 0) -> np.ndarray:
        start, end = self.clusters[index]
        return self.vectors[:, start:end]

    def to_dict(self):
        return {
            "eigenvalues": [float(e) for e in self.eigenvalues],
            "clusters": [[int(s), int(e)] for s, e in self.clusters],
            "residuals": [float(r) for r in self.residuals],
            "meta": self.meta
        }

    @classmethod
    def from_dict(cls, d):
        return cls(list(d["eigenvalues"]), list(d["residuals"]), [tuple(c) for c in d["clusters"]], dict(d["meta"]))


def cluster_levels(eigenvalues, cluster_tol: float = None) -> List[Tuple[int, int]]:
    """
    Group sorted eigenvalues whose consecutive gaps are below `cluster_tol * max(1, |E|)`.
    """
    cluster_tol = resolve(cluster_tol, "cluster_tol")
    clusters = []
    start = 0
    for i in range(1, len(eigenvalues) + 1):
        if i == len(eigenvalues) or \
                eigenvalues[i] - eigenvalues[i - 1] > cluster_tol * max(1.0, abs(eigenvalues[i - 1])):
            clusters.append((start, i))
            start = i

    return clusters


def hamiltonian_operator(h: HamiltonianSpec) -> LinearOperator:
    xs, zs, coeffs = h.kernel_arrays()
    dtype = coeffs.dtype
    dim = 1 << h.n_qubits

    def _mv(v):
        return apply_terms(np.ascontiguousarray(v.reshape(-1), dtype = dtype), xs, zs, coeffs)

    return LinearOperator((dim, dim), matvec = _mv, dtype = dtype)


def dense_matrix(h: HamiltonianSpec) -> np.ndarray:
    """
    The full matrix, built column by column from the bit kernel; small systems only.
    """
    assert h.n_qubits <= 14, "Dense matrices are limited to 14 qubits."

    op = hamiltonian_operator(h)
    dim = op.shape[0]
    return op.matmat(np.eye(dim, dtype = op.dtype))


def _residuals(op: LinearOperator, vals: np.ndarray, vecs: np.ndarray) -> np.ndarray:
    return np.array([np.linalg.norm(op.matvec(vecs[:, i]) - vals[i] * vecs[:, i]) for i in range(vals.shape[0])])


def _deflated(op: LinearOperator, vecs: np.ndarray, shift: float) -> LinearOperator:
    def _mv(v):
        v = v.reshape(-1)
        return op.matvec(v) + shift * (vecs @ (vecs.conj().T @ v))

    return LinearOperator(op.shape, matvec = _mv, dtype = op.dtype)


def lowest_eigs(h: HamiltonianSpec, k: int, tol: float = None, buffer: int = 4, max_restarts: int = 3, block_size: int = 20,
                cluster_tol: float = None, seed: int = None, return_vectors: bool = True) -> SpectrumReport:
    """
    The `k` smallest eigenvalues of `h`.

    Implicitly restarted Lanczos (`eigsh`) on the matrix-free operator computes `k + buffer` levels; the result
    is then checked for missed degenerate copies by deflating the converged vectors and searching again in
    blocks of `block_size` levels, until a search finds nothing new.
    Levels whose residual exceeds `tol * max(1, |E|)` trigger a restart with a larger Krylov space.

    :param buffer: extra levels computed so that the cluster at the cut is complete
    :type buffer: int

    :param block_size: levels per deflated search; at least the largest expected degeneracy
    :type block_size: int
    """
    assert k >= 1, "`k` must be positive."
    check_cap(h.n_qubits)

    tol = resolve(tol, "residual_tol")
    seed = resolve(seed, "seed")
    dim = 1 << h.n_qubits
    assert k <= dim, f"`k` = {k} exceeds the Hilbert-space dimension {dim}."

    op = hamiltonian_operator(h)
    num = min(k + buffer, dim)

    if dim <= DENSE_DIM or num >= dim - 1:
        vals, vecs = eigh(dense_matrix(h))
        vals, vecs = vals[:num], vecs[:, :num]
        meta = {"method": "dense", "restarts": 0}
    else:
        vals, vecs, meta = _iterative(op, num, tol, max_restarts, seed, block_size)

    res = _residuals(op, vals, vecs)
    bad = [i for i in range(num) if res[i] > tol * max(1.0, abs(vals[i]))]
    if len(bad) > 0:
        raise NonConvergence(f"Residuals of levels {bad} exceed the tolerance {tol}.", levels = bad,
                             residuals = [float(res[i]) for i in bad])

    clusters = cluster_levels(vals, cluster_tol)
    # Keep whole clusters only, but never fewer than k levels
    keep = k
    for start, end in clusters:
        if start < k < end:
            keep = end if end < num else k

    clusters = [(s, min(e, keep)) for s, e in clusters if s < keep]
    report = SpectrumReport(
        eigenvalues = vals[:keep].tolist(),
        residuals = res[:keep].tolist(),
        clusters = clusters,
        meta = dict(meta, k = k, computed = num, tol = tol),
        vectors = vecs[:, :keep] if return_vectors else None
    )

    logger.info(f"Lowest {keep} levels: E0 = {report.ground_energy:.12f}, clusters = {report.degeneracies}.")
    return report


def _iterative(op: LinearOperator, num: int, tol: float, max_restarts: int, seed: int, block_size: int = 20):
    dim = op.shape[0]
    rng = np.random.default_rng(seed)
    ncv = min(dim, max(2 * num + 1, 40))
    maxiter = 20 * dim

    for restart in range(max_restarts + 1):
        v0 = rng.standard_normal(dim).astype(op.dtype)
        try:
            vals, vecs = eigsh(op, k = num, which = "SA", v0 = v0, ncv = ncv, tol = 0, maxiter = maxiter)
        except ArpackNoConvergence:
            logger.warning(f"Lanczos did not converge (restart {restart}, ncv = {ncv}); enlarging the Krylov space.")
            ncv = min(dim, 2 * ncv)
            continue

        order = np.argsort(vals)
        vals, vecs = vals[order], vecs[:, order]

        vals, vecs, found = _fill_missing(op, vals, vecs, rng, block_size = block_size)
        return vals, vecs, {"method": "lanczos", "restarts": restart, "ncv": ncv, "deflation_hits": found}

    raise NonConvergence(f"Lanczos did not converge after {max_restarts} restarts.", restarts = max_restarts)


def _rayleigh_ritz(op: LinearOperator, basis: np.ndarray, num: int) -> Tuple[np.ndarray, np.ndarray]:
    # Reorthogonalize the merged vectors and rediagonalize within their span
    q, _ = np.linalg.qr(basis)
    small = q.conj().T @ op.matmat(q)
    vals, u = eigh(0.5 * (small + small.conj().T))
    return vals[:num], (q @ u)[:, :num]


def _fill_missing(op: LinearOperator, vals: np.ndarray, vecs: np.ndarray, rng, block_size: int = 20,
                  max_rounds: int = None):
    """
    Search the complement of the converged vectors for levels below the highest converged one. Single-vector
    Lanczos can miss copies of exactly degenerate levels, so the search is repeated with a block of
    `block_size` levels per round until a round finds nothing new.
    """
    num = vals.shape[0]
    dim = op.shape[0]
    block = min(block_size, dim - num - 2)
    if block < 1:
        return vals, vecs, 0

    if max_rounds is None:
        max_rounds = num + 1

    shift = 2.0 * (abs(vals[0]) + abs(vals[-1])) + 10.0
    ncv = min(dim, max(2 * block + 1, 40))
    found = 0
    for _ in range(max_rounds):
        deflated = _deflated(op, vecs, shift)
        v0 = rng.standard_normal(dim).astype(op.dtype)
        extra_vals, extra_vecs = eigsh(deflated, k = block, which = "SA", v0 = v0, ncv = ncv, tol = 0,
                                       maxiter = 20 * dim)
        hits = extra_vals < vals[-1] - 1e-9 * max(1.0, abs(vals[-1]))
        if not np.any(hits):
            break

        found += int(np.count_nonzero(hits))
        vals, vecs = _rayleigh_ritz(op, np.concatenate([vecs, extra_vecs[:, hits]], axis = 1), num)
    else:
        logger.warning(f"Deflation still finding levels after {max_rounds} rounds.")

    if found > 0:
        logger.info(f"Deflation recovered {found} missed levels.")

    return vals, vecs, found


def spectral_gap(h: HamiltonianSpec, cluster_tol: float = None, k: int = 8, max_k: int = 64, **kwargs) -> Tuple[float, int, float]:
    """
    `(E0, ground degeneracy, gap)`, enlarging the number of computed levels until the ground cluster closes.
    """
    dim = 1 << h.n_qubits
    while True:
        report = lowest_eigs(h, min(k, dim), cluster_tol = cluster_tol, return_vectors = False, **kwargs)
        if len(report.clusters) >= 2:
            start, end = report.clusters[1]
            return report.ground_energy, report.degeneracies[0], report.eigenvalues[start] - report.ground_energy
        if k >= min(max_k, dim):
            raise NonConvergence(f"Ground cluster spans all {k} computed levels.", k = k)
        k *= 2


def dense_spectrum(h: HamiltonianSpec) -> np.ndarray:
    return eigh(dense_matrix(h), eigvals_only = True)
