from __future__ import annotations

import numpy as np
from typing import List, Optional, Tuple


def row_reduce_gf2(matrix: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """
    Reduced row echelon form over GF(2).

    :returns: the reduced matrix (rows past the rank are zero) and the pivot column of each nonzero row
    """
    mat = (np.asarray(matrix).copy() & 1).astype(np.uint8)
    if mat.ndim == 1:
        mat = mat.reshape(1, -1)

    rows, cols = mat.shape
    pivots = []
    rank = 0
    for col in range(cols):
        if rank == rows:
            break

        nz = np.nonzero(mat[rank:, col])[0]
        if nz.shape[0] == 0:
            continue

        pivot = rank + nz[0]
        if pivot != rank:
            mat[[rank, pivot]] = mat[[pivot, rank]]

        hits = np.nonzero(mat[:, col])[0]
        for r in hits:
            if r != rank:
                mat[r, :] ^= mat[rank, :]

        pivots.append(col)
        rank += 1

    return mat, pivots


def rank_gf2(matrix: np.ndarray) -> int:
    if np.asarray(matrix).size == 0:
        return 0

    _, pivots = row_reduce_gf2(matrix)
    return len(pivots)


def nullspace_gf2(matrix: np.ndarray) -> np.ndarray:
    """
    Basis of `{v : matrix @ v = 0 (mod 2)}`, one vector per row of the returned array.
    """
    matrix = np.asarray(matrix)
    cols = matrix.shape[1]
    if matrix.shape[0] == 0:
        return np.eye(cols, dtype = np.uint8)

    rref, pivots = row_reduce_gf2(matrix)
    pivot_set = set(pivots)
    free_cols = [c for c in range(cols) if c not in pivot_set]

    basis = np.zeros([len(free_cols), cols], dtype = np.uint8)
    for i, free in enumerate(free_cols):
        basis[i, free] = 1
        for r, pc in enumerate(pivots):
            if rref[r, free]:
                basis[i, pc] = 1

    return basis


def solve_gf2(matrix: np.ndarray, rhs: np.ndarray) -> Optional[np.ndarray]:
    """
    One solution of `matrix @ x = rhs (mod 2)` with all free variables set to 0, or `None` if the
    system is inconsistent.
    """
    matrix = (np.asarray(matrix) & 1).astype(np.uint8)
    rhs = (np.asarray(rhs) & 1).astype(np.uint8).reshape(-1, 1)
    assert matrix.shape[0] == rhs.shape[0], "`matrix` and `rhs` must have the same number of rows."

    cols = matrix.shape[1]
    rref, pivots = row_reduce_gf2(np.hstack([matrix, rhs]))
    if cols in pivots:
        return None

    x = np.zeros([cols], dtype = np.uint8)
    for r, pc in enumerate(pivots):
        x[pc] = rref[r, cols]

    return x


def in_span_gf2(matrix: np.ndarray, row: np.ndarray) -> bool:
    if np.asarray(matrix).size == 0:
        return not np.any(np.asarray(row) & 1)

    return rank_gf2(np.vstack([matrix, np.asarray(row) & 1])) == rank_gf2(matrix)
