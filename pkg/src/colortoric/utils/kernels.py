from __future__ import annotations

import numpy as np
from numba import njit, prange

# Basis index bit q is qubit q (qubit 0 is the least significant bit).


@njit(cache = True)
def _parity64(x):
    x ^= x >> 32
    x ^= x >> 16
    x ^= x >> 8
    x ^= x >> 4
    x ^= x >> 2
    x ^= x >> 1
    return x & 1


@njit(cache = True, parallel = True)
def matvec_kernel(vec, out, xmasks, zmasks, coeffs):
    """
    `out[b] = sum_t coeffs[t] * (-1)^{|(b ^ x_t) & z_t|} * vec[b ^ x_t]`, i.e. the action of
    `sum_t coeffs[t] X^{x_t} Z^{z_t}`. Every output amplitude is owned by one iteration.
    """
    dim = vec.shape[0]
    num_terms = xmasks.shape[0]
    for b in prange(dim):
        acc = vec[0] * 0
        for t in range(num_terms):
            src = b ^ xmasks[t]
            if _parity64(src & zmasks[t]) == 1:
                acc -= coeffs[t] * vec[src]
            else:
                acc += coeffs[t] * vec[src]
        out[b] = acc


def apply_terms(vec: np.ndarray, xmasks: np.ndarray, zmasks: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    out = np.empty_like(vec)
    matvec_kernel(vec, out, np.asarray(xmasks, dtype = np.int64), np.asarray(zmasks, dtype = np.int64),
                  np.asarray(coeffs).astype(vec.dtype))
    return out
