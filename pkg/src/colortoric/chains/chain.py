from __future__ import annotations

import heapq
import logging
import numpy as np
from typing import List, Optional, Tuple

from scipy.linalg import eigvalsh

from colortoric.errors import CapExceeded
from colortoric.utils.tolerances import resolve

logger = logging.getLogger(__name__)

EVEN = "even"
ODD = "odd"
BOTH = "both"

# Full many-body enumeration of the free-fermion levels is limited to this many modes
FF_ENUM_CAP = 16


def parity_bit(parity: str) -> int:
    if parity == EVEN:
        return 0
    elif parity == ODD:
        return 1
    else:
        raise ValueError(f"Unknown parity `{parity}`.")


class ChainSpec(object):
    """
    A transverse-field Ising ring `-g_c sum_i s_i X_i X_{i+1} - g_t sum_i Z_i` with `s_i = 1` except on the
    closing bond `(N-1, 0)`, which carries `twist`.

    :param length: number of sites (a ring of 2 sites has two bonds between the same pair)
    :type length: int

    :param twist: sign of the closing bond, +1 (periodic) or -1 (antiperiodic)
    :type twist: int

    :param row: provenance row index (-1 if none)
    :type row: int

    :param shade: provenance shade (`light`, `dark` or empty)
    :type shade: str
    """

    __slots__ = ("length", "g_c", "g_t", "twist", "row", "shade")

    def __init__(self, length: int, g_c: float = 1.0, g_t: float = 1.0, twist: int = 1, row: int = -1, shade: str = ""):
        assert length >= 2, "A chain needs at least 2 sites."
        assert twist in (1, -1), "`twist` must be +1 or -1."

        self.length = length
        self.g_c = float(g_c)
        self.g_t = float(g_t)
        self.twist = twist
        self.row = row
        self.shade = shade

    def with_couplings(self, g_t: float, g_c: float) -> ChainSpec:
        return ChainSpec(self.length, g_c = g_c, g_t = g_t, twist = self.twist, row = self.row, shade = self.shade)

    def to_dict(self):
        return {"length": self.length, "g_c": self.g_c, "g_t": self.g_t, "twist": self.twist, "row": self.row, "shade": self.shade}

    def __repr__(self):
        return f"ChainSpec(length={self.length}, g_c={self.g_c}, g_t={self.g_t}, twist={self.twist}, row={self.row}, shade={self.shade!r})"


def chain_dense_matrix(c: ChainSpec) -> np.ndarray:
    """
    Dense ring Hamiltonian in the Z basis; basis index bit i is site i.
    """
    cap = resolve(None, "dense_chain_cap")
    if c.length > cap:
        raise CapExceeded(f"Dense chains are limited to {cap} sites, got {c.length}.", length = c.length, cap = cap)

    n = c.length
    dim = 1 << n
    idx = np.arange(dim)
    bits = (idx[:, None] >> np.arange(n)[None, :]) & 1

    mat = np.zeros([dim, dim], dtype = np.float64)
    mat[idx, idx] = -c.g_t * np.sum(1 - 2 * bits, axis = 1)
    for i in range(n):
        j = (i + 1) % n
        sign = c.twist if i == n - 1 else 1
        flipped = idx ^ ((1 << i) | (1 << j))
        mat[flipped, idx] += -c.g_c * sign

    return mat


def chain_dense_spectrum(c: ChainSpec, parity: str = BOTH) -> np.ndarray:
    """
    All eigenvalues (ascending) in the sector `prod Z = +1` (even), `-1` (odd), or both.
    """
    mat = chain_dense_matrix(c)
    if parity == BOTH:
        return eigvalsh(mat)

    dim = mat.shape[0]
    pop = np.array([bin(b).count("1") & 1 for b in range(dim)])
    sel = np.nonzero(pop == parity_bit(parity))[0]
    return eigvalsh(mat[np.ix_(sel, sel)])


def _modes(c: ChainSpec, parity: str) -> Tuple[float, np.ndarray, int]:
    """
    Reduce the ring in one parity sector to independent excitations.

    After the Jordan-Wigner transformation the closing bond sees `c_{N+1} = -twist * P * c_1`: momenta are
    `pi (2m + 1) / N` if `twist * P = +1` and `2 pi m / N` otherwise. Pairs `(k, -k)` give two quasiparticles
    of energy `eps_k = 2 sqrt(g_t^2 + g_c^2 - 2 g_t g_c cos k)` on top of a vacuum contribution `a_k - eps_k`,
    with `a_k = 2 (g_t - g_c cos k)`. Unpaired momenta 0 and pi cost `a_k` when occupied; a negative `a_k` is
    folded into the reference state. Every excitation flips the fermion parity.

    :returns: `(reference energy, sorted excitation costs, parity bit the excitation count must have)`
    """
    n = c.length
    g_t, g_c = c.g_t, c.g_c
    p_bit = parity_bit(parity)
    p_sign = 1 - 2 * p_bit

    if c.twist * p_sign == 1:
        ks = np.pi * (2 * np.arange(n) + 1) / n
    else:
        ks = 2 * np.pi * np.arange(n) / n

    ref = -g_t * n
    costs = []
    flips = 0
    for k in ks:
        a_k = 2.0 * (g_t - g_c * np.cos(k))
        if np.isclose(np.sin(k), 0.0, atol = 1e-12):
            if a_k < 0:
                ref += a_k
                flips ^= 1
            costs.append(abs(a_k))
        elif k < np.pi:
            eps_k = 2.0 * np.sqrt(max(g_t * g_t + g_c * g_c - 2.0 * g_t * g_c * np.cos(k), 0.0))
            ref += a_k - eps_k
            costs.extend([eps_k, eps_k])

    return ref, np.sort(np.array(costs)), p_bit ^ flips


def _lowest_subset_sums(costs: np.ndarray, m: int, count_parity: int) -> List[float]:
    """
    The `m` smallest sums over subsets of `costs` (sorted, non-negative) with `|subset| % 2 == count_parity`.
    Best-first: the subset ending at index i spawns "append i+1" and "replace i by i+1".
    """
    out = []
    if count_parity == 0:
        out.append(0.0)
    if len(costs) == 0:
        return out[:m]

    heap = [(float(costs[0]), 0, 1)]
    while len(heap) > 0 and len(out) < m:
        total, last, size = heapq.heappop(heap)
        if size % 2 == count_parity:
            out.append(total)
        if last + 1 < len(costs):
            heapq.heappush(heap, (total + float(costs[last + 1]), last + 1, size + 1))
            heapq.heappush(heap, (total - float(costs[last]) + float(costs[last + 1]), last + 1, size))

    return out[:m]


def chain_ff_spectrum(c: ChainSpec, parity: str, m: Optional[int] = None) -> np.ndarray:
    """
    Free-fermion levels of one parity sector, ascending: all `2^(N-1)` of them, or only the lowest `m`.
    """
    ref, costs, count_parity = _modes(c, parity)

    if m is None:
        if c.length > FF_ENUM_CAP:
            raise CapExceeded(f"Full enumeration is limited to {FF_ENUM_CAP} sites, got {c.length}.",
                              length = c.length, cap = FF_ENUM_CAP)

        num = len(costs)
        idx = np.arange(1 << num)
        bits = (idx[:, None] >> np.arange(num)[None, :]) & 1
        keep = (np.sum(bits, axis = 1) % 2) == count_parity
        return np.sort(ref + bits[keep] @ costs)

    return ref + np.array(_lowest_subset_sums(costs, m, count_parity))


def chain_gap(c: ChainSpec, parity: str = EVEN, cluster_tol: float = None) -> float:
    """
    First level above the ground level of one parity sector, minus the ground level.
    """
    cluster_tol = resolve(cluster_tol, "cluster_tol")
    m = 4
    while True:
        levels = chain_ff_spectrum(c, parity, m = m)
        above = levels[levels > levels[0] + cluster_tol * max(1.0, abs(levels[0]))]
        if len(above) > 0:
            return float(above[0] - levels[0])
        if len(levels) < m:
            return 0.0
        m *= 2
