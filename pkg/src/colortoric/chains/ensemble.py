from __future__ import annotations

import heapq
import itertools
import logging
import numpy as np
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from colortoric.errors import AuditFailure
from colortoric.utils.parallel import parallel_map
from colortoric.utils.tolerances import resolve
from .chain import ChainSpec, chain_ff_spectrum, chain_dense_spectrum, EVEN, ODD

logger = logging.getLogger(__name__)

# (twist per chain, parity bit per chain)
SectorKey = Tuple[Tuple[int, ...], Tuple[int, ...]]


class ChainEnsemble(object):
    """
    A direct sum of products of independent TFIM rings.

    Every sector fixes a twist and a parity for each ring and carries a multiplicity (the number of
    topological labels sharing it); its levels are sums of one level from every ring's parity sector.

    :param lengths: ring lengths
    :type lengths: Sequence[int]

    :param sectors: multiplicity of every admitted `(twists, parities)` combination
    :type sectors: Dict[SectorKey, int]

    :param provenance: `(row, shade)` of every ring
    :type provenance: Optional[Sequence[Tuple[int, str]]]
    """

    def __init__(self, lengths: Sequence[int], sectors: Dict[SectorKey, int], g_t: float = 1.0, g_c: float = 1.0,
                 provenance: Optional[Sequence[Tuple[int, str]]] = None, label: str = ""):
        for (twists, parities), mult in sectors.items():
            assert len(twists) == len(lengths) and len(parities) == len(lengths), "Sector keys need one entry per ring."
            assert mult > 0, "Sector multiplicities must be positive."

        self.lengths = list(lengths)
        self.sectors = dict(sectors)
        self.g_t = g_t
        self.g_c = g_c
        self.provenance = list(provenance) if provenance is not None else [(-1, "")] * len(lengths)
        self.label = label

    @property
    def num_chains(self) -> int:
        return len(self.lengths)

    def at(self, g_t: float, g_c: float) -> ChainEnsemble:
        return ChainEnsemble(self.lengths, self.sectors, g_t = g_t, g_c = g_c, provenance = self.provenance, label = self.label)

    def chains(self, twists: Sequence[int]) -> List[ChainSpec]:
        return [ChainSpec(n, g_c = self.g_c, g_t = self.g_t, twist = s, row = row, shade = shade)
                for n, s, (row, shade) in zip(self.lengths, twists, self.provenance)]

    def dimension(self) -> int:
        """
        Total number of states, in exact integer arithmetic.
        """
        per_sector = 1
        for n in self.lengths:
            per_sector *= 1 << (n - 1)

        return sum(self.sectors.values()) * per_sector

    def audit(self, n_qubits: int):
        dim = self.dimension()
        if dim != 1 << n_qubits:
            raise AuditFailure(f"Ensemble `{self.label}` spans {dim} states instead of 2^{n_qubits}.",
                               dimension = dim, n_qubits = n_qubits)

    def twist_counts(self) -> Dict[int, int]:
        """
        Number of sector states grouped by how many rings are twisted.
        """
        counts: Dict[int, int] = {}
        for (twists, _), mult in self.sectors.items():
            num = sum(1 for s in twists if s == -1)
            counts[num] = counts.get(num, 0) + mult
        return counts

    def to_dict(self):
        return {
            "label": self.label,
            "lengths": self.lengths,
            "g_t": self.g_t,
            "g_c": self.g_c,
            "provenance": [list(p) for p in self.provenance],
            "sectors": [{"twists": list(k[0]), "parities": list(k[1]), "multiplicity": m} for k, m in self.sectors.items()]
        }

    def __repr__(self):
        return f"ChainEnsemble({self.label!r}, chains={self.num_chains}, sectors={len(self.sectors)})"


def k_lowest_sums(lists: Sequence[Sequence[float]], k: int) -> List[float]:
    """
    The `k` smallest values of `sum_i lists[i][j_i]` over all index tuples, each list sorted ascending.
    Best-first search over the index lattice with a heap of partial sums and a visited set.
    """
    if len(lists) == 0 or any(len(l) == 0 for l in lists):
        return []

    start = tuple(0 for _ in lists)
    heap = [(float(sum(l[0] for l in lists)), start)]
    seen = {start}
    out = []
    while len(heap) > 0 and len(out) < k:
        total, idx = heapq.heappop(heap)
        out.append(total)
        for i in range(len(lists)):
            if idx[i] + 1 < len(lists[i]):
                nxt = idx[:i] + (idx[i] + 1,) + idx[i + 1:]
                if nxt not in seen:
                    seen.add(nxt)
                    heapq.heappush(heap, (total - lists[i][idx[i]] + lists[i][idx[i] + 1], nxt))

    return out


def _sector_levels(chains: List[ChainSpec], parities: Tuple[int, ...], k: int, method: str) -> List[np.ndarray]:
    out = []
    for c, p in zip(chains, parities):
        parity = EVEN if p == 0 else ODD
        if method == "ff":
            out.append(chain_ff_spectrum(c, parity, m = k))
        elif method == "dense":
            out.append(chain_dense_spectrum(c, parity)[:k])
        else:
            raise ValueError(f"Unknown chain solver `{method}`.")

    return out


def _sector_stream(e: ChainEnsemble, key: SectorKey, k: int, method: str) -> Iterator[float]:
    twists, parities = key
    levels = _sector_levels(e.chains(twists), parities, k, method)
    for value in k_lowest_sums(levels, k):
        for _ in range(e.sectors[key]):
            yield value


def assemble_k_lowest(e: ChainEnsemble, k: int, method: str = "ff") -> List[float]:
    """
    The `k` lowest ensemble levels, repeated according to multiplicity: a best-first stream per sector, merged.
    """
    if k > e.dimension():
        raise ValueError(f"`k` = {k} exceeds the ensemble dimension {e.dimension()}.")

    streams = [_sector_stream(e, key, k, method) for key in sorted(e.sectors)]
    return list(itertools.islice(heapq.merge(*streams), k))


def ensemble_gap(e: ChainEnsemble, cluster_tol: float = None, k: int = 8) -> Tuple[float, int, float]:
    """
    `(E0, ground multiplicity, gap)` of the ensemble.
    """
    cluster_tol = resolve(cluster_tol, "cluster_tol")
    dim = e.dimension()
    while True:
        levels = assemble_k_lowest(e, min(k, dim))
        tol = cluster_tol * max(1.0, abs(levels[0]))
        above = [i for i, v in enumerate(levels) if v - levels[0] > tol]
        if len(above) > 0:
            return levels[0], above[0], levels[above[0]] - levels[0]
        if k >= dim:
            return levels[0], len(levels), 0.0
        k *= 2


@dataclass
class GapCurve:
    ratios: List[float]
    gaps: List[float]
    argmin: float
    meta: Dict[str, object] = field(default_factory = dict)

    def to_dict(self):
        return {"ratios": self.ratios, "gaps": self.gaps, "argmin": self.argmin, "meta": self.meta}


def _gap_at(args):
    e, ratio = args
    return ensemble_gap(e.at(g_t = ratio, g_c = 1.0))[2]


def predicted_gap(e: ChainEnsemble, ratios: Sequence[float], workers: int = 1, verbose: bool = False) -> GapCurve:
    """
    Ensemble gap along `g_t / g_c = ratio` with `g_c = 1`, and the ratio of the smallest gap.
    """
    gaps = parallel_map(_gap_at, [(e, float(r)) for r in ratios], workers = workers, verbose = verbose, desc = "gap")
    best = int(np.argmin(gaps))
    return GapCurve([float(r) for r in ratios], [float(g) for g in gaps], float(ratios[best]), {"label": e.label})


def single_chain_ensemble(length: int, parity: str = EVEN, twist: int = 1) -> ChainEnsemble:
    """
    One ring restricted to one parity sector.
    """
    bit = 0 if parity == EVEN else 1
    return ChainEnsemble([length], {((twist,), (bit,)): 1}, label = f"chain-{length}-{parity}")


def ratio_grid(start: float, stop: float, step: float) -> np.ndarray:
    num = int(round((stop - start) / step)) + 1
    return np.round(start + step * np.arange(num), 10)
