from __future__ import annotations

import logging
import numpy as np
from typing import List, Optional, Sequence, Tuple

from colortoric.errors import InconsistentGroup, NonCommuting, SizeMismatch, StateNotUnique, CapExceeded
from colortoric.utils.kernels import apply_terms
from colortoric.utils.tolerances import Tolerances, resolve
from .pauli_string import PauliString

logger = logging.getLogger(__name__)


class StabilizerGroup(object):
    """
    An abelian group of Pauli operators not containing `-I`, stored as independent generators together with
    a reduced row echelon form over the symplectic columns `[x_0..x_{n-1} | z_0..z_{n-1}]`.

    Row operations are carried out by multiplying the `PauliString`s themselves, so every echelon row keeps
    its exact sign.

    :param n_qubits: number of qubits
    :type n_qubits: int

    :param generators: pairwise commuting Hermitian generators
    :type generators: Sequence[PauliString]

    :param reduce: drop generators that are products of earlier ones instead of raising
    :type reduce: bool
    """

    def __init__(self, n_qubits: int, generators: Sequence[PauliString] = (), reduce: bool = False):
        self.n_qubits = n_qubits
        self.generators: List[PauliString] = []
        self.echelon: List[PauliString] = []
        self.pivots: List[int] = []

        for i, g in enumerate(generators):
            if g.n_qubits != n_qubits:
                raise SizeMismatch(f"Generator {i} acts on {g.n_qubits} qubits, expected {n_qubits}.",
                                   expected = n_qubits, got = g.n_qubits)
            assert g.is_hermitian(), f"Generator {i} (`{g}`) is not Hermitian."

        for i in range(len(generators)):
            for j in range(i):
                if not generators[i].commutes(generators[j]):
                    raise NonCommuting(f"Generators {j} and {i} anticommute.", pair = (j, i))

        for g in generators:
            self._insert(g, reduce = reduce)

    @classmethod
    def from_generators(cls, generators: Sequence[PauliString], n_qubits: int = None, reduce: bool = True):
        if n_qubits is None:
            assert len(generators) > 0, "`n_qubits` is required for an empty generator list."
            n_qubits = generators[0].n_qubits

        return cls(n_qubits, generators, reduce = reduce)

    @property
    def rank(self) -> int:
        return len(self.echelon)

    def __len__(self):
        return self.rank

    def _reduce(self, p: PauliString) -> PauliString:
        """
        Multiply `p` on the right by the echelon rows whose pivots it hits. The result has no pivot columns.
        """
        for row, col in zip(self.echelon, self.pivots):
            if p.has_column(col):
                p = p.multiply(row)

        return p

    def _insert(self, g: PauliString, reduce: bool):
        res = self._reduce(g)
        if res.is_identity():
            if res.phase_exp != 0:
                raise InconsistentGroup(f"Generator `{g}` generates `-I` together with the group.", generator = g.to_literal())
            if not reduce:
                raise InconsistentGroup(f"Generator `{g}` is a product of the other generators.", generator = g.to_literal())

            logger.debug(f"Dropping dependent generator {g}.")
            return

        col = res.leading_column()
        for i, row in enumerate(self.echelon):
            if row.has_column(col):
                self.echelon[i] = row.multiply(res)

        # Keep rows ordered by pivot column
        pos = int(np.searchsorted(np.array(self.pivots, dtype = np.int64), col))
        self.echelon.insert(pos, res)
        self.pivots.insert(pos, col)
        self.generators.append(g)

    def extend(self, paulis: Sequence[PauliString]) -> StabilizerGroup:
        """
        A new group generated by this group and `paulis` (dependent members are dropped).
        """
        return StabilizerGroup(self.n_qubits, list(self.generators) + list(paulis), reduce = True)

    def echelon_matrix(self) -> np.ndarray:
        """
        The echelon form as a `rank x (2n + 1)` uint8 array; the last column is 1 for rows with sign `-1`.
        """
        mat = np.zeros([self.rank, 2 * self.n_qubits + 1], dtype = np.uint8)
        for i, row in enumerate(self.echelon):
            mat[i, :-1] = row.symplectic_row()
            mat[i, -1] = 0 if row.sign == 1 else 1

        return mat

    def phase_of(self, p: PauliString) -> Optional[int]:
        """
        If `p = i^k g` for a group element `g`, return `k` (mod 4); otherwise `None`.
        """
        if p.n_qubits != self.n_qubits:
            raise SizeMismatch(f"Operator acts on {p.n_qubits} qubits, group on {self.n_qubits}.",
                               expected = self.n_qubits, got = p.n_qubits)

        res = self._reduce(p)
        if not res.is_identity():
            return None

        # p * R = i^k I with R a product of commuting group elements, hence p = i^k R
        return res.phase_exp

    def member_with_sign(self, p: PauliString) -> Optional[int]:
        """
        `+1` or `-1` if `p` or `-p` belongs to the group, `None` if neither does.
        """
        assert p.is_hermitian(), "`p` must be Hermitian."

        k = self.phase_of(p)
        if k is None:
            return None

        return 1 if k == 0 else -1

    def commutes_with_all(self, p: PauliString) -> bool:
        return all(p.commutes(g) for g in self.generators)

    def __contains__(self, p: PauliString):
        return self.member_with_sign(p) == 1

    def __repr__(self):
        return f"StabilizerGroup(n_qubits={self.n_qubits}, rank={self.rank})"


def canonicalize(group_or_generators, n_qubits: int = None) -> Tuple[List[PauliString], int]:
    """
    Reduced echelon rows (with exact signs) and the rank of the group generated by the input.
    """
    if isinstance(group_or_generators, StabilizerGroup):
        group = StabilizerGroup(group_or_generators.n_qubits, group_or_generators.generators, reduce = True)
    else:
        group = StabilizerGroup.from_generators(list(group_or_generators), n_qubits = n_qubits, reduce = True)

    return list(group.echelon), group.rank


def member_with_sign(group: StabilizerGroup, p: PauliString) -> Optional[int]:
    return group.member_with_sign(p)


def stabilizer_expectation(group: StabilizerGroup, p: PauliString) -> int:
    """
    `<phi|p|phi>` for the unique state `phi` stabilized by a full-rank group: `+1`/`-1` if `+p`/`-p` is in
    the group and 0 otherwise.
    """
    if group.rank != group.n_qubits:
        raise StateNotUnique(f"A group of rank {group.rank} on {group.n_qubits} qubits does not fix a unique state.",
                             rank = group.rank, n_qubits = group.n_qubits)

    sign = group.member_with_sign(p)
    return 0 if sign is None else sign


def phase_expectation(group: StabilizerGroup, p: PauliString) -> Optional[int]:
    """
    Exact `<phi|p|phi>` for a possibly non-Hermitian Pauli, encoded as `k` with value `i^k`, or `None` for 0.
    """
    if group.rank != group.n_qubits:
        raise StateNotUnique(f"A group of rank {group.rank} on {group.n_qubits} qubits does not fix a unique state.",
                             rank = group.rank, n_qubits = group.n_qubits)

    return group.phase_of(p)


def apply_pauli(p: PauliString, vec: np.ndarray) -> np.ndarray:
    x, z = p.masks_as_ints()
    vec = np.asarray(vec, dtype = np.complex128)
    return apply_terms(vec, np.array([x]), np.array([z]), np.array([p.coefficient()]))


def state_from_group(group: StabilizerGroup, cap: int = None, seed: int = None) -> np.ndarray:
    """
    Dense amplitudes of the unique state stabilized by a full-rank group.

    The state is obtained by projecting a seeded random vector with `prod_g (1 + g) / 2`; the global phase is
    fixed by making the largest amplitude (lowest index on ties) real and positive.
    """
    n = group.n_qubits
    cap = resolve(cap, "state_cap")
    if n > cap:
        raise CapExceeded(f"{n} qubits exceed the state-vector cap {cap}.", n_qubits = n, cap = cap)
    if group.rank != n:
        raise StateNotUnique(f"A group of rank {group.rank} on {n} qubits does not fix a unique state.",
                             rank = group.rank, n_qubits = n)

    rng = np.random.default_rng(resolve(seed, "seed"))
    dim = 1 << n
    vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    for g in group.generators:
        vec = 0.5 * (vec + apply_pauli(g, vec))

    norm = np.linalg.norm(vec)
    if norm < Tolerances.NULL_NORM:
        raise InconsistentGroup("Projection onto the stabilized subspace vanished.", rank = group.rank)

    vec /= norm
    lead = int(np.argmax(np.abs(vec) > np.abs(vec).max() * (1 - 1e-9)))
    vec *= np.abs(vec[lead]) / vec[lead]

    for g in group.generators:
        assert np.abs(np.vdot(vec, apply_pauli(g, vec)) - 1.0) < 1e-8, f"State is not stabilized by `{g}`."

    return vec
