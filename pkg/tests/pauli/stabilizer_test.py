import colortoric
import numpy as np

from colortoric.errors import InconsistentGroup, NonCommuting, StateNotUnique
from colortoric.lattice import make_torus, cc_stabilizers, tc_stabilizers
from colortoric.pauli import PauliString, StabilizerGroup, canonicalize, stabilizer_expectation, phase_expectation
from colortoric.pauli import state_from_group
from colortoric.utils import BitVector

import pytest


def _random_hermitian(rng, n):
    x = rng.integers(0, 2, size = n)
    z = rng.integers(0, 2, size = n)
    phase = int(np.sum(x & z)) + 2 * int(rng.integers(0, 2))
    return PauliString(n, BitVector.from_array(x), BitVector.from_array(z), phase)


def _random_full_group(rng, n):
    gens = []
    group = StabilizerGroup(n)
    while group.rank < n:
        p = _random_hermitian(rng, n)
        if p.is_identity() or not all(p.commutes(g) for g in gens):
            continue
        if group.phase_of(p) is not None:
            continue
        gens.append(p)
        group = StabilizerGroup(n, gens)

    return group


def test_canonicalize_rank_matches_enumeration():
    rng = np.random.default_rng(17)
    for trial in range(20):
        n = int(rng.integers(2, 6))
        gens = list(_random_full_group(rng, n).generators)

        # Random products of a random subset of the generators; dependencies are allowed
        chosen = [g for g in gens if rng.integers(0, 2) == 1] or gens[:1]
        elements = []
        for _ in range(int(rng.integers(1, n + 3))):
            mask = rng.integers(0, 2, size = len(chosen))
            if not mask.any():
                mask[0] = 1
            p = PauliString.identity(n)
            for g, bit in zip(chosen, mask):
                if bit:
                    p = p * g
            elements.append(p)

        seen = set()
        for bits in np.ndindex(*([2] * len(elements))):
            p = PauliString.identity(n)
            for e, bit in zip(elements, bits):
                if bit:
                    p = p * e
            seen.add((p.x_mask.to_int(), p.z_mask.to_int()))

        rows, rank = canonicalize(elements)
        assert 1 << rank == len(seen)
        assert len(rows) == rank
        group = StabilizerGroup.from_generators(elements)
        assert all(group.member_with_sign(e) == 1 for e in elements)


def test_group_errors():
    z0 = PauliString.from_literal("ZI")
    x0 = PauliString.from_literal("XI")

    with pytest.raises(NonCommuting):
        StabilizerGroup(2, [z0, x0])

    with pytest.raises(InconsistentGroup):
        StabilizerGroup(2, [z0, z0.negate()], reduce = True)

    with pytest.raises(InconsistentGroup):
        StabilizerGroup(2, [z0, PauliString.from_literal("ZZ"), PauliString.from_literal("IZ")])

    group = StabilizerGroup(2, [z0, PauliString.from_literal("ZZ"), PauliString.from_literal("IZ")], reduce = True)
    assert group.rank == 2
    assert len(group.generators) == 2


def test_membership_signs():
    group = StabilizerGroup.from_generators([PauliString.from_literal("XX"), PauliString.from_literal("ZZ")])

    assert group.member_with_sign(PauliString.from_literal("-YY")) == 1
    assert group.member_with_sign(PauliString.from_literal("YY")) == -1
    assert group.member_with_sign(PauliString.from_literal("XI")) is None
    assert PauliString.from_literal("XX") in group
    assert PauliString.from_literal("-ZZ") not in group

    # XZ = -iY on each qubit
    assert phase_expectation(group, PauliString.from_literal("XX") * PauliString.from_literal("ZI")) is None
    assert phase_expectation(group, PauliString.from_literal("iXX")) == 1

    rows, rank = canonicalize(group)
    assert rank == 2
    assert [r.leading_column() for r in rows] == [0, 2]


def test_expectations_against_dense_states():
    rng = np.random.default_rng(2024)
    num_cases = 0
    for trial in range(25):
        n = int(rng.integers(2, 7))
        group = _random_full_group(rng, n)
        vec = state_from_group(group)

        for _ in range(40):
            p = _random_hermitian(rng, n)
            dense = np.vdot(vec, p.to_matrix() @ vec)
            assert abs(dense - stabilizer_expectation(group, p)) < 1e-10
            num_cases += 1

    assert num_cases >= 1000


def test_state_not_unique():
    group = StabilizerGroup(3, [PauliString.from_literal("ZZI")])
    with pytest.raises(StateNotUnique):
        stabilizer_expectation(group, PauliString.from_literal("ZII"))
    with pytest.raises(StateNotUnique):
        state_from_group(group)


def test_torus_ranks():
    t = make_torus(3, 3)

    cc = StabilizerGroup.from_generators(cc_stabilizers(t))
    tc = StabilizerGroup.from_generators(tc_stabilizers(t))

    assert cc.rank == 14
    assert tc.rank == 16
    assert 1 << (t.n_qubits - cc.rank) == 16
    assert 1 << (t.n_qubits - tc.rank) == 4


if __name__ == "__main__":
    test_canonicalize_rank_matches_enumeration()
    test_group_errors()
    test_membership_signs()
    test_expectations_against_dense_states()
    test_state_not_unique()
    test_torus_ranks()
