import colortoric
import functools
import numpy as np

from colortoric.utils import BitVector, Tolerances, set_tolerances, parallel_map
from colortoric.utils import row_reduce_gf2, rank_gf2, nullspace_gf2, solve_gf2, in_span_gf2
from colortoric.utils.tolerances import resolve

import pytest


def test_bitvector():
    a = BitVector.from_indices(70, [0, 3, 64, 69])
    b = BitVector.from_indices(70, [3, 5, 69])

    assert a.to_list() == [0, 3, 64, 69]
    assert len(a) == 4 and a.parity() == 0
    assert (a ^ b).to_list() == [0, 5, 64]
    assert (a & b).to_list() == [3, 69]
    assert (a | b).to_list() == [0, 3, 5, 64, 69]
    assert a.hasitem(64) and not a.hasitem(65) and not a.hasitem(100)

    assert BitVector.from_int(70, a.to_int()) == a
    assert BitVector.from_array(a.to_array()) == a
    assert hash(BitVector.from_indices(70, [69, 64, 3, 0])) == hash(a)
    assert BitVector(70).is_zero()


def test_gf2_rank_and_nullspace():
    mat = np.array([
        [1, 1, 0, 0],
        [0, 1, 1, 0],
        [1, 0, 1, 0],
        [0, 0, 0, 1]
    ], dtype = np.uint8)

    rref, pivots = row_reduce_gf2(mat)
    assert pivots == [0, 1, 3]
    assert rank_gf2(mat) == 3

    null = nullspace_gf2(mat)
    assert null.shape == (1, 4)
    assert np.all((mat @ null.T) % 2 == 0)
    assert null[0].tolist() == [1, 1, 1, 0]


def test_gf2_solve():
    rng = np.random.default_rng(7)
    for _ in range(50):
        mat = rng.integers(0, 2, size = (6, 9)).astype(np.uint8)
        x = rng.integers(0, 2, size = 9).astype(np.uint8)
        rhs = (mat @ x) % 2

        sol = solve_gf2(mat, rhs)
        assert sol is not None
        assert np.all((mat @ sol) % 2 == rhs)

    # x0 + x1 = 0, x0 + x1 = 1
    assert solve_gf2(np.array([[1, 1], [1, 1]]), np.array([0, 1])) is None

    assert in_span_gf2(np.array([[1, 1, 0], [0, 1, 1]]), np.array([1, 0, 1]))
    assert not in_span_gf2(np.array([[1, 1, 0], [0, 1, 1]]), np.array([1, 0, 0]))


def test_set_tolerances():
    default = Tolerances.CLUSTER_TOL

    with set_tolerances(cluster_tol = 1e-3, seed = 5):
        assert Tolerances.CLUSTER_TOL == 1e-3
        assert Tolerances.SEED == 5

    assert Tolerances.CLUSTER_TOL == default
    assert Tolerances.SEED == 0

    @colortoric.set_tolerances(energy_tol = 0.5)
    def read():
        return Tolerances.ENERGY_TOL

    assert read() == 0.5
    assert Tolerances.ENERGY_TOL == 1e-8

    with pytest.raises(AssertionError):
        set_tolerances(unknown = 1.0)


def test_parallel_map():
    items = [-3, 1, -4, 1, -5, 9]
    assert parallel_map(abs, items) == [3, 1, 4, 1, 5, 9]
    assert parallel_map(abs, items, workers = 2) == [3, 1, 4, 1, 5, 9]


def test_parallel_map_carries_tolerances():
    read = functools.partial(resolve, None)
    names = ["residual_tol", "seed", "cluster_tol"]

    with set_tolerances(residual_tol = 1e-3, seed = 7):
        serial = parallel_map(read, names, workers = 1)
        pooled = parallel_map(read, names, workers = 2)

    assert serial == [1e-3, 7, Tolerances.CLUSTER_TOL]
    assert pooled == serial


if __name__ == "__main__":
    test_bitvector()
    test_gf2_rank_and_nullspace()
    test_gf2_solve()
    test_set_tolerances()
    test_parallel_map()
    test_parallel_map_carries_tolerances()
