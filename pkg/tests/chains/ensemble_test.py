import colortoric
import itertools
import numpy as np
import pytest

from colortoric.errors import AuditFailure
from colortoric.chains import ChainEnsemble, ChainSpec, chain_dense_spectrum, k_lowest_sums, assemble_k_lowest
from colortoric.chains import ensemble_gap, predicted_gap, single_chain_ensemble, ratio_grid, EVEN, ODD


def test_k_lowest_sums():
    rng = np.random.default_rng(7)
    lists = [np.sort(rng.uniform(-1, 1, size = s)) for s in (3, 5, 4)]
    brute = sorted(sum(v) for v in itertools.product(*lists))

    for k in (1, 7, 60):
        assert np.allclose(k_lowest_sums(lists, k), brute[:k])

    assert k_lowest_sums([[0.0, 1.0], []], 3) == []


def _brute_levels(e: ChainEnsemble):
    out = []
    for (twists, parities), mult in e.sectors.items():
        per_chain = [chain_dense_spectrum(c, EVEN if p == 0 else ODD) for c, p in zip(e.chains(twists), parities)]
        for combo in itertools.product(*per_chain):
            out.extend([sum(combo)] * mult)
    return np.sort(np.array(out))


def test_assemble_against_brute_force():
    sectors = {
        ((1, 1), (0, 0)): 2,
        ((1, -1), (1, 1)): 1,
        ((-1, -1), (0, 1)): 3,
    }
    e = ChainEnsemble([3, 4], sectors, g_t = 0.8, g_c = 1.0)
    assert e.dimension() == 6 * 4 * 8

    brute = _brute_levels(e)
    for k in (1, 10, 50):
        assert np.allclose(assemble_k_lowest(e, k), brute[:k], atol = 1e-10)
        assert np.allclose(assemble_k_lowest(e, k, method = "dense"), brute[:k], atol = 1e-10)

    e0, mult, gap = ensemble_gap(e)
    above = brute[brute > brute[0] + 1e-8]
    assert abs(e0 - brute[0]) < 1e-10
    assert mult == int(np.sum(brute < brute[0] + 1e-8))
    assert abs(gap - (above[0] - brute[0])) < 1e-10

    with pytest.raises(ValueError):
        assemble_k_lowest(e, e.dimension() + 1)


def test_dimension_audit():
    e = ChainEnsemble([2, 2], {((1, 1), (0, 0)): 2})
    assert e.dimension() == 8
    e.audit(3)
    with pytest.raises(AuditFailure):
        e.audit(4)

    assert e.twist_counts() == {0: 2}
    assert e.to_dict()["sectors"][0]["multiplicity"] == 2


def test_single_chain_gap_curve():
    ratios = ratio_grid(0.5, 1.5, 0.01)
    assert len(ratios) == 101
    assert ratios[0] == 0.5 and ratios[-1] == 1.5

    for n in (64, 128):
        curve = predicted_gap(single_chain_ensemble(n), ratios)
        assert len(curve.gaps) == 101
        assert abs(curve.argmin - 1.0) <= 0.01 + 1e-12
        assert all(g > 0 for g in curve.gaps)


if __name__ == "__main__":
    test_k_lowest_sums()
    test_assemble_against_brute_force()
    test_dimension_audit()
    test_single_chain_gap_curve()
