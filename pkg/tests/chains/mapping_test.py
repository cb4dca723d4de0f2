import colortoric
import numpy as np
import pytest

from colortoric.lattice import make_torus, LIGHT, DARK
from colortoric.chains import derive_map, derive_ensemble, naive_ensemble, map_verify, ensemble_gap
from colortoric.chains import measured_set, cc_bond_graph, derive_rings, fourfold_clusters, assemble_k_lowest


def test_measured_set_and_bonds():
    t = make_torus(3, 3)
    measured = measured_set(t)
    assert len(measured) == 20
    assert sum(1 for label, _ in measured if label.startswith("B:")) == 9
    assert sum(1 for label, _ in measured if label.startswith("A:")) == 9

    g = cc_bond_graph(t)
    assert g.number_of_nodes() == 18
    assert g.number_of_edges() == 18

    rings = derive_rings(t, g)
    assert [r.shade for r in rings] == [LIGHT] * 3 + [DARK] * 3
    assert [r.row for r in rings] == [0, 1, 2, 0, 1, 2]
    for ring in rings:
        assert len(ring) == 3
        ref = (t.light_rings if ring.shade == LIGHT else t.dark_rings)[ring.row]
        assert set(ring.sites) == set(ref.sites)
        assert set(ring.bonds) == set(ref.bonds)


def test_derivation():
    t = make_torus(3, 3)
    derivation = derive_map(t)

    analysis = derivation.analysis
    assert analysis.measured_rank == 18
    assert analysis.audit["shared_rank"] == 4
    assert len(analysis.rules) == 6
    assert len(derivation.orbits) == 16
    assert len(set(o.flips for o in derivation.orbits)) == 16

    e = derivation.ensemble
    assert e.num_chains == 6
    assert e.lengths == [3] * 6
    e.audit(t.n_qubits)
    assert e.dimension() == 1 << 18

    d = derivation.to_dict()
    assert len(d["orbits"]) == 16


def test_limits():
    t = make_torus(3, 3)
    e = derive_ensemble(t)

    e0, mult, gap = ensemble_gap(e.at(1.0, 0.0))
    assert abs(e0 + 18.0) < 1e-10
    assert mult == 4

    e0, mult, gap = ensemble_gap(e.at(0.0, 1.0))
    assert abs(e0 + 18.0) < 1e-10
    assert mult == 16


def test_naive_ensemble():
    t = make_torus(3, 3)
    e = naive_ensemble(t)
    assert len(e.sectors) == 16
    assert all(m == 4 for m in e.sectors.values())
    assert e.twist_counts() == {0: 64}
    assert derive_ensemble(t, naive = True).sectors == e.sectors

    e0, mult, _ = ensemble_gap(e.at(1.0, 0.0))
    assert abs(e0 + 18.0) < 1e-10
    assert mult == 4

    # Untwisted rings miss the frustration of the color-code limit
    e0, mult, _ = ensemble_gap(e.at(0.0, 1.0))
    assert abs(e0 + 18.0) < 1e-10
    assert mult == 64


def test_fourfold_clusters():
    assert fourfold_clusters([-18.0] * 16 + [-16.0] * 4, cluster_tol = 1e-8)
    assert fourfold_clusters([-2.0] * 4 + [-1.0] * 8 + [0.0] * 3, cluster_tol = 1e-8)
    # A 16-fold ground cluster followed by a 2-fold one
    assert not fourfold_clusters([-18.0] * 16 + [-17.0] * 2 + [-16.0], cluster_tol = 1e-8)
    assert not fourfold_clusters([-3.0] * 2 + [-1.0] * 4, cluster_tol = 1e-8)

    t = make_torus(3, 3)
    e = derive_ensemble(t)
    for g_t, g_c in ((1.0, 0.0), (0.0, 1.0)):
        levels = assemble_k_lowest(e.at(g_t, g_c), 40)
        assert fourfold_clusters(levels, cluster_tol = 1e-8)


@pytest.mark.slow
def test_map_against_ed():
    t = make_torus(3, 3)
    derivation = derive_map(t)
    for g_t, g_c in ((1.0, 0.25), (1.0, 1.0), (0.25, 1.0), (0.0, 1.0)):
        report = map_verify(t, g_t, g_c, k = 20, derivation = derivation)
        assert report.max_abs_diff <= 1e-8
        assert report.multiplicity_ok
        assert report.fourfold_ok
        assert report.passed


if __name__ == "__main__":
    test_measured_set_and_bonds()
    test_derivation()
    test_limits()
    test_naive_ensemble()
    test_fourfold_clusters()
    test_map_against_ed()
