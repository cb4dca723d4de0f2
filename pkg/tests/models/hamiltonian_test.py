import colortoric
import pytest

from colortoric.errors import SizeMismatch
from colortoric.lattice import make_torus, LIGHT, DARK
from colortoric.models import HamiltonianSpec, cc_hamiltonian, tc_hamiltonian, interpolate
from colortoric.models import syndrome, anyon_pairs, homology_check, HomologyReport
from colortoric.models import row_operator, row_operator_in_logical_class
from colortoric.pauli import PauliString


def test_interpolation_terms():
    t = make_torus(3, 3)

    h = interpolate(t, 0.7, 0.3)
    assert h.num_terms == 36
    assert sum(1 for l in h.labels if l.startswith("tc:B:")) == 9
    assert sum(1 for l in h.labels if l.startswith("tc:A:")) == 9
    assert sum(1 for l in h.labels if l.startswith("cc:hx:")) == 9
    assert sum(1 for l in h.labels if l.startswith("cc:hz:")) == 9
    assert abs(h.frustration_free_bound() - (-18 * 0.7 - 18 * 0.3)) < 1e-12
    assert h.is_real()

    # All terms are kept at a zero coupling
    assert interpolate(t, 1.0, 0.0).num_terms == 36

    with pytest.raises(ValueError):
        interpolate(t, -0.1, 1.0)
    with pytest.raises(ValueError):
        interpolate(t, 0.0, 0.0)


def test_ground_degeneracy():
    t = make_torus(3, 3)
    assert cc_hamiltonian(t).ground_degeneracy() == 16
    assert tc_hamiltonian(t).ground_degeneracy() == 4
    assert interpolate(t, 1.0, 0.0).ground_degeneracy() == 4
    assert interpolate(t, 0.0, 2.5).ground_degeneracy() == 16


def test_spec_behaviour():
    h = HamiltonianSpec(2, [(1.0, PauliString.from_literal("ZZ")), (0.5, PauliString.from_literal("-ZZ")),
                            (2.0, PauliString.from_literal("XI"))], ["a", "b", "c"])
    # `-ZZ` folds into the coefficient of `ZZ`
    assert h.num_terms == 2
    assert h.terms[0][0] == 0.5
    assert h.labels == ["a", "c"]

    with pytest.raises(SizeMismatch):
        HamiltonianSpec(3, [(1.0, PauliString.from_literal("ZZ"))])

    restored = HamiltonianSpec.loads(h.dumps())
    assert restored.terms == h.terms


def test_anyons():
    t = make_torus(3, 3)
    pairs = anyon_pairs(t, 0)
    assert len(pairs["tc_x"]) == 2
    assert len(pairs["tc_z"]) == 2
    assert len(pairs["cc_x"]) == 3
    assert len(pairs["cc_z"]) == 3
    assert all(l.startswith("tc:B:") for l in pairs["tc_x"].labels)
    assert all(l.startswith("cc:hz:") for l in pairs["cc_x"].labels)

    h = tc_hamiltonian(t)
    assert len(syndrome(h, t.trapezoid_operator(0))) == 0


def test_homology():
    t = make_torus(3, 3)
    report = homology_check(t)
    assert report.passed
    assert report.zz_in_tc == 1
    assert report.zz_in_cc is None
    assert report.to_dict()["passed"]


def test_row_operators():
    t = make_torus(3, 3)
    report = homology_check(t)
    assert len(report.row_products) == 6
    assert all(report.row_products.values())

    for row in range(t.n_rows):
        light, dark = row_operator(t, row, LIGHT), row_operator(t, row, DARK)
        assert light.x_mask.is_zero() and dark.z_mask.is_zero()
        assert (light * light).is_identity()
        assert row_operator_in_logical_class(t, row, LIGHT)
        assert row_operator_in_logical_class(t, row, DARK)

    with pytest.raises(ValueError):
        row_operator(t, 0, "grey")
    with pytest.raises(IndexError):
        row_operator(t, t.n_rows, LIGHT)


def test_failed_row_product_fails_report():
    report = HomologyReport(zz_in_tc = 1, zz_in_cc = None, xx_in_tc = 1, rgb_in_cc = {0: 1, 1: 1},
                            row_products = {"light:0": True, "dark:0": True})
    assert report.passed

    report.row_products["dark:0"] = False
    assert not report.passed
    assert not report.to_dict()["passed"]


if __name__ == "__main__":
    test_interpolation_terms()
    test_ground_degeneracy()
    test_spec_behaviour()
    test_anyons()
    test_homology()
    test_row_operators()
    test_failed_row_product_fails_report()
