import colortoric
import numpy as np
import pytest

from fractions import Fraction

from colortoric.errors import AuditFailure
from colortoric.lattice import make_torus, wilson_rectangle, wilson_rectangles
from colortoric.wilson import TrialValue, edge_set, trial_state_value, perturbative_coefficient, cc_state_value
from colortoric.wilson import ed_wilson_curve, wilson_scan, fit_quadratic, length_dependence, default_gammas, WilsonReport


def test_trial_values():
    t = make_torus(3, 3)
    for w in wilson_rectangles(t):
        edges, length = edge_set(t, w)
        assert length == len(edges) > 0

        trial = trial_state_value(t, w)
        assert trial.den_coeffs == [1, 18]
        assert trial.num_coeffs == [1, 18 - 2 * length]
        assert trial.slope == -2 * length
        assert trial.pair_counts["O2"] == 18
        assert trial.exact(Fraction(1, 10)) == Fraction(100 + 18 - 2 * length, 118)
        assert abs(trial(0.1) - float(trial.exact(Fraction(1, 10)))) < 1e-14

        assert perturbative_coefficient(t, w) == pytest.approx(length / 8.0)
        assert cc_state_value(t, w) == 0


def test_fit_quadratic():
    gammas = default_gammas()
    assert len(gammas) == 10
    values = 1.0 - 0.3 * gammas ** 2
    assert fit_quadratic(gammas, values) == pytest.approx(0.3)


def test_length_dependence():
    trial = TrialValue([1, 10], [1, 18])
    a = WilsonReport("a", 1, 1, 1, 4, 4, trial, fit = 0.5)
    b = WilsonReport("b", 1, 2, 2, 6, 4, trial, fit = 0.55)
    c = WilsonReport("c", 2, 2, 4, 8, 8, trial, fit = 1.0)
    out = length_dependence([a, b, c])
    assert out["mean_fit_per_length"] == pytest.approx((0.125 + 0.1375 + 0.125) / 3)
    assert out["max_same_length_mismatch"] == pytest.approx(0.1)

    assert a.fit_per_length == pytest.approx(0.125)
    assert WilsonReport("d", 1, 1, 1, 4, 0, trial).fit_per_length is None


@pytest.mark.slow
def test_ed_curve():
    t = make_torus(3, 3)
    w = wilson_rectangle(t, 1, 1)
    report = ed_wilson_curve(t, w)

    assert len(report.ed_values) == 10
    assert all(v <= 1.0 + 1e-10 for v in report.ed_values)
    assert report.fit_per_length == pytest.approx(0.125, rel = 0.05)
    assert report.fit == pytest.approx(report.perturbative, rel = 0.05)
    assert report.to_dict()["L"] == report.length


@pytest.mark.slow
def test_length_dependence_over_all_loops():
    t = make_torus(3, 3)
    reports = wilson_scan(t)
    assert len(reports) == len(wilson_rectangles(t))

    out = length_dependence(reports)
    assert out["max_rel_spread"] <= 0.01
    assert out["max_same_length_mismatch"] <= 0.01
    assert out["mean_fit_per_length"] == pytest.approx(0.125, rel = 0.01)
    for r in reports:
        assert r.fit == pytest.approx(r.perturbative, rel = 0.01)


if __name__ == "__main__":
    test_trial_values()
    test_fit_quadratic()
    test_length_dependence()
    test_ed_curve()
    test_length_dependence_over_all_loops()
