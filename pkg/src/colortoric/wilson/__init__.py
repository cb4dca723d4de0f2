from .trial import TrialValue, edge_set, trial_state_value, perturbative_coefficient, cc_state_value
from .curve import WilsonReport, ed_wilson_curve, wilson_scan, fit_quadratic, length_dependence, default_gammas
