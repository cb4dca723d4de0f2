from __future__ import annotations

import logging
import numpy as np
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from colortoric.lattice import HexTorus, LoopSpec, wilson_rectangles
from colortoric.models import interpolate
from colortoric.spectra import StateVector, expectation, lowest_eigs
from colortoric.utils.parallel import parallel_map
from .trial import TrialValue, edge_set, trial_state_value, perturbative_coefficient, cc_state_value

logger = logging.getLogger(__name__)

# Number of levels in the TC ground cluster
GROUND_CLUSTER = 4


def default_gammas() -> np.ndarray:
    return np.linspace(0.01, 0.1, 10)


def _wilson_point(args):
    t, op, gamma = args
    report = lowest_eigs(interpolate(t, 1.0, gamma), GROUND_CLUSTER)
    values = [expectation(StateVector(t.n_qubits, report.vectors[:, i]), op) for i in range(GROUND_CLUSTER)]
    return float(np.mean(values)), float(np.max(values) - np.min(values))


def fit_quadratic(gammas: Sequence[float], values: Sequence[float]) -> float:
    """
    Least-squares `c` in `1 - <W> = c gamma^2`.
    """
    g2 = np.asarray(gammas, dtype = np.float64) ** 2
    coeffs, _, _, _ = np.linalg.lstsq(g2[:, None], 1.0 - np.asarray(values, dtype = np.float64), rcond = None)
    return float(coeffs[0])


@dataclass
class WilsonReport:
    name: str
    height: int
    width: int
    area: int
    perimeter: int
    length: int
    trial: TrialValue
    gammas: List[float] = field(default_factory = list)
    ed_values: List[float] = field(default_factory = list)
    cluster_spread: List[float] = field(default_factory = list)
    fit: Optional[float] = None
    perturbative: Optional[float] = None
    cc_value: Optional[int] = None
    meta: Dict[str, Any] = field(default_factory = dict)

    @property
    def fit_per_length(self) -> Optional[float]:
        if self.fit is None or self.length == 0:
            return None
        return self.fit / self.length

    def trial_values(self) -> List[float]:
        return [self.trial(g) for g in self.gammas]

    def to_dict(self):
        return {
            "name": self.name,
            "height": self.height,
            "width": self.width,
            "area": self.area,
            "perimeter": self.perimeter,
            "L": self.length,
            "trial": self.trial.to_dict(),
            "trial_values": self.trial_values(),
            "exp_reference": [float(np.exp(-2.0 * self.length * g * g)) for g in self.gammas],
            "gammas": self.gammas,
            "ed_values": self.ed_values,
            "cluster_spread": self.cluster_spread,
            "fit": self.fit,
            "fit_per_length": self.fit_per_length,
            "perturbative": self.perturbative,
            "cc_value": self.cc_value,
            "meta": self.meta
        }


def ed_wilson_curve(t: HexTorus, w: LoopSpec, gammas: Optional[Sequence[float]] = None, workers: int = 1,
                    verbose: bool = False) -> WilsonReport:
    """
    `<W>` in the ground cluster of `H(g_t = 1, g_c = gamma)` for every `gamma` on the grid, averaged over the
    lowest four levels, with its quadratic fit, the trial value and the perturbative coefficient.
    """
    if gammas is None:
        gammas = default_gammas()
    gammas = [float(g) for g in gammas]

    _, length = edge_set(t, w)
    report = WilsonReport(
        name = w.name,
        height = w.metadata["height"],
        width = w.metadata["width"],
        area = len(w.metadata["enclosed"]),
        perimeter = len(w),
        length = length,
        trial = trial_state_value(t, w),
        gammas = gammas,
        perturbative = perturbative_coefficient(t, w),
        cc_value = cc_state_value(t, w),
        meta = {"window": [min(gammas), max(gammas)] if len(gammas) > 0 else [], "cluster": GROUND_CLUSTER}
    )

    op = w.operator()
    points = parallel_map(_wilson_point, [(t, op, g) for g in gammas], workers = workers, verbose = verbose,
                          desc = w.name)
    report.ed_values = [p[0] for p in points]
    report.cluster_spread = [p[1] for p in points]
    if len(gammas) > 0:
        report.fit = fit_quadratic(gammas, report.ed_values)

    logger.info(f"Wilson loop `{w.name}` (L = {length}): fitted c = {report.fit}, perturbative {report.perturbative:.4f}.")
    return report


def wilson_scan(t: HexTorus, gammas: Optional[Sequence[float]] = None, workers: int = 1, anchor: int = 0,
                verbose: bool = False) -> List[WilsonReport]:
    return [ed_wilson_curve(t, w, gammas, workers = workers, verbose = verbose) for w in wilson_rectangles(t, anchor)]


def length_dependence(reports: Sequence[WilsonReport]) -> Dict[str, float]:
    """
    Spread of `c / L` across loops, and the largest mismatch between loops sharing `L` but not the area.
    """
    ratios = [r.fit_per_length for r in reports if r.fit_per_length is not None]
    out = {"mean_fit_per_length": float(np.mean(ratios)) if len(ratios) > 0 else float("nan"),
           "max_rel_spread": 0.0, "max_same_length_mismatch": 0.0}
    if len(ratios) > 0:
        out["max_rel_spread"] = float((np.max(ratios) - np.min(ratios)) / np.mean(ratios))

    for a in reports:
        for b in reports:
            if a.length == b.length and a.area != b.area and a.fit is not None and b.fit is not None and b.fit != 0:
                out["max_same_length_mismatch"] = max(out["max_same_length_mismatch"], abs(a.fit / b.fit - 1.0))

    return out
