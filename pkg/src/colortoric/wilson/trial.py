from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from colortoric.errors import AuditFailure
from colortoric.lattice import HexTorus, LoopSpec, WILSON_RECTANGLE
from colortoric.pauli import PauliString, StabilizerGroup, phase_expectation, stabilizer_expectation
from colortoric.spectra import phi_c_group, phi_t_group

logger = logging.getLogger(__name__)


def _check_loop(t: HexTorus, w: LoopSpec):
    assert w.kind == WILSON_RECTANGLE, f"`{w.name}` is not a Wilson rectangle."
    assert w.n_qubits == t.n_qubits, f"`{w.name}` acts on {w.n_qubits} qubits, expected {t.n_qubits}."


def edge_set(t: HexTorus, w: LoopSpec) -> Tuple[List[int], int]:
    """
    Hexagons whose `h_x` anticommutes with the Wilson loop, and their number `L`.
    """
    _check_loop(t, w)

    op = w.operator()
    for h in range(t.num_hexagons):
        if not op.commutes(t.hexagon_operator(h, "Z")):
            raise AuditFailure(f"`h_z` of hexagon {h} anticommutes with `{w.name}`.", hexagon = h, loop = w.name)

    edges = [h for h in range(t.num_hexagons) if not op.commutes(t.hexagon_operator(h, "X"))]
    return edges, len(edges)


class _GaussianInt(object):
    """
    Exact accumulator for sums of powers of `i`.
    """

    __slots__ = ("re", "im")

    def __init__(self):
        self.re = 0
        self.im = 0

    def add(self, k):
        if k is None:
            return
        if k == 0:
            self.re += 1
        elif k == 1:
            self.im += 1
        elif k == 2:
            self.re -= 1
        else:
            self.im -= 1

    def real(self) -> int:
        assert self.im == 0, "Expectation of a Hermitian combination must be real."
        return self.re


def _sum_expectations(group: StabilizerGroup, ops: Sequence[PauliString]) -> int:
    acc = _GaussianInt()
    for p in ops:
        acc.add(phase_expectation(group, p))
    return acc.real()


@dataclass
class TrialValue:
    """
    `<psi|W|psi> / <psi|psi>` for `|psi> = (1 + gamma O)|phi_t>` as a ratio of polynomials in `gamma^2`.
    """
    num_coeffs: List[int]
    den_coeffs: List[int]
    pair_counts: Dict[str, int] = field(default_factory = dict)

    def exact(self, gamma) -> Fraction:
        g2 = Fraction(gamma) ** 2
        num = sum(Fraction(c) * g2 ** i for i, c in enumerate(self.num_coeffs))
        den = sum(Fraction(c) * g2 ** i for i, c in enumerate(self.den_coeffs))
        return num / den

    def __call__(self, gamma: float) -> float:
        g2 = gamma * gamma
        num = sum(c * g2 ** i for i, c in enumerate(self.num_coeffs))
        den = sum(c * g2 ** i for i, c in enumerate(self.den_coeffs))
        return num / den

    @property
    def slope(self) -> int:
        """
        Coefficient of `gamma^2` in the small-`gamma` expansion.
        """
        return self.num_coeffs[1] * self.den_coeffs[0] - self.den_coeffs[1] * self.num_coeffs[0]

    def to_dict(self):
        return {"num_coeffs": self.num_coeffs, "den_coeffs": self.den_coeffs, "pair_counts": self.pair_counts}


def trial_state_value(t: HexTorus, w: LoopSpec, group: StabilizerGroup = None) -> TrialValue:
    """
    Expand the trial value into pair sums `<phi_t|a W b|phi_t>` over the CC terms `a`, `b`, each evaluated exactly
    on the stabilizer state, and check it against `(1 + (2P - 2L) gamma^2) / (1 + 2P gamma^2)`.
    """
    _check_loop(t, w)
    if group is None:
        group = phi_t_group(t)

    op = w.operator()
    terms = [t.hexagon_operator(h, kind) for kind in ("X", "Z") for h in range(t.num_hexagons)]
    edges, length = edge_set(t, w)
    crossing = [t.hexagon_operator(h, "X") for h in edges]

    num0 = _sum_expectations(group, [op])
    num1 = _sum_expectations(group, [a * op for a in terms] + [op * a for a in terms])
    num2 = _sum_expectations(group, [a * op * b for a in terms for b in terms])
    den1 = 2 * _sum_expectations(group, terms)
    den2 = _sum_expectations(group, [a * b for a in terms for b in terms])

    if num1 != 0 or den1 != 0:
        raise AuditFailure(f"Odd orders survive for `{w.name}`: {num1}, {den1}.", num1 = num1, den1 = den1)

    counts = {
        "O2": den2,
        "O_W_O": num2,
        "edge_O2": _sum_expectations(group, [a * b for a in crossing for b in crossing]),
        "num_terms": len(terms),
        "L": length
    }

    value = TrialValue([num0, num2], [1, den2], counts)
    closed = TrialValue([1, len(terms) - 2 * length], [1, len(terms)])
    if value.num_coeffs != closed.num_coeffs or value.den_coeffs != closed.den_coeffs:
        raise AuditFailure(f"Pair sums {value.num_coeffs}/{value.den_coeffs} differ from the closed form "
                           f"{closed.num_coeffs}/{closed.den_coeffs} for `{w.name}`.", loop = w.name)

    logger.debug(f"Trial value of `{w.name}`: L = {length}, slope {value.slope}.")
    return value


def perturbative_coefficient(t: HexTorus, w: LoopSpec, g_t: float = 1.0) -> float:
    """
    `c` in `<W> = 1 - c gamma^2` from first-order perturbation theory around the TC ground state: every crossing
    `h_x` enters with amplitude `gamma / dE`, where `dE = 2 g_t` times the number of TC terms it flips.
    """
    edges, _ = edge_set(t, w)
    tc_terms = [t.trapezoid_operator(i) for i in range(len(t.trapezoids))]

    c = 0.0
    for h in edges:
        op = t.hexagon_operator(h, "X")
        flipped = sum(1 for s in tc_terms if not op.commutes(s))
        assert flipped > 0, f"`h_x` of hexagon {h} commutes with every TC term."
        c += 2.0 / (2.0 * g_t * flipped) ** 2

    return c


def cc_state_value(t: HexTorus, w: LoopSpec) -> int:
    """
    `<phi_c|W|phi_c>`: zero, since every Wilson rectangle anticommutes with some X-type CC term.
    """
    return stabilizer_expectation(phi_c_group(t), w.operator())
