from __future__ import annotations

import logging
import numpy as np
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from colortoric.lattice import HexTorus, LIGHT, DARK, cc_loop_name, tc_loop_name, cc_stabilizers, tc_stabilizers
from colortoric.models import HamiltonianSpec, interpolate, row_operator, loop_operator
from colortoric.pauli import PauliString, StabilizerGroup, stabilizer_expectation
from .state import StateVector, expectation, build_projected_state
from .solver import lowest_eigs

logger = logging.getLogger(__name__)


def phi_c_group(t: HexTorus) -> StabilizerGroup:
    """
    The CC terms together with the X-type red and blue loops of both directions: a full-rank group whose state
    is `prod_h (1 + h_z) |+...+>`.
    """
    logicals = [loop_operator(t, cc_loop_name("X", d, c)) for d in (0, 1) for c in (0, 2)]
    return StabilizerGroup.from_generators(cc_stabilizers(t) + logicals, reduce = True)


def phi_t_group(t: HexTorus) -> StabilizerGroup:
    """
    The TC terms together with both Z-type TC loops.
    """
    logicals = [loop_operator(t, tc_loop_name("Z", d)) for d in (0, 1)]
    return StabilizerGroup.from_generators(tc_stabilizers(t) + logicals, reduce = True)


def orthonormality_error(states: List[StateVector]) -> float:
    mat = np.array([[np.vdot(a.amplitudes, b.amplitudes) for b in states] for a in states])
    return float(np.max(np.abs(mat - np.eye(len(states)))))


@dataclass
class GroundStateSet:
    """
    Named states plus the checks performed on them.
    """
    states: Dict[Tuple[int, ...], StateVector]
    table: Dict[Tuple[int, ...], Tuple[float, ...]] = field(default_factory = dict)
    energies: Dict[Tuple[int, ...], float] = field(default_factory = dict)
    orthonormality_error: float = 0.0

    def to_dict(self):
        return {
            "labels": [list(k) for k in self.states],
            "table": {",".join(map(str, k)): list(v) for k, v in self.table.items()},
            "energies": {",".join(map(str, k)): v for k, v in self.energies.items()},
            "orthonormality_error": self.orthonormality_error
        }


def tc_ground_states(t: HexTorus) -> GroundStateSet:
    """
    `psi_ij = (L_Z^0)^i (L_Z^1)^j psi_00`, where `psi_00` is fixed by the TC terms and `+L_x^0`, `+L_x^1`.
    The table holds `(<L_x^0>, <L_x^1>) = ((-1)^j, (-1)^i)`.
    """
    lx = [loop_operator(t, tc_loop_name("X", d)) for d in (0, 1)]
    lz = [loop_operator(t, tc_loop_name("Z", d)) for d in (0, 1)]
    group = StabilizerGroup.from_generators(tc_stabilizers(t) + lx, reduce = True)
    base = StateVector.from_group(group)

    h = interpolate(t, 1.0, 0.0)
    out = GroundStateSet({})
    for i in (0, 1):
        for j in (0, 1):
            v = base
            if i == 1:
                v = v.apply(lz[0])
            if j == 1:
                v = v.apply(lz[1])
            out.states[(i, j)] = v
            out.table[(i, j)] = (expectation(v, lx[0]), expectation(v, lx[1]))
            out.energies[(i, j)] = expectation(v, h)

    out.orthonormality_error = orthonormality_error(list(out.states.values()))
    return out


def cc_ground_states(t: HexTorus) -> GroundStateSet:
    """
    The sixteen states `(L_z^{0,r})^i (L_z^{1,r})^j (L_z^{0,b})^k (L_z^{1,b})^l |phi_c>`.
    """
    phi_c = StateVector.from_group(phi_c_group(t))
    lz = [loop_operator(t, cc_loop_name("Z", d, c)) for d, c in ((0, 0), (1, 0), (0, 2), (1, 2))]

    h = interpolate(t, 0.0, 1.0)
    out = GroundStateSet({})
    for bits in np.ndindex(2, 2, 2, 2):
        v = phi_c
        for b, op in zip(bits, lz):
            if b == 1:
                v = v.apply(op)
        out.states[tuple(int(b) for b in bits)] = v
        out.energies[tuple(int(b) for b in bits)] = expectation(v, h)

    out.orthonormality_error = orthonormality_error(list(out.states.values()))
    return out


def psi_zero(t: HexTorus) -> StateVector:
    """
    `(1 + L_Z^0)(1 + L_x^0) |phi_c>`, normalized: all virtual spins up in the TC block `i = j = 0`.
    """
    phi_c = StateVector.from_group(phi_c_group(t))
    proj = [(0, loop_operator(t, tc_loop_name("Z", 0))), (0, loop_operator(t, tc_loop_name("X", 0)))]
    return build_projected_state(phi_c, proj).state


@dataclass
class SplittingReport:
    states: Dict[str, StateVector]
    energies: Dict[str, float]
    orthonormality_error: float
    dark_row_overlap: float
    block_labels: Dict[str, Tuple[float, float]]

    def to_dict(self):
        return {
            "labels": list(self.states),
            "energies": self.energies,
            "orthonormality_error": self.orthonormality_error,
            "dark_row_overlap": self.dark_row_overlap,
            "block_labels": {k: list(v) for k, v in self.block_labels.items()}
        }


def ground_state_splitting(t: HexTorus) -> SplittingReport:
    """
    The four CC ground states inside the TC block `(L_Z^0, L_x^0) = (+1, +1)`: `psi_0`, its image under a light
    row product (equivalent to the red and blue Z loops along the rows), under the red Z loop across the
    rows, and under both.

    A dark row product is a product of X loops, all of which fix `|phi_c>` and commute with `L_Z^0`, so it maps
    `psi_0` to itself; its overlap is reported.
    """
    psi0 = psi_zero(t)
    light_row = row_operator(t, t.n_rows - 2, LIGHT)
    dark_row = row_operator(t, 1, DARK)
    cross = loop_operator(t, cc_loop_name("Z", 1, 0))

    states = {
        "psi0": psi0,
        "light_row": psi0.apply(light_row),
        "cross_loop": psi0.apply(cross),
        "light_row_cross_loop": psi0.apply(light_row).apply(cross),
    }

    h = interpolate(t, 0.0, 1.0)
    lz0, lx0 = loop_operator(t, tc_loop_name("Z", 0)), loop_operator(t, tc_loop_name("X", 0))
    report = SplittingReport(
        states = states,
        energies = {k: expectation(v, h) for k, v in states.items()},
        orthonormality_error = orthonormality_error(list(states.values())),
        dark_row_overlap = abs(psi0.overlap(psi0.apply(dark_row))),
        block_labels = {k: (expectation(v, lz0), expectation(v, lx0)) for k, v in states.items()}
    )

    logger.info(f"Ground-state splitting on {t}: orthonormality error {report.orthonormality_error:.2e}, "
                f"dark-row overlap {report.dark_row_overlap:.6f}.")
    return report


def ground_space_overlap(v: StateVector, basis: np.ndarray) -> float:
    """
    Squared norm of the projection of `v` onto the span of orthonormal columns `basis`.
    """
    coeffs = basis.conj().T @ v.amplitudes
    return float(np.sum(np.abs(coeffs) ** 2))


@dataclass
class DualityReport:
    couplings: Tuple[float, float]
    levels: List[float]
    dual_levels: List[float]
    max_abs_diff: float


def duality_check(t: HexTorus, g_t: float, g_c: float, k: int = 8) -> DualityReport:
    """
    Compare the lowest levels at `(g_t, g_c)` and `(g_c, g_t)`. The result is an observation, not a requirement.
    """
    a = lowest_eigs(interpolate(t, g_t, g_c), k, return_vectors = False)
    b = lowest_eigs(interpolate(t, g_c, g_t), k, return_vectors = False)
    m = min(len(a.eigenvalues), len(b.eigenvalues))
    diff = float(np.max(np.abs(np.array(a.eigenvalues[:m]) - np.array(b.eigenvalues[:m]))))

    logger.info(f"Duality ({g_t}, {g_c}) vs ({g_c}, {g_t}): max level difference {diff:.3e}.")
    return DualityReport((g_t, g_c), a.eigenvalues[:m], b.eigenvalues[:m], diff)
