from __future__ import annotations

import logging
import numpy as np
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from colortoric.errors import AuditFailure, NonCommuting, StateNotUnique
from colortoric.utils.gf2 import nullspace_gf2, rank_gf2
from .pauli_string import PauliString, product
from .stabilizer import StabilizerGroup

logger = logging.getLogger(__name__)


@dataclass(frozen = True)
class SectorRule:
    """
    The XOR of the sign bits of `labels` (bit 0 for eigenvalue +1, bit 1 for -1) must equal `rhs`.
    """
    labels: Tuple[str, ...]
    rhs: int

    def satisfied(self, bits: Dict[str, int]) -> bool:
        acc = 0
        for label in self.labels:
            acc ^= bits[label] & 1
        return acc == self.rhs

    def to_dict(self):
        return {"labels": list(self.labels), "rhs": int(self.rhs)}

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(d["labels"]), int(d["rhs"]))


@dataclass
class SectorAnalysis:
    """
    Everything derived while computing the sector rules of a state against a measured set.

    `kernel` holds one 0/1 row over the measured set per rule; `residuals` are the symplectic residues of the
    measured operators modulo the state's group.
    """
    labels: List[str]
    rules: List[SectorRule]
    kernel: np.ndarray
    residuals: np.ndarray
    measured_rank: int
    state_rank: int
    joint_rank: int
    measured_rows: Optional[np.ndarray] = None
    audit: Dict[str, int] = field(default_factory = dict)

    @property
    def num_valid(self) -> int:
        return 1 << (len(self.labels) - len(self.rules))

    def admissible(self, bits: Dict[str, int]) -> bool:
        return all(rule.satisfied(bits) for rule in self.rules)


def _check_measured(measured: Sequence[Tuple[str, PauliString]]):
    labels = [label for label, _ in measured]
    assert len(set(labels)) == len(labels), "Labels of the measured set must be distinct."

    ops = [op for _, op in measured]
    for i in range(len(ops)):
        assert ops[i].is_hermitian(), f"Measured operator `{labels[i]}` is not Hermitian."
        for j in range(i):
            if not ops[i].commutes(ops[j]):
                raise NonCommuting(f"Measured operators `{labels[j]}` and `{labels[i]}` anticommute.", pair = (labels[j], labels[i]))


def analyze_sectors(state_group: StabilizerGroup, measured: Sequence[Tuple[str, PauliString]]) -> SectorAnalysis:
    """
    Derive the parity rules that decide which joint sign sectors of `measured` overlap the stabilizer state.

    For a subset `T` of the measured set, `<phi| prod_{m in T} M_m |phi>` is `eps_T = +-1` if the ordered product lies
    in `+-S` and 0 otherwise. Such subsets form a GF(2) space `K`, and the projector onto the sign assignment `s`
    has weight `|K| / 2^|M|` on `phi` if `s` restricted to `K` equals `eps`, and 0 otherwise.
    """
    n = state_group.n_qubits
    if state_group.rank != n:
        raise StateNotUnique(f"A group of rank {state_group.rank} on {n} qubits does not fix a unique state.",
                             rank = state_group.rank, n_qubits = n)

    _check_measured(measured)

    labels = [label for label, _ in measured]
    ops = [op for _, op in measured]

    residuals = np.zeros([len(ops), 2 * n], dtype = np.uint8)
    for i, op in enumerate(ops):
        residuals[i, :] = state_group._reduce(op).symplectic_row()

    # Left nullspace of the residue matrix: subsets whose product lies in the group up to a sign
    kernel = nullspace_gf2(residuals.T) if len(ops) > 0 else np.zeros([0, 0], dtype = np.uint8)

    rules = []
    for row in kernel:
        members = np.nonzero(row)[0].tolist()
        sign = state_group.member_with_sign(product([ops[i] for i in members]))
        if sign is None:
            raise AuditFailure(f"Kernel element {members} does not multiply into the group.", members = members)

        rules.append(SectorRule(tuple(labels[i] for i in members), 0 if sign == 1 else 1))

    # Measured operators need not commute with the group, so the joint span is a plain GF(2) rank
    measured_rows = np.stack([op.symplectic_row() for op in ops]) if len(ops) > 0 else np.zeros([0, 2 * n], dtype = np.uint8)
    measured_rank = rank_gf2(measured_rows)
    joint_rank = rank_gf2(np.vstack([state_group.echelon_matrix()[:, :-1], measured_rows]))

    analysis = SectorAnalysis(
        labels = labels,
        rules = rules,
        kernel = kernel,
        residuals = residuals,
        measured_rank = measured_rank,
        state_rank = state_group.rank,
        joint_rank = joint_rank,
        measured_rows = measured_rows
    )
    analysis.audit = dimension_audit(analysis, n)

    logger.info(f"Derived {len(rules)} sector rules over {len(labels)} measured operators.")
    return analysis


def dimension_audit(analysis: SectorAnalysis, n_qubits: int) -> Dict[str, int]:
    """
    Check that the admitted sectors of every overlap class rebuild the full Hilbert space.

    The rules are recounted from their kernel rows, and the shared generators from the products the rules
    multiply into, independently of the rank bookkeeping in `analyze_sectors`. With `r` independent rules,
    `m` the measured rank and `k` the rank of the rule products, the admitted dimension is
    `2^{|M| - r} * 2^{n - m} * 2^{k}`; it must equal `2^n`.
    """
    num_measured = len(analysis.labels)
    t = len(analysis.rules)
    m = analysis.measured_rank

    kernel = np.asarray(analysis.kernel, dtype = np.uint8).reshape(t, num_measured) if t > 0 \
        else np.zeros([0, num_measured], dtype = np.uint8)
    rule_rank = rank_gf2(kernel)
    if rule_rank != t:
        raise AuditFailure(f"The {t} sector rules span only rank {rule_rank}.", rules = t, rank = rule_rank)

    if analysis.measured_rows is not None and t > 0:
        products = (kernel.astype(np.int64) @ analysis.measured_rows.astype(np.int64)) & 1
        k = rank_gf2(products.astype(np.uint8))
    else:
        k = 0

    expected_k = m + analysis.state_rank - analysis.joint_rank
    if k != expected_k:
        raise AuditFailure(f"Rule products have rank {k}, the groups share rank {expected_k}.",
                           shared = k, expected = expected_k)

    # Rules whose products are the identity must cover every dependency of the measured set
    dependencies = num_measured - m
    if t - k != dependencies:
        raise AuditFailure(f"Found {t - k} identity rules, the measured set has {dependencies} dependencies.",
                           rules = t, dependencies = dependencies, shared = k)

    # log2 of the admitted dimension
    log_dim = (num_measured - rule_rank) + (n_qubits - m) + k
    if log_dim != n_qubits:
        raise AuditFailure(f"Admitted sectors span 2^{log_dim} states instead of 2^{n_qubits}.", log_dim = log_dim)

    return {"measured": num_measured, "rules": t, "measured_rank": m, "shared_rank": k,
            "dependencies": dependencies, "log2_dimension": log_dim}


def derive_sector_constraints(state_group: StabilizerGroup, measured: Sequence[Tuple[str, PauliString]]) -> List[SectorRule]:
    return analyze_sectors(state_group, measured).rules


def sector_weight(analysis: SectorAnalysis, bits: Dict[str, int]) -> float:
    """
    `<phi|P_s|phi>` for the joint projector onto sign bits `bits`.
    """
    if not analysis.admissible(bits):
        return 0.0

    return 2.0 ** (len(analysis.rules) - len(analysis.labels))
