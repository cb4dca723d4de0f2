from __future__ import annotations

import logging
import numpy as np
from typing import List, Optional, Sequence, Tuple

from colortoric.errors import SizeMismatch
from colortoric.lattice import HexTorus, require_admissible
from colortoric.pauli import PauliString, StabilizerGroup

logger = logging.getLogger(__name__)


class HamiltonianSpec(object):
    """
    A weighted sum of Hermitian Pauli terms. Coefficients are stored with their sign, so a stabilizer
    Hamiltonian `-g sum_s S_s` carries coefficients `-g`.

    :param n_qubits: number of qubits
    :type n_qubits: int

    :param terms: `(coefficient, operator)` pairs; identical operators are merged
    :type terms: Sequence[Tuple[float, PauliString]]

    :param labels: one label per term, e.g. `tc:B:3` or `cc:hx:0`
    :type labels: Optional[Sequence[str]]
    """

    def __init__(self, n_qubits: int, terms: Sequence[Tuple[float, PauliString]], labels: Optional[Sequence[str]] = None,
                 g_t: float = 0.0, g_c: float = 0.0):
        if labels is None:
            labels = [f"t:{i}" for i in range(len(terms))]
        assert len(labels) == len(terms), "`labels` and `terms` must have the same length."

        merged = {}
        order = []
        for (coeff, op), label in zip(terms, labels):
            if op.n_qubits != n_qubits:
                raise SizeMismatch(f"Term `{label}` acts on {op.n_qubits} qubits, expected {n_qubits}.",
                                   expected = n_qubits, got = op.n_qubits)
            assert op.is_hermitian(), f"Term `{label}` is not Hermitian."

            # Fold the sign into the coefficient
            key = (op.x_mask, op.z_mask)
            signed = float(coeff) * op.sign
            if key in merged:
                merged[key][0] += signed
            else:
                merged[key] = [signed, PauliString(n_qubits, op.x_mask, op.z_mask, len(op.x_mask & op.z_mask)), label]
                order.append(key)

        self.n_qubits = n_qubits
        self.terms: List[Tuple[float, PauliString]] = [(merged[k][0], merged[k][1]) for k in order]
        self.labels: List[str] = [merged[k][2] for k in order]
        self.g_t = g_t
        self.g_c = g_c

    @property
    def num_terms(self) -> int:
        return len(self.terms)

    def __len__(self):
        return self.num_terms

    def operators(self) -> List[PauliString]:
        return [op for _, op in self.terms]

    def coefficients(self) -> np.ndarray:
        return np.array([c for c, _ in self.terms], dtype = np.float64)

    def is_real(self) -> bool:
        return all(op.phase_exp % 2 == 0 for _, op in self.terms)

    def kernel_arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        `(xmasks, zmasks, coeffs)` for the bit kernels; `coeffs` include the phase of each operator.
        """
        assert self.n_qubits <= 62, "Bit kernels address at most 62 qubits."

        xs = np.array([op.x_mask.to_int() for _, op in self.terms], dtype = np.int64)
        zs = np.array([op.z_mask.to_int() for _, op in self.terms], dtype = np.int64)
        coeffs = np.array([c * op.coefficient() for c, op in self.terms], dtype = np.complex128)
        if self.is_real():
            coeffs = coeffs.real.copy()

        return xs, zs, coeffs

    def frustration_free_bound(self) -> float:
        """
        `-sum |c|`: the ground energy iff all terms commute and can be minimized together.
        """
        return -float(np.sum(np.abs(self.coefficients())))

    def stabilizer_group(self) -> StabilizerGroup:
        """
        Group generated by `-sign(c) * term` for every nonzero term; its rank fixes the ground degeneracy of a
        commuting frustration-free Hamiltonian.
        """
        gens = [op if c < 0 else op.negate() for c, op in self.terms if c != 0]
        return StabilizerGroup.from_generators(gens, n_qubits = self.n_qubits, reduce = True)

    def ground_degeneracy(self) -> int:
        return 1 << (self.n_qubits - self.stabilizer_group().rank)

    def scaled(self, factor: float) -> HamiltonianSpec:
        return HamiltonianSpec(self.n_qubits, [(factor * c, op) for c, op in self.terms], self.labels,
                               g_t = factor * self.g_t, g_c = factor * self.g_c)

    def dumps(self) -> str:
        """
        One term per line: `coefficient<TAB>pauli-literal`.
        """
        return "".join(f"{c!r}\t{op.to_literal()}\n" for c, op in self.terms)

    @classmethod
    def loads(cls, text: str) -> HamiltonianSpec:
        terms = []
        for line in text.splitlines():
            if len(line.strip()) == 0 or line.startswith("#"):
                continue
            coeff, literal = line.split("\t")
            terms.append((float(coeff), PauliString.from_literal(literal)))

        assert len(terms) > 0, "Empty Hamiltonian dump."
        return cls(terms[0][1].n_qubits, terms)

    def __repr__(self):
        return f"HamiltonianSpec(n_qubits={self.n_qubits}, num_terms={self.num_terms}, g_t={self.g_t}, g_c={self.g_c})"


def _tc_terms(t: HexTorus, coeff: float):
    terms, labels = [], []
    for i in t.light_ids:
        terms.append((coeff, t.trapezoid_operator(i)))
        labels.append(f"tc:B:{i}")
    for i in t.dark_ids:
        terms.append((coeff, t.trapezoid_operator(i)))
        labels.append(f"tc:A:{i}")

    return terms, labels


def _cc_terms(t: HexTorus, coeff: float):
    terms, labels = [], []
    for kind in ("X", "Z"):
        for h in range(t.num_hexagons):
            terms.append((coeff, t.hexagon_operator(h, kind)))
            labels.append(f"cc:h{kind.lower()}:{h}")

    return terms, labels


def cc_hamiltonian(t: HexTorus) -> HamiltonianSpec:
    require_admissible(t)
    terms, labels = _cc_terms(t, -1.0)
    return HamiltonianSpec(t.n_qubits, terms, labels, g_t = 0.0, g_c = 1.0)


def tc_hamiltonian(t: HexTorus) -> HamiltonianSpec:
    require_admissible(t)
    terms, labels = _tc_terms(t, -1.0)
    return HamiltonianSpec(t.n_qubits, terms, labels, g_t = 1.0, g_c = 0.0)


def interpolate(t: HexTorus, g_t: float, g_c: float) -> HamiltonianSpec:
    """
    `H = -g_t sum(TC terms) - g_c sum(CC terms)`; all `4P` terms are kept even when a coupling is zero.
    """
    if g_t < 0 or g_c < 0:
        raise ValueError(f"Couplings must be non-negative, got `g_t = {g_t}`, `g_c = {g_c}`.")
    if g_t == 0 and g_c == 0:
        raise ValueError("At least one of `g_t` and `g_c` must be positive.")

    require_admissible(t)
    tc_terms, tc_labels = _tc_terms(t, -g_t)
    cc_terms, cc_labels = _cc_terms(t, -g_c)
    return HamiltonianSpec(t.n_qubits, tc_terms + cc_terms, tc_labels + cc_labels, g_t = g_t, g_c = g_c)
