from __future__ import annotations

import logging
import numpy as np
from typing import Optional, Sequence, Tuple, Union

from colortoric.errors import CapExceeded, SizeMismatch
from colortoric.models import HamiltonianSpec
from colortoric.pauli import PauliString, StabilizerGroup, state_from_group
from colortoric.utils.kernels import apply_terms
from colortoric.utils.tolerances import Tolerances, resolve

logger = logging.getLogger(__name__)


class StateVector(object):
    """
    Dense amplitudes of an n-qubit state; basis index bit q is qubit q.

    :param n_qubits: number of qubits (at most `Tolerances.STATE_CAP`)
    :type n_qubits: int

    :param amplitudes: array of length `2^n_qubits`; zero state if omitted
    :type amplitudes: Optional[np.ndarray]
    """

    def __init__(self, n_qubits: int, amplitudes: Optional[np.ndarray] = None):
        check_cap(n_qubits)

        dim = 1 << n_qubits
        if amplitudes is None:
            amplitudes = np.zeros([dim], dtype = np.complex128)
        else:
            amplitudes = np.asarray(amplitudes)
            if amplitudes.shape != (dim,):
                raise SizeMismatch(f"Expected {dim} amplitudes, got shape {amplitudes.shape}.",
                                   expected = dim, got = amplitudes.shape)
            assert np.all(np.isfinite(amplitudes)), "Amplitudes must be finite."

        self.n_qubits = n_qubits
        self.amplitudes = amplitudes

    @classmethod
    def basis(cls, n_qubits: int, index: int = 0):
        v = cls(n_qubits)
        v.amplitudes[index] = 1.0
        return v

    @classmethod
    def uniform(cls, n_qubits: int):
        dim = 1 << n_qubits
        return cls(n_qubits, np.full([dim], 1.0 / np.sqrt(dim), dtype = np.complex128))

    @classmethod
    def from_group(cls, group: StabilizerGroup):
        return cls(group.n_qubits, state_from_group(group))

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalize(self) -> StateVector:
        self.amplitudes = self.amplitudes / self.norm()
        return self

    def copy(self) -> StateVector:
        return StateVector(self.n_qubits, self.amplitudes.copy())

    def overlap(self, other: StateVector) -> complex:
        _check_sizes(self.n_qubits, other.n_qubits)
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def apply(self, p: PauliString) -> StateVector:
        _check_sizes(self.n_qubits, p.n_qubits)
        x, z = p.masks_as_ints()
        amps = np.asarray(self.amplitudes, dtype = np.complex128)
        return StateVector(self.n_qubits, apply_terms(amps, np.array([x]), np.array([z]), np.array([p.coefficient()])))

    def __repr__(self):
        return f"StateVector(n_qubits={self.n_qubits}, norm={self.norm():.6f})"


def check_cap(n_qubits: int, cap: int = None):
    cap = resolve(cap, "state_cap")
    if n_qubits > cap:
        raise CapExceeded(f"{n_qubits} qubits exceed the state-vector cap {cap}.", n_qubits = n_qubits, cap = cap)


def _check_sizes(a: int, b: int):
    if a != b:
        raise SizeMismatch(f"Operands act on {a} and {b} qubits.", expected = a, got = b)


def matvec(h: HamiltonianSpec, v: Union[StateVector, np.ndarray]) -> Union[StateVector, np.ndarray]:
    """
    `H v` applied term by term with bit operations. Accepts a `StateVector` or a raw amplitude array.
    """
    check_cap(h.n_qubits)

    xs, zs, coeffs = h.kernel_arrays()
    if isinstance(v, StateVector):
        _check_sizes(h.n_qubits, v.n_qubits)
        amps = v.amplitudes
        if np.iscomplexobj(coeffs) and not np.iscomplexobj(amps):
            amps = amps.astype(np.complex128)
        return StateVector(v.n_qubits, apply_terms(amps, xs, zs, coeffs))

    vec = np.asarray(v)
    if vec.shape[0] != (1 << h.n_qubits):
        raise SizeMismatch(f"Vector of length {vec.shape[0]} does not match {h.n_qubits} qubits.",
                           expected = 1 << h.n_qubits, got = vec.shape[0])
    if np.iscomplexobj(coeffs) and not np.iscomplexobj(vec):
        vec = vec.astype(np.complex128)

    return apply_terms(vec, xs, zs, coeffs)


def expectation(v: StateVector, p: Union[PauliString, HamiltonianSpec]) -> float:
    """
    `<v|p|v>` for a normalized state and a Hermitian Pauli or Hamiltonian.
    """
    _check_sizes(v.n_qubits, p.n_qubits)

    if isinstance(p, HamiltonianSpec):
        w = matvec(p, v)
    else:
        w = v.apply(p)

    value = np.vdot(v.amplitudes, w.amplitudes)
    assert abs(value.imag) < 1e-8, "Expectation of a Hermitian operator must be real."
    return float(value.real)


class ProjectedState(object):
    """
    Result of applying signed projectors to a state: the normalized vector, the norm before normalization,
    and whether the projection vanished.
    """

    def __init__(self, state: Optional[StateVector], norm: float):
        self.state = state
        self.norm = norm

    @property
    def is_null(self) -> bool:
        return self.state is None


def build_projected_state(base: StateVector, projectors: Sequence[Tuple[int, PauliString]],
                          null_norm: float = None) -> ProjectedState:
    """
    Apply `prod (1 + (-1)^sign P)` to `base` and normalize. A vanishing result is reported as null.
    """
    null_norm = resolve(null_norm, "null_norm")
    for i in range(len(projectors)):
        for j in range(i):
            assert projectors[i][1].commutes(projectors[j][1]), f"Projectors {j} and {i} do not commute."

    v = base.copy()
    v.amplitudes = np.asarray(v.amplitudes, dtype = np.complex128)
    for sign, p in projectors:
        pv = v.apply(p)
        v.amplitudes = v.amplitudes + (1 - 2 * (sign & 1)) * pv.amplitudes

    norm = v.norm()
    if norm < null_norm:
        return ProjectedState(None, norm)

    return ProjectedState(v.normalize(), norm)
