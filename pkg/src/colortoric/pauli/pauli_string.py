from __future__ import annotations

import numpy as np
from typing import Iterable, Sequence

from colortoric.errors import SizeMismatch
from colortoric.utils.bitset import BitVector

_LITERAL_PREFIX = {0: "", 1: "i", 2: "-", 3: "-i"}


class PauliString(object):
    """
    An n-qubit Pauli operator `i^phase_exp * prod_q X_q^{x_q} Z_q^{z_q}` (X applied after Z on every qubit).

    :param n_qubits: number of qubits
    :type n_qubits: int

    :param x_mask: qubits carrying an X factor
    :type x_mask: BitVector

    :param z_mask: qubits carrying a Z factor
    :type z_mask: BitVector

    :param phase_exp: exponent of the global `i` factor (taken mod 4)
    :type phase_exp: int
    """

    __slots__ = ("n_qubits", "x_mask", "z_mask", "phase_exp")

    def __init__(self, n_qubits: int, x_mask: BitVector = None, z_mask: BitVector = None, phase_exp: int = 0):
        assert n_qubits >= 1, "`n_qubits` must be positive."

        if x_mask is None:
            x_mask = BitVector(n_qubits)
        if z_mask is None:
            z_mask = BitVector(n_qubits)

        if x_mask.num_bits != n_qubits or z_mask.num_bits != n_qubits:
            raise SizeMismatch(f"Masks of width {x_mask.num_bits}/{z_mask.num_bits} do not match `n_qubits` = {n_qubits}.",
                               expected = n_qubits, got = (x_mask.num_bits, z_mask.num_bits))

        self.n_qubits = n_qubits
        self.x_mask = x_mask
        self.z_mask = z_mask
        self.phase_exp = phase_exp % 4

    @classmethod
    def identity(cls, n_qubits: int):
        return cls(n_qubits)

    @classmethod
    def from_support(cls, n_qubits: int, qubits: Iterable[int], kind: str):
        """
        Pure X- or Z-type operator on a set of qubits, e.g. a plaquette operator.
        """
        mask = BitVector.from_indices(n_qubits, qubits)
        if kind == "X":
            return cls(n_qubits, x_mask = mask)
        elif kind == "Z":
            return cls(n_qubits, z_mask = mask)
        else:
            raise ValueError(f"Unknown Pauli kind `{kind}`.")

    @classmethod
    def single(cls, n_qubits: int, qubit: int, kind: str):
        if kind == "Y":
            mask = BitVector.from_indices(n_qubits, [qubit])
            return cls(n_qubits, x_mask = mask, z_mask = mask, phase_exp = 1)

        return cls.from_support(n_qubits, [qubit], kind)

    @classmethod
    def from_literal(cls, literal: str):
        """
        Parse `[+|-][i]?` followed by characters from `IXYZ`; qubit 0 is the leftmost character.
        """
        s = literal.strip()
        negative = False
        if s[:1] in ("+", "-"):
            negative = s[0] == "-"
            s = s[1:]

        imaginary = False
        if s[:1] == "i":
            imaginary = True
            s = s[1:]

        assert len(s) >= 1, f"Empty Pauli literal `{literal}`."

        xs, zs = [], []
        num_y = 0
        for q, ch in enumerate(s):
            if ch == "X":
                xs.append(q)
            elif ch == "Z":
                zs.append(q)
            elif ch == "Y":
                xs.append(q)
                zs.append(q)
                num_y += 1
            elif ch != "I":
                raise ValueError(f"Unknown Pauli character `{ch}` in `{literal}`.")

        # Y = i X Z
        coeff_exp = (2 if negative else 0) + (1 if imaginary else 0)
        n = len(s)
        return cls(n, BitVector.from_indices(n, xs), BitVector.from_indices(n, zs), coeff_exp + num_y)

    def to_literal(self) -> str:
        num_y = len(self.x_mask & self.z_mask)
        chars = []
        for q in range(self.n_qubits):
            x, z = self.x_mask.hasitem(q), self.z_mask.hasitem(q)
            chars.append("Y" if x and z else ("X" if x else ("Z" if z else "I")))

        return _LITERAL_PREFIX[(self.phase_exp - num_y) % 4] + "".join(chars)

    def _check_size(self, other: PauliString):
        if self.n_qubits != other.n_qubits:
            raise SizeMismatch(f"Pauli operators act on {self.n_qubits} and {other.n_qubits} qubits.",
                               expected = self.n_qubits, got = other.n_qubits)

    def multiply(self, other: PauliString) -> PauliString:
        self._check_size(other)

        # Z^{z1} X^{x2} = (-1)^{z1.x2} X^{x2} Z^{z1}
        swap = (self.z_mask & other.x_mask).parity()
        return PauliString(
            self.n_qubits,
            self.x_mask ^ other.x_mask,
            self.z_mask ^ other.z_mask,
            self.phase_exp + other.phase_exp + 2 * swap
        )

    __mul__ = multiply

    def commutes(self, other: PauliString) -> bool:
        self._check_size(other)
        return ((self.x_mask & other.z_mask).parity() ^ (self.z_mask & other.x_mask).parity()) == 0

    def negate(self) -> PauliString:
        return PauliString(self.n_qubits, self.x_mask, self.z_mask, self.phase_exp + 2)

    def is_hermitian(self) -> bool:
        return (self.phase_exp - len(self.x_mask & self.z_mask)) % 2 == 0

    def is_identity(self) -> bool:
        return self.x_mask.is_zero() and self.z_mask.is_zero()

    @property
    def sign(self) -> int:
        """
        `+1` or `-1` for a Hermitian operator written as a signed tensor product of `I, X, Y, Z`.
        """
        assert self.is_hermitian(), "`sign` is only defined for Hermitian Pauli operators."
        return 1 if (self.phase_exp - len(self.x_mask & self.z_mask)) % 4 == 0 else -1

    def support(self) -> Sequence[int]:
        return (self.x_mask | self.z_mask).to_list()

    def weight(self) -> int:
        return len(self.x_mask | self.z_mask)

    def symplectic_row(self) -> np.ndarray:
        return np.concatenate([self.x_mask.to_array(), self.z_mask.to_array()])

    def leading_column(self) -> int:
        """
        Index of the first set entry of `symplectic_row()`, or -1 for the identity.
        """
        for q in self.x_mask:
            return q
        for q in self.z_mask:
            return self.n_qubits + q
        return -1

    def has_column(self, col: int) -> bool:
        if col < self.n_qubits:
            return self.x_mask.hasitem(col)
        return self.z_mask.hasitem(col - self.n_qubits)

    def masks_as_ints(self):
        return self.x_mask.to_int(), self.z_mask.to_int()

    def coefficient(self) -> complex:
        return 1j ** self.phase_exp

    def to_matrix(self) -> np.ndarray:
        """
        Dense `2^n x 2^n` matrix; qubit q is bit q of the basis index. Only meant for small oracles.
        """
        assert self.n_qubits <= 12, "Dense Pauli matrices are limited to 12 qubits."

        dim = 1 << self.n_qubits
        x, z = self.masks_as_ints()
        cols = np.arange(dim)
        rows = cols ^ x
        signs = np.array([1 - 2 * (bin(b & z).count("1") & 1) for b in range(dim)], dtype = np.complex128)

        mat = np.zeros([dim, dim], dtype = np.complex128)
        mat[rows, cols] = self.coefficient() * signs
        return mat

    def __eq__(self, other):
        if not isinstance(other, PauliString):
            return NotImplemented

        return self.n_qubits == other.n_qubits and self.phase_exp == other.phase_exp and \
            self.x_mask == other.x_mask and self.z_mask == other.z_mask

    def __hash__(self):
        return hash((self.n_qubits, self.phase_exp, self.x_mask, self.z_mask))

    def __repr__(self):
        if self.n_qubits <= 32:
            return f"PauliString({self.to_literal()})"
        return f"PauliString(n_qubits={self.n_qubits}, weight={self.weight()}, phase_exp={self.phase_exp})"


def multiply(a: PauliString, b: PauliString) -> PauliString:
    return a.multiply(b)


def commutes(a: PauliString, b: PauliString) -> bool:
    return a.commutes(b)


def product(paulis: Sequence[PauliString], n_qubits: int = None) -> PauliString:
    """
    Ordered product `paulis[0] * paulis[1] * ...`; the identity on `n_qubits` qubits if empty.
    """
    if len(paulis) == 0:
        assert n_qubits is not None, "`n_qubits` is required for an empty product."
        return PauliString.identity(n_qubits)

    acc = paulis[0]
    for p in paulis[1:]:
        acc = acc.multiply(p)

    return acc
