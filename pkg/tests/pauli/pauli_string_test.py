import colortoric
import numpy as np

from colortoric.errors import SizeMismatch
from colortoric.pauli import PauliString, product
from colortoric.utils import BitVector

import pytest


def _random_pauli(rng, n, hermitian = False):
    x = rng.integers(0, 2, size = n)
    z = rng.integers(0, 2, size = n)
    phase = int(rng.integers(0, 4))
    if hermitian:
        phase = int(np.sum(x & z)) + 2 * int(rng.integers(0, 2))
    return PauliString(n, BitVector.from_array(x), BitVector.from_array(z), phase)


def test_literals():
    x = PauliString.from_literal("X")
    z = PauliString.from_literal("Z")
    y = PauliString.from_literal("Y")

    assert (x * z).to_literal() == "-iY"
    assert (x * z).phase_exp == 0
    assert (z * x).to_literal() == "iY"
    assert y.phase_exp == 1 and y.is_hermitian() and y.sign == 1

    p = PauliString.from_literal("-XIZY")
    assert p.to_literal() == "-XIZY"
    assert p.support() == [0, 2, 3]
    assert p.weight() == 3
    assert p.sign == -1

    assert PauliString.from_literal("iXZ").to_literal() == "iXZ"
    assert not PauliString.from_literal("iXZ").is_hermitian()

    with pytest.raises(ValueError):
        PauliString.from_literal("XQ")


def test_matrix_semantics():
    rng = np.random.default_rng(11)
    for _ in range(200):
        a = _random_pauli(rng, 3)
        b = _random_pauli(rng, 3)

        ma, mb = a.to_matrix(), b.to_matrix()
        assert np.all(np.abs((a * b).to_matrix() - ma @ mb) < 1e-12)
        assert a.commutes(b) == bool(np.all(np.abs(ma @ mb - mb @ ma) < 1e-12))

    y = PauliString.from_literal("Y").to_matrix()
    assert np.all(np.abs(y - np.array([[0, -1j], [1j, 0]])) < 1e-12)


def test_associativity_and_product():
    rng = np.random.default_rng(3)
    for _ in range(200):
        a, b, c = (_random_pauli(rng, 7) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert product([a, b, c]) == a * b * c

    assert product([], n_qubits = 4).is_identity()

    p = _random_pauli(rng, 5, hermitian = True)
    assert (p * p).is_identity() and (p * p).phase_exp == 0
    assert p.negate().sign == -p.sign


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        PauliString.from_literal("XX") * PauliString.from_literal("XXX")

    with pytest.raises(ValueError):
        PauliString.from_literal("ZZ").commutes(PauliString.from_literal("Z"))


def test_symplectic_row():
    p = PauliString.from_literal("XYZI")
    assert p.symplectic_row().tolist() == [1, 1, 0, 0, 0, 1, 1, 0]
    assert p.leading_column() == 0
    assert PauliString.from_literal("IIZ").leading_column() == 5
    assert PauliString.identity(3).leading_column() == -1


if __name__ == "__main__":
    test_literals()
    test_matrix_semantics()
    test_associativity_and_product()
    test_size_mismatch()
    test_symplectic_row()
