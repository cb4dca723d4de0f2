import colortoric
import numpy as np
import pytest

from colortoric.lattice import make_torus
from colortoric.models import HamiltonianSpec, interpolate
from colortoric.pauli import PauliString
from colortoric.spectra import lowest_eigs, spectral_gap, cluster_levels, dense_spectrum, matvec, StateVector


def _random_hamiltonian(n, num_terms, seed):
    rng = np.random.default_rng(seed)
    terms = []
    for _ in range(num_terms):
        literal = "".join(rng.choice(list("IXYZ"), size = n))
        if set(literal) == {"I"}:
            continue
        terms.append((float(rng.uniform(-1.0, 1.0)), PauliString.from_literal(literal)))

    return HamiltonianSpec(n, terms)


def test_cluster_levels():
    assert cluster_levels([-2.0, -2.0, -1.0, 0.5, 0.5, 0.5], cluster_tol = 1e-8) == [(0, 2), (2, 3), (3, 6)]
    assert cluster_levels([0.0], cluster_tol = 1e-8) == [(0, 1)]


def test_dense_vs_iterative():
    h = _random_hamiltonian(10, 30, seed = 4)
    exact = dense_spectrum(h)

    report = lowest_eigs(h, 6, seed = 1)
    assert report.meta["method"] == "lanczos"
    assert len(report.eigenvalues) >= 6
    assert np.allclose(report.eigenvalues[:6], exact[:6], atol = 1e-10)

    for i, e in enumerate(report.eigenvalues):
        v = report.vectors[:, i]
        assert np.linalg.norm(matvec(h, v) - e * v) < 1e-8


def test_sixteenfold_cluster():
    # A 6-qubit Hamiltonian padded with 4 idle qubits: every level is exactly 16-fold
    small = _random_hamiltonian(6, 20, seed = 11)
    h = HamiltonianSpec(10, [(c, PauliString.from_literal(op.to_literal() + "IIII")) for c, op in small.terms])
    exact = np.repeat(dense_spectrum(small), 16)

    report = lowest_eigs(h, 20, seed = 2)
    assert report.meta["method"] == "lanczos"
    assert report.degeneracies[0] == 16
    assert np.allclose(report.eigenvalues[:20], exact[:20], atol = 1e-10)

    overlap = report.vectors.conj().T @ report.vectors
    assert np.allclose(overlap, np.eye(overlap.shape[0]), atol = 1e-8)


def test_small_dense():
    h = HamiltonianSpec(2, [(-1.0, PauliString.from_literal("ZZ")), (-1.0, PauliString.from_literal("XX"))])
    report = lowest_eigs(h, 2)
    assert report.meta["method"] == "dense"
    assert abs(report.ground_energy + 2.0) < 1e-12
    assert report.degeneracies[0] == 1

    e0, mult, gap = spectral_gap(h)
    assert abs(e0 + 2.0) < 1e-12
    assert mult == 1
    assert abs(gap - 2.0) < 1e-12


def test_matvec_state():
    h = HamiltonianSpec(3, [(-1.0, PauliString.from_literal("ZZI")), (0.5, PauliString.from_literal("IYX"))])
    v = StateVector.uniform(3)
    w = matvec(h, v)
    dense = sum(c * op.to_matrix() for c, op in h.terms)
    assert np.allclose(w.amplitudes, dense @ v.amplitudes)


@pytest.mark.slow
def test_torus_limits():
    t = make_torus(3, 3)

    report = lowest_eigs(interpolate(t, 1.0, 0.0), 4, return_vectors = False)
    assert abs(report.ground_energy + 18.0) < 1e-8
    assert report.degeneracies[0] == 4

    report = lowest_eigs(interpolate(t, 0.0, 1.0), 16, return_vectors = False)
    assert abs(report.ground_energy + 18.0) < 1e-8
    assert report.degeneracies[0] == 16


if __name__ == "__main__":
    test_cluster_levels()
    test_dense_vs_iterative()
    test_sixteenfold_cluster()
    test_small_dense()
    test_matvec_state()
    test_torus_limits()
