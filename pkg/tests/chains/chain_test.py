import colortoric
import itertools
import numpy as np
import pytest

from colortoric.errors import CapExceeded
from colortoric.chains import ChainSpec, chain_dense_spectrum, chain_ff_spectrum, chain_gap, EVEN, ODD, BOTH


def test_ff_vs_dense():
    for n in range(3, 11):
        for g_t, g_c in ((1.0, 1.0), (0.3, 1.0), (1.0, 0.25), (0.0, 1.0), (1.0, 0.0)):
            for twist in (1, -1):
                c = ChainSpec(n, g_c = g_c, g_t = g_t, twist = twist)
                for parity in (EVEN, ODD):
                    dense = chain_dense_spectrum(c, parity)
                    ff = chain_ff_spectrum(c, parity)
                    assert ff.shape == dense.shape == (1 << (n - 1),)
                    assert np.allclose(ff, dense, atol = 1e-10), (n, g_t, g_c, twist, parity)


def test_both_sectors():
    c = ChainSpec(5, g_c = 0.7, g_t = 1.3, twist = -1)
    both = np.sort(np.concatenate([chain_ff_spectrum(c, EVEN), chain_ff_spectrum(c, ODD)]))
    assert np.allclose(both, chain_dense_spectrum(c, BOTH), atol = 1e-10)


def test_lowest_levels():
    c = ChainSpec(12, g_c = 1.0, g_t = 0.8, twist = 1)
    full = chain_ff_spectrum(c, EVEN)
    for m in (1, 5, 40):
        assert np.allclose(chain_ff_spectrum(c, EVEN, m = m), full[:m], atol = 1e-10)

    # Only the lowest levels are available beyond the enumeration cap
    big = ChainSpec(64, g_c = 1.0, g_t = 1.0)
    assert len(chain_ff_spectrum(big, EVEN, m = 10)) == 10
    with pytest.raises(CapExceeded):
        chain_ff_spectrum(big, EVEN)


def test_decoupled_limit():
    # Field only: the even ground state is all up, the first even excitation flips two spins
    c = ChainSpec(6, g_c = 0.0, g_t = 1.0)
    assert abs(chain_ff_spectrum(c, EVEN, m = 1)[0] + 6.0) < 1e-12
    assert abs(chain_gap(c, EVEN) - 4.0) < 1e-12
    assert abs(chain_ff_spectrum(c, ODD, m = 1)[0] + 4.0) < 1e-12


def test_spec_checks():
    with pytest.raises(AssertionError):
        ChainSpec(1)
    with pytest.raises(AssertionError):
        ChainSpec(4, twist = 0)
    with pytest.raises(ValueError):
        chain_ff_spectrum(ChainSpec(4), "neither")


if __name__ == "__main__":
    test_ff_vs_dense()
    test_both_sectors()
    test_lowest_levels()
    test_decoupled_limit()
    test_spec_checks()
