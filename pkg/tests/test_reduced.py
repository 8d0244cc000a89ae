import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symqent import dicke as D
from symqent import oracles, spin
from symqent.errors import DimensionMismatch
from symqent.reduced import (anticoherence_order, eigh, gamma_table, is_mes, mes_residuals,
                             rho_t)

from conftest import random_states


def test_balanced_dicke_rho2():
    r = rho_t(D.dicke(4, 2), 2)
    assert np.allclose(r.mat, np.diag([1 / 6, 2 / 3, 1 / 6]), atol=1e-12, rtol=0)


def test_out_of_range_t():
    with pytest.raises(DimensionMismatch):
        rho_t(D.ghz(4), 0)
    with pytest.raises(DimensionMismatch):
        rho_t(D.ghz(4), 4)


def test_matches_partial_trace_oracle(rng):
    for n in range(2, 8):
        for s in random_states(rng, n, 5):
            for t in range(1, n):
                assert np.max(np.abs(rho_t(s, t).mat - oracles.partial_trace(s, t))) < 1e-12


def test_complex_entries_have_partial_trace_orientation():
    # <D^0|rho_1|D^1> = <S_+>/N: a state with a definite complex coherence
    s = D.make_state(2, [1 / math.sqrt(2), 1j / math.sqrt(2), 0])
    r = rho_t(s, 1).mat
    assert np.isclose(r[0, 1], oracles.partial_trace(s, 1)[0, 1])
    assert abs(r[0, 1].imag) > 0.1


def test_gamma_table_zero_outside_range():
    g = gamma_table(5, 2)
    assert g.shape == (4, 3, 3)
    assert np.all(g >= 0)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(2, 9), seed=st.integers(0, 2 ** 32 - 1))
def test_physical_invariants(n, seed):
    s = D.random_state(n, np.random.default_rng(seed))
    for t in range(1, n):
        rho_t(s, t).check(n)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(2, 9), seed=st.integers(0, 2 ** 32 - 1))
def test_spectral_duality(n, seed):
    s = D.random_state(n, np.random.default_rng(seed))
    for t in range(1, n):
        a = np.sort(rho_t(s, t).eigenvalues)
        b = np.sort(rho_t(s, n - t).eigenvalues)
        a, b = a[a > 1e-10], b[b > 1e-10]
        assert a.size == b.size
        assert np.allclose(a, b, atol=1e-10, rtol=0)


def test_jacobi_matches_reference(rng):
    for dim in (2, 3, 7, 11):
        h = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        h = h + h.conj().T
        w, v = eigh(h)
        assert np.allclose(w, np.linalg.eigvalsh(h), atol=1e-12)
        assert np.allclose(h @ v, v * w, atol=1e-11)


def test_mes_examples():
    assert is_mes(D.ghz(4))
    chk = is_mes(D.dicke(4, 1))
    assert not chk and chk.residuals[0] == pytest.approx(2.0)
    assert is_mes(D.psi_mu(0.5 + 0.5j))
    assert mes_residuals(D.ghz(7)) == (0.0, 0.0)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(2, 8), seed=st.integers(0, 2 ** 32 - 1))
def test_mes_equals_rho1_maximally_mixed(n, seed):
    r = np.random.default_rng(seed)
    # project a random state onto the MES manifold half of the time via a GHZ-like mix
    s = D.random_state(n, r) if seed % 2 else D.apply_symmetric_op(D.ghz(n), D.random_unitary(r))
    mixed = rho_t(s, 1).deviation_from_mixed() < 1e-10
    assert bool(is_mes(s)) == mixed == (anticoherence_order(s).order >= 1)


def test_mes_invariant_under_unitaries(rng):
    for s in (D.ghz(5), D.psi_mu(0.3 + 0.9j), D.p_state(6), D.dicke(5, 2)):
        base = bool(is_mes(s))
        for _ in range(25):
            assert bool(is_mes(D.apply_symmetric_op(s, D.random_unitary(rng)))) == base


def test_anticoherence_examples():
    assert anticoherence_order(D.psi_mu(1j * math.sqrt(2))).order == 2
    assert anticoherence_order(D.dicke(4, 2)).order == 1
    assert anticoherence_order(D.dicke(6, 0)).order == 0
    rep = anticoherence_order(D.ghz(6))
    assert rep.order == 1 and len(rep.deviations) == 3


@settings(max_examples=60, deadline=None)
@given(n=st.integers(2, 10), seed=st.integers(0, 2 ** 32 - 1))
def test_anticoherence_order_bounded(n, seed):
    s = D.random_state(n, np.random.default_rng(seed))
    assert anticoherence_order(s).order <= n // 2


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_adjacent_dicke_pair_is_not_mes(n):
    # (D_N^k + D_N^{k+1})/sqrt2 with k = (N-1)/2 carries <S_+> = sqrt((N-k)(k+1))/2
    k = (n - 1) // 2
    s = D.normalized(n, np.eye(n + 1)[k] + np.eye(n + 1)[k + 1])
    sp = spin.expectation(s, spin.spin_ops(n).sp)
    assert abs(sp) == pytest.approx(math.sqrt((n - k) * (k + 1)) / 2)
    assert not is_mes(s)
    for kk in range(n // 2):
        assert is_mes(D.normalized(n, np.eye(n + 1)[kk] + np.eye(n + 1)[n - kk]))
