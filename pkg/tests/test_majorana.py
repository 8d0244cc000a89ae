import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symqent import dicke as D
from symqent import majorana as M
from symqent.errors import (CanonicalizationFailure, NotGenericState,
                            SingularOperator)

from conftest import phase_distance, random_invertible, sample_mu_in_S

INF = M.INF


def test_ghz3_equatorial_triangle():
    m = M.roots(D.ghz(3))
    assert m.clusters == (1, 1, 1)
    assert np.allclose(np.abs(m.roots), 1)
    assert np.allclose(m.bloch[:, 0], math.pi / 2)
    ang = np.sort(np.mod(np.angle(m.roots), 2 * math.pi))
    assert np.allclose(np.diff(ang), 2 * math.pi / 3)


@pytest.mark.parametrize("n,k", [(4, 0), (4, 1), (5, 2), (6, 3), (7, 7)])
def test_dicke_roots(n, k):
    m = M.roots(D.dicke(n, k))
    assert sum(1 for z in m.roots if M.is_inf(z)) == n - k
    assert sum(1 for z in m.roots if z == 0) == k
    assert m.clusters == tuple(sorted([c for c in (n - k, k) if c], reverse=True))
    assert m.configuration == "D_{" + ",".join(map(str, m.clusters)) + "}"
    assert sum(m.clusters) == n


def test_psi_mu_roots_pattern():
    mu = 0.3 + 0.4j
    m = M.roots(D.psi_mu(mu))
    z = m.roots[np.argmin(np.abs(m.roots - m.roots[0]))]
    expected = [z, -z, 1 / z, -1 / z]
    for e in expected:
        assert np.min(np.abs(m.roots - e)) < 1e-12
    assert -(z ** 2 + z ** -2) / math.sqrt(6) == pytest.approx(mu, abs=1e-12)


def test_psi_mu_points_have_representative_in_S_prime(rng):
    for mu in sample_mu_in_S(rng, 20, margin=1e-3):
        bl = M.roots(D.psi_mu(mu)).bloch
        assert any(M.in_S_prime(t, p, 1e-9) for t, p in bl)


def test_root_conventions():
    for z in (0.3 - 2j, 1.0, -4j, 0j):
        th, ph = M.bloch_angles(z)
        assert M.root_from_angles(th, ph) == pytest.approx(z, abs=1e-12)
        v = M.bloch_vector(z)
        assert np.allclose(v, [math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph), math.cos(th)])
    assert M.bloch_angles(INF) == (0.0, 0.0)
    assert M.chordal(INF, INF) == 0
    assert M.chordal(0, INF) == pytest.approx(2)


def test_roots_residual_and_reconstruction(rng):
    for n in range(1, 13):
        s = D.random_state(n, rng)
        m = M.roots(s)
        c = M.majorana_coefficients(s)
        scale = np.max(np.abs(c))
        for z in m.roots:
            if not M.is_inf(z):
                assert abs(np.polyval(c[::-1], z)) < 1e-9 * scale * max(1, abs(z)) ** n
        fin = [z for z in m.roots if not M.is_inf(z)]
        assert M.reconstruction_error(c[:len(fin) + 1], fin) < 1e-9


def test_state_from_roots_examples():
    assert M.state_from_roots([INF] * 5).allclose(D.dicke(5, 0))
    s = M.state_from_roots([1, -1, 1j, -1j])
    assert np.isclose(s.coeffs[0], -s.coeffs[4]) and np.allclose(s.coeffs[1:4], 0)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 8), seed=st.integers(0, 2 ** 32 - 1))
def test_roots_round_trip(n, seed):
    s = D.random_state(n, np.random.default_rng(seed))
    m = M.roots(s)
    back = M.state_from_roots(m)
    assert abs(s.inner(back)) > 1 - 1e-9
    m2 = M.roots(back)
    for z in m.roots:
        assert min(M.chordal(z, w) for w in m2.roots) < 1e-8


def test_multiple_roots_survive_slocc(rng):
    for n, k in ((4, 1), (6, 2), (8, 3), (10, 1), (12, 6)):
        for _ in range(5):
            s = D.apply_symmetric_op(D.dicke(n, k), random_invertible(rng))
            assert M.roots(s).clusters == tuple(sorted((n - k, k), reverse=True))


def test_moebius_basics():
    m = M.Moebius(1, 2, 3, 5)
    assert m(INF) == pytest.approx(1 / 3)
    assert M.is_inf(m(-5 / 3))
    assert (m @ m.inverse())(0.7 + 0.1j) == pytest.approx(0.7 + 0.1j)
    with pytest.raises(SingularOperator):
        M.Moebius(1, 2, 2, 4)
    assert M.Moebius.identity()(INF) == INF


def test_m1_m2_maps():
    z1, z2 = 0.4 - 1j, -2 + 0.5j
    m1 = M.m1_map(z1, z2)
    assert m1(z1) == 0 and m1(z2) == pytest.approx(1)
    z0 = 0.7 + 0.3j
    m2 = M.m2_map(z0)
    assert m2(0) == pytest.approx(z0)
    assert m2(1) == pytest.approx(-z0)
    assert m2(INF) == pytest.approx(1 / z0)


def test_rotation_to_north_is_unitary(rng):
    for z in (0.3 + 0.2j, -5j, 0j):
        r = M.rotation_to_north(z)
        assert M.is_inf(r(z))
        u = r.matrix
        assert np.allclose(u.conj().T @ u, np.eye(2))


def test_apply_moebius_identity_and_agreement(rng):
    s = D.random_state(5, rng)
    assert abs(M.apply_moebius(s, M.Moebius.identity()).inner(s)) > 1 - 1e-12
    for n in range(1, 9):
        for _ in range(10):
            s = D.random_state(n, rng)
            a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            via_roots = M.apply_moebius(s, M.Moebius.from_matrix(a))
            via_coeffs = D.apply_symmetric_op(s, a)
            assert abs(via_roots.inner(via_coeffs)) > 1 - 1e-9


def test_barycenter_examples():
    for n in range(2, 9):
        v, eb = M.barycenter(D.ghz(n))
        assert eb == pytest.approx(1, abs=1e-9)
    v, eb = M.barycenter(D.dicke(6, 0))
    assert np.allclose(v, [0, 0, 1]) and eb == pytest.approx(0)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 10), seed=st.integers(0, 2 ** 32 - 1))
def test_barycentric_range(n, seed):
    _, eb = M.barycenter(D.random_state(n, np.random.default_rng(seed)))
    assert -1e-12 <= eb <= 1 + 1e-12


def test_in_S():
    s = math.sqrt(2 / 3)
    assert M.in_S(0.3 + 0.4j)
    assert M.in_S(0.5)
    assert not M.in_S(s)
    assert not M.in_S(-0.1 + 0.2j)
    assert not M.in_S(0.2 - 0.1j)
    assert not M.in_S(3 * s + 0.1j)
    assert M.in_S(1j * math.sqrt(2), 1e-12)


def test_mu_maps_are_involutions():
    z = 0.37 + 0.81j
    for m in M.MU_MAPS.values():
        assert m(m(z)) == pytest.approx(z)
    assert len(M.mu_orbit(z)) == 6


def test_mu_maps_match_local_unitaries(rng):
    for mu in sample_mu_in_S(rng, 5):
        for name, u in M.LOCAL_UNITARIES.items():
            img = D.apply_symmetric_op(D.psi_mu(mu), u)
            assert phase_distance(img.coeffs, D.psi_mu(M.MU_MAPS[name](mu)).coeffs) < 1e-12


def test_canonicalize_fixed_points(rng):
    for mu in [0.3 + 0.4j] + sample_mu_in_S(rng, 20):
        c = M.canonicalize4(D.psi_mu(mu))
        assert c.in_S
        assert c.mu == pytest.approx(mu, abs=1e-9)


def test_canonicalize_examples():
    assert M.canonicalize4(D.psi_mu(math.sqrt(6))).mu == pytest.approx(0, abs=1e-9)
    assert M.canonicalize4(D.ghz(4)).mu == pytest.approx(0, abs=1e-9)
    with pytest.raises(NotGenericState):
        M.canonicalize4(D.dicke(4, 1))
    with pytest.raises(NotGenericState):
        M.canonicalize4(D.ghz(5))
    log = M.canonicalize4(D.psi_mu(0.5 + 0.2j)).transform_log
    assert [step for step, _ in log] == ["rotation", "M1", "M2", "orbit"]


def test_canonicalize_scrambled(rng):
    for mu in sample_mu_in_S(rng, 6, margin=0.05):
        for _ in range(5):
            s = D.apply_symmetric_op(D.psi_mu(mu), random_invertible(rng))
            c = M.canonicalize4(s)
            assert c.in_S and abs(c.mu - mu) < 1e-7


def test_reduce_to_S_failure():
    # sqrt(2/3) is fixed by U2 and its orbit {+-sqrt(2/3), inf} misses S
    with pytest.raises(CanonicalizationFailure):
        M.reduce_to_S(math.sqrt(2 / 3))
