import math

import numpy as np
import pytest

from symqent import dicke as D
from symqent import oracles
from symqent.entanglement import (GmeConfig, barycentric_measure, covered_locus,
                                  geometric_measure, gme_psi_mu_closed_form, n_tangle)
from symqent.errors import NotCovered, Unsupported
from symqent.husimi import husimi_eval
from symqent.majorana import SQRT23, in_S
from symqent.reduced import anticoherence_order, is_mes

from conftest import random_states, sample_mu_in_S

T4 = D.psi_mu(1j * math.sqrt(2))


@pytest.mark.parametrize("state,expected", [
    (D.dicke(3, 1), 5 / 9),
    (D.dicke(4, 2), 5 / 8),
    (T4, 2 / 3),
] + [(D.ghz(n), 0.5) for n in range(2, 9)])
def test_gme_known_values(state, expected):
    assert geometric_measure(state).value == pytest.approx(expected, abs=1e-8)


def test_gme_result_consistency(rng):
    s = D.random_state(6, rng)
    r = geometric_measure(s)
    assert r.value == pytest.approx(1 - r.overlap)
    assert abs(husimi_eval(s, *r.argmax) - r.overlap) < 1e-12
    assert 0 < r.overlap <= 1
    assert len(r.starts) == GmeConfig().starts
    assert r.grid_spread >= 0
    th, ph = r.argmax
    assert 0 <= th <= math.pi and 0 <= ph < 2 * math.pi


def test_gme_is_deterministic(rng):
    s = D.random_state(5, rng)
    assert geometric_measure(s) == geometric_measure(s)


def test_gme_lu_invariant(rng):
    for s in (D.random_state(5, rng), D.p_state(6), D.psi_mu(0.4 + 0.7j)):
        base = geometric_measure(s).value
        for _ in range(10):
            rotated = D.apply_symmetric_op(s, D.random_unitary(rng))
            assert geometric_measure(rotated).value == pytest.approx(base, abs=1e-8)


def test_gme_lower_bounds(rng):
    states = [D.ghz(n) for n in range(3, 7)] + [D.p_state(n) for n in range(4, 8)]
    states += [D.psi_mu(mu) for mu in sample_mu_in_S(rng, 5)] + [T4]
    for s in states:
        t = anticoherence_order(s).order
        assert t >= 1
        assert geometric_measure(s).value >= t / (t + 1) - 1e-9


def test_gme_p_states():
    for n in range(4, 11):
        assert geometric_measure(D.p_state(n)).value == pytest.approx(n / (2 * n - 2), abs=1e-8)


def test_closed_form_examples():
    assert gme_psi_mu_closed_form(0) == pytest.approx(0.5)
    assert gme_psi_mu_closed_form(1j * math.sqrt(2)) == pytest.approx(2 / 3)
    assert gme_psi_mu_closed_form(0.5) == pytest.approx(5 / 9)
    assert geometric_measure(D.psi_mu(0.5)).value == pytest.approx(5 / 9, abs=1e-8)
    with pytest.raises(NotCovered):
        gme_psi_mu_closed_form(0.3 + 1.0j)


def _arc_points(centre_sign, count):
    # points of |mu - centre_sign*sqrt(2/3)| = 2 sqrt(2/3) inside the domain
    out = []
    for a in np.linspace(0.05, 0.95, count):
        if centre_sign < 0:
            ang = a * math.atan2(math.sqrt(2), SQRT23)
            out.append(-SQRT23 + 2 * SQRT23 * complex(math.cos(ang), math.sin(ang)))
        else:
            ang = a * (math.pi - math.atan2(math.sqrt(2), -SQRT23))
            out.append(SQRT23 + 2 * SQRT23 * complex(math.cos(ang), math.sin(ang)))
    return out


@pytest.mark.parametrize("locus", ["disc", "imaginary-axis", "inner-arc", "outer-arc"])
def test_closed_form_matches_numeric(locus, rng):
    if locus == "disc":
        mus = [m for m in sample_mu_in_S(rng, 60) if abs(m) <= SQRT23][:6]
    elif locus == "imaginary-axis":
        mus = [1j * y for y in np.linspace(SQRT23 + 0.01, math.sqrt(2), 6)]
    else:
        mus = _arc_points(-1 if locus == "inner-arc" else 1, 6)
    for mu in mus:
        assert in_S(mu, 1e-9)
        assert covered_locus(mu) == locus
        assert geometric_measure(D.psi_mu(mu)).value == pytest.approx(gme_psi_mu_closed_form(mu), abs=1e-8)


def test_barycentric_examples():
    assert barycentric_measure(D.chi_state(6)) == pytest.approx(1, abs=1e-9)
    eb = lambda n: barycentric_measure(D.p_state(n))  # noqa: E731
    assert barycentric_measure(D.p_state(8, -(27 / 25) ** 0.125)) > eb(8)


def test_tangle_examples():
    assert n_tangle(D.ghz(4)).value == pytest.approx(1)
    assert n_tangle(T4).value == pytest.approx(0, abs=1e-15)
    assert n_tangle(D.psi_mu(1j)).value == pytest.approx(1 / 81)
    assert oracles.tangle(D.psi_mu(1j)) == pytest.approx(1 / 81)
    for n in (4, 6, 8, 10):
        assert n_tangle(D.p_state(n)).value == pytest.approx(0, abs=1e-15)
    with pytest.raises(Unsupported):
        n_tangle(D.ghz(3))


def test_tangle_psi_mu_formula(rng):
    for _ in range(50):
        mu = complex(*rng.normal(size=2))
        a = abs(mu) ** 2
        expected = (a * a + 4 * (mu * mu).real + 4) ** 2 / (2 + a) ** 4
        assert n_tangle(D.psi_mu(mu)).value == pytest.approx(expected, abs=1e-12)


def test_tangle_matches_full_space(rng):
    for n in (2, 4, 6, 8, 10):
        for s in random_states(rng, n, 20):
            assert abs(n_tangle(s).value - oracles.tangle(s)) < 1e-11


def test_tangle_lu_invariant(rng):
    for n in (2, 4, 6):
        for s in random_states(rng, n, 5):
            base = n_tangle(s).value
            for _ in range(5):
                u = D.random_unitary(rng)
                assert n_tangle(D.apply_symmetric_op(s, u)).value == pytest.approx(base, abs=1e-10)


def test_mes_gme_bound_on_random_mes(rng):
    for _ in range(10):
        s = D.apply_symmetric_op(D.ghz(5), D.random_unitary(rng))
        assert is_mes(s)
        assert geometric_measure(s).value >= 0.5 - 1e-9
