import math

import numpy as np
import pytest

from symqent.dicke import random_state
from symqent.majorana import SQRT23, in_S


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def random_states(rng, n, count):
    return [random_state(n, rng) for _ in range(count)]


def random_invertible(rng, max_cond=20.0):
    while True:
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        if np.linalg.cond(a) <= max_cond:
            return a


def sample_mu_in_S(rng, count, margin=0.0):
    """Uniform samples from the fundamental domain, optionally kept a
    distance ``margin`` away from its boundary."""
    out = []
    while len(out) < count:
        mu = complex(rng.uniform(0, 3 * SQRT23), rng.uniform(0, 2 * SQRT23))
        if not in_S(mu):
            continue
        if margin and (mu.real < margin or mu.imag < margin
                       or abs(mu - SQRT23) > 2 * SQRT23 - margin):
            continue
        out.append(mu)
    return out


def phase_distance(a, b):
    """min over global phases of |a - e^{i chi} b|_max."""
    ov = np.vdot(b, a)
    ph = ov / abs(ov) if abs(ov) > 0 else 1.0
    return float(np.max(np.abs(a - ph * b)))


SQRT2 = math.sqrt(2.0)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[key])
