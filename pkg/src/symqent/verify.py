"""Self-check suites: every fast formula against its brute-force oracle.

Functions under test are looked up through their modules at call time, so
a monkeypatched implementation is what gets checked.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dicke, entanglement, husimi, majorana, oracles, reduced, spin
from .errors import SizeLimitExceeded

VERIFY_MAX_N = 10
SAMPLES_PER_N = 12


@dataclass(frozen=True)
class SuiteResult:
    name: str
    max_residual: float
    tolerance: float
    cases: int

    def __post_init__(self):
        object.__setattr__(self, "max_residual", float(self.max_residual))

    @property
    def passed(self) -> bool:
        return bool(self.max_residual < self.tolerance)


def _states(rng, n, count):
    return [dicke.random_state(n, rng) for _ in range(count)]


def suite_reduced_density(ns, rng, count):
    worst, cases = 0.0, 0
    for n in ns:
        for s in _states(rng, n, count):
            for t in range(1, n):
                diff = reduced.rho_t(s, t).mat - oracles.partial_trace(s, t)
                worst = max(worst, float(np.max(np.abs(diff))))
                cases += 1
    return SuiteResult("reduced_density_vs_partial_trace", worst, 1e-12, cases)


def suite_spin_reconstruction(ns, rng, count):
    worst, cases = 0.0, 0
    for n in ns:
        for s in _states(rng, n, count):
            r1 = spin.rho1_from_spin(s).mat - reduced.rho_t(s, 1).mat
            worst = max(worst, float(np.max(np.abs(r1))))
            if n >= 3:
                r2 = spin.rho2_from_spin(s).mat - reduced.rho_t(s, 2).mat
                worst = max(worst, float(np.max(np.abs(r2))))
            cases += 1
    return SuiteResult("rho1_rho2_from_spin_moments", worst, 1e-12, cases)


def suite_husimi(ns, rng, count):
    worst, cases = 0.0, 0
    for n in ns:
        for s in _states(rng, n, count):
            m = husimi.moments(s)
            worst = max(worst, abs(m.norm - 1.0))
            worst = max(worst, float(np.max(np.abs(spin.mean_spin(s) - husimi.k_factor(n) * m.dipole))))
            for j in range(3):
                for k in range(3):
                    worst = max(worst, husimi.second_moment_identity(s, j, k))
            th, ph = rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
            worst = max(worst, abs(husimi.husimi_eval(s, th, ph) - abs(oracles.coherent_overlap(s, th, ph)) ** 2))
            cases += 1
    return SuiteResult("husimi_moment_identities", worst, 1e-10, cases)


def suite_spin_polynomials(ns, rng, count):
    worst, cases = 0.0, 0
    for n in ns:
        for k in range(n + 1):
            for ell in range(-k, n - k + 1):
                target = np.zeros((n + 1, n + 1))
                target[k + ell, k] = 1.0
                got = spin.decompose_dyad(n, k, ell).operator(n)
                worst = max(worst, float(np.max(np.abs(got - target))))
                cases += 1
        for _ in range(max(1, count // 4)):
            h = rng.normal(size=(n + 1, n + 1)) + 1j * rng.normal(size=(n + 1, n + 1))
            h = h + h.conj().T
            back = spin.reassemble(n, spin.decompose_operator(n, h))
            worst = max(worst, float(np.max(np.abs(back - h))))
            cases += 1
    return SuiteResult("spin_polynomial_decomposition", worst, 1e-9, cases)


def suite_moebius(ns, rng, count):
    worst, cases = 0.0, 0
    for n in ns:
        for s in _states(rng, n, count):
            a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            coef = dicke.apply_symmetric_op(s, a)
            roots = majorana.apply_moebius(s, majorana.Moebius.from_matrix(a))
            brute = oracles.slocc(s, a)
            brute = brute / np.linalg.norm(brute)
            worst = max(worst, 1 - abs(coef.inner(roots)), 1 - abs(np.vdot(brute, coef.coeffs)))
            cases += 1
    return SuiteResult("moebius_vs_slocc", worst, 1e-9, cases)


def suite_tangle(ns, rng, count):
    worst, cases = 0.0, 0
    for n in ns:
        if n % 2:
            continue
        for s in _states(rng, n, count):
            worst = max(worst, abs(entanglement.n_tangle(s).value - oracles.tangle(s)))
            cases += 1
    return SuiteResult("n_tangle_vs_full_space", worst, 1e-11, cases)


SUITES = (
    "suite_reduced_density",
    "suite_spin_reconstruction",
    "suite_husimi",
    "suite_spin_polynomials",
    "suite_moebius",
    "suite_tangle",
)


def run_all(nmin: int = 2, nmax: int = 6, seed: int = 42, count: int = SAMPLES_PER_N) -> list[SuiteResult]:
    if nmax > VERIFY_MAX_N:
        raise SizeLimitExceeded(f"verify supports n <= {VERIFY_MAX_N}, got {nmax}")
    if nmin < 2 or nmin > nmax:
        raise SizeLimitExceeded(f"invalid n range {nmin}..{nmax}")
    ns = range(nmin, nmax + 1)
    out = []
    for name in SUITES:
        rng = np.random.default_rng([seed, SUITES.index(name)])
        out.append(globals()[name](ns, rng, count))
    return out
