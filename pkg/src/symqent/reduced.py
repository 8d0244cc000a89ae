"""t-qubit reduced density matrices of symmetric states.

rho_t lives on the (t+1)-dimensional symmetric subspace of t qubits.  Its
entries are quadratic forms in the Dicke amplitudes,

    rho_t[q, l] = sum_k d_{k+q} conj(d_{k+l}) Gamma_k^{q l},

    Gamma_k^{q l} = sqrt(C(N-k-q, t-q) C(k+q, k) C(N-k-l, t-l) C(k+l, k)) / C(N, t),

which is the partial trace <D_t^q| tr_{N-t} |psi><psi| |D_t^l>.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .dicke import SymState, binom
from .errors import DimensionMismatch

MES_TOL = 1e-10
ANTICOHERENCE_TOL = 1e-9
EIG_TOL = 1e-14
NEG_EIG_CLAMP = 1e-10
RANK_TOL = 1e-10


@lru_cache(maxsize=256)
def gamma_table(n: int, t: int) -> np.ndarray:
    """Gamma_k^{q l} as an array indexed [k, q, l]; out-of-range binomials are 0."""
    g = np.zeros((n - t + 1, t + 1, t + 1))
    norm = binom(n, t)
    for k in range(n - t + 1):
        for q in range(t + 1):
            fq = binom(n - k - q, t - q) * binom(k + q, k)
            for l in range(t + 1):
                fl = binom(n - k - l, t - l) * binom(k + l, k)
                g[k, q, l] = math.sqrt(fq * fl) / norm
    g.setflags(write=False)
    return g


def eigh(mat: np.ndarray):
    """Hermitian eigen-decomposition by cyclic Jacobi (ascending)."""
    w, v, _ = kernels.jacobi_eigh(np.asarray(mat, dtype=np.complex128), EIG_TOL, 100)
    return w, v


@dataclass(frozen=True, eq=False)
class ReducedDensity:
    t: int
    mat: np.ndarray = field(repr=False)

    @property
    def eigenvalues(self) -> np.ndarray:
        w, _ = eigh(self.mat)
        w = np.where((w < 0) & (w >= -NEG_EIG_CLAMP), 0.0, w)
        return w

    @property
    def rank(self) -> int:
        return int(np.sum(self.eigenvalues > RANK_TOL))

    def deviation_from_mixed(self) -> float:
        """max |rho - 1/(t+1)|, elementwise."""
        return float(np.max(np.abs(self.mat - np.eye(self.t + 1) / (self.t + 1))))

    def check(self, n: int | None = None) -> None:
        """Raise AssertionError if an invariant of a physical rho_t fails."""
        m = self.mat
        assert np.max(np.abs(m - m.conj().T)) < 1e-12, "not Hermitian"
        assert abs(np.trace(m) - 1) < 1e-12, "trace != 1"
        assert self.eigenvalues.min() >= -NEG_EIG_CLAMP, "negative eigenvalue"
        if n is not None:
            assert self.rank <= min(self.t + 1, n - self.t + 1), "rank bound violated"


@dataclass(frozen=True)
class MesCheck:
    """Outcome of the maximal-mixedness test on rho_1."""

    is_mes: bool
    residuals: tuple[float, float]

    def __bool__(self):
        return self.is_mes


@dataclass(frozen=True)
class AnticoherenceReport:
    order: int
    deviations: tuple[float, ...]
    """deviations[t-1] = max|rho_t - 1/(t+1)| for t = 1..floor(N/2)."""


def rho_t(state: SymState, t: int) -> ReducedDensity:
    n = state.n
    if not 1 <= t <= n - 1:
        raise DimensionMismatch(f"reduction size t={t} outside 1..{n - 1}")
    d = state.coeffs
    g = gamma_table(n, t)
    k = np.arange(n - t + 1)
    # shifted[k, q] = d_{k+q}
    shifted = d[k[:, None] + np.arange(t + 1)[None, :]]
    mat = np.einsum("kq,kl,kql->ql", shifted, shifted.conj(), g)
    return ReducedDensity(t, mat)


def mes_residuals(state: SymState) -> tuple[float, float]:
    n = state.n
    d = state.coeffs
    k = np.arange(n + 1)
    r1 = abs(float(np.sum((n - 2 * k) * np.abs(d) ** 2)))
    kk = np.arange(n)
    r2 = abs(complex(np.sum(np.sqrt((n - kk) * (kk + 1.0)) * d[:-1] * d[1:].conj())))
    return r1, r2


def is_mes(state: SymState, tol: float = MES_TOL) -> MesCheck:
    r1, r2 = mes_residuals(state)
    return MesCheck(r1 < tol and r2 < tol, (r1, r2))


def anticoherence_order(state: SymState, tol: float = ANTICOHERENCE_TOL) -> AnticoherenceReport:
    devs = []
    order = 0
    still = True
    for t in range(1, state.n // 2 + 1):
        dev = rho_t(state, t).deviation_from_mixed()
        devs.append(dev)
        if still and dev < tol:
            order = t
        else:
            still = False
    return AnticoherenceReport(order, tuple(devs))
