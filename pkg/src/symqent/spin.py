"""Collective spin operators on the symmetric subspace.

Matrices are written in the Dicke basis |D_N^(0)>..|D_N^(N)> with
S_z|D^(k)> = (k - N/2)|D^(k)> and S_+|D^(k)> = sqrt((N-k)(k+1))|D^(k+1)>.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .dicke import SymState
from .errors import DimensionMismatch, NumericalFailure
from .reduced import ReducedDensity

ORDER2_TOL = 1e-10
SOLVE_RESIDUAL_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class SpinOps:
    n: int
    sz: np.ndarray = field(repr=False)
    sp: np.ndarray = field(repr=False)
    sm: np.ndarray = field(repr=False)

    @property
    def s(self) -> float:
        return self.n / 2

    @property
    def sx(self) -> np.ndarray:
        return (self.sp + self.sm) / 2

    @property
    def sy(self) -> np.ndarray:
        return (self.sp - self.sm) / 2j

    @property
    def s2(self) -> np.ndarray:
        return self.sx @ self.sx + self.sy @ self.sy + self.sz @ self.sz

    def cartesian(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.sx, self.sy, self.sz


@lru_cache(maxsize=64)
def spin_ops(n: int) -> SpinOps:
    if n < 1:
        raise DimensionMismatch("need at least one qubit")
    k = np.arange(n + 1)
    sz = np.diag(k - n / 2).astype(np.complex128)
    sp = np.zeros((n + 1, n + 1), dtype=np.complex128)
    kk = np.arange(n)
    sp[kk + 1, kk] = np.sqrt((n - kk) * (kk + 1.0))
    for m in (sz, sp):
        m.setflags(write=False)
    sm = sp.conj().T.copy()
    sm.setflags(write=False)
    return SpinOps(n, sz, sp, sm)


def expectation(state: SymState, observable) -> complex:
    o = np.asarray(observable)
    if o.shape != (state.n + 1, state.n + 1):
        raise DimensionMismatch(f"observable shape {o.shape} on a {state.n}-qubit state")
    d = state.coeffs
    return complex(np.vdot(d, o @ d))


def mean_spin(state: SymState) -> np.ndarray:
    """(<S_x>, <S_y>, <S_z>) as a real 3-vector."""
    ops = spin_ops(state.n)
    return np.array([expectation(state, o).real for o in ops.cartesian()])


def rho1_from_spin(state: SymState) -> ReducedDensity:
    n = state.n
    ops = spin_ops(n)
    z = expectation(state, ops.sz).real
    p = expectation(state, ops.sp)
    mat = np.array([[0.5 - z / n, p / n], [np.conj(p) / n, 0.5 + z / n]], dtype=np.complex128)
    return ReducedDensity(1, mat)


def rho2_from_spin(state: SymState) -> ReducedDensity:
    n = state.n
    if n < 2:
        raise DimensionMismatch("two-qubit reduction needs N >= 2")
    o = spin_ops(n)
    s = n / 2
    alpha, beta, gamma, delta = s - 1, s * (s - 1), 2 * s - 1, 2 * s * s

    def ev(m):
        return expectation(state, m)

    z, z2 = ev(o.sz).real, ev(o.sz @ o.sz).real
    p, p2 = ev(o.sp), ev(o.sp @ o.sp)
    psz, szp = ev(o.sp @ o.sz), ev(o.sz @ o.sp)
    r2 = np.sqrt(2.0)
    m01 = -r2 * (psz - alpha * p)
    m12 = r2 * (szp + alpha * p)
    mat = np.array([
        [z2 - gamma * z + beta, m01, p2],
        [np.conj(m01), -2 * z2 + delta, m12],
        [np.conj(p2), np.conj(m12), z2 + gamma * z + beta],
    ], dtype=np.complex128) / (n * (n - 1))
    return ReducedDensity(2, mat)


@dataclass(frozen=True)
class Order2Check:
    holds: bool
    residuals: tuple[float, ...]
    """|<S_x>|, |<S_y>|, |<S_z>|, |{S_x,S_y}/2|, |{S_y,S_z}/2|, |{S_z,S_x}/2|,
    spread of (<S_x^2>, <S_y^2>, <S_z^2>)."""

    def __bool__(self):
        return self.holds


def order2_spin_conditions(state: SymState, tol: float = ORDER2_TOL) -> Order2Check:
    sx, sy, sz = spin_ops(state.n).cartesian()
    ev = lambda m: expectation(state, m)  # noqa: E731
    firsts = [abs(ev(m)) for m in (sx, sy, sz)]
    cross = [abs(ev(a @ b + b @ a) / 2) for a, b in ((sx, sy), (sy, sz), (sz, sx))]
    squares = [ev(m @ m).real for m in (sx, sy, sz)]
    res = tuple(firsts + cross + [max(squares) - min(squares)])
    return Order2Check(all(r < tol for r in res), res)


# -- operators as spin polynomials -------------------------------------------


@dataclass(frozen=True, eq=False)
class SpinPolynomial:
    """ell >= 0: S_+^ell sum_m alphas[m] S_z^m;
    ell < 0: sum_m alphas[m] S_z^m S_-^|ell| (the adjoint construction)."""

    ell: int
    alphas: np.ndarray = field(repr=False)

    @property
    def degree(self) -> int:
        nz = np.nonzero(self.alphas)[0]
        return int(nz[-1]) if nz.size else 0

    def operator(self, n: int) -> np.ndarray:
        o = spin_ops(n)
        poly = np.zeros((n + 1, n + 1), dtype=np.complex128)
        zpow = np.eye(n + 1, dtype=np.complex128)
        for a in self.alphas:
            poly += a * zpow
            zpow = zpow @ o.sz
        if self.ell >= 0:
            return np.linalg.matrix_power(o.sp, self.ell) @ poly
        return poly @ np.linalg.matrix_power(o.sm, -self.ell)


def _exact_inverse(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    """Gauss-Jordan with partial pivoting over the rationals."""
    size = len(mat)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(size)] for i, row in enumerate(mat)]
    for col in range(size):
        piv = max(range(col, size), key=lambda r: abs(aug[r][col]))
        if aug[piv][col] == 0:
            raise NumericalFailure("singular Vandermonde system")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[size:] for row in aug]


@lru_cache(maxsize=256)
def _vandermonde_inverse(n: int, ell: int) -> np.ndarray:
    """Inverse of V[r, m] = (r - n/2)^m, r, m = 0..n-ell, rounded to float."""
    size = n - ell + 1
    nodes = [Fraction(2 * r - n, 2) for r in range(size)]
    v = [[x ** m for m in range(size)] for x in nodes]
    inv = _exact_inverse(v)
    out = np.array([[float(x) for x in row] for row in inv])
    out.setflags(write=False)
    return out


def _ladder_factor(n: int, r: int, ell: int) -> float:
    """sqrt(prod_{p=r}^{r+ell-1} (n-p)(p+1)); 1 for ell = 0."""
    f = 1
    for p in range(r, r + ell):
        f *= (n - p) * (p + 1)
    return float(np.sqrt(float(f)))


def _dyad_alphas(n: int, k: int, ell: int) -> np.ndarray:
    """Coefficients for |D^(k+ell)><D^(k)|, ell >= 0."""
    vinv = _vandermonde_inverse(n, ell)
    alphas = vinv[:, k] / _ladder_factor(n, k, ell)
    size = n - ell + 1
    nodes = np.arange(size) - n / 2
    a = nodes[:, None] ** np.arange(size)[None, :]
    a *= np.array([_ladder_factor(n, r, ell) for r in range(size)])[:, None]
    target = np.zeros(size)
    target[k] = 1.0
    scale = np.abs(a) @ np.abs(alphas) + 1.0
    resid = float(np.max(np.abs(a @ alphas - target) / scale))
    if resid >= SOLVE_RESIDUAL_TOL:
        raise NumericalFailure(f"spin-polynomial solve residual {resid:.3g}", resid)
    return alphas


def decompose_dyad(n: int, k: int, ell: int) -> SpinPolynomial:
    """Spin polynomial equal to |D_n^(k+ell)><D_n^(k)|."""
    if n < 1 or k < 0 or not 0 <= k + ell <= n or k > n or abs(ell) > n:
        raise DimensionMismatch(f"no dyad |D^{k + ell}><D^{k}| for n={n}")
    if ell >= 0:
        return SpinPolynomial(ell, _dyad_alphas(n, k, ell).astype(np.complex128))
    return SpinPolynomial(ell, _dyad_alphas(n, k + ell, -ell).astype(np.complex128))


def decompose_operator(n: int, op) -> list[SpinPolynomial]:
    """One polynomial per nonzero diagonal ell of ``op`` (entries O[k+ell, k])."""
    o = np.asarray(op, dtype=np.complex128)
    if o.shape != (n + 1, n + 1):
        raise DimensionMismatch(f"operator shape {o.shape} for n={n}")
    out = []
    for ell in range(-n, n + 1):
        ks = range(max(0, -ell), min(n, n - ell) + 1)
        weights = [o[k + ell, k] for k in ks]
        if not any(weights):
            continue
        alphas = np.zeros(n - abs(ell) + 1, dtype=np.complex128)
        for k, w in zip(ks, weights):
            if w:
                alphas += w * decompose_dyad(n, k, ell).alphas
        out.append(SpinPolynomial(ell, alphas))
    return out


def reassemble(n: int, polys: list[SpinPolynomial]) -> np.ndarray:
    total = np.zeros((n + 1, n + 1), dtype=np.complex128)
    for p in polys:
        total += p.operator(n)
    return total
