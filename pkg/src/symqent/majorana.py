"""Majorana constellations, Moebius (SLOCC) action and 4-qubit normal forms.

The Majorana polynomial of a state is P(z) = sum_k (-1)^k sqrt(C(N,k)) d_k z^k.
Each root z corresponds to the qubit state cos(theta/2)|0> + e^{i phi}
sin(theta/2)|1> with z = cot(theta/2) e^{-i phi}; a degree drop of N - M
puts N - M points at the north pole (z = infinity).

A symmetric SLOCC A^{(x)N} with A = [[a, b], [c, d]] moves every root by the
Moebius map z -> (a z + b)/(c z + d).
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .dicke import SymState, apply_symmetric_op, binomials, normalized
from .errors import (CanonicalizationFailure, NotGenericState,
                     NumericalFailure, SingularOperator)

INF = complex(math.inf, 0.0)
DEFLATE_REL = 1e-14
ABERTH_TOL = 1e-13
ABERTH_MAXITER = 1000
ACCEPT_BACKWARD = 1e-10
CLUSTER_TOL = 1e-8
MERGE_CANDIDATE_TOL = 0.25
MERGE_BACKWARD = 1e-11
RECONSTRUCT_TOL = 1e-9
MOEBIUS_DET_TOL = 1e-12

SQRT6 = math.sqrt(6.0)
SQRT23 = math.sqrt(2.0 / 3.0)


def is_inf(z: complex) -> bool:
    return math.isinf(z.real) or math.isinf(z.imag)


def chordal(z: complex, w: complex) -> float:
    """Euclidean distance between the Bloch points of z and w (antipodes: 2)."""
    zi, wi = is_inf(z), is_inf(w)
    if zi and wi:
        return 0.0
    if zi:
        return 2.0 / math.sqrt(1.0 + abs(w) ** 2)
    if wi:
        return 2.0 / math.sqrt(1.0 + abs(z) ** 2)
    return 2.0 * abs(z - w) / math.sqrt((1.0 + abs(z) ** 2) * (1.0 + abs(w) ** 2))


def bloch_angles(z: complex) -> tuple[float, float]:
    if is_inf(z):
        return 0.0, 0.0
    theta = 2.0 * math.atan2(1.0, abs(z))
    phi = (-cmath.phase(z)) % (2 * math.pi) if z != 0 else 0.0
    return theta, phi


def bloch_vector(z: complex) -> np.ndarray:
    if is_inf(z):
        return np.array([0.0, 0.0, 1.0])
    r2 = abs(z) ** 2
    return np.array([2 * z.real, -2 * z.imag, r2 - 1.0]) / (1.0 + r2)


def root_from_angles(theta: float, phi: float) -> complex:
    s = math.sin(theta / 2)
    if s == 0.0:
        return INF
    return complex(math.cos(theta / 2) / s * cmath.exp(-1j * phi))


# -- Moebius maps -------------------------------------------------------------


@dataclass(frozen=True)
class Moebius:
    """z -> (a z + b)/(c z + d) acting on the extended complex plane."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        if abs(self.a * self.d - self.b * self.c) <= MOEBIUS_DET_TOL:
            raise SingularOperator("Moebius map with ad - bc = 0")

    @classmethod
    def from_matrix(cls, m) -> "Moebius":
        m = np.asarray(m, dtype=np.complex128)
        return cls(complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 0]), complex(m[1, 1]))

    @classmethod
    def identity(cls) -> "Moebius":
        return cls(1, 0, 0, 1)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=np.complex128)

    def __call__(self, z: complex) -> complex:
        a, b, c, d = self.a, self.b, self.c, self.d
        if is_inf(z):
            return INF if c == 0 else a / c
        den = c * z + d
        if den == 0:
            return INF
        return (a * z + b) / den

    def __matmul__(self, other: "Moebius") -> "Moebius":
        """(self @ other)(z) = self(other(z))."""
        return Moebius.from_matrix(self.matrix @ other.matrix)

    def inverse(self) -> "Moebius":
        return Moebius(self.d, -self.b, -self.c, self.a)


def rotation_to_north(z: complex) -> Moebius:
    """A unitary Moebius map (rigid rotation) sending root z to infinity."""
    if is_inf(z):
        return Moebius.identity()
    b = 1.0 / math.sqrt(1.0 + abs(z) ** 2)
    a = z.conjugate() * b
    return Moebius(a, b, -b, a.conjugate())


# -- roots --------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MajoranaSet:
    roots: np.ndarray = field(repr=False)
    """N roots, multiplicity expanded, infinity encoded as complex(inf, 0)."""
    clusters: tuple[int, ...] = ()
    labels: np.ndarray = field(default=None, repr=False)
    """labels[i] = cluster index of roots[i]; clusters are in descending size."""
    iterations: int = 0

    @property
    def n(self) -> int:
        return len(self.roots)

    @property
    def diversity(self) -> int:
        return len(self.clusters)

    @property
    def bloch(self) -> np.ndarray:
        return np.array([bloch_angles(z) for z in self.roots]).reshape(-1, 2)

    @property
    def vectors(self) -> np.ndarray:
        return np.array([bloch_vector(z) for z in self.roots]).reshape(-1, 3)

    @property
    def configuration(self) -> str:
        return "D_{" + ",".join(str(m) for m in self.clusters) + "}"

    def points(self) -> list[complex]:
        """One representative root per distinct Majorana point."""
        out = []
        for c in range(self.diversity):
            out.append(complex(self.roots[int(np.argmax(self.labels == c))]))
        return out


def majorana_coefficients(state: SymState) -> np.ndarray:
    """Coefficients of P(z), constant term first."""
    k = np.arange(state.n + 1)
    return (-1.0) ** k * np.sqrt(binomials(state.n)) * state.coeffs


def _backward_error(c: np.ndarray, z: complex) -> float:
    p = np.polyval(c[::-1], z)
    scale = np.polyval(np.abs(c[::-1]), abs(z))
    return abs(p) / scale if scale > 0 else abs(p)


def _derivative(c: np.ndarray, order: int) -> np.ndarray:
    out = c
    for _ in range(order):
        out = out[1:] * np.arange(1, out.size)
    return out


def _newton_polish(c: np.ndarray, z: complex, steps: int = 3) -> complex:
    dc = _derivative(c, 1)
    best, best_err = z, _backward_error(c, z)
    for _ in range(steps):
        dp = np.polyval(dc[::-1], best)
        if dp == 0:
            break
        cand = best - np.polyval(c[::-1], best) / dp
        err = _backward_error(c, cand)
        if err >= best_err:
            break
        best, best_err = cand, err
    return complex(best)


def _union_find(items: int, linked) -> np.ndarray:
    parent = list(range(items))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(items):
        for j in range(i + 1, items):
            if linked(i, j):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    roots = [find(i) for i in range(items)]
    remap = {r: idx for idx, r in enumerate(dict.fromkeys(roots))}
    return np.array([remap[r] for r in roots], dtype=int)


def reconstruction_error(c: np.ndarray, z) -> float:
    """Relative coefficient error of the best multiple of prod (x - z_m)."""
    p = np.poly(np.asarray(z))[::-1]
    lam = np.vdot(p, c) / np.vdot(p, p)
    return float(np.linalg.norm(lam * p - c) / np.linalg.norm(c))


def _find_multiple(c, z, pending, budget):
    """Largest (centre, members) multiple-root candidate, seeded from each
    member's nearest neighbours.  With a finite ``budget`` the merged set
    must also rebuild the coefficients to within it."""
    for m in range(len(pending), 1, -1):
        for seed in pending:
            near = sorted(pending, key=lambda i: (chordal(z[i], z[seed]), i))[:m]
            centre = _newton_polish(_derivative(c, m - 1), complex(np.mean(z[near])), steps=50)
            if not all(_backward_error(_derivative(c, j), centre) < MERGE_BACKWARD for j in range(m)):
                continue
            if budget is not None:
                trial = z.copy()
                trial[near] = centre
                if reconstruction_error(c, trial) > budget:
                    continue
            return centre, near
    return None


def _merge_pass(c, z, groups, conservative):
    out = z.copy()
    for g in np.unique(groups):
        pending = list(np.nonzero(groups == g)[0])
        while len(pending) >= 2:
            budget = max(RECONSTRUCT_TOL, reconstruction_error(c, out)) if conservative else None
            hit = _find_multiple(c, out, pending, budget)
            if hit is None:
                break
            centre, members = hit
            out[members] = centre
            pending = [i for i in pending if i not in members]
    return out


def _merge_multiple(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Snap numerically split multiple roots back onto one point.

    A root of multiplicity m splits by roughly eps^(1/m) in floating point,
    far above the clustering tolerance.  Within each loose group we try the
    largest multiplicity first: refine a centre as a simple root of P^(m-1)
    and accept if P, P', ..., P^(m-1) all vanish there to MERGE_BACKWARD.

    That derivative test is too lenient when the whole constellation sits in
    a small patch of the sphere (the monomial basis is then badly
    conditioned), so the merged set must rebuild the coefficients no worse
    than the raw roots.  If the greedy pass breaks that, a second pass
    admits merges one at a time under the same bound.
    """
    if z.size < 2:
        return z
    groups = _union_find(z.size, lambda i, j: chordal(z[i], z[j]) < MERGE_CANDIDATE_TOL)
    if np.all(np.bincount(groups) == 1):
        return z
    bound = max(RECONSTRUCT_TOL, reconstruction_error(c, z))
    greedy = _merge_pass(c, z, groups, conservative=False)
    if reconstruction_error(c, greedy) <= bound:
        return greedy
    return _merge_pass(c, z, groups, conservative=True)


def _label_clusters(roots: np.ndarray) -> tuple[tuple[int, ...], np.ndarray]:
    raw = _union_find(roots.size, lambda i, j: chordal(roots[i], roots[j]) < CLUSTER_TOL)
    sizes = np.bincount(raw)
    # descending multiplicity, ties by first appearance
    order = sorted(range(sizes.size), key=lambda g: (-sizes[g], int(np.argmax(raw == g))))
    relabel = np.empty(sizes.size, dtype=int)
    relabel[order] = np.arange(sizes.size)
    return tuple(int(sizes[g]) for g in order), relabel[raw]


def polynomial_roots(c: np.ndarray, degree_hint: int | None = None):
    """Roots of sum_k c_k z^k padded with infinities up to ``degree_hint``.

    Returns (roots, iterations).  Exact zero/infinite roots are deflated
    before the Aberth iteration runs on what is left.
    """
    c = np.asarray(c, dtype=np.complex128)
    total = c.size - 1 if degree_hint is None else degree_hint
    scale = np.max(np.abs(c))
    if scale == 0:
        raise NumericalFailure("zero polynomial has no Majorana constellation")
    nz = np.nonzero(np.abs(c) > DEFLATE_REL * scale)[0]
    lo, hi = int(nz[0]), int(nz[-1])
    core = c[lo:hi + 1]
    m = hi - lo
    found = np.empty(0, dtype=np.complex128)
    iters = 0
    if m > 0:
        radius = (abs(core[0]) / abs(core[-1])) ** (1.0 / m)
        angles = 2 * math.pi * np.arange(m) / m + 0.4 + math.pi / (2 * m)
        z0 = radius * np.exp(1j * angles) * (1 + 0.01 * np.arange(m) / m)
        found, iters, step = kernels.aberth(core, z0.astype(np.complex128), ABERTH_MAXITER, ABERTH_TOL)
        found = np.array([_newton_polish(core, complex(z)) for z in found])
        found = _merge_multiple(core, found)
        worst = max(_backward_error(core, z) for z in found)
        if not np.all(np.isfinite(found)) or worst > ACCEPT_BACKWARD:
            raise NumericalFailure(
                f"Aberth iteration did not converge (step {step:.3g}, backward error {worst:.3g})", worst)
    roots = np.concatenate([np.zeros(lo, dtype=np.complex128), found,
                            np.full(total - hi, INF, dtype=np.complex128)])
    return roots, iters


def roots(state: SymState) -> MajoranaSet:
    z, iters = polynomial_roots(majorana_coefficients(state), state.n)
    clusters, labels = _label_clusters(z)
    return MajoranaSet(z, clusters, labels, iters)


def state_from_roots(rts) -> SymState:
    """Symmetric state whose Majorana polynomial has the given roots."""
    if isinstance(rts, MajoranaSet):
        rts = rts.roots
    rts = [complex(z) for z in rts]
    n = len(rts)
    if n < 1:
        raise NumericalFailure("need at least one Majorana point")
    finite = [z for z in rts if not is_inf(z)]
    poly = np.poly(finite)[::-1] if finite else np.ones(1, dtype=np.complex128)
    c = np.zeros(n + 1, dtype=np.complex128)
    c[:poly.size] = poly
    k = np.arange(n + 1)
    d = c * (-1.0) ** k / np.sqrt(binomials(n))
    return normalized(n, d)


def apply_moebius(state: SymState, m: Moebius) -> SymState:
    """Move every Majorana point by ``m`` and rebuild the state."""
    mset = roots(state)
    return state_from_roots([m(complex(z)) for z in mset.roots])


def moebius_as_op(m: Moebius) -> np.ndarray:
    """Single-qubit operator whose N-fold power realizes ``m`` on the roots."""
    return m.matrix


def barycenter(state: SymState) -> tuple[np.ndarray, float]:
    """Mean Bloch vector of the Majorana points and 1 - |mean|^2."""
    v = roots(state).vectors.mean(axis=0)
    return v, float(1.0 - v @ v)


# -- 4-qubit normal forms -------------------------------------------------------


def in_S(mu: complex, tol: float = 0.0) -> bool:
    """Membership in the fundamental domain of inequivalent normal forms."""
    mu = complex(mu)
    if mu.real < -tol or mu.imag < -tol:
        return False
    if abs(mu - SQRT23) > 2 * SQRT23 + tol:
        return False
    if abs(mu.imag) <= tol and not mu.real < SQRT23:
        return False
    return True


def in_S_prime(theta: float, phi: float, tol: float = 0.0) -> bool:
    """Angular version of the domain: pi/4 < theta <= pi/2,
    max(pi/4, arcsin(cot theta)) <= phi < pi/2."""
    if not (math.pi / 4 - tol < theta <= math.pi / 2 + tol):
        return False
    cot = math.cos(theta) / math.sin(theta)
    phi_min = max(math.pi / 4, math.asin(min(1.0, cot)))
    return phi_min - tol <= phi < math.pi / 2 + tol


MU_MAPS = {
    "U1": Moebius(-1, 0, 0, 1),
    "U2": Moebius(-2, 2 * SQRT6, SQRT6, 2),
    "U3": Moebius(2, 2 * SQRT6, SQRT6, -2),
}
"""Action on mu of the symmetric local unitaries preserving the normal form."""

LOCAL_UNITARIES = {
    "U1": np.array([[1, 0], [0, 1j]]),
    "U2": np.array([[1, 1], [1, -1]]) / math.sqrt(2),
    "U3": np.array([[1, 1j], [1j, 1]]) / math.sqrt(2),
}

ORBIT_DEPTH = 4


def mu_orbit(mu: complex, depth: int = ORBIT_DEPTH, tol: float = 1e-9) -> list[tuple[complex, tuple[str, ...]]]:
    """Distinct images of mu under words of length <= depth, shortest first."""
    seen: list[tuple[complex, tuple[str, ...]]] = [(complex(mu), ())]
    for length in range(1, depth + 1):
        for word in itertools.product(MU_MAPS, repeat=length):
            val = complex(mu)
            for name in word:
                val = MU_MAPS[name](val)
            if is_inf(val):
                continue
            if all(abs(val - v) > tol * (1 + abs(v)) for v, _ in seen):
                seen.append((val, word))
    return seen


@dataclass(frozen=True)
class MuCanonical:
    mu: complex
    in_S: bool
    transform_log: tuple[tuple[str, str], ...] = ()
    moebius: Moebius | None = None
    """Total map (rotation, M1, M2) taking the input constellation to psi_mu
    before the orbit step."""


def m1_map(z1: complex, z2: complex) -> Moebius:
    """z -> (z - z1)/(z2 - z1): z1 -> 0, z2 -> 1, infinity fixed."""
    return Moebius(1, -z1, 0, z2 - z1)


def m2_map(z0: complex) -> Moebius:
    """Sends 0 -> z0, 1 -> -z0, infinity -> 1/z0."""
    s = z0 + 1 / z0
    return Moebius(2, -z0 * s, 2 * z0, -s)


def _snap(mu: complex, tol: float) -> complex:
    re = 0.0 if abs(mu.real) <= tol else mu.real
    im = 0.0 if abs(mu.imag) <= tol else mu.imag
    return complex(re, im)


def reduce_to_S(mu: complex, tol: float = 1e-9) -> tuple[complex, tuple[str, ...]]:
    """Pick the orbit element of mu lying in S (lexicographic tie-break)."""
    cands = [(v, w) for v, w in mu_orbit(mu) if in_S(v, tol)]
    if not cands:
        raise CanonicalizationFailure(f"no image of mu={mu:.6g} inside S within depth {ORBIT_DEPTH}")
    v, w = min(cands, key=lambda vw: (round(vw[0].real, 9), round(vw[0].imag, 9)))
    return _snap(v, tol), w


def _north_pole_choice(points: list[complex]) -> int:
    def key(i):
        others = [chordal(points[i], points[j]) for j in range(len(points)) if j != i]
        z = points[i]
        mag = math.inf if is_inf(z) else abs(z)
        ph = 0.0 if is_inf(z) else cmath.phase(z)
        return (round(min(others), 12), mag, ph)

    return max(range(len(points)), key=key)


def canonicalize4(state: SymState, tol: float = 1e-9) -> MuCanonical:
    """SLOCC normal form psi_mu, mu in S, of a 4-qubit state with four
    distinct Majorana points."""
    if state.n != 4:
        raise NotGenericState(f"canonicalization is defined for 4 qubits, got {state.n}")
    mset = roots(state)
    if mset.diversity != 4:
        raise NotGenericState(f"configuration {mset.configuration} is not D_{{1,1,1,1}}")
    pts = [complex(z) for z in mset.roots]
    log: list[tuple[str, str]] = []

    north = _north_pole_choice(pts)
    rot = rotation_to_north(pts[north])
    log.append(("rotation", f"Majorana point {north} to the north pole"))
    rest = [rot(z) for i, z in enumerate(pts) if i != north]
    z1, z2, z3 = rest
    if any(is_inf(z) for z in rest):
        raise NotGenericState("two Majorana points coincide at the north pole")
    m1 = m1_map(z1, z2)
    zt3 = m1(z3)
    if is_inf(zt3) or abs(zt3) < 1e-12 or abs(zt3 - 1) < 1e-12:
        raise NotGenericState("degenerate cross-ratio")
    log.append(("M1", f"z1={z1:.17g}, z2={z2:.17g}"))

    results = []
    delta0 = cmath.sqrt(zt3 * (zt3 - 1))
    for delta in (delta0, -delta0):
        z0 = cmath.sqrt(2 * zt3 - 1 + 2 * delta)
        m2 = m2_map(z0)
        total = m2 @ m1 @ rot
        mu_roots = -(z0 ** 2 + z0 ** -2) / SQRT6
        img = apply_symmetric_op(state, total.matrix).coeffs
        if abs(img[1]) + abs(img[3]) + abs(img[0] - img[4]) > 1e-6 * abs(img[0]):
            raise NumericalFailure("transformed state is not of the psi_mu form")
        mu_read = img[2] / img[0]
        if abs(mu_read - mu_roots) > 1e-6 * (1 + abs(mu_roots)):
            raise NumericalFailure(
                f"normal-form readouts disagree: {mu_read:.9g} vs {mu_roots:.9g}",
                abs(mu_read - mu_roots))
        mu_s, word = reduce_to_S(mu_roots, tol)
        results.append((mu_s, word, z0, total))
    (mu_a, word, z0, total), (mu_b, *_rest) = results
    if abs(mu_a - mu_b) > 1e-7 * (1 + abs(mu_a)):
        raise NumericalFailure(f"square-root branches disagree: {mu_a} vs {mu_b}", abs(mu_a - mu_b))
    log.append(("M2", f"z0={z0:.17g}"))
    log.append(("orbit", " ".join(word) if word else "identity"))
    return MuCanonical(mu_a, in_S(mu_a, tol), tuple(log), total)
