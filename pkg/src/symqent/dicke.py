"""Pure symmetric N-qubit states in the Dicke basis.

A state is stored as its N+1 Dicke amplitudes d_0..d_N, where d_k multiplies
the normalized symmetric state with k excitations.  Construction always
normalizes and fixes the global phase so that the first nonzero amplitude is
real and positive; two states are equal iff their coefficient arrays agree.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import kernels
from .errors import (DimensionMismatch, InvalidState, SingularOperator,
                     SizeLimitExceeded)

RENORM_WARN = 1e-6
NORM_TOL = 1e-12
PHASE_EPS = 1e-10
DEFAULT_MAX_QUBITS = 14
SINGULAR_TOL = 1e-12


class RenormalizationWarning(UserWarning):
    """Input amplitudes were noticeably off unit norm and got rescaled."""


@lru_cache(maxsize=None)
def binomials(n: int) -> np.ndarray:
    """Row n of Pascal's triangle as float64 (read-only, cached)."""
    row = np.array([math.comb(n, k) for k in range(n + 1)], dtype=float)
    row.setflags(write=False)
    return row


def binom(n: int, k: int) -> int:
    """C(n, k) with the zero convention outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def _fix_phase(c: np.ndarray) -> np.ndarray:
    mags = np.abs(c)
    idx = int(np.argmax(mags > PHASE_EPS * mags.max()))
    z = c[idx]
    return c * (abs(z) / z)


@dataclass(frozen=True, eq=False)
class SymState:
    """Normalized pure symmetric state of ``n`` qubits.

    Build through :func:`make_state` or :func:`catalog`; the constructor
    itself does not normalize.
    """

    n: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def dim(self) -> int:
        return self.n + 1

    def inner(self, other: "SymState") -> complex:
        """<self|other>."""
        if other.n != self.n:
            raise DimensionMismatch(f"{self.n} vs {other.n} qubits")
        return complex(np.vdot(self.coeffs, other.coeffs))

    def fidelity(self, other: "SymState") -> float:
        return abs(self.inner(other)) ** 2

    def allclose(self, other: "SymState", atol: float = 1e-12) -> bool:
        return other.n == self.n and bool(np.allclose(self.coeffs, other.coeffs, rtol=0, atol=atol))

    def __repr__(self):
        amps = ", ".join(f"{z.real:.6g}{z.imag:+.6g}j" for z in self.coeffs)
        return f"SymState(n={self.n}, coeffs=[{amps}])"


@dataclass(frozen=True, eq=False)
class FullStateVector:
    """Computational-basis amplitudes; bitstrings in lexicographic order,
    qubit 0 being the most significant bit."""

    n: int
    amps: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class SingleQubitOp:
    """2x2 operator with ``op|0> = a|0> + c|1>`` and ``op|1> = b|0> + d|1>``."""

    a: complex
    b: complex
    c: complex
    d: complex

    @classmethod
    def from_matrix(cls, m) -> "SingleQubitOp":
        m = np.asarray(m, dtype=np.complex128)
        if m.shape != (2, 2):
            raise DimensionMismatch(f"expected a 2x2 matrix, got shape {m.shape}")
        return cls(complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 0]), complex(m[1, 1]))

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=np.complex128)

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def is_unitary(self, tol: float = 1e-12) -> bool:
        m = self.matrix
        return bool(np.allclose(m.conj().T @ m, np.eye(2), rtol=0, atol=tol))


def _as_op(op) -> SingleQubitOp:
    if isinstance(op, SingleQubitOp):
        return op
    return SingleQubitOp.from_matrix(op)


def normalized(n: int, c) -> SymState:
    """Normalize and phase-fix without the input checks of :func:`make_state`."""
    c = np.asarray(c, dtype=np.complex128)
    c = _fix_phase(c / np.linalg.norm(c))
    return SymState(n, c / np.linalg.norm(c))


def make_state(n: int, raw: Sequence[complex]) -> SymState:
    """Normalize ``raw`` into a :class:`SymState` of ``n`` qubits.

    A :class:`RenormalizationWarning` is emitted when the input norm is off
    by more than 1e-6; exactly normalized input passes through silently.
    """
    if int(n) != n or n < 1:
        raise DimensionMismatch(f"qubit count must be a positive integer, got {n!r}")
    n = int(n)
    c = np.asarray(raw, dtype=np.complex128).reshape(-1)
    if c.size != n + 1:
        raise DimensionMismatch(f"{n} qubits need {n + 1} Dicke amplitudes, got {c.size}")
    if not np.all(np.isfinite(c)):
        raise InvalidState("non-finite amplitude")
    norm = float(np.linalg.norm(c))
    if norm == 0.0 or norm < 1e-150:
        raise InvalidState("zero vector is not a state")
    if abs(norm - 1.0) > RENORM_WARN:
        warnings.warn(f"input norm {norm:.9g} renormalized to 1", RenormalizationWarning, stacklevel=2)
    return normalized(n, c)


def dicke(n: int, k: int) -> SymState:
    if not 0 <= k <= n:
        raise DimensionMismatch(f"excitation number {k} outside 0..{n}")
    c = np.zeros(n + 1, dtype=np.complex128)
    c[k] = 1.0
    return SymState(n, c)


def ghz(n: int) -> SymState:
    if n < 2:
        raise DimensionMismatch("GHZ needs at least 2 qubits")
    c = np.zeros(n + 1, dtype=np.complex128)
    c[0] = c[n] = 1.0
    return normalized(n, c)


def psi_mu(mu: complex) -> SymState:
    """Four-qubit normal form (|D0> + mu|D2> + |D4>)/sqrt(2 + |mu|^2)."""
    return normalized(4, [1.0, 0.0, complex(mu), 0.0, 1.0])


TETRAHEDRON_MU = 1j * math.sqrt(2.0)


def p_state(n: int, alpha: complex = 1.0) -> SymState:
    """sqrt(N-2)*alpha^(N-1)|D0> + sqrt(N)|D_{N-1}>, normalized (alpha=1: MES)."""
    if n < 2:
        raise DimensionMismatch("P_N is defined for N >= 2")
    if alpha == 0:
        raise InvalidState("alpha must be nonzero")
    c = np.zeros(n + 1, dtype=np.complex128)
    c[0] = complex(alpha) ** (n - 1) * math.sqrt(n - 2)
    c[n - 1] += math.sqrt(n)
    return normalized(n, c)


def chi_state(n: int) -> SymState:
    """Maximal-barycentric state built from an equilateral triangle on the
    phi=0 meridian plus a regular (N-3)-gon on the equator.

    Terms landing on the same Dicke index are summed; for N = 3 they cancel
    completely and :class:`InvalidState` is raised.
    """
    if n <= 2:
        raise DimensionMismatch("chi_N needs N > 2")
    c = np.zeros(n + 1, dtype=np.complex128)
    c[0] += math.sqrt(math.comb(n, 2) / 3.0)
    c[2] += -math.sqrt(3.0)
    c[n - 3] += (-1) ** n / math.sqrt(n - 2)
    c[n - 1] += (-1) ** (n + 1) * math.sqrt((3 * n - 3) / 2.0)
    if np.linalg.norm(c) < 1e-12:
        raise InvalidState(f"chi_{n} amplitudes cancel to the zero vector")
    return normalized(n, c)


CATALOG_ARITY = {
    "bell": 0,
    "ghz": 0,
    "dicke": 1,
    "psi_mu": 1,
    "tetrahedron": 0,
    "p_n": 0,
    "chi_n": 0,
    "p_n_alpha": 1,
}


def catalog(name: str, n: int, params: Sequence[complex] | None = None) -> SymState:
    """Named states.

    ``bell`` is (|00> + |11>)/sqrt(2); ``dicke`` takes the excitation number
    as its single (real, integral) parameter.
    """
    params = list(params or [])
    key = name.lower()
    if key not in CATALOG_ARITY:
        raise InvalidState(f"unknown state name {name!r}; known: {', '.join(CATALOG_ARITY)}")
    if len(params) != CATALOG_ARITY[key]:
        raise InvalidState(f"{key} takes {CATALOG_ARITY[key]} parameter(s), got {len(params)}")
    if key == "bell":
        if n != 2:
            raise DimensionMismatch("bell requires n = 2")
        return ghz(2)
    if key == "ghz":
        return ghz(n)
    if key == "dicke":
        k = complex(params[0])
        if k.imag != 0 or k.real != int(k.real):
            raise InvalidState(f"dicke excitation must be an integer, got {params[0]!r}")
        return dicke(n, int(k.real))
    if key in ("psi_mu", "tetrahedron"):
        if n != 4:
            raise DimensionMismatch(f"{key} requires n = 4")
        return psi_mu(params[0] if key == "psi_mu" else TETRAHEDRON_MU)
    if key == "p_n":
        return p_state(n)
    if key == "p_n_alpha":
        return p_state(n, complex(params[0]))
    return chi_state(n)


def random_state(n: int, rng: np.random.Generator) -> SymState:
    """Haar-random symmetric state (complex Gaussian, normalized)."""
    c = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    return normalized(n, c)


def random_unitary(rng: np.random.Generator) -> np.ndarray:
    z = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@lru_cache(maxsize=32)
def _hamming_weights(n: int) -> np.ndarray:
    idx = np.arange(2 ** n, dtype=np.int64)
    w = np.zeros_like(idx)
    for b in range(n):
        w += (idx >> b) & 1
    w.setflags(write=False)
    return w


def expand_full(state: SymState, max_qubits: int = DEFAULT_MAX_QUBITS) -> FullStateVector:
    """Spread the Dicke amplitudes over all 2**n bitstrings.

    A bitstring of Hamming weight k receives d_k / sqrt(C(n, k)).
    """
    n = state.n
    if n > max_qubits:
        raise SizeLimitExceeded(f"{n} qubits exceeds the full-expansion guard of {max_qubits}")
    w = _hamming_weights(n)
    amps = (state.coeffs / np.sqrt(binomials(n)))[w]
    return FullStateVector(n, amps)


def symmetric_power(op, n: int) -> np.ndarray:
    """(n+1)x(n+1) matrix of op^{(x)n} on the symmetric subspace."""
    m = _as_op(op).matrix
    return kernels.sym_power(m, n)


def apply_symmetric_op(state: SymState, op) -> SymState:
    """Apply op to every qubit and renormalize.

    Works on the homogeneous polynomial sum_k sqrt(C(N,k)) d_k x^(N-k) y^k
    by substituting x -> a x + c y, y -> b x + d y.
    """
    op = _as_op(op)
    if abs(op.det) <= SINGULAR_TOL:
        raise SingularOperator(f"|det| = {abs(op.det):.3g} <= {SINGULAR_TOL}")
    new = symmetric_power(op, state.n) @ state.coeffs
    norm = np.linalg.norm(new)
    if norm == 0 or not np.isfinite(norm):
        raise InvalidState("operator annihilated the state")
    return SymState(state.n, _fix_phase(new / norm))


# -- JSON state files --------------------------------------------------------


def _pair(z: complex) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _unpair(p) -> complex:
    if isinstance(p, (int, float)):
        return complex(p)
    if not isinstance(p, (list, tuple)) or len(p) != 2:
        raise InvalidState(f"complex numbers are [re, im] pairs, got {p!r}")
    re, im = p
    if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in (re, im)):
        raise InvalidState(f"non-numeric complex pair {p!r}")
    return complex(float(re), float(im))


def state_to_json(state: SymState) -> dict:
    return {"n": state.n, "dicke": [_pair(z) for z in state.coeffs]}


def named_to_json(name: str, n: int, params: Sequence[complex] = ()) -> dict:
    return {"named": name, "n": n, "params": [_pair(p) for p in params]}


def state_from_json(obj) -> SymState:
    """Parse either the explicit ``dicke`` form or the ``named`` form."""
    if not isinstance(obj, dict) or "n" not in obj:
        raise InvalidState("state JSON must be an object with an 'n' field")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise InvalidState(f"'n' must be an integer, got {n!r}")
    if "dicke" in obj:
        raw = obj["dicke"]
        if not isinstance(raw, list):
            raise InvalidState("'dicke' must be a list of [re, im] pairs")
        return make_state(n, [_unpair(p) for p in raw])
    if "named" in obj:
        params = obj.get("params", [])
        if not isinstance(params, list):
            raise InvalidState("'params' must be a list")
        return catalog(str(obj["named"]), n, [_unpair(p) for p in params])
    raise InvalidState("state JSON needs either 'dicke' or 'named'")
