"""Brute-force reference implementations on the full 2**N space.

Nothing here uses the Dicke-basis shortcuts of the other modules: states
are expanded into all bitstrings, operators act qubit by qubit, and
reductions are literal partial traces.  Intended for N <= 10 or so.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from .dicke import DEFAULT_MAX_QUBITS, SymState, expand_full
from .errors import DimensionMismatch

SIGMA_Y = np.array([[0, -1j], [1j, 0]])
# one-qubit spin in the Dicke convention: |0> has s_z = -1/2, s_+ |0> = |1>
S_PLUS_1 = np.array([[0, 0], [1, 0]], dtype=np.complex128)
S_Z_1 = np.diag([-0.5, 0.5]).astype(np.complex128)


def full_vector(state: SymState, max_qubits: int = DEFAULT_MAX_QUBITS) -> np.ndarray:
    return expand_full(state, max_qubits).amps


def dicke_vector(n: int, k: int) -> np.ndarray:
    """|D_n^k> written out bit by bit (qubit 0 is the most significant bit)."""
    v = np.zeros(2 ** n, dtype=np.complex128)
    for ones in itertools.combinations(range(n), k):
        v[sum(1 << (n - 1 - q) for q in ones)] = 1.0
    return v / math.sqrt(math.comb(n, k))


def project_symmetric(v: np.ndarray, n: int) -> np.ndarray:
    """Dicke coefficients <D_n^k|v>."""
    return np.array([np.vdot(dicke_vector(n, k), v) for k in range(n + 1)])


def apply_each_qubit(v: np.ndarray, op, n: int) -> np.ndarray:
    """op applied to every qubit of a 2**n vector, one tensor leg at a time."""
    op = np.asarray(op, dtype=np.complex128)
    t = v.reshape((2,) * n)
    for q in range(n):
        t = np.moveaxis(np.tensordot(op, t, axes=([1], [q])), 0, q)
    return t.reshape(-1)


def partial_trace(state: SymState, t: int) -> np.ndarray:
    """rho_t[q, l] = <D_t^q| tr_{last N-t qubits} |psi><psi| |D_t^l>."""
    n = state.n
    if not 1 <= t <= n - 1:
        raise DimensionMismatch(f"t={t} outside 1..{n - 1}")
    m = full_vector(state).reshape(2 ** t, 2 ** (n - t))
    rho = m @ m.conj().T
    basis = np.array([dicke_vector(t, q) for q in range(t + 1)])
    return basis.conj() @ rho @ basis.T


def slocc(state: SymState, op) -> np.ndarray:
    """Unnormalized Dicke coefficients of op^(x)N |psi>."""
    n = state.n
    return project_symmetric(apply_each_qubit(full_vector(state), op, n), n)


def collective(op1: np.ndarray, n: int) -> np.ndarray:
    """sum_i op1 acting on qubit i, as a dense 2**n matrix."""
    eye = np.eye(2, dtype=np.complex128)
    total = np.zeros((2 ** n, 2 ** n), dtype=np.complex128)
    for i in range(n):
        term = np.array([[1.0 + 0j]])
        for j in range(n):
            term = np.kron(term, op1 if j == i else eye)
        total += term
    return total


def spin_expectation(state: SymState, word: str) -> complex:
    """<psi| product of collective operators |psi>, word over 'z', '+', '-'."""
    n = state.n
    mats = {"z": collective(S_Z_1, n), "+": collective(S_PLUS_1, n),
            "-": collective(S_PLUS_1.conj().T, n)}
    v = full_vector(state)
    w = v.copy()
    for ch in reversed(word):
        w = mats[ch] @ w
    return complex(np.vdot(v, w))


def coherent_overlap(state: SymState, theta: float, phi: float) -> complex:
    """<Phi(theta, phi)|psi> with the product state built qubit by qubit."""
    single = np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)])
    prod = np.array([1.0 + 0j])
    for _ in range(state.n):
        prod = np.kron(prod, single)
    return complex(np.vdot(prod, full_vector(state)))


def tangle(state: SymState) -> float:
    """|<psi| sigma_y^(x)N |psi*>|^4 evaluated on the full space."""
    v = full_vector(state)
    flipped = apply_each_qubit(v.conj(), SIGMA_Y, state.n)
    return abs(np.vdot(v, flipped)) ** 4
