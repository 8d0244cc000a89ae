import math
import os
import subprocess
import sys

import numpy as np
import pytest

from symqent import kernels

jit = kernels.jit
npk = kernels.numpy_impl
needs_numba = pytest.mark.skipif(jit is None, reason="numba not installed")


def _poly(rng, m):
    return rng.normal(size=m + 1) + 1j * rng.normal(size=m + 1)


@pytest.mark.parametrize("impl", [npk, jit], ids=["numpy", "numba"])
def test_aberth_finds_roots(impl, rng):
    if impl is None:
        pytest.skip("numba not installed")
    for m in (1, 3, 9, 20):
        c = _poly(rng, m)
        z0 = np.exp(1j * (2 * math.pi * np.arange(m) / m + 0.4)).astype(np.complex128)
        z, it, step = impl.aberth(c, z0, 1000, 1e-13)
        assert it < 1000
        ref = np.sort_complex(np.roots(c[::-1]))
        assert np.allclose(np.sort_complex(z), ref, atol=1e-9)


@pytest.mark.parametrize("impl", [npk, jit], ids=["numpy", "numba"])
def test_jacobi(impl, rng):
    if impl is None:
        pytest.skip("numba not installed")
    for dim in (1, 2, 6, 15):
        h = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        h = h + h.conj().T
        w, v, sweeps = impl.jacobi_eigh(h, 1e-14, 100)
        assert np.all(np.diff(w) >= 0)
        assert np.allclose(w, np.linalg.eigvalsh(h), atol=1e-12)
        assert np.allclose(v.conj().T @ v, np.eye(dim), atol=1e-12)


@needs_numba
def test_backends_agree(rng):
    for n in (1, 4, 11):
        op = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        assert np.allclose(jit.sym_power(op, n), npk.sym_power(op, n), rtol=1e-13, atol=1e-13)
        w = _poly(rng, n)
        x = rng.normal(size=50).astype(np.complex128)
        y = rng.normal(size=50) + 1j * rng.normal(size=50)
        assert np.allclose(jit.homogeneous_eval(w, x, y), npk.homogeneous_eval(w, x, y), rtol=1e-13)
        c = _poly(rng, n)
        z0 = np.exp(1j * (2 * math.pi * np.arange(n) / n + 0.4)).astype(np.complex128)
        a = np.sort_complex(jit.aberth(c, z0, 500, 1e-13)[0])
        b = np.sort_complex(npk.aberth(c, z0, 500, 1e-13)[0])
        assert np.allclose(a, b, atol=1e-10)


def test_sym_power_identity():
    for n in (0, 1, 5):
        assert np.allclose(npk.sym_power(np.eye(2, dtype=complex), n), np.eye(n + 1))


@pytest.mark.parametrize("flag,expected", [("1", "numpy"), ("", None)])
def test_env_flag_selects_backend(flag, expected):
    env = dict(os.environ, SYMQENT_DISABLE_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", "from symqent import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True).stdout.strip()
    if expected is None:
        expected = "numba" if jit is not None else "numpy"
    assert out == expected


def test_library_results_independent_of_backend():
    code = ("import math; from symqent import dicke as D, entanglement as E, majorana as M, reduced as R;"
            "s = D.apply_symmetric_op(D.psi_mu(0.4+0.3j), [[1, 0.5], [0.2j, 1]]);"
            "print(repr(E.geometric_measure(s).value), repr(M.canonicalize4(s).mu),"
            " repr(float(R.rho_t(s, 2).eigenvalues[0])))")
    outs = []
    for flag in ("1", "0"):
        env = dict(os.environ, SYMQENT_DISABLE_NUMBA=flag)
        outs.append(subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                                   text=True, check=True).stdout.split())
    for a, b in zip(*outs):
        assert complex(a.strip("()")) == pytest.approx(complex(b.strip("()")), abs=1e-9)
