"""Pure-numpy versions of the compiled kernels (same signatures as ``_jit``)."""
import math

import numpy as np


def aberth(coeffs, z0, maxiter, tol):
    # Jacobi-style sweep: all corrections from the same iterate.
    m = coeffs.shape[0] - 1
    z = np.array(z0, dtype=np.complex128)
    poly = coeffs[::-1]
    dpoly = (coeffs[1:] * np.arange(1, m + 1))[::-1]
    it = 0
    max_step = np.inf
    eye = np.eye(m, dtype=bool)
    while it < maxiter:
        it += 1
        p = np.polyval(poly, z)
        dp = np.polyval(dpoly, z)
        diff = z[:, None] - z[None, :]
        diff[eye] = 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            inv = np.where(diff == 0, 0.0, 1.0 / diff)
        inv[eye] = 0.0
        s = inv.sum(axis=1)
        denom = dp - p * s
        safe = denom != 0
        step = np.zeros_like(z)
        step[safe] = p[safe] / denom[safe]
        z = z - step
        max_step = float(np.max(np.abs(step) / (1.0 + np.abs(z)))) if m else 0.0
        if max_step < tol:
            break
    return z, it, max_step


def jacobi_eigh(a, tol, max_sweeps):
    a = np.array(a, dtype=np.complex128)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    fro = max(np.linalg.norm(a), 1e-300)
    sweeps = 0
    iu = np.triu_indices(n, 1)
    for _ in range(max_sweeps):
        if math.sqrt(2.0 * np.sum(np.abs(a[iu]) ** 2)) <= tol * fro:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                ag = abs(g)
                if ag == 0.0:
                    continue
                ph = g / ag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * ag)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rot = np.array([[c, s * ph], [-s * np.conj(ph), c]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ rot
    w = a.diagonal().real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order], sweeps


def _binomials(n):
    return np.array([math.comb(n, k) for k in range(n + 1)], dtype=float)


def sym_power(op, n):
    a, b = op[0, 0], op[0, 1]
    c, d = op[1, 0], op[1, 1]
    out = np.zeros((n + 1, n + 1), dtype=np.complex128)
    for k in range(n + 1):
        i = np.arange(n - k + 1)
        u = _binomials(n - k) * a ** (n - k - i) * c ** i
        j = np.arange(k + 1)
        w = _binomials(k) * b ** (k - j) * d ** j
        out[:, k] = np.convolve(u, w)
    sq = np.sqrt(_binomials(n))
    return out * sq[None, :] / sq[:, None]


def homogeneous_eval(w, x, y):
    n = w.shape[0] - 1
    k = np.arange(n + 1)
    x = np.asarray(x, dtype=np.complex128)[:, None]
    y = np.asarray(y, dtype=np.complex128)[:, None]
    return (x ** (n - k) * y ** k) @ np.asarray(w, dtype=np.complex128)
