"""numba-compiled inner loops.

Every function here has a twin with the same signature in ``_numpy``;
``symqent.kernels`` picks one of the two at import time.
"""
import math

import numpy as np
from numba import njit

_opts = dict(cache=True, nogil=True)


@njit(**_opts)
def _binomial_row(n):
    row = np.empty(n + 1)
    row[0] = 1.0
    for k in range(1, n + 1):
        row[k] = row[k - 1] * (n - k + 1) / k
    return row


@njit(**_opts)
def aberth(coeffs, z0, maxiter, tol):
    """Simultaneous Aberth-Ehrlich iteration (Gauss-Seidel sweep order).

    ``coeffs`` run from the constant term upwards; both the constant and
    the leading coefficient must be nonzero.
    """
    m = coeffs.shape[0] - 1
    z = z0.copy()
    dcoeffs = np.empty(m, dtype=np.complex128)
    for k in range(1, m + 1):
        dcoeffs[k - 1] = k * coeffs[k]
    it = 0
    max_step = np.inf
    while it < maxiter:
        it += 1
        max_step = 0.0
        for i in range(m):
            zi = z[i]
            p = coeffs[m]
            for k in range(m - 1, -1, -1):
                p = p * zi + coeffs[k]
            dp = dcoeffs[m - 1]
            for k in range(m - 2, -1, -1):
                dp = dp * zi + dcoeffs[k]
            s = 0.0 + 0.0j
            for j in range(m):
                if j != i:
                    diff = zi - z[j]
                    if diff != 0:
                        s += 1.0 / diff
            denom = dp - p * s
            if denom == 0:
                continue
            step = p / denom
            z[i] = zi - step
            rel = abs(step) / (1.0 + abs(z[i]))
            if rel > max_step:
                max_step = rel
        if max_step < tol:
            break
    return z, it, max_step


@njit(**_opts)
def jacobi_eigh(a, tol, max_sweeps):
    """Cyclic Jacobi for a complex Hermitian matrix.

    Returns ascending eigenvalues, the unitary of eigenvectors (columns)
    and the number of sweeps used.
    """
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n, dtype=np.complex128)
    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += abs(a[i, j]) ** 2
    fro = math.sqrt(fro)
    sweeps = 0
    for sweep in range(max_sweeps):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += 2.0 * abs(a[i, j]) ** 2
        if math.sqrt(off) <= tol * max(fro, 1e-300):
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
                if tau >= 0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # J acts on columns p, q: J_pp = J_qq = c, J_pq = s*ph, J_qp = -s*conj(ph)
                jpq = s * ph
                jqp = -s * np.conj(ph)
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp * c + akq * jqp
                    a[k, q] = akp * jpq + akq * c
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk + np.conj(jqp) * aqk
                    a[q, k] = np.conj(jpq) * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = vkp * c + vkq * jqp
                    v[k, q] = vkp * jpq + vkq * c
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    order = np.argsort(w)
    return w[order], v[:, order], sweeps


@njit(**_opts)
def sym_power(op, n):
    """Matrix of op^{(x)n} restricted to the Dicke basis.

    Column k holds the image of |D_n^(k)>, obtained by expanding
    (a x + c y)^(n-k) (b x + d y)^k.
    """
    a = op[0, 0]
    b = op[0, 1]
    c = op[1, 0]
    d = op[1, 1]
    out = np.zeros((n + 1, n + 1), dtype=np.complex128)
    rows = [_binomial_row(m) for m in range(n + 1)]
    sq = np.sqrt(rows[n])
    for k in range(n + 1):
        u = np.zeros(n - k + 1, dtype=np.complex128)
        r1 = rows[n - k]
        for i in range(n - k + 1):
            u[i] = r1[i] * a ** (n - k - i) * c ** i
        w = np.zeros(k + 1, dtype=np.complex128)
        r2 = rows[k]
        for i in range(k + 1):
            w[i] = r2[i] * b ** (k - i) * d ** i
        for i in range(n - k + 1):
            for j in range(k + 1):
                out[i + j, k] += u[i] * w[j]
        for j in range(n + 1):
            out[j, k] *= sq[k] / sq[j]
    return out


@njit(**_opts)
def homogeneous_eval(w, x, y):
    """Evaluate sum_k w_k x^(N-k) y^k pointwise over flat arrays x, y."""
    npts = x.shape[0]
    nk = w.shape[0]
    out = np.empty(npts, dtype=np.complex128)
    for i in range(npts):
        xi = x[i]
        yi = y[i]
        acc = w[0] + 0.0j
        yk = 1.0 + 0.0j
        for k in range(1, nk):
            yk = yk * yi
            acc = acc * xi + w[k] * yk
        out[i] = acc
    return out
