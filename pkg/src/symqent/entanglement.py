"""Entanglement measures of symmetric states: geometric (GME), barycentric
(BME) and the generalized N-tangle."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .dicke import SymState, binomials
from .errors import NotCovered, Unsupported
from .husimi import husimi_eval
from .majorana import MU_MAPS, barycenter

SQRT23 = math.sqrt(2.0 / 3.0)


@dataclass(frozen=True)
class GmeConfig:
    """Coarse grid on the sphere, then Nelder-Mead from the best cells."""

    n_theta: int = 64
    n_phi: int = 128
    starts: int = 12
    xatol: float = 1e-12
    fatol: float = 1e-12
    maxiter: int = 500


@dataclass(frozen=True)
class StartReport:
    theta0: float
    phi0: float
    grid_value: float
    refined_value: float
    iterations: int


@dataclass(frozen=True)
class GmeResult:
    value: float
    argmax: tuple[float, float]
    overlap: float
    starts: tuple[StartReport, ...] = field(default=(), repr=False)

    @property
    def grid_spread(self) -> float:
        """Spread of the refined maxima across starts (0 when all agree)."""
        vals = [s.refined_value for s in self.starts]
        return max(vals) - min(vals) if vals else 0.0


def _wrap(theta: float, phi: float) -> tuple[float, float]:
    """Map any (theta, phi) onto theta in [0, pi], phi in [0, 2pi).

    Phi(-theta, phi) equals Phi(theta, phi + pi) up to a global sign, so the
    unconstrained optimizer can wander past the poles freely.
    """
    theta = math.remainder(theta, 2 * math.pi)
    if theta < 0:
        theta, phi = -theta, phi + math.pi
    if theta == 0.0 or theta == math.pi:
        phi = 0.0
    return theta, phi % (2 * math.pi)


def _objective(state: SymState):
    n = state.n
    w = np.sqrt(binomials(n)) * state.coeffs
    k = np.arange(n + 1)
    nk = n - k

    def neg_h(x):
        c, s = math.cos(x[0] / 2), math.sin(x[0] / 2)
        y = s * complex(math.cos(x[1]), -math.sin(x[1]))
        val = np.dot(w, c ** nk * y ** k)
        return -(val.real ** 2 + val.imag ** 2)

    return neg_h


def geometric_measure(state: SymState, cfg: GmeConfig | None = None) -> GmeResult:
    """E_G = 1 - max over symmetric product states of |<Phi|psi>|^2."""
    cfg = cfg or GmeConfig()
    theta = (np.arange(cfg.n_theta) + 0.5) * math.pi / cfg.n_theta
    phi = 2 * math.pi * np.arange(cfg.n_phi) / cfg.n_phi
    th, ph = np.meshgrid(theta, phi, indexing="ij")
    grid = husimi_eval(state, th, ph)
    flat = np.argsort(-grid, axis=None, kind="stable")[:cfg.starts]
    f = _objective(state)
    reports = []
    best = None
    for idx in flat:
        i, j = np.unravel_index(idx, grid.shape)
        x0 = np.array([theta[i], phi[j]])
        res = minimize(f, x0, method="Nelder-Mead",
                       options={"xatol": cfg.xatol, "fatol": cfg.fatol, "maxiter": cfg.maxiter,
                                "initial_simplex": np.array([x0, x0 + [0.05, 0], x0 + [0, 0.05]])})
        t, p = _wrap(float(res.x[0]), float(res.x[1]))
        val = husimi_eval(state, t, p)
        reports.append(StartReport(float(theta[i]), float(phi[j]), float(grid[i, j]), val, int(res.nit)))
        key = (val, -t, -p)
        if best is None or key > best[0]:
            best = (key, t, p, val)
    _, t, p, val = best
    return GmeResult(1.0 - val, (t, p), val, tuple(reports))


# -- closed forms for psi_mu ---------------------------------------------------


def _gme_disc(mu: complex) -> float:
    a = abs(mu) ** 2
    return (1 + a) / (2 + a)


def _gme_imaginary(mu: complex) -> float:
    a = abs(mu) ** 2
    return 1 - (2 + 3 * a) ** 2 / (24 * a * (2 + a))


def _orbit6(mu: complex) -> list[tuple[complex, str]]:
    """The six images of mu under the local unitaries that keep the psi_mu
    form (a copy of S3), each tagged with its word."""
    out = [(complex(mu), "")]
    frontier = list(out)
    while frontier:
        nxt = []
        for v, w in frontier:
            for name, m in MU_MAPS.items():
                u = m(v)
                if math.isinf(u.real) or math.isinf(u.imag):
                    continue
                if all(abs(u - x) > 1e-12 * (1 + abs(x)) for x, _ in out):
                    out.append((u, (w + " " + name).strip()))
                    nxt.append(out[-1])
        frontier = nxt
    return out


def gme_psi_mu_closed_form(mu: complex, tol: float = 1e-10) -> float:
    """Closed-form E_G(psi_mu) where one is known.

    Known loci: |mu| <= sqrt(2/3), and the imaginary axis beyond it.  E_G is
    unchanged along the six-element orbit of mu, so the formulas also reach
    every mu whose orbit meets those loci; inside the fundamental domain
    that adds the two boundary arcs through the tetrahedron point i sqrt(2).
    """
    mu = complex(mu)
    for v, _ in _orbit6(mu):
        if abs(v) <= SQRT23 + tol:
            return _gme_disc(v)
    for v, _ in _orbit6(mu):
        if abs(v.real) <= tol * (1 + abs(v)):
            return _gme_imaginary(complex(0.0, v.imag))
    raise NotCovered(f"no closed-form GME for mu={mu:.6g}; use geometric_measure")


def covered_locus(mu: complex, tol: float = 1e-10) -> str | None:
    """Name of the closed-form locus mu falls on, or None."""
    mu = complex(mu)
    if abs(mu) <= SQRT23 + tol:
        return "disc"
    if abs(mu.real) <= tol * (1 + abs(mu)):
        return "imaginary-axis"
    if abs(abs(mu + SQRT23) - 2 * SQRT23) <= tol:
        return "inner-arc"
    if abs(abs(mu - SQRT23) - 2 * SQRT23) <= tol:
        return "outer-arc"
    try:
        gme_psi_mu_closed_form(mu, tol)
    except NotCovered:
        return None
    return "orbit"


# -- barycentric measure and N-tangle ------------------------------------------


def barycentric_measure(state: SymState) -> float:
    """E_B = 1 - |mean Bloch vector of the Majorana points|^2."""
    _, eb = barycenter(state)
    return eb


@dataclass(frozen=True)
class TangleResult:
    value: float
    amplitude: complex
    """<psi|sigma_y^(x)N|psi*> up to the global factor i^N."""


def n_tangle(state: SymState) -> TangleResult:
    """|<psi|sigma_y^(x)N|psi*>|^4 for even N.

    sigma_y^(x)N sends a basis string b of weight k to i^N (-1)^k times its
    complement, so on Dicke amplitudes the overlap is sum_k (-1)^k d_k d_{N-k}
    up to the unit factor i^N.
    """
    n = state.n
    if n % 2:
        raise Unsupported(f"N-tangle is defined here for even N only (got N={n})")
    d = state.coeffs
    signs = (-1.0) ** np.arange(n + 1)
    amp = complex(np.sum(signs * d * d[::-1]))
    return TangleResult(abs(amp) ** 4, amp)


__all__ = [
    "GmeConfig", "GmeResult", "StartReport", "TangleResult", "barycentric_measure",
    "covered_locus", "geometric_measure", "gme_psi_mu_closed_form", "n_tangle",
]
