"""Husimi function on the sphere and its low multipole moments.

H(theta, phi) = |<Phi(theta, phi)|psi>|^2 with the spin-coherent product
state |Phi> = (cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>)^{(x)N}.

Moments are taken against the unit vector

    r(theta, phi) = (sin(theta) cos(phi), -sin(theta) sin(phi), -cos(theta)),

the direction of <Phi|S|Phi> in the spin convention of :mod:`symqent.spin`
(|0> = |D^(0)> has S_z = -N/2).  In this frame <S> = K_N * dipole and the
second-moment identity below holds exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .dicke import SymState, binomials
from .spin import expectation, spin_ops

AXES = {"x": 0, "y": 1, "z": 2}


@dataclass(frozen=True, eq=False)
class SphericalGrid:
    """Tensor grid: Gauss-Legendre in cos(theta), uniform trapezoid in phi."""

    theta: np.ndarray = field(repr=False)
    theta_weights: np.ndarray = field(repr=False)
    phi: np.ndarray = field(repr=False)

    @property
    def n_theta(self) -> int:
        return self.theta.size

    @property
    def n_phi(self) -> int:
        return self.phi.size

    def mesh(self):
        """(theta, phi, dOmega weight) arrays of shape (n_theta, n_phi)."""
        th, ph = np.meshgrid(self.theta, self.phi, indexing="ij")
        w = np.outer(self.theta_weights, np.full(self.n_phi, 2 * math.pi / self.n_phi))
        return th, ph, w


@lru_cache(maxsize=64)
def sphere_grid(n_theta: int, n_phi: int) -> SphericalGrid:
    x, w = np.polynomial.legendre.leggauss(n_theta)
    phi = 2 * math.pi * np.arange(n_phi) / n_phi
    return SphericalGrid(np.arccos(x), w, phi)


def exact_grid(n: int) -> SphericalGrid:
    """Smallest grid used for moments of an n-qubit state.

    The integrands are polynomials of degree <= N+2 in cos(theta) and
    trigonometric polynomials of degree <= N+2 in phi; N+3 Legendre nodes
    and 2N+7 azimuthal nodes integrate them without error.
    """
    return sphere_grid(n + 3, 2 * n + 7)


def direction(theta, phi) -> np.ndarray:
    """r(theta, phi) stacked along a leading axis of length 3."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), -st * np.sin(phi), -np.cos(theta)])


def overlap(state: SymState, theta, phi) -> np.ndarray:
    """<Phi(theta, phi)|psi>, vectorized over broadcastable angle arrays."""
    theta, phi = np.broadcast_arrays(np.asarray(theta, dtype=float), np.asarray(phi, dtype=float))
    w = np.sqrt(binomials(state.n)) * state.coeffs
    x = np.cos(theta / 2).astype(np.complex128).ravel()
    y = (np.sin(theta / 2) * np.exp(-1j * phi)).ravel()
    return kernels.homogeneous_eval(w, x, y).reshape(theta.shape)


def husimi_eval(state: SymState, theta, phi):
    """H(theta, phi); scalar in, float out, arrays in, array out."""
    val = np.abs(overlap(state, theta, phi)) ** 2
    return float(val) if val.ndim == 0 else val


def husimi_grid(state: SymState, n_theta: int, n_phi: int):
    """Uniform plotting grid: theta in [0, pi] inclusive, phi in [0, 2pi)."""
    theta = np.linspace(0.0, math.pi, n_theta)
    phi = 2 * math.pi * np.arange(n_phi) / n_phi
    th, ph = np.meshgrid(theta, phi, indexing="ij")
    return th, ph, husimi_eval(state, th, ph)


@dataclass(frozen=True, eq=False)
class HusimiMoments:
    norm: float
    dipole: np.ndarray = field(repr=False)
    quadrupole: np.ndarray = field(repr=False)


def _integrate(state: SymState, grid: SphericalGrid | None):
    grid = grid or exact_grid(state.n)
    th, ph, w = grid.mesh()
    h = husimi_eval(state, th, ph)
    return direction(th, ph), h * w


def moments(state: SymState, grid: SphericalGrid | None = None) -> HusimiMoments:
    """Normalization (N+1)/(4pi) int H, dipole int r H, quadrupole
    int (3 r_j r_k - delta_jk) H."""
    r, hw = _integrate(state, grid)
    total = float(hw.sum())
    dip = np.array([float(np.sum(r[i] * hw)) for i in range(3)])
    quad = np.empty((3, 3))
    for j in range(3):
        for k in range(j, 3):
            q = 3 * float(np.sum(r[j] * r[k] * hw)) - (total if j == k else 0.0)
            quad[j, k] = quad[k, j] = q
    return HusimiMoments((state.n + 1) / (4 * math.pi) * total, dip, quad)


def k_factor(n: int) -> float:
    """K_N = (N+1)(N+2)/(8 pi), so that <S> = K_N * dipole."""
    return (n + 1) * (n + 2) / (8 * math.pi)


def second_moment_factor(n: int) -> float:
    return (n + 1) * (n + 2) * (n + 3) / (16 * math.pi)


_LEVI = np.zeros((3, 3, 3))
for _a, _b, _c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _LEVI[_a, _b, _c] = 1.0
    _LEVI[_b, _a, _c] = -1.0


def second_moment_integral(state: SymState, j: int, k: int, grid: SphericalGrid | None = None) -> complex:
    """N_N int [r_j r_k + (i eps_jkl r_l - delta_jk)/(N+3)] H dOmega."""
    r, hw = _integrate(state, grid)
    n = state.n
    kern = r[j] * r[k] + (1j * np.tensordot(_LEVI[j, k], r, axes=1) - (j == k)) / (n + 3)
    return second_moment_factor(n) * complex(np.sum(kern * hw))


def second_moment_identity(state: SymState, j, k) -> float:
    """|<S_j S_k> - quadrature form|; zero up to rounding for every state."""
    j = AXES.get(j, j)
    k = AXES.get(k, k)
    ops = spin_ops(state.n).cartesian()
    exact = expectation(state, ops[j] @ ops[k])
    return abs(exact - second_moment_integral(state, j, k))
