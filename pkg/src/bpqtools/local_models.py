"""Numeric checks of the local formulas near a pinwheel.

The only floating-point module.  Tolerances are fixed constants; each
check also has a symbolic mode (sympy) where the identity is exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

LAGRANGIAN_TOL = 1e-8
JACOBIAN_TOL = 1e-6
ACTION_TOL = 1e-9
COLLAR_WIDTH = 0.1  # s ranges over [0, COLLAR_WIDTH] in grid checks

OMEGA = np.array([[0.0, 1.0, 0.0, 0.0],
                  [-1.0, 0.0, 0.0, 0.0],
                  [0.0, 0.0, 0.0, 1.0],
                  [0.0, 0.0, -1.0, 0.0]])


@dataclass(frozen=True)
class CollarPoint:
    t: float
    s: float
    image: tuple  # (tau, x, u, v)


def collar_eval(p: int, q: int, t: float, s: float) -> CollarPoint:
    """(p t, q s^2 / (2p), s e^{iqt}) as a point of T*S^1 x C."""
    if s < 0:
        raise ValueError("s must be non-negative")
    return CollarPoint(t, s, (p * t, q * s * s / (2 * p), s * math.cos(q * t), s * math.sin(q * t)))


def _collar_arrays(p, q, t, s):
    return q * s * s / (2 * p), s * np.exp(1j * q * t)


def lagrangian_residual(p: int, q: int, resolution: int = 64, h: float = 1e-4,
                        s_max: float = COLLAR_WIDTH) -> float:
    """max |p d_s x + Im(conj(d_t z) d_s z)| on a (t, s) grid.

    Derivatives are central differences with step h, so the residual is
    O(h^2); analytically it is q s - q s = 0.
    """
    if resolution < 4:
        raise ValueError("resolution must be at least 4")
    t = np.linspace(0.0, 2 * math.pi, resolution, endpoint=False)
    s = np.linspace(0.0, s_max, resolution)
    T, S = np.meshgrid(t, s, indexing="ij")
    x_sp, _ = _collar_arrays(p, q, T, S + h)
    x_sm, _ = _collar_arrays(p, q, T, S - h)
    _, z_sp = _collar_arrays(p, q, T, S + h)
    _, z_sm = _collar_arrays(p, q, T, S - h)
    _, z_tp = _collar_arrays(p, q, T + h, S)
    _, z_tm = _collar_arrays(p, q, T - h, S)
    dsx = (x_sp - x_sm) / (2 * h)
    dsz = (z_sp - z_sm) / (2 * h)
    dtz = (z_tp - z_tm) / (2 * h)
    return float(np.max(np.abs(p * dsx + np.imag(np.conj(dtz) * dsz))))


def lagrangian_check(p: int, q: int, resolution: int = 64, h: float = 1e-4) -> float:
    return lagrangian_residual(p, q, resolution, h)


def convergence_order(p: int, q: int, h1: float = 1e-3, h2: float = 5e-4, resolution: int = 64) -> float:
    """Observed order log(r1/r2)/log(h1/h2) of the finite-difference residual."""
    r1 = lagrangian_residual(p, q, resolution, h1)
    r2 = lagrangian_residual(p, q, resolution, h2)
    return math.log(r1 / r2) / math.log(h1 / h2)


def lagrangian_symbolic(p: int, q: int):
    """The residual simplified exactly; returns sympy's 0 when it vanishes."""
    import sympy as sp

    t, s = sp.symbols("t s", real=True)
    x = sp.Rational(q, 2 * p) * s ** 2
    u, v = s * sp.cos(q * t), s * sp.sin(q * t)
    # Im(conj(a) b) for a = a1 + i a2, b = b1 + i b2 is a1 b2 - a2 b1
    dtu, dtv = sp.diff(u, t), sp.diff(v, t)
    dsu, dsv = sp.diff(u, s), sp.diff(v, s)
    return sp.simplify(p * sp.diff(x, s) + dtu * dsv - dtv * dsu)


def collar_cover_degree(p: int, q: int, s: float = 0.05, samples: int = 360) -> tuple:
    """(min, max) number of grid parameters t over each core angle tau.

    t runs over p * samples equally spaced values in [0, 2 pi); the core
    angle is p t mod 2 pi, so each of the ``samples`` tau values is hit
    p times when the collar covers the core p-to-1.
    """
    counts = {}
    for k in range(p * samples):
        t = 2 * math.pi * k / (p * samples)
        tau = collar_eval(p, q, t, s).image[0]
        key = round((tau % (2 * math.pi)) * samples / (2 * math.pi)) % samples
        counts[key] = counts.get(key, 0) + 1
    return min(counts.values()), max(counts.values())


def period_shift(p: int, q: int, t: float, s: float) -> complex:
    """Ratio z(t + 2 pi / p) / z(t); equals e^{2 pi i q / p} for s > 0."""
    a = collar_eval(p, q, t, s).image
    b = collar_eval(p, q, t + 2 * math.pi / p, s).image
    return complex(b[2], b[3]) / complex(a[2], a[3])


def straightening_map(eta: Callable, deta: Callable, point) -> np.ndarray:
    """Phi_eta(tau, x, z) = (tau, x - eta'(tau) |z|^2 / 2, e^{-i eta(tau)} z)."""
    tau, x, u, v = point
    z = complex(u, v) * np.exp(-1j * eta(tau))
    return np.array([tau, x - 0.5 * deta(tau) * (u * u + v * v), z.real, z.imag])


def _numeric_derivative(f: Callable, h: float = 1e-5) -> Callable:
    return lambda x: (f(x + h) - f(x - h)) / (2 * h)


def straightening_jacobian(eta: Callable, point, deta: Optional[Callable] = None, h: float = 1e-6) -> np.ndarray:
    deta = deta or _numeric_derivative(eta)
    point = np.asarray(point, dtype=float)
    J = np.empty((4, 4))
    for k in range(4):
        e = np.zeros(4)
        e[k] = h
        J[:, k] = (straightening_map(eta, deta, point + e) - straightening_map(eta, deta, point - e)) / (2 * h)
    return J


def straightening_check(eta: Callable, points, deta: Optional[Callable] = None) -> float:
    """max |J^T Omega J - Omega| over the sample points."""
    worst = 0.0
    for P in points:
        J = straightening_jacobian(eta, P, deta)
        worst = max(worst, float(np.max(np.abs(J.T @ OMEGA @ J - OMEGA))))
    return worst


def straightening_core_check(eta: Callable, taus, deta: Optional[Callable] = None, r: float = 1e-3) -> float:
    """Deviation from: z = 0 fixed pointwise, normal direction rotated by e^{-i eta}."""
    deta = deta or _numeric_derivative(eta)
    worst = 0.0
    for tau in taus:
        x = 0.3
        core = straightening_map(eta, deta, (tau, x, 0.0, 0.0))
        worst = max(worst, float(np.max(np.abs(core - np.array([tau, x, 0.0, 0.0])))))
        img = straightening_map(eta, deta, (tau, x, r, 0.0))
        rotated = complex(img[2], img[3]) / r
        worst = max(worst, abs(rotated - np.exp(-1j * eta(tau))))
    return worst


def random_points(n: int, seed: int = 0, radius: float = 1.0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    P = rng.uniform(-radius, radius, size=(n, 4))
    P[:, 0] = rng.uniform(0, 2 * math.pi, size=n)
    return P


def straightening_symbolic():
    """J^T Omega J - Omega for a generic eta, simplified exactly."""
    import sympy as sp

    tau, x, u, v = sp.symbols("tau x u v", real=True)
    eta = sp.Function("eta")(tau)
    d = sp.diff(eta, tau)
    img = sp.Matrix([tau, x - d * (u ** 2 + v ** 2) / 2,
                     sp.cos(eta) * u + sp.sin(eta) * v,
                     -sp.sin(eta) * u + sp.cos(eta) * v])
    J = img.jacobian([tau, x, u, v])
    Om = sp.Matrix(OMEGA.astype(int).tolist())
    return sp.simplify(J.T * Om * J - Om)


def sample_milnor_fibre(p: int, n: int, seed: int = 0) -> np.ndarray:
    """Points (z1, z2, z3) with z1 z2 = z3^p + 1 and |z1| >= 1/2."""
    rng = np.random.default_rng(seed)
    z3 = rng.normal(size=n) + 1j * rng.normal(size=n)
    z3 /= np.maximum(1.0, np.abs(z3))
    mod = rng.uniform(0.5, 1.5, size=n)
    z1 = mod * np.exp(1j * rng.uniform(0, 2 * math.pi, size=n))
    z2 = (z3 ** p + 1) / z1
    return np.stack([z1, z2, z3], axis=1)


def quotient_action_residual(p: int, q: int, samples: int = 1000, seed: int = 0) -> tuple:
    """(max invariance residual, min displacement under zeta != 1)."""
    Z = sample_milnor_fibre(p, samples, seed)
    z1, z2, z3 = Z[:, 0], Z[:, 1], Z[:, 2]
    worst = 0.0
    least_move = math.inf
    for k in range(p):
        zeta = np.exp(2j * math.pi * k / p)
        w1, w2, w3 = zeta * z1, z2 / zeta, zeta ** q * z3
        worst = max(worst, float(np.max(np.abs(w1 * w2 - w3 ** p - 1))))
        if k:
            move = np.max(np.abs(np.stack([w1 - z1, w2 - z2, w3 - z3])), axis=0)
            least_move = min(least_move, float(np.min(move)))
    return worst, least_move


def quotient_action_check(p: int, q: int, samples: int = 1000, seed: int = 0) -> bool:
    worst, least_move = quotient_action_residual(p, q, samples, seed)
    return worst <= ACTION_TOL and (p == 1 or least_move > 0)


def quotient_action_symbolic(p: int, q: int):
    """(zeta z1)(zeta^-1 z2) - (zeta^q z3)^p - 1 reduced by zeta^p = 1 and the fibre equation."""
    import sympy as sp

    zeta, z1, z3 = sp.symbols("zeta z1 z3")
    z2 = (z3 ** p + 1) / z1
    expr = sp.expand((zeta * z1) * (z2 / zeta) - (zeta ** q * z3) ** p - 1)
    return sp.simplify(sp.rem(sp.numer(sp.together(expr)), zeta ** p - 1, zeta))
