"""Forward spectral problem for the quasi-derivative Sturm-Liouville system.

With ``u = y`` and ``v = y' - sigma y`` the eigenvalue equation becomes::

    u' =  sigma u + v
    v' = -(sigma^2 + z^2) u - sigma v,      u(0) = 0, v(0) = z,

which involves ``sigma`` only. ``sigma`` is taken constant on each cell of
its sampling grid. On a cell the coefficient matrix ``A`` satisfies
``A^2 = -z^2 I``, so the cell propagator is ``cos(zh) I + sin(zh)/z A`` and
the shooting problem is solved exactly for the cell-constant ``sigma``. A
fixed-step RK4 integrator is kept as an independent cross-check.

``S(z) = u(1, z)`` vanishes at ``sqrt(lambda_n)`` (Dirichlet) and
``C(z) = v(1, z)`` at ``sqrt(mu_n)`` (quasi-Neumann).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InterlacingViolation, NotAnEigenvalue, RootCountMismatch
from .fourier import GridFunction

SCAN_STEP = math.pi / 8
ROOT_TOL = 1e-13
MAX_SCAN_HALVINGS = 4


@dataclass(frozen=True, eq=False)
class ShootingTrajectory:
    """Solution ``(u, v) = (y, y^[1])`` at the cell boundaries ``x``."""

    z: float
    x: np.ndarray
    u: np.ndarray
    v: np.ndarray

    @property
    def S(self) -> float:
        return float(self.u[-1])

    @property
    def C(self) -> float:
        return float(self.v[-1])


@dataclass(frozen=True, eq=False)
class ForwardResult:
    lam: np.ndarray
    mu: np.ndarray
    alpha: np.ndarray
    diagnostics: dict = field(default_factory=dict)

    @property
    def N(self) -> int:
        return self.lam.size


def _cells(sigma: GridFunction) -> np.ndarray:
    if sigma.domain_length != 1.0:
        raise ValueError("sigma must live on [0, 1]")
    return np.asarray(sigma.as_real().values, dtype=float)


def _propagate(s: np.ndarray, h: float, z: np.ndarray, keep_path=False):
    """Exact transfer through cell-constant ``sigma``; vectorised over ``z``."""
    z = np.asarray(z, dtype=float)
    c = np.cos(z * h)
    sz = h * np.sinc(z * h / np.pi)          # sin(zh)/z, finite at z = 0
    u = np.zeros_like(z)
    v = z.copy()
    z2 = z * z
    if keep_path:
        us = [u]
        vs = [v]
    for sc in s:
        w = sc * u + v
        u, v = c * u + sz * w, c * v - sz * ((sc * sc + z2) * u + sc * v)
        if keep_path:
            us.append(u)
            vs.append(v)
    if keep_path:
        return np.array(us), np.array(vs)
    return u, v


def _rk4(s: np.ndarray, z: float, refine: int = 4):
    P = s.size
    n_sub = refine * max(1, math.ceil(math.ceil(z / math.pi) / 8))
    dt = 1.0 / (P * n_sub)
    z2 = z * z
    u, v = 0.0, float(z)
    us, vs = [u], [v]

    def rhs(sc, u, v):
        return sc * u + v, -(sc * sc + z2) * u - sc * v

    for sc in s:
        for _ in range(n_sub):
            k1 = rhs(sc, u, v)
            k2 = rhs(sc, u + 0.5 * dt * k1[0], v + 0.5 * dt * k1[1])
            k3 = rhs(sc, u + 0.5 * dt * k2[0], v + 0.5 * dt * k2[1])
            k4 = rhs(sc, u + dt * k3[0], v + dt * k3[1])
            u += dt / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
            v += dt / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
            us.append(u)
            vs.append(v)
    return np.array(us), np.array(vs), n_sub


def integrate(sigma: GridFunction, z: float, method: str = "exact") -> ShootingTrajectory:
    """Shoot from ``x = 0`` with ``u(0) = 0``, ``v(0) = z``.

    ``method="exact"`` returns values at the ``P + 1`` cell boundaries;
    ``method="rk4"`` integrates with fixed steps on a grid refined at least
    four times (more for large ``z``) and returns every step.
    """
    s = _cells(sigma)
    if method == "exact":
        u, v = _propagate(s, sigma.h, np.array([float(z)]), keep_path=True)
        x = np.linspace(0.0, 1.0, s.size + 1)
        return ShootingTrajectory(float(z), x, u[:, 0], v[:, 0])
    if method == "rk4":
        u, v, n_sub = _rk4(s, float(z))
        x = np.linspace(0.0, 1.0, s.size * n_sub + 1)
        return ShootingTrajectory(float(z), x, u, v)
    raise ValueError(f"unknown integration method {method!r}")


def characteristic_S(sigma: GridFunction, z):
    """``S(z) = y(1, z)``; vectorised over ``z``."""
    u, _ = _propagate(_cells(sigma), sigma.h, np.atleast_1d(np.asarray(z, dtype=float)))
    return u[0] if np.ndim(z) == 0 else u


def characteristic_C(sigma: GridFunction, z):
    """``C(z) = y^[1](1, z)``; vectorised over ``z``."""
    _, v = _propagate(_cells(sigma), sigma.h, np.atleast_1d(np.asarray(z, dtype=float)))
    return v[0] if np.ndim(z) == 0 else v


def _bisect(func, lo, hi, tol=ROOT_TOL):
    """Vectorised bisection on brackets with a sign change."""
    flo = func(lo)
    iters = np.zeros(lo.size, dtype=int)
    while True:
        mid = 0.5 * (lo + hi)
        # stop at the tolerance or when the bracket cannot shrink any further
        active = ((hi - lo) > tol) & (mid > lo) & (mid < hi)
        if not active.any():
            break
        fmid = func(mid)
        left = np.sign(fmid) == np.sign(flo)
        lo = np.where(active & left, mid, lo)
        flo = np.where(active & left, fmid, flo)
        hi = np.where(active & ~left, mid, hi)
        iters += active
    return 0.5 * (lo + hi), hi - lo, iters


def _first_roots(func, count, which, zmax, step=SCAN_STEP):
    for _ in range(MAX_SCAN_HALVINGS + 1):
        # scan nodes sit at odd multiples of step/2, never on pi*n or pi*(n - 1/2)
        grid = np.arange(0.5 * step, zmax + step, step)
        vals = func(grid)
        idx = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
        if idx.size >= count:
            idx = idx[:count]
            roots, widths, iters = _bisect(func, grid[idx], grid[idx + 1])
            return roots, {"bracket_width": widths, "iterations": iters, "scan_step": step}
        step /= 2
    raise RootCountMismatch(which, int(idx.size), count)


def eigenvalues(sigma: GridFunction, N: int):
    """First ``N`` Dirichlet and quasi-Neumann eigenvalues ``(lambda, mu)``.

    Roots of ``S`` and ``C`` on ``z > 0`` are bracketed by a sign scan with
    step ``pi/8`` over ``(0, pi (N + 1)]`` and refined by bisection to
    ``|dz| <= 1e-10``.
    """
    lam, mu, _ = _eigen_with_diagnostics(sigma, N)
    return lam, mu


def _eigen_with_diagnostics(sigma, N):
    if N < 1:
        raise ValueError("N must be >= 1")
    s = _cells(sigma)
    h = sigma.h
    zmax = math.pi * (N + 1)

    def S(z):
        return _propagate(s, h, z)[0]

    def C(z):
        return _propagate(s, h, z)[1]

    zl, dl = _first_roots(S, N, "Dirichlet", zmax)
    zm, dm = _first_roots(C, N, "quasi-Neumann", zmax)
    return zl ** 2, zm ** 2, {"dirichlet": dl, "neumann": dm, "sqrt_lambda": zl, "sqrt_mu": zm}


def _cell_square_integral(s, h, z):
    """``int_0^1 u(x, z)^2 dx`` exactly for cell-constant ``sigma``."""
    us, vs = _propagate(s, h, z, keep_path=True)
    a = us[:-1]
    b = (s[:, None] * us[:-1] + vs[:-1]) / z
    c2 = np.sin(2 * z * h) / (4 * z)
    return np.sum(a * a * (h / 2 + c2) + b * b * (h / 2 - c2)
                  + a * b * (1 - np.cos(2 * z * h)) / (2 * z), axis=0)


def direct_norming(sigma: GridFunction, lambda_n, tol: float = 1e-6):
    """``alpha_n = 1 / int_0^1 y(x, sqrt(lambda_n))^2 dx``; vectorised.

    Raises :class:`NotAnEigenvalue` when ``|S(sqrt(lambda_n))|`` exceeds
    ``tol`` (relative to ``sqrt(lambda_n)``).
    """
    lam = np.atleast_1d(np.asarray(lambda_n, dtype=float))
    if np.any(lam <= 0):
        raise NotAnEigenvalue("only positive eigenvalues are supported")
    z = np.sqrt(lam)
    s = _cells(sigma)
    resid = np.abs(_propagate(s, sigma.h, z)[0])
    if np.any(resid > tol * np.maximum(z, 1.0)):
        k = int(np.argmax(resid))
        raise NotAnEigenvalue(f"|S(sqrt(lambda))| = {resid[k]:.3g} at lambda = {lam[k]:.10g}")
    alpha = 1.0 / _cell_square_integral(s, sigma.h, z)
    return alpha[0] if np.ndim(lambda_n) == 0 else alpha


def check_interlacing(lam, mu) -> None:
    """Raise :class:`InterlacingViolation` unless ``mu_n < lambda_n < mu_{n+1}``."""
    lam = np.asarray(lam)
    mu = np.asarray(mu)
    for n in range(lam.size):
        if not mu[n] < lam[n]:
            raise InterlacingViolation(n + 1, f"mu={mu[n]!r} >= lambda={lam[n]!r}")
        if n + 1 < mu.size and not lam[n] < mu[n + 1]:
            raise InterlacingViolation(n + 1, f"lambda={lam[n]!r} >= mu_next={mu[n + 1]!r}")


def forward(sigma: GridFunction, N: int) -> ForwardResult:
    """``sigma -> (lambda, mu, alpha)`` for the first ``N`` indices."""
    lam, mu, diag = _eigen_with_diagnostics(sigma, N)
    check_interlacing(lam, mu)
    alpha = direct_norming(sigma, lam)
    return ForwardResult(lam, mu, np.asarray(alpha), diag)


def shift_potential(sigma: GridFunction, c: float) -> GridFunction:
    """``sigma + c x``, i.e. ``q -> q + c``.

    ``lambda`` shifts by ``c``. ``mu`` shifts by ``c`` only when ``sigma(1)`` is
    kept, i.e. for ``sigma + c (x - 1)``; see :func:`shift_potential_fixed_end`.
    """
    return sigma + c * sigma.x


def shift_potential_fixed_end(sigma: GridFunction, c: float) -> GridFunction:
    """``sigma + c (x - 1)``: the primitive of ``q + c`` with the same ``sigma(1)``."""
    return sigma + c * (sigma.x - 1.0)
