"""Reconstruction of sigma through the Gelfand-Levitan-Marchenko equation.

From ``(lambda, alpha)`` padded with ``lambda_k = (pi k)^2``, ``alpha_k = 2``
the function ::

    phi(xi) = sum_{n <= N} (2 cos(pi n xi) - alpha_n cos(sqrt(lambda_n) xi))

is a finite sum. With ``f(x, t) = (phi(x + t) - phi(|x - t|)) / 2`` the
kernel ``k`` solves, for every fixed ``x``, ::

    k(x, t) + f(x, t) + int_0^x k(x, xi) f(xi, t) dxi = 0,     t <= x,

and ``sigma(x) = -phi(2x) - 2 int_0^x k(x, xi) f(xi, x) dxi``.

``(lambda, alpha)`` do not see the additive constant of ``sigma`` (adding a
constant changes neither ``y(x, z)`` nor ``y^[1](0, z)``), so the formula
above returns one particular primitive. The quasi-Neumann spectrum does
see it: for ``sigma + c`` the characteristic function becomes
``C(z) - c S(z)``. With two-spectra input the constant is therefore fitted
to ``mu`` after the GLM step.

The equation is discretised by a Nystrom scheme on the midpoint grid
``x_i = (i - 1/2)/P``: for row ``i`` the integral over ``[0, x_i]`` uses the
weight ``1/P`` at nodes ``j < i`` and ``1/(2P)`` at the node ``j = i``
(the node ``x_i`` closes a half cell). All arguments ``x_i +- x_j`` are
multiples of ``1/P``, so ``phi`` is evaluated exactly, without interpolation.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .direct import characteristic_C, characteristic_S
from .errors import AliasGuard, GridMismatch, SingularRowSystem
from .fourier import GridFunction, midpoints
from .norming import norming_constants
from .spectral_data import (NormingSpectra, TwoSpectra, check_alternation,
                            check_increasing)

RESIDUAL_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class PhiFunction:
    """``phi`` as a finite cosine sum, with samples on the ``[0, 2]`` grid."""

    grid: GridFunction
    sqrt_lambda: np.ndarray
    alpha: np.ndarray

    def __call__(self, xi) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        n = np.arange(1, self.alpha.size + 1)
        flat = xi.reshape(-1, 1)
        vals = (2.0 * np.cos(np.pi * n * flat) - self.alpha * np.cos(self.sqrt_lambda * flat)).sum(axis=1)
        return vals.reshape(xi.shape)

    @property
    def at_zero(self) -> float:
        """``phi(0) = sum (2 - alpha_n)``."""
        return float(np.sum(2.0 - self.alpha))


def build_phi(data: NormingSpectra, P2: int) -> PhiFunction:
    if P2 < 8 * data.N:
        raise AliasGuard(f"P2={P2} must be at least 8N={8 * data.N}")
    root = np.sqrt(data.lam)
    if 2.0 * root[-1] / np.pi >= P2 / 4:
        raise AliasGuard(f"frequency sqrt(lambda_N)={root[-1]:.6g} is too high for P2={P2}")
    phi = PhiFunction(GridFunction.zeros(P2, 2.0), root, np.array(data.alpha, dtype=float))
    grid = GridFunction(phi(midpoints(P2, 2.0)), 2.0)
    return PhiFunction(grid, root, phi.alpha)


@dataclass(frozen=True, eq=False)
class TriangularKernel:
    """``k(x_i, x_j)`` for ``j <= i``; the strict upper triangle is zero."""

    entries: np.ndarray

    def __post_init__(self):
        e = np.tril(np.asarray(self.entries, dtype=float))
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def P(self) -> int:
        return self.entries.shape[0]

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(self.entries)

    def frobenius(self) -> float:
        """Discrete Hilbert-Schmidt norm ``(h^2 sum |k_ij|^2)^{1/2}``."""
        return float(np.linalg.norm(self.entries) / self.P)


@dataclass(frozen=True, eq=False)
class GlmSolution:
    k: TriangularKernel
    f_matrix: np.ndarray
    sigma: GridFunction
    residual: float
    min_eig_I_plus_F: float
    phi: PhiFunction
    k_at_one: np.ndarray
    alpha: np.ndarray
    alpha_source: str
    diagnostics: dict = field(default_factory=dict)

    def report(self) -> dict:
        return {"residual": self.residual, "min_eig_I_plus_F": self.min_eig_I_plus_F,
                "alpha_source": self.alpha_source, "alpha": self.alpha.tolist(),
                "P": self.sigma.P, "N": int(self.alpha.size), **self.diagnostics}


def _node_index(P):
    return np.arange(1, P + 1)


def build_f_matrix(phi: PhiFunction, P: int) -> np.ndarray:
    """``F_ij = (phi(x_i + x_j) - phi(|x_i - x_j|)) / 2`` on the midpoint grid."""
    if P < 1:
        raise GridMismatch("P must be positive")
    if phi.grid.P < P:
        raise GridMismatch(f"phi grid ({phi.grid.P} points on [0,2]) cannot resolve P={P}")
    i = _node_index(P)
    m = np.arange(0, 2 * P)                          # arguments m / P
    table = phi(m / P)
    table[0] = phi.at_zero
    s = i[:, None] + i[None, :] - 1
    d = np.abs(i[:, None] - i[None, :])
    F = 0.5 * (table[s] - table[d])
    return 0.5 * (F + F.T)


def check_positivity(F: np.ndarray) -> float:
    """Smallest eigenvalue of ``I + F / P``."""
    P = F.shape[0]
    if P == 0:
        return 1.0
    return float(np.linalg.eigvalsh(np.eye(P) + F / P)[0])


def row_weights(i: int, P: int) -> np.ndarray:
    """Quadrature weights on nodes ``x_1..x_i`` for ``int_0^{x_i}``."""
    w = np.full(i, 1.0 / P)
    w[-1] = 0.5 / P
    return w


def solve_glm(F: np.ndarray) -> TriangularKernel:
    """Row-by-row Nystrom solve; row ``i`` is an ``i x i`` dense system."""
    P = F.shape[0]
    K = np.zeros((P, P))
    for i in range(1, P + 1):
        K[i - 1, :i] = _solve_row(F[:i, :i], F[i - 1, :i], row_weights(i, P), i)
    return TriangularKernel(K)


def _solve_row(F_sub, rhs_row, w, row):
    # unknown k_j = k(x, xi_j):  k_j + sum_l w_l k_l F(xi_l, xi_j) = -f(x, xi_j)
    A = np.eye(w.size) + (F_sub * w[:, None]).T
    try:
        sol = np.linalg.solve(A, -rhs_row)
    except np.linalg.LinAlgError as exc:
        raise SingularRowSystem(row, f"({exc})") from None
    if not np.all(np.isfinite(sol)):
        raise SingularRowSystem(row, "(non-finite solution)")
    return sol


def solve_row_at_one(phi: PhiFunction, F: np.ndarray) -> np.ndarray:
    """``k(1, xi_j)`` on all midpoints, from the GLM row at ``x = 1``."""
    P = F.shape[0]
    xi = midpoints(P)
    f_one = 0.5 * (phi(1.0 + xi) - phi(1.0 - xi))
    return _solve_row(F, f_one, np.full(P, 1.0 / P), "x=1")


def glm_residual(K: TriangularKernel, F: np.ndarray) -> float:
    """``max |k + f + int k f|`` over the lower triangle, relative to ``max |f|``."""
    P = F.shape[0]
    worst = 0.0
    for i in range(1, P + 1):
        k = K.entries[i - 1, :i]
        w = row_weights(i, P)
        r = k + F[i - 1, :i] + (w * k) @ F[:i, :i]
        worst = max(worst, float(np.max(np.abs(r))))
    scale = float(np.max(np.abs(F))) if F.size else 0.0
    return worst / scale if scale > 0 else worst


def reconstruct_sigma(k: TriangularKernel, F: np.ndarray, phi: PhiFunction) -> GridFunction:
    """``sigma(x_i) = -phi(2 x_i) - 2 sum_j w_j k(x_i, x_j) F_ji``."""
    P = F.shape[0]
    if k.P != P:
        raise GridMismatch(f"kernel has P={k.P}, F has P={P}")
    x = midpoints(P)
    sigma = -phi(2.0 * x)
    for i in range(1, P + 1):
        w = row_weights(i, P)
        sigma[i - 1] -= 2.0 * np.sum(w * k.entries[i - 1, :i] * F[:i, i - 1])
    return GridFunction(sigma)


def to_norming(data, window_J: int | None = None, validate: bool = True):
    """``(NormingSpectra, source)`` for either kind of input.

    Only the structural conditions are checked here (interlacing, resp.
    monotone ``lambda`` and positive ``alpha``); class membership with
    given ``(h, r)`` is the business of :mod:`invsl.spectral_data`.
    """
    if isinstance(data, TwoSpectra):
        if validate:
            check_alternation(data)
        return norming_constants(data, window_J), "computed"
    if isinstance(data, NormingSpectra):
        if validate:
            check_increasing(data)
        return data, "given"
    raise TypeError(f"expected TwoSpectra or NormingSpectra, got {type(data).__name__}")


def fit_constant(sigma: GridFunction, mu) -> float:
    """Constant ``c`` such that ``sigma + c`` best reproduces the roots ``sqrt(mu)``.

    At each ``z_n = sqrt(mu_n)`` the shifted problem needs
    ``C(z_n) = c S(z_n)``; ``c`` solves these equations in the least-squares
    sense after scaling by ``1/z_n``.
    """
    z = np.sqrt(np.asarray(mu, dtype=float))
    S = characteristic_S(sigma, z) / z
    C = characteristic_C(sigma, z) / z
    return float(np.dot(C, S) / np.dot(S, S))


def reconstruct(data, P: int = 256, window_J: int | None = None,
                residual_tol: float = RESIDUAL_TOL, fit_offset: bool = True) -> GlmSolution:
    """Full pipeline: ``alpha`` (if needed), ``phi``, ``F``, ``k`` and ``sigma``.

    For two-spectra input the additive constant of ``sigma`` is fitted to
    ``mu`` (see :func:`fit_constant`) unless ``fit_offset`` is false.
    """
    norming, source = to_norming(data, window_J)
    phi = build_phi(norming, 4 * P)
    F = build_f_matrix(phi, P)
    min_eig = check_positivity(F)
    if min_eig <= 0:
        raise SingularRowSystem(0, f"(I + F not positive, min eigenvalue {min_eig:.3g})")
    K = solve_glm(F)
    residual = glm_residual(K, F)
    if residual > residual_tol:
        raise SingularRowSystem(0, f"(GLM residual {residual:.3g} above {residual_tol:.3g})")
    sigma = reconstruct_sigma(K, F, phi)
    offset = 0.0
    if fit_offset and isinstance(data, TwoSpectra):
        offset = fit_constant(sigma, data.mu)
        sigma = sigma + offset
    k_one = solve_row_at_one(phi, F)
    return GlmSolution(K, F, sigma, residual, min_eig, phi, k_one,
                       np.array(norming.alpha), source, {"constant_offset": offset})


def classical_sigma(sol: GlmSolution) -> GridFunction:
    """``2 k(x, x) - phi(0)`` (plus any fitted offset), the smooth-data form of ``sigma``."""
    offset = sol.diagnostics.get("constant_offset", 0.0)
    return GridFunction(2.0 * sol.k.diagonal - sol.phi.at_zero + offset)
