"""Norming constants from two spectra via paired Hadamard products.

With ``omega_{2n} = sqrt(lambda_n)``, ``omega_{2n-1} = sqrt(mu_n)`` and the
odd extension ``omega_{-k} = -omega_k``, ``omega_0 = 0``, the characteristic
functions at a Dirichlet root satisfy ::

    Sdot(omega_{2n})          = (-1)^n prod_{k != n} (1 + a_{k,n}),
    C(omega_{2n}) / omega_2n  = (-1)^n prod_k       (1 + b_{k,n}),

    a_{k,n} = (rho_{2k}   - rho_{2n}) / (pi (k - n)),
    b_{k,n} = (rho_{2k-1} - rho_{2n}) / (pi (k - n - 1/2)),

and ``alpha_n = 2 omega_{2n} / (Sdot C) = 2 / ((1 + a_n)(1 + b_n))``. Both
products are taken over windows symmetric about ``k = n`` and summed as
logarithms. Beyond the data the pad makes every ``rho`` vanish, so the
remaining pairs multiply to ``prod_{j > J} (1 - rho_{2n}^2 / (pi j)^2)``
(resp. ``(j - 1/2)`` in the cosine case), which is evaluated in closed form
from the Euler products of ``sin`` and ``cos``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveFactor, NormingNotPositive
from .spectral_data import NormingSpectra, TwoSpectra, rho_of


@dataclass(frozen=True)
class ProductEval:
    n: int
    a_n: float
    b_n: float
    alpha_n: float
    log_sdot: float
    log_c_over_omega: float


def default_window(N: int) -> int:
    return 4 * N


def _rho_ext(data: TwoSpectra):
    """Callables ``k -> rho_{2k}`` and ``k -> rho_{2k-1}`` on integer arrays."""
    r = rho_of(data).entries
    even = np.concatenate([[0.0], r[1::2]])     # rho_0, rho_2, ..., rho_2N
    odd = r[0::2]                              # rho_1, rho_3, ...
    N = data.N

    def rho_even(k):
        m = np.abs(k)
        val = np.where(m <= N, even[np.minimum(m, N)], 0.0)
        return np.sign(k) * val

    def rho_odd(k):
        # index 2k - 1 is positive for k >= 1; for k <= 0, rho_{2k-1} = -rho_{1-2k}
        m = np.where(k >= 1, k, 1 - k)          # rho_{2m-1} with m >= 1
        val = np.where(m <= N, odd[np.minimum(m, N) - 1], 0.0)
        return np.where(k >= 1, val, -val)

    return rho_even, rho_odd


def _check_window(data: TwoSpectra, n: int, window_J: int):
    if not 1 <= n <= data.N:
        raise IndexError(f"n={n} outside 1..{data.N}")
    if window_J < data.N + n:
        raise ValueError(f"window_J={window_J} must be >= N + n = {data.N + n}")


def _pairwise_log_sum(factors: np.ndarray, k: np.ndarray, n: int, centres: np.ndarray):
    """Sum ``log(factors)`` with the mirror pair of each offset adjacent."""
    bad = np.nonzero(factors <= 0)[0]
    if bad.size:
        i = bad[0]
        raise NonPositiveFactor(int(k[i]), n, float(factors[i]))
    logs = np.log1p(factors - 1.0)
    order = np.argsort(np.abs(centres), kind="stable")
    return float(np.sum(logs[order].reshape(-1, 2).sum(axis=1)))


def sine_tail(rho: float, J: int) -> float:
    """``prod_{j > J} (1 - rho^2 / (pi j)^2)``."""
    j = np.arange(1, J + 1)
    head = np.prod(1.0 - rho * rho / (np.pi * j) ** 2)
    return float(np.sinc(rho / np.pi) / head)


def cosine_tail(rho: float, J: int) -> float:
    """``prod_{j > J} (1 - rho^2 / (pi (j - 1/2))^2)``."""
    j = np.arange(1, J + 1)
    head = np.prod(1.0 - rho * rho / (np.pi * (j - 0.5)) ** 2)
    return float(math.cos(rho) / head)


def _sine_factors(data, n, window_J):
    rho_even, _ = _rho_ext(data)
    off = np.concatenate([np.arange(-window_J, 0), np.arange(1, window_J + 1)])
    k = n + off
    factors = 1.0 + (rho_even(k) - rho_even(np.array(n))) / (np.pi * off)
    return k, off.astype(float), factors


def _cosine_factors(data, n, window_J):
    _, rho_odd = _rho_ext(data)
    rho_n = rho_of(data).entries[2 * n - 1]
    k = np.arange(n - window_J + 1, n + window_J + 1)
    centre = k - n - 0.5
    factors = 1.0 + (rho_odd(k) - rho_n) / (np.pi * centre)
    return k, centre, factors


def log_abs_sdot(data: TwoSpectra, n: int, window_J: int | None = None,
                 h: float | None = None) -> float:
    """``log |Sdot(omega_{2n})|``; with ``h`` each factor is asserted ``>= 2h/pi``."""
    J = default_window(data.N) if window_J is None else window_J
    _check_window(data, n, J)
    k, off, factors = _sine_factors(data, n, J)
    if h is not None:
        _assert_floor(factors, k, n, h)
    rho_n = float(rho_of(data).entries[2 * n - 1])
    return _pairwise_log_sum(factors, k, n, off) + math.log(sine_tail(rho_n, J))


def log_abs_c_over_omega(data: TwoSpectra, n: int, window_J: int | None = None,
                         h: float | None = None) -> float:
    J = default_window(data.N) if window_J is None else window_J
    _check_window(data, n, J)
    k, centre, factors = _cosine_factors(data, n, J)
    if h is not None:
        _assert_floor(factors, k, n, h)
    rho_n = float(rho_of(data).entries[2 * n - 1])
    return _pairwise_log_sum(factors, k, n, centre) + math.log(cosine_tail(rho_n, J))


def _assert_floor(factors, k, n, h):
    floor = 2 * h / np.pi
    low = np.nonzero(factors < floor - 1e-12)[0]
    if low.size:
        i = low[0]
        raise NonPositiveFactor(int(k[i]), n, float(factors[i]))


def sdot_at_eigenvalue(data: TwoSpectra, n: int, window_J: int | None = None) -> float:
    """``Sdot(sqrt(lambda_n))`` (derivative of ``S`` in ``z``), sign included."""
    return (-1) ** n * math.exp(log_abs_sdot(data, n, window_J))


def c_over_omega_at_eigenvalue(data: TwoSpectra, n: int, window_J: int | None = None) -> float:
    """``C(sqrt(lambda_n)) / sqrt(lambda_n)``, sign included."""
    return (-1) ** n * math.exp(log_abs_c_over_omega(data, n, window_J))


def window_zero_sum(n: int, window_J: int) -> float:
    """``sum 1/(k - n)`` over the sine window in the summation order used above."""
    off = np.concatenate([np.arange(-window_J, 0), np.arange(1, window_J + 1)]).astype(float)
    order = np.argsort(np.abs(off), kind="stable")
    return float(np.sum((1.0 / off[order]).reshape(-1, 2).sum(axis=1)))


def product_evals(data: TwoSpectra, window_J: int | None = None) -> list[ProductEval]:
    J = default_window(data.N) if window_J is None else window_J
    out = []
    for n in range(1, data.N + 1):
        ls = log_abs_sdot(data, n, J)
        lc = log_abs_c_over_omega(data, n, J)
        alpha = 2.0 * math.exp(-ls - lc)
        if not alpha > 0:
            raise NormingNotPositive(n, alpha)
        out.append(ProductEval(n, math.expm1(ls), math.expm1(lc), alpha, ls, lc))
    return out


def norming_constants(data: TwoSpectra, window_J: int | None = None) -> NormingSpectra:
    """``alpha_n = 2 / ((1 + a_n)(1 + b_n))`` for every stored ``n``."""
    evals = product_evals(data, window_J)
    alpha = np.array([e.alpha_n for e in evals])
    return NormingSpectra(data.lam, alpha, data.weight_s)


def log_remainder_constant(h: float, span: float = 50.0, points: int = 200_001) -> float:
    """``K = max_{x >= -1 + 2h/pi} |(log(1 + x) - x) / x^2|`` by a 1-D scan."""
    x0 = -1.0 + 2.0 * h / np.pi
    x = np.linspace(x0, x0 + span, points)
    x = x[np.abs(x) > 1e-6]
    vals = np.abs((np.log1p(x) - x) / x ** 2)
    return float(max(vals.max(), 0.5))      # the limit at x = 0 is 1/2


def uniform_log_bound(h: float, r: float) -> float:
    K = log_remainder_constant(h)
    return (math.sqrt(6.0) * r + 4.0 * K * np.pi ** 2 * r ** 2) / 3.0


def uniform_bounds_probe(sample, window_J: int | None = None):
    """Suprema of ``|log|Sdot||`` and ``|log|C/omega||`` over a sample of data."""
    sup_s = sup_c = 0.0
    for data in sample:
        J = default_window(data.N) if window_J is None else window_J
        for n in range(1, data.N + 1):
            sup_s = max(sup_s, abs(log_abs_sdot(data, n, J)))
            sup_c = max(sup_c, abs(log_abs_c_over_omega(data, n, J)))
    return sup_s, sup_c
