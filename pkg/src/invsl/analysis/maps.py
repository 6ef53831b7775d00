"""Fourier-series maps on [0, 1] and the identities relating them.

All maps are V.p. sums over ``|n| <= K`` evaluated on the discrete band of
the grid (the Nyquist mode is always dropped). ``K`` defaults to the whole
band. With ``fhat``, ``ghat`` the Fourier coefficients of ``f``, ``g``::

    Phi(f, g)  = sum_n ghat(n) [exp(fhat(n) i x) - 1] e^{2 pi i n x}
               = sum_{k>=1} (ix)^k / k!  (g * f^<k>)
    h(f)       = Phi(f, delta)
    Psi(f, g)^(n) = int g(t) exp(fhat(n) i (1-2t)) e^{-2 pi i n t} dt
               = sum_{k>=0} fhat(n)^k / k!  (M^k g)^(n)
    H(f, g)    = s(f) + g + sum_{k>=1} (M^k g) * f^<k> / k!
    H(f, g)^(n) = sin fhat(n) + Psi(f, g)^(n)

where ``M`` multiplies by ``i(1 - 2x)``. Every series is summed term by term
until an a-priori bound on its tail falls below ``SERIES_TOL``. A series
that has not converged after ``MAX_TERMS`` terms, or whose terms exceed the
bound after the onset of geometric decay, raises :class:`SeriesDivergence`.

For a real ``f`` odd about 1/2, ``fhat(n) = -i s_{2n}(f)``; the functions
whose zeros are ``pi n + s_{2n}(f)`` therefore correspond to ``H(i f, g)``.
"""
from __future__ import annotations

import math

import numpy as np

from ..errors import GridMismatch, SeriesDivergence
from ..fourier import (GridFunction, cosine_coeff, full_spectrum, l2_norm,
                       multiply_i_centered, nyquist_mask, synthesize)

SERIES_TOL = 1e-10
MAX_TERMS = 64


def _band(P: int, K: int | None) -> np.ndarray:
    n = np.fft.fftfreq(P, d=1.0 / P).round().astype(int)
    mask = nyquist_mask(P)
    if K is not None:
        mask &= np.abs(n) <= K
    return mask


def _spectrum(f: GridFunction, K: int | None):
    if f.domain_length != 1.0:
        raise GridMismatch("maps are defined on [0, 1]")
    n, fh = full_spectrum(f)
    return n, fh * _band(f.P, K)


def _onset(f_sup: float) -> int:
    return max(8, math.ceil(math.e * f_sup))


def _sum_series(term, f_sup: float, what: str, start: int = 0, scale: float = 1.0,
                order=lambda k: k):
    """Sum ``term(k)`` for ``k = start, start+1, ...``; each term is (value, norm).

    Term ``k`` is bounded a priori by ``scale * f_sup^p / p!`` with
    ``p = order(k)``, and everything after it by that bound times
    ``e^{f_sup}``. Summation stops once the bound on the remaining tail is
    below ``SERIES_TOL``. The observed norms are not used for stopping,
    since single terms can vanish by symmetry while later ones do not.
    After the onset, where the bound decays geometrically, every term is
    checked against it.
    """
    def bound(k):
        p = order(k)
        return scale * math.exp(p * math.log(f_sup) - math.lgamma(p + 1)) if f_sup > 0 else 0.0

    total = None
    onset = _onset(f_sup)
    grow = math.exp(f_sup)
    for k in range(start, start + MAX_TERMS):
        value, size = term(k)
        total = value if total is None else total + value
        if k - start >= onset and size > bound(k) * (1 + 1e-6) + 1e-300:
            raise SeriesDivergence(f"{what}: term {k} exceeds its bound ({size:.3g} > {bound(k):.3g})")
        if bound(k + 1) * grow < SERIES_TOL:
            return total
    raise SeriesDivergence(f"{what}: no convergence within {MAX_TERMS} terms")


def _spec_norm(coeffs):
    return float(np.sqrt(np.sum(np.abs(coeffs) ** 2)))


def _rms(g: GridFunction) -> float:
    """``||g||_0``, which bounds the coefficient norm of ``M^k g`` on any band."""
    return float(np.sqrt(np.mean(np.abs(g.values) ** 2)))


# -- Phi and h ---------------------------------------------------------------------

def phi_map(f: GridFunction, g: GridFunction, K: int | None = None) -> GridFunction:
    f._check_same_grid(g)
    _, fh = _spectrum(f, K)
    _, gh = _spectrum(g, K)
    return _exp_series(fh, gh, f, "Phi")


def h_map(f: GridFunction, K: int | None = None) -> GridFunction:
    """``Phi(f, delta)``: the unit of convolution has ``ghat = 1`` on the band."""
    _, fh = _spectrum(f, K)
    ones = _band(f.P, K).astype(complex)
    return _exp_series(fh, ones, f, "h")


def _exp_series(fh, gh, f, what):
    ix = 1j * f.x
    sup = float(np.max(np.abs(fh))) if fh.size else 0.0
    power = [gh.copy()]

    def term(k):
        power[0] = power[0] * fh
        conv = synthesize(power[0]).values
        val = ix ** k / math.factorial(k) * conv
        return val, float(np.sqrt(np.mean(np.abs(val) ** 2)))

    total = _sum_series(term, sup, what, start=1, scale=_spec_norm(gh))
    return GridFunction(total)


def phi_map_direct(f: GridFunction, g: GridFunction, K: int | None = None) -> GridFunction:
    """Brute-force evaluation of the defining sum (reference for :func:`phi_map`)."""
    n, fh = _spectrum(f, K)
    _, gh = _spectrum(g, K)
    x = f.x[:, None]
    vals = (gh * (np.exp(1j * fh * x) - 1.0) * np.exp(2j * np.pi * n * x)).sum(axis=1)
    return GridFunction(vals)


def h_map_direct(f: GridFunction, K: int | None = None) -> GridFunction:
    n, fh = _spectrum(f, K)
    band = _band(f.P, K)
    x = f.x[:, None]
    vals = ((np.exp(1j * fh * x) - 1.0) * np.exp(2j * np.pi * n * x))[:, band].sum(axis=1)
    return GridFunction(vals)


def cosine_shift_sum(f: GridFunction, n_max: int) -> GridFunction:
    """``sum_{n=1}^{n_max} {cos[2 pi n x + 2 s_{2n}(f) x] - cos(2 pi n x)}`` by direct summation."""
    from ..fourier import sine_coeff
    n = np.arange(1, n_max + 1)
    s2n = sine_coeff(f, 2 * n)
    x = f.x[:, None]
    vals = (np.cos(2 * np.pi * n * x + 2 * s2n * x) - np.cos(2 * np.pi * n * x)).sum(axis=1)
    return GridFunction(vals)


# -- Psi ---------------------------------------------------------------------------

def _moment_spectra(g: GridFunction, K, count):
    """Yield ``(M^k g)^`` for ``k = 0, 1, ...``."""
    cur = g
    for _ in range(count):
        yield _spectrum(cur, K)[1]
        cur = multiply_i_centered(cur)


def psi_coefficients(f: GridFunction, g: GridFunction, K: int | None = None) -> np.ndarray:
    """``Psi(f, g)^(n)`` in FFT order, by the series ``sum fhat^k/k! (M^k g)^``."""
    f._check_same_grid(g)
    _, fh = _spectrum(f, K)
    sup = float(np.max(np.abs(fh)))
    moments = _moment_spectra(g, K, MAX_TERMS)
    gsup = float(np.max(np.abs(1j * (1 - 2 * f.x))))

    def term(k):
        val = fh ** k / math.factorial(k) * next(moments)
        return val, _spec_norm(val)

    return _sum_series(term, sup * gsup, "Psi", scale=_rms(g))


def psi_map(f: GridFunction, g: GridFunction, K: int | None = None) -> GridFunction:
    return synthesize(psi_coefficients(f, g, K))


def psi_coefficient_direct(f: GridFunction, g: GridFunction, n: int) -> complex:
    """``int g(t) exp(fhat(n) i (1 - 2t)) e^{-2 pi i n t} dt`` by quadrature."""
    _, fh = full_spectrum(f)
    t = g.x
    w = fh[n % f.P]
    return complex(np.sum(g.values * np.exp(1j * w * (1 - 2 * t)) * np.exp(-2j * np.pi * n * t)) * g.h)


def psi_cosine_expression(f: GridFunction, g: GridFunction, n: int) -> complex:
    """``2 (-1)^n int g(t) cos{[pi n + fhat(n)](1 - 2t)} dt``.

    For ``f`` odd and ``g`` even of zero mean this is the sum of the
    ``n``-th and ``-n``-th coefficients of ``Psi(f, g)``; each of the two
    equals ``c_{2n}(Psi(f, g))``, i.e. half of this value.
    """
    _, fh = full_spectrum(f)
    t = g.x
    w = np.pi * n + fh[n % f.P]
    return complex(2 * (-1) ** n * np.sum(g.values * np.cos(w * (1 - 2 * t))) * g.h)


def psi_even_cosine_coeffs(f: GridFunction, g: GridFunction, n_max: int) -> np.ndarray:
    """``c_{2n}(Psi(f, g))``, ``n = 1..n_max``, from the synthesised function."""
    psi = psi_map(f, g)
    n = np.arange(1, n_max + 1)
    re = cosine_coeff(psi.real_part(), 2 * n)
    im = cosine_coeff(GridFunction(psi.values.imag), 2 * n)
    return re + 1j * im


# -- H and its derivatives ---------------------------------------------------------------

def H_coefficients(f: GridFunction, g: GridFunction, K: int | None = None) -> np.ndarray:
    _, fh = _spectrum(f, K)
    return np.sin(fh) + psi_coefficients(f, g, K)


def H_map(f: GridFunction, g: GridFunction, K: int | None = None) -> GridFunction:
    """``H(f, g) = s(f) + g + sum_{k>=1} (M^k g) * f^<k> / k!``."""
    return synthesize(H_coefficients(f, g, K))


def H_map_series(f: GridFunction, g: GridFunction, K: int | None = None) -> GridFunction:
    """The same map summed literally as convolution series (independent check)."""
    from ..fourier import conv_power, convolve
    f._check_same_grid(g)
    fK = synthesize(_spectrum(f, K)[1])
    gK = synthesize(_spectrum(g, K)[1])
    sup = float(np.max(np.abs(_spectrum(f, K)[1])))

    def s_term(k):
        val = conv_power(fK, 2 * k + 1).values * ((-1) ** k / math.factorial(2 * k + 1))
        return val, float(np.sqrt(np.mean(np.abs(val) ** 2)))

    def g_term(k):
        if k == 0:
            val = gK.values.astype(complex)
        else:
            val = convolve(multiply_i_centered(g, k), conv_power(fK, k)).values / math.factorial(k)
        return val, float(np.sqrt(np.mean(np.abs(val) ** 2)))

    f_scale = _spec_norm(_spectrum(f, K)[1]) / sup if sup > 0 else 0.0
    total = (_sum_series(s_term, sup, "s(f)", scale=f_scale, order=lambda k: 2 * k + 1)
             + _sum_series(g_term, sup, "H", scale=_rms(g)))
    return GridFunction(total)


def H_residual(f: GridFunction, g: GridFunction, K: int | None = None) -> float:
    """``||H(i f, g)||_0`` for a real ``f`` odd about 1/2 (zeros ``pi n + s_{2n}(f)``)."""
    if not f.is_real:
        raise ValueError("H_residual expects the real odd function f")
    return float(np.sqrt(np.sum(np.abs(H_coefficients(f * 1j, g, K)) ** 2)))


def dH_df(f: GridFunction, g: GridFunction, h1: GridFunction, K: int | None = None) -> GridFunction:
    """``(c(f) + sum_{k>=1} (M^k g) * f^<k-1> / (k-1)!) * h1``."""
    _, fh = _spectrum(f, K)
    _, h1h = _spectrum(h1, K)
    sup = float(np.max(np.abs(fh)))
    moments = _moment_spectra(g, K, MAX_TERMS + 1)
    next(moments)

    def term(k):
        val = fh ** k / math.factorial(k) * next(moments)
        return val, _spec_norm(val)

    inner = np.cos(fh) + _sum_series(term, sup, "dH/df", scale=_rms(g))
    return synthesize(inner * h1h)


def dH_dg(f: GridFunction, h2: GridFunction, K: int | None = None) -> GridFunction:
    """``h2 + sum_{k>=1} (M^k h2) * f^<k> / k!`` (``H`` is affine in ``g``)."""
    return synthesize(psi_coefficients(f, h2, K))


def dH_df_at_zero(g: GridFunction, h1: GridFunction) -> GridFunction:
    """Closed form at ``f = 0``: ``h1 + (M g) * h1`` (on the band without Nyquist)."""
    from ..fourier import convolve
    h1b = synthesize(_spectrum(h1, None)[1])
    return GridFunction(h1b.values + convolve(multiply_i_centered(g), h1).values)


def partial_derivative_check(f: GridFunction, g: GridFunction, direction: GridFunction,
                             which: str = "f", t: float = 1e-4, K: int | None = None) -> float:
    """``||central difference of H - series derivative||_0`` along ``direction``."""
    if which == "f":
        plus = H_map(f + t * direction, g, K)
        minus = H_map(f - t * direction, g, K)
        exact = dH_df(f, g, direction, K)
    elif which == "g":
        plus = H_map(f, g + t * direction, K)
        minus = H_map(f, g - t * direction, K)
        exact = dH_dg(f, direction, K)
    else:
        raise ValueError("which must be 'f' or 'g'")
    fd = (plus - minus) / (2 * t)
    return l2_norm(fd - exact)


# -- cosh identity -------------------------------------------------------------------

def even_cosh_series(f: GridFunction, K: int | None = None) -> GridFunction:
    """``f~ = sum_{k>=1} f^<2k> / (2k)!``."""
    _, fh = _spectrum(f, K)
    sup = float(np.max(np.abs(fh)))

    def term(k):
        val = fh ** (2 * k) / math.factorial(2 * k)
        return val, _spec_norm(val)

    scale = _spec_norm(fh) / sup if sup > 0 else 0.0
    total = _sum_series(term, sup, "cosh", start=1, scale=scale, order=lambda k: 2 * k)
    return synthesize(total, real=f.is_real)


def cosh_identity_check(f: GridFunction, n_max: int | None = None) -> float:
    """``max_n |(cosh fhat(n) - 1) - c_{2n}(f~)|`` for a real ``f`` odd about 1/2."""
    if n_max is None:
        n_max = f.P // 8
    ft = even_cosh_series(f)
    n = np.arange(1, n_max + 1)
    _, fh = full_spectrum(f)
    lhs = np.cosh(fh[n]) - 1.0
    rhs = cosine_coeff(ft, 2 * n)
    return float(np.max(np.abs(lhs - rhs)))


# -- pairs from a reconstruction ---------------------------------------------------

def kernel_row_to_centered(k_at_one: np.ndarray) -> GridFunction:
    """``k~(u)`` with ``int_0^1 k(1,t) sin(zt) dt = int_0^1 k~(u) sin(z(1-2u)) du``.

    Substituting ``t = 1 - 2u`` gives ``k~(u) = 2 k(1, 1 - 2u)`` on ``[0, 1/2]``
    and ``0`` beyond. The ``P`` midpoints ``t_j`` map onto the first half of
    the ``2P``-point midpoint grid, in reverse order.
    """
    k = np.asarray(k_at_one, dtype=float)
    vals = np.zeros(2 * k.size)
    vals[:k.size] = 2.0 * k[::-1]
    return GridFunction(vals)


def roundtrip_pair(rho_even, k_at_one: np.ndarray):
    """``(f, g)`` with ``s_{2n}(f) = rho_{2n}`` and ``g = -i odd part of k~``.

    ``rho_even`` holds ``(rho_2, rho_4, ..., rho_2N)``; both functions live on
    the ``2P``-point grid.
    """
    from ..fourier import odd_part, rho_to_function
    g = odd_part(kernel_row_to_centered(k_at_one)) * (-1j)
    rho = np.zeros(2 * len(rho_even))
    rho[1::2] = rho_even
    f = rho_to_function(rho, g.P)
    return f, g
