"""Grid functions on [0, 1] and [0, 2] and the Fourier toolkit built on them.

All functions are sampled at cell midpoints ``x_i = (i - 1/2) L / P``. The
midpoint rule is used for every integral, so no endpoint values are ever
needed and the grid is closed under the reflection ``x -> L - x``.

Conventions
-----------
``s_n(f) = int_0^1 f(x) sin(pi n x) dx``, ``c_n(f) = int_0^1 f(x) cos(pi n x) dx``
and ``fhat(n) = int_0^1 f(x) exp(-2 pi i n x) dx``. Convolution is circular
on [0, 1).
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Union

import numpy as np

from .errors import AliasGuard, GridMismatch, ParseError, UnsupportedOrder

ArrayLike = Union[np.ndarray, list, tuple]


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples of a real or complex function at the midpoints of a uniform grid."""

    values: np.ndarray
    domain_length: float = 1.0

    def __post_init__(self):
        vals = np.asarray(self.values)
        if vals.ndim != 1 or vals.size == 0:
            raise GridMismatch("grid values must be a non-empty 1-D array")
        if self.domain_length not in (1, 2, 1.0, 2.0):
            raise GridMismatch(f"domain length must be 1 or 2, got {self.domain_length}")
        if not np.iscomplexobj(vals):
            vals = vals.astype(float)
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "domain_length", float(self.domain_length))

    @classmethod
    def sample(cls, func: Callable, P: int, domain_length: float = 1.0) -> "GridFunction":
        return cls(np.asarray(func(midpoints(P, domain_length))), domain_length)

    @classmethod
    def zeros(cls, P: int, domain_length: float = 1.0) -> "GridFunction":
        return cls(np.zeros(P), domain_length)

    @property
    def P(self) -> int:
        return self.values.size

    @property
    def h(self) -> float:
        return self.domain_length / self.P

    @property
    def x(self) -> np.ndarray:
        return midpoints(self.P, self.domain_length)

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.values)

    def quadrature(self, weight: ArrayLike | None = None) -> complex | float:
        """Midpoint rule for the integral of ``f`` (optionally times ``weight``)."""
        v = self.values if weight is None else self.values * np.asarray(weight)
        return v.sum() * self.h

    def with_values(self, values) -> "GridFunction":
        return GridFunction(values, self.domain_length)

    def real_part(self) -> "GridFunction":
        return self.with_values(self.values.real)

    def as_real(self, tol: float = 1e-12) -> "GridFunction":
        """Drop an imaginary part that is round-off; raise if it is not."""
        if self.is_real:
            return self
        scale = max(np.abs(self.values).max(), 1.0)
        if np.abs(self.values.imag).max() > tol * scale:
            raise ValueError("grid function has a non-negligible imaginary part")
        return self.real_part()

    def _check_same_grid(self, other: "GridFunction"):
        if self.P != other.P or self.domain_length != other.domain_length:
            raise GridMismatch(
                f"grids differ: P={self.P}/L={self.domain_length} vs "
                f"P={other.P}/L={other.domain_length}")

    def __add__(self, other):
        if isinstance(other, GridFunction):
            self._check_same_grid(other)
            return self.with_values(self.values + other.values)
        return self.with_values(self.values + other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GridFunction):
            self._check_same_grid(other)
            return self.with_values(self.values - other.values)
        return self.with_values(self.values - other)

    def __neg__(self):
        return self.with_values(-self.values)

    def __mul__(self, other):
        if isinstance(other, GridFunction):
            self._check_same_grid(other)
            return self.with_values(self.values * other.values)
        return self.with_values(self.values * other)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self.with_values(self.values / scalar)

    def __repr__(self):
        kind = "real" if self.is_real else "complex"
        return f"GridFunction(P={self.P}, L={self.domain_length:g}, {kind})"


def midpoints(P: int, domain_length: float = 1.0) -> np.ndarray:
    return (np.arange(P) + 0.5) * (domain_length / P)


@dataclass(frozen=True, eq=False)
class FourierVector:
    """Coefficients ``fhat(n)`` for ``-K <= n <= K``."""

    coeffs: np.ndarray
    K: int

    def __getitem__(self, n):
        n = np.asarray(n)
        if np.any(np.abs(n) > self.K):
            raise IndexError(f"mode {n} outside [-{self.K}, {self.K}]")
        return self.coeffs[n + self.K]

    @property
    def modes(self) -> np.ndarray:
        return np.arange(-self.K, self.K + 1)


def _unit_domain(f: GridFunction, what: str):
    if f.domain_length != 1.0:
        raise GridMismatch(f"{what} is defined for grid functions on [0, 1]")


def _alias_check(nmax, P, what="mode"):
    if nmax > P / 4:
        raise AliasGuard(f"{what} {nmax} exceeds P/4 = {P / 4:g} for a {P}-point grid")


# -- trigonometric coefficients ------------------------------------------------

def sine_coeff(f: GridFunction, n):
    """Midpoint-rule value of ``s_n(f)``; ``n`` may be an int or an array."""
    _unit_domain(f, "sine_coeff")
    n_arr = np.atleast_1d(np.asarray(n))
    if np.any(n_arr < 1):
        raise ValueError("sine coefficients are indexed from n = 1")
    _alias_check(n_arr.max(), f.P)
    out = np.sin(np.pi * np.outer(n_arr, f.x)) @ f.values * f.h
    return out[0] if np.ndim(n) == 0 else out


def cosine_coeff(f: GridFunction, n):
    """Midpoint-rule value of ``c_n(f)``; ``n`` may be an int or an array."""
    _unit_domain(f, "cosine_coeff")
    n_arr = np.atleast_1d(np.asarray(n))
    if np.any(n_arr < 0):
        raise ValueError("cosine coefficients are indexed from n = 0")
    _alias_check(n_arr.max(), f.P)
    out = np.cos(np.pi * np.outer(n_arr, f.x)) @ f.values * f.h
    return out[0] if np.ndim(n) == 0 else out


def full_spectrum(f: GridFunction) -> tuple[np.ndarray, np.ndarray]:
    """All ``P`` discrete Fourier coefficients, in numpy FFT order.

    Returns ``(n, fhat)``. Synthesis with :func:`synthesize` reproduces the
    samples exactly.
    """
    _unit_domain(f, "full_spectrum")
    P = f.P
    n = np.fft.fftfreq(P, d=1.0 / P).round().astype(int)
    fhat = np.fft.fft(f.values) / P * np.exp(-1j * np.pi * n / P)
    return n, fhat


def synthesize(fhat: np.ndarray, real: bool = False) -> GridFunction:
    """Inverse of :func:`full_spectrum`."""
    P = fhat.size
    n = np.fft.fftfreq(P, d=1.0 / P).round().astype(int)
    vals = np.fft.ifft(fhat * np.exp(1j * np.pi * n / P)) * P
    return GridFunction(vals.real if real else vals)


def nyquist_mask(P: int) -> np.ndarray:
    """Boolean mask (FFT order) that is False only at the Nyquist mode."""
    mask = np.ones(P, dtype=bool)
    if P % 2 == 0:
        mask[P // 2] = False
    return mask


def dft(f: GridFunction, K: int) -> FourierVector:
    """Coefficients ``fhat(n)``, ``|n| <= K``, by the midpoint rule."""
    _unit_domain(f, "dft")
    if K < 0:
        raise ValueError("K must be nonnegative")
    _alias_check(K, f.P, "K")
    n, fhat = full_spectrum(f)
    modes = np.arange(-K, K + 1)
    return FourierVector(fhat[modes % f.P], K)


# -- convolution ---------------------------------------------------------------

def convolve(f: GridFunction, g: GridFunction) -> GridFunction:
    """Circular convolution ``(f * g)(x) = int_0^1 f(x - t) g(t) dt``.

    Evaluated through the convolution theorem on the full discrete band. The
    Nyquist mode is dropped: split symmetrically between ``+-P/2`` it
    cancels in any product.
    """
    _unit_domain(f, "convolve")
    f._check_same_grid(g)
    _, fh = full_spectrum(f)
    _, gh = full_spectrum(g)
    prod = fh * gh * nyquist_mask(f.P)
    return synthesize(prod, real=f.is_real and g.is_real)


def conv_power(f: GridFunction, k: int) -> GridFunction:
    """k-fold self-convolution ``f^<k>``; ``f^<1> = f``."""
    if k < 1:
        raise ValueError("convolution power must be >= 1")
    if k == 1:
        return f
    _unit_domain(f, "conv_power")
    _, fh = full_spectrum(f)
    return synthesize(fh ** k * nyquist_mask(f.P), real=f.is_real)


# -- parity, reflection and multiplication ---------------------------------------

def reflect(f: GridFunction) -> GridFunction:
    """``(Rf)(x) = f(L - x)``; exact on the midpoint grid."""
    return f.with_values(f.values[::-1])


def odd_part(f: GridFunction) -> GridFunction:
    return f.with_values((f.values - f.values[::-1]) / 2)


def even_part(f: GridFunction) -> GridFunction:
    return f.with_values((f.values + f.values[::-1]) / 2)


def multiply_ix(f: GridFunction, power: int = 1) -> GridFunction:
    """``(ix)^power f``."""
    return f.with_values(f.values * (1j * f.x) ** power)


def multiply_i_centered(f: GridFunction, power: int = 1) -> GridFunction:
    """``(i(1 - 2x))^power f``."""
    _unit_domain(f, "multiply_i_centered")
    return f.with_values(f.values * (1j * (1 - 2 * f.x)) ** power)


# -- norms -------------------------------------------------------------------------

def sobolev_norm(f: GridFunction, s: float = 0) -> float:
    """``W_2^s`` norm for ``s`` in {0, 1}.

    ``s = 1`` uses ``(||f||^2 + ||f'||^2)^(1/2)`` with a second-order
    finite-difference derivative (one-sided at the first and last midpoint).
    """
    l2 = float(np.sqrt(np.sum(np.abs(f.values) ** 2) * f.h))
    if s == 0:
        return l2
    if s == 1:
        if f.P < 3:
            raise ValueError("need at least 3 samples for a derivative")
        df = np.gradient(f.values, f.h, edge_order=2)
        return float(np.sqrt(l2 ** 2 + np.sum(np.abs(df) ** 2) * f.h))
    raise UnsupportedOrder(f"function-side Sobolev norm of order {s} is not supported")


def l2_norm(f: GridFunction) -> float:
    return sobolev_norm(f, 0)


# -- sequence <-> function -----------------------------------------------------------

def rho_to_function(rho, P: int) -> GridFunction:
    """Sine synthesis ``f(x) = 2 sum_n rho_n sin(pi n x)`` so that ``s_n(f) = rho_n``.

    ``rho`` is either a plain sequence (``rho[0]`` is ``rho_1``) or an object
    with an ``entries`` attribute.
    """
    entries = np.asarray(getattr(rho, "entries", rho), dtype=float)
    if P < 4 * entries.size:
        raise AliasGuard(f"grid P={P} too coarse for {entries.size} sine modes (need P >= {4 * entries.size})")
    x = midpoints(P)
    n = np.arange(1, entries.size + 1)
    if entries.size == 0:
        return GridFunction(np.zeros(P))
    return GridFunction(2.0 * np.sin(np.pi * np.outer(x, n)) @ entries)


# -- CSV ------------------------------------------------------------------------

def write_csv(f: GridFunction, path) -> None:
    vals = np.asarray(f.values, dtype=complex)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "re", "im"])
        for xi, v in zip(f.x, vals):
            w.writerow([f"{xi:.17g}", f"{v.real:.17g}", f"{v.imag:.17g}"])


def read_csv(path, tol: float = 1e-12) -> GridFunction:
    """Load a grid function, validating that the abscissae are midpoints."""
    text = Path(path).read_text()
    return parse_csv(text, tol=tol)


def parse_csv(text: str, tol: float = 1e-12) -> GridFunction:
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows or [c.strip() for c in rows[0]] != ["x", "re", "im"]:
        raise ParseError('header must be "x,re,im"', row=1)
    xs, re, im, linenos = [], [], [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 3:
            raise ParseError(f"expected 3 fields, got {len(row)}", row=lineno)
        try:
            a, b, c = (float(v) for v in row)
        except ValueError as exc:
            raise ParseError(f"non-numeric field ({exc})", row=lineno) from None
        if not all(np.isfinite([a, b, c])):
            raise ParseError("non-finite value", row=lineno)
        xs.append(a)
        re.append(b)
        im.append(c)
        linenos.append(lineno)
    if not xs:
        raise ParseError("no data rows")
    xs = np.asarray(xs)
    P = xs.size
    L = 2 * P * xs[0]
    L_round = 1.0 if abs(L - 1) < 0.25 else 2.0 if abs(L - 2) < 0.5 else None
    if L_round is None:
        raise ParseError(f"first abscissa {xs[0]!r} is not a midpoint of a [0,1] or [0,2] grid", row=linenos[0])
    expected = midpoints(P, L_round)
    bad = np.nonzero(np.abs(xs - expected) > tol)[0]
    if bad.size:
        i = int(bad[0])
        raise ParseError(f"abscissa {xs[i]!r} is not the midpoint {expected[i]!r}", row=linenos[i])
    im = np.asarray(im)
    vals = np.asarray(re) if not np.any(im) else np.asarray(re) + 1j * im
    return GridFunction(vals, L_round)
