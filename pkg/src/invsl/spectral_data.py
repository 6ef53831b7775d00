"""Spectral data containers, their rho-coordinates and admissibility checks.

Two-spectra data ``(lambda, mu)`` is identified with the sequence ::

    rho_{2n}   = sqrt(lambda_n) - pi n
    rho_{2n-1} = sqrt(mu_n) - pi (n - 1/2)

and norming data ``(lambda, alpha)`` with ``rho`` (odd entries zero) and
``beta_{2n} = alpha_n - 2``. Only finitely many values are stored; beyond
the stored prefix the data is padded with the unperturbed values
``pi^2 k^2``, ``pi^2 (k - 1/2)^2`` and ``alpha_k = 2``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (InterlacingViolation, NormBudgetExceeded, ParseError,
                     SeparationViolation)

UNPERTURBED_PAD = "unperturbed_pad"
SEPARATION_SLACK = 1e-12


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class RhoSequence:
    """Weighted sequence ``(rho_1, ..., rho_M)`` with Sobolev weight ``s``.

    ``e0_coeff``/``e1_coeff`` are the coordinates along the singular
    directions ``e_j = ((-1)^{j(n-1)} / (pi n))``; they may be nonzero only
    for ``s >= 1/2``.
    """

    entries: np.ndarray
    weight_s: float = 0.0
    e0_coeff: float = 0.0
    e1_coeff: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen(self.entries))
        if not 0.0 <= self.weight_s <= 1.0:
            raise ValueError("weight s must lie in [0, 1]")
        if self.weight_s < 0.5 and (self.e0_coeff or self.e1_coeff):
            raise ValueError("singular components need s >= 1/2")
        object.__setattr__(self, "_norm", _weighted_norm(
            self.entries, self.weight_s, self.e0_coeff, self.e1_coeff))

    @property
    def norm(self) -> float:
        """Cached ``||rho||_s`` for the stored weight."""
        return self._norm

    def __len__(self):
        return self.entries.size

    def __getitem__(self, n: int) -> float:
        """1-based access, ``rho[n] = rho_n``; zero beyond the stored prefix."""
        if n < 1:
            raise IndexError("rho is indexed from 1")
        return float(self.entries[n - 1]) if n <= self.entries.size else 0.0

    def even(self) -> np.ndarray:
        """``(rho_2, rho_4, ...)``."""
        return self.entries[1::2]

    def odd(self) -> np.ndarray:
        """``(rho_1, rho_3, ...)``."""
        return self.entries[0::2]


def _weighted_norm(entries, s, e0=0.0, e1=0.0) -> float:
    n = np.arange(1, entries.size + 1, dtype=float)
    return math.sqrt(float(np.sum(n ** (2 * s) * entries ** 2)) + e0 ** 2 + e1 ** 2)


def seq_norm(rho, s: float | None = None) -> float:
    """``(sum n^{2s} rho_n^2 + e0^2 + e1^2)^{1/2}``.

    ``rho`` may be a :class:`RhoSequence` (``s`` defaults to its weight) or
    a plain array (``s`` defaults to 0).
    """
    if isinstance(rho, RhoSequence):
        s = rho.weight_s if s is None else s
        e0, e1 = rho.e0_coeff, rho.e1_coeff
        entries = rho.entries
    else:
        s = 0.0 if s is None else s
        e0 = e1 = 0.0
        entries = np.asarray(rho, dtype=float)
    if not 0.0 <= s <= 1.0:
        raise ValueError("s must lie in [0, 1]")
    return _weighted_norm(entries, s, e0, e1)


@dataclass(frozen=True, eq=False)
class TwoSpectra:
    """Dirichlet and quasi-Neumann eigenvalues, padded beyond ``N``."""

    lam: np.ndarray
    mu: np.ndarray
    weight_s: float = 0.0
    tail: str = UNPERTURBED_PAD

    def __post_init__(self):
        object.__setattr__(self, "lam", _frozen(self.lam))
        object.__setattr__(self, "mu", _frozen(self.mu))
        if self.lam.ndim != 1 or self.lam.size == 0:
            raise ValueError("lambda must be a non-empty list")
        if self.mu.shape != self.lam.shape:
            raise ValueError("lambda and mu must have equal length")
        if self.tail != UNPERTURBED_PAD:
            raise ValueError(f"unsupported tail convention {self.tail!r}")
        if np.any(self.lam <= 0) or np.any(self.mu <= 0):
            raise ValueError("eigenvalues must be positive")

    @property
    def N(self) -> int:
        return self.lam.size

    @classmethod
    def unperturbed(cls, N: int, weight_s: float = 0.0) -> "TwoSpectra":
        n = np.arange(1, N + 1)
        return cls((np.pi * n) ** 2, (np.pi * (n - 0.5)) ** 2, weight_s)

    @classmethod
    def from_rho(cls, rho, weight_s: float = 0.0) -> "TwoSpectra":
        """Inverse of :func:`rho_of` (``rho`` has even length ``2N``)."""
        r = np.asarray(getattr(rho, "entries", rho), dtype=float)
        if r.size % 2:
            raise ValueError("two-spectra rho needs an even number of entries")
        n = np.arange(1, r.size // 2 + 1)
        lam = (np.pi * n + r[1::2]) ** 2
        mu = (np.pi * (n - 0.5) + r[0::2]) ** 2
        return cls(lam, mu, weight_s)

    def sqrt_lambda(self, n_max: int | None = None) -> np.ndarray:
        """``sqrt(lambda_n)`` for ``n = 1..n_max`` including the pad."""
        return _padded_sqrt(self.lam, n_max, 0.0)

    def sqrt_mu(self, n_max: int | None = None) -> np.ndarray:
        return _padded_sqrt(self.mu, n_max, 0.5)


@dataclass(frozen=True, eq=False)
class NormingSpectra:
    """Dirichlet eigenvalues with norming constants, padded beyond ``N``."""

    lam: np.ndarray
    alpha: np.ndarray
    weight_s: float = 0.0
    tail: str = UNPERTURBED_PAD

    def __post_init__(self):
        object.__setattr__(self, "lam", _frozen(self.lam))
        object.__setattr__(self, "alpha", _frozen(self.alpha))
        if self.lam.ndim != 1 or self.lam.size == 0:
            raise ValueError("lambda must be a non-empty list")
        if self.alpha.shape != self.lam.shape:
            raise ValueError("lambda and alpha must have equal length")
        if self.tail != UNPERTURBED_PAD:
            raise ValueError(f"unsupported tail convention {self.tail!r}")
        if np.any(self.lam <= 0):
            raise ValueError("eigenvalues must be positive")

    @property
    def N(self) -> int:
        return self.lam.size

    @classmethod
    def unperturbed(cls, N: int, weight_s: float = 0.0) -> "NormingSpectra":
        n = np.arange(1, N + 1)
        return cls((np.pi * n) ** 2, np.full(N, 2.0), weight_s)

    def sqrt_lambda(self, n_max: int | None = None) -> np.ndarray:
        return _padded_sqrt(self.lam, n_max, 0.0)


def _padded_sqrt(values, n_max, offset):
    root = np.sqrt(values)
    if n_max is None or n_max <= values.size:
        return root[:n_max]
    k = np.arange(values.size + 1, n_max + 1)
    return np.concatenate([root, np.pi * (k - offset)])


@dataclass(frozen=True)
class SeparationReport:
    h_two_spectra: float
    h_lambda: float
    r_norm: float

    def as_dict(self) -> dict:
        return {"h_two_spectra": self.h_two_spectra, "h_lambda": self.h_lambda,
                "r_norm": self.r_norm}


def rho_of(data) -> RhoSequence:
    """rho-coordinates of two-spectra or norming data."""
    if isinstance(data, TwoSpectra):
        n = np.arange(1, data.N + 1)
        r = np.empty(2 * data.N)
        r[1::2] = np.sqrt(data.lam) - np.pi * n
        r[0::2] = np.sqrt(data.mu) - np.pi * (n - 0.5)
        return RhoSequence(r, data.weight_s)
    if isinstance(data, NormingSpectra):
        n = np.arange(1, data.N + 1)
        r = np.zeros(2 * data.N)
        r[1::2] = np.sqrt(data.lam) - np.pi * n
        return RhoSequence(r, data.weight_s)
    raise TypeError(f"expected TwoSpectra or NormingSpectra, got {type(data).__name__}")


def beta_of(data: NormingSpectra) -> RhoSequence:
    """``beta`` with ``beta_{2n-1} = 0`` and ``beta_{2n} = alpha_n - 2``."""
    b = np.zeros(2 * data.N)
    b[1::2] = data.alpha - 2.0
    return RhoSequence(b, data.weight_s)


def _merged_roots(data: TwoSpectra) -> np.ndarray:
    """``(sqrt(mu_1), sqrt(lambda_1), sqrt(mu_2), ...)``."""
    w = np.empty(2 * data.N)
    w[0::2] = np.sqrt(data.mu)
    w[1::2] = np.sqrt(data.lam)
    return w


def separation_report(data) -> SeparationReport:
    """Report without enforcing any bound; includes the pad where it matters."""
    r = rho_of(data)
    lam_root = data.sqrt_lambda(data.N + 1)
    h_lam = float(np.min(np.diff(lam_root)))
    if isinstance(data, TwoSpectra):
        w = np.concatenate([_merged_roots(data), [np.pi * (data.N + 0.5)]])
        h_two = float(np.min(np.diff(w)))
    else:
        h_two = float("nan")
    return SeparationReport(h_two, h_lam, seq_norm(r, data.weight_s))


def check_alternation(data: TwoSpectra) -> None:
    """Strict interlacing ``mu_n < lambda_n < mu_{n+1}`` (pad included), without ``mu_1 >= 1``."""
    mu_next = np.concatenate([data.mu[1:], [(np.pi * (data.N + 0.5)) ** 2]])
    for n in range(data.N):
        if not (data.mu[n] < data.lam[n] < mu_next[n]):
            raise InterlacingViolation(
                n + 1, f"need mu_n < lambda_n < mu_(n+1), got {data.mu[n]!r}, "
                f"{data.lam[n]!r}, {mu_next[n]!r}")


def validate_two_spectra(data: TwoSpectra, h: float, r: float) -> SeparationReport:
    """Check membership of ``data`` in the class N^s(h, r).

    The stored spectra are checked for N1 (``mu_1 >= 1`` and strict
    interlacing, including ``lambda_N < mu_{N+1}`` for the padded
    ``mu_{N+1}``), ``h``-separation of the merged square roots and
    ``||rho||_s <= r``.
    """
    if data.mu[0] < 1.0:
        raise InterlacingViolation(1, f"mu_1 = {data.mu[0]!r} < 1")
    check_alternation(data)
    rep = separation_report(data)
    if rep.h_two_spectra < h - SEPARATION_SLACK:
        raise SeparationViolation(rep.h_two_spectra, h)
    if rep.r_norm > r:
        raise NormBudgetExceeded(rep.r_norm, r)
    return rep


def check_increasing(data: NormingSpectra) -> None:
    """Strictly increasing ``lambda`` (pad included) and positive ``alpha``."""
    steps = np.diff(data.sqrt_lambda(data.N + 1))
    if np.any(steps <= 0):
        raise InterlacingViolation(int(np.argmin(steps)) + 1, "lambda not strictly increasing")
    if np.any(data.alpha <= 0):
        raise InterlacingViolation(int(np.argmin(data.alpha)) + 1, "norming constant not positive")


def validate_norming_spectra(data: NormingSpectra, h: float, r: float,
                             h_alpha: float | None = None,
                             r_alpha: float | None = None) -> SeparationReport:
    """Membership in L^s(h, r) x A^s(h', r') (the alpha class is optional)."""
    if data.lam[0] < 1.0:
        raise InterlacingViolation(1, f"lambda_1 = {data.lam[0]!r} < 1")
    check_increasing(data)
    rep = separation_report(data)
    if rep.h_lambda < h - SEPARATION_SLACK:
        raise SeparationViolation(rep.h_lambda, h)
    if rep.r_norm > r:
        raise NormBudgetExceeded(rep.r_norm, r)
    if h_alpha is not None and data.alpha.min() < h_alpha - SEPARATION_SLACK:
        raise SeparationViolation(float(data.alpha.min()), h_alpha)
    if r_alpha is not None:
        b = seq_norm(beta_of(data), data.weight_s)
        if b > r_alpha:
            raise NormBudgetExceeded(b, r_alpha)
    return rep


# -- JSON ------------------------------------------------------------------------

def to_json_dict(data) -> dict:
    doc = {"s": data.weight_s, "lambda": data.lam.tolist(), "mu": None,
           "alpha": None, "tail": data.tail}
    if isinstance(data, TwoSpectra):
        doc["mu"] = data.mu.tolist()
    else:
        doc["alpha"] = data.alpha.tolist()
    return doc


def dumps(data, **extra) -> str:
    doc = to_json_dict(data)
    doc.update(extra)
    return json.dumps(doc, indent=2, default=_json_default) + "\n"


def _json_default(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"not JSON serialisable: {type(obj).__name__}")


class _Repr17(float):
    def __repr__(self):
        return format(float(self), ".17g")


def float17(obj):
    """Recursively wrap floats so ``json.dumps`` prints 17 significant digits."""
    if isinstance(obj, dict):
        return {k: float17(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [float17(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return float17(obj.tolist())
    if isinstance(obj, (float, np.floating)) and math.isfinite(obj):
        return _Repr17(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def from_json_dict(doc: dict):
    if not isinstance(doc, dict):
        raise ParseError("spectral document must be a JSON object")
    try:
        s = float(doc.get("s", 0.0))
        lam = doc["lambda"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"missing or invalid field: {exc}") from None
    tail = doc.get("tail", UNPERTURBED_PAD)
    mu, alpha = doc.get("mu"), doc.get("alpha")
    if (mu is None) == (alpha is None):
        raise ParseError('exactly one of "mu" and "alpha" must be non-null')
    try:
        if mu is not None:
            return TwoSpectra(np.asarray(lam, dtype=float), np.asarray(mu, dtype=float), s, tail)
        return NormingSpectra(np.asarray(lam, dtype=float), np.asarray(alpha, dtype=float), s, tail)
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from None


def load(path):
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", row=exc.lineno) from None
    return from_json_dict(doc)
