"""Random spectral data for the property suites and the stability harness.

All samplers take a ``numpy.random.Generator`` and draw ``rho`` sequences
with a decaying random profile, then keep the first draw that passes the
class check. ``RejectionExhausted`` is raised after ``max_draws`` failures.
"""
from __future__ import annotations

import numpy as np

from ..errors import DataClassError, RejectionExhausted
from ..spectral_data import (NormingSpectra, TwoSpectra, validate_norming_spectra,
                             validate_two_spectra)
from .riesz import BasisKind, BasisSpec

MAX_DRAWS = 100


def _random_profile(rng: np.random.Generator, size: int, r: float, s: float = 0.0,
                    decay: float = 0.5) -> np.ndarray:
    """Gaussian entries with ``n^{-decay}`` profile, scaled to a norm in ``(0, r]``."""
    n = np.arange(1, size + 1, dtype=float)
    v = rng.standard_normal(size) * n ** (-decay - s)
    norm = np.sqrt(np.sum(n ** (2 * s) * v ** 2))
    return v * (r * rng.uniform(0.05, 1.0) / norm)


def sample_two_spectra(rng: np.random.Generator, N: int, h: float, r: float,
                       s: float = 0.0, max_draws: int = MAX_DRAWS) -> TwoSpectra:
    """A random element of the class ``N^s(h, r)`` with ``N`` stored pairs."""
    for _ in range(max_draws):
        data = TwoSpectra.from_rho(_random_profile(rng, 2 * N, r, s), s)
        try:
            validate_two_spectra(data, h, r)
        except DataClassError:
            continue
        return data
    raise RejectionExhausted(f"no admissible two-spectra sample in {max_draws} draws")


def sample_lambda(rng: np.random.Generator, N: int, h: float, r: float,
                  s: float = 0.0, max_draws: int = MAX_DRAWS) -> NormingSpectra:
    """Random Dirichlet data in ``L^s(h, r)`` (norming constants left at 2)."""
    for _ in range(max_draws):
        rho = _random_profile(rng, N, r, s)
        n = np.arange(1, N + 1)
        data = NormingSpectra((np.pi * n + rho) ** 2, np.full(N, 2.0), s)
        try:
            validate_norming_spectra(data, h, r)
        except DataClassError:
            continue
        return data
    raise RejectionExhausted(f"no admissible lambda sample in {max_draws} draws")


def sine_family(data) -> BasisSpec:
    """``sin(sqrt(lambda_n) x)`` for the stored Dirichlet eigenvalues."""
    return BasisSpec(BasisKind.SINE_OMEGA, np.sqrt(data.lam))


def kadets_family(rng: np.random.Generator, N: int, max_dev: float = np.pi / 8,
                  kind: BasisKind = BasisKind.SINE_OMEGA) -> BasisSpec:
    """``omega_n = pi n + delta_n`` with ``delta_n`` uniform in ``[-max_dev, max_dev]``."""
    n = np.arange(1, N + 1)
    return BasisSpec(kind, np.pi * n + rng.uniform(-max_dev, max_dev, N))
