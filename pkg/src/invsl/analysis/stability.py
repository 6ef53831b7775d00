"""Empirical Lipschitz harness for the two-spectra inverse map.

For each size ``eps`` and trial the rho-sequence of the base data is moved
by ``eps`` along a random unit direction (weighted norm of order ``s``),
both data sets are reconstructed and ``||sigma_1 - sigma_2|| / eps`` is
recorded. The direction of a trial depends only on ``(seed, trial)``, so
the same directions are reused for every ``eps``. A direction is rejected
when the perturbed data loses interlacing or ``h/2``-separation.
"""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..direct import forward
from ..errors import DataClassError, RejectionExhausted
from ..fourier import GridFunction, sobolev_norm
from ..glm import reconstruct
from ..spectral_data import (TwoSpectra, check_alternation, float17, rho_of,
                             separation_report)

MAX_DRAWS = 100


@dataclass
class StabilityReport:
    epsilons: list
    ratios: list                    # ratios[i][t] for epsilons[i], trial t
    max_ratio: float
    s: float = 0.0
    seed: int = 0
    extra: dict = field(default_factory=dict)

    def max_by_eps(self) -> list:
        return [float(max(r)) for r in self.ratios]

    def decade_variation(self) -> float:
        """Largest over smallest per-``eps`` maximum ratio."""
        m = self.max_by_eps()
        return max(m) / min(m)

    def as_dict(self) -> dict:
        return {"epsilons": self.epsilons, "ratios": self.ratios,
                "max_ratio": self.max_ratio, "max_by_eps": self.max_by_eps(),
                "decade_variation": self.decade_variation(), "s": self.s,
                "seed": self.seed, **self.extra}

    def to_json(self) -> str:
        return json.dumps(float17(self.as_dict()), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["eps", "trial", "ratio"])
        for eps, row in zip(self.epsilons, self.ratios):
            for t, ratio in enumerate(row):
                w.writerow([format(eps, ".17g"), t, format(ratio, ".17g")])
        return buf.getvalue()


def _weights(size: int, s: float) -> np.ndarray:
    return np.arange(1, size + 1, dtype=float) ** s


def admissible(data: TwoSpectra, h: float) -> bool:
    """Interlacing (pad included) and separation at least ``h``."""
    try:
        check_alternation(data)
    except DataClassError:
        return False
    return separation_report(data).h_two_spectra >= h


def perturb(base: TwoSpectra, direction: np.ndarray, eps: float) -> TwoSpectra:
    r = rho_of(base).entries + eps * direction
    return TwoSpectra.from_rho(r, base.weight_s)


def trial_direction(base: TwoSpectra, eps_max: float, h: float, s: float,
                    seed: int, trial: int, max_draws: int = MAX_DRAWS) -> np.ndarray:
    """Unit direction (weighted ``s``-norm) admissible at the largest ``eps``.

    Admissibility at ``eps_max`` implies it for smaller sizes: the checks
    are linear inequalities in ``rho`` and the base data satisfies them.
    """
    rng = np.random.default_rng([seed, trial])
    wts = _weights(2 * base.N, s)
    for _ in range(max_draws):
        d = rng.standard_normal(2 * base.N) / wts
        d /= np.linalg.norm(wts * d)
        if admissible(perturb(base, d, eps_max), h):
            return d
    raise RejectionExhausted(f"trial {trial}: no admissible direction in {max_draws} draws")


def sigma_norm(f: GridFunction, s: float) -> float:
    return sobolev_norm(f, s)


def lipschitz_sweep(base_sigma: GridFunction, epsilons, trials: int, seed: int = 0,
                    N: int = 32, P: int = 256, h: float = 0.3, s: float = 0.0,
                    window_J: int | None = None, workers: int = 1) -> StabilityReport:
    """``||sigma_1 - sigma_2||_s / ||nu_1 - nu_2||_s`` over random perturbations."""
    if trials < 1:
        raise ValueError("trials must be positive")
    if s not in (0, 1):
        raise ValueError("function-side norms are available for s = 0 and s = 1 only")
    epsilons = [float(e) for e in epsilons]
    if not epsilons or min(epsilons) <= 0:
        raise ValueError("epsilons must be positive")
    fw = forward(base_sigma, N)
    base = TwoSpectra(fw.lam, fw.mu, s)
    if not admissible(base, h):
        raise DataClassError(f"base data is not {h}-separated with interlacing")
    sigma0 = reconstruct(base, P, window_J).sigma
    half = h / 2

    def run(trial):
        d = trial_direction(base, max(epsilons), half, s, seed, trial)
        out = []
        for eps in epsilons:
            sigma1 = reconstruct(perturb(base, d, eps), P, window_J).sigma
            out.append(sigma_norm(sigma1 - sigma0, s) / eps)
        return out

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            by_trial = list(pool.map(run, range(trials)))
    else:
        by_trial = [run(t) for t in range(trials)]
    ratios = [[by_trial[t][i] for t in range(trials)] for i in range(len(epsilons))]
    return StabilityReport(epsilons, ratios, float(np.max(ratios)), s, seed,
                           {"N": N, "P": P, "h": h, "trials": trials})


def directional_estimates(base_sigma: GridFunction, index: int, epsilons,
                          N: int = 32, P: int = 256, window_J: int | None = None) -> list:
    """``||sigma_+ - sigma_-|| / (2 eps)`` for ``rho_index -> rho_index +- eps``."""
    fw = forward(base_sigma, N)
    base = TwoSpectra(fw.lam, fw.mu)
    d = np.zeros(2 * N)
    d[index - 1] = 1.0
    out = []
    for eps in epsilons:
        plus = reconstruct(perturb(base, d, eps), P, window_J).sigma
        minus = reconstruct(perturb(base, d, -eps), P, window_J).sigma
        out.append(sigma_norm(plus - minus, 0) / (2 * eps))
    return out
