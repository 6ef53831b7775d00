"""The ten acceptance criteria at their stated tolerances.

Each test records one ``PASS``/``FAIL`` line (shown in the terminal summary
and printed to stdout) listing every sub-check. Criteria whose literal
statement does not hold are strict xfails: they print ``FAIL`` and keep
the suite green, and they turn into errors if they ever start passing.
"""
import sys
import time

import numpy as np
import pytest

from invsl.analysis.maps import (H_residual, cosh_identity_check, partial_derivative_check,
                                 psi_cosine_expression, psi_even_cosine_coeffs,
                                 roundtrip_pair)
from invsl.analysis.riesz import BasisKind, BasisSpec, gram_bounds, gram_matrix
from invsl.analysis.sampling import (kadets_family, sample_lambda, sample_two_spectra,
                                     sine_family)
from invsl.analysis.stability import directional_estimates, lipschitz_sweep
from invsl.direct import forward
from invsl.fourier import GridFunction, convolve, dft, even_part, sobolev_norm
from invsl.glm import reconstruct
from invsl.norming import (log_abs_c_over_omega, log_abs_sdot, norming_constants,
                           uniform_bounds_probe, uniform_log_bound)
from invsl.spectral_data import NormingSpectra, TwoSpectra, rho_of

from conftest import ACCEPTANCE, sine_sigma, step_sigma
from oracles import fd_constant_q, tan_roots


def report(k, title, checks):
    """Record and print the line for criterion ``k``; return whether all checks hold."""
    ok = all(passed for passed, _ in checks.values())
    parts = "; ".join(f"{name}={detail}{'' if passed else ' (FAIL)'}"
                      for name, (passed, detail) in checks.items())
    line = f"criterion {k:2d} {'PASS' if ok else 'FAIL'}  {title}: {parts}"
    ACCEPTANCE[k] = line
    print(line)
    return ok


def check(value, limit, op="<="):
    passed = value <= limit if op == "<=" else value > limit if op == ">" else value < limit
    return bool(passed), f"{value:.3g}"


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


def test_criterion_1_baseline():
    with Timer() as t:
        fw = forward(GridFunction.zeros(256), 8)
        n = np.arange(1, 9)
        lam_err = np.max(np.abs(fw.lam / (np.pi * n) ** 2 - 1))
        mu_err = np.max(np.abs(fw.mu / (np.pi * (n - 0.5)) ** 2 - 1))
        alpha_err = np.max(np.abs(fw.alpha / 2 - 1))
        sigma = reconstruct(TwoSpectra.unperturbed(8), 256).sigma
    assert report(1, "baseline exactness", {
        "lambda_rel": check(lam_err, 1e-6),
        "mu_rel": check(mu_err, 1e-6),
        "alpha_rel": check(alpha_err, 1e-6),
        "sigma_L2": check(sobolev_norm(sigma, 0), 1e-10),
        "runtime_s": check(t.seconds, 1.0, "<"),
    })


# The mu part of the statement is false for sigma = x: its quasi-Neumann
# condition is y'(1) = y(1), whose spectrum is 1 + z^2 with tan z = z.
@pytest.mark.xfail(strict=True, reason="mu_n(sigma = x) is not pi^2 (n - 1/2)^2 + 1")
def test_criterion_2_constant_shift():
    n = np.arange(1, 17)
    lam_closed = (np.pi * n) ** 2 + 1
    mu_closed = (np.pi * (n - 0.5)) ** 2 + 1
    with Timer() as t:
        fd_lam = fd_constant_q(1.0, 16)
        fd_mu = fd_constant_q(1.0, 16, robin=1.0)
        fw = forward(GridFunction.sample(lambda x: x, 4096), 16)
    robin_exact = 1 + tan_roots(16) ** 2
    assert report(2, "constant shift sigma = x", {
        "fd_oracle_lambda": check(np.max(np.abs(fd_lam - lam_closed)), 1e-4),
        "fd_oracle_mu_vs_robin": check(np.max(np.abs(fd_mu - robin_exact)), 1e-4),
        "lambda_abs": check(np.max(np.abs(fw.lam - lam_closed)), 1e-4),
        "mu_vs_fd_oracle": check(np.max(np.abs(fw.mu - fd_mu)), 1e-4),
        "mu_abs_stated_form": check(np.max(np.abs(fw.mu - mu_closed)), 1e-4),
        "runtime_s": check(t.seconds, 10.0, "<"),
    })


def test_criterion_2_companion_fixed_end_primitive():
    # sigma = x - 1 is the primitive of q = 1 with sigma(1) = 0
    n = np.arange(1, 17)
    fw = forward(GridFunction.sample(lambda x: x - 1.0, 4096), 16)
    assert np.max(np.abs(fw.lam - ((np.pi * n) ** 2 + 1))) <= 1e-4
    assert np.max(np.abs(fw.mu - ((np.pi * (n - 0.5)) ** 2 + 1))) <= 1e-4
    assert np.max(np.abs(fw.mu - fd_constant_q(1.0, 16, robin=0.0))) <= 1e-4


def test_criterion_3_round_trip_smooth():
    with Timer() as t:
        fw = forward(sine_sigma(4096), 32)
        sol = reconstruct(TwoSpectra(fw.lam, fw.mu), 256)
    assert report(3, "round trip 0.5 sin 2 pi x", {
        "L2_error": check(sobolev_norm(sol.sigma - sine_sigma(256), 0), 0.05),
        "glm_residual": check(sol.residual, 1e-8),
        "min_eig_I_plus_F": check(sol.min_eig_I_plus_F, 0.0, ">"),
        "runtime_s": check(t.seconds, 60.0, "<"),
    })


def test_criterion_4_round_trip_singular():
    with Timer() as t:
        fw = forward(step_sigma(4096), 48)
        sol = reconstruct(TwoSpectra(fw.lam, fw.mu), 256)
    assert report(4, "round trip step 1_[1/2,1]", {
        "L2_error": check(sobolev_norm(sol.sigma - step_sigma(256), 0), 0.1),
        "runtime_s": check(t.seconds, 120.0, "<"),
    })


def test_criterion_5_norming_cross_oracle():
    fw = forward(sine_sigma(4096), 32)
    data = TwoSpectra(fw.lam, fw.mu)
    alpha = norming_constants(data).alpha
    rel = np.max(np.abs(alpha[:16] / fw.alpha[:16] - 1))
    worst = 0.0
    for n in range(1, 33):
        for fn in (log_abs_sdot, log_abs_c_over_omega):
            a, b = np.exp(fn(data, n, 4 * 32)), np.exp(fn(data, n, 8 * 32))
            worst = max(worst, abs(a - b))
    assert report(5, "norming-constant cross-oracle", {
        "alpha_rel_n<=16": check(rel, 1e-3),
        "window_doubling": check(worst, 1e-8),
    })


def test_criterion_6_interlacing_suite():
    rng = np.random.default_rng(2024)
    x = (np.arange(512) + 0.5) / 512
    violations = 0
    for _ in range(20):
        k = np.arange(1, 7)[:, None]
        v = (rng.standard_normal((6, 1)) * np.sin(2 * np.pi * k * x)
             + rng.standard_normal((6, 1)) * np.cos(2 * np.pi * k * x)).sum(0) / k.ravel().sum()
        v *= rng.uniform(0.05, 1.0) / np.sqrt(np.mean(v ** 2))
        fw = forward(GridFunction(v), 24)
        violations += int(np.sum(~(fw.mu < fw.lam)) + np.sum(~(fw.lam[:-1] < fw.mu[1:])))
    assert report(6, "interlacing, 20 random smooth sigma", {
        "violations": (violations == 0, str(violations)),
    })


@pytest.mark.slow
def test_criterion_7_lipschitz_signature():
    checks = {}
    eps = [1e-2, 3e-3, 1e-3]
    for name, sigma in (("zero", GridFunction.zeros(256)), ("sine", sine_sigma(256))):
        rep = lipschitz_sweep(sigma, eps, 10, seed=0)
        checks[f"{name}_max_ratio"] = (bool(np.isfinite(rep.max_ratio)), f"{rep.max_ratio:.4g}")
        checks[f"{name}_decade_var"] = check(rep.decade_variation(), 2.0, "<")
        d = directional_estimates(sigma, 2, [1e-2, 1e-3])
        checks[f"{name}_directional"] = check(abs(d[0] - d[1]) / d[1], 0.1)
    assert report(7, "Lipschitz signature", checks)


def test_criterion_8_riesz_bounds():
    n = np.arange(1, 49)
    G = gram_matrix(BasisSpec(BasisKind.SINE_OMEGA, np.pi * n))
    rng = np.random.default_rng(8)
    sampled = [gram_bounds(sine_family(sample_lambda(rng, 48, 0.3, 0.5))) for _ in range(20)]
    kadets = [gram_bounds(kadets_family(rng, 48)) for _ in range(20)]
    assert report(8, "Riesz bounds", {
        "gram_identity": check(np.max(np.abs(G - np.eye(48))), 1e-12),
        "class_m_hat_min": check(min(b.m_hat for b in sampled), 0.01, ">"),
        "class_M_hat_max": check(max(b.M_hat for b in sampled), 100.0, "<"),
        "kadets_m_hat_min": check(min(b.m_hat for b in kadets), 0.1, ">"),
    })


# "Decreasing under grid doubling" cannot hold: the round-trip residual sits
# at round-off (about 3e-13) at every grid, so it fluctuates instead.
@pytest.mark.xfail(strict=True, reason="H residual is at round-off at every P")
def test_criterion_9_series_identities():
    rng = np.random.default_rng(9)
    P = 256

    def bandlimited(K=20):
        m = np.arange(-K, K + 1)
        c = rng.standard_normal(m.size) + 1j * rng.standard_normal(m.size)
        return GridFunction.sample(lambda x: np.exp(2j * np.pi * np.outer(x, m)) @ c, P)

    f, g = bandlimited(), bandlimited()
    conv = np.max(np.abs(dft(convolve(f, g), 60).coeffs - dft(f, 60).coeffs * dft(g, 60).coeffs))

    odd = GridFunction.sample(lambda x: 0.2 * np.sin(2 * np.pi * x) + 0.05 * np.sin(6 * np.pi * x), P)
    cosh = cosh_identity_check(GridFunction.sample(lambda x: 0.2 * np.sin(2 * np.pi * x), P))

    ge = even_part(GridFunction(0.1 * rng.standard_normal(P)))
    ge = (ge - float(np.mean(ge.values))) + 0j
    c2n = psi_even_cosine_coeffs(odd * 1j, ge, 16)
    expr = np.array([psi_cosine_expression(odd * 1j, ge, n) for n in range(1, 17)])
    psi = np.max(np.abs(c2n - 0.5 * expr))

    fc = odd * (0.3 + 0.1j)
    gc = GridFunction(0.1 * (rng.standard_normal(P) + 1j * rng.standard_normal(P)))
    dirn = GridFunction(0.05 * (rng.standard_normal(P) + 1j * rng.standard_normal(P)))
    d_f = partial_derivative_check(fc, gc, dirn, "f")
    d_g = partial_derivative_check(fc, gc, dirn, "g")

    fw = forward(sine_sigma(4096), 32)
    data = TwoSpectra(fw.lam, fw.mu)
    rho_even = rho_of(data).entries[1::2]
    residuals = []
    for Pg in (128, 256, 512, 1024):
        pair = roundtrip_pair(rho_even, reconstruct(data, Pg).k_at_one)
        residuals.append(H_residual(*pair))
    decreasing = all(b < a for a, b in zip(residuals, residuals[1:]))

    assert report(9, "series identity suite", {
        "convolution_theorem": check(conv, 1e-9),
        "cosh_identity": check(cosh, 1e-8),
        "psi_coefficients": check(psi, 1e-8),
        "dH_df": check(d_f, 1e-6),
        "dH_dg": check(d_g, 1e-6),
        "H_residual_max": check(max(residuals), 1e-2),
        "H_residual_decreasing": (decreasing, "[" + ", ".join(f"{r:.4g}" for r in residuals) + "]"),
    })


def test_criterion_10_uniform_bound_probe():
    rng = np.random.default_rng(10)
    sample = [sample_two_spectra(rng, 24, 0.3, 0.5) for _ in range(50)]
    sup_s, sup_c = uniform_bounds_probe(sample)
    bound = uniform_log_bound(0.3, 0.5)
    assert report(10, f"uniform bound probe (bound {bound:.4g})", {
        "sup_log_Sdot": check(sup_s, bound),
        "sup_log_C_over_omega": check(sup_c, bound),
    })


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-rA"]))
