"""Command-line front end.

    invsl forward     --input sigma.csv -N 32 [--output spectra.json]
    invsl reconstruct --input spectra.json -P 256 --output sigma.csv [--report report.json]
    invsl roundtrip   --input sigma.csv -N 32 -P 256 [--output report.json]
    invsl stability   --input sigma.csv --eps 1e-2,1e-3 --trials 10 --seed 0 --output report.json
    invsl validate    --input spectra.json --h 0.3 --r 2 [--s 0]

Exit codes: 0 success, 1 usage, 2 parse, 3 forward, 4 data class,
5 linear algebra, 6 sampling.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .direct import forward, shift_potential_fixed_end
from .errors import InvSLError, ParseError
from .fourier import GridFunction, midpoints, read_csv, sobolev_norm, write_csv
from .glm import reconstruct, to_norming
from .spectral_data import (NormingSpectra, TwoSpectra, check_alternation,
                            float17, from_json_dict, rho_of, separation_report,
                            to_json_dict, validate_norming_spectra,
                            validate_two_spectra)

EXIT_USAGE = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    input: Path
    output: Path | None = None
    P: int = 256
    N: int = 32
    h: float = 0.3
    r: float = 2.0
    s: float = 0.0
    seed: int = 0
    window_J: int | None = None
    mode: str | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.P < 4 or self.P % 4:
            raise UsageError(f"-P must be a positive multiple of 4, got {self.P}")
        if self.N < 1:
            raise UsageError(f"-N must be at least 1, got {self.N}")
        if not 0.0 <= self.s <= 1.0:
            raise UsageError(f"--s must lie in [0, 1], got {self.s}")
        if self.window_J is not None and self.window_J < 1:
            raise UsageError("--window-J must be positive")


# -- helpers -------------------------------------------------------------------------

def _emit(doc: dict, path: Path | None) -> None:
    text = json.dumps(float17(doc), indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _read_sigma(path) -> GridFunction:
    f = read_csv(path)
    if not f.is_real:
        raise ParseError("sigma must be real (nonzero imaginary column)")
    return f.real_part()


def _read_spectra(path, mode: str | None):
    """Spectral JSON; when both ``mu`` and ``alpha`` are present ``mode`` picks one."""
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", row=exc.lineno) from None
    except OSError as exc:
        raise ParseError(str(exc)) from None
    if isinstance(doc, dict) and doc.get("mu") is not None and doc.get("alpha") is not None:
        doc = dict(doc)
        doc["alpha" if mode != "norming" else "mu"] = None
    data = from_json_dict(doc)
    if mode == "norming" and isinstance(data, TwoSpectra):
        data = to_norming(data)[0]
    elif mode == "two-spectra" and isinstance(data, NormingSpectra):
        raise UsageError("--mode two-spectra needs a document with mu")
    return data


def _on_grid(sigma: GridFunction, P: int) -> GridFunction:
    """Cell-constant resampling of ``sigma`` onto the ``P``-point midpoint grid."""
    if sigma.P == P:
        return sigma
    idx = np.minimum((midpoints(P) * sigma.P).astype(int), sigma.P - 1)
    return GridFunction(sigma.values[idx])


def _is_smooth(sigma: GridFunction) -> bool:
    """No jump larger than eight mean cell increments of the total range."""
    v = sigma.values
    spread = float(np.ptp(v))
    return spread == 0 or float(np.max(np.abs(np.diff(v)))) <= 8 * spread / v.size


# -- commands ------------------------------------------------------------------------

def cmd_forward(cfg: RunConfig) -> int:
    sigma = _read_sigma(cfg.input)
    shift = cfg.extra.get("shift", 0.0)
    if shift:
        sigma = shift_potential_fixed_end(sigma, shift)
    res = forward(sigma, cfg.N)
    data = TwoSpectra(res.lam, res.mu, cfg.s)
    check_alternation(data)
    doc = to_json_dict(data)
    doc["alpha"] = res.alpha.tolist()
    doc["interlacing"] = "ok"
    doc["separation"] = separation_report(data).as_dict()
    _emit(doc, cfg.output)
    return 0


def cmd_reconstruct(cfg: RunConfig) -> int:
    data = _read_spectra(cfg.input, cfg.mode)
    sol = reconstruct(data, cfg.P, cfg.window_J)
    if cfg.output is None:
        raise UsageError("reconstruct needs --output for sigma.csv")
    write_csv(sol.sigma, cfg.output)
    report = cfg.extra.get("report") or Path(cfg.output).with_suffix(".report.json")
    _emit(sol.report(), Path(report))
    return 0


def cmd_roundtrip(cfg: RunConfig) -> int:
    sigma = _read_sigma(cfg.input)
    res = forward(sigma, cfg.N)
    data = TwoSpectra(res.lam, res.mu, cfg.s)
    sol = reconstruct(data, cfg.P, cfg.window_J)
    truth = _on_grid(sigma, cfg.P)
    diff = sol.sigma - truth
    rho = rho_of(data).entries
    doc = {
        "N": cfg.N, "P": cfg.P,
        "l2_error": sobolev_norm(diff, 0),
        "h1_error": sobolev_norm(diff, 1) if _is_smooth(truth) else None,
        "rho": [{"n": n, "rho_2n_minus_1": rho[2 * n - 2], "rho_2n": rho[2 * n - 1],
                 "alpha": sol.alpha[n - 1]} for n in range(1, cfg.N + 1)],
        **sol.report(),
    }
    _emit(doc, cfg.output)
    return 0


def cmd_stability(cfg: RunConfig) -> int:
    from .analysis.stability import lipschitz_sweep
    trials = cfg.extra["trials"]
    if trials < 1:
        raise UsageError("--trials must be at least 1")
    eps = cfg.extra["eps"]
    sigma = _read_sigma(cfg.input)
    rep = lipschitz_sweep(sigma, eps, trials, cfg.seed, cfg.N, cfg.P, cfg.h, cfg.s, cfg.window_J)
    _emit(rep.as_dict(), cfg.output)
    sweep = cfg.extra.get("sweep")
    if sweep is None and cfg.output is not None:
        sweep = Path(cfg.output).with_suffix(".csv")
    if sweep is not None:
        Path(sweep).write_text(rep.to_csv())
    return 0


def cmd_validate(cfg: RunConfig) -> int:
    data = _read_spectra(cfg.input, cfg.mode)
    if cfg.extra.get("s_given"):
        cls = type(data)
        data = (cls(data.lam, data.mu, cfg.s) if isinstance(data, TwoSpectra)
                else cls(data.lam, data.alpha, cfg.s))
    doc = {"h": cfg.h, "r": cfg.r, "s": data.weight_s,
           "kind": "two-spectra" if isinstance(data, TwoSpectra) else "norming"}
    try:
        if isinstance(data, TwoSpectra):
            rep = validate_two_spectra(data, cfg.h, cfg.r)
        else:
            rep = validate_norming_spectra(data, cfg.h, cfg.r)
    except InvSLError as exc:
        doc.update(separation_report(data).as_dict())
        doc.update({"valid": False, "violation": type(exc).__name__, "message": str(exc)})
        _emit(doc, cfg.output)
        raise
    doc.update(rep.as_dict())
    doc["valid"] = True
    _emit(doc, cfg.output)
    return 0


COMMANDS = {"forward": cmd_forward, "reconstruct": cmd_reconstruct,
            "roundtrip": cmd_roundtrip, "stability": cmd_stability,
            "validate": cmd_validate}


# -- argument parsing ---------------------------------------------------------------

def _eps_list(text: str) -> list:
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")
    if not vals or min(vals) <= 0:
        raise argparse.ArgumentTypeError("epsilons must be positive")
    return vals


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="invsl", description="Inverse Sturm-Liouville problems with singular potentials.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, need_output=False):
        sp.add_argument("--input", type=Path, required=True)
        sp.add_argument("--output", type=Path, required=need_output)
        sp.add_argument("-N", type=int, default=32, help="number of stored eigenvalue pairs")
        sp.add_argument("-P", type=int, default=256, help="grid size (multiple of 4)")
        sp.add_argument("--h", type=float, default=0.3, help="separation bound")
        sp.add_argument("--r", type=float, default=2.0, help="norm budget")
        sp.add_argument("--s", type=float, default=None, help="Sobolev weight in [0, 1]")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--window-J", type=int, default=None, help="product window (default 4N)")
        sp.add_argument("--mode", choices=["two-spectra", "norming"], default=None)
        return sp

    f = common(sub.add_parser("forward", help="sigma.csv -> spectra JSON"))
    f.add_argument("--shift", type=float, default=0.0, help="q -> q + shift via sigma + shift*(x - 1); moves both spectra by shift "
                        "(use to reach mu_1 >= 1)")
    r = common(sub.add_parser("reconstruct", help="spectra JSON -> sigma.csv"), need_output=True)
    r.add_argument("--report", type=Path, default=None)
    common(sub.add_parser("roundtrip", help="forward then reconstruct, with errors"))
    st = common(sub.add_parser("stability", help="Lipschitz sweep"))
    st.add_argument("--eps", type=_eps_list, default=[1e-2, 3e-3, 1e-3])
    st.add_argument("--trials", type=int, default=10)
    st.add_argument("--sweep", type=Path, default=None, help="CSV of (eps, trial, ratio)")
    common(sub.add_parser("validate", help="class membership of spectral data"))
    return p


def _config(args) -> RunConfig:
    extra = {"s_given": args.s is not None}
    for key in ("shift", "report", "eps", "trials", "sweep"):
        if hasattr(args, key):
            extra[key] = getattr(args, key)
    return RunConfig(args.command, args.input, args.output, args.P, args.N, args.h,
                     args.r, 0.0 if args.s is None else args.s, args.seed,
                     args.window_J, args.mode, extra)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"invsl {args.command}: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvSLError as exc:
        print(f"invsl {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"invsl {args.command}: {exc}", file=sys.stderr)
        return ParseError.exit_code
    except ValueError as exc:
        print(f"invsl {args.command}: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
