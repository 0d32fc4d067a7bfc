"""Command-line front end.

Subcommands: ``gen`` (exact sequence tables), ``eval`` (real-domain function
values), ``verify`` (property suites as machine-readable reports), and
``plotdata`` (plain x,f(x) CSV for external plotting).

Exit codes: 0 success, 1 internal error, 2 usage/domain error, 3 a
theorem-backed verification failed.  Stdout carries data, stderr carries
diagnostics.  JSON output carries the schema tag ``logbehave/1``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from mpmath import mp

from . import checks, exact, realfn
from .checks import PropertyReport, RealGrid
from .errors import DomainError, PrecisionError

SCHEMA = "logbehave/1"

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_VERIFY_FAILED = 3

GEN_SEQUENCES = (
    "bernoulli",
    "bernoulli_abs_even",
    "bell",
    "catalan",
    "narayana",
    "lasalle_A",
    "lasalle_a",
    "a_mu",
    "b",
    "rayleigh_sigma",
    "zeta_even_rational",
)

EVAL_FUNCTIONS = (
    "zeta",
    "theta",
    "theta_mu",
    "bessel_j",
    "bessel_zero",
    "bessel_zeta",
    "bell_real",
    "ln_gamma",
)

PLOT_FUNCTIONS = (
    "zeta",
    "theta",
    "theta_mu",
    "bessel_j",
    "bessel_zeta",
    "bell_real",
    "bell_root",
    "ln_gamma",
)

VERIFY_SUITES = (
    "bernoulli",
    "a_mu",
    "b",
    "bell",
    "theta_monotone",
    "theta_mu_monotone",
    "conjectures",
    "zero_bounds",
    "gamma_bound",
    "holder",
)

ZERO_BOUND_MUS = (-0.5, 0.0, 0.5, 1.0, 2.0, 5.0)
GAMMA_BOUND_XS = (0.5, 1, 2, 5, 10, 50, 170)


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = 256
    tolerance: float = 1e-30
    output_format: str = "text"
    output_path: Optional[str] = None

    def context(self) -> realfn.PrecisionContext:
        return realfn.PrecisionContext(
            working_precision=self.precision_bits, tolerance=self.tolerance
        )


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        try:
            return Fraction(float(text))
        except (ValueError, OverflowError) as exc:
            raise DomainError(f"not a rational number: {text!r}") from exc


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--precision", type=int, default=256, metavar="BITS",
                        help="working precision in bits (default 256)")
    parser.add_argument("--tolerance", type=float, default=1e-30, metavar="EPS",
                        help="target error for real-domain values (default 1e-30)")
    parser.add_argument("--format", choices=("json", "csv", "text"), default="text",
                        dest="output_format", help="output format (default text)")
    parser.add_argument("--out", default=None, metavar="PATH",
                        help="write output to PATH instead of stdout")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logbehave",
        description="Exact sequence tables, special-function evaluation, and "
        "log-behavior verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate an exact sequence table")
    p_gen.add_argument("sequence", choices=GEN_SEQUENCES)
    p_gen.add_argument("start", type=int)
    p_gen.add_argument("length", type=int)
    p_gen.add_argument("--mu", default=None, help="rational mu, e.g. 1/2")
    _add_common(p_gen)

    p_eval = sub.add_parser("eval", help="evaluate a real-domain function")
    p_eval.add_argument("fn", choices=EVAL_FUNCTIONS)
    p_eval.add_argument("x", type=float, nargs="?", default=None)
    p_eval.add_argument("--mu", default=None, help="order mu (rational or real)")
    p_eval.add_argument("--k", type=int, default=None, help="zero index for bessel_zero")
    _add_common(p_eval)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=VERIFY_SUITES)
    p_verify.add_argument("grid", type=float, nargs="*",
                          help="lo hi step for the scan suites")
    p_verify.add_argument("--mu", default=None, help="rational mu for the a_mu suite")
    p_verify.add_argument("--max-n", type=int, default=None, dest="max_n")
    p_verify.add_argument("--seed", type=int, default=987654321,
                          help="seed for the holder suite pairs")
    _add_common(p_verify)

    p_plot = sub.add_parser("plotdata", help="tabulate f over a grid as x,f(x) CSV")
    p_plot.add_argument("fn", choices=PLOT_FUNCTIONS)
    p_plot.add_argument("lo", type=float)
    p_plot.add_argument("hi", type=float)
    p_plot.add_argument("step", type=float)
    p_plot.add_argument("--mu", default=None)
    _add_common(p_plot)

    return parser


def _make_config(args: argparse.Namespace) -> RunConfig:
    if args.precision < 64:
        raise DomainError(f"--precision must be >= 64 bits, got {args.precision}")
    if not args.tolerance > 0:
        raise DomainError(f"--tolerance must be > 0, got {args.tolerance}")
    if math.log(args.tolerance, 2) < 8 - args.precision:
        raise DomainError(
            f"--tolerance {args.tolerance} is not representable at {args.precision} bits"
        )
    return RunConfig(
        precision_bits=args.precision,
        tolerance=args.tolerance,
        output_format=args.output_format,
        output_path=args.out,
    )


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _digits(cfg: RunConfig) -> int:
    return max(17, int(-math.log10(cfg.tolerance)) + 2)


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


def _cmd_gen(args: argparse.Namespace, cfg: RunConfig) -> int:
    mu = _parse_rational(args.mu) if args.mu is not None else None
    if args.sequence == "narayana":
        if args.start < 1:
            raise DomainError("narayana rows start at r = 1")
        if args.length < 1:
            raise DomainError("length must be >= 1")
        rows = []
        for r in range(args.start, args.start + args.length):
            poly = exact.narayana_poly(r)
            rows.append((r, [str(c) for c in poly.coefficients]))
        if cfg.output_format == "json":
            payload = {
                "schema": SCHEMA,
                "command": "gen",
                "sequence": "narayana",
                "start": args.start,
                "rows": [{"r": r, "coefficients": cs} for r, cs in rows],
            }
            _emit(json.dumps(payload, indent=2) + "\n", cfg)
        elif cfg.output_format == "csv":
            buffer = io.StringIO()
            writer = csv.writer(buffer)
            for r, cs in rows:
                writer.writerow([r, *cs])
            _emit(buffer.getvalue(), cfg)
        else:
            _emit("".join(f"{r}: {' '.join(cs)}\n" for r, cs in rows), cfg)
        return EXIT_OK

    w = exact.window(args.sequence, args.start, args.length, mu=mu)
    pairs = [(w.start + i, str(v)) for i, v in enumerate(w.values)]
    if cfg.output_format == "json":
        payload = {
            "schema": SCHEMA,
            "command": "gen",
            "sequence": args.sequence,
            "mu": str(mu) if mu is not None else None,
            "start": w.start,
            "generator": w.generator_tag,
            "rows": [{"n": n, "value": v} for n, v in pairs],
        }
        _emit(json.dumps(payload, indent=2) + "\n", cfg)
    elif cfg.output_format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer)
        for n, v in pairs:
            writer.writerow([n, v])
        _emit(buffer.getvalue(), cfg)
    else:
        width = max(len(str(n)) for n, _ in pairs)
        _emit("".join(f"{n:>{width}}  {v}\n" for n, v in pairs), cfg)
    return EXIT_OK


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------


def _eval_value(args: argparse.Namespace, ctx: realfn.PrecisionContext):
    fn = args.fn
    mu = _parse_rational(args.mu) if args.mu is not None else None

    def need_x() -> float:
        if args.x is None:
            raise DomainError(f"{fn} requires a point x")
        return args.x

    def need_mu() -> Fraction:
        if mu is None:
            raise DomainError(f"{fn} requires --mu")
        return mu

    if fn == "zeta":
        return realfn.riemann_zeta_real(need_x(), ctx), "relative"
    if fn == "theta":
        return realfn.theta(need_x(), ctx), "relative"
    if fn == "theta_mu":
        return realfn.theta_mu(need_mu(), need_x(), ctx), "relative"
    if fn == "bessel_j":
        return realfn.bessel_j(need_mu(), need_x(), ctx), "absolute"
    if fn == "bessel_zero":
        if args.k is None:
            raise DomainError("bessel_zero requires --k")
        return realfn.bessel_zero(need_mu(), args.k, ctx), "absolute"
    if fn == "bessel_zeta":
        return realfn.bessel_zeta_real(need_mu(), need_x(), ctx), "relative"
    if fn == "bell_real":
        return realfn.bell_real(need_x(), ctx), "relative"
    if fn == "ln_gamma":
        return realfn.ln_gamma(need_x(), ctx), "relative"
    raise DomainError(f"unknown function {fn!r}")


def _cmd_eval(args: argparse.Namespace, cfg: RunConfig) -> int:
    ctx = cfg.context()
    value, kind = _eval_value(args, ctx)
    rendered = mp.nstr(value, _digits(cfg))
    if cfg.output_format == "json":
        payload = {
            "schema": SCHEMA,
            "command": "eval",
            "fn": args.fn,
            "x": args.x,
            "mu": args.mu,
            "k": args.k,
            "value": rendered,
            "error_contract": {"kind": kind, "tolerance": cfg.tolerance},
        }
        _emit(json.dumps(payload, indent=2) + "\n", cfg)
    elif cfg.output_format == "csv":
        _emit(f"{args.fn},{rendered}\n", cfg)
    else:
        _emit(rendered + "\n", cfg)
    print(f"{kind} error <= {cfg.tolerance}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _grid_from(args: argparse.Namespace, default: RealGrid) -> RealGrid:
    if not args.grid:
        return default
    if len(args.grid) != 3:
        raise DomainError("grid must be given as three numbers: lo hi step")
    return RealGrid(args.grid[0], args.grid[1], args.grid[2])


def _run_suite(args: argparse.Namespace, cfg: RunConfig) -> tuple[list[PropertyReport], bool]:
    """Returns (reports, gating): gating suites contribute to the exit code."""
    suite = args.suite
    ctx = cfg.context()
    mu = _parse_rational(args.mu) if args.mu is not None else None

    if suite == "bernoulli":
        return checks.verify_bernoulli_suite(args.max_n or 100), True
    if suite == "a_mu":
        muq = mu if mu is not None else Fraction(1)
        default_n = 108 if muq == 1 else 48 if muq == 0 else 60
        return checks.verify_a_mu_suite(muq, args.max_n or default_n), True
    if suite == "b":
        return checks.verify_b_suite(args.max_n or 48), True
    if suite == "bell":
        return checks.verify_bell_suite(args.max_n or 200, ctx), True
    if suite == "theta_monotone":
        grid = _grid_from(args, RealGrid(6.0, 100.0, 0.5))
        return [checks.scan_monotone("theta", grid, ctx)], True
    if suite == "theta_mu_monotone":
        muq = mu if mu is not None else Fraction(1)
        if muq == 1:
            default = RealGrid(245.0, 400.0, 1.0)
        else:
            lo = float(math.ceil(8 * math.e * float((muq + 2) ** 2))) + 1
            default = RealGrid(lo, lo + 155.0, 1.0)
        grid = _grid_from(args, default)
        return [checks.scan_monotone("theta_mu", grid, ctx, mu=muq)], True
    if suite == "conjectures":
        grid_theta = _grid_from(args, RealGrid(6.0, 60.0, 1.0))
        grid_bell = RealGrid(1.0, 30.0, 1.0)
        return checks.scan_conjectures(grid_theta, grid_bell, ctx), False
    if suite == "zero_bounds":
        return [checks.check_first_zero_bound(ZERO_BOUND_MUS, ctx)], True
    if suite == "gamma_bound":
        return [checks.verify_gamma_bound(GAMMA_BOUND_XS, ctx)], True
    if suite == "holder":
        return [checks.verify_holder(seed=args.seed, ctx=ctx)], True
    raise DomainError(f"unknown suite {suite!r}")


def _render_reports(suite: str, reports: list[PropertyReport], gating: bool,
                    cfg: RunConfig) -> str:
    if cfg.output_format == "json":
        payload = {
            "schema": SCHEMA,
            "command": "verify",
            "suite": suite,
            "gating": gating,
            "reports": [r.as_dict() for r in reports],
            "ok": all(r.verdict == "holds" for r in reports),
        }
        return json.dumps(payload, indent=2) + "\n"
    if cfg.output_format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer)
        writer.writerow(["property", "subject", "range", "verdict", "method",
                         "counterexamples"])
        for r in reports:
            writer.writerow([r.property, r.subject, r.range, r.verdict, r.method,
                             len(r.counterexamples)])
        return buffer.getvalue()
    lines = []
    for r in reports:
        lines.append(
            f"[{r.verdict}] {r.property} {r.subject} {r.range} "
            f"method={r.method} counterexamples={len(r.counterexamples)}"
        )
        for c in r.counterexamples[:10]:
            lines.append(f"    {c}")
    return "\n".join(lines) + "\n"


def _cmd_verify(args: argparse.Namespace, cfg: RunConfig) -> int:
    reports, gating = _run_suite(args, cfg)
    _emit(_render_reports(args.suite, reports, gating, cfg), cfg)
    if gating and any(r.verdict != "holds" for r in reports):
        return EXIT_VERIFY_FAILED
    return EXIT_OK


# ---------------------------------------------------------------------------
# plotdata
# ---------------------------------------------------------------------------


def _plot_evaluator(fn: str, mu, ctx: realfn.PrecisionContext):
    if fn in ("theta_mu", "bessel_j", "bessel_zeta") and mu is None:
        raise DomainError(f"{fn} requires --mu")
    table = {
        "zeta": lambda x: realfn.riemann_zeta_real(x, ctx),
        "theta": lambda x: realfn.theta(x, ctx),
        "theta_mu": lambda x: realfn.theta_mu(mu, x, ctx),
        "bessel_j": lambda x: realfn.bessel_j(mu, x, ctx),
        "bessel_zeta": lambda x: realfn.bessel_zeta_real(mu, x, ctx),
        "bell_real": lambda x: realfn.bell_real(x, ctx),
        "bell_root": lambda x: realfn.bell_root(x, ctx),
        "ln_gamma": lambda x: realfn.ln_gamma(x, ctx),
    }
    return table[fn]


def _cmd_plotdata(args: argparse.Namespace, cfg: RunConfig) -> int:
    grid = RealGrid(args.lo, args.hi, args.step)
    ctx = cfg.context()
    mu = _parse_rational(args.mu) if args.mu is not None else None
    evaluate = _plot_evaluator(args.fn, mu, ctx)
    digits = _digits(cfg)
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    for x in grid.points():
        writer.writerow([repr(x), mp.nstr(evaluate(x), digits)])
    _emit(buffer.getvalue(), cfg)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _make_config(args)
        if args.command == "gen":
            return _cmd_gen(args, cfg)
        if args.command == "eval":
            return _cmd_eval(args, cfg)
        if args.command == "verify":
            return _cmd_verify(args, cfg)
        if args.command == "plotdata":
            return _cmd_plotdata(args, cfg)
        raise DomainError(f"unknown command {args.command!r}")
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        print(f"precision error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - stable exit-code contract
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
