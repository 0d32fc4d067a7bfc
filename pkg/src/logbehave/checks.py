"""Verification of log-convexity, log-concavity, root-monotonicity, and
bound claims over exact windows and real grids.

Exact checks compare big rationals directly (no rounding anywhere); float
checks carry an inconclusive band of ten times the evaluation tolerance so
precision artifacts can never masquerade as counterexamples.  Every check
returns a :class:`PropertyReport`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from mpmath import mp

from . import exact, realfn
from .errors import DomainError
from .exact import SequenceWindow
from .realfn import DEFAULT_CONTEXT, PrecisionContext

PROPERTIES = ("log_convex", "log_concave", "nth_root_increasing", "monotone_increasing", "bound_holds")
VERDICTS = ("holds", "fails", "holds_with_exceptions")
METHODS = ("exact_bigint", "certified_float")


@dataclass(frozen=True)
class PropertyReport:
    """Verdict for one property over an index range or real grid.

    ``counterexamples`` holds every violating witness plus (for float
    methods) every inconclusive pair; ``verdict`` is ``holds`` exactly when
    it is empty.  ``method`` is ``exact_bigint`` only when every comparison
    ran over integers/rationals with no rounding.
    """

    property: str
    subject: str
    range: str
    verdict: str
    counterexamples: tuple[dict, ...]
    method: str
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.property not in PROPERTIES:
            raise DomainError(f"unknown property {self.property!r}")
        if self.verdict not in VERDICTS:
            raise DomainError(f"unknown verdict {self.verdict!r}")
        if self.method not in METHODS:
            raise DomainError(f"unknown method {self.method!r}")
        if (self.verdict == "holds") != (len(self.counterexamples) == 0):
            raise DomainError("verdict 'holds' requires exactly an empty counterexample list")

    def as_dict(self) -> dict:
        return {
            "property": self.property,
            "subject": self.subject,
            "range": self.range,
            "verdict": self.verdict,
            "counterexamples": list(self.counterexamples),
            "method": self.method,
            "details": dict(self.details),
        }


def _verdict(counterexamples: Sequence[dict]) -> str:
    if not counterexamples:
        return "holds"
    if all(c.get("kind") == "inconclusive" for c in counterexamples):
        return "holds_with_exceptions"
    return "fails"


@dataclass(frozen=True)
class RealGrid:
    """Inclusive arithmetic grid lo, lo+step, ..., hi."""

    lo: float
    hi: float
    step: float
    cap: int = 1_000_000

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError(f"grid requires lo < hi, got [{self.lo}, {self.hi}]")
        if not self.step > 0:
            raise DomainError(f"grid step must be > 0, got {self.step}")
        if (self.hi - self.lo) / self.step > self.cap:
            raise DomainError("grid exceeds the configured point cap")

    def points(self) -> list[float]:
        count = int(math.floor((self.hi - self.lo) / self.step + 1e-9)) + 1
        return [self.lo + i * self.step for i in range(count)]

    def describe(self) -> str:
        return f"x={self.lo}..{self.hi} step {self.step}"


# ---------------------------------------------------------------------------
# Exact window checks
# ---------------------------------------------------------------------------


def _require_positive(w: SequenceWindow, minimum: int) -> None:
    if len(w.values) < minimum:
        raise DomainError(f"window must hold at least {minimum} values, got {len(w.values)}")
    if any(v <= 0 for v in w.values):
        raise DomainError("window contains a non-positive value")


def check_log_convex_exact(w: SequenceWindow) -> PropertyReport:
    """a_n^2 <= a_(n-1) a_(n+1) at every interior index, exact comparison.

    Equality triples are admitted (the defining inequality is non-strict)
    and listed in details;
    """
    _require_positive(w, 3)
    counterexamples = []
    equalities = []
    for i in range(1, len(w.values) - 1):
        lhs = w.values[i] ** 2
        rhs = w.values[i - 1] * w.values[i + 1]
        n = w.index_of(i)
        if lhs > rhs:
            counterexamples.append(
                {"kind": "violation", "at": n, "lhs": str(lhs), "rhs": str(rhs)}
            )
        elif lhs == rhs:
            equalities.append(n)
    return PropertyReport(
        property="log_convex",
        subject=w.name,
        range=f"n={w.start}..{w.stop}",
        verdict=_verdict(counterexamples),
        counterexamples=tuple(counterexamples),
        method="exact_bigint",
        details={"equalities": equalities, "triples": len(w.values) - 2},
    )


def check_log_concave_exact(w: SequenceWindow) -> PropertyReport:
    """a_n^2 >= a_(n-1) a_(n+1) at every interior index, exact comparison."""
    _require_positive(w, 3)
    counterexamples = []
    equalities = []
    for i in range(1, len(w.values) - 1):
        lhs = w.values[i] ** 2
        rhs = w.values[i - 1] * w.values[i + 1]
        n = w.index_of(i)
        if lhs < rhs:
            counterexamples.append(
                {"kind": "violation", "at": n, "lhs": str(lhs), "rhs": str(rhs)}
            )
        elif lhs == rhs:
            equalities.append(n)
    return PropertyReport(
        property="log_concave",
        subject=w.name,
        range=f"n={w.start}..{w.stop}",
        verdict=_verdict(counterexamples),
        counterexamples=tuple(counterexamples),
        method="exact_bigint",
        details={"equalities": equalities, "triples": len(w.values) - 2},
    )


def check_nth_root_increasing_exact(w: SequenceWindow) -> PropertyReport:
    """a_n^(1/n) < a_(n+1)^(1/(n+1)) for each adjacent pair, decided exactly
    through the equivalent integer comparison a_n^(n+1) < a_(n+1)^n."""
    if w.start < 1:
        raise DomainError(f"root check needs start >= 1, got {w.start}")
    _require_positive(w, 2)
    counterexamples = []
    for i in range(len(w.values) - 1):
        n = w.index_of(i)
        lhs = w.values[i] ** (n + 1)
        rhs = w.values[i + 1] ** n
        if not lhs < rhs:
            counterexamples.append(
                {
                    "kind": "violation",
                    "at": n,
                    "lhs": f"a({n})^{n + 1}={lhs}",
                    "rhs": f"a({n + 1})^{n}={rhs}",
                }
            )
    return PropertyReport(
        property="nth_root_increasing",
        subject=w.name,
        range=f"n={w.start}..{w.stop}",
        verdict=_verdict(counterexamples),
        counterexamples=tuple(counterexamples),
        method="exact_bigint",
        details={"pairs": len(w.values) - 1},
    )


def first_monotone_root_index(w: SequenceWindow) -> int:
    """Smallest n0 in the window such that the root comparison holds for every
    pair from n0 on; one past the window if even the final pair fails."""
    first = w.start
    for i in range(len(w.values) - 1):
        n = w.index_of(i)
        if not w.values[i] ** (n + 1) < w.values[i + 1] ** n:
            first = n + 1
    return first


# ---------------------------------------------------------------------------
# Named suites
# ---------------------------------------------------------------------------


def verify_bernoulli_suite(n_max: int) -> list[PropertyReport]:
    """Exact log-convexity of |B_2n|/(2n)! and |B_2n|, and root monotonicity
    of |B_2n|, over n = 1..n_max."""
    if n_max < 3:
        raise DomainError(f"n_max must be >= 3, got {n_max}")
    scaled = exact.window("bernoulli_abs_even_scaled", 1, n_max)
    plain = exact.window("bernoulli_abs_even", 1, n_max)
    return [
        check_log_convex_exact(scaled),
        check_log_convex_exact(plain),
        check_nth_root_increasing_exact(plain),
    ]


def verify_a_mu_suite(mu, n_max: int) -> list[PropertyReport]:
    """Exact log-convexity of a_n(mu) over 1..n_max and root monotonicity of
    the pairs n = 2..n_max; reports the first index from which the root
    comparison holds next to the threshold ceil(4e(mu+2)^2)."""
    if n_max < 3:
        raise DomainError(f"n_max must be >= 3, got {n_max}")
    muq = Fraction(mu)
    convex_window = exact.window("a_mu", 1, n_max, mu=muq)
    if muq == 1:
        # the two independent routes must agree before the suite means anything
        for offset, value in enumerate(convex_window.values):
            expected = exact.lasalle_a(offset + 1)
            if value != expected:
                raise ArithmeticError(
                    f"route disagreement at n={offset + 1}: {value} != {expected}"
                )
    root_window = exact.window("a_mu", 2, n_max, mu=muq)  # pairs n=2..n_max
    full_window = exact.window("a_mu", 1, n_max + 1, mu=muq)
    subject = f"a_mu(mu={muq})"
    convex = replace(check_log_convex_exact(convex_window), subject=subject)
    roots = check_nth_root_increasing_exact(root_window)
    threshold = math.ceil(4 * math.e * float((muq + 2) ** 2))
    roots = replace(
        roots,
        subject=subject,
        details={
            **roots.details,
            "first_monotone_index": first_monotone_root_index(full_window),
            "threshold_4e_mu_plus_2_sq": threshold,
        },
    )
    return [convex, roots]


def verify_b_suite(n_max: int) -> list[PropertyReport]:
    """Exact checks on b_n = a_n(0)/2: log-convexity over 1..n_max and root
    monotonicity of the pairs n = 2..n_max."""
    if n_max < 3:
        raise DomainError(f"n_max must be >= 3, got {n_max}")
    return [
        check_log_convex_exact(exact.window("b", 1, n_max)),
        check_nth_root_increasing_exact(exact.window("b", 2, n_max)),
    ]


def verify_bell_suite(
    n_max: int,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
    grid: Optional[RealGrid] = None,
    h: float = 1e-3,
) -> list[PropertyReport]:
    """Exact root monotonicity and log-convexity of the Bell numbers over
    1..n_max, plus a certified-float scan of (log B(x))'' > 0 on the grid
    (default x = 1..20 step 1)."""
    if n_max < 3:
        raise DomainError(f"n_max must be >= 3, got {n_max}")
    w = exact.window("bell", 1, n_max)
    reports = [
        check_nth_root_increasing_exact(w),
        check_log_convex_exact(w),
    ]
    grid = grid or RealGrid(1.0, 20.0, 1.0)
    counterexamples = []
    band = 10 * 4 * ctx.tolerance / (h * h)
    for x in grid.points():
        value = realfn.log_second_difference(lambda t: realfn.bell_real(t, ctx), x, h, ctx)
        if value <= -band:
            counterexamples.append({"kind": "violation", "x": x, "value": mp.nstr(value, 12)})
        elif value < band:
            counterexamples.append({"kind": "inconclusive", "x": x, "value": mp.nstr(value, 12)})
    reports.append(
        PropertyReport(
            property="log_convex",
            subject="bell_real",
            range=grid.describe(),
            verdict=_verdict(counterexamples),
            counterexamples=tuple(counterexamples),
            method="certified_float",
            details={"h": h, "points": len(grid.points())},
        )
    )
    return reports


# ---------------------------------------------------------------------------
# Real-domain scans
# ---------------------------------------------------------------------------


def _resolve_scan_fn(fn, mu, ctx: PrecisionContext) -> tuple[Callable, str]:
    if callable(fn):
        return fn, getattr(fn, "__name__", "callable")
    if fn == "theta":
        return (lambda x: realfn.theta(x, ctx)), "theta"
    if fn == "theta_mu":
        if mu is None:
            raise DomainError("theta_mu scan requires mu")
        return (lambda x: realfn.theta_mu(mu, x, ctx)), f"theta_mu(mu={mu})"
    if fn == "bell_root":
        return (lambda x: realfn.bell_root(x, ctx)), "bell_root"
    raise DomainError(f"unknown scan function {fn!r}; known: theta, theta_mu, bell_root")


def scan_monotone(fn, grid: RealGrid, ctx: PrecisionContext = DEFAULT_CONTEXT, mu=None) -> PropertyReport:
    """Check f(x_i) < f(x_(i+1)) across the grid at ctx precision.

    Pairs whose difference is below ten times the evaluation tolerance are
    flagged inconclusive rather than failing.
    """
    evaluate, subject = _resolve_scan_fn(fn, mu, ctx)
    xs = grid.points()
    values = [evaluate(x) for x in xs]
    counterexamples = []
    inconclusive = 0
    for i in range(len(values) - 1):
        a, b = values[i], values[i + 1]
        band = 10 * ctx.tolerance * max(abs(float(a)), abs(float(b)), 1e-300)
        diff = b - a
        if abs(diff) < band:
            inconclusive += 1
            counterexamples.append(
                {"kind": "inconclusive", "x": xs[i], "x_next": xs[i + 1],
                 "f_x": mp.nstr(a, 12), "f_x_next": mp.nstr(b, 12)}
            )
        elif diff < 0:
            counterexamples.append(
                {"kind": "violation", "x": xs[i], "x_next": xs[i + 1],
                 "f_x": mp.nstr(a, 12), "f_x_next": mp.nstr(b, 12)}
            )
    return PropertyReport(
        property="monotone_increasing",
        subject=subject,
        range=grid.describe(),
        verdict=_verdict(counterexamples),
        counterexamples=tuple(counterexamples),
        method="certified_float",
        details={"pairs": len(values) - 1, "inconclusive": inconclusive},
    )


def scan_conjectures(
    grid_theta: RealGrid,
    grid_bell: RealGrid,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
    h: float = 1e-2,
) -> list[PropertyReport]:
    """Sample (log theta(x))'' on grid_theta and (log B(x)^(1/x))'' on
    grid_bell.  Evidence reports only: these claims are open, so violations
    are recorded but never gate anything.
    """
    reports = []
    for subject, grid, f in (
        ("theta", grid_theta, lambda x: realfn.theta(x, ctx)),
        ("bell_root", grid_bell, lambda x: realfn.bell_root(x, ctx)),
    ):
        counterexamples = []
        samples = []
        band = 10 * 4 * ctx.tolerance / (h * h)
        negative = 0
        for x in grid.points():
            value = realfn.log_second_difference(f, x, h, ctx)
            samples.append({"x": x, "value": mp.nstr(value, 12)})
            if value >= band:
                counterexamples.append(
                    {"kind": "violation", "x": x, "value": mp.nstr(value, 12)}
                )
            elif value > -band:
                counterexamples.append(
                    {"kind": "inconclusive", "x": x, "value": mp.nstr(value, 12)}
                )
            else:
                negative += 1
        reports.append(
            PropertyReport(
                property="log_concave",
                subject=subject,
                range=grid.describe(),
                verdict=_verdict(counterexamples),
                counterexamples=tuple(counterexamples),
                method="certified_float",
                details={"h": h, "points": len(samples), "negative": negative,
                         "samples": samples, "gating": False},
            )
        )
    return reports


def holder_compare(x, y, ctx: PrecisionContext = DEFAULT_CONTEXT) -> bool:
    """True iff B(x)^(1/x) < B(y)^(1/y) for 0 < x < y, compared in log space."""
    xf, yf = float(x), float(y)
    if not 0 < xf < yf:
        raise DomainError(f"holder_compare requires 0 < x < y, got x={x}, y={y}")
    with realfn._active(ctx):
        lx = mp.log(realfn.bell_real(x, ctx)) / realfn._to_mpf(x)
        ly = mp.log(realfn.bell_real(y, ctx)) / realfn._to_mpf(y)
        return bool(lx < ly)


def check_first_zero_bound(
    mu_grid: Iterable, ctx: PrecisionContext = DEFAULT_CONTEXT
) -> PropertyReport:
    """j_(mu,1) < sqrt(mu+1)(sqrt(mu+2)+1) and j_(mu,1) < 2(mu+2) per grid point."""
    mu_list = list(mu_grid)
    counterexamples = []
    rows = []
    with realfn._active(ctx):
        for mu in mu_list:
            mum = realfn._to_mpf(mu)
            if mum <= -1:
                raise DomainError(f"mu must be > -1, got {mu}")
            j1 = realfn.bessel_zero(mu, 1, ctx)
            tight = mp.sqrt(mum + 1) * (mp.sqrt(mum + 2) + 1)
            loose = 2 * (mum + 2)
            rows.append({"mu": float(mu), "j1": mp.nstr(j1, 17),
                         "bound_sqrt": mp.nstr(tight, 17), "bound_linear": mp.nstr(loose, 17)})
            if not (j1 < tight and j1 < loose):
                counterexamples.append(
                    {"kind": "violation", "mu": float(mu), "j1": mp.nstr(j1, 17),
                     "bound_sqrt": mp.nstr(tight, 17), "bound_linear": mp.nstr(loose, 17)}
                )
    return PropertyReport(
        property="bound_holds",
        subject="bessel_first_zero",
        range=f"mu in {sorted(float(m) for m in mu_list)}",
        verdict=_verdict(counterexamples),
        counterexamples=tuple(counterexamples),
        method="certified_float",
        details={"rows": rows},
    )


def verify_gamma_bound(
    xs: Iterable = (0.5, 1, 2, 5, 10, 50, 170), ctx: PrecisionContext = DEFAULT_CONTEXT
) -> PropertyReport:
    """The strict Stirling lower bound for Gamma at each sample point."""
    counterexamples = []
    points = [float(x) for x in xs]
    for x in points:
        if not realfn.gamma_lower_bound_holds(x, ctx):
            counterexamples.append({"kind": "violation", "x": x})
    return PropertyReport(
        property="bound_holds",
        subject="gamma_stirling_lower",
        range=f"x in {points}",
        verdict=_verdict(counterexamples),
        counterexamples=tuple(counterexamples),
        method="certified_float",
        details={"points": len(points)},
    )


def verify_holder(
    pairs: int = 100,
    upper: float = 50.0,
    seed: int = 987654321,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
) -> PropertyReport:
    """holder_compare on seeded random pairs 0 < x < y <= upper."""
    rng = random.Random(seed)
    counterexamples = []
    checked = []
    for _ in range(pairs):
        x = rng.uniform(1e-3, upper)
        y = rng.uniform(1e-3, upper)
        x, y = min(x, y), max(x, y)
        if x == y:
            y = x + 1e-3
        checked.append((x, y))
        if not holder_compare(x, y, ctx):
            counterexamples.append({"kind": "violation", "x": x, "y": y})
    return PropertyReport(
        property="monotone_increasing",
        subject="bell_root_pairs",
        range=f"{pairs} random pairs 0<x<y<={upper} (seed {seed})",
        verdict=_verdict(counterexamples),
        counterexamples=tuple(counterexamples),
        method="certified_float",
        details={"pairs": pairs, "seed": seed},
    )
