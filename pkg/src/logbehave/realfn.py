"""Controlled-precision evaluation of the real-domain special functions.

All arithmetic runs on mpmath ``mpf`` values at an explicit working
precision taken from a :class:`PrecisionContext`.  The evaluation schemes
are self-contained (Stirling series for log-gamma, Euler-Maclaurin for the
zeta sums, the defining power series plus safeguarded Newton for Bessel
zeros); mpmath supplies only the big-float arithmetic itself.  Every
operation states in its docstring whether ``ctx.tolerance`` is read as an
absolute or a relative error target.

mpmath's working precision is process-global, so a module lock serializes
precision-sensitive sections; the public functions are pure and safe to
call concurrently.
"""

from __future__ import annotations

import math
import threading
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from mpmath import mp, mpf

from . import exact
from .errors import DomainError, PrecisionError

_GUARD_BITS = 24
_LN2 = math.log(2)

_lock = threading.RLock()


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision (bits), error target, and a series safety cap.

    ``tolerance`` must be achievable at ``working_precision``, i.e. at
    least 2^-(working_precision - 8).
    """

    working_precision: int = 256
    tolerance: float = 1e-30
    max_terms: int = 100_000

    def __post_init__(self):
        if self.working_precision < 64:
            raise DomainError(f"working_precision must be >= 64, got {self.working_precision}")
        if not self.tolerance > 0:
            raise DomainError(f"tolerance must be > 0, got {self.tolerance}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms}")
        if math.log(self.tolerance) < (8 - self.working_precision) * _LN2:
            raise DomainError(
                f"tolerance {self.tolerance} is not achievable at "
                f"{self.working_precision} bits of working precision"
            )


DEFAULT_CONTEXT = PrecisionContext()


@contextmanager
def _active(ctx: PrecisionContext, extra_bits: int = 0):
    with _lock:
        with mp.workprec(ctx.working_precision + _GUARD_BITS + extra_bits):
            yield


def _to_mpf(value) -> mpf:
    """Exact conversion at the current working precision."""
    if isinstance(value, Fraction):
        return mpf(value.numerator) / value.denominator
    return mpf(value)


def _bern_mpf(n: int) -> mpf:
    b = exact.bernoulli(n)
    return mpf(b.numerator) / b.denominator


# ---------------------------------------------------------------------------
# log-gamma via the Stirling series with argument shift
# ---------------------------------------------------------------------------


def _ln_gamma_core(xm: mpf, target_abs: mpf) -> mpf:
    """Stirling series at x+m, shift logs divided out; |error| <= target_abs."""
    # Pick the correction order from the digit budget, then a shift m large
    # enough that the order-K remainder clears the target.
    log_target = float(mp.log(target_abs))
    digits = max(8.0, -log_target / math.log(10))
    K = max(8, int(0.55 * digits))
    for _ in range(40):
        # remainder ~ |B_{2K+2}| / ((2K+2)(2K+1) z^(2K+1));
        # log|B_{2K+2}| ~ log 2 + lgamma(2K+3) - (2K+2) log(2pi)
        log_b = _LN2 + math.lgamma(2 * K + 3) - (2 * K + 2) * math.log(2 * math.pi)
        log_zmin = (log_b - math.log((2 * K + 2) * (2 * K + 1)) - (log_target - 3)) / (
            2 * K + 1
        )
        zmin = math.exp(min(log_zmin, 700.0))
        m = max(0, int(math.ceil(zmin - float(xm))))
        z = xm + m
        acc = (z - mpf(1) / 2) * mp.log(z) - z + mp.log(2 * mp.pi) / 2
        zpow = z
        zsq = z * z
        prev = mpf("inf")
        converged = False
        for k in range(1, K + 2):
            term = _bern_mpf(2 * k) / ((2 * k) * (2 * k - 1) * zpow)
            if abs(term) >= prev:
                break
            acc += term
            prev = abs(term)
            zpow *= zsq
            if abs(term) <= target_abs / 2:
                converged = True
                break
        if converged:
            for i in range(m):
                acc -= mp.log(xm + i)
            return acc
        K += 6
    raise PrecisionError("Stirling series failed to reach the requested tolerance")


def ln_gamma(x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """log Gamma(x) for x > 0.

    Tolerance is relative, read as absolute where |log Gamma(x)| < 1.
    """
    with _active(ctx, extra_bits=48):
        xm = _to_mpf(x)
        if xm <= 0:
            raise DomainError(f"ln_gamma requires x > 0, got {x}")
        scale = max(1.0, abs(math.lgamma(float(xm))))
        return _ln_gamma_core(xm, _to_mpf(ctx.tolerance) * scale / 4)


def gamma_lower_bound_holds(x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> bool:
    """True iff Gamma(x) > sqrt(2 pi / x) (x/e)^x, the strict Stirling lower
    bound (equivalently Gamma(x+1) > sqrt(2 pi x) (x/e)^x), for x > 0.

    Compared in log space at ctx precision.
    """
    with _active(ctx, extra_bits=48):
        xm = _to_mpf(x)
        if xm <= 0:
            raise DomainError(f"gamma_lower_bound_holds requires x > 0, got {x}")
        lhs = ln_gamma(xm, ctx)
        rhs = (mp.log(2 * mp.pi) - mp.log(xm)) / 2 + xm * (mp.log(xm) - 1)
        return bool(lhs > rhs)


# ---------------------------------------------------------------------------
# Riemann/Hurwitz zeta via Euler-Maclaurin
# ---------------------------------------------------------------------------


def _hurwitz_core(s: mpf, a: mpf, target_abs: mpf, max_order: int = 220) -> mpf:
    """sum_{n>=0} (a+n)^-s for real s > 1, a > 0; |error| <= target_abs.

    Euler-Maclaurin with the remainder bounded by the first omitted
    correction term (valid for real s > 0).
    """
    M = 8
    for _ in range(16):
        N = a + M
        acc = mpf(0)
        for n in range(M):
            acc += (a + n) ** (-s)
        acc += N ** (1 - s) / (s - 1) + N ** (-s) / 2
        npow = N ** (-s - 1)
        poch = s
        fact = mpf(2)
        converged = False
        for k in range(1, max_order):
            term = _bern_mpf(2 * k) / fact * poch * npow
            acc += term
            if abs(term) <= target_abs / 2:
                converged = True
                break
            npow /= N * N
            poch *= (s + 2 * k - 1) * (s + 2 * k)
            fact *= (2 * k + 1) * (2 * k + 2)
            if abs(_bern_mpf(2 * k + 2) / fact * poch * npow) >= abs(term):
                break  # past the asymptotic sweet spot; grow M
        if converged:
            return acc
        M *= 2
    raise PrecisionError("Euler-Maclaurin failed to reach the requested tolerance")


def riemann_zeta_real(x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """zeta(x) for real x > 1.  Tolerance is relative."""
    with _active(ctx):
        xm = _to_mpf(x)
        if xm <= 1:
            raise DomainError(f"riemann_zeta_real requires x > 1, got {x}")
        scale = 1 + 2 ** (-xm) + 1 / (xm - 1)  # crude zeta majorant for scaling
        return _hurwitz_core(xm, mpf(1), _to_mpf(ctx.tolerance) * scale / 4)


def theta(x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """(2 zeta(x) Gamma(x+1))^(1/x) for x > 1, computed in log space.

    Tolerance is relative.
    """
    with _active(ctx, extra_bits=48):
        xm = _to_mpf(x)
        if xm <= 1:
            raise DomainError(f"theta requires x > 1, got {x}")
        zeta_sub, gamma_sub = _split(ctx)
        logs = mp.log(2) + mp.log(riemann_zeta_real(xm, zeta_sub)) + ln_gamma(xm + 1, gamma_sub)
        return mp.exp(logs / xm)


def _split(ctx: PrecisionContext) -> tuple[PrecisionContext, PrecisionContext]:
    """Sub-contexts for composite operations: the error of the zeta factor
    enters the log once (tolerance/2 suffices), the cheap log-gamma factors
    get a 16x tighter target to cover their magnitude."""
    zeta_sub = PrecisionContext(
        working_precision=ctx.working_precision + 16,
        tolerance=ctx.tolerance / 2,
        max_terms=ctx.max_terms,
    )
    gamma_sub = PrecisionContext(
        working_precision=ctx.working_precision + 16,
        tolerance=ctx.tolerance / 16,
        max_terms=ctx.max_terms,
    )
    return zeta_sub, gamma_sub


# ---------------------------------------------------------------------------
# Bessel J by its power series, zeros by McMahon + safeguarded Newton
# ---------------------------------------------------------------------------


def bessel_j(mu, x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """J_mu(x) for mu > -1 and x >= 0 by the defining power series.

    Tolerance is absolute.  The working precision is raised internally by
    ~1.45 bits per unit of x to absorb the series cancellation, so the
    contract holds throughout the zero-table range.
    """
    xf = float(x)
    if xf < 0:
        raise DomainError(f"bessel_j requires x >= 0, got {x}")
    extra = int(1.45 * xf) + 48
    with _active(ctx, extra_bits=extra):
        mum = _to_mpf(mu)
        if mum <= -1:
            raise DomainError(f"bessel_j requires mu > -1, got {mu}")
        xm = _to_mpf(x)
        if xm == 0:
            return mpf(1) if mum == 0 else mpf(0)
        return _bessel_j_core(mum, xm, _to_mpf(ctx.tolerance), ctx.max_terms)


def _bessel_j_core(mum: mpf, xm: mpf, target_abs: mpf, max_terms: int) -> mpf:
    half = xm / 2
    q = half * half
    pref = mp.exp(mum * mp.log(half))
    bits = mp.prec
    u = mp.exp(-_ln_gamma_core(mum + 1, mpf(2) ** (16 - bits)))
    acc = u
    k = 0
    while True:
        k += 1
        u = -u * q / (k * (mum + k))
        acc += u
        if abs(u) * pref <= target_abs / 2 and q / ((k + 1) * (mum + k + 1)) < 1:
            return pref * acc
        if k > max_terms:
            raise PrecisionError("bessel_j series cap exceeded; raise max_terms or tolerance")


def _mcmahon(mu: float, k: int) -> float:
    """Asymptotic k-th zero of J_mu; used for initial guesses and tails."""
    m = 4 * mu * mu
    beta = (k + mu / 2 - 0.25) * math.pi
    t = 1.0 / (8 * beta)
    c1 = m - 1
    c3 = 4 * (m - 1) * (7 * m - 31) / 3
    c5 = 32 * (m - 1) * (83 * m * m - 982 * m + 3779) / 15
    c7 = 64 * (m - 1) * (6949 * m**3 - 153855 * m * m + 1585743 * m - 6277237) / 105
    return beta - t * (c1 + t * t * (c3 + t * t * (c5 + t * t * c7)))


def _as_mu_key(mu) -> Fraction:
    if isinstance(mu, (int, Fraction)):
        muq = Fraction(mu)
    else:
        muq = Fraction(float(mu))
    if muq <= -1:
        raise DomainError(f"mu must be > -1, got {mu}")
    return muq


_zero_cache: dict[tuple[Fraction, int], list[tuple[mpf, mpf]]] = {}
_zero_lock = threading.RLock()


def _refine_zero(mum: mpf, lo: mpf, hi: mpf, f_lo: mpf, width: mpf,
                 eval_tol: mpf, max_terms: int) -> tuple[mpf, mpf]:
    """Shrink a sign-change bracket to the given width; Newton inside, bisection
    as the safeguard.  Returns (center, |J(center)|)."""
    a, b = lo, hi
    sign_a = mp.sign(f_lo)
    x = (a + b) / 2
    for _ in range(mp.prec + 80):
        fx = _bessel_j_core(mum, x, eval_tol, max_terms)
        if mp.sign(fx) == sign_a:
            a = x
        else:
            b = x
        if b - a <= width:
            break
        dfx = mum / x * fx - _bessel_j_core(mum + 1, x, eval_tol, max_terms)
        step = x - fx / dfx if dfx != 0 else x
        x = step if a < step < b else (a + b) / 2
    center = (a + b) / 2
    return center, abs(_bessel_j_core(mum, center, eval_tol, max_terms))


def _extend_zero_table(muq: Fraction, count: int, ctx: PrecisionContext) -> list[tuple[mpf, mpf]]:
    key = (muq, ctx.working_precision)
    with _zero_lock:
        table = _zero_cache.setdefault(key, [])
        if len(table) >= count:
            return table
        extra = int(1.45 * (_mcmahon(float(muq), count) + 4)) + 48
        with _active(ctx, extra_bits=extra):
            mum = _to_mpf(muq)
            width = mpf(2) ** (-(ctx.working_precision - 8))
            eval_tol = width / 16
            step = mp.pi / 4
            while len(table) < count:
                k = len(table) + 1
                prev = table[-1][0] if table else mpf(0)
                guess = _mcmahon(float(muq), k)
                bracket = None
                if k >= 2:
                    lo = mpf(guess) - mpf("0.35")
                    hi = mpf(guess) + mpf("0.35")
                    # only trust the guess when the window sits inside the zone
                    # (prev, prev + 4.5) that contains exactly the next zero
                    if prev + mpf("0.2") < lo and hi < prev + mpf("4.5"):
                        f_lo = _bessel_j_core(mum, lo, eval_tol, ctx.max_terms)
                        f_hi = _bessel_j_core(mum, hi, eval_tol, ctx.max_terms)
                        if mp.sign(f_lo) != mp.sign(f_hi):
                            bracket = (lo, hi, f_lo)
                if bracket is None:
                    # sequential scan; the step is far below any zero spacing,
                    # so the first sign change past the previous zero is the
                    # k-th zero
                    t = prev + step / 5 if prev else mpf(2) ** (-20)
                    f_t = _bessel_j_core(mum, t, eval_tol, ctx.max_terms)
                    for _ in range(ctx.max_terms):
                        t2 = t + step
                        f_t2 = _bessel_j_core(mum, t2, eval_tol, ctx.max_terms)
                        if mp.sign(f_t) != mp.sign(f_t2):
                            bracket = (t, t2, f_t)
                            break
                        t, f_t = t2, f_t2
                    if bracket is None:
                        raise PrecisionError(f"failed to bracket zero {k} of J_{muq}")
                center, resid = _refine_zero(
                    mum, bracket[0], bracket[1], bracket[2], width, eval_tol, ctx.max_terms
                )
                table.append((center, resid))
        return table


@dataclass(frozen=True)
class ZeroTable:
    """Certified positive zeros of J_mu: strictly increasing, with the max
    residual |J_mu(zero)| over the table."""

    mu: float
    zeros: tuple[mpf, ...]
    residual_bound: mpf

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.zeros, self.zeros[1:])):
            raise PrecisionError("zero table is not strictly increasing")
        if self.zeros and not self.zeros[0] > 0:
            raise PrecisionError("first zero is not positive")


def zero_table(mu, count: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ZeroTable:
    """The first ``count`` positive zeros of J_mu at ctx precision."""
    if count < 1:
        raise DomainError(f"zero_table requires count >= 1, got {count}")
    muq = _as_mu_key(mu)
    table = _extend_zero_table(muq, count, ctx)
    with _active(ctx):
        zeros = tuple(z for z, _ in table[:count])
        resid = max(r for _, r in table[:count])
        first_bound = mp.sqrt(_to_mpf(muq) + 1) * (mp.sqrt(_to_mpf(muq) + 2) + 1)
        if not zeros[0] < first_bound:
            raise PrecisionError("first zero violates its upper bound; wrong root located")
        return ZeroTable(mu=float(muq), zeros=zeros, residual_bound=resid)


def bessel_zero(mu, k: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """The k-th positive zero of J_mu, mu > -1.

    Tolerance is absolute; the root is maintained inside a verified
    sign-change bracket, which is shrunk below both ctx.tolerance and
    2^-(working_precision - 8).
    """
    if k < 1:
        raise DomainError(f"bessel_zero requires k >= 1, got {k}")
    muq = _as_mu_key(mu)
    table = _extend_zero_table(muq, k, ctx)
    return table[k - 1][0]


# ---------------------------------------------------------------------------
# Bessel zeta at real argument: partial zero sum + asymptotic tail
# ---------------------------------------------------------------------------


def _bz_tail(muq: Fraction, xm: mpf, K: int, target_abs: mpf) -> mpf:
    """sum_{n>K} j_n^-x with the zeros replaced by their McMahon expansion.

    Writing j ~ beta (1 - u(beta)) with beta linear in n, j^-x expands into
    even inverse powers of beta, and each power sums to a Hurwitz zeta value
    that Euler-Maclaurin evaluates with a certified remainder.
    """
    m = _to_mpf(4) * _to_mpf(muq) ** 2
    A1 = (m - 1) / 8
    A3 = (m - 1) * (7 * m - 31) / 384
    A5 = (m - 1) * (83 * m * m - 982 * m + 3779) / 15360
    A7 = (m - 1) * (6949 * m**3 - 153855 * m * m + 1585743 * m - 6277237) / 3440640
    s2 = xm * (xm + 1) / 2
    s3 = s2 * (xm + 2) / 3
    s4 = s3 * (xm + 3) / 4
    coeffs = (
        mpf(1),
        xm * A1,
        xm * A3 + s2 * A1**2,
        xm * A5 + 2 * s2 * A1 * A3 + s3 * A1**3,
        xm * A7 + s2 * (2 * A1 * A5 + A3**2) + 3 * s3 * A1**2 * A3 + s4 * A1**4,
    )
    a = K + 1 + _to_mpf(muq) / 2 - mpf(1) / 4
    tail = mpf(0)
    for j, cj in enumerate(coeffs):
        if cj == 0:
            continue
        s = xm + 2 * j
        tail += cj * mp.pi ** (-s) * _hurwitz_core(s, a, target_abs / (8 * abs(cj)))
    return tail


def bessel_zeta_real(mu, x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """zeta_mu(x) = sum_n j_{mu,n}^-x for mu > -1, x > 1.

    Tolerance is relative.  K zeros are summed directly and the remainder is
    evaluated through the McMahon/Hurwitz tail expansion; K is grown until
    two runs with doubled K agree within the tolerance (the tail error decays
    like K^-(x+9), so agreement certifies the smaller-K error empirically).
    """
    muq = _as_mu_key(mu)
    with _active(ctx):
        xm = _to_mpf(x)
        if xm <= 1:
            raise DomainError(f"bessel_zeta_real requires x > 1, got {x}")
        tol = _to_mpf(ctx.tolerance)
        cap = max(16, min(256, ctx.max_terms))
        K = 8
        value_K = _bz_partial(muq, xm, K, ctx)
        order = 1.0 / (float(xm) + 9.0)  # the tail error decays like K^-(x+9)
        while True:
            K2 = min(cap, max(K + 8, (3 * K) // 2))
            value_K2 = _bz_partial(muq, xm, K2, ctx)
            diff = abs(value_K2 - value_K)
            if diff <= tol * abs(value_K2) / 2:
                return value_K2
            if K2 >= cap:
                raise PrecisionError(
                    f"bessel_zeta tail cannot certify tolerance {ctx.tolerance} "
                    f"within {cap} zeros; relax the tolerance or raise max_terms"
                )
            # jump by the error model, abort early when the target is hopeless
            ratio = float(diff / (tol * abs(value_K2) / 4))
            K_target = int(K * min(1e6, max(1.5, ratio**order))) + 1
            if K_target > cap:
                raise PrecisionError(
                    f"bessel_zeta tolerance {ctx.tolerance} needs about "
                    f"{K_target} zeros at x={float(xm):g} (cap {cap}); "
                    "relax the tolerance or raise max_terms"
                )
            K = max(K2, K_target)
            value_K = _bz_partial(muq, xm, K, ctx)


def _bz_partial(muq: Fraction, xm: mpf, K: int, ctx: PrecisionContext) -> mpf:
    table = _extend_zero_table(muq, K, ctx)
    part = mpf(0)
    for z, _ in table[K - 1 :: -1]:  # ascending magnitude: sum smallest terms first
        part += z ** (-xm)
    scale = part if part > 0 else mpf(1)
    return part + _bz_tail(muq, xm, K, _to_mpf(ctx.tolerance) * scale / 4)


def theta_mu(mu, x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """((2/Gamma(mu+1)) Gamma(x/2) Gamma(x/2+mu+1) zeta_mu(x))^(1/x).

    Requires mu >= 0 and x > 1; computed in log space.  Tolerance is
    relative.  At even integers x = 2n this satisfies
    4 theta_mu(2n)^2 = a_n(mu)^(1/n).
    """
    muq = _as_mu_key(mu)
    if muq < 0:
        raise DomainError(f"theta_mu requires mu >= 0, got {mu}")
    with _active(ctx, extra_bits=48):
        xm = _to_mpf(x)
        if xm <= 1:
            raise DomainError(f"theta_mu requires x > 1, got {x}")
        mum = _to_mpf(muq)
        zeta_sub, gamma_sub = _split(ctx)
        logs = (
            mp.log(2)
            - ln_gamma(mum + 1, gamma_sub)
            + ln_gamma(xm / 2, gamma_sub)
            + ln_gamma(xm / 2 + mum + 1, gamma_sub)
            + mp.log(bessel_zeta_real(muq, xm, zeta_sub))
        )
        return mp.exp(logs / xm)


# ---------------------------------------------------------------------------
# Real-argument Bell values via the exponential series
# ---------------------------------------------------------------------------


def bell_real(x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """B(x) = (1/e) sum_{k>=1} k^x / k! for x > 0.  Tolerance is relative.

    Truncated at the first k >= x where the term ratio drops below 1/2 and
    the implied geometric tail is inside the tolerance; the ratio is
    decreasing there, so the bound is certified.
    """
    with _active(ctx):
        xm = _to_mpf(x)
        if xm <= 0:
            raise DomainError(f"bell_real requires x > 0, got {x}")
        tol = _to_mpf(ctx.tolerance)
        acc = mpf(0)
        term = mpf(1)  # k^x / k! at k = 1
        k = 1
        while True:
            acc += term
            ratio = ((mpf(k + 1) / k) ** xm) / (k + 1)
            if k >= xm and ratio < mpf(1) / 2:
                tail_bound = term * ratio / (1 - ratio)
                if tail_bound <= tol * acc / 2:
                    break
            if k > ctx.max_terms:
                raise PrecisionError("bell_real series cap exceeded")
            term *= ratio
            k += 1
        return acc / mp.e


def bell_root(x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpf:
    """B(x)^(1/x) in log space.  Tolerance is relative."""
    with _active(ctx):
        xm = _to_mpf(x)
        if xm <= 0:
            raise DomainError(f"bell_root requires x > 0, got {x}")
        return mp.exp(mp.log(bell_real(xm, ctx)) / xm)


# ---------------------------------------------------------------------------
# Log second difference
# ---------------------------------------------------------------------------


def log_second_difference(
    f: Callable[[mpf], object], x, h, ctx: PrecisionContext = DEFAULT_CONTEXT
) -> mpf:
    """Central second difference of log f:
    (log f(x-h) - 2 log f(x) + log f(x+h)) / h^2.

    Evaluation failures in ``f`` propagate unchanged.
    """
    with _active(ctx):
        xm, hm = _to_mpf(x), _to_mpf(h)
        if hm <= 0:
            raise DomainError(f"log_second_difference requires h > 0, got {h}")
        lo = mp.log(_to_mpf(f(xm - hm)))
        mid = mp.log(_to_mpf(f(xm)))
        hi = mp.log(_to_mpf(f(xm + hm)))
        return (lo - 2 * mid + hi) / (hm * hm)
