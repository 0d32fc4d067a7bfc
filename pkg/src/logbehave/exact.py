"""Exact big-integer/rational generators for the integer-indexed sequences.

Everything here is computed over ``fractions.Fraction``, which keeps results
in canonical form (gcd 1, positive denominator) by construction.  Generators
are memoized per process; cache access is serialized so concurrent callers
are safe.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import DomainError

Rational = Fraction


def _as_mu(mu) -> Fraction:
    """Coerce mu to an exact rational and enforce mu > -1."""
    try:
        muq = Fraction(mu)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"mu must be rational, got {mu!r}") from exc
    if muq <= -1:
        raise DomainError(f"mu must be > -1, got {muq}")
    return muq


# ---------------------------------------------------------------------------
# Bernoulli numbers and even zeta values
# ---------------------------------------------------------------------------

_bern_lock = threading.Lock()
_bern: list[Fraction] = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n (B_1 = -1/2 convention), memoized.

    Generated from the defining recurrence sum_{k=0}^{n} C(n+1,k) B_k = 0.
    """
    if n < 0:
        raise DomainError(f"bernoulli requires n >= 0, got {n}")
    with _bern_lock:
        while len(_bern) <= n:
            m = len(_bern)
            if m % 2 == 1 and m > 1:
                _bern.append(Fraction(0))
                continue
            acc = Fraction(0)
            for k in range(m):
                bk = _bern[k]
                if bk:
                    acc += math.comb(m + 1, k) * bk
            _bern.append(-acc / (m + 1))
        return _bern[n]


def zeta_even_rational(n: int) -> Fraction:
    """Rational c_n with zeta(2n) = c_n * pi^(2n), i.e. 2^(2n-1) |B_2n| / (2n)!."""
    if n < 1:
        raise DomainError(f"zeta_even_rational requires n >= 1, got {n}")
    return Fraction(2) ** (2 * n - 1) * abs(bernoulli(2 * n)) / math.factorial(2 * n)


# ---------------------------------------------------------------------------
# Catalan numbers and Narayana polynomials
# ---------------------------------------------------------------------------


def _catalan_int(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def catalan(n: int) -> Fraction:
    """Catalan number C(2n,n)/(n+1) as an (integer-valued) rational."""
    if n < 1:
        raise DomainError(f"catalan requires n >= 1, got {n}")
    return Fraction(_catalan_int(n))


@dataclass(frozen=True)
class NarayanaPolynomial:
    """Polynomial sum_{k=1}^{r} (1/r) C(r,k-1) C(r,k) z^k.

    ``coefficients[k-1]`` is the coefficient of z^k.
    """

    r: int
    coefficients: tuple[Fraction, ...]

    def evaluate(self, z) -> Fraction:
        zq = Fraction(z)
        acc = Fraction(0)
        power = Fraction(1)
        for coeff in self.coefficients:
            power *= zq
            acc += coeff * power
        return acc


def narayana_poly(r: int) -> NarayanaPolynomial:
    """Coefficient list of the degree-r polynomial; evaluate(1) equals catalan(r)."""
    if r < 1:
        raise DomainError(f"narayana_poly requires r >= 1, got {r}")
    coeffs = tuple(
        Fraction(math.comb(r, k - 1) * math.comb(r, k), r) for k in range(1, r + 1)
    )
    return NarayanaPolynomial(r=r, coefficients=coeffs)


# ---------------------------------------------------------------------------
# Lasalle numbers
# ---------------------------------------------------------------------------

_lasalle_lock = threading.Lock()
_lasalle: list[int] = [0, 1]  # index 0 unused


def _lasalle_int(n: int) -> int:
    with _lasalle_lock:
        while len(_lasalle) <= n:
            m = len(_lasalle)
            # (-1)^(m-1) A_m = C_m + sum_{j=1}^{m-1} (-1)^j C(2m-1, 2j-1) A_j C_{m-j}
            acc = _catalan_int(m)
            for j in range(1, m):
                acc += (-1) ** j * math.comb(2 * m - 1, 2 * j - 1) * _lasalle[j] * _catalan_int(m - j)
            _lasalle.append((-1) ** (m - 1) * acc)
        return _lasalle[n]


def lasalle_A(n: int) -> Fraction:
    """A_n from the alternating Catalan convolution recurrence, memoized."""
    if n < 1:
        raise DomainError(f"lasalle_A requires n >= 1, got {n}")
    return Fraction(_lasalle_int(n))


def lasalle_a(n: int) -> Fraction:
    """a_n = 2 A_n / C_n (an integer for every n)."""
    if n < 1:
        raise DomainError(f"lasalle_a requires n >= 1, got {n}")
    return Fraction(2 * _lasalle_int(n), _catalan_int(n))


# ---------------------------------------------------------------------------
# Rayleigh sums: exact values of the Bessel zeta function at even integers
# ---------------------------------------------------------------------------

_sigma_lock = threading.Lock()
_sigma: dict[Fraction, list[Optional[Fraction]]] = {}


def rayleigh_sigma(mu, n: int) -> Fraction:
    """sigma_2n(mu), the sum of j^(-2n) over the positive zeros j of J_mu.

    Seeded by sigma_2 = 1/(4(mu+1)) and the quadratic convolution
    sigma_2n = (1/(n+mu)) sum_{k=1}^{n-1} sigma_2k sigma_2(n-k).  Memoized
    per (mu, n).  The recurrence is cross-validated elsewhere against the
    integer route through the Lasalle numbers.
    """
    muq = _as_mu(mu)
    if n < 1:
        raise DomainError(f"rayleigh_sigma requires n >= 1, got {n}")
    with _sigma_lock:
        values = _sigma.setdefault(muq, [None, Fraction(1, 4) / (muq + 1)])
        while len(values) <= n:
            m = len(values)
            acc = Fraction(0)
            for k in range(1, m):
                acc += values[k] * values[m - k]
            values.append(acc / (m + muq))
        return values[n]


def pochhammer_shifted(mu, n: int) -> Fraction:
    """Rising product (mu+1)(mu+2)...(mu+n); the empty product for n = 0."""
    if n < 0:
        raise DomainError(f"pochhammer_shifted requires n >= 0, got {n}")
    muq = Fraction(mu)
    acc = Fraction(1)
    for i in range(1, n + 1):
        acc *= muq + i
    return acc


def a_mu(mu, n: int) -> Fraction:
    """a_n(mu) = 2^(2n+1) (n-1)! (mu+1)_n sigma_2n(mu), exact for rational mu > -1."""
    muq = _as_mu(mu)
    if n < 1:
        raise DomainError(f"a_mu requires n >= 1, got {n}")
    return (
        Fraction(2) ** (2 * n + 1)
        * math.factorial(n - 1)
        * pochhammer_shifted(muq, n)
        * rayleigh_sigma(muq, n)
    )


def b_seq(n: int) -> Fraction:
    """b_n = a_n(0)/2, an integer-valued rational."""
    if n < 1:
        raise DomainError(f"b_seq requires n >= 1, got {n}")
    return a_mu(Fraction(0), n) / 2


# ---------------------------------------------------------------------------
# Bell numbers
# ---------------------------------------------------------------------------

_bell_lock = threading.Lock()
_bell: list[int] = [1]


def bell(n: int) -> Fraction:
    """Bell number via B_{n+1} = sum_k C(n,k) B_k, memoized."""
    if n < 0:
        raise DomainError(f"bell requires n >= 0, got {n}")
    with _bell_lock:
        while len(_bell) <= n:
            m = len(_bell)  # computing B_m from B_0..B_{m-1}
            acc = 0
            for k in range(m):
                acc += math.comb(m - 1, k) * _bell[k]
            _bell.append(acc)
        return Fraction(_bell[n])


# ---------------------------------------------------------------------------
# Sequence windows
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SequenceWindow:
    """A contiguous indexed slice of exact values with provenance."""

    name: str
    start: int
    values: tuple[Fraction, ...]
    generator_tag: str

    @property
    def stop(self) -> int:
        """Index of the last value (inclusive)."""
        return self.start + len(self.values) - 1

    def index_of(self, offset: int) -> int:
        return self.start + offset


@dataclass(frozen=True)
class _SeqSpec:
    fn: Callable[..., Fraction]
    min_start: int
    needs_mu: bool
    positive: bool
    tag: str


_SEQUENCES: dict[str, _SeqSpec] = {
    "bernoulli": _SeqSpec(bernoulli, 0, False, False, "bernoulli:defining-recurrence"),
    "bernoulli_abs_even": _SeqSpec(
        lambda n: abs(bernoulli(2 * n)), 1, False, True, "bernoulli:defining-recurrence"
    ),
    "bernoulli_abs_even_scaled": _SeqSpec(
        lambda n: abs(bernoulli(2 * n)) / math.factorial(2 * n),
        1,
        False,
        True,
        "bernoulli:defining-recurrence",
    ),
    "zeta_even_rational": _SeqSpec(
        zeta_even_rational, 1, False, True, "bernoulli:defining-recurrence"
    ),
    "catalan": _SeqSpec(catalan, 1, False, True, "catalan:binomial"),
    "lasalle_A": _SeqSpec(lasalle_A, 1, False, True, "lasalle:alternating-convolution"),
    "lasalle_a": _SeqSpec(lasalle_a, 1, False, True, "lasalle:alternating-convolution"),
    "a_mu": _SeqSpec(a_mu, 1, True, True, "a_mu:rayleigh-recurrence"),
    "b": _SeqSpec(b_seq, 1, False, True, "b:rayleigh-recurrence"),
    "rayleigh_sigma": _SeqSpec(rayleigh_sigma, 1, True, True, "rayleigh:convolution-recurrence"),
    "bell": _SeqSpec(bell, 0, False, True, "bell:binomial-convolution"),
}

SEQUENCE_NAMES = tuple(sorted(_SEQUENCES))


def window(name: str, start: int, length: int, mu=None) -> SequenceWindow:
    """Contiguous window of ``length`` exact values of the named sequence.

    ``mu`` is required for the mu-parametrized generators and rejected
    otherwise.  Sign-definite sequences are checked for positivity.
    """
    spec = _SEQUENCES.get(name)
    if spec is None:
        raise DomainError(f"unknown sequence {name!r}; known: {', '.join(SEQUENCE_NAMES)}")
    if length < 1:
        raise DomainError(f"window length must be >= 1, got {length}")
    if start < spec.min_start:
        raise DomainError(f"sequence {name!r} starts at index {spec.min_start}, got {start}")
    if spec.needs_mu:
        if mu is None:
            raise DomainError(f"sequence {name!r} requires mu")
        muq = _as_mu(mu)
        values = tuple(spec.fn(muq, n) for n in range(start, start + length))
        tag = f"{spec.tag}(mu={muq})"
    else:
        if mu is not None:
            raise DomainError(f"sequence {name!r} does not take mu")
        values = tuple(spec.fn(n) for n in range(start, start + length))
        tag = spec.tag
    if spec.positive and any(v <= 0 for v in values):
        raise DomainError(f"sequence {name!r} produced a non-positive value")
    return SequenceWindow(name=name, start=start, values=values, generator_tag=tag)
