"""Exact combinatorial sequence generators, certified-precision evaluation of
zeta-type special functions, and mechanical verification of log-convexity,
log-concavity, and n-th-root monotonicity properties."""

from .errors import DomainError, PrecisionError
from .exact import (
    NarayanaPolynomial,
    SequenceWindow,
    a_mu,
    b_seq,
    bell,
    bernoulli,
    catalan,
    lasalle_A,
    lasalle_a,
    narayana_poly,
    pochhammer_shifted,
    rayleigh_sigma,
    window,
    zeta_even_rational,
)
from .realfn import (
    DEFAULT_CONTEXT,
    PrecisionContext,
    ZeroTable,
    bell_real,
    bell_root,
    bessel_j,
    bessel_zero,
    bessel_zeta_real,
    gamma_lower_bound_holds,
    ln_gamma,
    log_second_difference,
    riemann_zeta_real,
    theta,
    theta_mu,
    zero_table,
)
from .checks import (
    PropertyReport,
    RealGrid,
    check_first_zero_bound,
    check_log_concave_exact,
    check_log_convex_exact,
    check_nth_root_increasing_exact,
    holder_compare,
    scan_conjectures,
    scan_monotone,
    verify_a_mu_suite,
    verify_b_suite,
    verify_bell_suite,
    verify_bernoulli_suite,
    verify_gamma_bound,
    verify_holder,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "PrecisionError",
    "NarayanaPolynomial",
    "SequenceWindow",
    "a_mu",
    "b_seq",
    "bell",
    "bernoulli",
    "catalan",
    "lasalle_A",
    "lasalle_a",
    "narayana_poly",
    "pochhammer_shifted",
    "rayleigh_sigma",
    "window",
    "zeta_even_rational",
    "DEFAULT_CONTEXT",
    "PrecisionContext",
    "ZeroTable",
    "bell_real",
    "bell_root",
    "bessel_j",
    "bessel_zero",
    "bessel_zeta_real",
    "gamma_lower_bound_holds",
    "ln_gamma",
    "log_second_difference",
    "riemann_zeta_real",
    "theta",
    "theta_mu",
    "zero_table",
    "PropertyReport",
    "RealGrid",
    "check_first_zero_bound",
    "check_log_concave_exact",
    "check_log_convex_exact",
    "check_nth_root_increasing_exact",
    "holder_compare",
    "scan_conjectures",
    "scan_monotone",
    "verify_a_mu_suite",
    "verify_b_suite",
    "verify_bell_suite",
    "verify_bernoulli_suite",
    "verify_gamma_bound",
    "verify_holder",
]
