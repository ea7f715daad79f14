"""Generalized hypergeometric series and their even/odd parts.

The three sums share one kernel: the full series pFq(a; b; x), its
even-index part C(a; b; x) (the cosh analogue) and its odd-index part
S(a; b; x) (the sinh analogue), with F = C + S and
C^2 - S^2 = F(x) F(-x) holding identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .backend import kernels
from .errors import ConvergenceError, DomainError, SeriesOverflowError
from .params import ConvergenceKind, ParamSet, convergence_domain

__all__ = [
    "SeriesResult",
    "DEFAULT_TOL",
    "MAX_TERMS",
    "ln_pochhammer",
    "hyper_pFq",
    "hyper_even_pCq",
    "hyper_odd_pSq",
    "series_term_log",
    "term_via_recurrence",
]

DEFAULT_TOL = 1e-12
MAX_TERMS = 10_000

_MODE_FULL, _MODE_EVEN, _MODE_ODD = 0, 1, 2


@dataclass(frozen=True)
class SeriesResult:
    """A series value together with its accuracy contract.

    abs_error_estimate is the geometric tail bound taken at the stopping
    point, capped by tol*max(1, |value|); it bounds the discarded tail
    under the three-consecutive-small-terms stopping rule (a documented
    heuristic, not a proof).
    """

    value: float
    abs_error_estimate: float
    terms_used: int


def ln_pochhammer(a: float, n: int) -> float:
    """ln of the rising factorial (a)_n = a(a+1)...(a+n-1), a > 0."""
    if a <= 0.0 or not math.isfinite(a):
        raise DomainError(f"ln_pochhammer requires a > 0, got {a!r}")
    if n < 0:
        raise DomainError(f"ln_pochhammer requires n >= 0, got {n!r}")
    if n == 0:
        return 0.0
    return math.lgamma(a + n) - math.lgamma(a)


def _check_domain(params: ParamSet, x: float, what: str) -> None:
    dom = convergence_domain(params)
    if dom.kind is ConvergenceKind.ENTIRE:
        if not math.isfinite(x):
            raise DomainError(f"{what}: x must be finite, got {x!r}")
        return
    if dom.kind is ConvergenceKind.UNIT_DISC:
        # |x| = 1 can converge for suitable eta but far too slowly for the
        # stopping rule, so the boundary is refused outright.
        if not abs(x) < 1.0:
            raise DomainError(
                f"{what}: |x| < 1 required for p = q+1 (p={params.p}, q={params.q}), got x={x!r}"
            )
        return
    if x != 0.0:
        raise DomainError(
            f"{what}: series diverges for p > q+1 (p={params.p}, q={params.q}) at x={x!r}"
        )


@lru_cache(maxsize=65536)
def _eval_cached(params: ParamSet, x: float, tol: float, mode: int, what: str) -> SeriesResult:
    a, b = params.as_arrays()
    value, err, terms, status = kernels.hyper_sum(a, b, x, tol, MAX_TERMS, mode)
    if status == 2:
        raise SeriesOverflowError(f"{what}({params}; x={x}) overflows double range")
    if status == 1:
        raise ConvergenceError(
            f"{what}({params}; x={x}) did not meet tol={tol} within {MAX_TERMS} terms"
        )
    return SeriesResult(value=float(value), abs_error_estimate=float(err), terms_used=int(terms))


def _eval(params: ParamSet, x: float, tol: float, mode: int, what: str) -> SeriesResult:
    if not tol > 0.0:
        raise DomainError(f"{what}: tol must be positive, got {tol!r}")
    _check_domain(params, x, what)
    return _eval_cached(params, float(x), float(tol), mode, what)


def hyper_pFq(params: ParamSet, x: float, tol: float = DEFAULT_TOL) -> SeriesResult:
    """Full series: sum_n prod(a)_n / prod(b)_n * x^n / n!."""
    return _eval(params, x, tol, _MODE_FULL, "pFq")


def hyper_even_pCq(params: ParamSet, x: float, tol: float = DEFAULT_TOL) -> SeriesResult:
    """Even-index part: sum_m prod(a)_{2m} / prod(b)_{2m} * x^{2m} / (2m)!."""
    return _eval(params, x, tol, _MODE_EVEN, "pCq")


def hyper_odd_pSq(params: ParamSet, x: float, tol: float = DEFAULT_TOL) -> SeriesResult:
    """Odd-index part: sum_m prod(a)_{2m+1} / prod(b)_{2m+1} * x^{2m+1} / (2m+1)!."""
    return _eval(params, x, tol, _MODE_ODD, "pSq")


def series_term_log(params: ParamSet, n: int, x: float) -> float:
    """ln of the n-th full-series term via log-domain Pochhammer sums (x > 0)."""
    if x <= 0.0:
        raise DomainError("series_term_log requires x > 0")
    s = -math.lgamma(n + 1) + n * math.log(x)
    for a in params.a_list:
        s += ln_pochhammer(a, n)
    for b in params.b_list:
        s -= ln_pochhammer(b, n)
    return s


def term_via_recurrence(params: ParamSet, n: int, x: float) -> float:
    """The n-th full-series term built exactly as the kernel builds it."""
    term = 1.0
    for m in range(n):
        num = x
        den = m + 1.0
        for a in params.a_list:
            num *= a + m
        for b in params.b_list:
            den *= b + m
        term *= num / den
    return term
