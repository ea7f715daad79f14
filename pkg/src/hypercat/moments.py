"""Closed-form resolution-of-identity weights and the moment verifier.

Five tabulated (p, q) shapes have closed-form weights whose n-th power
moment over [0, R] must reproduce rho(n); verify_moments checks this by
quadrature. The generic weight for other shapes is an inverse Mellin
transform (a Meijer G-function of the Gamma-ratio kernel) and is out of
scope here: those shapes are rejected.

Shape-by-shape, with G(.) the Gamma function:

  (0,0)  exp_00        e^{-x}                                     on [0, inf)
  (0,1)  besselK_01    2/G(b) x^{(b-1)/2} K_{b-1}(2 sqrt x)       on [0, inf)
  (1,0)  beta_10       (a-1)(1-x)^{a-2}                           on [0, 1]
  (1,1)  whittaker_11  G(a)/G(b) x^{b/2-1} e^{-x/2}
                         * W_{1+b/2-a, (b-1)/2}(x)                on [0, inf)
                       = G(a)/G(b) x^{b-1} e^{-x} U(a-1, b, x)
  (2,1)  gauss2F1_21   G(a1)G(a2)/[G(b)G(g)] (1-x)^{g-1}
                         * 2F1(a1-b, a2-b; g; 1-x), g = a1+a2-b-1 on [0, 1]

The even and odd sub-problems (moments over only even or only odd
orders) are solved by the same weight, which verify_moments exercises
through its parity filter.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedCaseError, ValidationError
from .params import ParamSet
from .quadrature import adaptive_quadrature, integrate_semi_infinite
from .special import bessel_K_many, gauss_2F1_many, hyperu_many
from .states import ln_rho, rho

__all__ = [
    "WeightTag",
    "WeightCase",
    "MomentEntry",
    "MomentReport",
    "weight_case",
    "weight_eval",
    "weight_eval_many",
    "quadrature_moment",
    "verify_moments",
]

DEFAULT_MOMENT_TOL = 1e-9


class WeightTag(enum.Enum):
    EXP_00 = "exp_00"
    BESSEL_K_01 = "besselK_01"
    BETA_10 = "beta_10"
    WHITTAKER_11 = "whittaker_11"
    GAUSS_2F1_21 = "gauss2F1_21"


@dataclass(frozen=True)
class WeightCase:
    """A tagged closed-form weight with its support interval [0, R]."""

    tag: WeightTag
    params: ParamSet
    support_upper: float
    singular_exponent_at_1: float | None = None

    @property
    def finite_support(self) -> bool:
        return math.isfinite(self.support_upper)


def _is_positive_integer(v: float, tol: float = 1e-12) -> bool:
    return v > 0.5 and abs(v - round(v)) < tol


def weight_case(params: ParamSet) -> WeightCase:
    """Select the tabulated weight for params, or reject the shape."""
    p, q = params.p, params.q
    if (p, q) == (0, 0):
        return WeightCase(WeightTag.EXP_00, params, math.inf)
    if (p, q) == (0, 1):
        return WeightCase(WeightTag.BESSEL_K_01, params, math.inf)
    if (p, q) == (1, 0):
        a = params.a_list[0]
        if a <= 1.0:
            raise ValidationError(
                f"beta_10 weight needs a > 1 for (a-1)(1-x)^(a-2) to be a finite measure, got a={a}"
            )
        return WeightCase(WeightTag.BETA_10, params, 1.0, singular_exponent_at_1=a - 2.0)
    if (p, q) == (1, 1):
        a = params.a_list[0]
        if a < 1.0:
            raise ValidationError(
                f"whittaker_11 weight needs a >= 1 (U(a-1, b, .) turns negative near 0 otherwise), got a={a}"
            )
        return WeightCase(WeightTag.WHITTAKER_11, params, math.inf)
    if (p, q) == (2, 1):
        a1, a2 = params.a_list
        b = params.b_list[0]
        if a1 + a2 - b <= 1.0:
            raise ValidationError(
                f"gauss2F1_21 weight needs a1+a2-b > 1, got {a1}+{a2}-{b}"
            )
        if _is_positive_integer(b) and not (b == a1 or b == a2):
            raise ValidationError(
                "gauss2F1_21 with integer b hits the logarithmic argument->1 "
                "connection case, which is not supported"
            )
        return WeightCase(
            WeightTag.GAUSS_2F1_21, params, 1.0, singular_exponent_at_1=a1 + a2 - b - 2.0
        )
    raise UnsupportedCaseError(
        f"no tabulated closed-form weight for (p, q) = ({p}, {q}); the generic "
        "inverse-Mellin (Meijer-G) weight is documentation only"
    )


def _regular_part_many(case: WeightCase, xs: np.ndarray) -> np.ndarray:
    """The weight with any (1-x)^sigma endpoint factor stripped."""
    tag = case.tag
    if tag is WeightTag.EXP_00:
        return np.exp(-xs)
    if tag is WeightTag.BESSEL_K_01:
        b = case.params.b_list[0]
        k = bessel_K_many(b - 1.0, 2.0 * np.sqrt(xs))
        return 2.0 / math.gamma(b) * np.power(xs, 0.5 * (b - 1.0)) * k
    if tag is WeightTag.BETA_10:
        a = case.params.a_list[0]
        return np.full_like(xs, a - 1.0)
    if tag is WeightTag.WHITTAKER_11:
        a = case.params.a_list[0]
        b = case.params.b_list[0]
        u = hyperu_many(a - 1.0, b, xs)
        pref = math.gamma(a) / math.gamma(b)
        return pref * np.exp((b - 1.0) * np.log(xs) - xs) * u
    a1, a2 = case.params.a_list
    b = case.params.b_list[0]
    g = a1 + a2 - b - 1.0
    pref = math.exp(
        math.lgamma(a1) + math.lgamma(a2) - math.lgamma(b) - math.lgamma(g)
    )
    return pref * gauss_2F1_many(a1 - b, a2 - b, g, 1.0 - xs)


def weight_eval_many(case: WeightCase, xs: np.ndarray) -> np.ndarray:
    """The weight at interior points of its support."""
    xs = np.asarray(xs, dtype=np.float64)
    if xs.size == 0:
        return xs.copy()
    if np.any(xs <= 0.0) or np.any(xs >= case.support_upper):
        raise ValidationError(
            f"weight defined on the open interior (0, {case.support_upper}), "
            f"got x in [{xs.min()}, {xs.max()}]"
        )
    out = _regular_part_many(case, xs)
    sigma = case.singular_exponent_at_1
    if sigma is not None:
        out = out * np.power(1.0 - xs, sigma)
    return out


def weight_eval(case: WeightCase, x: float) -> float:
    return float(weight_eval_many(case, np.array([float(x)]))[0])


def quadrature_moment(case: WeightCase, n: int, tol: float = DEFAULT_MOMENT_TOL) -> float:
    """Integral of x^n times the weight over its support, to relative tol."""
    if n < 0:
        raise ValidationError(f"moment order must be >= 0, got {n!r}")
    if case.finite_support:

        def f(xs: np.ndarray) -> np.ndarray:
            return np.power(xs, n) * _regular_part_many(case, xs)

        value, _ = adaptive_quadrature(
            f, 0.0, case.support_upper, tol, alpha_at_hi=case.singular_exponent_at_1
        )
        return value

    def f(xs: np.ndarray) -> np.ndarray:
        return np.power(xs, n) * _regular_part_many(case, xs)

    value, _ = integrate_semi_infinite(f, tol)
    return value


@dataclass(frozen=True)
class MomentEntry:
    n: int
    target_rho: float
    quadrature_value: float
    rel_error: float


@dataclass(frozen=True)
class MomentReport:
    """Per-order comparison of quadrature moments against rho(n)."""

    entries: tuple[MomentEntry, ...]
    max_rel_error: float

    def to_csv(self) -> str:
        lines = ["n,target,value,rel_error"]
        for e in self.entries:
            lines.append(
                f"{e.n},{e.target_rho:.17g},{e.quadrature_value:.17g},{e.rel_error:.17g}"
            )
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "results": [
                {
                    "n": e.n,
                    "target": e.target_rho,
                    "value": e.quadrature_value,
                    "rel_error": e.rel_error,
                }
                for e in self.entries
            ],
            "max_rel_error": self.max_rel_error,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def verify_moments(
    case: WeightCase,
    n_max: int,
    tol: float = DEFAULT_MOMENT_TOL,
    parity_filter: str = "all",
) -> MomentReport:
    """Check that the weight's moments reproduce rho(n) for n up to n_max.

    parity_filter picks the index set: all n, only even n (the even-state
    sub-problem), or only odd n; one weight solves all three.
    """
    if n_max < 0:
        raise ValidationError(f"n_max must be >= 0, got {n_max!r}")
    if parity_filter not in ("all", "even", "odd"):
        raise ValidationError(f"parity_filter must be all/even/odd, got {parity_filter!r}")
    start = 1 if parity_filter == "odd" else 0
    step = 1 if parity_filter == "all" else 2
    entries = []
    worst = 0.0
    for n in range(start, n_max + 1, step):
        target = rho(case.params, n)
        value = quadrature_moment(case, n, tol)
        rel = abs(value / target - 1.0)
        worst = max(worst, rel)
        entries.append(
            MomentEntry(n=n, target_rho=target, quadrature_value=value, rel_error=rel)
        )
    return MomentReport(entries=tuple(entries), max_rel_error=worst)


# re-exported for callers assembling reports by hand
__all__ += ["rho", "ln_rho"]
