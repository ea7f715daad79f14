"""Modified Bessel K, Whittaker W / Kummer U, and the Gauss 2F1 series.

K and U are computed from their real integral representations on
analysis-driven panel grids (see the backend kernels); W is the usual
e^{-x/2} x^{mu+1/2} U(mu-kappa+1/2, 1+2mu, x) combination. 2F1 runs on
the generic series kernel with a Pfaff transform for arguments near -1
and the argument->1 connection formula near +1.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln, gammasgn

from ._rules import GL_NODES, GL_WEIGHTS, jacobi_rule
from .backend import kernels
from .errors import ConvergenceError, DomainError, SeriesOverflowError, ValidationError

__all__ = ["bessel_K", "bessel_K_many", "hyperu", "hyperu_many", "whittaker_W", "gauss_2F1"]

_MAX_NU = 60.0
_JACOBI_ORDER = 24
_SERIES_TOL = 1e-14
_MAX_TERMS = 10_000


def bessel_K_many(nu: float, xs: np.ndarray) -> np.ndarray:
    """Modified Bessel function of the second kind at an array of x > 0."""
    nu = float(nu)
    if abs(nu) > _MAX_NU:
        raise ValidationError(f"bessel_K supports |nu| <= {_MAX_NU}, got {nu!r}")
    xs = np.asarray(xs, dtype=np.float64)
    if xs.size and not np.all(xs > 0.0):
        raise DomainError("bessel_K requires x > 0")
    out = kernels.bessel_k_many(nu, xs, GL_NODES, GL_WEIGHTS)
    if not np.all(np.isfinite(out)):
        raise SeriesOverflowError(f"bessel_K(nu={nu}) overflows double range")
    return out


def bessel_K(nu: float, x: float) -> float:
    """K_nu(x) for x > 0; satisfies the K_{-nu} = K_nu symmetry."""
    return float(bessel_K_many(nu, np.array([float(x)]))[0])


def _hyperu_quad_many(a: float, b: float, xs: np.ndarray) -> np.ndarray:
    """U(a, b, x) by the Gamma(a)^{-1} integral representation, a > 0."""
    c = b - a - 1.0
    xmin = float(xs.min())
    if c > 0.0 and c * math.log1p(c / xmin) > 600.0:
        raise ValidationError(
            f"hyperu parameters (a={a}, b={b}) too extreme for x >= {xmin}"
        )
    jx, jw = jacobi_rule(_JACOBI_ORDER, 0.0, a - 1.0)
    return kernels.hyperu_many(float(a), float(b), xs, GL_NODES, GL_WEIGHTS, jx, jw)


def hyperu_many(a: float, b: float, xs: np.ndarray) -> np.ndarray:
    """Kummer U at an array of x > 0, any real a.

    a > 0 uses the integral representation directly; a <= 0 recurs
    downward in a (the dominant direction) from two integral-quadrature
    seeds, which also covers the polynomial a = -m cases without the
    degeneracies of the Kummer connection formula.
    """
    xs = np.asarray(xs, dtype=np.float64)
    if xs.size == 0:
        return xs.copy()
    if not np.all(xs > 0.0):
        raise DomainError("hyperu requires x > 0")
    a = float(a)
    b = float(b)
    if a > 0.0:
        return _hyperu_quad_many(a, b, xs)
    m = int(math.floor(-a)) + 1
    a0 = a + m
    u0 = _hyperu_quad_many(a0, b, xs)
    u1 = _hyperu_quad_many(a0 + 1.0, b, xs)
    acur = a0
    for _ in range(m):
        um1 = (xs + 2.0 * acur - b) * u0 - acur * (acur + 1.0 - b) * u1
        u1 = u0
        u0 = um1
        acur -= 1.0
    return u0


def hyperu(a: float, b: float, x: float) -> float:
    return float(hyperu_many(a, b, np.array([float(x)]))[0])


def whittaker_W(kappa: float, mu: float, x: float) -> float:
    """Whittaker W_{kappa,mu}(x) for x > 0.

    Uses the mu -> -mu symmetry to maximize the U parameter before
    delegating to hyperu.
    """
    if not x > 0.0:
        raise DomainError(f"whittaker_W requires x > 0, got {x!r}")
    mu_eff = abs(float(mu))
    kappa = float(kappa)
    if abs(kappa) + mu_eff > 30.0:
        raise ValidationError(
            f"whittaker_W supports |kappa| + |mu| <= 30, got kappa={kappa}, mu={mu}"
        )
    a_u = mu_eff - kappa + 0.5
    b_u = 1.0 + 2.0 * mu_eff
    u = hyperu(a_u, b_u, x)
    return math.exp(-0.5 * x + (mu_eff + 0.5) * math.log(x)) * u


def _f21_series_many(a: float, b: float, c: float, xs: np.ndarray) -> np.ndarray:
    va, vb = np.array([a, b]), np.array([c])
    values, _, _, status = kernels.hyper_sum_many(va, vb, xs, _SERIES_TOL, _MAX_TERMS, 0)
    if np.any(status == 2):
        raise SeriesOverflowError(f"2F1({a},{b};{c};...) overflows double range")
    if np.any(status == 1):
        bad = xs[np.asarray(status) == 1]
        raise ConvergenceError(f"2F1({a},{b};{c};x) series did not converge at x={bad[:3]}")
    return values


def _gamma_ratio(num: tuple[float, ...], den: tuple[float, ...]) -> float:
    """prod Gamma(num) / prod Gamma(den), 0 when a denominator Gamma poles."""
    sign = 1.0
    ln = 0.0
    for v in num:
        s = gammasgn(v)
        if s == 0.0:
            raise DomainError(f"Gamma pole at {v!r} in numerator")
        sign *= s
        ln += gammaln(v)
    for v in den:
        s = gammasgn(v)
        if s == 0.0:
            return 0.0
        sign *= s
        ln -= gammaln(v)
    return sign * math.exp(ln)


def _is_nonpositive_integer(v: float, tol: float = 1e-12) -> bool:
    return v <= tol and abs(v - round(v)) < tol


def gauss_2F1_many(a: float, b: float, c: float, xs: np.ndarray) -> np.ndarray:
    """2F1(a, b; c; x) elementwise on |x| < 1."""
    a, b, c = float(a), float(b), float(c)
    if _is_nonpositive_integer(c):
        raise DomainError(f"2F1 undefined for c a nonpositive integer, got c={c!r}")
    xs = np.asarray(xs, dtype=np.float64)
    if xs.size and not np.all(np.abs(xs) < 1.0):
        raise DomainError("2F1 series evaluation requires |x| < 1")
    out = np.empty_like(xs)

    # terminating series sum exactly regardless of where x sits
    if _is_nonpositive_integer(a) or _is_nonpositive_integer(b):
        return _f21_series_many(a, b, c, xs)

    direct = np.abs(xs) <= 0.75
    pfaff = xs < -0.75
    near1 = xs > 0.75
    if direct.any():
        out[direct] = _f21_series_many(a, b, c, xs[direct])
    if pfaff.any():
        # keeps the series argument in (0, 0.43]
        u = xs[pfaff] / (xs[pfaff] - 1.0)
        out[pfaff] = (1.0 - xs[pfaff]) ** (-a) * _f21_series_many(a, c - b, c, u)
    if near1.any():
        s = c - a - b
        u = 1.0 - xs[near1]
        if abs(s - round(s)) < 1e-9:
            # logarithmic case: fall back to the plain series (slow but convergent)
            out[near1] = _f21_series_many(a, b, c, xs[near1])
        else:
            coef1 = _gamma_ratio((c, s), (c - a, c - b))
            coef2 = _gamma_ratio((c, -s), (a, b))
            f1 = _f21_series_many(a, b, 1.0 - s, u) if coef1 != 0.0 else 0.0
            f2 = _f21_series_many(c - a, c - b, 1.0 + s, u) if coef2 != 0.0 else 0.0
            out[near1] = coef1 * f1 + coef2 * np.power(u, s) * f2
    return out


def gauss_2F1(a: float, b: float, c: float, x: float) -> float:
    return float(gauss_2F1_many(a, b, c, np.array([float(x)]))[0])
