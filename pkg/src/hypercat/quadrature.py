"""Adaptive panel quadrature over finite and semi-infinite supports.

Panels carry a two-rule (Gauss 15/30) error estimate and are bisected
worst-first. A panel touching a singular right endpoint can absorb a
(1-x)^alpha factor into a Gauss-Jacobi rule instead; semi-infinite
integrals go through the x = tan^2(theta) substitution, which also
regularizes sqrt(x)-type behaviour at the origin.
"""

from __future__ import annotations

import heapq
import math
from typing import Callable

import numpy as np
from scipy.special import roots_legendre

from ._rules import jacobi_rule
from .errors import ConvergenceError

__all__ = ["adaptive_quadrature", "integrate_semi_infinite"]

MAX_PANELS = 2_000

_gl_lo = roots_legendre(15)
_gl_hi = roots_legendre(30)
_JAC_LO, _JAC_HI = 15, 30


def _gl_value(f, lo, hi, rule) -> float:
    xg, wg = rule
    mid = 0.5 * (lo + hi)
    hw = 0.5 * (hi - lo)
    return hw * float(np.dot(wg, f(mid + hw * xg)))


def _jacobi_value(f, lo, hi, alpha, order) -> float:
    # integral of f(x) (hi-x)^alpha with the singular factor in the rule
    xg, wg = jacobi_rule(order, alpha, 0.0)
    h = 0.5 * (hi - lo)
    x = hi - (1.0 - xg) * h
    return h ** (alpha + 1.0) * float(np.dot(wg, f(x)))


def adaptive_quadrature(
    f: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    tol: float,
    alpha_at_hi: float | None = None,
    max_panels: int = MAX_PANELS,
) -> tuple[float, float]:
    """Integrate vectorized f over [lo, hi] to relative tolerance tol.

    With alpha_at_hi set, the true integrand is f(x) * (hi-x)^alpha_at_hi
    and the singular factor is absorbed by Gauss-Jacobi nodes on whichever
    panel touches hi. Returns (value, error_estimate); raises
    ConvergenceError with the achieved error attached if the panel budget
    runs out.
    """

    if alpha_at_hi is None:
        g = f
    else:
        # interior panels see the full integrand; only the panel touching
        # hi hands the singular factor to the Jacobi rule
        def g(x):
            return f(x) * np.power(hi - x, alpha_at_hi)

    def eval_panel(plo, phi):
        if alpha_at_hi is not None and phi == hi:
            v_lo = _jacobi_value(f, plo, phi, alpha_at_hi, _JAC_LO)
            v_hi = _jacobi_value(f, plo, phi, alpha_at_hi, _JAC_HI)
        else:
            v_lo = _gl_value(g, plo, phi, _gl_lo)
            v_hi = _gl_value(g, plo, phi, _gl_hi)
        return v_hi, abs(v_hi - v_lo)

    value, err = eval_panel(lo, hi)
    heap: list[tuple[float, int, float, float, float, float]] = []
    counter = 0
    heapq.heappush(heap, (-err, counter, lo, hi, value, err))
    total_v, total_e = value, err
    n_panels = 1
    while total_e > tol * max(abs(total_v), 1e-300) and n_panels < max_panels:
        neg_e, _, plo, phi, pv, pe = heapq.heappop(heap)
        if phi - plo <= 16 * math.ulp(max(abs(plo), abs(phi))):
            # cannot split further; keep the panel as is
            heapq.heappush(heap, (0.0, counter + 1, plo, phi, pv, pe))
            counter += 1
            if all(entry[0] == 0.0 for entry in heap):
                break
            continue
        mid = 0.5 * (plo + phi)
        lv, le = eval_panel(plo, mid)
        rv, re = eval_panel(mid, phi)
        total_v += lv + rv - pv
        total_e += le + re - pe
        counter += 1
        heapq.heappush(heap, (-le, counter, plo, mid, lv, le))
        counter += 1
        heapq.heappush(heap, (-re, counter, mid, phi, rv, re))
        n_panels += 1
    if total_e > tol * max(abs(total_v), 1e-300):
        raise ConvergenceError(
            f"quadrature stalled at {n_panels} panels: value {total_v!r}, "
            f"error estimate {total_e!r} above tol {tol!r}"
        )
    return total_v, total_e


def integrate_semi_infinite(
    f: Callable[[np.ndarray], np.ndarray],
    tol: float,
    max_panels: int = MAX_PANELS,
) -> tuple[float, float]:
    """Integrate vectorized f over [0, inf) via x = tan^2(theta)."""

    def g(theta: np.ndarray) -> np.ndarray:
        t = np.tan(theta)
        return f(t * t) * 2.0 * t * (1.0 + t * t)

    return adaptive_quadrature(g, 0.0, 0.5 * math.pi, tol, max_panels=max_panels)
