"""Numba-jitted implementations of the hot kernels.

Twin of _kernels_numpy (same signatures, same status codes). Everything
here is nopython-compiled scalar-loop code; compilation results are
cached on disk so only the first call in a fresh checkout pays the
compile cost.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

_LOG2 = math.log(2.0)
_TAIL_LOG = 46.0
_PANEL_W = 0.25


@njit(cache=True)
def hyper_sum(a, b, x, tol, max_terms, mode):
    p = a.size
    q = b.size
    if mode == 2:
        term = x
        for i in range(p):
            term *= a[i]
        for j in range(q):
            term /= b[j]
    else:
        term = 1.0
    total = term
    terms_used = 1
    consec = 0
    for m in range(max_terms):
        if mode == 0:
            num = x
            den = m + 1.0
            for i in range(p):
                num *= a[i] + m
            for j in range(q):
                den *= b[j] + m
        elif mode == 1:
            num = x * x
            den = (2.0 * m + 1.0) * (2.0 * m + 2.0)
            for i in range(p):
                num *= (a[i] + 2.0 * m) * (a[i] + 2.0 * m + 1.0)
            for j in range(q):
                den *= (b[j] + 2.0 * m) * (b[j] + 2.0 * m + 1.0)
        else:
            num = x * x
            den = (2.0 * m + 2.0) * (2.0 * m + 3.0)
            for i in range(p):
                num *= (a[i] + 2.0 * m + 1.0) * (a[i] + 2.0 * m + 2.0)
            for j in range(q):
                den *= (b[j] + 2.0 * m + 1.0) * (b[j] + 2.0 * m + 2.0)
        ratio = num / den
        term = term * ratio
        total = total + term
        terms_used += 1
        if not math.isfinite(total):
            return total, math.inf, terms_used, 2
        thresh = tol * max(1.0, abs(total))
        if abs(term) < thresh:
            consec += 1
            if consec >= 3:
                aratio = abs(ratio)
                if aratio < 0.9:
                    est = abs(term) * aratio / max(1.0 - aratio, 1e-300)
                else:
                    est = thresh
                if est > thresh:
                    est = thresh
                return total, est, terms_used, 0
        else:
            consec = 0
    return total, abs(term), max_terms + 1, 1


@njit(cache=True)
def hyper_sum_many(a, b, xs, tol, max_terms, mode):
    n = xs.size
    values = np.empty(n)
    errs = np.empty(n)
    terms_used = np.empty(n, dtype=np.int64)
    status = np.empty(n, dtype=np.int64)
    for k in range(n):
        v, e, t, s = hyper_sum(a, b, xs[k], tol, max_terms, mode)
        values[k] = v
        errs[k] = e
        terms_used[k] = t
        status[k] = s
    return values, errs, terms_used, status


@njit(cache=True)
def _logcosh(u):
    au = abs(u)
    return au + math.log1p(math.exp(-2.0 * au)) - _LOG2


@njit(cache=True)
def _bessel_logf(nu, x, t):
    return -x * math.cosh(t) + _logcosh(nu * t)


@njit(cache=True)
def bessel_k_scalar(nu, x, glx, glw):
    nu = abs(nu)
    tpeak = math.asinh(nu / x) if nu > 0.0 else 0.0
    m0 = _bessel_logf(nu, x, tpeak)
    if -x > m0:
        m0 = -x
    t_end = tpeak
    while _bessel_logf(nu, x, t_end) > m0 - _TAIL_LOG and t_end < tpeak + 80.0:
        t_end += _PANEL_W
    n_panels = int(math.ceil(t_end / _PANEL_W))
    if n_panels < 2:
        n_panels = 2
    h = t_end / n_panels
    ng = glx.size
    total = 0.0
    for k in range(n_panels):
        mid = (k + 0.5) * h
        hw = 0.5 * h
        for i in range(ng):
            t = mid + hw * glx[i]
            total += glw[i] * hw * math.exp(_bessel_logf(nu, x, t) - m0)
    return math.exp(m0) * total


@njit(cache=True)
def bessel_k_many(nu, xs, glx, glw):
    n = xs.size
    out = np.empty(n)
    for k in range(n):
        out[k] = bessel_k_scalar(nu, xs[k], glx, glw)
    return out


@njit(cache=True)
def hyperu_scalar(a, b, x, glx, glw, jx, jw):
    c = b - a - 1.0
    h0 = min(1.0, 1.0 / x) / 8.0
    tg = h0 / 4.0
    best = -x * tg + (a - 1.0) * math.log(tg) + c * math.log1p(tg)
    t_at = tg
    t = tg
    t_end = tg
    for _ in range(400):
        t *= 1.3
        v = -x * t + (a - 1.0) * math.log(t) + c * math.log1p(t)
        if v > best:
            best = v
            t_at = t
        t_end = t
        if v < best - _TAIL_LOG and t > t_at:
            break
    acc = 0.0
    scale = (0.5 * h0) ** a
    for i in range(jx.size):
        t1 = h0 * 0.5 * (1.0 + jx[i])
        acc += jw[i] * scale * math.exp(c * math.log1p(t1) - x * t1)
    lo = h0
    w = h0
    wcap = 6.0 / x
    if wcap < h0:
        wcap = h0
    while lo < t_end:
        w = min(w * 2.0, wcap)
        hi = min(lo + w, t_end)
        mid = 0.5 * (lo + hi)
        hw = 0.5 * (hi - lo)
        for i in range(glx.size):
            tt = mid + hw * glx[i]
            acc += glw[i] * hw * math.exp(
                -x * tt + (a - 1.0) * math.log(tt) + c * math.log1p(tt)
            )
        lo = hi
    return acc * math.exp(-math.lgamma(a))


@njit(cache=True)
def hyperu_many(a, b, xs, glx, glw, jx, jw):
    n = xs.size
    out = np.empty(n)
    for k in range(n):
        out[k] = hyperu_scalar(a, b, xs[k], glx, glw, jx, jw)
    return out


@njit(cache=True)
def searchsorted_right_many(cdf, us):
    n = us.size
    m = cdf.size
    out = np.empty(n, dtype=np.int64)
    for k in range(n):
        lo = 0
        hi = m
        u = us[k]
        while lo < hi:
            mid = (lo + hi) // 2
            if u < cdf[mid]:
                hi = mid
            else:
                lo = mid + 1
        out[k] = lo
    return out
