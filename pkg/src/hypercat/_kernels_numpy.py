"""Pure-numpy implementations of the hot kernels.

Twin of _kernels_numba: same call signatures, same status conventions, so
the backend module can swap one for the other. Status codes returned by
the series kernels: 0 converged, 1 term cap hit, 2 float overflow.

The semi-infinite integrals are evaluated on analysis-driven panel grids
(fixed Gauss-Legendre panels dense enough for ~1e-12 relative accuracy
over the supported parameter envelope; see the tests for the empirical
verification against scipy/mpmath).
"""

from __future__ import annotations

import math

import numpy as np

_LOG2 = math.log(2.0)
_TAIL_LOG = 46.0  # e^-46 ~ 1e-20 relative truncation of integrands
_PANEL_W = 0.25  # Bessel panel width in t


def _series_step_coeff(a, b, m, mode):
    """Scalar term ratio coefficient at step m (x factor excluded)."""
    if mode == 0:
        num = np.prod(a + m)
        den = np.prod(b + m) * (m + 1.0)
    elif mode == 1:
        num = np.prod((a + 2 * m) * (a + 2 * m + 1.0))
        den = np.prod((b + 2 * m) * (b + 2 * m + 1.0)) * (2 * m + 1.0) * (2 * m + 2.0)
    else:
        num = np.prod((a + 2 * m + 1.0) * (a + 2 * m + 2.0))
        den = np.prod((b + 2 * m + 1.0) * (b + 2 * m + 2.0)) * (2 * m + 2.0) * (2 * m + 3.0)
    return num / den


def hyper_sum_many(a, b, xs, tol, max_terms, mode):
    """Sum the full/even/odd hypergeometric series at every x in xs.

    mode 0 sums all terms of the pFq series, mode 1 the even-index part
    (x^{2m}/(2m)! terms), mode 2 the odd-index part. Terms are built by
    the adjacent-term recurrence; the run stops once three consecutive
    terms fall below tol*max(1, |partial sum|).
    """
    xs = np.asarray(xs, dtype=np.float64)
    n = xs.size
    if mode == 2:
        term = xs * (np.prod(a) / np.prod(b))
    else:
        term = np.ones(n)
    total = term.copy()
    values = np.zeros(n)
    errs = np.zeros(n)
    terms_used = np.full(n, 1, dtype=np.int64)
    status = np.full(n, 1, dtype=np.int64)
    consec = np.zeros(n, dtype=np.int64)
    active = np.ones(n, dtype=bool)
    xfac = xs if mode == 0 else xs * xs

    for m in range(max_terms):
        coeff = _series_step_coeff(a, b, m, mode)
        ratio = coeff * xfac
        term = np.where(active, term * ratio, term)
        total = np.where(active, total + term, total)

        bad = active & ~np.isfinite(total)
        if bad.any():
            values[bad] = total[bad]
            errs[bad] = np.inf
            terms_used[bad] = m + 2
            status[bad] = 2
            active &= ~bad

        thresh = tol * np.maximum(1.0, np.abs(total))
        small = np.abs(term) < thresh
        consec = np.where(active & small, consec + 1, 0)
        done = active & (consec >= 3)
        if done.any():
            aratio = np.abs(ratio if np.ndim(ratio) else np.full(n, ratio))
            geo = np.where(
                aratio < 0.9,
                np.abs(term) * aratio / np.maximum(1.0 - aratio, 1e-300),
                thresh,
            )
            values[done] = total[done]
            errs[done] = np.minimum(geo, thresh)[done]
            terms_used[done] = m + 2
            status[done] = 0
            active &= ~done
        if not active.any():
            break

    if active.any():
        values[active] = total[active]
        errs[active] = np.abs(term[active])
        terms_used[active] = max_terms + 1
        status[active] = 1
    return values, errs, terms_used, status


def hyper_sum(a, b, x, tol, max_terms, mode):
    v, e, t, s = hyper_sum_many(a, b, np.array([x]), tol, max_terms, mode)
    return v[0], e[0], int(t[0]), int(s[0])


def _logcosh(u):
    au = np.abs(u)
    return au + np.log1p(np.exp(-2.0 * au)) - _LOG2


def _bessel_truncation(nu, xmin):
    """Peak location, normalizer and truncation point for the K integrand."""
    tpeak = math.asinh(nu / xmin) if nu > 0.0 else 0.0
    logf = lambda t: -xmin * math.cosh(t) + (
        abs(nu * t) + math.log1p(math.exp(-2.0 * abs(nu * t))) - _LOG2
    )
    m0 = max(-xmin, logf(tpeak))
    t_end = tpeak
    while logf(t_end) > m0 - _TAIL_LOG and t_end < tpeak + 80.0:
        t_end += _PANEL_W
    return tpeak, m0, t_end


def _panel_nodes(t_end, glx, glw):
    n_panels = max(int(math.ceil(t_end / _PANEL_W)), 2)
    edges = np.linspace(0.0, t_end, n_panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    hw = 0.5 * (edges[1:] - edges[:-1])
    t = (mid[:, None] + hw[:, None] * glx[None, :]).ravel()
    w = (hw[:, None] * glw[None, :]).ravel()
    return t, w


def bessel_k_many(nu, xs, glx, glw):
    """K_nu at an array of positive x via the cosh integral representation.

    Points are grouped into octaves so each group shares one panel grid
    sized for its smallest x (which needs the longest reach in t).
    """
    xs = np.asarray(xs, dtype=np.float64)
    out = np.empty_like(xs)
    nu = abs(nu)
    order = np.argsort(xs)
    sorted_x = xs[order]
    i = 0
    n = xs.size
    while i < n:
        x0 = sorted_x[i]
        j = i
        while j < n and sorted_x[j] <= 2.0 * x0:
            j += 1
        group = sorted_x[i:j]
        _, _, t_end = _bessel_truncation(nu, x0)
        t, w = _panel_nodes(t_end, glx, glw)
        lg = _logcosh(nu * t)
        # chunk rows to bound the temporary matrix
        for k0 in range(0, group.size, 256):
            gx = group[k0 : k0 + 256]
            e = -gx[:, None] * np.cosh(t)[None, :] + lg[None, :]
            m = e.max(axis=1)
            vals = np.exp(m) * (np.exp(e - m[:, None]) @ w)
            out[order[i + k0 : i + k0 + gx.size]] = vals
        i = j
    return out


def _hyperu_layout(a, c, x0):
    """Panel edges and truncation for int_0^inf e^{-xt} t^{a-1} (1+t)^c dt."""
    h0 = min(1.0, 1.0 / x0) / 8.0
    # coarse geometric scan for the integrand maximum and the decay point
    logf = lambda t: -x0 * t + (a - 1.0) * math.log(t) + c * math.log1p(t)
    tg = h0 / 4.0
    best = logf(tg)
    t_at = tg
    t = tg
    for _ in range(400):
        t *= 1.3
        v = logf(t)
        if v > best:
            best, t_at = v, t
        if v < best - _TAIL_LOG and t > t_at:
            break
    t_end = t
    edges = [0.0, h0]
    w = h0
    wcap = max(6.0 / x0, h0)
    while edges[-1] < t_end:
        w = min(w * 2.0, wcap)
        edges.append(min(edges[-1] + w, t_end))
    return np.asarray(edges), best


def hyperu_many(a, b, xs, glx, glw, jx, jw):
    """Gamma(a)*U(a, b, x) integrand summed at an array of positive x, a > 0.

    jx/jw is a Gauss-Jacobi rule with weight (1+s)^{a-1} absorbing the
    endpoint singularity of the first panel; remaining panels grow
    geometrically with Gauss-Legendre nodes. Returns U(a, b, x).
    """
    xs = np.asarray(xs, dtype=np.float64)
    c = b - a - 1.0
    out = np.empty_like(xs)
    order = np.argsort(xs)
    sorted_x = xs[order]
    i = 0
    n = xs.size
    lga = math.lgamma(a)
    while i < n:
        x0 = sorted_x[i]
        j = i
        while j < n and sorted_x[j] <= 2.0 * x0:
            j += 1
        group = sorted_x[i:j]
        edges, _ = _hyperu_layout(a, c, x0)
        h0 = edges[1]
        # first panel: absorb t^{a-1}
        t1 = h0 * 0.5 * (1.0 + jx)
        w1 = jw * (h0 * 0.5) ** a
        g1 = np.power(1.0 + t1, c)
        # remaining panels: plain Gauss-Legendre
        mid = 0.5 * (edges[2:] + edges[1:-1])
        hw = 0.5 * (edges[2:] - edges[1:-1])
        t2 = (mid[:, None] + hw[:, None] * glx[None, :]).ravel()
        w2 = (hw[:, None] * glw[None, :]).ravel()
        g2 = np.exp((a - 1.0) * np.log(t2) + c * np.log1p(t2))
        for k0 in range(0, group.size, 256):
            gx = group[k0 : k0 + 256]
            part1 = np.exp(-gx[:, None] * t1[None, :]) * g1[None, :] @ w1
            part2 = np.exp(-gx[:, None] * t2[None, :]) * g2[None, :] @ w2
            out[order[i + k0 : i + k0 + gx.size]] = (part1 + part2) * math.exp(-lga)
        i = j
    return out


def searchsorted_right_many(cdf, us):
    """Index of the first cdf entry strictly greater than each u."""
    return np.searchsorted(cdf, us, side="right").astype(np.int64)
