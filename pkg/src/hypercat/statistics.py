"""Photon statistics of the parity states and thermal-oscillator moments.

Normal-ordered expectations <(a+)^s a^r> come from Fock-space sums; the
number-operator moments and the Mandel parameter use the shifted-series
closed forms, cross-validated against the definition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .backend import kernels
from .errors import ConvergenceError, DegenerateStateError, ValidationError
from .params import ParamSet
from .series import MAX_TERMS, hyper_even_pCq, hyper_odd_pSq, ln_pochhammer
from .states import Parity, StateSpec, ln_rho

__all__ = [
    "MandelResult",
    "ThermalSpec",
    "expect_adagS_aR",
    "factorial_moment",
    "expect_N",
    "expect_N2",
    "mandel_Q",
    "sample_photon_counts",
    "photon_count_summary",
    "thermal_partition",
    "thermal_normal_moment",
    "thermal_factorial_moment_direct",
]

_SAMPLER_TAIL = 1e-12
_SAMPLER_CAP = 50_000
_CROSSCHECK_TOL = 1e-9


@dataclass(frozen=True)
class MandelResult:
    """Mandel Q with the moments it was built from.

    q_value carries the reduced two-term form; it agrees with
    (mean_n2 - mean_n^2)/mean_n - 1 to 1e-9 by construction (larger
    disagreement raises instead of being reconciled).
    """

    q_value: float
    mean_n: float
    mean_n2: float
    x: float


@dataclass(frozen=True)
class ThermalSpec:
    """Inverse temperature and oscillator energy (hbar = 1)."""

    beta: float
    omega: float

    def __post_init__(self) -> None:
        if not (self.beta > 0.0 and self.omega > 0.0):
            raise ValidationError(
                f"ThermalSpec requires beta > 0 and omega > 0, got {self.beta}, {self.omega}"
            )

    @property
    def bw(self) -> float:
        return self.beta * self.omega


def _require_parity(state: StateSpec, what: str) -> None:
    if state.parity is Parity.FULL:
        raise ValidationError(f"{what} is defined on even/odd states only")


def _ab_product_ratio(params: ParamSet, r: int) -> float:
    """prod (a_i)_r / prod (b_j)_r in log domain (parameters positive)."""
    s = 0.0
    for a in params.a_list:
        s += ln_pochhammer(a, r)
    for b in params.b_list:
        s -= ln_pochhammer(b, r)
    return math.exp(s)


def factorial_moment(state: StateSpec, r: int) -> float:
    """<(a+)^r a^r> from the r-shifted series closed form."""
    _require_parity(state, "factorial_moment")
    if r < 0:
        raise ValidationError(f"r must be >= 0, got {r!r}")
    if r == 0:
        return 1.0
    x = state.x
    if x == 0.0:
        return 0.0
    shifted = state.params.shifted(float(r))
    num_even_kind = (r % 2 == 0) == (state.parity is Parity.EVEN)
    num = (hyper_even_pCq if num_even_kind else hyper_odd_pSq)(shifted, x).value
    den = state.normalizer().value
    return x**r * _ab_product_ratio(state.params, r) * num / den


def expect_N(state: StateSpec) -> float:
    """Mean photon number of an even/odd state."""
    return factorial_moment(state, 1)


def expect_N2(state: StateSpec) -> float:
    """<N^2> via N^2 = (a+)^2 a^2 + N."""
    return factorial_moment(state, 2) + factorial_moment(state, 1)


def expect_adagS_aR(state: StateSpec, s: int, r: int) -> complex:
    """<(a+)^s a^r> on a parity state.

    Zero whenever s + r is odd (the operator flips parity); otherwise the
    Fock sum z̄^s z^r * sum_n sqrt(n! (n+s-r)!) / (n-r)! * x^{n-r}
    / sqrt(rho(n) rho(n+s-r)) over supported n >= r, over the normalizer.
    """
    _require_parity(state, "expect_adagS_aR")
    if s < 0 or r < 0:
        raise ValidationError(f"s, r must be >= 0, got s={s!r}, r={r!r}")
    if s == 0 and r == 0:
        return 1.0 + 0j
    if (s + r) % 2 == 1:
        return 0j
    x = state.x
    if x == 0.0:
        return 0j
    lx = math.log(x)
    params = state.params
    start = r if (state.parity is Parity.EVEN) == (r % 2 == 0) else r + 1
    total = 0.0
    consec = 0
    n = start
    converged = False
    for _ in range(MAX_TERMS):
        lt = (
            0.5 * (math.lgamma(n + 1) + math.lgamma(n + s - r + 1))
            - math.lgamma(n - r + 1)
            - 0.5 * (ln_rho(params, n) + ln_rho(params, n + s - r))
            + (n - r) * lx
        )
        t = math.exp(lt)
        total += t
        if t < 1e-16 * max(1.0, total):
            consec += 1
            if consec >= 3:
                converged = True
                break
        else:
            consec = 0
        n += 2
    if not converged:
        raise ConvergenceError(
            f"expect_adagS_aR(s={s}, r={r}) did not converge within {MAX_TERMS} terms"
        )
    norm = state.normalizer().value
    phase = (state.z.conjugate() ** s) * (state.z**r)
    return phase * (total / norm)


def mandel_Q(state: StateSpec) -> MandelResult:
    """Mandel Q from the reduced two-term form, checked against the definition."""
    _require_parity(state, "mandel_Q")
    n_mean = expect_N(state)
    if n_mean <= 0.0:
        raise DegenerateStateError(
            "Mandel Q undefined at <N> = 0 (even state at z = 0); "
            "the x->0 limit is only exposed through scans at small x > 0"
        )
    n2_mean = expect_N2(state)
    x = state.x
    params = state.params
    plus1 = params.shifted(1.0)
    plus2 = params.shifted(2.0)
    ratio1 = 1.0
    for a in params.a_list:
        ratio1 *= a + 1.0
    for b in params.b_list:
        ratio1 /= b + 1.0
    ratio0 = 1.0
    for a in params.a_list:
        ratio0 *= a
    for b in params.b_list:
        ratio0 /= b
    if state.parity is Parity.EVEN:
        term1 = ratio1 * hyper_even_pCq(plus2, x).value / hyper_odd_pSq(plus1, x).value
        term2 = ratio0 * hyper_odd_pSq(plus1, x).value / hyper_even_pCq(params, x).value
    else:
        term1 = ratio1 * hyper_odd_pSq(plus2, x).value / hyper_even_pCq(plus1, x).value
        term2 = ratio0 * hyper_even_pCq(plus1, x).value / hyper_odd_pSq(params, x).value
    q_reduced = x * (term1 - term2)
    q_def = (n2_mean - n_mean**2) / n_mean - 1.0
    if abs(q_reduced - q_def) > _CROSSCHECK_TOL * max(1.0, abs(q_def)):
        raise ArithmeticError(
            f"Mandel cross-validation failed: reduced {q_reduced!r} vs definition {q_def!r}"
        )
    return MandelResult(q_value=q_reduced, mean_n=n_mean, mean_n2=n2_mean, x=x)


def _truncated_pmf(state: StateSpec) -> tuple[np.ndarray, np.ndarray]:
    """Support levels and normalized pmf with tail mass below 1e-12."""
    x = state.x
    norm = state.normalizer().value
    levels: list[int] = []
    probs: list[float] = []
    csum = 0.0
    if state.parity is Parity.EVEN or state.parity is Parity.FULL:
        n = 0
    else:
        n = 1
    step = 1 if state.parity is Parity.FULL else 2
    lx = math.log(x) if x > 0.0 else None
    while n <= _SAMPLER_CAP:
        if lx is None:
            p = 1.0 if n == 0 else 0.0
        else:
            p = math.exp(n * lx - ln_rho(state.params, n)) / norm
        levels.append(n)
        probs.append(p)
        csum += p
        if 1.0 - csum < _SAMPLER_TAIL:
            return np.asarray(levels, dtype=np.int64), np.asarray(probs)
        n += step
    raise ConvergenceError(
        f"photon distribution tail bound {_SAMPLER_TAIL} unreachable within {_SAMPLER_CAP} levels"
    )


def sample_photon_counts(state: StateSpec, n_samples: int, seed: int) -> np.ndarray:
    """i.i.d. photon-count draws by inverse CDF on the truncated distribution.

    Deterministic for a fixed seed; the truncated pmf is renormalized, so
    the sampling bias is bounded by the 1e-12 tail mass.
    """
    if n_samples < 1:
        raise ValidationError(f"n_samples must be >= 1, got {n_samples!r}")
    levels, probs = _truncated_pmf(state)
    cdf = np.cumsum(probs)
    cdf /= cdf[-1]
    rng = np.random.default_rng(seed)
    us = rng.random(n_samples)
    idx = kernels.searchsorted_right_many(cdf, us)
    np.clip(idx, 0, levels.size - 1, out=idx)
    return levels[idx]


def photon_count_summary(samples: np.ndarray, parity: Parity | None = None) -> dict:
    """Empirical mean, variance, Mandel Q and their standard errors.

    The Q standard error comes from the delta method on (mean, variance)
    using central moments up to order four.
    """
    s = np.asarray(samples, dtype=np.float64)
    n = s.size
    mean = float(s.mean())
    d = s - mean
    m2 = float(np.mean(d**2))
    m3 = float(np.mean(d**3))
    m4 = float(np.mean(d**4))
    q = m2 / mean - 1.0 if mean > 0 else math.nan
    se_mean = math.sqrt(m2 / n)
    if mean > 0:
        var_q = (
            (m4 - m2**2) / mean**2
            + m2 * (m2 / mean**2) ** 2
            - 2.0 * (m2 / mean**3) * m3
        ) / n
        se_q = math.sqrt(max(var_q, 0.0))
    else:
        se_q = math.nan
    out = {
        "n_samples": int(n),
        "mean": mean,
        "variance": m2,
        "q_empirical": q,
        "se_mean": se_mean,
        "se_q": se_q,
    }
    if parity is Parity.EVEN:
        out["parity_violations"] = int(np.count_nonzero(samples % 2 == 1))
    elif parity is Parity.ODD:
        out["parity_violations"] = int(np.count_nonzero(samples % 2 == 0))
    return out


def thermal_partition(t: ThermalSpec) -> float:
    """Partition function 1/(1 - e^{-beta omega}) of the number Hamiltonian."""
    return 1.0 / -math.expm1(-t.bw)


def thermal_normal_moment(t: ThermalSpec, r: int) -> float:
    """Thermal <(a+)^r a^r> = (1-u) u^r d^r/du^r (1-u)^{-1} with u = e^{-bw}.

    The derivative is carried as the exact recurrence coefficient
    c_k = k * c_{k-1} on (1-u)^{-(k+1)}, collapsing to c_r * nbar^r with
    nbar = u/(1-u); r = 1 reproduces the mean occupation 1/(e^{bw}-1).
    """
    if r < 0:
        raise ValidationError(f"r must be >= 0, got {r!r}")
    u = math.exp(-t.bw)
    coeff = 1.0
    for k in range(1, r + 1):
        coeff *= k
    nbar = u / (1.0 - u)
    return coeff * nbar**r


def thermal_factorial_moment_direct(t: ThermalSpec, r: int) -> float:
    """Oracle-grade direct sum of n!/(n-r)! over the geometric distribution."""
    if r < 0:
        raise ValidationError(f"r must be >= 0, got {r!r}")
    u = math.exp(-t.bw)
    term = math.exp(math.lgamma(r + 1)) * u**r
    total = term
    n = r
    while term > 1e-18 * total or n < r + 8:
        n += 1
        term *= u * n / (n - r)
        total += term
        if n > 10_000_000:
            break
    return (1.0 - u) * total
