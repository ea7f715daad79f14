"""Hypergeometric coherent states as normalized Fock-coefficient sequences.

A full state has amplitudes c_n = z^n / sqrt(rho(n) * F(x)) with
x = |z|^2; the even/odd variants keep only even/odd Fock levels and
normalize with the even/odd part of the series instead.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SeriesOverflowError, ValidationError
from .params import ParamSet, convergence_domain, validate_params
from .series import (
    DEFAULT_TOL,
    SeriesResult,
    hyper_even_pCq,
    hyper_odd_pSq,
    hyper_pFq,
)

__all__ = [
    "Parity",
    "StateSpec",
    "FockAmplitudes",
    "rho",
    "ln_rho",
    "fock_amplitudes",
    "photon_distribution",
    "overlap",
    "annihilate",
    "validate_params",
]

_LOG_MAX = math.log(np.finfo(np.float64).max)
_DEFAULT_NMAX_CAP = 5_000
_SELECT_EPS = 1e-16


class Parity(enum.Enum):
    FULL = "full"
    EVEN = "even"
    ODD = "odd"


@dataclass(frozen=True)
class StateSpec:
    """A state label: parameter set, parity sector and complex amplitude z."""

    params: ParamSet
    parity: Parity
    z: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "z", complex(self.z))
        x = self.x
        if not convergence_domain(self.params).contains(x):
            raise DomainError(
                f"|z|^2 = {x} outside the convergence domain of params {self.params}"
            )
        if self.parity is Parity.ODD and self.z == 0:
            raise ValidationError(
                "odd states need z != 0: the odd-part normalizer vanishes at 0"
            )

    @property
    def x(self) -> float:
        return abs(self.z) ** 2

    def normalizer(self, tol: float = DEFAULT_TOL) -> SeriesResult:
        """The parity-appropriate normalization series at x = |z|^2."""
        if self.parity is Parity.FULL:
            return hyper_pFq(self.params, self.x, tol)
        if self.parity is Parity.EVEN:
            return hyper_even_pCq(self.params, self.x, tol)
        return hyper_odd_pSq(self.params, self.x, tol)


@dataclass(frozen=True)
class FockAmplitudes:
    """Truncated amplitude vector with a certified missing-mass bound."""

    n_max: int
    amplitudes: np.ndarray
    tail_mass_bound: float

    def __post_init__(self) -> None:
        self.amplitudes.flags.writeable = False

    def squared_mass(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


def ln_rho(params: ParamSet, n: int) -> float:
    """ln of rho(n) = n! * prod (b)_n / prod (a)_n."""
    if n < 0:
        raise DomainError(f"rho requires n >= 0, got {n!r}")
    s = math.lgamma(n + 1)
    for b in params.b_list:
        s += math.lgamma(b + n) - math.lgamma(b)
    for a in params.a_list:
        s -= math.lgamma(a + n) - math.lgamma(a)
    return s


def rho(params: ParamSet, n: int) -> float:
    """The positive parameter function rho(n), exponentiated from log domain."""
    lr = ln_rho(params, n)
    if lr > _LOG_MAX:
        raise SeriesOverflowError(
            f"rho({params}; n={n}) exceeds the double range (ln rho = {lr:.1f})"
        )
    return math.exp(lr)


def _support_levels(parity: Parity, n_max: int) -> range:
    if parity is Parity.FULL:
        return range(0, n_max + 1)
    if parity is Parity.EVEN:
        return range(0, n_max + 1, 2)
    return range(1, n_max + 1, 2)


def _default_n_max(state: StateSpec) -> int:
    """Smallest cutoff whose next rho-weighted term is < 1e-16 of the partial sum."""
    x = state.x
    if x == 0.0:
        return 0
    lx = math.log(x)
    partial = 0.0
    last = 0
    for n in _support_levels(state.parity, _DEFAULT_NMAX_CAP):
        t = math.exp(n * lx - ln_rho(state.params, n))
        if partial > 0.0 and t < _SELECT_EPS * partial:
            return last
        partial += t
        last = n
    return _DEFAULT_NMAX_CAP


def fock_amplitudes(state: StateSpec, n_max: int | None = None) -> FockAmplitudes:
    """Amplitudes c_n for n = 0..n_max plus the certified tail mass.

    Phases are applied in polar form, so c_n = |z|^n e^{i n arg z} / sqrt(...)
    exactly; off-parity entries are exact zeros.
    """
    if n_max is None:
        n_max = _default_n_max(state)
    if n_max < 0:
        raise ValidationError(f"n_max must be >= 0, got {n_max!r}")
    norm = state.normalizer().value
    ln_norm = math.log(norm)
    r = abs(state.z)
    theta = cmath.phase(state.z)
    amplitudes = np.zeros(n_max + 1, dtype=np.complex128)
    if r == 0.0:
        if state.parity is not Parity.ODD:
            amplitudes[0] = 1.0
        return FockAmplitudes(n_max=n_max, amplitudes=amplitudes, tail_mass_bound=1e-15)
    lr = math.log(r)
    for n in _support_levels(state.parity, n_max):
        mag = math.exp(n * lr - 0.5 * ln_rho(state.params, n) - 0.5 * ln_norm)
        amplitudes[n] = mag * cmath.exp(1j * n * theta)
    ssum = float(np.sum(np.abs(amplitudes) ** 2))
    if ssum > 1.0:
        amplitudes /= math.sqrt(ssum)
        ssum = 1.0
    tail = max(0.0, 1.0 - ssum) + 1e-15
    return FockAmplitudes(n_max=n_max, amplitudes=amplitudes, tail_mass_bound=tail)


def photon_distribution(state: StateSpec, n: int) -> float:
    """Probability of finding exactly n quanta; 0 at off-parity Fock levels."""
    if n < 0:
        raise DomainError(f"Fock level must be >= 0, got {n!r}")
    if state.parity is Parity.EVEN and n % 2 == 1:
        return 0.0
    if state.parity is Parity.ODD and n % 2 == 0:
        return 0.0
    x = state.x
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    norm = state.normalizer().value
    return math.exp(n * math.log(x) - ln_rho(state.params, n)) / norm


def overlap(s1: StateSpec, s2: StateSpec, n_max: int | None = None) -> complex:
    """<s1|s2> summed over the truncated Fock expansion."""
    if s1.params != s2.params:
        raise ValidationError(
            f"overlap requires matching params, got {s1.params} vs {s2.params}"
        )
    if n_max is None:
        n_max = max(_default_n_max(s1), _default_n_max(s2))
    c1 = fock_amplitudes(s1, n_max).amplitudes
    c2 = fock_amplitudes(s2, n_max).amplitudes
    return complex(np.vdot(c1, c2))


def annihilate(state: StateSpec) -> tuple[complex, StateSpec | None]:
    """Action of the lowering operator on a parity state.

    Returns (prefactor, image) with image the opposite-parity state on
    the +1-shifted parameter set, so lowering(state) = prefactor * image
    coefficientwise. The even state at z = 0 is the vacuum, which maps to
    the zero vector: prefactor 0 and image None.
    """
    if state.parity is Parity.FULL:
        raise ValidationError("annihilate is defined on even/odd states only")
    x = state.x
    shifted = state.params.shifted(1.0)
    ab_ratio = 1.0
    for a in state.params.a_list:
        ab_ratio *= a
    for b in state.params.b_list:
        ab_ratio /= b
    if state.parity is Parity.EVEN:
        if state.z == 0:
            return 0j, None
        num = hyper_odd_pSq(shifted, x).value
        den = hyper_even_pCq(state.params, x).value
        image = StateSpec(shifted, Parity.ODD, state.z)
    else:
        num = hyper_even_pCq(shifted, x).value
        den = hyper_odd_pSq(state.params, x).value
        image = StateSpec(shifted, Parity.EVEN, state.z)
    prefactor = state.z * math.sqrt(ab_ratio) * math.sqrt(num / den)
    return complex(prefactor), image
