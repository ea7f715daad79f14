"""Parameter sets for the hypergeometric family and their convergence domains."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ValidationError

__all__ = [
    "ParamSet",
    "ConvergenceKind",
    "ConvergenceDomain",
    "convergence_domain",
    "validate_params",
]


@dataclass(frozen=True)
class ParamSet:
    """Numerator list (a_1..a_p) and denominator list (b_1..b_q).

    All entries must be strictly positive reals; this guarantees the
    coefficient ratio (b_1+n)...(b_q+n)/[(a_1+n)...(a_p+n)] stays positive
    for every n >= 0, so every series in the family has positive
    coefficients and the log-domain accumulation used downstream is
    sign-free.
    """

    a_list: tuple[float, ...]
    b_list: tuple[float, ...]

    def __init__(self, a_list: Iterable[float] = (), b_list: Iterable[float] = ()):
        object.__setattr__(self, "a_list", tuple(float(a) for a in a_list))
        object.__setattr__(self, "b_list", tuple(float(b) for b in b_list))
        for name, entries in (("a", self.a_list), ("b", self.b_list)):
            for i, v in enumerate(entries):
                if not math.isfinite(v) or v <= 0.0:
                    raise ValidationError(
                        f"parameter {name}[{i}] = {v!r} violates strict positivity"
                    )

    @property
    def p(self) -> int:
        return len(self.a_list)

    @property
    def q(self) -> int:
        return len(self.b_list)

    def shifted(self, delta: float) -> "ParamSet":
        """All parameters shifted by +delta (the a+r, b+r sets of the moment formulas)."""
        return ParamSet([a + delta for a in self.a_list], [b + delta for b in self.b_list])

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.asarray(self.a_list, dtype=np.float64),
            np.asarray(self.b_list, dtype=np.float64),
        )

    def __str__(self) -> str:
        a = ",".join(repr(v) for v in self.a_list)
        b = ",".join(repr(v) for v in self.b_list)
        return f"{a}/{b}"


def validate_params(params: ParamSet | Sequence[Iterable[float]]) -> ParamSet:
    """Return a validated ParamSet, accepting (a_list, b_list) pairs too.

    Positivity is enforced by the ParamSet constructor; this exists as the
    explicit entry point for callers holding raw lists.
    """
    if isinstance(params, ParamSet):
        return params
    a_list, b_list = params
    return ParamSet(a_list, b_list)


class ConvergenceKind(enum.Enum):
    ENTIRE = "entire"
    UNIT_DISC = "unit_disc"
    UNIT_CIRCLE_CONDITIONAL = "unit_circle_conditional"
    DIVERGENT = "divergent"


@dataclass(frozen=True)
class ConvergenceDomain:
    """Where the series of a ParamSet converges, plus the boundary index eta.

    kind is entire for p < q+1, unit_disc for p = q+1 and divergent for
    p > q+1. eta = sum(a) - sum(b) controls behaviour on |x| = 1 for the
    unit-disc family; the evaluators refuse the boundary regardless, so
    eta is informational. (The parameters are real, so the Re(.) in the
    usual definition of eta is a no-op.)
    """

    kind: ConvergenceKind
    eta: float

    def contains(self, x: float) -> bool:
        if not math.isfinite(x):
            return False
        if self.kind is ConvergenceKind.ENTIRE:
            return True
        if self.kind is ConvergenceKind.UNIT_DISC:
            return abs(x) < 1.0
        return x == 0.0


def convergence_domain(params: ParamSet) -> ConvergenceDomain:
    """Classify the convergence domain of the series attached to params."""
    eta = math.fsum(params.a_list) - math.fsum(params.b_list)
    if params.p < params.q + 1:
        kind = ConvergenceKind.ENTIRE
    elif params.p == params.q + 1:
        kind = ConvergenceKind.UNIT_DISC
    else:
        kind = ConvergenceKind.DIVERGENT
    return ConvergenceDomain(kind=kind, eta=eta)
