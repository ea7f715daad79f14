"""State-manifold metric density for the single-numerator (p=1, q=0) family.

The squared line element on the z-plane is (d<N>/dx) dz* dz with
x = |z|^2; the density is evaluated analytically through the term-shift
derivative identities C'(α; x) = α S(α+1; x) and S'(α; x) = α C(α+1; x),
and can be cross-checked against central finite differences of <N>.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

from .errors import DomainError, ValidationError
from .params import ParamSet
from .series import hyper_even_pCq, hyper_odd_pSq
from .states import Parity, StateSpec
from .statistics import expect_N

__all__ = ["MetricSample", "metric_density", "fd_check_metric", "metric_sweep"]


@dataclass(frozen=True)
class MetricSample:
    """The dz* dz coefficient of the metric at one radial point."""

    x: float
    density: float


def _check_inputs(parity: Parity, a: float, x: float) -> None:
    if parity is Parity.FULL:
        raise ValidationError("metric_density is defined for even/odd states")
    if not math.isfinite(a) or a <= 0.0:
        raise ValidationError(f"metric_density requires a > 0, got {a!r}")
    if a <= 1.0:
        warnings.warn(
            f"a = {a} <= 1: the metric formulas hold but the associated "
            "weight-function context needs a > 1",
            stacklevel=3,
        )
    if not 0.0 <= x < 1.0:
        raise DomainError(f"metric requires 0 <= x < 1 for p = q+1, got x={x!r}")


def metric_density(parity: Parity, a: float, x: float) -> MetricSample:
    """d<N>/dx of the chosen parity sector at x = |z|^2 < 1."""
    _check_inputs(parity, a, x)
    if x == 0.0:
        return MetricSample(x=0.0, density=0.0)

    def C(alpha: float) -> float:
        return hyper_even_pCq(ParamSet([alpha], []), x).value

    def S(alpha: float) -> float:
        return hyper_odd_pSq(ParamSet([alpha], []), x).value

    if parity is Parity.EVEN:
        c0 = C(a)
        s1 = S(a + 1.0)
        density = a * (s1 / c0 + x * (a + 1.0) * C(a + 2.0) / c0 - x * a * (s1 / c0) ** 2)
    else:
        s0 = S(a)
        c1 = C(a + 1.0)
        density = a * (c1 / s0 + x * (a + 1.0) * S(a + 2.0) / s0 - x * a * (c1 / s0) ** 2)
    return MetricSample(x=x, density=density)


def fd_check_metric(parity: Parity, a: float, x: float, h: float) -> float:
    """Relative deviation of the analytic density from a central difference.

    Warns when the Richardson estimate (h vs h/2) suggests the step is too
    large for 1e-6 agreement.
    """
    _check_inputs(parity, a, x)
    if not 0.0 < h < x or not x < 1.0 - h:
        raise ValidationError(f"need 0 < h < x < 1-h, got h={h!r}, x={x!r}")

    def mean_n(xv: float) -> float:
        return expect_N(StateSpec(ParamSet([a], []), parity, math.sqrt(xv)))

    analytic = metric_density(parity, a, x).density

    def central(step: float) -> float:
        return (mean_n(x + step) - mean_n(x - step)) / (2.0 * step)

    d_h = central(h)
    d_h2 = central(0.5 * h)
    richardson = abs(d_h - d_h2) / 3.0
    if richardson > 1e-6 * abs(analytic):
        warnings.warn(
            f"finite-difference step h={h} too large: Richardson estimate "
            f"{richardson:.3e} exceeds 1e-6 relative",
            stacklevel=2,
        )
    return abs(analytic - d_h) / abs(analytic)


def metric_sweep(a: float, xs) -> list[tuple[float, float, float]]:
    """Rows (x, density_even, density_odd) over a grid of x values."""
    rows = []
    for x in xs:
        de = metric_density(Parity.EVEN, a, float(x)).density
        do = metric_density(Parity.ODD, a, float(x)).density
        rows.append((float(x), de, do))
    return rows
