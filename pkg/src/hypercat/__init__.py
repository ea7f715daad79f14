"""hypercat: generalized hypergeometric coherent states and their numerics.

Series (full/even/odd), normalized Fock states, photon statistics and
Mandel Q, resolution-of-identity weight functions with a moment-problem
verifier, thermal moments, and the state-manifold metric density. Hot
kernels run numba-jitted with a pure-numpy fallback (HYPERCAT_BACKEND).
"""

from .backend import active_backend, warmup
from .errors import (
    ConvergenceError,
    DegenerateStateError,
    DomainError,
    HypercatError,
    SeriesOverflowError,
    UnsupportedCaseError,
    ValidationError,
)
from .geometry import MetricSample, fd_check_metric, metric_density, metric_sweep
from .moments import (
    MomentEntry,
    MomentReport,
    WeightCase,
    WeightTag,
    quadrature_moment,
    verify_moments,
    weight_case,
    weight_eval,
    weight_eval_many,
)
from .params import ConvergenceDomain, ConvergenceKind, ParamSet, convergence_domain
from .series import (
    SeriesResult,
    hyper_even_pCq,
    hyper_odd_pSq,
    hyper_pFq,
    ln_pochhammer,
)
from .special import bessel_K, gauss_2F1, hyperu, whittaker_W
from .states import (
    FockAmplitudes,
    Parity,
    StateSpec,
    annihilate,
    fock_amplitudes,
    ln_rho,
    overlap,
    photon_distribution,
    rho,
    validate_params,
)
from .statistics import (
    MandelResult,
    ThermalSpec,
    expect_adagS_aR,
    expect_N,
    expect_N2,
    factorial_moment,
    mandel_Q,
    photon_count_summary,
    sample_photon_counts,
    thermal_factorial_moment_direct,
    thermal_normal_moment,
    thermal_partition,
)

__version__ = "0.1.0"
