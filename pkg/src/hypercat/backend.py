"""Kernel backend selection.

The hot kernels exist twice: numba-jitted scalar loops and a vectorized
pure-numpy twin. HYPERCAT_BACKEND picks one:

  auto   use numba when importable, else numpy (default)
  numba  require numba, fail loudly if missing
  numpy  force the pure-numpy path

The choice is fixed at import time; call warmup() to pay any jit
compilation cost up front instead of inside the first timed call.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_numpy
from ._rules import GL_NODES, GL_WEIGHTS, jacobi_rule

__all__ = ["kernels", "active_backend", "warmup", "USING_NUMBA"]

_choice = os.environ.get("HYPERCAT_BACKEND", "auto").strip().lower()
if _choice not in {"auto", "numba", "numpy"}:
    raise RuntimeError(
        f"HYPERCAT_BACKEND={_choice!r} not understood (use auto, numba or numpy)"
    )

if _choice == "numpy":
    kernels = _kernels_numpy
    USING_NUMBA = False
else:
    try:
        from . import _kernels_numba

        kernels = _kernels_numba
        USING_NUMBA = True
    except ImportError:
        if _choice == "numba":
            raise RuntimeError("HYPERCAT_BACKEND=numba but numba is not importable")
        kernels = _kernels_numpy
        USING_NUMBA = False


def active_backend() -> str:
    return "numba" if USING_NUMBA else "numpy"


def warmup() -> None:
    """Trigger jit compilation of every kernel with tiny inputs."""
    a = np.array([1.5])
    b = np.array([2.5])
    xs = np.array([0.25, 0.5])
    for mode in (0, 1, 2):
        kernels.hyper_sum(a, b, 0.3, 1e-12, 50, mode)
        kernels.hyper_sum_many(a, b, xs, 1e-12, 50, mode)
    kernels.bessel_k_many(0.7, xs, GL_NODES, GL_WEIGHTS)
    jx, jw = jacobi_rule(24, 0.0, 0.2)
    kernels.hyperu_many(1.2, 0.8, xs, GL_NODES, GL_WEIGHTS, jx, jw)
    kernels.searchsorted_right_many(np.array([0.5, 1.0]), np.array([0.3, 0.7]))
