"""Shared quadrature node tables handed to the backend kernels."""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

GL_ORDER = 20

_glx, _glw = roots_legendre(GL_ORDER)
GL_NODES = np.ascontiguousarray(_glx, dtype=np.float64)
GL_WEIGHTS = np.ascontiguousarray(_glw, dtype=np.float64)


@lru_cache(maxsize=256)
def jacobi_rule(order: int, alpha: float, beta: float) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Jacobi nodes/weights for weight (1-s)^alpha (1+s)^beta on [-1, 1]."""
    x, w = roots_jacobi(order, alpha, beta)
    return (
        np.ascontiguousarray(x, dtype=np.float64),
        np.ascontiguousarray(w, dtype=np.float64),
    )
