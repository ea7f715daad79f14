"""Numba and numpy kernel twins must agree; the env flag must select them."""

import os
import subprocess
import sys

import numpy as np
import pytest

from hypercat import _kernels_numpy as kn
from hypercat._rules import GL_NODES, GL_WEIGHTS, jacobi_rule

numba = pytest.importorskip("numba")
from hypercat import _kernels_numba as kb  # noqa: E402


class TestKernelAgreement:
    @pytest.mark.parametrize("mode", [0, 1, 2])
    def test_series_values_and_statuses(self, mode):
        rng = np.random.default_rng(21)
        a = np.array([1.5, 2.2])
        b = np.array([0.8])
        xs = rng.uniform(-0.9, 0.9, 300)
        v1, e1, t1, s1 = kn.hyper_sum_many(a, b, xs, 1e-12, 10_000, mode)
        v2, e2, t2, s2 = kb.hyper_sum_many(a, b, xs, 1e-12, 10_000, mode)
        np.testing.assert_allclose(v1, v2, rtol=1e-11, atol=1e-13)
        np.testing.assert_array_equal(np.asarray(s1), np.asarray(s2))

    def test_series_term_counts_match(self):
        a = np.array([1.3])
        b = np.array([2.1])
        for x in (0.0, 0.3, -0.7):
            r1 = kn.hyper_sum(a, b, x, 1e-12, 10_000, 0)
            r2 = kb.hyper_sum(a, b, x, 1e-12, 10_000, 0)
            assert r1[2] == r2[2]

    def test_bessel_k(self):
        rng = np.random.default_rng(22)
        xs = 10.0 ** rng.uniform(-6, 1.69, 400)
        for nu in (0.0, 0.7, 3.0, 19.0):
            v1 = kn.bessel_k_many(nu, xs, GL_NODES, GL_WEIGHTS)
            v2 = kb.bessel_k_many(nu, xs, GL_NODES, GL_WEIGHTS)
            np.testing.assert_allclose(v1, v2, rtol=1e-11)

    def test_hyperu(self):
        rng = np.random.default_rng(23)
        xs = 10.0 ** rng.uniform(-4, 1.6, 400)
        for a, b in [(0.2, 0.8), (1.0, 3.0), (2.7, -1.5)]:
            jx, jw = jacobi_rule(24, 0.0, a - 1.0)
            v1 = kn.hyperu_many(a, b, xs, GL_NODES, GL_WEIGHTS, jx, jw)
            v2 = kb.hyperu_many(a, b, xs, GL_NODES, GL_WEIGHTS, jx, jw)
            np.testing.assert_allclose(v1, v2, rtol=1e-11)

    def test_searchsorted(self):
        rng = np.random.default_rng(24)
        cdf = np.cumsum(rng.random(64))
        cdf /= cdf[-1]
        us = rng.random(5000)
        np.testing.assert_array_equal(
            kn.searchsorted_right_many(cdf, us), kb.searchsorted_right_many(cdf, us)
        )


class TestBackendSelection:
    def _active_backend_under(self, value: str) -> str:
        env = dict(os.environ, HYPERCAT_BACKEND=value)
        out = subprocess.run(
            [sys.executable, "-c", "import hypercat; print(hypercat.active_backend())"],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        return out.stdout.strip()

    def test_numpy_flag(self):
        assert self._active_backend_under("numpy") == "numpy"

    def test_numba_flag(self):
        assert self._active_backend_under("numba") == "numba"

    def test_bad_flag_fails_loudly(self):
        env = dict(os.environ, HYPERCAT_BACKEND="fortran")
        out = subprocess.run(
            [sys.executable, "-c", "import hypercat"],
            env=env,
            capture_output=True,
            text=True,
        )
        assert out.returncode != 0
        assert "HYPERCAT_BACKEND" in out.stderr
