"""Series evaluators against exact-rational brute-force oracles."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypercat import (
    ConvergenceError,
    ConvergenceKind,
    DomainError,
    ParamSet,
    convergence_domain,
    gauss_2F1,
    hyper_even_pCq,
    hyper_odd_pSq,
    hyper_pFq,
    ln_pochhammer,
)
from hypercat.series import series_term_log, term_via_recurrence


def brute_force_sum(a_list, b_list, x, n_terms, parity=None):
    """Exact-rational partial sum of the series; parity picks even/odd indices."""
    a = [Fraction(v) for v in a_list]
    b = [Fraction(v) for v in b_list]
    xf = Fraction(x)
    total = Fraction(0)
    for n in range(n_terms):
        if parity == "even" and n % 2 == 1:
            continue
        if parity == "odd" and n % 2 == 0:
            continue
        term = xf**n / math.factorial(n)
        for av in a:
            for k in range(n):
                term *= av + k
        for bv in b:
            for k in range(n):
                term /= bv + k
        total += term
    return float(total)


class TestLnPochhammer:
    def test_n_zero_is_one(self):
        assert ln_pochhammer(5.0, 0) == 0.0

    def test_a_one_gives_factorial(self):
        assert ln_pochhammer(1.0, 6) == pytest.approx(math.log(720), rel=1e-14)

    def test_direct_product_oracle(self):
        # 3*4*5*6 = 360
        prod = 1.0
        for k in range(4):
            prod *= 3.0 + k
        assert prod == 360.0
        assert ln_pochhammer(3.0, 4) == pytest.approx(math.log(360), rel=1e-14)

    @pytest.mark.parametrize("a", [0.3, 1.0, 5.0, 17.5])
    def test_matches_exact_product(self, a):
        # largest n whose (a)_n still fits in a double; beyond that only the
        # log can be compared (see the next test)
        frac = Fraction(a)
        acc = Fraction(1)
        n = 0
        while True:
            nxt = acc * (frac + n)
            if nxt >= Fraction(2) ** 1020:
                break
            acc = nxt
            n += 1
        assert n >= 100
        assert math.exp(ln_pochhammer(a, n)) == pytest.approx(float(acc), rel=1e-13)

    @pytest.mark.parametrize("a", [0.3, 1.0, 5.0, 17.5])
    def test_log_certificate_at_n_200(self, a):
        # (a)_200 overflows doubles for any reasonable a, so the contract
        # is carried by the log: an absolute log error d maps to a value
        # relative error e^d - 1
        import mpmath as mp

        mp.mp.dps = 40
        ref = float(mp.loggamma(a + 200) - mp.loggamma(a))
        assert abs(ln_pochhammer(a, 200) - ref) <= 2e-13

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            ln_pochhammer(0.0, 3)
        with pytest.raises(DomainError):
            ln_pochhammer(-1.5, 3)


class TestHyperPFQ:
    def test_exponential_case(self):
        r = hyper_pFq(ParamSet([], []), 1.3)
        assert r.value == pytest.approx(math.exp(1.3), rel=1e-12)

    @pytest.mark.parametrize(
        "params", [ParamSet([], []), ParamSet([2.0], [3.0]), ParamSet([1.1, 2.2], [0.7])]
    )
    def test_value_one_at_zero(self, params):
        r = hyper_pFq(params, 0.0)
        assert r.value == 1.0
        assert r.terms_used >= 1

    def test_brute_force_oracle_1f1(self):
        expected = brute_force_sum([2.0], [3.0], 0.7, 200)
        r = hyper_pFq(ParamSet([2.0], [3.0]), 0.7)
        assert r.value == pytest.approx(expected, rel=1e-12)
        assert r.abs_error_estimate <= 1e-12 * max(1.0, abs(r.value))

    def test_brute_force_oracle_negative_x(self):
        expected = brute_force_sum([1.4], [2.6, 0.9], -2.5, 250)
        r = hyper_pFq(ParamSet([1.4], [2.6, 0.9]), -2.5)
        assert r.value == pytest.approx(expected, rel=1e-11)

    def test_refuses_unit_disc_boundary(self):
        with pytest.raises(DomainError):
            hyper_pFq(ParamSet([1.5], []), 1.0)
        with pytest.raises(DomainError):
            hyper_pFq(ParamSet([1.5], []), -1.0)

    def test_refuses_divergent_family_away_from_zero(self):
        ps = ParamSet([1.0, 2.0], [])
        with pytest.raises(DomainError):
            hyper_pFq(ps, 0.3)
        assert hyper_pFq(ps, 0.0).value == 1.0

    def test_nonconvergence_near_boundary_raises(self):
        with pytest.raises(ConvergenceError):
            hyper_pFq(ParamSet([2.0], []), 0.99999)


class TestEvenOddParts:
    def test_cosh_case(self):
        assert hyper_even_pCq(ParamSet([], []), 1.0).value == pytest.approx(
            math.cosh(1.0), rel=1e-13
        )

    def test_sinh_case(self):
        assert hyper_odd_pSq(ParamSet([], []), 1.0).value == pytest.approx(
            math.sinh(1.0), rel=1e-13
        )

    def test_even_is_one_at_zero(self):
        assert hyper_even_pCq(ParamSet([1.3], [0.9]), 0.0).value == 1.0

    def test_odd_vanishes_at_zero(self):
        r = hyper_odd_pSq(ParamSet([1.3], [0.9]), 0.0)
        assert r.value == 0.0
        assert r.terms_used >= 1

    def test_even_reduces_to_2f1(self):
        # C(a; x) = 2F1(a/2, (a+1)/2; 1/2; x^2) for the one-numerator family
        a, x = 1.5, 0.4
        lhs = hyper_even_pCq(ParamSet([a], []), x).value
        rhs = gauss_2F1(a / 2, (a + 1) / 2, 0.5, x * x)
        oracle = brute_force_sum([a], [], x, 120, parity="even")
        assert lhs == pytest.approx(rhs, rel=1e-12)
        assert lhs == pytest.approx(oracle, rel=1e-12)

    def test_odd_reduces_to_2f1(self):
        a, x = 1.5, 0.4
        lhs = hyper_odd_pSq(ParamSet([a], []), x).value
        rhs = a * x * gauss_2F1((a + 1) / 2, (a + 2) / 2, 1.5, x * x)
        oracle = brute_force_sum([a], [], x, 120, parity="odd")
        assert lhs == pytest.approx(rhs, rel=1e-12)
        assert lhs == pytest.approx(oracle, rel=1e-12)

    def test_even_part_reduces_to_0f3(self):
        # C(-; b; x) = 0F3(-; 1/2, b/2, (b+1)/2; x^2/16)
        b, x = 1.9, 2.0
        lhs = hyper_even_pCq(ParamSet([], [b]), x).value
        red = hyper_pFq(ParamSet([], [0.5, b / 2, (b + 1) / 2]), x * x / 16).value
        assert lhs == pytest.approx(red, rel=1e-12)

    def test_odd_part_reduces_to_0f3(self):
        # S(-; b; x) = (x/b) 0F3(-; 3/2, (b+1)/2, (b+2)/2; x^2/16); the
        # leading factor is fixed by the n = 0 term x/b
        b, x = 1.9, 2.0
        lhs = hyper_odd_pSq(ParamSet([], [b]), x).value
        red = (x / b) * hyper_pFq(
            ParamSet([], [1.5, (b + 1) / 2, (b + 2) / 2]), x * x / 16
        ).value
        assert lhs == pytest.approx(red, rel=1e-12)
        assert brute_force_sum([], [b], x, 60, parity="odd") == pytest.approx(lhs, rel=1e-12)

    def test_odd_part_reduces_to_2f3(self):
        # S(a; b; x) = (a x / b) 2F3((a+1)/2, (a+2)/2; 3/2, (b+1)/2, (b+2)/2; x^2/4)
        a, b, x = 1.7, 2.4, 1.1
        lhs = hyper_odd_pSq(ParamSet([a], [b]), x).value
        red = (a * x / b) * hyper_pFq(
            ParamSet([(a + 1) / 2, (a + 2) / 2], [1.5, (b + 1) / 2, (b + 2) / 2]),
            x * x / 4,
        ).value
        assert lhs == pytest.approx(red, rel=1e-12)


class TestConvergenceDomain:
    def test_entire(self):
        dom = convergence_domain(ParamSet([], [2.0]))
        assert dom.kind is ConvergenceKind.ENTIRE
        assert dom.contains(1e6)

    def test_unit_disc_with_eta(self):
        dom = convergence_domain(ParamSet([1.5, 2.5], [3.0]))
        assert dom.kind is ConvergenceKind.UNIT_DISC
        assert dom.eta == pytest.approx(1.5 + 2.5 - 3.0)
        assert dom.contains(0.999) and not dom.contains(1.0)

    def test_divergent(self):
        dom = convergence_domain(ParamSet([1.0, 1.0], []))
        assert dom.kind is ConvergenceKind.DIVERGENT
        assert dom.contains(0.0) and not dom.contains(0.1)


SHAPES = [(0, 0), (0, 1), (1, 0), (1, 1), (2, 1)]


def _draw_case(rng):
    p, q = SHAPES[rng.integers(0, len(SHAPES))]
    ps = ParamSet(rng.uniform(0.5, 3.0, p), rng.uniform(0.5, 3.0, q))
    x = rng.uniform(-0.6, 0.6) if p == q + 1 else rng.uniform(-0.4, 3.0)
    return ps, x


class TestIdentities:
    def test_splitting_identity_seeded_draws(self):
        rng = np.random.default_rng(11)
        tol = 1e-12
        for _ in range(100):
            ps, x = _draw_case(rng)
            f = hyper_pFq(ps, x, tol).value
            c = hyper_even_pCq(ps, x, tol).value
            s = hyper_odd_pSq(ps, x, tol).value
            assert abs(f - c - s) <= 3 * tol * max(1.0, abs(f), abs(c), abs(s))

    def test_product_identity_seeded_draws(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            ps, x = _draw_case(rng)
            f = hyper_pFq(ps, x).value
            fm = hyper_pFq(ps, -x).value
            c = hyper_even_pCq(ps, x).value
            s = hyper_odd_pSq(ps, x).value
            assert abs(c * c - s * s - f * fm) <= 1e-12 * max(c * c, s * s, 1.0)

    @given(
        a=st.floats(0.5, 3.0),
        b=st.floats(0.5, 3.0),
        x=st.floats(-0.6, 0.6),
    )
    @settings(max_examples=60, deadline=None)
    def test_splitting_identity_property_unit_disc(self, a, b, x):
        ps = ParamSet([a, b], [a + b])  # p = q+1 shape
        f = hyper_pFq(ps, x).value
        c = hyper_even_pCq(ps, x).value
        s = hyper_odd_pSq(ps, x).value
        assert abs(f - c - s) <= 1e-11 * max(1.0, abs(f))

    def test_term_recurrence_matches_log_formula(self):
        ps = ParamSet([1.7, 0.6], [2.3])
        x = 0.7
        for n in (0, 1, 5, 20, 100):
            rec = term_via_recurrence(ps, n, x)
            direct = math.exp(series_term_log(ps, n, x))
            assert rec == pytest.approx(direct, rel=1e-12)

    def test_exp_and_one_zero_reductions_on_grid(self):
        for x2 in np.linspace(0.0, 0.81, 10):
            x = math.sqrt(x2)
            assert hyper_pFq(ParamSet([], []), x).value == pytest.approx(
                math.exp(x), rel=1e-9
            )
            a = 1.5
            c = hyper_even_pCq(ParamSet([a], []), x).value
            s = hyper_odd_pSq(ParamSet([a], []), x).value
            if x2 > 0:
                assert c == pytest.approx(
                    gauss_2F1(a / 2, (a + 1) / 2, 0.5, x2), rel=1e-9
                )
                assert s == pytest.approx(
                    a * x * gauss_2F1((a + 1) / 2, (a + 2) / 2, 1.5, x2), rel=1e-9
                )
