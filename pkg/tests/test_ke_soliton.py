# -*- coding: utf-8 -*-
"""KE 判据、KE 族与孤子常数测试"""

from math import gcd

import numpy as np
import pytest
from mpmath import mp
from sympy import Rational

from KSOrbifold.modules.exceptions import NotLogFano, ValidationError
from KSOrbifold.modules.exact_arith import poly
from KSOrbifold.modules.ke_soliton import (
    KEFamilyParams, appendix_params, exp_poly_integral, g_zero, ke_condition,
    ke_family, ke_polynomial_value, ke_search, ke_table, ke_verify_integral, ks_variation,
    profile_frame, profile_residuals, scaled_soliton_function, soliton_constant, soliton_lambda,
    soliton_r
)
from KSOrbifold.modules.orbifold import AdmissiblePair, KSOrbifold, fano_index, is_log_fano
from KSOrbifold.modules.report_generator import to_csv_text


class TestKECondition:
    def test_koiso_sakane_is_ke(self, koiso_sakane):
        assert ke_condition(koiso_sakane)
        assert soliton_r(koiso_sakane) == AdmissiblePair(Rational(1, 2), Rational(-1, 2))

    def test_monotone_is_not_ke(self, monotone):
        assert ke_polynomial_value(1, 1, 1, 1) != 0
        assert not ke_condition(monotone)

    def test_no_solutions_for_n_1_2(self):
        assert ke_search(1, 2, 500) == []

    def test_search_finds_table_row(self):
        assert (60, 45) in ke_search(48, -8, 60)

    def test_search_bound(self):
        with pytest.raises(ValidationError):
            ke_search(1, 1, 0)

    @pytest.mark.parametrize("p, q", [(1, 3), (2, 5), (1, 4), (3, 8), (4, 7)])
    def test_variation_is_ke(self, p, q):
        orb = ks_variation(p, q)
        assert ke_condition(orb)
        assert soliton_r(orb).r1 == Rational(p, q)

    def test_variation_shapes(self):
        assert ks_variation(1, 3) == KSOrbifold(2, -2, 3, 3)
        assert fano_index(ks_variation(1, 3)) == 2
        assert ks_variation(1, 2) == KSOrbifold(1, -1, 1, 1)
        with pytest.raises(ValidationError):
            ks_variation(2, 4)


class TestKEFamily:
    def test_koiso_sakane_row(self):
        orb, r = ke_family(KEFamilyParams(1, 2, -1, 2))
        assert orb == KSOrbifold(1, -1, 1, 1)
        assert r == AdmissiblePair(Rational(1, 2), Rational(-1, 2))

    def test_index_seven_row(self):
        orb, _ = ke_family(KEFamilyParams(1, 2, -1, 13))
        assert orb == KSOrbifold(48, -8, 60, 45)
        assert fano_index(orb) == 7

    @pytest.mark.parametrize("args", [(0, 2, 1, 3), (2, 2, 1, 3), (1, 2, 0, 3), (1, 2, 3, 2),
                                      (2, 4, 1, 3), (1, 2, 2, 4)])
    def test_invalid_params(self, args):
        with pytest.raises(ValidationError):
            KEFamilyParams(*args)

    def test_appendix_has_28_rows(self):
        params = appendix_params()
        assert len(params) == 28
        assert params[0].as_tuple() == (1, 2, -1, 15)
        assert params[-1].as_tuple() == (1, 2, 1, 15)

    def test_table_matches_golden(self, golden_appendix):
        assert to_csv_text(ke_table(appendix_params())) == golden_appendix

    def test_every_row_cross_validates(self):
        for params in appendix_params():
            orb, r = ke_family(params)
            assert ke_condition(orb)
            assert ke_verify_integral(orb, r)
            result = soliton_constant(orb, samples=11)
            assert result.c.exact_zero
            assert result.lam == soliton_lambda(orb)

    def test_integral_criterion_fails_off_family(self, monotone):
        assert not ke_verify_integral(monotone, soliton_r(monotone))

    def test_random_family_members(self, rng):
        checked = 0
        while checked < 200:
            q1, q2 = int(rng.integers(2, 21)), int(rng.integers(2, 21))
            p1 = int(rng.integers(1, q1))
            p2 = int(rng.integers(1, q2)) * (1 if rng.random() < 0.5 else -1)
            if gcd(p1, q1) != 1 or gcd(abs(p2), q2) != 1:
                continue
            params = KEFamilyParams(p1, q1, p2, q2)
            orb, r = ke_family(params)
            assert gcd(abs(orb.n1), abs(orb.n2), orb.m0, orb.minf) == 1
            assert ke_condition(orb)
            assert ke_verify_integral(orb, r)
            assert soliton_r(orb) == AdmissiblePair(Rational(p1, q1), Rational(p2, q2))
            checked += 1

    def test_condition_and_integral_agree_on_random_log_fano(self, rng):
        checked = 0
        while checked < 100:
            n1 = int(rng.integers(1, 9)) * (1 if rng.random() < 0.5 else -1)
            n2 = int(rng.integers(1, 9)) * (1 if rng.random() < 0.5 else -1)
            orb = KSOrbifold(n1, n2, int(rng.integers(1, 9)), int(rng.integers(1, 9)))
            if not is_log_fano(orb):
                continue
            assert ke_condition(orb) == ke_verify_integral(orb, soliton_r(orb))
            checked += 1

    def test_integral_holds_for_known_solutions(self):
        for n1, n2 in ((1, -1), (48, -8), (2, -2)):
            for m0, minf in ke_search(n1, n2, 60):
                orb = KSOrbifold(n1, n2, m0, minf)
                assert ke_verify_integral(orb, soliton_r(orb))


class TestSoliton:
    def test_lambda_and_g_zero(self, monotone):
        assert soliton_lambda(monotone) == 1
        assert g_zero(monotone) == Rational(-4, 3)

    def test_negative_constant(self, monotone):
        result = soliton_constant(monotone)
        assert not result.c.exact_zero
        assert result.c.lo <= result.c.hi < 0
        assert result.c.hi - result.c.lo <= 1e-12
        assert result.profile_ok
        assert len(result.sample_profile) == 101

    def test_endpoint_residuals(self, monotone):
        c = soliton_constant(monotone, samples=11).c.value
        residuals = profile_residuals(monotone, c)
        assert set(residuals) == {'F(-1)', 'F(1)', "F'(-1)", "F'(1)"}
        assert all(value < 1e-8 for value in residuals.values())

    def test_scaled_function_is_decreasing(self, monotone):
        phi = scaled_soliton_function(monotone)
        values = [phi(float(k)) for k in np.linspace(-5.0, 5.0, 50)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_ke_constant_is_exact_zero(self, koiso_sakane):
        result = soliton_constant(koiso_sakane)
        assert result.c.exact_zero
        assert result.to_dict()['c'] == {'kind': 'exact_zero', 'value': 0}
        assert result.profile_ok

    def test_requires_log_fano(self):
        with pytest.raises(NotLogFano):
            soliton_constant(KSOrbifold(2, 2, 1, 1))

    def test_sample_count(self, monotone):
        with pytest.raises(ValidationError):
            soliton_constant(monotone, samples=2)

    def test_profile_frame(self, koiso_sakane):
        result = soliton_constant(koiso_sakane, samples=5)
        frame = profile_frame(result.sample_profile)
        assert list(frame.columns) == ['z', 'F']
        assert frame['z'].tolist() == [-1.0, -0.5, 0.0, 0.5, 1.0]
        assert abs(frame['F'].iloc[0]) < 1e-12


class TestExpPolyIntegral:
    def test_polynomial_case(self):
        assert exp_poly_integral(poly([1, 1, Rational(1, 4)]), 0, -1, 1) == mp.mpf(13) / 6

    def test_linear_times_exponential(self):
        # ∫_0^1 t e^t dt = 1
        assert abs(exp_poly_integral(poly([0, 1]), 1, 0, 1) - 1) < 1e-14

    def test_constant_with_shift(self):
        value = exp_poly_integral(poly([1]), 2, -1, 1, shift=Rational(1, 2))
        assert abs(value - mp.exp(-1) * mp.sinh(2)) < 1e-14

    def test_small_exponent(self):
        value = exp_poly_integral(poly([0, 0, 1]), 1e-9, -1, 1)
        assert abs(value - mp.mpf(2) / 3) < 1e-12
