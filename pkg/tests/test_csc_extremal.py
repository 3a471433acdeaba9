# -*- coding: utf-8 -*-
"""CSC 判定、加权极值方程组与 CSC 射线证书测试"""

import json

import pytest
from sympy import Poly, QQ, Rational

from KSOrbifold.modules.csc_extremal import (
    RayClass, alpha_beta, certify_csc_ray, csc_determinant, csc_diagonal_search, csc_f,
    h_poly, has_csc_in_class, shifted_moments, weighted_determinant, weighted_system,
    worked_example_h, worked_example_r
)
from KSOrbifold.modules.exact_arith import B
from KSOrbifold.modules.exceptions import BOutOfRange, ValidationError, WrongSignRegime
from KSOrbifold.modules.orbifold import AdmissiblePair, KSOrbifold

HALF = Rational(1, 2)


def _calibration(orb: KSOrbifold) -> Rational:
    return Rational(-2, 9 * orb.m0 * orb.minf * orb.n1 * orb.n2)


class TestInClassCSC:
    def test_classic_identity_on_grid(self, koiso_sakane):
        grid = [Rational(k, 10) for k in range(-5, 5)]
        for x in grid:
            for y in grid:
                assert csc_f(koiso_sakane, (x, y)) + 12 * (-1 + x - y) * (x + y) == 0

    def test_f_value(self, monotone):
        assert csc_f(monotone, (HALF, HALF)) == Rational(-13, 2)

    def test_alpha_beta(self, monotone):
        assert alpha_beta(monotone, AdmissiblePair(HALF, HALF)) == (
            Rational(13, 6), Rational(2, 3), Rational(13, 2), Rational(8, 3))
        assert csc_determinant(monotone, AdmissiblePair(HALF, HALF)) == Rational(13, 9)

    def test_has_csc_in_class(self, monotone, koiso_sakane):
        assert has_csc_in_class(koiso_sakane, AdmissiblePair(HALF, -HALF))
        assert not has_csc_in_class(koiso_sakane, AdmissiblePair(HALF, Rational(-1, 4)))
        assert not has_csc_in_class(monotone, AdmissiblePair(HALF, HALF))

    def test_determinant_is_calibrated_f(self, draw_admissible):
        for _ in range(100):
            orb, r = draw_admissible()
            det = csc_determinant(orb, r)
            f = csc_f(orb, r)
            assert det == _calibration(orb) * f
            assert (det == 0) == (f == 0)


class TestDiagonalSearch:
    def test_root_found(self):
        interval = csc_diagonal_search(KSOrbifold(1, 1, 4, 100))
        assert interval is not None
        assert 0 < interval.lo < interval.hi < 1
        assert interval.width < Rational(1, 2 ** 64)

    def test_no_root_for_monotone(self, monotone):
        assert csc_diagonal_search(monotone) is None

    def test_mixed_signs_rejected(self, koiso_sakane):
        with pytest.raises(WrongSignRegime):
            csc_diagonal_search(koiso_sakane)

    def test_negative_twists_search_negative_side(self):
        interval = csc_diagonal_search(KSOrbifold(-1, -1, 100, 4))
        assert interval is not None
        assert -1 < interval.lo < interval.hi < 0


class TestWeightedSystem:
    @pytest.mark.parametrize("b", [Rational(5, 2), Rational(-3), Rational(11, 7)])
    def test_solution_satisfies_system(self, monotone, b):
        r = AdmissiblePair(HALF, Rational(1, 3))
        a1_value, a2_value = weighted_system(monotone, r, b)
        moments = shifted_moments(monotone, r)
        alphas = [alpha(b) for alpha in moments.alphas]
        betas = [beta(b) for beta in moments.betas]
        assert alphas[1] * a1_value + alphas[0] * a2_value == 2 * betas[0]
        assert alphas[2] * a1_value + alphas[1] * a2_value == 2 * betas[1]

    @pytest.mark.parametrize("b", [Rational(3, 2), Rational(-9, 4), Rational(7)])
    def test_h_relation(self, koiso_sakane, b):
        r = AdmissiblePair(Rational(1, 3), Rational(-2, 5))
        a1_value, a2_value = weighted_system(koiso_sakane, r, b)
        det = weighted_determinant(koiso_sakane, r, b)
        assert det < 0
        assert (a1_value * b - a2_value) * det / 2 == h_poly(koiso_sakane, r).eval(b) / (b ** 2 - 1) ** 7

    @pytest.mark.parametrize("b", [1, -1, HALF, 0])
    def test_b_out_of_range(self, monotone, b):
        with pytest.raises(BOutOfRange):
            weighted_system(monotone, AdmissiblePair(HALF, HALF), b)


class TestHPoly:
    def test_random_leading_coefficient_and_boundary(self, draw_admissible):
        for _ in range(100):
            orb, r = draw_admissible()
            h = h_poly(orb, r)
            f = csc_f(orb, r)
            assert h.degree() <= 5
            assert h.nth(5) == -_calibration(orb) * f
            assert h.eval(1) > 0
            assert h.eval(-1) > 0

    def test_worked_example_closed_form(self):
        for n1, n2 in ((5, 1), (7, 2)):
            orb = KSOrbifold(n1, n2, 1, 1)
            assert h_poly(orb, worked_example_r(n1)) == worked_example_h(n1, n2)

    def test_worked_example_leading_coefficient(self):
        h = h_poly(KSOrbifold(5, 1, 1, 1), worked_example_r(5))
        assert h.nth(5) == Rational(-61799472, 23653125)

    def test_worked_example_r_requires_large_n1(self):
        assert worked_example_r(5) == AdmissiblePair(Rational(121, 145), Rational(2, 5))
        with pytest.raises(ValidationError):
            worked_example_r(4)


class TestCertificate:
    def test_worked_example_root(self):
        orb = KSOrbifold(5, 1, 1, 1)
        r = worked_example_r(5)
        assert h_poly(orb, r).eval(Rational(5, 2)) == 0
        cert = certify_csc_ray(orb, r)
        assert not cert.in_class_csc
        assert len(cert.roots) == 1
        interval, ray = cert.roots[0]
        assert ray is RayClass.QUASI_REGULAR
        assert interval.exact_root == Rational(5, 2)
        assert cert.summary() == "CSC ray at b = 5/2 (quasi-regular)"

    def test_certificate_dict(self):
        cert = certify_csc_ray(KSOrbifold(5, 1, 1, 1), worked_example_r(5))
        data = cert.to_dict()
        assert data['roots'][0]['class'] == 'quasi-regular'
        assert data['roots'][0]['exact'] == '5/2'
        assert data['boundary_positive'] is True
        assert all(isinstance(c, int) for c in data['h'])
        # 整系数本原形式与 h 相差一个有理倍数
        primitive = Poly(list(reversed(data['h'])), B, domain=QQ)
        assert primitive.eval(Rational(5, 2)) == 0

    def test_in_class(self, koiso_sakane):
        cert = certify_csc_ray(koiso_sakane, AdmissiblePair(HALF, -HALF))
        assert cert.in_class_csc
        assert cert.summary() == "CSC in class"

    def test_certificate_json_types(self):
        cert = certify_csc_ray(KSOrbifold(5, 1, 1, 1), worked_example_r(5))
        data = json.loads(json.dumps(cert.to_dict()))
        assert data['boundary_positive'] is True
        assert data['in_class_csc'] is False
        assert isinstance(cert.boundary_positive, bool)

    def test_exact_root_interval_is_narrower_than_bound(self):
        cert = certify_csc_ray(KSOrbifold(5, 1, 1, 1), worked_example_r(5))
        interval, _ = cert.roots[0]
        assert interval.width < Rational(1, 2 ** 64)
        assert interval.lo < Rational(5, 2) < interval.hi

    def test_always_in_class_or_rooted(self, draw_admissible):
        for _ in range(500):
            orb, r = draw_admissible()
            cert = certify_csc_ray(orb, r)
            assert cert.in_class_csc or cert.roots
            for interval, _ in cert.roots:
                assert interval.width < Rational(1, 2 ** 64)
                assert abs(interval.midpoint) > 1
