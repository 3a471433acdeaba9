#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
常数量曲率（CSC）与加权极值模块

功能：
1. 类内 CSC 判定：f(r1, r2) 与 α/β 积分
2. 对角线 r1 = r2 上 f 的根隔离
3. 加权极值线性方程组 (A1, A2)
4. 五次多项式 h(b) 的精确构造
5. CSC 射线的证书：|b| > 1 内 h 的全部实根，有理根为拟正则、无理根为非正则
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple, Union

from sympy import Poly, QQ, Rational

from .exact_arith import (
    B, T, IsolatingInterval, RatFunc, Region, integrate_poly, integrate_shifted_pole,
    primitive_integer_form, rat_str, solve_2x2, sturm_isolate, to_rat, DEFAULT_ISOLATION_BITS
)
from .exceptions import BOutOfRange, InternalInconsistency, NoRootFound, ValidationError, WrongSignRegime
from .orbifold import AdmissiblePair, KSOrbifold

logger = logging.getLogger(__name__)

PairLike = Union[AdmissiblePair, Tuple]


class RayClass(Enum):
    """CSC 射线类型"""
    QUASI_REGULAR = "quasi-regular"
    IRREGULAR = "irregular"


def _f_expr(orb: KSOrbifold, x, y):
    # 对 Rational 与 sympy 符号都适用的 f(r1, r2) 展开式
    m0, minf, n1, n2 = orb.m0, orb.minf, orb.n1, orb.n2
    diff, total = m0 - minf, m0 + minf
    return (9 * diff * n1 * n2
            - 6 * total * n1 * n2 * (x + y)
            + 6 * diff * n1 * n2 * x * y
            + 3 * n2 * (4 * m0 * minf - n1 * diff) * x ** 2
            + 3 * n1 * (4 * m0 * minf - n2 * diff) * y ** 2
            - (4 * m0 * minf * (n1 + n2) - 3 * diff * n1 * n2) * x ** 2 * y ** 2)


def csc_f(orb: KSOrbifold, r: PairLike) -> Rational:
    """f(r1, r2) 的精确值（r 可以是 AdmissiblePair，也可以是任意有理数对）"""
    r1, r2 = (to_rat(v) for v in r)
    return Rational(_f_expr(orb, r1, r2))


def _weight_poly(orb: KSOrbifold, r: AdmissiblePair) -> Poly:
    # (2r1/n1)(1 + r2 t) + (2r2/n2)(1 + r1 t)
    s1, s2 = Rational(2, orb.n1), Rational(2, orb.n2)
    return (Poly([r.r2, 1], T, domain=QQ).mul_ground(r.r1 * s1)
            + Poly([r.r1, 1], T, domain=QQ).mul_ground(r.r2 * s2))


def _boundary_masses(orb: KSOrbifold, r: AdmissiblePair) -> Tuple[Rational, Rational]:
    p_c = r.p_c()
    return Rational(p_c.eval(-1)) / orb.minf, Rational(p_c.eval(1)) / orb.m0


def _monomial(j: int) -> Poly:
    return Poly(T ** j, T, domain=QQ)


def alpha_beta(orb: KSOrbifold, r: AdmissiblePair) -> Tuple[Rational, Rational, Rational, Rational]:
    """(α0, α1, β0, β1)

    α_j = ∫ t^j p_c(t) dt；β_j = ∫ w(t) t^j dt + (-1)^j p_c(-1)/m∞ + p_c(1)/m0
    """
    p_c = r.p_c()
    weight = _weight_poly(orb, r)
    at_minus, at_plus = _boundary_masses(orb, r)
    alphas = [integrate_poly(_monomial(j) * p_c, -1, 1) for j in (0, 1)]
    betas = [integrate_poly(_monomial(j) * weight, -1, 1) + (-1) ** j * at_minus + at_plus
             for j in (0, 1)]
    return alphas[0], alphas[1], betas[0], betas[1]


def csc_determinant(orb: KSOrbifold, r: AdmissiblePair) -> Rational:
    """α0·β1 - α1·β0"""
    a0, a1, b0, b1 = alpha_beta(orb, r)
    return a0 * b1 - a1 * b0


def has_csc_in_class(orb: KSOrbifold, r: AdmissiblePair) -> bool:
    """Ω_r 中存在 CSC Kähler 度量当且仅当 α0·β1 - α1·β0 = 0"""
    return csc_determinant(orb, r) == 0


def csc_diagonal_poly(orb: KSOrbifold) -> Poly:
    """t ↦ f(t, t)"""
    return Poly(_f_expr(orb, T, T), T, domain=QQ)


def csc_diagonal_search(orb: KSOrbifold, bits: int = DEFAULT_ISOLATION_BITS) -> Optional[IsolatingInterval]:
    """在 (0, 1)（n 为负时为 (-1, 0)）内隔离 f(t, t) 的根，不存在时返回 None

    Raises:
        WrongSignRegime: n1·n2 < 0
    """
    if orb.n1 * orb.n2 < 0:
        raise WrongSignRegime('对角线搜索要求 n1·n2 > 0', n=orb.n)
    diagonal = csc_diagonal_poly(orb)
    if diagonal.is_zero:
        logger.warning("f(t, t) 在 %s 上恒为零", orb)
        return None
    # n 为负时对角线 r 取负值，对应区间 (-1, 0)
    region = Region.interval(0, 1) if orb.n1 > 0 else Region.interval(-1, 0)
    roots = sturm_isolate(diagonal, region, bits)
    return roots[0] if roots else None


# ---------------------------------------------------------------- 加权极值

@dataclass
class ShiftedMoments:
    """α_{j,-6}(b)（j = 0, 1, 2）与 β_{j,-4}(b)（j = 0, 1），均为 b 的有理函数"""

    alphas: List[RatFunc]
    betas: List[RatFunc]


def shifted_moments(orb: KSOrbifold, r: AdmissiblePair) -> ShiftedMoments:
    p_c = r.p_c()
    weight = _weight_poly(orb, r)
    at_minus, at_plus = _boundary_masses(orb, r)
    pole_minus = Poly(B - 1, B, domain=QQ) ** 4
    pole_plus = Poly(B + 1, B, domain=QQ) ** 4

    alphas = [integrate_shifted_pole(_monomial(j) * p_c, 6) for j in range(3)]
    betas = []
    for j in range(2):
        masses = (RatFunc.make(Poly((-1) ** j * at_minus, B, domain=QQ), pole_minus)
                  + RatFunc.make(Poly(at_plus, B, domain=QQ), pole_plus))
        betas.append(integrate_shifted_pole(_monomial(j) * weight, 4) + masses)
    return ShiftedMoments(alphas, betas)


def _check_b(b) -> Rational:
    b = to_rat(b)
    if abs(b) <= 1:
        raise BOutOfRange(b=rat_str(b))
    return b


def weighted_system(orb: KSOrbifold, r: AdmissiblePair, b) -> Tuple[Rational, Rational]:
    """求解 α_{1,-6}A1 + α_{0,-6}A2 = 2β_{0,-4}，α_{2,-6}A1 + α_{1,-6}A2 = 2β_{1,-4}

    Raises:
        BOutOfRange: |b| <= 1
        SingularSystem: 行列式为零
    """
    b = _check_b(b)
    r.check_signs(orb)
    moments = shifted_moments(orb, r)
    a0, a1, a2 = (alpha.evaluate(b) for alpha in moments.alphas)
    b0, b1 = (beta.evaluate(b) for beta in moments.betas)
    return solve_2x2(a1, a0, a2, a1, 2 * b0, 2 * b1)


def weighted_determinant(orb: KSOrbifold, r: AdmissiblePair, b) -> Rational:
    """α_{1,-6}² - α_{0,-6}·α_{2,-6}（恒为负）"""
    b = _check_b(b)
    moments = shifted_moments(orb, r)
    a0, a1, a2 = (alpha.evaluate(b) for alpha in moments.alphas)
    return a1 * a1 - a0 * a2


def h_poly(orb: KSOrbifold, r: AdmissiblePair) -> Poly:
    """h(b) = (b²-1)^7 (b(α1β0 - α0β1) - (α1β1 - α2β0))，次数不超过 5

    Raises:
        InternalInconsistency: 分母未能完全消去或次数超过 5
    """
    r.check_signs(orb)
    moments = shifted_moments(orb, r)
    a0, a1, a2 = moments.alphas
    b0, b1 = moments.betas
    combination = (a1 * b0 - a0 * b1) * Poly(B, B, domain=QQ) - (a1 * b1 - a2 * b0)
    cleared = combination * (Poly(B ** 2 - 1, B, domain=QQ) ** 7)
    if not cleared.is_polynomial():
        raise InternalInconsistency('h_poly', '(b²-1)^7 未能消去分母',
                                    {'orbifold': str(orb), 'r': r.as_strings()})
    h = cleared.num.quo_ground(cleared.den.LC())
    if not h.is_zero and h.degree() > 5:
        raise InternalInconsistency('h_poly', f'次数 {h.degree()} > 5',
                                    {'orbifold': str(orb), 'r': r.as_strings()})
    logger.debug("h_poly %s r=%s: %s", orb, r.as_strings(), h.as_expr())
    return h


@dataclass
class RootCertificate:
    """CSC 射线证书"""

    f: Rational
    h: Poly
    polynomial: Poly
    roots: List[Tuple[IsolatingInterval, RayClass]] = field(default_factory=list)
    in_class_csc: bool = False
    boundary_positive: bool = True

    def to_dict(self) -> Dict:
        coeffs = [int(c) for c in reversed(self.polynomial.all_coeffs())]
        roots = []
        for interval, ray in self.roots:
            entry = interval.to_dict()
            entry['class'] = ray.value
            roots.append(entry)
        return {
            'f': rat_str(self.f),
            'in_class_csc': self.in_class_csc,
            'h': coeffs,
            'h_at_plus_one': rat_str(self.h.eval(1)),
            'h_at_minus_one': rat_str(self.h.eval(-1)),
            'boundary_positive': self.boundary_positive,
            'roots': roots,
        }

    def summary(self) -> str:
        if self.in_class_csc:
            return "CSC in class"
        parts = []
        for interval, ray in self.roots:
            if interval.is_rational:
                parts.append(f"CSC ray at b = {rat_str(interval.exact_root)} ({ray.value})")
            else:
                parts.append(f"CSC ray at b ∈ [{float(interval.lo):.12g}, {float(interval.hi):.12g}] ({ray.value})")
        return "; ".join(parts)


def certify_csc_ray(orb: KSOrbifold, r: AdmissiblePair,
                    bits: int = DEFAULT_ISOLATION_BITS) -> RootCertificate:
    """对有理可容许类给出 CSC 射线证书

    f(r1, r2) = 0 时报告类内 CSC（仍附上 h 的根）；否则 h 在 |b| > 1 内必有实根。

    Raises:
        NoRootFound: f ≠ 0 但 |b| > 1 内没有根（与存在性定理矛盾）
    """
    r.check_signs(orb)
    f_value = csc_f(orb, r)
    h = h_poly(orb, r)
    in_class = f_value == 0
    if h.is_zero:
        if not in_class:
            raise InternalInconsistency('certify_csc_ray', 'f ≠ 0 但 h(b) 恒为零',
                                        {'orbifold': str(orb), 'r': r.as_strings()})
        logger.warning("h(b) 恒为零: orb=%s r=%s", orb, r.as_strings())
        return RootCertificate(f=f_value, h=h, polynomial=h, in_class_csc=True, boundary_positive=False)

    boundary_positive = bool(h.eval(1) > 0 and h.eval(-1) > 0)
    if not boundary_positive:
        logger.warning("h(±1) 不全为正: orb=%s r=%s h(1)=%s h(-1)=%s",
                       orb, r.as_strings(), h.eval(1), h.eval(-1))

    intervals = sturm_isolate(h, Region.outside_unit(), bits)
    roots = [(iv, RayClass.QUASI_REGULAR if iv.is_rational else RayClass.IRREGULAR)
             for iv in intervals]
    if not in_class and not roots:
        raise NoRootFound('|b| > 1 内 h(b) 没有实根',
                          {'orbifold': str(orb), 'r': r.as_strings()})

    return RootCertificate(
        f=f_value,
        h=h,
        polynomial=primitive_integer_form(h),
        roots=roots,
        in_class_csc=in_class,
        boundary_positive=boundary_positive,
    )


# ---------------------------------------------------------------- 具体例子

def worked_example_r(n1: int) -> AdmissiblePair:
    """m = (1, 1)、n1 > 4 时的非对角可容许类 r = ((5n1²-4)/(n1(n1²+4)), 2/n1)"""
    if n1 <= 4:
        raise ValidationError('n1', '> 4', n1)
    return AdmissiblePair(Rational(5 * n1 ** 2 - 4, n1 * (n1 ** 2 + 4)), Rational(2, n1))


def worked_example_p(n1: int, n2: int) -> Poly:
    """该例子中 h(b) 的四次因子 p(b)"""
    coeffs = [
        (3 * n1 ** 8 * n2 - 4 * n1 ** 7 - 13 * n1 ** 6 * n2 + 268 * n1 ** 5 + 1252 * n1 ** 4 * n2
         - 544 * n1 ** 3 - 1456 * n1 ** 2 * n2 + 192 * n1 + 192 * n2),
        -4 * n1 * (9 * n1 ** 6 * n2 + 20 * n1 ** 5 + 482 * n1 ** 4 * n2 + 64 * n1 ** 3
                   - 464 * n1 ** 2 * n2 - 64 * n1 + 224 * n2),
        16 * (n1 ** 7 + 79 * n1 ** 6 * n2 - 17 * n1 ** 5 - 35 * n1 ** 4 * n2 + 56 * n1 ** 3
              + 32 * n1 ** 2 * n2 - 16 * n1 - 16 * n2),
        -4 * n1 * (63 * n1 ** 6 * n2 - 20 * n1 ** 5 + 106 * n1 ** 4 * n2 - 64 * n1 ** 3
                   - 16 * n1 ** 2 * n2 + 64 * n1 - 32 * n2),
        (21 * n1 ** 8 * n2 - 12 * n1 ** 7 + 21 * n1 ** 6 * n2 + 4 * n1 ** 5 + 268 * n1 ** 4 * n2
         - 352 * n1 ** 3 - 208 * n1 ** 2 * n2 + 64 * n1 + 64 * n2),
    ]
    return Poly(list(reversed(coeffs)), B, domain=QQ)


def worked_example_h(n1: int, n2: int) -> Poly:
    """4(n1 - 2b)p(b) / (9 n1^5 (n1²+4)² n2)"""
    scale = Rational(4, 9 * n1 ** 5 * (n1 ** 2 + 4) ** 2 * n2)
    return (Poly(n1 - 2 * B, B, domain=QQ) * worked_example_p(n1, n2)).mul_ground(scale)
