#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Kähler-Einstein 与 Kähler-Ricci 孤子模块

功能：
1. KE 存在性的丢番图判据（整数多项式恒等式）与独立的积分判据
2. 四参数 KE 族 (p1, q1, p2, q2) 生成器，复现附录表格
3. 孤子常数 λ、c 的计算（c = 0 精确判定，否则二分求根）
4. 动量轮廓 F(z) 的采样与端点条件校验
"""

import logging
from dataclasses import dataclass, field
from math import gcd
from typing import List, Sequence, Tuple

import numpy as np
import pandas as pd
from mpmath import mp
from sympy import Poly, QQ, Rational

from .exact_arith import T, integrate_poly, bisect_bracket, rat_str, DEFAULT_TOL, DEFAULT_MAX_ITER
from .exceptions import InternalInconsistency, ScaleOverflow, ValidationError
from .orbifold import AdmissiblePair, KSOrbifold, fano_index, is_log_fano, require_log_fano

logger = logging.getLogger(__name__)

TABLE_COLUMNS = ['p1', 'q1', 'p2', 'q2', 'n1', 'n2', 'm0', 'minf', 'm', 'v0', 'vinf', 'index']
MAX_DOUBLINGS = 60
PROFILE_TOL = 1e-8
BASE_DPS = 40


@dataclass(frozen=True)
class KEFamilyParams:
    """r_i = p_i/q_i，0 < p1 < q1，0 < |p2| < q2，且均为既约分数"""

    p1: int
    q1: int
    p2: int
    q2: int

    def __post_init__(self):
        p1, q1, p2, q2 = self.p1, self.q1, self.p2, self.q2
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (p1, q1, p2, q2)):
            raise ValidationError('params', '必须是整数', (p1, q1, p2, q2))
        if not 0 < p1 < q1:
            raise ValidationError('p1', '0 < p1 < q1', (p1, q1))
        if not 0 < abs(p2) < q2:
            raise ValidationError('p2', '0 < |p2| < q2', (p2, q2))
        if gcd(p1, q1) != 1 or gcd(abs(p2), q2) != 1:
            raise ValidationError('params', 'p_i/q_i 必须是既约分数', (p1, q1, p2, q2))

    @property
    def r(self) -> AdmissiblePair:
        return AdmissiblePair(Rational(self.p1, self.q1), Rational(self.p2, self.q2))

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return self.p1, self.q1, self.p2, self.q2


@dataclass(frozen=True)
class SolitonConstant:
    """孤子常数 c：精确为零，或者落在浮点区间 [lo, hi] 内"""

    exact_zero: bool
    lo: float = 0.0
    hi: float = 0.0

    @property
    def value(self) -> float:
        return 0.0 if self.exact_zero else (self.lo + self.hi) / 2

    def to_dict(self) -> dict:
        if self.exact_zero:
            return {'kind': 'exact_zero', 'value': 0}
        return {'kind': 'bracketed', 'lo': self.lo, 'hi': self.hi, 'value': self.value}


@dataclass
class SolitonResult:
    """孤子计算结果"""

    lam: Rational
    c: SolitonConstant
    g0: Rational
    profile_ok: bool = False
    sample_profile: List[Tuple[float, float]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            'lambda': rat_str(self.lam),
            'c': self.c.to_dict(),
            'G0': rat_str(self.g0),
            'profile_ok': self.profile_ok,
            'samples': len(self.sample_profile),
        }


def ke_polynomial_value(n1: int, n2: int, m0: int, minf: int) -> int:
    """KE 判据中的整数多项式（为零即满足 Futaki 型条件）"""
    return (24 * (m0 ** 3 * minf ** 2 - m0 ** 2 * minf ** 3)
            - 8 * (n1 + n2) * (m0 ** 3 * minf - m0 ** 2 * minf ** 2 + m0 * minf ** 3)
            + 3 * n1 * n2 * (m0 ** 3 - m0 ** 2 * minf + m0 * minf ** 2 - minf ** 3))


def ke_condition(orb: KSOrbifold) -> bool:
    """log Fano 且整数多项式恒等式成立"""
    return is_log_fano(orb) and ke_polynomial_value(orb.n1, orb.n2, orb.m0, orb.minf) == 0


def soliton_lambda(orb: KSOrbifold) -> Rational:
    """2λ = 1/m0 + 1/m∞"""
    return (Rational(1, orb.m0) + Rational(1, orb.minf)) / 2


def soliton_r(orb: KSOrbifold) -> AdmissiblePair:
    """r_i = (1/m0 + 1/m∞) / (4/n_i + 1/m0 - 1/m∞)

    Raises:
        NotLogFano: 非 log Fano
    """
    require_log_fano(orb)
    inv0, invinf = Rational(1, orb.m0), Rational(1, orb.minf)
    values = [(inv0 + invinf) / (Rational(4, n_i) + inv0 - invinf) for n_i in orb.n]
    return AdmissiblePair(*values).check_signs(orb)


def _family_factors(params: KEFamilyParams) -> Tuple[int, int, int, int]:
    p1, q1, p2, q2 = params.as_tuple()
    plus = 3 * q1 * q2 + p1 * p2 + p1 * q2 + p2 * q1
    minus = 3 * q1 * q2 + p1 * p2 - p1 * q2 - p2 * q1
    first = 3 * q1 ** 2 * q2 + 2 * p1 * p2 * q1 + p1 ** 2 * q2
    second = 3 * q1 * q2 ** 2 + 2 * p1 * p2 * q2 + p2 ** 2 * q1
    return plus, minus, first, second


def ke_family(params: KEFamilyParams) -> Tuple[KSOrbifold, AdmissiblePair]:
    """四参数族中的 KE 轨形（四个整数除以它们的最大公因子 k）

    Raises:
        InternalInconsistency: 生成结果未通过 KE 判据或 r 不一致
    """
    plus, minus, first, second = _family_factors(params)
    n1 = 2 * params.p1 * minus * plus * second
    n2 = 2 * params.p2 * minus * plus * first
    m0 = plus * first * second
    minf = minus * first * second
    k = gcd(abs(n1), abs(n2), m0, minf)
    orb = KSOrbifold(n1 // k, n2 // k, m0 // k, minf // k)
    r = params.r

    if not ke_condition(orb):
        raise InternalInconsistency('ke_family', f'{orb} 未通过 KE 判据', {'params': params.as_tuple()})
    if soliton_r(orb) != r:
        raise InternalInconsistency('ke_family', f'{orb} 的 r 与参数不一致', {'params': params.as_tuple()})
    logger.debug("ke_family %s -> %s (k=%d)", params.as_tuple(), orb, k)
    return orb, r


def ke_verify_integral(orb: KSOrbifold, r: AdmissiblePair) -> bool:
    """∫_{-1}^{1} ((1/m∞ - 1/m0) - (1/m0 + 1/m∞)t)(1 + r1 t)(1 + r2 t) dt == 0"""
    inv0, invinf = Rational(1, orb.m0), Rational(1, orb.minf)
    weight = Poly([-(inv0 + invinf), invinf - inv0], T, domain=QQ)
    return integrate_poly(weight * r.p_c(), -1, 1) == 0


def ks_variation(p: int, q: int) -> KSOrbifold:
    """r1 = -r2 = p/q 的 KE 轨形：q 奇数为 (2p, -2p, q, q)，q 偶数为 (p, -p, q/2, q/2)"""
    if not (0 < p < q and gcd(p, q) == 1):
        raise ValidationError('p/q', '0 < p < q 且互素', (p, q))
    if q % 2:
        return KSOrbifold(2 * p, -2 * p, q, q)
    return KSOrbifold(p, -p, q // 2, q // 2)


def ke_search(n1: int, n2: int, bound: int) -> List[Tuple[int, int]]:
    """搜索 1 <= m0, m∞ <= bound 中满足 KE 判据的 (m0, m∞)

    只收集证据，不对唯一性做任何断言
    """
    if bound < 1:
        raise ValidationError('bound', '>= 1', bound)
    hits = []
    for m0 in range(1, bound + 1):
        for minf in range(1, bound + 1):
            if ke_polynomial_value(n1, n2, m0, minf) != 0:
                continue
            if gcd(abs(n1), abs(n2), m0, minf) != 1:
                continue
            if ke_condition(KSOrbifold(n1, n2, m0, minf)):
                hits.append((m0, minf))
    logger.info("ke_search n=(%d, %d) bound=%d: %d hits", n1, n2, bound, len(hits))
    return hits


def appendix_params() -> List[KEFamilyParams]:
    """附录表格的参数行（28 行数据），按印刷顺序：p2/q2 = -1/15 ... -1/2，然后 1/2 ... 1/15"""
    rows = [KEFamilyParams(1, 2, -1, q2) for q2 in range(15, 1, -1)]
    rows += [KEFamilyParams(1, 2, 1, q2) for q2 in range(2, 16)]
    return rows


def ke_table(params_list: Sequence[KEFamilyParams]) -> pd.DataFrame:
    """每组参数一行：p1,q1,p2,q2,n1,n2,m0,minf,m,v0,vinf,index"""
    records = []
    for params in params_list:
        orb, _ = ke_family(params)
        records.append(list(params.as_tuple()) + [orb.n1, orb.n2, orb.m0, orb.minf,
                                                   orb.m, orb.v0, orb.vinf, fano_index(orb)])
    return pd.DataFrame(records, columns=TABLE_COLUMNS, dtype=object)


# ---------------------------------------------------------------- 孤子

def soliton_integrand(orb: KSOrbifold) -> Tuple[Poly, Rational]:
    """(t - t0)·g(t)，其中 g = -(1/m0 + 1/m∞)·p_c，返回 (多项式, t0)"""
    t0 = Rational(orb.m0 - orb.minf, orb.m0 + orb.minf)
    scale = Rational(1, orb.m0) + Rational(1, orb.minf)
    g = soliton_r(orb).p_c().mul_ground(-scale)
    return Poly([1, -t0], T, domain=QQ) * g, t0


def g_zero(orb: KSOrbifold) -> Rational:
    """G(0) 的精确值"""
    integrand, _ = soliton_integrand(orb)
    return integrate_poly(integrand, -1, 1)


def _mpf(value):
    if isinstance(value, (int, float)):
        return mp.mpf(value)
    value = Rational(value)
    return mp.mpf(value.p) / value.q


def _working_dps(k, degree: int) -> int:
    # k 很小时闭式中的 1/k^{i+1} 项相互抵消，按 |k| 的量级补足精度
    if k == 0:
        return BASE_DPS
    return BASE_DPS + int((degree + 1) * max(0, -float(mp.log10(abs(k)))))


def _exp_antiderivative(derivatives: Sequence[Sequence[float]], k, z):
    # Σ_i (-1)^i P^{(i)}(z) / k^{i+1}，不含因子 e^{kz}
    total = mp.mpf(0)
    for i, coeffs in enumerate(derivatives):
        value = mp.polyval(coeffs, z)
        total += (-1) ** i * value / k ** (i + 1)
    return total


def _derivative_coeffs(p: Poly) -> List[List]:
    chain, current = [], p
    while not current.is_zero:
        chain.append([_mpf(c) for c in current.all_coeffs()])
        current = current.diff(T)
    return chain


def exp_poly_integral(p: Poly, k, lo, hi, shift: Rational = Rational(0)):
    """∫_{lo}^{hi} e^{k(t - shift)}·p(t) dt

    分部积分闭式：∫ e^{kt} p = e^{kt} Σ_i (-1)^i p^{(i)}(t)/k^{i+1}；k = 0 时走精确多项式积分
    """
    if k == 0:
        return _mpf(integrate_poly(p, lo, hi))
    with mp.workdps(_working_dps(k, p.degree())):
        k = mp.mpf(k)
        derivatives = _derivative_coeffs(p)
        s = _mpf(shift)
        lo_m, hi_m = _mpf(lo), _mpf(hi)
        upper = mp.exp(k * (hi_m - s)) * _exp_antiderivative(derivatives, k, hi_m)
        lower = mp.exp(k * (lo_m - s)) * _exp_antiderivative(derivatives, k, lo_m)
        return +(upper - lower)


def scaled_soliton_function(orb: KSOrbifold):
    """返回 k ↦ e^{-k t0}·G(k)，该函数严格单调递减"""
    integrand, t0 = soliton_integrand(orb)

    def evaluate(k):
        return exp_poly_integral(integrand, k, -1, 1, shift=t0)

    return evaluate


def soliton_constant(orb: KSOrbifold, tol: float = DEFAULT_TOL,
                     max_iter: int = DEFAULT_MAX_ITER, samples: int = 101) -> SolitonResult:
    """计算 λ 与孤子常数 c，并校验动量轮廓

    Raises:
        NotLogFano: 非 log Fano
        ScaleOverflow: 外扩加倍 60 次仍未找到变号区间
    """
    require_log_fano(orb)
    lam = soliton_lambda(orb)
    g0 = g_zero(orb)

    if ke_condition(orb):
        c = SolitonConstant(exact_zero=True)
    else:
        phi = scaled_soliton_function(orb)
        lo, hi = -1.0, 1.0
        doublings = 0
        while phi(lo) <= 0:
            lo *= 2
            doublings += 1
            if doublings > MAX_DOUBLINGS:
                raise ScaleOverflow(side='lo', orbifold=str(orb))
        while phi(hi) >= 0:
            hi *= 2
            doublings += 1
            if doublings > MAX_DOUBLINGS:
                raise ScaleOverflow(side='hi', orbifold=str(orb))
        logger.debug("soliton bracket for %s: [%s, %s] after %d doublings", orb, lo, hi, doublings)
        lo, hi = bisect_bracket(phi, lo, hi, tol, max_iter)
        c = SolitonConstant(exact_zero=False, lo=lo, hi=hi)

    result = SolitonResult(lam=lam, c=c, g0=g0)
    result.profile_ok, result.sample_profile = soliton_profile(orb, c.value, samples)
    return result


def profile_values(orb: KSOrbifold, c: float, zs: Sequence[float]) -> Tuple[List, List]:
    """F(z) = e^{-cz}∫_{-1}^{z} e^{ct}(t - t0)g(t)dt 及由 ODE 得到的 F'(z) = P(z) - cF(z)"""
    integrand, _ = soliton_integrand(orb)
    values, slopes = [], []
    with mp.workdps(_working_dps(c, integrand.degree())):
        coeffs = [_mpf(a) for a in integrand.all_coeffs()]
        for z in zs:
            z_m = _mpf(z)
            if c == 0:
                f_val = exp_poly_integral(integrand, 0, -1, Rational(z))
            else:
                f_val = exp_poly_integral(integrand, c, -1, Rational(z), shift=Rational(z))
            values.append(f_val)
            slopes.append(mp.polyval(coeffs, z_m) - mp.mpf(c) * f_val)
    return values, slopes


def profile_residuals(orb: KSOrbifold, c: float) -> dict:
    """端点条件残差：F(±1)、F'(-1) - 2p_c(-1)/m∞、F'(1) + 2p_c(1)/m0"""
    p_c = soliton_r(orb).p_c()
    (f_lo, f_hi), (d_lo, d_hi) = profile_values(orb, c, [-1, 1])
    target_lo = Rational(2) * p_c.eval(-1) / orb.minf
    target_hi = Rational(2) * p_c.eval(1) / orb.m0
    return {
        'F(-1)': float(abs(f_lo)),
        'F(1)': float(abs(f_hi)),
        "F'(-1)": float(abs(d_lo - _mpf(target_lo))),
        "F'(1)": float(abs(d_hi + _mpf(target_hi))),
    }


def soliton_profile(orb: KSOrbifold, c: float, samples: int = 101) -> Tuple[bool, List[Tuple[float, float]]]:
    """在 [-1, 1] 的均匀网格上采样 F(z)，并校验内部正性与端点条件

    Returns:
        (profile_ok, [(z, F(z)), ...])
    """
    require_log_fano(orb)
    if samples < 3:
        raise ValidationError('samples', '>= 3', samples)
    grid = np.linspace(-1.0, 1.0, samples)
    # 网格点转为精确有理数，端点恰为 ±1
    zs = [Rational(-1)] + [Rational(float(z)) for z in grid[1:-1]] + [Rational(1)]
    values, _ = profile_values(orb, c, zs)
    sample_profile = [(float(z), float(v)) for z, v in zip(zs, values)]

    residuals = profile_residuals(orb, c)
    interior_positive = all(v > 0 for _, v in sample_profile[1:-1])
    endpoints_ok = all(r < PROFILE_TOL for r in residuals.values())
    logger.debug("profile %s c=%s: positive=%s residuals=%s", orb, c, interior_positive, residuals)
    return interior_positive and endpoints_ok, sample_profile


def profile_frame(sample_profile: Sequence[Tuple[float, float]]) -> pd.DataFrame:
    """采样结果转为 DataFrame（列 z, F），供 CSV 输出"""
    return pd.DataFrame(list(sample_profile), columns=['z', 'F'])
