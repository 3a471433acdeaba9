#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
S³_w-join 与 Yamazaki 纤维联接模块

功能：
1. 对角可容许判定与 join 数据 (w, l, 𝔰) 的识别
2. join 的光滑性与 H⁴ 阶数
3. log Fano 情形下反典范极化对应的 r
4. Yamazaki 纤维联接的整数矩阵 K
5. 整性引理 x²(x²+4)/(5x²-4)
"""

import logging
from dataclasses import dataclass
from math import gcd
from typing import Any, Dict, List, Optional, Tuple

from sympy import Rational

from .exact_arith import RatLike, rat_str, to_rat
from .exceptions import (
    GcdHypothesisFailed, InternalInconsistency, NotAdmissible, ValidationError, WrongSignRegime
)
from .orbifold import AdmissiblePair, KSOrbifold, require_log_fano, sign

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JoinData:
    """S³_w-join 参数"""

    w0: int
    winf: int
    l0: int
    linf: int
    s_frak: int
    smooth: bool
    class_multiplier: int
    h4_order: int

    def __post_init__(self):
        for name in ('w0', 'winf', 'l0', 'linf', 's_frak', 'class_multiplier', 'h4_order'):
            if getattr(self, name) < 1:
                raise ValidationError(name, '必须为正整数', getattr(self, name))
        if gcd(self.w0, self.winf) != 1 or gcd(self.l0, self.linf) != 1:
            raise ValidationError('JoinData', 'w 与 l 须各自互素', (self.w, self.l))

    @property
    def w(self) -> Tuple[int, int]:
        return self.w0, self.winf

    @property
    def l(self) -> Tuple[int, int]:
        return self.l0, self.linf

    def to_dict(self) -> Dict[str, Any]:
        return {
            'w': list(self.w),
            'l': list(self.l),
            's': self.s_frak,
            'smooth': self.smooth,
            'multiplier': self.class_multiplier,
            'h4_order': self.h4_order,
        }


def is_diagonally_admissible(orb: KSOrbifold, r: AdmissiblePair) -> bool:
    return orb.n1 * orb.n2 > 0 and r.r1 == r.r2


def smooth_join_check(l: Tuple[int, int], w: Tuple[int, int]) -> bool:
    """join 光滑当且仅当 gcd(l∞, w0·w∞) = 1"""
    return gcd(l[1], w[0] * w[1]) == 1


def join_n(orb: KSOrbifold) -> int:
    """n = sign(n1)·gcd(|n1|, |n2|)"""
    return sign(orb.n1) * gcd(abs(orb.n1), abs(orb.n2))


def join_identify(orb: KSOrbifold, r: RatLike) -> JoinData:
    """由对角可容许类 r1 = r2 = r 识别 S³_w-join

    w0/w∞ = m0(1+r)/(m∞(1-r))，l∞·n = l0·(w0·m∞ - w∞·m0)

    Raises:
        WrongSignRegime: n1·n2 <= 0 或 sign(r) ≠ sign(n1)
        NotAdmissible: |r| 不在 (0, 1) 内
        GcdHypothesisFailed: gcd(m0, m∞, |n|) ≠ 1
        InternalInconsistency: m ≠ l∞/𝔰
    """
    r = to_rat(r)
    if orb.n1 * orb.n2 <= 0:
        raise WrongSignRegime('join 要求 n1·n2 > 0', n=orb.n)
    if not 0 < abs(r) < 1:
        raise NotAdmissible('需要 0 < |r| < 1', r=rat_str(r))
    if sign(r) != sign(orb.n1):
        raise WrongSignRegime('r 与 n 符号不同', r=rat_str(r), n=orb.n)
    n = join_n(orb)
    if gcd(orb.m0, orb.minf, abs(n)) != 1:
        raise GcdHypothesisFailed(m=(orb.m0, orb.minf), n=n)

    ratio = Rational(orb.m0) * (1 + r) / (orb.minf * (1 - r))
    w0, winf = int(ratio.p), int(ratio.q)
    d = w0 * orb.minf - winf * orb.m0
    if sign(d) != sign(n):
        raise InternalInconsistency('join_identify', 'w0·m∞ - w∞·m0 与 n 符号不同',
                                    {'w': (w0, winf), 'n': n})
    l_ratio = Rational(d, n)
    linf, l0 = int(l_ratio.p), int(l_ratio.q)

    s_frak = gcd(linf, abs(w0 * orb.vinf - winf * orb.v0))
    if linf != orb.m * s_frak:
        raise InternalInconsistency('join_identify', f'm = {orb.m} ≠ l∞/𝔰 = {linf}/{s_frak}')

    join = JoinData(
        w0=w0, winf=winf, l0=l0, linf=linf, s_frak=s_frak,
        smooth=smooth_join_check((l0, linf), (w0, winf)),
        class_multiplier=orb.m * gcd(s_frak, w0 * orb.vinf),
        h4_order=w0 * winf * l0 ** 2 * linf ** 2,
    )
    logger.debug("join_identify %s r=%s: %s", orb, rat_str(r), join.to_dict())
    return join


def join_round_trip(orb: KSOrbifold, join: JoinData) -> Tuple[Rational, bool]:
    """由 join 数据反求 r，并检查 l∞·n = l0·(w0·m∞ - w∞·m0)"""
    d = join.w0 * orb.minf - join.winf * orb.m0
    r = Rational(d, join.w0 * orb.minf + join.winf * orb.m0)
    return r, join.linf * join_n(orb) == join.l0 * d


def primitive_class_smoothness(orb: KSOrbifold, join: JoinData) -> bool:
    """横向类本原（乘数为 1）时 join 光滑且 gcd(m0, m∞) = 1

    乘数不为 1 时不做断言，返回 True；返回 False 表示违反定理，诊断数据写入日志
    """
    if join.class_multiplier != 1:
        return True
    smooth = smooth_join_check(join.l, join.w)
    ok = smooth and gcd(orb.m0, orb.minf) == 1
    if not ok:
        logger.warning("本原类 join 一致性检查失败: %s", {
            'orbifold': orb.to_dict(), 'join': join.to_dict(),
            'smooth': smooth, 'm': gcd(orb.m0, orb.minf),
        })
    return ok


def log_fano_join_r(orb: KSOrbifold) -> Rational:
    """n1 = n2 的 log Fano 情形下 c1^orb 对应的对角参数 r

    由 n(1/m∞ + (1/m0 + 1/m∞)(1-r)/(2r)) = 2 解出

    Raises:
        WrongSignRegime: n1 ≠ n2
        NotLogFano: 非 log Fano
    """
    if orb.n1 != orb.n2:
        raise WrongSignRegime('反典范极化为 join 商当且仅当 n1 = n2', n=orb.n)
    require_log_fano(orb)
    s = Rational(1, orb.m0) + Rational(1, orb.minf)
    u = (Rational(2, orb.n1) - Rational(1, orb.minf)) / s
    r = 1 / (1 + 2 * u)
    if not 0 < abs(r) < 1:
        raise NotAdmissible('c1^orb 不是可容许类', r=rat_str(r))
    return r


def yamazaki_feasible(n1: int, n2: int, r: AdmissiblePair) -> Optional[List[List[int]]]:
    """求正整数矩阵 K = [[k1¹, k1²], [k2¹, k2²]]，k1^i - k2^i = n_i，(k1^i - k2^i)/(k1^i + k2^i) = r_i

    各因子独立：S = n_i/r_i 须为与 n_i 同奇偶的正整数，且两项均为正
    """
    columns = []
    for n_i, r_i in ((n1, r.r1), (n2, r.r2)):
        total = Rational(n_i) / r_i
        if total.q != 1 or total <= 0 or (int(total) - n_i) % 2:
            return None
        k1, k2 = (int(total) + n_i) // 2, (int(total) - n_i) // 2
        if k1 <= 0 or k2 <= 0:
            return None
        columns.append((k1, k2))
    return [[columns[0][0], columns[1][0]], [columns[0][1], columns[1][1]]]


def integrality_lemma(x: int) -> bool:
    """x²(x²+4)/(5x²-4) 是否为整数"""
    if x < 1:
        raise ValidationError('x', '>= 1', x)
    return (x * x * (x * x + 4)) % (5 * x * x - 4) == 0


def lemma_scan(lo: int, hi: int) -> List[int]:
    """[lo, hi] 内使 x²(x²+4)/(5x²-4) 为整数的 x"""
    if lo < 1 or hi < lo:
        raise ValidationError('range', '1 <= lo <= hi', (lo, hi))
    return [x for x in range(lo, hi + 1) if integrality_lemma(x)]
