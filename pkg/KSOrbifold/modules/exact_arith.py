#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
精确算术模块

功能：
1. 有理数（sympy.Rational）与有理系数单变量多项式（sympy.Poly, domain=QQ）
2. 有理函数 RatFunc（分子分母互素、分母首项系数为正）
3. 多项式定积分与 (t+b)^{-s} 型极点积分的精确计算
4. 基于 Sturm 序列的实根隔离（有理根优先精确给出）
5. 2x2 线性方程组的 Cramer 法则求解
6. 单调超越函数的二分求根
"""

import logging
import re
from dataclasses import dataclass
from math import factorial
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy
from sympy import Poly, QQ, Rational

from .exceptions import (
    DegreeTooHigh, ZeroPolynomial, SingularSystem, NoSignChange,
    MaxIterations, ValidationError
)

logger = logging.getLogger(__name__)

Rat = Rational
RatLike = Union[int, str, Rational]

# 积分变量 t 与极点参数 b
T = sympy.Symbol('t')
B = sympy.Symbol('b')

# 零多项式的次数
ZERO_DEGREE = sympy.S.NegativeInfinity

DEFAULT_ISOLATION_BITS = 64
DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 200

RATIONAL_TEXT = re.compile(r'[+-]?\d+(\s*/\s*[+-]?\d+)?')


def to_rat(value: RatLike) -> Rational:
    """将整数、"num/den" 字符串或 Rational 规范化为 Rational

    浮点数会被拒绝，避免引入舍入误差
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise ValidationError('rational', '必须是整数或 num/den 形式', value)
    if isinstance(value, str) and not RATIONAL_TEXT.fullmatch(value.strip()):
        raise ValidationError('rational', '必须是整数或 num/den 形式', value)
    try:
        result = Rational(value)
    except (TypeError, ValueError, sympy.SympifyError):
        raise ValidationError('rational', '必须是整数或 num/den 形式', value)
    if not result.is_Rational:
        raise ValidationError('rational', '必须是有理数', value)
    return result


def rat_str(value: Rational) -> str:
    """Rational 的 "num/den" 文本形式（整数不带分母）"""
    value = Rational(value)
    if value.q == 1:
        return str(value.p)
    return f"{value.p}/{value.q}"


def poly(coeffs: Sequence[RatLike], gen: sympy.Symbol = T) -> Poly:
    """由升幂系数列表构造 QQ 上的多项式（下标即次数）"""
    return Poly([to_rat(c) for c in reversed(list(coeffs))] or [0], gen, domain=QQ)


def coeffs_ascending(p: Poly) -> List[Rational]:
    """升幂系数列表，零多项式返回空列表"""
    if p.is_zero:
        return []
    return [Rational(c) for c in reversed(p.all_coeffs())]


def as_poly(expr, gen: sympy.Symbol) -> Poly:
    """把表达式（或数值常数）转成 QQ 上关于 gen 的多项式"""
    return Poly(sympy.sympify(expr), gen, domain=QQ)


def primitive_integer_form(p: Poly) -> Poly:
    """清分母并提取内容，得到首项系数为正的本原整系数多项式"""
    if p.is_zero:
        raise ZeroPolynomial()
    _, prim = p.clear_denoms(convert=True)
    prim = prim.primitive()[1]
    if prim.LC() < 0:
        prim = -prim
    return prim


def integrate_poly(p: Poly, a: RatLike, b: RatLike) -> Rational:
    """多项式在 [a, b] 上的精确定积分"""
    antiderivative = p.integrate()
    return Rational(antiderivative.eval(to_rat(b)) - antiderivative.eval(to_rat(a)))


@dataclass(frozen=True)
class RatFunc:
    """有理函数 num/den

    通过 RatFunc.make 构造时自动约分，分母首一（首项系数为 1）
    """

    num: Poly
    den: Poly

    @classmethod
    def make(cls, num: Poly, den: Poly) -> 'RatFunc':
        if den.is_zero:
            raise ValidationError('RatFunc.den', '分母不能为零多项式')
        gen = den.gen
        num = Poly(num, gen, domain=QQ)
        den = Poly(den, gen, domain=QQ)
        if num.is_zero:
            return cls(Poly(0, gen, domain=QQ), Poly(1, gen, domain=QQ))
        num, den = num.cancel(den, include=True)
        num = Poly(num, gen, domain=QQ)
        den = Poly(den, gen, domain=QQ)
        lc = den.LC()
        return cls(num.quo_ground(lc), den.quo_ground(lc))

    @classmethod
    def from_poly(cls, p: Poly) -> 'RatFunc':
        return cls.make(p, Poly(1, p.gen, domain=QQ))

    @classmethod
    def constant(cls, c: RatLike, gen: sympy.Symbol = B) -> 'RatFunc':
        return cls.make(Poly(to_rat(c), gen, domain=QQ), Poly(1, gen, domain=QQ))

    @property
    def gen(self) -> sympy.Symbol:
        return self.den.gen

    def is_zero(self) -> bool:
        return self.num.is_zero

    def is_polynomial(self) -> bool:
        return self.den.degree() == 0

    def _lift(self, other) -> 'RatFunc':
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc.from_poly(Poly(other, self.gen, domain=QQ))
        return RatFunc.constant(other, self.gen)

    def __add__(self, other) -> 'RatFunc':
        other = self._lift(other)
        return RatFunc.make(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> 'RatFunc':
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> 'RatFunc':
        return self + (-self._lift(other))

    def __rsub__(self, other) -> 'RatFunc':
        return self._lift(other) - self

    def __mul__(self, other) -> 'RatFunc':
        other = self._lift(other)
        return RatFunc.make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def evaluate(self, x: RatLike) -> Rational:
        x = to_rat(x)
        d = self.den.eval(x)
        if d == 0:
            raise ValidationError('x', '不能是分母的零点', x)
        return Rational(self.num.eval(x)) / Rational(d)

    def __call__(self, x: RatLike) -> Rational:
        return self.evaluate(x)


def integrate_shifted_pole(q: Poly, s: int) -> RatFunc:
    """计算 b ↦ ∫_{-1}^{1} q(t)(t+b)^{-s} dt 的精确有理函数

    在 t = -b 处 Taylor 展开 q(t) = Σ_j q^{(j)}(-b)/j!·(t+b)^j 后逐项积分；
    deg q < s - 1 时不出现对数项。结果分母整除 (b-1)^{s-1}(b+1)^{s-1}。

    Args:
        q: 关于 T 的多项式
        s: 极点阶数（正整数）

    Returns:
        关于 B 的有理函数

    Raises:
        DegreeTooHigh: deg q >= s - 1
    """
    if s < 1:
        raise ValidationError('s', '必须为正整数', s)
    q = Poly(q, T, domain=QQ)
    if q.is_zero:
        return RatFunc.constant(0, B)
    if q.degree() >= s - 1:
        raise DegreeTooHigh(degree=q.degree(), s=s)

    total = RatFunc.constant(0, B)
    derivative = q
    for j in range(q.degree() + 1):
        taylor = as_poly(derivative.as_expr().subs(T, -B), B).mul_ground(Rational(1, factorial(j)))
        # ∫ (t+b)^{e-1} dt = ((b+1)^e - (b-1)^e)/e，e = j - s + 1 <= -1
        e = j - s + 1
        k = -e
        lower = Poly(B - 1, B, domain=QQ) ** k
        upper = Poly(B + 1, B, domain=QQ) ** k
        term = RatFunc.make((lower - upper) * taylor, lower * upper)
        total = total + term * Rational(1, e)
        derivative = derivative.diff(T)
    return total


class Region:
    """实根隔离的范围：全体实数、[-1,1] 的补集或开区间 (lo, hi)"""

    ALL_REALS = 'all'
    OUTSIDE_UNIT = 'outside_unit'
    INTERVAL = 'interval'

    def __init__(self, kind: str, lo: Optional[RatLike] = None, hi: Optional[RatLike] = None):
        if kind not in (self.ALL_REALS, self.OUTSIDE_UNIT, self.INTERVAL):
            raise ValidationError('region', 'all / outside_unit / interval', kind)
        self.kind = kind
        self.lo = to_rat(lo) if lo is not None else None
        self.hi = to_rat(hi) if hi is not None else None
        if kind == self.INTERVAL and (self.lo is None or self.hi is None or not self.lo < self.hi):
            raise ValidationError('region', '区间需要 lo < hi', (lo, hi))

    @classmethod
    def all_reals(cls) -> 'Region':
        return cls(cls.ALL_REALS)

    @classmethod
    def outside_unit(cls) -> 'Region':
        return cls(cls.OUTSIDE_UNIT)

    @classmethod
    def interval(cls, lo: RatLike, hi: RatLike) -> 'Region':
        return cls(cls.INTERVAL, lo, hi)

    def contains(self, x: Rational) -> bool:
        if self.kind == self.ALL_REALS:
            return True
        if self.kind == self.OUTSIDE_UNIT:
            return bool(abs(x) > 1)
        return bool(self.lo < x < self.hi)

    def pieces(self, bound: Rational) -> List[Tuple[Rational, Rational]]:
        """与 (-bound, bound) 相交后的有界开区间列表"""
        if self.kind == self.ALL_REALS:
            return [(-bound, bound)]
        if self.kind == self.OUTSIDE_UNIT:
            if bound <= 1:
                return []
            return [(-bound, Rational(-1)), (Rational(1), bound)]
        lo, hi = max(self.lo, -bound), min(self.hi, bound)
        return [(lo, hi)] if lo < hi else []

    def __repr__(self) -> str:
        if self.kind == self.INTERVAL:
            return f"Region(({self.lo}, {self.hi}))"
        return f"Region({self.kind})"


@dataclass(frozen=True)
class IsolatingInterval:
    """只含目标多项式一个实根的区间 [lo, hi]"""

    lo: Rational
    hi: Rational
    exact_root: Optional[Rational] = None
    is_rational: bool = False

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValidationError('IsolatingInterval', 'lo < hi', (self.lo, self.hi))

    @property
    def width(self) -> Rational:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Rational:
        return self.exact_root if self.is_rational else (self.lo + self.hi) / 2

    def to_dict(self) -> dict:
        return {
            'lo': rat_str(self.lo),
            'hi': rat_str(self.hi),
            'exact': rat_str(self.exact_root) if self.is_rational else None,
            'approx': float(self.midpoint),
        }


def sign_changes(values: Sequence) -> int:
    """序列的变号次数（忽略零）"""
    nonzero = [v for v in values if v != 0]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if (a > 0) != (b > 0))


def sturm_count(chain: Sequence[Poly], lo: Rational, hi: Rational) -> int:
    """Sturm 定理：(lo, hi] 内互异实根个数 V(lo) - V(hi)"""
    return (sign_changes([g.eval(lo) for g in chain])
            - sign_changes([g.eval(hi) for g in chain]))


def root_bound(p: Poly) -> Rational:
    """Cauchy 根界（严格大于所有实根的绝对值）"""
    coeffs = [Rational(c) for c in p.all_coeffs()]
    lead = abs(coeffs[0])
    return 2 + max((abs(c) / lead for c in coeffs[1:]), default=Rational(0))


def _refine_by_sign(p: Poly, lo: Rational, hi: Rational, width: Rational) -> Tuple[Rational, Rational]:
    # p 在 lo、hi 处非零且异号，区间内只有一个根
    sign_lo = p.eval(lo) > 0
    while hi - lo >= width:
        mid = (lo + hi) / 2
        if (p.eval(mid) > 0) == sign_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _isolate_irrational(core: Poly, lo: Rational, hi: Rational,
                        width: Rational) -> List[IsolatingInterval]:
    chain = core.sturm()
    found = []
    stack = [(lo, hi, sturm_count(chain, lo, hi))]
    while stack:
        a, c, count = stack.pop()
        if count == 0:
            continue
        if count == 1:
            a, c = _refine_by_sign(core, a, c, width)
            found.append(IsolatingInterval(a, c))
            continue
        mid = (a + c) / 2
        left = sturm_count(chain, a, mid)
        stack.append((a, mid, left))
        stack.append((mid, c, count - left))
    return found


def _exact_interval(chain: Sequence[Poly], sqf: Poly, root: Rational,
                    width: Rational) -> IsolatingInterval:
    # 半宽 width/4，区间宽度严格小于 width
    delta = width / 4
    while True:
        lo, hi = root - delta, root + delta
        if sqf.eval(lo) != 0 and sqf.eval(hi) != 0 and sturm_count(chain, lo, hi) == 1:
            return IsolatingInterval(lo, hi, root, True)
        delta /= 2


def sturm_isolate(p: Poly, region: Optional[Region] = None,
                  bits: int = DEFAULT_ISOLATION_BITS) -> List[IsolatingInterval]:
    """在给定范围内隔离 p 的全部互异实根

    有理根先由一次因子精确求出；其余根用 Sturm 序列二分隔离，
    再按符号二分细化到宽度小于 2^{-bits}。

    Args:
        p: 单变量多项式
        region: 隔离范围，默认全体实数
        bits: 区间宽度精度（二进制位）

    Returns:
        按左端点排序的隔离区间列表

    Raises:
        ZeroPolynomial: p 为零多项式
    """
    if p.is_zero:
        raise ZeroPolynomial()
    region = region or Region.all_reals()
    p = Poly(p, p.gen, domain=QQ)
    if p.degree() == 0:
        return []

    width = Rational(1, 2 ** bits)
    _, factors = p.factor_list()
    rational_roots = sorted(-Rational(f.nth(0)) / Rational(f.nth(1))
                            for f, _ in factors if f.degree() == 1)
    core = Poly(1, p.gen, domain=QQ)
    for f, _ in factors:
        if f.degree() > 1:
            core = core * f

    results = []
    if rational_roots:
        sqf = p.sqf_part()
        chain = sqf.sturm()
        for root in rational_roots:
            if region.contains(root):
                results.append(_exact_interval(chain, sqf, root, width))

    if core.degree() > 0:
        for lo, hi in region.pieces(root_bound(core)):
            results.extend(_isolate_irrational(core, lo, hi, width))

    results.sort(key=lambda iv: iv.lo)
    logger.debug("sturm_isolate: deg=%s region=%r rational=%d total=%d",
                 p.degree(), region, sum(iv.is_rational for iv in results), len(results))
    return results


def solve_2x2(a11: RatLike, a12: RatLike, a21: RatLike, a22: RatLike,
              c1: RatLike, c2: RatLike) -> Tuple[Rational, Rational]:
    """Cramer 法则求解 [[a11, a12], [a21, a22]]·(x, y) = (c1, c2)"""
    a11, a12, a21, a22, c1, c2 = (to_rat(v) for v in (a11, a12, a21, a22, c1, c2))
    det = a11 * a22 - a12 * a21
    if det == 0:
        raise SingularSystem(matrix=[[a11, a12], [a21, a22]])
    return (c1 * a22 - a12 * c2) / det, (a11 * c2 - c1 * a21) / det


def bisect_bracket(f: Callable[[float], float], lo: float, hi: float,
                   tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> Tuple[float, float]:
    """二分收缩变号区间，直到宽度小于 tol

    Returns:
        (lo, hi)，f 在两端异号（或某端恰为零时退化为该点）

    Raises:
        NoSignChange: f(lo)·f(hi) > 0
        MaxIterations: 迭代预算内未达到 tol
    """
    lo, hi = float(lo), float(hi)
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0:
        return lo, lo
    if f_hi == 0:
        return hi, hi
    if np.sign(float(f_lo)) == np.sign(float(f_hi)):
        raise NoSignChange(lo=lo, hi=hi, f_lo=float(f_lo), f_hi=float(f_hi))

    sign_lo = np.sign(float(f_lo))
    for _ in range(max_iter):
        if hi - lo < tol:
            return lo, hi
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:
            break
        f_mid = f(mid)
        if f_mid == 0:
            return mid, mid
        if np.sign(float(f_mid)) == sign_lo:
            lo = mid
        else:
            hi = mid
    if hi - lo < tol:
        return lo, hi
    raise MaxIterations(tol=tol, max_iter=max_iter, width=hi - lo)


def bisect_monotone(f: Callable[[float], float], lo: float, hi: float,
                    tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> float:
    """严格单调函数的零点（最终变号区间的中点）"""
    a, c = bisect_bracket(f, lo, hi, tol, max_iter)
    return (a + c) / 2
