#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
KS 轨形数据模型模块

功能：
1. KSOrbifold (n1, n2, m0, m∞) 及其导出量 m, v0, v∞
2. log Fano 判定、轨形第一陈类 c1^orb、Fano 指标
3. 可容许 Kähler 类 Ω_r 与 (r1, r2) 的相互转换
4. x 基与 y 基之间的坐标转换（y3 - x3 = n1·x1 + n2·x2）
5. 正则情形下 Kähler 锥判定
6. 按固定种子随机抽取可容许数据（性质扫描用）
"""

import logging
from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Any, Dict, Iterable, Tuple

from sympy import Poly, QQ, Rational, SympifyError

from .exact_arith import T, RatLike, to_rat, rat_str
from .exceptions import (
    ValidationError, NotLogFano, SignMismatch, NotAdmissible, ZeroTwist
)

logger = logging.getLogger(__name__)


def _as_int(name: str, value: Any) -> int:
    if isinstance(value, bool):
        raise ValidationError(name, '必须是整数', value)
    try:
        as_rat = Rational(value)
    except (TypeError, ValueError, SympifyError):
        raise ValidationError(name, '必须是整数', value)
    if as_rat.q != 1:
        raise ValidationError(name, '必须是整数', value)
    return int(as_rat)


def sign(x) -> int:
    # sympy 比较返回 BooleanTrue/BooleanFalse，先转成 bool
    return int(bool(x > 0)) - int(bool(x < 0))


@dataclass(frozen=True)
class KSOrbifold:
    """对数对 (S_n, Δ_m)：扭转整数 n1, n2 与分歧指标 m0, m∞"""

    n1: int
    n2: int
    m0: int
    minf: int

    def __post_init__(self):
        for name in ('n1', 'n2', 'm0', 'minf'):
            object.__setattr__(self, name, _as_int(name, getattr(self, name)))
        if self.n1 == 0 or self.n2 == 0:
            raise ValidationError('n', 'n1, n2 均不能为 0', (self.n1, self.n2))
        if self.m0 < 1 or self.minf < 1:
            raise ValidationError('m', 'm0, m∞ 均须 >= 1', (self.m0, self.minf))

    @property
    def m(self) -> int:
        return gcd(self.m0, self.minf)

    @property
    def v0(self) -> int:
        return self.m0 // self.m

    @property
    def vinf(self) -> int:
        return self.minf // self.m

    @property
    def n(self) -> Tuple[int, int]:
        return self.n1, self.n2

    def transpose(self) -> 'KSOrbifold':
        """交换两个 CP^1 因子"""
        return KSOrbifold(self.n2, self.n1, self.m0, self.minf)

    def invert_fiber(self) -> 'KSOrbifold':
        """交换零截面与无穷截面"""
        return KSOrbifold(-self.n1, -self.n2, self.minf, self.m0)

    def to_dict(self) -> Dict[str, int]:
        return {'n1': self.n1, 'n2': self.n2, 'm0': self.m0, 'minf': self.minf}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'KSOrbifold':
        try:
            return cls(data['n1'], data['n2'], data['m0'], data['minf'])
        except KeyError as e:
            raise ValidationError('orbifold', '需要字段 n1, n2, m0, minf', str(e))

    def __str__(self) -> str:
        return f"({self.n1}, {self.n2}, {self.m0}, {self.minf})"


@dataclass(frozen=True)
class AdmissiblePair:
    """可容许类参数 (r1, r2)，0 < |r_i| < 1"""

    r1: Rational
    r2: Rational

    def __post_init__(self):
        for name in ('r1', 'r2'):
            value = to_rat(getattr(self, name))
            if not 0 < abs(value) < 1:
                raise NotAdmissible(f'需要 0 < |{name}| < 1', **{name: rat_str(value)})
            object.__setattr__(self, name, value)

    def check_signs(self, orb: KSOrbifold) -> 'AdmissiblePair':
        """校验 sign(r_i) = sign(n_i)"""
        if sign(self.r1) != sign(orb.n1) or sign(self.r2) != sign(orb.n2):
            raise SignMismatch(r=self.as_strings(), n=orb.n)
        return self

    def p_c(self, gen=T) -> Poly:
        """p_c(z) = (1 + r1·z)(1 + r2·z)"""
        return Poly([self.r1 * self.r2, self.r1 + self.r2, 1], gen, domain=QQ)

    @property
    def is_diagonal(self) -> bool:
        return self.r1 == self.r2

    def as_strings(self) -> Tuple[str, str]:
        return rat_str(self.r1), rat_str(self.r2)

    def to_dict(self) -> Dict[str, str]:
        return {'r1': rat_str(self.r1), 'r2': rat_str(self.r2)}

    def __iter__(self):
        return iter((self.r1, self.r2))


class Basis(Enum):
    """度数 2 上同调基"""
    X = "X"
    Y = "Y"


@dataclass(frozen=True)
class CohClass:
    """度数 2（轨形）上同调类，a1·e1 + a2·e2 + a3·e3，e 为 x 基或 y 基"""

    basis: Basis
    a1: Rational
    a2: Rational
    a3: Rational

    def __post_init__(self):
        basis = self.basis if isinstance(self.basis, Basis) else Basis(str(self.basis).upper())
        object.__setattr__(self, 'basis', basis)
        for name in ('a1', 'a2', 'a3'):
            object.__setattr__(self, name, to_rat(getattr(self, name)))

    @classmethod
    def y(cls, a1: RatLike, a2: RatLike, a3: RatLike) -> 'CohClass':
        return cls(Basis.Y, a1, a2, a3)

    @classmethod
    def x(cls, a1: RatLike, a2: RatLike, a3: RatLike) -> 'CohClass':
        return cls(Basis.X, a1, a2, a3)

    @property
    def coeffs(self) -> Tuple[Rational, Rational, Rational]:
        return self.a1, self.a2, self.a3

    def is_integral(self) -> bool:
        return all(a.q == 1 for a in self.coeffs)

    def int_coeffs(self) -> Tuple[int, int, int]:
        return tuple(int(a) for a in self.coeffs)

    def scale(self, factor: RatLike) -> 'CohClass':
        k = to_rat(factor)
        return CohClass(self.basis, k * self.a1, k * self.a2, k * self.a3)

    def to_dict(self) -> Dict[str, Any]:
        return {'basis': self.basis.value, 'a': [rat_str(a) for a in self.coeffs]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'CohClass':
        coeffs = data.get('a')
        if not isinstance(coeffs, (list, tuple)) or len(coeffs) != 3:
            raise ValidationError('class.a', '需要三个有理系数', coeffs)
        return cls(data.get('basis', 'Y'), *coeffs)


def is_log_fano(orb: KSOrbifold) -> bool:
    """log Fano 判定：n_i/m∞ < 2 且 -n_i/m0 < 2"""
    m0, minf = Rational(orb.m0), Rational(orb.minf)
    return all((
        orb.n1 / minf < 2,
        orb.n2 / minf < 2,
        -orb.n1 / m0 < 2,
        -orb.n2 / m0 < 2,
    ))


def require_log_fano(orb: KSOrbifold) -> None:
    if not is_log_fano(orb):
        raise NotLogFano(orbifold=str(orb))


def c1_orb(orb: KSOrbifold) -> CohClass:
    """轨形第一陈类（y 基）"""
    m0, minf = Rational(orb.m0), Rational(orb.minf)
    return CohClass.y(2 - orb.n1 / minf, 2 - orb.n2 / minf, 1 / m0 + 1 / minf)


def c1_orb_integral(orb: KSOrbifold) -> Tuple[int, int, int]:
    """m·v0·v∞·c1^orb 的 y 基整数系数"""
    scale = 2 * orb.m * orb.v0 * orb.vinf
    return scale - orb.n1 * orb.v0, scale - orb.n2 * orb.v0, orb.v0 + orb.vinf


def fano_index(orb: KSOrbifold) -> int:
    """Fano 指标 gcd(2m·v0·v∞ - n1·v0, 2m·v0·v∞ - n2·v0, v0 + v∞)

    Raises:
        NotLogFano: 非 log Fano
    """
    require_log_fano(orb)
    return gcd(*c1_orb_integral(orb))


def convert_basis(c: CohClass, n1: int, n2: int) -> CohClass:
    """x 基与 y 基互换：y3 - x3 = n1·x1 + n2·x2"""
    if c.basis == Basis.X:
        return CohClass.y(c.a1 - n1 * c.a3, c.a2 - n2 * c.a3, c.a3)
    return CohClass.x(c.a1 + n1 * c.a3, c.a2 + n2 * c.a3, c.a3)


def to_y(c: CohClass, n1: int, n2: int) -> CohClass:
    return c if c.basis == Basis.Y else convert_basis(c, n1, n2)


def admissible_class(orb: KSOrbifold, r: AdmissiblePair) -> CohClass:
    """Ω_r/2π 的 y 基系数 (n1(1-r1)/r1, n2(1-r2)/r2, 2)"""
    r.check_signs(orb)
    return CohClass.y(orb.n1 * (1 - r.r1) / r.r1, orb.n2 * (1 - r.r2) / r.r2, 2)


def normalize_class(c: CohClass) -> CohClass:
    """按 a3/2 缩放，使 a3 = 2"""
    if c.a3 == 0:
        raise NotAdmissible('a3 = 0 时无法归一化')
    return c.scale(2 / c.a3)


def class_to_r(orb: KSOrbifold, c: CohClass) -> AdmissiblePair:
    """由 y 基类求 r_i = n_i·a3 / (2a_i + n_i·a3)

    Raises:
        NotAdmissible: 分母为零、|r_i| 不在 (0, 1) 内或符号不符
    """
    c = to_y(c, orb.n1, orb.n2)
    if c.a3 == 0:
        raise NotAdmissible('a3 = 0', a=c.to_dict()['a'])
    values = []
    for n_i, a_i in ((orb.n1, c.a1), (orb.n2, c.a2)):
        denominator = 2 * a_i + n_i * c.a3
        if denominator == 0:
            raise NotAdmissible('分母为零', a=c.to_dict()['a'])
        values.append(n_i * c.a3 / denominator)
    pair = AdmissiblePair(*values)
    try:
        return pair.check_signs(orb)
    except SignMismatch:
        raise NotAdmissible('r_i 与 n_i 符号不同', r=pair.as_strings())


def is_kahler_class_regular(n1: int, n2: int, c: CohClass,
                            allow_zero_twist: bool = False) -> bool:
    """y 基类是否在 S_n 的 Kähler 锥内

    n1, n2 > 0：全部 c_i > 0；n1·n2 < 0（n1 > 0 > n2）：c1 > 0, c2 > -n2·c3, c3 > 0，
    另一种符号排列按 n1↔n2, c1↔c2 对称处理；n1, n2 < 0 时两个因子都取 c_i > -n_i·c3。
    非整数系数使用同样的不等式。

    Args:
        allow_zero_twist: 为 True 时对 n_i = 0 的因子要求 c_i > 0，而不是抛出 ZeroTwist

    Raises:
        ZeroTwist: n1·n2 = 0 且未允许零扭转
    """
    c = to_y(c, n1, n2)
    c1, c2, c3 = c.coeffs
    product = n1 * n2
    if n1 > 0 and n2 > 0:
        return bool(c1 > 0 and c2 > 0 and c3 > 0)
    if product == 0 and not allow_zero_twist:
        raise ZeroTwist(n=(n1, n2))
    if c3 <= 0:
        return False
    # 负扭转的因子需要 c_i > -n_i·c3，其余因子 c_i > 0
    return all(c_i > max(0, -n_i * c3) for n_i, c_i in ((n1, c1), (n2, c2)))


def iter_orbit(orb: KSOrbifold) -> Iterable[KSOrbifold]:
    """Coxeter 群作用下的轨道（转置与纤维反演生成）"""
    seen = []
    for candidate in (orb, orb.transpose(), orb.invert_fiber(), orb.transpose().invert_fiber()):
        if candidate not in seen:
            seen.append(candidate)
    return seen


def _signed_draw(rng, low: int, high: int) -> int:
    value = int(rng.integers(low, high + 1))
    return value if rng.random() < 0.5 else -value


def _unit_draw(rng, sign_value: int) -> Rational:
    q = int(rng.integers(2, 10))
    p = int(rng.integers(1, q))
    return sign_value * Rational(p, q)


def random_admissible(rng, max_twist: int = 5, max_ramification: int = 6,
                      same_sign: bool = False, diagonal: bool = False) -> Tuple[KSOrbifold, AdmissiblePair]:
    """随机抽取 (KSOrbifold, AdmissiblePair)，r_i 的分母取 2..9

    Args:
        rng: numpy Generator（np.random.default_rng(seed)）
        max_twist: |n_i| 上限
        max_ramification: m0, m∞ 上限
        same_sign: 为 True 时保证 n1·n2 > 0
        diagonal: 为 True 时 r1 = r2
    """
    if max_twist < 1 or max_ramification < 1:
        raise ValidationError('bounds', '上限须 >= 1', (max_twist, max_ramification))
    n1 = _signed_draw(rng, 1, max_twist)
    n2 = _signed_draw(rng, 1, max_twist)
    if same_sign and n1 * n2 < 0:
        n2 = -n2
    orb = KSOrbifold(n1, n2, int(rng.integers(1, max_ramification + 1)),
                     int(rng.integers(1, max_ramification + 1)))
    r1 = _unit_draw(rng, sign(n1))
    r2 = r1 if diagonal else _unit_draw(rng, sign(n2))
    return orb, AdmissiblePair(r1, r2)
