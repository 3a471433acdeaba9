#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
拓扑模块

功能：
1. S_n 上同调环中度数 2 类与生成元 y1, y2, y3 的乘积
2. 正则 S¹ 丛的 d2 矩阵与 H⁴ 挠部分阶数 |G_reg|
3. 轨形 S_n 的上同调群
4. 7 维轨形空间 H⁴ 中 μ-互素部分给出的下界
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from math import gcd, lcm
from typing import Any, Dict, List, Tuple

from sympy import Matrix

from .exceptions import InternalInconsistency, NonIntegerClass, NotKahler, NotPrimitive, ValidationError
from .orbifold import CohClass, KSOrbifold, is_kahler_class_regular, to_y

logger = logging.getLogger(__name__)

REGULAR_RANKS = (1, 0, 2, 0, 0, 2, 0, 1)
HOMOTOPY = {'pi1': '1', 'pi2': 'Z^2'}
GENERATORS = ('y1', 'y2', 'y3')


class TorsionKind(Enum):
    EXACT = "exact"
    CONTAINS = "contains"
    TRIVIAL = "trivial"
    GROUP = "group"


@dataclass(frozen=True)
class Torsion:
    """挠部分：精确阶数、包含某阶子群、平凡，或显式循环分解"""

    kind: TorsionKind
    order: int = 1
    factors: Tuple[int, ...] = ()

    @classmethod
    def exact(cls, order: int) -> 'Torsion':
        return cls(TorsionKind.EXACT, order)

    @classmethod
    def contains(cls, order: int) -> 'Torsion':
        return cls(TorsionKind.CONTAINS, order)

    @classmethod
    def trivial(cls) -> 'Torsion':
        return cls(TorsionKind.TRIVIAL)

    @classmethod
    def group(cls, factors) -> 'Torsion':
        factors = tuple(f for f in factors if f > 1)
        if not factors:
            return cls.trivial()
        order = 1
        for f in factors:
            order *= f
        return cls(TorsionKind.GROUP, order, factors)

    def describe(self) -> str:
        if self.kind == TorsionKind.TRIVIAL:
            return "0"
        if self.kind == TorsionKind.EXACT:
            return f"order {self.order}"
        if self.kind == TorsionKind.CONTAINS:
            return f"contains order {self.order}"
        counts: Dict[int, int] = {}
        for f in self.factors:
            counts[f] = counts.get(f, 0) + 1
        return " ⊕ ".join(f"Z_{f}^{k}" if k > 1 else f"Z_{f}" for f, k in counts.items())

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind.value, 'order': self.order, 'factors': list(self.factors)}


@dataclass(frozen=True)
class CohEntry:
    degree: int
    free_rank: int
    torsion: Torsion

    def describe(self) -> str:
        free = f"Z^{self.free_rank}" if self.free_rank > 1 else ("Z" if self.free_rank == 1 else "")
        torsion = "" if self.torsion.kind == TorsionKind.TRIVIAL else self.torsion.describe()
        return " ⊕ ".join(part for part in (free, torsion) if part) or "0"

    def to_dict(self) -> Dict[str, Any]:
        return {'degree': self.degree, 'rank': self.free_rank, 'torsion': self.torsion.to_dict()}


@dataclass
class CohSummary:
    """按度数升序排列的上同调群"""

    entries: List[CohEntry]
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        degrees = [e.degree for e in self.entries]
        if degrees != sorted(degrees):
            raise ValidationError('entries', '度数须升序', degrees)
        for entry in self.entries:
            if entry.free_rank < 0 or entry.torsion.order < 1:
                raise ValidationError('entries', 'rank >= 0 且 order >= 1', entry)

    def entry(self, degree: int) -> CohEntry:
        for e in self.entries:
            if e.degree == degree:
                return e
        raise ValidationError('degree', '不在摘要中', degree)

    @property
    def ranks(self) -> Tuple[int, ...]:
        return tuple(e.free_rank for e in self.entries)

    def to_dict(self) -> Dict[str, Any]:
        return {'groups': [e.to_dict() for e in self.entries], **self.metadata}


def cup_product_h2(n1: int, n2: int, u: CohClass, generator: str) -> Tuple:
    """u·y_i 在 {y1y2, y1y3, y2y3} 下的系数

    关系：y1² = y2² = 0，y3² = n1·y1y3 + n2·y2y3
    """
    c1, c2, c3 = to_y(u, n1, n2).coeffs
    if generator == 'y1':
        return c2, c3, 0 * c1
    if generator == 'y2':
        return c1, 0 * c1, c3
    if generator == 'y3':
        return 0 * c1, c1 + n1 * c3, c2 + n2 * c3
    raise ValidationError('generator', '/'.join(GENERATORS), generator)


def _integral(n1: int, n2: int, c: CohClass) -> Tuple[int, int, int]:
    c = to_y(c, n1, n2)
    if not c.is_integral():
        raise NonIntegerClass(a=c.to_dict()['a'])
    return c.int_coeffs()


def d2_matrix(n1: int, n2: int, c: CohClass) -> List[List[int]]:
    """d2 微分的矩阵，第 i 行为 c·y_i"""
    _integral(n1, n2, c)
    return [[int(v) for v in cup_product_h2(n1, n2, c, g)] for g in GENERATORS]


def g_reg_order(n1: int, n2: int, c: CohClass) -> int:
    """|G_reg| = c3[c2(c1 + n1c3) + c1(c2 + n2c3)]

    Raises:
        NonIntegerClass: 系数非整数
        NotPrimitive: gcd(c1, c2, c3) ≠ 1
        NotKahler: 不在 Kähler 锥内
        InternalInconsistency: 与 |det C| 不符或阶数不大于 1
    """
    c1, c2, c3 = _integral(n1, n2, c)
    if gcd(c1, c2, c3) != 1:
        raise NotPrimitive(c=(c1, c2, c3))
    if not is_kahler_class_regular(n1, n2, CohClass.y(c1, c2, c3), allow_zero_twist=True):
        raise NotKahler(n=(n1, n2), c=(c1, c2, c3))

    order = c3 * (c2 * (c1 + n1 * c3) + c1 * (c2 + n2 * c3))
    det = abs(int(Matrix(d2_matrix(n1, n2, CohClass.y(c1, c2, c3))).det()))
    if det != order:
        raise InternalInconsistency('g_reg_order', f'|det C| = {det} ≠ {order}')
    if order <= 1:
        raise InternalInconsistency('g_reg_order', f'G_reg 阶数 {order} <= 1',
                                    {'n': (n1, n2), 'c': (c1, c2, c3)})
    return order


def regular_cohomology(n1: int, n2: int, c: CohClass) -> CohSummary:
    """正则 S¹ 丛全空间的整系数上同调"""
    order = g_reg_order(n1, n2, c)
    entries = [CohEntry(d, rank, Torsion.exact(order) if d == 4 else Torsion.trivial())
               for d, rank in enumerate(REGULAR_RANKS)]
    return CohSummary(entries, {'homotopy': dict(HOMOTOPY)})


def orbifold_cohomology(orb: KSOrbifold, max_degree: int = 10) -> CohSummary:
    """轨形 S_n 的上同调群（度数 0..max_degree）

    H⁰ = Z，H² = Z³，H⁴ = Z³ ⊕ Z_m0² ⊕ Z_m∞²，H⁶ = Z ⊕ Z_m0³ ⊕ Z_m∞³，
    2k >= 8 时 H^{2k} = Z_m0³ ⊕ Z_m∞³，奇数度数为零
    """
    if max_degree < 0:
        raise ValidationError('max_degree', '>= 0', max_degree)
    free = {0: 1, 2: 3, 4: 3, 6: 1}
    entries = []
    for d in range(max_degree + 1):
        if d % 2 or d < 4:
            torsion = Torsion.trivial()
        else:
            copies = 2 if d == 4 else 3
            torsion = Torsion.group([orb.m0] * copies + [orb.minf] * copies)
        entries.append(CohEntry(d, 0 if d % 2 else free.get(d, 0), torsion))
    return CohSummary(entries, {'orbifold': orb.to_dict()})


def mu(orb: KSOrbifold) -> int:
    return lcm(orb.m0, orb.minf)


def coprime_part(n: int, mu_value: int) -> int:
    """n 中与 mu 互素的最大因子"""
    if n < 1 or mu_value < 1:
        raise ValidationError('coprime_part', 'N >= 1, mu >= 1', (n, mu_value))
    g = gcd(n, mu_value)
    while g > 1:
        n //= g
        g = gcd(n, mu_value)
    return n


def orbifold_m7_summary(orb: KSOrbifold, c: CohClass) -> CohSummary:
    """7 维轨形空间的上同调摘要，H⁴ 只给出包含的子群阶数

    Raises:
        NotPrimitive: μ·c 不是本原整类
        NotKahler: μ·c 不在 Kähler 锥内
    """
    mu_value = mu(orb)
    scaled = to_y(c, orb.n1, orb.n2).scale(mu_value)
    if not scaled.is_integral() or gcd(*scaled.int_coeffs()) != 1:
        raise NotPrimitive(mu=mu_value, c=scaled.to_dict()['a'])
    g_reg = g_reg_order(orb.n1, orb.n2, scaled)
    lower = coprime_part(g_reg, mu_value)
    logger.debug("orbifold_m7_summary %s: mu=%d |G_reg|=%d coprime=%d", orb, mu_value, g_reg, lower)

    entries = [CohEntry(d, rank, Torsion.contains(lower) if d == 4 else Torsion.trivial())
               for d, rank in enumerate(REGULAR_RANKS)]
    return CohSummary(entries, {'mu': mu_value, 'g_reg_order': g_reg, 'homotopy': dict(HOMOTOPY)})
