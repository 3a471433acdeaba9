#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
KS 轨形计算系统 - 统一入口

命令行与 Web 接口共用的门面类：每个方法接收原始参数，调用各计算模块，
返回可直接渲染的结果字典（'summary' 为一行结论，'table' 为 DataFrame）。
"""

import logging
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from .modules import csc_extremal, joins, ke_soliton, topology
from .modules.config import CliConfig, load_config
from .modules.exact_arith import rat_str, to_rat
from .modules.exceptions import handle_exception, ValidationError
from .modules.orbifold import (
    AdmissiblePair, CohClass, KSOrbifold, c1_orb, c1_orb_integral, convert_basis,
    fano_index, is_log_fano, random_admissible
)
from .modules.report_generator import REPORT_TITLES, ReportGenerator

logger = logging.getLogger(__name__)


class KSOrbifoldSystem:
    """KS 轨形计算系统主类"""

    def __init__(self, config: Optional[CliConfig] = None):
        self.config = (config or load_config()).validate()
        self.report_generator = ReportGenerator()

    def render(self, command: str, result: Dict[str, Any], format_type: Optional[str] = None) -> str:
        return self.report_generator.generate_report(command, result, format_type or self.config.output_format)

    # ------------------------------------------------------------ 轨形

    @handle_exception
    def fano(self, n1: int, n2: int, m0: int, minf: int) -> Dict[str, Any]:
        orb = KSOrbifold(n1, n2, m0, minf)
        c1 = c1_orb(orb)
        log_fano = is_log_fano(orb)
        result = {
            'orbifold': orb.to_dict(),
            'log_fano': log_fano,
            'c1_orb_y': c1.to_dict()['a'],
            'c1_orb_x': convert_basis(c1, orb.n1, orb.n2).to_dict()['a'],
            'c1_orb_integral': list(c1_orb_integral(orb)),
        }
        if log_fano:
            result['index'] = fano_index(orb)
        result['summary'] = (f"log_fano={str(log_fano).lower()}"
                             + (f", index={result['index']}" if log_fano else ""))
        return result

    @handle_exception
    def index(self, n1: int, n2: int, m0: int, minf: int) -> Dict[str, Any]:
        orb = KSOrbifold(n1, n2, m0, minf)
        value = fano_index(orb)
        return {'orbifold': orb.to_dict(), 'index': value, 'summary': f"index={value}"}

    # ------------------------------------------------------------ KE / 孤子

    @handle_exception
    def ke_check(self, n1: int, n2: int, m0: Optional[int] = None, minf: Optional[int] = None,
                 search: Optional[int] = None) -> Dict[str, Any]:
        if search is not None:
            hits = ke_soliton.ke_search(n1, n2, search)
            return {
                'n': [n1, n2],
                'bound': search,
                'hits': [list(hit) for hit in hits],
                'summary': f"{len(hits)} KE solutions with 1 <= m0, m∞ <= {search}",
            }
        if m0 is None or minf is None:
            raise ValidationError('m', 'ke-check 需要 --m 或 --search', None)
        orb = KSOrbifold(n1, n2, m0, minf)
        ke = ke_soliton.ke_condition(orb)
        result = {
            'orbifold': orb.to_dict(),
            'log_fano': is_log_fano(orb),
            'ke': ke,
            'polynomial': ke_soliton.ke_polynomial_value(n1, n2, m0, minf),
        }
        if result['log_fano']:
            r = ke_soliton.soliton_r(orb)
            result['r'] = r.to_dict()
            result['integral_check'] = ke_soliton.ke_verify_integral(orb, r)
        result['summary'] = f"ke={str(ke).lower()}"
        return result

    @handle_exception
    def ke_family(self, p1: int, q1: int, p2: int, q2: int) -> Dict[str, Any]:
        params = ke_soliton.KEFamilyParams(p1, q1, p2, q2)
        orb, r = ke_soliton.ke_family(params)
        return {
            'params': list(params.as_tuple()),
            'orbifold': orb.to_dict(),
            'r': r.to_dict(),
            'm': orb.m, 'v0': orb.v0, 'vinf': orb.vinf,
            'index': fano_index(orb),
            'summary': f"KE orbifold {orb}",
        }

    @handle_exception
    def ke_table(self, params: Optional[Sequence[Sequence[int]]] = None) -> Dict[str, Any]:
        """params 为空时使用内置附录参数"""
        if params:
            rows = [ke_soliton.KEFamilyParams(*[int(v) for v in row]) for row in params]
        else:
            rows = ke_soliton.appendix_params()
        table = ke_soliton.ke_table(rows)
        logger.debug("ke_table: %d rows", len(table))
        return {'table': table, 'rows': len(table)}

    @handle_exception
    def soliton(self, n1: int, n2: int, m0: int, minf: int, samples: int = 101) -> Dict[str, Any]:
        orb = KSOrbifold(n1, n2, m0, minf)
        result = ke_soliton.soliton_constant(orb, self.config.tolerance,
                                             self.config.max_iterations, samples)
        data = result.to_dict()
        data['orbifold'] = orb.to_dict()
        data['residuals'] = ke_soliton.profile_residuals(orb, result.c.value)
        data['profile'] = ke_soliton.profile_frame(result.sample_profile)
        c = result.c
        c_text = "c=0 (KE)" if c.exact_zero else f"c ∈ [{c.lo:.12g}, {c.hi:.12g}]"
        data['summary'] = f"λ={rat_str(result.lam)}, {c_text}, profile_ok={str(result.profile_ok).lower()}"
        return data

    # ------------------------------------------------------------ CSC

    @handle_exception
    def csc(self, n1: int, n2: int, m0: int, minf: int, r1, r2) -> Dict[str, Any]:
        orb = KSOrbifold(n1, n2, m0, minf)
        r = AdmissiblePair(r1, r2).check_signs(orb)
        certificate = csc_extremal.certify_csc_ray(orb, r, self.config.isolation_bits)
        data = certificate.to_dict()
        data['orbifold'] = orb.to_dict()
        data['r'] = r.to_dict()
        data['summary'] = certificate.summary()
        return data

    @handle_exception
    def csc_sweep(self, count: int, max_twist: int = 5, max_ramification: int = 6) -> Dict[str, Any]:
        """按 config.random_seed 随机抽取 count 组 (orb, r) 并逐一给出证书

        任一证书既无类内 CSC 又无根时 certify_csc_ray 抛出 NoRootFound
        """
        if count < 1:
            raise ValidationError('count', '>= 1', count)
        rng = np.random.default_rng(self.config.random_seed)
        tally = {'in_class': 0, 'quasi_regular': 0, 'irregular': 0}
        for _ in range(count):
            orb, r = random_admissible(rng, max_twist, max_ramification)
            certificate = csc_extremal.certify_csc_ray(orb, r, self.config.isolation_bits)
            if certificate.in_class_csc:
                tally['in_class'] += 1
            for _, ray in certificate.roots:
                key = 'quasi_regular' if ray is csc_extremal.RayClass.QUASI_REGULAR else 'irregular'
                tally[key] += 1
        logger.info("csc_sweep seed=%d count=%d: %s", self.config.random_seed, count, tally)
        return {
            'seed': self.config.random_seed,
            'count': count,
            **tally,
            'summary': f"{count} certificates, seed {self.config.random_seed}: "
                       f"{tally['in_class']} in class, {tally['quasi_regular']} quasi-regular rays, "
                       f"{tally['irregular']} irregular rays",
        }

    # ------------------------------------------------------------ 拓扑

    @handle_exception
    def topology(self, n1: int, n2: int, c: Sequence) -> Dict[str, Any]:
        coh = CohClass.y(*c)
        summary = topology.regular_cohomology(n1, n2, coh)
        data = summary.to_dict()
        order = summary.entry(4).torsion.order
        data['d2_matrix'] = topology.d2_matrix(n1, n2, coh)
        data['g_reg_order'] = order
        data['summary'] = f"|G_reg| = {order}"
        return data

    @handle_exception
    def orb_cohomology(self, n1: int, n2: int, m0: int, minf: int,
                       c: Optional[Sequence] = None, max_degree: int = 10) -> Dict[str, Any]:
        orb = KSOrbifold(n1, n2, m0, minf)
        summary = topology.orbifold_cohomology(orb, max_degree)
        data = summary.to_dict()
        data['mu'] = topology.mu(orb)
        lines = [f"H^{e.degree} = {e.describe()}" for e in summary.entries]
        if c is not None:
            m7 = topology.orbifold_m7_summary(orb, CohClass.y(*c))
            data['m7'] = m7.to_dict()
            lines.append(f"H^4(M7) {m7.entry(4).torsion.describe()}")
        data['summary'] = "; ".join(lines)
        return data

    # ------------------------------------------------------------ join

    @handle_exception
    def join(self, n1: int, n2: int, m0: int, minf: int, r) -> Dict[str, Any]:
        orb = KSOrbifold(n1, n2, m0, minf)
        join = joins.join_identify(orb, r)
        data = join.to_dict()
        data['orbifold'] = orb.to_dict()
        data['primitive_consistent'] = joins.primitive_class_smoothness(orb, join)
        data['summary'] = (f"w=({join.w0},{join.winf}), l=({join.l0},{join.linf}), "
                           f"{'smooth' if join.smooth else 'singular'}, h4_order={join.h4_order}")
        return data

    @handle_exception
    def yamazaki(self, n1: int, n2: int, r1, r2) -> Dict[str, Any]:
        r = AdmissiblePair(r1, r2)
        matrix = joins.yamazaki_feasible(n1, n2, r)
        return {
            'n': [n1, n2],
            'r': r.to_dict(),
            'K': matrix,
            'summary': f"K = {matrix}" if matrix else "no positive integer K",
        }

    @handle_exception
    def lemma_scan(self, lo: int, hi: int) -> Dict[str, Any]:
        hits = joins.lemma_scan(lo, hi)
        return {'range': [lo, hi], 'integral_at': hits,
                'summary': f"{len(hits)} integral values in [{lo}, {hi}]"}

    def status(self) -> Dict[str, Any]:
        return {'config': self.config.to_dict(), 'commands': sorted(REPORT_TITLES)}


def parse_rational_list(text: str, expected: Optional[int] = None) -> List:
    """解析逗号分隔的 "num/den" 列表"""
    parts = [p.strip() for p in str(text).split(',') if p.strip()]
    if expected is not None and len(parts) != expected:
        raise ValidationError('list', f'需要 {expected} 个逗号分隔的值', text)
    return [to_rat(p) for p in parts]


def parse_int_list(text: str, expected: Optional[int] = None) -> List[int]:
    values = parse_rational_list(text, expected)
    if any(v.q != 1 for v in values):
        raise ValidationError('list', '需要整数', text)
    return [int(v) for v in values]


def iter_param_rows(specs: Iterable[str]) -> List[List[int]]:
    return [parse_int_list(spec, 4) for spec in specs]
