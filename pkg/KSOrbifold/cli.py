#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
命令行前端

子命令：fano, index, ke-check, ke-family, ke-table, soliton, csc, csc-sweep, topology,
orb-cohomology, join, yamazaki, lemma-scan
全局参数：--format, --tol, --max-iter, --seed, --log-level（放在子命令前后均可）

退出码：0 正常，2 输入错误，3 内部不一致
负数开头的参数值请写成 --n=-1,2 的形式。
"""

import argparse
import sys
from typing import Callable, Dict, List, Optional

from .main import KSOrbifoldSystem, parse_int_list, parse_rational_list, iter_param_rows
from .modules.config import OUTPUT_FORMATS, load_config, setup_logging
from .modules.exceptions import EXIT_OK, ErrorHandler, KSOrbifoldError, get_global_error_handler
from .modules.report_generator import to_csv_text


def _list_type(parser: Callable, expected: Optional[int]):
    def convert(text: str):
        try:
            return parser(text, expected)
        except KSOrbifoldError as e:
            raise argparse.ArgumentTypeError(e.message)
    return convert


int_pair = _list_type(parse_int_list, 2)
int_triple = _list_type(parse_int_list, 3)
int_quad = _list_type(parse_int_list, 4)
rat_pair = _list_type(parse_rational_list, 2)
rat_triple = _list_type(parse_rational_list, 3)
rat_single = _list_type(parse_rational_list, 1)


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument('--format', choices=OUTPUT_FORMATS, default=default, help='输出格式')
    parser.add_argument('--tol', type=float, default=default, help='数值容差')
    parser.add_argument('--max-iter', type=int, default=default, dest='max_iter', help='二分迭代上限')
    parser.add_argument('--seed', type=int, default=default, help='随机种子')
    parser.add_argument('--log-level', default=default, dest='log_level', help='日志级别')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='ksorb', description='KS 轨形上的 KE、孤子、CSC 与拓扑计算')
    _global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = parser.add_subparsers(dest='command', required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help_text, parents=[common])

    for name, help_text in (('fano', 'log Fano 判定与 c1^orb'), ('index', 'Fano 指标')):
        p = add(name, help_text)
        p.add_argument('--n', type=int_pair, required=True, help='n1,n2')
        p.add_argument('--m', type=int_pair, required=True, help='m0,minf')

    p = add('ke-check', 'KE 判据；--search 给出范围内全部解')
    p.add_argument('--n', type=int_pair, required=True)
    p.add_argument('--m', type=int_pair)
    p.add_argument('--search', type=int, metavar='BOUND')

    p = add('ke-family', '由 (p1, q1, p2, q2) 生成 KE 轨形')
    p.add_argument('--params', type=int_quad, required=True, help='p1,q1,p2,q2')

    p = add('ke-table', '生成 KE 轨形表（CSV）')
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument('--builtin', choices=['appendix'])
    source.add_argument('--params', nargs='+', help='p1,q1,p2,q2 ...')
    p.add_argument('--out', help='同时写入 CSV 文件')

    p = add('soliton', 'Kähler-Ricci 孤子常数与动量轮廓')
    p.add_argument('--n', type=int_pair, required=True)
    p.add_argument('--m', type=int_pair, required=True)
    p.add_argument('--samples', type=int, default=101)
    p.add_argument('--profile-csv', dest='profile_csv', help='动量轮廓采样写入 CSV')

    p = add('csc', 'CSC 类内判定与 CSC 射线证书')
    p.add_argument('--n', type=int_pair, required=True)
    p.add_argument('--m', type=int_pair, required=True)
    p.add_argument('--r', type=rat_pair, required=True, help='r1,r2（num/den）')

    p = add('csc-sweep', '按 --seed 随机抽取可容许数据并逐一给出 CSC 证书')
    p.add_argument('--count', type=int, default=100)
    p.add_argument('--max-n', type=int, default=5, dest='max_n', help='|n_i| 上限')
    p.add_argument('--max-m', type=int, default=6, dest='max_m', help='m0, m∞ 上限')

    p = add('topology', '正则 S¹ 丛的上同调与 |G_reg|')
    p.add_argument('--n', type=int_pair, required=True)
    p.add_argument('--c', type=rat_triple, required=True, help='c1,c2,c3（y 基）')

    p = add('orb-cohomology', '轨形上同调与 7 维轨形空间 H⁴ 下界')
    p.add_argument('--n', type=int_pair, required=True)
    p.add_argument('--m', type=int_pair, required=True)
    p.add_argument('--c', type=rat_triple, help='c1,c2,c3（y 基，μ·c 须为本原整类）')
    p.add_argument('--max-degree', type=int, default=10, dest='max_degree')

    p = add('join', 'S³_w-join 识别')
    p.add_argument('--n', type=int_pair, required=True)
    p.add_argument('--m', type=int_pair, required=True)
    p.add_argument('--r', type=rat_single, required=True)

    p = add('yamazaki', 'Yamazaki 纤维联接矩阵 K')
    p.add_argument('--n', type=int_pair, required=True)
    p.add_argument('--r', type=rat_pair, required=True)

    p = add('lemma-scan', '扫描 x²(x²+4)/(5x²-4) 的整性')
    p.add_argument('--lo', type=int, default=1)
    p.add_argument('--hi', type=int, default=1000)
    return parser


def _dispatch(system: KSOrbifoldSystem, args: argparse.Namespace) -> Dict:
    command = args.command
    if command == 'fano':
        return system.fano(*args.n, *args.m)
    if command == 'index':
        return system.index(*args.n, *args.m)
    if command == 'ke-check':
        m0, minf = args.m if args.m else (None, None)
        return system.ke_check(*args.n, m0, minf, search=args.search)
    if command == 'ke-family':
        return system.ke_family(*args.params)
    if command == 'ke-table':
        return system.ke_table(iter_param_rows(args.params) if args.params else None)
    if command == 'soliton':
        return system.soliton(*args.n, *args.m, samples=args.samples)
    if command == 'csc':
        return system.csc(*args.n, *args.m, *args.r)
    if command == 'csc-sweep':
        return system.csc_sweep(args.count, args.max_n, args.max_m)
    if command == 'topology':
        return system.topology(*args.n, args.c)
    if command == 'orb-cohomology':
        return system.orb_cohomology(*args.n, *args.m, c=args.c, max_degree=args.max_degree)
    if command == 'join':
        return system.join(*args.n, *args.m, args.r[0])
    if command == 'yamazaki':
        return system.yamazaki(*args.n, *args.r)
    return system.lemma_scan(args.lo, args.hi)


def main(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    """命令行入口，返回退出码"""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    handler: ErrorHandler = get_global_error_handler()

    try:
        config = load_config().with_overrides(
            tolerance=args.tol, max_iterations=args.max_iter, output_format=args.format,
            random_seed=args.seed, log_level=args.log_level.upper() if args.log_level else None,
        ).validate()
        setup_logging(config.log_level)
        system = KSOrbifoldSystem(config)
        result = _dispatch(system, args)

        # 表格命令默认输出 CSV
        format_type = args.format or ('csv' if args.command == 'ke-table' else config.output_format)
        stdout.write(system.render(args.command, result, format_type))

        if args.command == 'ke-table' and args.out:
            system.report_generator.save_report(to_csv_text(result['table']), args.out)
        if args.command == 'soliton' and args.profile_csv:
            system.report_generator.save_report(to_csv_text(result['profile']), args.profile_csv)
        return EXIT_OK
    except Exception as e:
        handler.handle_error(e, context=args.command)
        handler.print_error(e, context=args.command, stream=stderr)
        return handler.exit_code_for(e)


if __name__ == '__main__':
    sys.exit(main())
