#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
3-幂零半群计数工具
重新生成各计数表，计算上界与精确值，运行暴力枚举与校验，并管理斯特林表缓存
"""

import argparse
import csv
import io
import json
import logging
import os
import sys
from typing import Dict, List, Optional

from bounds import BoundResult, CountKind, evaluate
from burnside import ccycle_multiset, fixed_partial_partitions
from cycletype import IntegerPartition, cycle_stats
from exactmath import default_table
from oracle import GroupElement, fixed_points_brute, orbit_census
from stirling_cache import StirlingCache
from table_exporter import CountTable, IncrementalTableWriter, TableExporter
from table_specs import TableSpec, TableSpecs, parse_n_range
from verification import verify

logger = logging.getLogger('nilcount')

# cache save 默认保存的斯特林表行数（覆盖 n ≤ 10 用到的全部参数）
DEFAULT_CACHE_ROWS = 101


def configure_logging(verbosity: int):
    """日志输出到stderr：默认WARNING，-v为INFO，-vv为DEBUG"""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format='%(asctime)s %(name)s %(levelname)s: %(message)s',
        force=True,
    )


def log_progress(current: int, total: int, message: str):
    logger.info("[%d/%d] %s", current, total, message)


def _n_values(text: str) -> List[int]:
    start, end = parse_n_range(text)
    valid, error_msg = TableSpecs.validate_n_range((start, end))
    if not valid:
        raise ValueError(error_msg)
    return list(range(start, end + 1))


class CensusCache:
    """同一次调用内按n复用普查结果"""

    def __init__(self, allow_slow: bool, workers: int):
        self.allow_slow = allow_slow
        self.workers = workers
        self.settings = TableSpecs.oracle_settings()
        self.reports = {}

    @property
    def cap(self) -> int:
        return self.settings.slow_max_n if self.allow_slow else self.settings.census_max_n

    def count(self, n: int, name: str) -> Optional[int]:
        """普查计数；超出上限时返回None"""
        if n > self.cap:
            logger.warning("n=%d 的普查列 %s 超出上限 %d，输出为空（需要 --allow-slow）", n, name, self.cap)
            return None
        if n not in self.reports:
            self.reports[n] = orbit_census(
                n, allow_slow=self.allow_slow, workers=self.workers,
                census_max_n=self.settings.census_max_n, slow_max_n=self.settings.slow_max_n,
                progress_callback=log_progress)
        return self.reports[n].counts[name]


def table_row(spec: TableSpec, n: int, census: CensusCache, workers: int = 1):
    """计算一行

    Returns:
        (各列数值, 各列有理值)
    """
    values: Dict[str, Optional[int]] = {}
    rationals: Dict[str, str] = {}
    for column in spec.columns:
        if not column.covers(n):
            values[column.key] = None
        elif column.source == 'formula':
            result = evaluate(column.count_kind, n, workers=workers)
            values[column.key] = result.floored
            rationals[column.key] = result.rational_text
        else:
            values[column.key] = census.count(n, column.kind)
    return values, rationals


def run_table(spec: TableSpec, n_values: List[int], format_type: str = 'csv', output=None,
              allow_slow: bool = False, workers: int = 1, include_rational: bool = False) -> CountTable:
    """生成一张计数表并逐行写出

    Args:
        spec: 表格规格
        n_values: 要计算的n
        format_type: 'csv' 或 'json'
        output: 输出文件路径或文本流，默认stdout
        allow_slow: 是否允许 n = 7 的普查
        workers: 并行进程数
        include_rational: 是否附带有理值

    Returns:
        生成的计数表
    """
    census = CensusCache(allow_slow, workers)
    writer = IncrementalTableWriter()
    if not writer.initialize_export(output or sys.stdout, spec.table_id, spec.column_keys,
                                    format_type, include_rational):
        raise IOError(f"无法写出表 {spec.table_id}")
    try:
        for n in n_values:
            values, rationals = table_row(spec, n, census, workers)
            writer.add_row(n, values, rationals if include_rational else None)
        return writer.finalize_export()
    except BaseException:
        writer.cleanup()
        raise


def _csv_text(rows: List[List]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerows(rows)
    return buffer.getvalue()


def render_terms(results: List[BoundResult], format_type: str) -> str:
    """逐 (r, λ) 项输出"""
    data = [result.to_dict(include_terms=True) for result in results]
    if format_type == 'json':
        return json.dumps(data, ensure_ascii=False, indent=2) + '\n'
    rows = [['n', 'r', 'lambda', 'term']]
    for row in data:
        for term in row['terms']:
            rows.append([row['n'], term['r'], term['lambda'] or '-', term['value']])
    return _csv_text(rows)


def run_bounds(kind: CountKind, n_values: List[int], format_type: str = 'csv',
               include_rational: bool = False, include_terms: bool = False, workers: int = 1) -> str:
    results = [evaluate(kind, n, workers=workers) for n in n_values]
    if include_terms:
        return render_terms(results, format_type)
    table = CountTable(table_id=kind.value, columns=[kind.value])
    for result in results:
        table.set_value(result.n, kind.value, result.floored,
                        result.rational_text if include_rational else None)
    return TableExporter().render(table, format_type, include_rational)


def run_fixed(lam_text: str, k: int, format_type: str = 'csv', semirigid: bool = False) -> str:
    lam = IntegerPartition.from_text(lam_text)
    if k < 0:
        raise ValueError(f"k必须为非负整数: {k}")
    value = fixed_partial_partitions(lam, k, semirigid=semirigid)
    if format_type == 'json':
        return json.dumps({'lambda': lam.to_text(), 'k': k, 'semirigid': semirigid,
                           'fixed': str(value)}, ensure_ascii=False, indent=2) + '\n'
    return _csv_text([['lambda', 'k', 'fixed'], [lam.to_text(), k, value]])


def run_oracle_census(n: int, format_type: str = 'json', allow_slow: bool = False, workers: int = 1) -> str:
    settings = TableSpecs.oracle_settings()
    report = orbit_census(n, allow_slow=allow_slow, workers=workers,
                          census_max_n=settings.census_max_n, slow_max_n=settings.slow_max_n,
                          progress_callback=log_progress)
    data = report.to_dict()
    if format_type == 'json':
        return json.dumps(data, ensure_ascii=False, indent=2) + '\n'
    names = list(data['counts'])
    return _csv_text([['n'] + names, [n] + [data['counts'][name] for name in names]])


def run_oracle_fixed(r: int, k: int, perm: str, twisted: bool = False, semirigid_only: bool = False,
                     format_type: str = 'csv') -> str:
    g = GroupElement.from_cycles(perm or '', r, twisted=twisted)
    value = fixed_points_brute(r, k, g, semirigid_only=semirigid_only)
    if format_type == 'json':
        return json.dumps({'r': r, 'k': k, 'perm': list(g.pi), 'twisted': twisted,
                           'semirigid_only': semirigid_only, 'fixed': str(value)},
                          ensure_ascii=False, indent=2) + '\n'
    return _csv_text([['r', 'k', 'twisted', 'fixed'], [r, k, int(twisted), value]])


def run_stats(lam_text: str) -> str:
    lam = IntegerPartition.from_text(lam_text)
    data = {'lambda': lam.to_text(), 'r': lam.r}
    data.update(cycle_stats(lam).to_dict())
    data['ccycles'] = ccycle_multiset(lam).to_dict()
    return json.dumps(data, ensure_ascii=False, indent=2) + '\n'


def run_cache(action: str, path: Optional[str], rows: int = DEFAULT_CACHE_ROWS):
    """缓存管理

    Returns:
        (是否成功, 信息)
    """
    if not path:
        raise ValueError("cache 命令需要 --cache PATH")
    cache = StirlingCache(path)
    if action == 'save':
        default_table().ensure(rows)
        return cache.save()
    if action == 'load':
        return cache.load()
    return cache.clear()


def _common_options(suppress_defaults: bool = False) -> argparse.ArgumentParser:
    """通用参数，放在子命令前后均可

    子命令上的副本不设默认值，避免覆盖写在子命令之前的取值
    """
    parser = argparse.ArgumentParser(add_help=False)

    def default(value):
        return argparse.SUPPRESS if suppress_defaults else value

    parser.add_argument('--format', choices=['csv', 'json'], default=default('csv'), help='输出格式，默认csv')
    parser.add_argument('--threads', type=int, default=default(1), help='并行进程数，默认1')
    parser.add_argument('--allow-slow', action='store_true', default=default(False),
                        help='允许 n = 7 的暴力普查（8进程约8分钟）')
    parser.add_argument('--cache', default=default(None), help='斯特林表缓存文件路径')
    parser.add_argument('-v', '--verbose', action='count', default=default(0),
                        help='-v 输出进度，-vv 输出调试信息')
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='nilcount', description='3-幂零半群计数：公式、上界、精确Burnside计数与暴力校验',
                                     parents=[_common_options()])
    subparsers = parser.add_subparsers(dest='command', required=True)
    common = [_common_options(suppress_defaults=True)]

    table = subparsers.add_parser('table', parents=common, help='重新生成计数表 T1..T5')
    table.add_argument('table_id', help='表格编号 (T1..T5)')
    table.add_argument('--n', help='n范围 a..b，默认使用表格配置')
    table.add_argument('--rational', action='store_true', help='附带公式列的未取整有理值')
    table.add_argument('-o', '--output', help='输出文件路径（默认stdout）')

    bounds = subparsers.add_parser('bounds', parents=common, help='按计数种类求值')
    bounds.add_argument('--kind', required=True, help='计数种类，如 semirigid_iso_bound')
    bounds.add_argument('--n', required=True, help='n范围 a..b（rank_stratified 时为秩r）')
    bounds.add_argument('--rational', action='store_true', help='输出未取整的有理值 p/q')
    bounds.add_argument('--terms', action='store_true', help='输出逐 (r, λ) 项')

    exact = subparsers.add_parser('exact', parents=common, help='同构类精确个数')
    exact.add_argument('--n', required=True, help='n范围 a..b')
    exact.add_argument('--per-rank', action='store_true', help='输出逐 (r, λ) 项')

    fixed = subparsers.add_parser('fixed', parents=common, help='被给定轮换型置换固定的秩k部分划分个数')
    fixed.add_argument('--lambda', dest='lam', required=True, help='轮换型，如 1^2,2^1')
    fixed.add_argument('--k', type=int, required=True, help='块数k')
    fixed.add_argument('--semirigid', action='store_true', help='只计半刚性固定点')

    oracle = subparsers.add_parser('oracle', parents=common, help='暴力枚举：普查或固定点计数')
    oracle.add_argument('action', nargs='?', choices=['census', 'fixed'], default='census')
    oracle.add_argument('--n', type=int, help='普查的阶数n')
    oracle.add_argument('--report', choices=['csv', 'json'], default='json', help='普查报告格式，默认json')
    oracle.add_argument('--r', type=int, help='固定点计数的秩r')
    oracle.add_argument('--k', type=int, help='固定点计数的块数k')
    oracle.add_argument('--perm', default='', help='置换的轮换记法（1起始），如 "(1 2)(3)"')
    oracle.add_argument('--twist', action='store_true', help='置换后再作转置τ')
    oracle.add_argument('--semirigid-only', action='store_true', help='只计半刚性固定点')

    stats = subparsers.add_parser('stats', parents=common, help='轮换型统计量（JSON）')
    stats.add_argument('--lambda', dest='lam', required=True, help='轮换型，如 1^2,2^1')

    verify_parser = subparsers.add_parser('verify', parents=common, help='运行校验套件')
    verify_parser.add_argument('--level', choices=['fast', 'full'], default='fast', help='校验级别')

    cache = subparsers.add_parser('cache', parents=common, help='斯特林表缓存管理')
    cache.add_argument('action', choices=['save', 'load', 'clear'])
    cache.add_argument('--rows', type=int, default=DEFAULT_CACHE_ROWS, help='保存的行数')
    return parser


def _prepare_cache(args) -> bool:
    """命令开始前加载缓存，返回是否加载成功"""
    if not args.cache or args.command in ('cache', 'verify') or not os.path.exists(args.cache):
        return False
    ok, message = StirlingCache(args.cache).load()
    if not ok:
        logger.warning("%s", message)
    return ok


def dispatch(args) -> int:
    """执行子命令，返回退出码"""
    workers = max(1, args.threads)
    out = sys.stdout

    if args.command == 'table':
        spec = TableSpecs.get_spec(args.table_id)
        n_values = _n_values(args.n) if args.n else list(range(spec.n_range[0], spec.n_range[1] + 1))
        run_table(spec, n_values, args.format, args.output, args.allow_slow, workers, args.rational)
    elif args.command == 'bounds':
        kind = CountKind.from_name(args.kind)
        if kind is CountKind.RANK_STRATIFIED:
            start, end = parse_n_range(args.n)
            n_values = list(range(start, end + 1))
        else:
            n_values = _n_values(args.n)
        out.write(run_bounds(kind, n_values, args.format, args.rational, args.terms, workers))
    elif args.command == 'exact':
        out.write(run_bounds(CountKind.ISO_EXACT, _n_values(args.n), args.format,
                             include_terms=args.per_rank, workers=workers))
    elif args.command == 'fixed':
        out.write(run_fixed(args.lam, args.k, args.format, args.semirigid))
    elif args.command == 'oracle':
        if args.action == 'census':
            if args.n is None:
                raise ValueError("oracle census 需要 --n")
            out.write(run_oracle_census(args.n, args.report, args.allow_slow, workers))
        else:
            if args.r is None or args.k is None:
                raise ValueError("oracle fixed 需要 --r 和 --k")
            out.write(run_oracle_fixed(args.r, args.k, args.perm, args.twist, args.semirigid_only,
                                       args.format))
    elif args.command == 'stats':
        out.write(run_stats(args.lam))
    elif args.command == 'verify':
        report = verify(args.level, allow_slow=args.allow_slow, cache_file=args.cache,
                        workers=workers, progress_callback=log_progress)
        out.write(json.dumps(report.to_dict(), ensure_ascii=False, indent=2) + '\n')
        return 0 if report.passed else 1
    elif args.command == 'cache':
        ok, message = run_cache(args.action, args.cache, args.rows)
        print(message, file=sys.stderr)
        return 0 if ok else 1
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)

    try:
        loaded = _prepare_cache(args)
        status = dispatch(args)
        if args.cache and not loaded and status == 0 and args.command in ('table', 'bounds', 'exact'):
            StirlingCache(args.cache).save()
        return status
    except KeyboardInterrupt:
        print("\n用户中断操作", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"错误: {e}", file=sys.stderr)
        return 2
    except (ArithmeticError, OSError) as e:
        # 交叉校验失败或输出不可写
        logger.debug("详细错误", exc_info=True)
        print(f"\n程序执行出错: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
