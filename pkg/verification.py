#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
校验模块
把各模块之间的恒等式、已发表的表值和暴力枚举结果逐项对照，
报告第一个不符的 (n, 种类, 期望值, 实际值)
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any, Callable, Dict, List, Optional

import known_values
from bounds import (
    CountKind, dominant_term, evaluate, F_pitau, semirigid_iso_bound, selfdual_semirigid_bound,
    t_identity, t_identity_inclusion_exclusion, t_identity_shifted_sum, tn_over_nfact_lower_bound,
)
from burnside import correction_terms, fixed_partial_partitions, iso_classes_exact
from cycletype import cycle_stats, partitions_of, weight
from exactmath import (
    bell, bell_by_binomial_recurrence, default_table, scaled_stirling, stirling2,
    stirling2_inclusion_exclusion,
)
from oracle import (
    GroupElement, fixed_points_brute, orbit_census, permutation_of_type, semirigidly_fixed_brute,
    square_ccycle_classes, symmetric_ccycles, twisted_fixed_brute,
)
from stirling_cache import StirlingCache
from table_specs import TableSpecs

logger = logging.getLogger(__name__)

LEVELS = ('fast', 'full')


@dataclass
class Mismatch:
    n: Optional[int]
    kind: str
    expected: Any
    got: Any

    def to_dict(self) -> Dict:
        return {'n': self.n, 'kind': self.kind, 'expected': str(self.expected), 'got': str(self.got)}

    def __str__(self):
        return f"n={self.n} {self.kind}: 期望 {self.expected}，得到 {self.got}"


@dataclass
class VerificationReport:
    """校验结果"""
    level: str
    checks_run: int = 0
    failures: List[Mismatch] = field(default_factory=list)
    # 已发表表值自身的差异，只报告不计为失败
    errata: List[Mismatch] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def first_failure(self) -> Optional[Mismatch]:
        return self.failures[0] if self.failures else None

    def expect(self, n: Optional[int], kind: str, expected: Any, got: Any) -> bool:
        """记录一项比较"""
        self.checks_run += 1
        if expected != got:
            mismatch = Mismatch(n, kind, expected, got)
            logger.error("校验失败: %s", mismatch)
            self.failures.append(mismatch)
            return False
        return True

    def note_erratum(self, n: Optional[int], kind: str, published: Any, got: Any):
        """记录一处与发表值不一致但计算正确的单元格"""
        erratum = Mismatch(n, kind, published, got)
        logger.warning("发表值差异（不计为失败）: %s", erratum)
        self.errata.append(erratum)

    def to_dict(self) -> Dict:
        first = self.first_failure
        return {
            'level': self.level,
            'passed': self.passed,
            'checks_run': self.checks_run,
            'failures': len(self.failures),
            'first_failure': first.to_dict() if first else None,
            'errata': [erratum.to_dict() for erratum in self.errata],
        }


def _check_exactmath(report: VerificationReport, max_n: int = 12):
    table = default_table()
    table.ensure(max_n + 1)
    report.expect(None, 'stirling_recurrence', True, table.check_recurrence())
    for n in range(max_n + 1):
        for k in range(n + 1):
            value = stirling2(n, k)
            report.expect(n, f'stirling2({n},{k}) 容斥', stirling2_inclusion_exclusion(n, k), value)
            report.expect(n, f'部分划分恒等式({n},{k})', stirling2(n + 1, k + 1),
                          value + (k + 1) * stirling2(n, k + 1))
        report.expect(n, 'bell', bell_by_binomial_recurrence(n), bell(n))
    for p in range(1, 21):
        for q in range(p + 1):
            report.expect(p, f'a({p},{q}) 递推',
                          scaled_stirling(p - 1, q - 1) + 2 * q * scaled_stirling(p - 1, q) if q else 0,
                          scaled_stirling(p, q))


def _check_formula_tables(report: VerificationReport, skip: tuple = ('iso_exact',)):
    for name, values in known_values.FORMULA_TABLES.items():
        if name in skip:
            continue
        kind = CountKind.from_name(name)
        for n, expected in values.items():
            report.expect(n, name, expected, evaluate(kind, n).floored)
    for (name, n), published in known_values.PUBLISHED_ERRATA.items():
        got = evaluate(CountKind.from_name(name), n).floored
        if got != published:
            report.note_erratum(n, name, published, got)
    for n, expected in known_values.COMMUTATIVE_SEMIRIGID_BOUND_RATIONAL.items():
        report.expect(n, 'commutative_semirigid_bound 有理值', expected,
                      evaluate(CountKind.COMMUTATIVE_SEMIRIGID_BOUND, n).exact_rational)

    for n in range(3, 13):
        identity = t_identity(n)
        report.expect(n, 't_identity 容斥形式', identity, t_identity_inclusion_exclusion(n))
        report.expect(n, 't_identity 按块数求和', identity, t_identity_shifted_sum(n))
    for n in range(3, 11):
        report.expect(n, '主项', tn_over_nfact_lower_bound(n), dominant_term(n))
        iso = semirigid_iso_bound(n).exact_rational
        selfdual = selfdual_semirigid_bound(n).exact_rational
        report.expect(n, '等价上界 = ½(同构上界 + 自对偶上界)', (iso + selfdual) / 2,
                      evaluate(CountKind.EQUIVALENCE_SEMIRIGID_BOUND, n).exact_rational)


def _check_cycle_types(report: VerificationReport, max_r: int):
    for r in range(1, 11):
        report.expect(r, '共轭类大小之和', factorial(r),
                      sum(factorial(r) // weight(lam) for lam in partitions_of(r)))
    for r in range(1, max_r + 1):
        for lam in partitions_of(r):
            stats = cycle_stats(lam)
            pi = permutation_of_type(lam)
            singular, pairs = square_ccycle_classes(pi)
            report.expect(r, f'δ({lam}) 直接扫描', len(symmetric_ccycles(pi)), stats.delta)
            report.expect(r, f'η({lam}) 直接扫描', len(singular), stats.eta)
            report.expect(r, f'ζ({lam}) 直接扫描', len(pairs), stats.zeta)


def _check_fixed_points(report: VerificationReport, max_r: int):
    for r in range(1, max_r + 1):
        for lam in partitions_of(r):
            pi = permutation_of_type(lam)
            for k in range(1, r * r + 1):
                report.expect(r, f'固定点({lam}, k={k})', fixed_partial_partitions(lam, k),
                              fixed_points_brute(r, k, GroupElement(pi)))
                report.expect(r, f'半刚性固定点({lam}, k={k})',
                              fixed_partial_partitions(lam, k, semirigid=True),
                              semirigidly_fixed_brute(r, k, pi))
                report.expect(r, f'F(πτ)({lam}, k={k})', F_pitau(lam, r + k + 1, r),
                              twisted_fixed_brute(r, k, pi))


def _check_exact(report: VerificationReport, max_n: int, workers: int):
    for n in range(3, max_n + 1):
        report.expect(n, 'iso_exact', known_values.ISO_EXACT[n], iso_classes_exact(n, workers=workers))


def _check_corrections(report: VerificationReport):
    terms = correction_terms(7)
    got = {lam.to_text(): value for _, lam, value in terms}
    report.expect(7, '非半刚性修正项', known_values.CORRECTION_TERMS_7, got)
    total = sum(got.values(), Fraction(0))
    bound = semirigid_iso_bound(7).exact_rational
    report.expect(7, '半刚性上界有理值', Fraction(2398741, 2), bound)
    report.expect(7, '上界 + 修正 = 精确值', known_values.ISO_EXACT[7], bound + total)


def _check_census(report: VerificationReport, max_n: int, allow_slow: bool, workers: int):
    settings = TableSpecs.oracle_settings()
    for n in range(3, max_n + 1):
        census = orbit_census(n, allow_slow=allow_slow, workers=workers,
                              census_max_n=settings.census_max_n, slow_max_n=settings.slow_max_n)
        for name, values in known_values.CENSUS_TABLES.items():
            if n in values:
                report.expect(n, f'普查 {name}', values[n], census.counts[name])
        counts = census.counts
        report.expect(n, '刚性 ≤ 半刚性 ≤ 同构', True,
                      counts['iso_rigid'] <= counts['iso_semirigid'] <= counts['iso'])
        report.expect(n, '半刚性实际值 ≤ 上界 ≤ 精确值', True,
                      counts['iso_semirigid'] <= semirigid_iso_bound(n).floored <= counts['iso'])


def verify(level: str = 'fast', allow_slow: bool = False, cache_file: Optional[str] = None,
           workers: int = 1, progress_callback: Optional[Callable[[int, int, str], None]] = None
           ) -> VerificationReport:
    """运行校验套件

    fast 覆盖全部公式恒等式、r ≤ 2 的固定点对照以及 n ≤ 5 的普查；
    full 把普查扩展到 n = 6（允许慢速时到 7），精确Burnside计数扩展到 n = 8，
    并检查 n = 7 的修正项分解。

    Args:
        level: 'fast' 或 'full'
        allow_slow: 是否允许 n = 7 的普查
        cache_file: 先加载此斯特林表缓存，加载失败记为一次校验失败
        workers: 并行进程数
        progress_callback: 进度回调函数 (current, total, message)

    Returns:
        校验报告
    """
    if level not in LEVELS:
        raise ValueError(f"未知的校验级别: {level!r}（可选: {', '.join(LEVELS)}）")
    settings = TableSpecs.oracle_settings()
    full = level == 'full'
    report = VerificationReport(level=level)

    if cache_file:
        ok, message = StirlingCache(cache_file).load()
        report.expect(None, 'stirling_cache', 'ok', 'ok' if ok else message)

    if full:
        census_max = settings.slow_max_n if allow_slow else settings.census_max_n
    else:
        census_max = settings.verify_fast_oracle_max_n
    steps = [
        ('斯特林数与贝尔数', lambda: _check_exactmath(report)),
        ('公式表值', lambda: _check_formula_tables(report)),
        ('轮换型统计量', lambda: _check_cycle_types(report, 6 if full else 5)),
        ('固定点对照', lambda: _check_fixed_points(report, 3 if full else 2)),
        ('精确同构类数', lambda: _check_exact(report, settings.verify_full_exact_max_n if full else 6, workers)),
        ('暴力普查', lambda: _check_census(report, census_max, allow_slow, workers)),
    ]
    if full:
        steps.append(('修正项分解', lambda: _check_corrections(report)))

    for index, (name, step) in enumerate(steps, 1):
        logger.info("校验步骤 %d/%d: %s", index, len(steps), name)
        step()
        if progress_callback:
            progress_callback(index, len(steps), name)

    logger.info("校验完成: %d 项，失败 %d 项", report.checks_run, len(report.failures))
    return report
