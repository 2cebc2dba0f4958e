#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Burnside精确计数模块
按轮换型统计被置换固定的秩k部分划分（frieze分解），
并由轨道计数公式得到3-幂零半群同构类的精确个数
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Callable, Dict, List, Optional, Tuple

from sympy import divisors

from cycletype import IntegerPartition, _pair_cycles, beta_d, partitions_of, weight
from exactmath import binomial, stirling2

logger = logging.getLogger(__name__)

# (r, λ, 该项的精确有理数值)
Term = Tuple[int, IntegerPartition, Fraction]


@dataclass(frozen=True)
class CcycleMultiset:
    """π在X×X上的c-轮换长度多重集"""
    classes: Tuple[Tuple[int, int], ...]

    @property
    def total_cycles(self) -> int:
        return sum(count for _, count in self.classes)

    @property
    def total_cells(self) -> int:
        return sum(length * count for length, count in self.classes)

    def to_dict(self) -> Dict[str, int]:
        return {str(length): count for length, count in self.classes}


def ccycle_multiset(lam: IntegerPartition) -> CcycleMultiset:
    """每对有序x-轮换 (C_i, C_j) 贡献 gcd(λ_i, λ_j) 个长为 lcm(λ_i, λ_j) 的c-轮换"""
    multiset = CcycleMultiset(_pair_cycles(lam))
    if multiset.total_cells != lam.r ** 2:
        raise ArithmeticError(f"c-轮换未覆盖X×X: λ={lam}, 覆盖 {multiset.total_cells}")
    return multiset


class FixedPointCounter:
    """单个轮换型λ的固定部分划分计数器

    状态为 (各长度类剩余c-轮换个数, 剩余秩)。每一步取第一个非空长度类中的
    一个c-轮换作为指定元素：它要么留在空位部分P₀，要么与按长度类选出的
    若干c-轮换组成一个块；块内长度的每个公约数d对应 d^{t−1} 个frieze，消耗d个秩。
    备忘表只属于这一个λ。
    """

    def __init__(self, lam: IntegerPartition, semirigid: bool = False):
        self.lam = lam
        self.semirigid = semirigid
        self.multiset = ccycle_multiset(lam)
        self.lengths = tuple(length for length, _ in self.multiset.classes)
        self.memo: Dict[Tuple[Tuple[int, ...], int], int] = {}

    def count(self, k: int) -> int:
        """返回λ型置换固定的秩k部分划分个数"""
        if k < 0:
            raise ValueError(f"k必须为非负整数: {k}")
        counts = tuple(count for _, count in self.multiset.classes)
        return self._count(counts, k)

    def _moduli(self, block_gcd: int, k: int) -> List[int]:
        if self.semirigid:
            return [1] if k >= 1 else []
        return [d for d in divisors(block_gcd) if d <= k]

    def _count(self, counts: Tuple[int, ...], k: int) -> int:
        key = (counts, k)
        cached = self.memo.get(key)
        if cached is not None:
            return cached

        remaining_cells = sum(c * l for c, l in zip(counts, self.lengths))
        if remaining_cells == 0:
            result = 1 if k == 0 else 0
        elif k > remaining_cells:
            result = 0
        else:
            first = next(i for i, c in enumerate(counts) if c)
            rest = list(counts)
            rest[first] -= 1

            # 指定c-轮换留在P₀
            result = self._count(tuple(rest), k)

            # 指定c-轮换所在的块：从各长度类挑选其余成员
            for chosen in product(*(range(c + 1) for c in rest)):
                ways = 1
                block_gcd = self.lengths[first]
                size = 1
                for i, c in enumerate(chosen):
                    if c:
                        ways *= binomial(rest[i], c)
                        block_gcd = gcd(block_gcd, self.lengths[i])
                        size += c
                after = tuple(a - c for a, c in zip(rest, chosen))
                for d in self._moduli(block_gcd, k):
                    sub = self._count(after, k - d)
                    if sub:
                        result += ways * d ** (size - 1) * sub

        self.memo[key] = result
        return result


def fixed_partial_partitions(lam: IntegerPartition, k: int, semirigid: bool = False) -> int:
    """被λ型置换（p-作用）固定的秩k部分划分个数

    Args:
        lam: 置换的轮换型
        k: 块数
        semirigid: 为True时只计半刚性固定点（每块被π整体固定，模数恒为1）

    Returns:
        固定点个数
    """
    return FixedPointCounter(lam, semirigid=semirigid).count(k)


def _lambda_term(args: Tuple[int, IntegerPartition, int]) -> Term:
    """进程池任务：单个λ对轨道数的贡献"""
    r, lam, k = args
    fixed = fixed_partial_partitions(lam, k)
    return r, lam, Fraction(fixed, weight(lam))


def exact_terms(n: int, workers: int = 1,
                progress_callback: Optional[Callable[[int, int, str], None]] = None) -> List[Term]:
    """逐 (r, λ) 计算 fixed(λ, n−r−1)/w(λ)

    Args:
        n: 半群阶数
        workers: 并行进程数，1表示在当前进程内计算
        progress_callback: 进度回调函数 (current, total, message)

    Returns:
        按r递增、λ按逆字典序排列的项
    """
    if n < 3:
        raise ValueError(f"n必须不小于3: {n}")
    jobs = [(r, lam, n - r - 1) for r in range(1, n - 1) for lam in partitions_of(r)]
    total = len(jobs)
    terms: List[Term] = []

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            # map保持提交顺序，结果与调度无关
            for index, term in enumerate(executor.map(_lambda_term, jobs), 1):
                terms.append(term)
                if progress_callback:
                    progress_callback(index, total, f"r={term[0]} λ={term[1]}")
    else:
        for index, job in enumerate(jobs, 1):
            terms.append(_lambda_term(job))
            if progress_callback:
                progress_callback(index, total, f"r={job[0]} λ={job[1]}")

    logger.info("n=%d 共计算 %d 个轮换型项", n, total)
    return terms


def iso_classes_exact(n: int, workers: int = 1,
                      progress_callback: Optional[Callable[[int, int, str], None]] = None) -> int:
    """n阶3-幂零半群同构类的精确个数

    Raises:
        ArithmeticError: 轨道计数和不是整数
    """
    total = sum((term for _, _, term in exact_terms(n, workers, progress_callback)), Fraction(0))
    if total.denominator != 1:
        logger.error("n=%d 的Burnside和不是整数: %s", n, total)
        raise ArithmeticError(f"Burnside和不是整数: n={n}, 值={total}")
    return total.numerator


def correction_terms(n: int) -> List[Term]:
    """非半刚性固定点对同构类数的贡献 (fixed − semirigid_fixed)/w(λ)，只返回非零项

    半刚性部分同时与 S(β(λ)+1, k+1) 交叉校验。
    """
    if n < 3:
        raise ValueError(f"n必须不小于3: {n}")
    corrections: List[Term] = []
    for r in range(1, n - 1):
        k = n - r - 1
        for lam in partitions_of(r):
            semirigid_fixed = fixed_partial_partitions(lam, k, semirigid=True)
            expected = stirling2(beta_d(lam, 1) + 1, k + 1)
            if semirigid_fixed != expected:
                raise ArithmeticError(
                    f"半刚性固定点 {semirigid_fixed} 与 S(β+1,k+1)={expected} 不符: λ={lam}, k={k}")
            difference = fixed_partial_partitions(lam, k) - semirigid_fixed
            if difference:
                corrections.append((r, lam, Fraction(difference, weight(lam))))
    return corrections
