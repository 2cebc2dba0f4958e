#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
精确组合数模块
提供第二类斯特林数、贝尔数、二项式系数、阶乘、部分划分计数以及对角缩放斯特林数，
全部使用Python任意精度整数
"""

import logging
import math
import threading
from typing import List, Optional

logger = logging.getLogger(__name__)


class StirlingTable:
    """第二类斯特林数三角表

    按需增长的备忘表，entries[n][k] = S(n, k)。
    行只在持锁时追加，追加前已完整计算，因此并发读取总能看到一致的值。
    """

    def __init__(self, max_n: int = 0):
        self.entries: List[List[int]] = [[1]]
        self.lock = threading.Lock()
        if max_n > 0:
            self.ensure(max_n)

    @property
    def max_n(self) -> int:
        return len(self.entries) - 1

    def ensure(self, n: int):
        """保证表中至少有第n行

        Args:
            n: 需要的最大行号
        """
        if n <= self.max_n:
            return
        with self.lock:
            while len(self.entries) <= n:
                prev = self.entries[-1]
                m = len(self.entries)
                # S(m,k) = k·S(m−1,k) + S(m−1,k−1)
                row = [0] * (m + 1)
                for k in range(1, m + 1):
                    upper = prev[k] if k < m else 0
                    row[k] = k * upper + prev[k - 1]
                self.entries.append(row)
        logger.debug("斯特林表扩展到第 %d 行", n)

    def get(self, n: int, k: int) -> int:
        """返回S(n, k)，越界参数返回0"""
        if n < 0:
            raise ValueError(f"n必须为非负整数: {n}")
        if k < 0 or k > n:
            return 0
        entries = self.entries
        # reset/replace_entries 可能在 ensure 之后换掉整张表
        while len(entries) <= n:
            self.ensure(n)
            entries = self.entries
        return entries[n][k]

    def row(self, n: int) -> List[int]:
        """返回第n行的副本"""
        self.ensure(n)
        return list(self.entries[n])

    def check_recurrence(self, rows: Optional[range] = None) -> bool:
        """逐项检查递推关系

        Args:
            rows: 要检查的行范围，默认检查全部

        Returns:
            表是否满足递推关系及边界条件
        """
        if not self.entries or self.entries[0] != [1]:
            return False
        rows = rows if rows is not None else range(1, len(self.entries))
        for m in rows:
            row = self.entries[m]
            prev = self.entries[m - 1]
            if len(row) != m + 1 or row[0] != 0:
                return False
            for k in range(1, m + 1):
                upper = prev[k] if k < m else 0
                if row[k] != k * upper + prev[k - 1]:
                    return False
        return True

    def replace_entries(self, entries: List[List[int]]):
        """整体替换表内容（缓存加载时使用，调用方负责先校验）"""
        with self.lock:
            self.entries = entries

    def reset(self):
        """清空到只含S(0,0)的初始状态"""
        with self.lock:
            self.entries = [[1]]


# 进程内共享的默认表
_default_table = StirlingTable()


def default_table() -> StirlingTable:
    """获取模块默认斯特林表"""
    return _default_table


def stirling2(n: int, k: int, table: Optional[StirlingTable] = None) -> int:
    """第二类斯特林数S(n, k)：n元集合划分为k个非空块的方式数

    Args:
        n: 非负整数
        k: 任意整数，越界时结果为0

    Returns:
        S(n, k)
    """
    return (table or _default_table).get(n, k)


def partial_partition_count(n: int, k: int) -> int:
    """n元集合的k块部分划分个数，等于S(n+1, k+1)"""
    if n < 0 or k < 0:
        raise ValueError(f"参数必须为非负整数: n={n}, k={k}")
    return stirling2(n + 1, k + 1)


def bell(m: int) -> int:
    """贝尔数B_m，斯特林数第m行的行和"""
    if m < 0:
        raise ValueError(f"m必须为非负整数: {m}")
    return sum(_default_table.row(m))


def bell_by_binomial_recurrence(m: int) -> int:
    """用B_{j+1} = Σ C(j,i)·B_i 独立计算贝尔数"""
    values = [1]
    for j in range(m):
        values.append(sum(math.comb(j, i) * values[i] for i in range(j + 1)))
    return values[m]


def scaled_stirling(p: int, q: int) -> int:
    """对角缩放斯特林数 a_{p,q} = 2^{p−q}·S(p, q)

    计数Y∪Y'上与匹配{y, y'}正交的2q块自对偶划分。
    """
    if p < 0 or q < 0:
        raise ValueError(f"参数必须为非负整数: p={p}, q={q}")
    if q > p:
        return 0
    return (1 << (p - q)) * stirling2(p, q)


def binomial(n: int, k: int) -> int:
    """二项式系数，k < 0 或 k > n 时为0"""
    if n < 0:
        raise ValueError(f"n必须为非负整数: {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def factorial(n: int) -> int:
    """阶乘"""
    if n < 0:
        raise ValueError(f"n必须为非负整数: {n}")
    return math.factorial(n)


def stirling2_inclusion_exclusion(n: int, k: int) -> int:
    """容斥公式 S(n,k) = (1/k!)·Σ_j (−1)^{k−j} C(k,j) j^n，仅用于交叉校验"""
    if k < 0 or k > n:
        return 0
    total = sum((-1) ** (k - j) * math.comb(k, j) * j ** n for j in range(k + 1))
    quotient, remainder = divmod(total, math.factorial(k))
    if remainder:
        raise ArithmeticError(f"容斥和不能被{k}!整除: n={n}, k={k}")
    return quotient
