#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
轮换型模块
枚举秩r的整数划分（置换的轮换型），并计算界公式所需的各项统计量：
权重w、β_d、δ、γ、ζ、η
"""

import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, gcd, lcm
from typing import Dict, List, Tuple

from sympy.utilities.iterables import partitions

logger = logging.getLogger(__name__)

# "1^2,2^1" / "1^2 2" / "3" 中的单个分量
_PART_PATTERN = re.compile(r'^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$')


@dataclass(frozen=True)
class IntegerPartition:
    """整数划分 λ = (λ₁^{μ₁}, …, λ_s^{μ_s})

    parts按长度严格递减排列，同一划分只有一种表示。
    """
    parts: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("整数划分不能为空")
        previous = None
        for length, multiplicity in self.parts:
            if length < 1 or multiplicity < 1:
                raise ValueError(f"长度和重数必须为正整数: {self.parts}")
            if previous is not None and length >= previous:
                raise ValueError(f"长度必须严格递减: {self.parts}")
            previous = length

    @classmethod
    def from_multiplicities(cls, multiplicities: Dict[int, int]) -> 'IntegerPartition':
        """由 {长度: 重数} 构造"""
        items = sorted(((l, m) for l, m in multiplicities.items() if m), reverse=True)
        return cls(tuple(items))

    @classmethod
    def from_text(cls, text: str) -> 'IntegerPartition':
        """解析命令行形式的轮换型，如 "1^2,2^1"

        Args:
            text: 逗号或空白分隔的 长度^重数 列表，重数可省略

        Returns:
            对应的整数划分
        """
        if not text or not text.strip():
            raise ValueError("轮换型不能为空")
        multiplicities: Counter = Counter()
        for token in re.split(r"[,\s]+", text.strip()):
            if not token:
                continue
            match = _PART_PATTERN.match(token)
            if not match:
                raise ValueError(f"无法解析轮换型分量: {token!r}")
            length = int(match.group(1))
            multiplicity = int(match.group(2)) if match.group(2) else 1
            multiplicities[length] += multiplicity
        return cls.from_multiplicities(multiplicities)

    @property
    def r(self) -> int:
        return sum(l * m for l, m in self.parts)

    @property
    def lengths(self) -> Tuple[int, ...]:
        """按重数展开的x-轮换长度（递减）"""
        return tuple(l for l, m in self.parts for _ in range(m))

    def to_text(self) -> str:
        return ",".join(f"{l}^{m}" for l, m in reversed(self.parts))

    def __str__(self):
        return self.to_text()


@dataclass
class CycleStats:
    """轮换型λ的派生统计量"""
    weight: int
    beta: Dict[int, int] = field(default_factory=dict)
    delta: int = 0
    gamma: int = 0
    zeta: int = 0
    eta: int = 0

    def beta_at(self, d: int) -> int:
        return self.beta.get(d, 0)

    def to_dict(self) -> Dict:
        """转换为可JSON序列化的字典，大整数输出为十进制字符串"""
        return {
            'weight': str(self.weight),
            'beta': {str(d): value for d, value in sorted(self.beta.items())},
            'delta': self.delta,
            'gamma': self.gamma,
            'zeta': self.zeta,
            'eta': self.eta,
        }


def partitions_of(r: int) -> List[IntegerPartition]:
    """秩r的全部整数划分，按部分列表的逆字典序排列（r¹ 在前，1^r 在后）"""
    if r < 1:
        raise ValueError(f"r必须为正整数: {r}")
    # partitions() 复用同一个字典，必须立即拷贝
    return [IntegerPartition.from_multiplicities(dict(p)) for p in partitions(r)]


def weight(lam: IntegerPartition) -> int:
    """权重 w(λ) = Π λ_i^{μ_i}·μ_i!，r!/w(λ) 为共轭类大小"""
    result = 1
    for length, multiplicity in lam.parts:
        result *= length ** multiplicity * factorial(multiplicity)
    return result


@lru_cache(maxsize=None)
def _pair_cycles(lam: IntegerPartition) -> Tuple[Tuple[int, int], ...]:
    """按有序x-轮换对统计c-轮换：{lcm: 个数}"""
    counts: Counter = Counter()
    for a, mu_a in lam.parts:
        for b, mu_b in lam.parts:
            counts[lcm(a, b)] += mu_a * mu_b * gcd(a, b)
    return tuple(sorted(counts.items()))


def beta_d(lam: IntegerPartition, d: int) -> int:
    """长度被d整除的c-轮换个数 β_d(λ)"""
    if d < 1:
        raise ValueError(f"d必须为正整数: {d}")
    return sum(count for length, count in _pair_cycles(lam) if length % d == 0)


def delta(lam: IntegerPartition) -> int:
    """对称c-轮换总数 δ(λ) = Σ μ_i(1 + e(λ_i))"""
    return sum(m * (1 + (1 if l % 2 == 0 else 0)) for l, m in lam.parts)


def gamma(lam: IntegerPartition) -> int:
    """对称部分划分的构件数 γ(λ) = (β(λ) + δ(λ)) / 2"""
    total = beta_d(lam, 1) + delta(lam)
    if total % 2:
        raise ArithmeticError(f"β+δ 为奇数: λ={lam}")
    return total // 2


def zeta_eta(lam: IntegerPartition) -> Tuple[int, int]:
    """π²的c-轮换中结合对个数ζ与奇异轮换个数η

    对x-轮换逐个求和（重数展开），i < j 的和取遍无序x-轮换对。

    Returns:
        (zeta, eta)
    """
    lengths = lam.lengths
    doubled = 0
    eta = 0
    for length in lengths:
        e = 1 if length % 2 == 0 else 0
        f = 1 if length % 4 == 2 else 0
        doubled += (1 + e) * (length + 1) - 2 * (f + 1)
        eta += 1 - e + 2 * f
    if doubled % 2:
        raise ArithmeticError(f"方块面板的结合对计数不是整数: λ={lam}")
    zeta = doubled // 2
    for i, a in enumerate(lengths):
        for b in lengths[i + 1:]:
            e_ij = 1 if (a % 2 == 0 or b % 2 == 0) else 0
            zeta += (1 + e_ij) * gcd(a, b)
    return zeta, eta


def _square_split(length: int) -> Tuple[int, ...]:
    """x-轮换在π²下的分裂"""
    if length % 2 == 0:
        return (length // 2, length // 2)
    return (length,)


def ccycles_of_square(lam: IntegerPartition) -> Tuple[Tuple[int, int], ...]:
    """π²在X×X上的c-轮换长度多重集，逐面板 C_i×C_j 计算

    Returns:
        按长度升序的 (长度, 个数) 元组
    """
    counts: Counter = Counter()
    for a, mu_a in lam.parts:
        for b, mu_b in lam.parts:
            panels = mu_a * mu_b
            for p in _square_split(a):
                for q in _square_split(b):
                    counts[lcm(p, q)] += panels * gcd(p, q)
    return tuple(sorted(counts.items()))


def cycle_stats(lam: IntegerPartition) -> CycleStats:
    """计算λ的全部统计量，并校验 2ζ+η 等于π²的c-轮换总数"""
    lengths = [length for length, _ in _pair_cycles(lam)]
    beta = {d: beta_d(lam, d) for d in range(1, max(lengths) + 1)}
    zeta, eta = zeta_eta(lam)
    square_total = sum(count for _, count in ccycles_of_square(lam))
    if 2 * zeta + eta != square_total:
        raise ArithmeticError(
            f"2ζ+η={2 * zeta + eta} 与π²的c-轮换数 {square_total} 不符: λ={lam}")
    return CycleStats(
        weight=weight(lam),
        beta=beta,
        delta=delta(lam),
        gamma=gamma(lam),
        zeta=zeta,
        eta=eta,
    )

