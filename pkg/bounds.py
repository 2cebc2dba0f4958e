#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
计数公式与上界模块
按单位元/表示计数（含交换情形）、t_n/n! 下界，以及半刚性同构、交换、
自对偶、等价四类上界。所有求和用精确有理数进行，最后只取整一次
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import floor
from typing import Callable, Dict, List, Optional, Tuple

from cycletype import IntegerPartition, beta_d, gamma, partitions_of, weight, zeta_eta
from exactmath import bell, binomial, factorial, scaled_stirling, stirling2

logger = logging.getLogger(__name__)

# (r, λ, 项值)；与λ无关的计数λ为None
RankTerm = Tuple[int, Optional[IntegerPartition], Fraction]


class CountKind(Enum):
    """计数种类，每种对应一个公式和一张表中的一列"""
    IDENTITY = 'identity'
    PRESENTATION = 'presentation'
    COMMUTATIVE_IDENTITY = 'commutative_identity'
    COMMUTATIVE_PRESENTATION = 'commutative_presentation'
    RANK_STRATIFIED = 'rank_stratified'
    TN_OVER_NFACT = 'tn_over_nfact'
    SEMIRIGID_ISO_BOUND = 'semirigid_iso_bound'
    COMMUTATIVE_SEMIRIGID_BOUND = 'commutative_semirigid_bound'
    SELFDUAL_SEMIRIGID_BOUND = 'selfdual_semirigid_bound'
    EQUIVALENCE_SEMIRIGID_BOUND = 'equivalence_semirigid_bound'
    ISO_EXACT = 'iso_exact'

    @classmethod
    def from_name(cls, name: str) -> 'CountKind':
        """按名称查找计数种类，名称不合法时抛出ValueError"""
        try:
            return cls(name.strip().lower())
        except ValueError:
            valid = ", ".join(kind.value for kind in cls)
            raise ValueError(f"未知的计数种类: {name!r}（可选: {valid}）")


@dataclass
class BoundResult:
    """一个n上的计数结果，保留逐 (r, λ) 的精确项"""
    n: int
    exact_rational: Fraction
    floored: int
    per_rank_terms: List[RankTerm] = field(default_factory=list)

    @classmethod
    def from_terms(cls, n: int, terms: List[RankTerm]) -> 'BoundResult':
        total = sum((value for _, _, value in terms), Fraction(0))
        return cls(n=n, exact_rational=total, floored=floor(total), per_rank_terms=terms)

    @property
    def rational_text(self) -> str:
        """p/q 形式，整数时只输出p"""
        value = self.exact_rational
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    def to_dict(self, include_terms: bool = False) -> Dict:
        data = {
            'n': self.n,
            'value': str(self.floored),
            'rational': self.rational_text,
        }
        if include_terms:
            data['terms'] = [
                {
                    'r': r,
                    'lambda': lam.to_text() if lam is not None else None,
                    'value': f"{value.numerator}/{value.denominator}" if value.denominator != 1
                    else str(value.numerator),
                }
                for r, lam, value in self.per_rank_terms
            ]
        return data


def _check_order(n: int):
    if n < 3:
        raise ValueError(f"n必须不小于3（低于3阶不存在3-幂零半群）: {n}")


def least_rank(n: int) -> int:
    """满足 r² ≥ n−r−1 的最小r，更小的秩对所有计数都没有贡献"""
    _check_order(n)
    r = 1
    while r * r < n - r - 1:
        r += 1
    return r


def t_presentation(n: int) -> int:
    """按表示计数：Σ_{r=1}^{n−2} S(r²+1, n−r)"""
    _check_order(n)
    return sum(stirling2(r * r + 1, n - r) for r in range(1, n - 1))


def t_identity(n: int) -> int:
    """按单位元计数 t_n：Σ S(r²+1, n−r)·n!/r!"""
    _check_order(n)
    n_fact = factorial(n)
    return sum(stirling2(r * r + 1, n - r) * (n_fact // factorial(r)) for r in range(1, n - 1))


def t_identity_inclusion_exclusion(n: int) -> int:
    """t_n 的容斥形式 Σ_r C(n, r) Σ_j (−1)^{n−r−j} C(n−r, j) j^{r²+1}，r从least_rank起"""
    _check_order(n)
    total = 0
    for r in range(least_rank(n), n - 1):
        k = n - r
        inner = sum((-1) ** (k - j) * binomial(k, j) * j ** (r * r + 1) for j in range(k + 1))
        total += binomial(n, r) * inner
    return total


def t_identity_shifted_sum(n: int) -> int:
    """以块数 k = n−r−1 为求和变量的另一形式

    Σ_r C(n, k+1)(k+1) Σ_i (−1)^i C(k, i)(k+1−i)^{r²}
    """
    _check_order(n)
    total = 0
    for r in range(least_rank(n), n - 1):
        k = n - r - 1
        inner = sum((-1) ** i * binomial(k, i) * (k + 1 - i) ** (r * r) for i in range(k + 1))
        total += binomial(n, k + 1) * (k + 1) * inner
    return total


def commutative_presentation(n: int) -> int:
    """交换情形按表示计数：Σ S(½r(r+1)+1, n−r)"""
    _check_order(n)
    return sum(stirling2(r * (r + 1) // 2 + 1, n - r) for r in range(1, n - 1))


def commutative_identity(n: int) -> int:
    """交换情形按单位元计数：Σ S(½r(r+1)+1, n−r)·n!/r!"""
    _check_order(n)
    n_fact = factorial(n)
    return sum(stirling2(r * (r + 1) // 2 + 1, n - r) * (n_fact // factorial(r))
               for r in range(1, n - 1))


def rank_stratified_presentation(r: int) -> int:
    """秩r的3-幂零半群按表示计数：B_{r²+1} − 1"""
    if r < 1:
        raise ValueError(f"r必须为正整数: {r}")
    return bell(r * r + 1) - 1


def tn_over_nfact_lower_bound(n: int) -> Fraction:
    """同构类个数的下界 t_n/n! = Σ S(r²+1, n−r)/r!"""
    return Fraction(t_identity(n), factorial(n))


def _lambda_sum(n: int, term: Callable[[IntegerPartition, int, int], int]) -> List[RankTerm]:
    """对 r = 1..n−2、λ ⊢ r 求 term(λ, r, k)/w(λ)"""
    _check_order(n)
    terms: List[RankTerm] = []
    for r in range(1, n - 1):
        k = n - r - 1
        for lam in partitions_of(r):
            terms.append((r, lam, Fraction(term(lam, r, k), weight(lam))))
    return terms


def semirigid_iso_bound(n: int) -> BoundResult:
    """半刚性3-幂零半群同构类个数上界 ΣΣ S(β(λ)+1, n−r)/w(λ)"""
    return BoundResult.from_terms(
        n, _lambda_sum(n, lambda lam, r, k: stirling2(beta_d(lam, 1) + 1, n - r)))


def dominant_term(n: int) -> Fraction:
    """半刚性同构上界中 λ = 1^r 各项之和，恒等于 t_n/n!"""
    result = semirigid_iso_bound(n)
    return sum((value for _, lam, value in result.per_rank_terms if lam.parts == ((1, lam.r),)),
               Fraction(0))


def commutative_semirigid_bound(n: int) -> BoundResult:
    """半刚性交换3-幂零半群个数上界，用γ(λ)代替β(λ)"""
    return BoundResult.from_terms(
        n, _lambda_sum(n, lambda lam, r, k: stirling2(gamma(lam) + 1, n - r)))


def F_pitau(lam: IntegerPartition, n: int, r: int) -> int:
    """πτ 在秩k部分划分上的半刚性固定点个数（π为λ型）

    Σ_{j=0}^{ζ} C(ζ, j) Σ_{t=0}^{min(j, ⌊k/2⌋)} a_{j,t}·S(ζ+η−j+1, n−r−2t)，k = n−r−1

    Args:
        lam: π的轮换型
        n: 半群阶数
        r: 秩，须等于|λ|

    Returns:
        固定点个数
    """
    if r != lam.r:
        raise ValueError(f"秩与轮换型不符: r={r}, |λ|={lam.r}")
    if r < 1 or r > n - 2:
        raise ValueError(f"r必须在1到n−2之间: r={r}, n={n}")
    k = n - r - 1
    zeta, eta = zeta_eta(lam)
    total = 0
    for j in range(zeta + 1):
        inner = 0
        for t in range(min(j, k // 2) + 1):
            inner += scaled_stirling(j, t) * stirling2(zeta + eta - j + 1, n - r - 2 * t)
        total += binomial(zeta, j) * inner
    return total


def selfdual_semirigid_bound(n: int) -> BoundResult:
    """自对偶半刚性同构类个数上界 ΣΣ F(πτ)/w(λ)"""
    return BoundResult.from_terms(n, _lambda_sum(n, lambda lam, r, k: F_pitau(lam, n, r)))


def equivalence_semirigid_bound(n: int) -> BoundResult:
    """半刚性等价类个数上界：同构上界与自对偶上界之和的一半"""
    iso_terms = semirigid_iso_bound(n).per_rank_terms
    selfdual_terms = selfdual_semirigid_bound(n).per_rank_terms
    terms = [(r, lam, (a + b) / 2) for (r, lam, a), (_, _, b) in zip(iso_terms, selfdual_terms)]
    return BoundResult.from_terms(n, terms)


def correction_term_1a2b(mu1: int, mu2: int, n: int) -> Fraction:
    """轮换型 1^{μ₁}2^{μ₂} 中恰含一个模2 frieze的部分修正项

    Σ_{t=1}^{β₂} C(β₂, t)·2^{t−1}·S(β₁−t+1, k−1) / w(λ)。
    k = 2、3 时与闭式 ½(3^{β₂}−1)、½(2^{β₁+β₂} − 2^{β₁} − 3^{β₂} + 1) 交叉校验。
    """
    if mu1 < 0 or mu2 < 1:
        raise ValueError(f"需要 μ₁ ≥ 0 且 μ₂ ≥ 1: μ₁={mu1}, μ₂={mu2}")
    multiplicities = {1: mu1, 2: mu2}
    lam = IntegerPartition.from_multiplicities(multiplicities)
    r = lam.r
    if r > n - 2:
        raise ValueError(f"秩 {r} 超出 n−2 = {n - 2}")
    k = n - r - 1
    if k < 2:
        raise ValueError(f"k = {k} < 2，放不下模2的frieze")

    beta1 = beta_d(lam, 1)
    beta2 = beta_d(lam, 2)
    total = sum(binomial(beta2, t) * (1 << (t - 1)) * stirling2(beta1 - t + 1, k - 1)
                for t in range(1, beta2 + 1))

    closed_form = None
    if k == 2:
        closed_form = (3 ** beta2 - 1) // 2
    elif k == 3:
        closed_form = (2 ** (beta1 + beta2) - 2 ** beta1 - 3 ** beta2 + 1) // 2
    if closed_form is not None and closed_form != total:
        raise ArithmeticError(f"修正项与闭式不符: λ={lam}, k={k}, 求和={total}, 闭式={closed_form}")
    return Fraction(total, weight(lam))


def _per_rank(n: int, value: Callable[[int], int]) -> BoundResult:
    return BoundResult.from_terms(n, [(r, None, Fraction(value(r))) for r in range(1, n - 1)])


def evaluate(kind: CountKind, n: int, workers: int = 1) -> BoundResult:
    """按计数种类求值

    rank_stratified 的参数是秩r而不是阶数n。

    Args:
        kind: 计数种类
        n: 阶数（rank_stratified 时为秩）
        workers: iso_exact 的并行进程数

    Returns:
        计数结果
    """
    if kind is CountKind.RANK_STRATIFIED:
        value = rank_stratified_presentation(n)
        return BoundResult.from_terms(n, [(n, None, Fraction(value))])

    _check_order(n)
    n_fact = factorial(n)
    if kind is CountKind.IDENTITY:
        return _per_rank(n, lambda r: stirling2(r * r + 1, n - r) * (n_fact // factorial(r)))
    if kind is CountKind.PRESENTATION:
        return _per_rank(n, lambda r: stirling2(r * r + 1, n - r))
    if kind is CountKind.COMMUTATIVE_IDENTITY:
        return _per_rank(
            n, lambda r: stirling2(r * (r + 1) // 2 + 1, n - r) * (n_fact // factorial(r)))
    if kind is CountKind.COMMUTATIVE_PRESENTATION:
        return _per_rank(n, lambda r: stirling2(r * (r + 1) // 2 + 1, n - r))
    if kind is CountKind.TN_OVER_NFACT:
        return BoundResult.from_terms(n, [
            (r, None, Fraction(stirling2(r * r + 1, n - r) * (n_fact // factorial(r)), n_fact))
            for r in range(1, n - 1)])
    if kind is CountKind.SEMIRIGID_ISO_BOUND:
        return semirigid_iso_bound(n)
    if kind is CountKind.COMMUTATIVE_SEMIRIGID_BOUND:
        return commutative_semirigid_bound(n)
    if kind is CountKind.SELFDUAL_SEMIRIGID_BOUND:
        return selfdual_semirigid_bound(n)
    if kind is CountKind.EQUIVALENCE_SEMIRIGID_BOUND:
        return equivalence_semirigid_bound(n)
    if kind is CountKind.ISO_EXACT:
        # 延迟导入，burnside 不依赖本模块
        from burnside import exact_terms
        result = BoundResult.from_terms(n, exact_terms(n, workers=workers))
        if result.exact_rational.denominator != 1:
            raise ArithmeticError(f"Burnside和不是整数: n={n}, 值={result.exact_rational}")
        return result
    raise ValueError(f"未知的计数种类: {kind}")
