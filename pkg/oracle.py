#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
暴力枚举模块
在小规模下显式枚举r×r网格的部分划分，施加p-作用与转置，
判定刚性、半刚性、交换性与自对偶性，并按同构与等价统计类数。
用作各公式的独立参照
"""

import logging
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations, product
from math import factorial
from typing import Callable, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation
from sympy.utilities.iterables import multiset_partitions

from cycletype import IntegerPartition

logger = logging.getLogger(__name__)

# 全量普查的默认上限；n = 7 需要显式允许
CENSUS_MAX_N = 6
SLOW_MAX_N = 7

# 分片前缀长度
SHARD_DEPTH = 4

Cell = Tuple[int, int]
ProgressCallback = Callable[[int, int, str], None]

COUNT_NAMES = (
    'presentation', 'identity', 'iso', 'equivalence',
    'iso_semirigid', 'iso_rigid', 'iso_flexible', 'iso_commutative', 'iso_selfdual',
    'equivalence_semirigid', 'selfdual_semirigid', 'identity_rigid',
)


@dataclass(frozen=True)
class PartialPartition:
    """r×r网格上的秩k部分划分

    cells按行优先存放每个格子的块标号，0表示空位部分P₀。
    标号按首次出现的顺序编号（规范形）。
    """
    r: int
    k: int
    cells: Tuple[int, ...]

    def __post_init__(self):
        if len(self.cells) != self.r * self.r:
            raise ValueError(f"格子数 {len(self.cells)} 与 r²={self.r * self.r} 不符")
        expected = 1
        for label in self.cells:
            if label == expected:
                expected += 1
            elif label < 0 or label > expected:
                raise ValueError(f"标号不是规范形: {self.cells}")
        if expected - 1 != self.k:
            raise ValueError(f"块数 {expected - 1} 与 k={self.k} 不符")

    @classmethod
    def from_blocks(cls, r: int, blocks: Sequence[Sequence[Cell]]) -> 'PartialPartition':
        """由块列表构造，格子为0起始的 (x, y)"""
        raw = [0] * (r * r)
        for label, block in enumerate(blocks, 1):
            if not block:
                raise ValueError("块不能为空")
            for x, y in block:
                if raw[x * r + y]:
                    raise ValueError(f"格子 ({x}, {y}) 属于多个块")
                raw[x * r + y] = label
        cells = canonical_labels(raw)
        return cls(r, len(blocks), cells)

    def blocks(self) -> List[FrozenSet[Cell]]:
        """各非空块的格子集合，按标号排列"""
        result: List[set] = [set() for _ in range(self.k)]
        for index, label in enumerate(self.cells):
            if label:
                result[label - 1].add(divmod(index, self.r))
        return [frozenset(block) for block in result]


@dataclass(frozen=True)
class GroupElement:
    """S_r × ⟨τ⟩ 中的元素：置换π（0起始数组），twisted表示随后再作转置τ"""
    pi: Tuple[int, ...]
    twisted: bool = False

    def __post_init__(self):
        if sorted(self.pi) != list(range(len(self.pi))):
            raise ValueError(f"不是置换: {self.pi}")

    @property
    def r(self) -> int:
        return len(self.pi)

    @classmethod
    def identity(cls, r: int, twisted: bool = False) -> 'GroupElement':
        return cls(tuple(range(r)), twisted)

    @classmethod
    def from_cycles(cls, notation: str, r: int, twisted: bool = False) -> 'GroupElement':
        """解析1起始的轮换记法，如 "(1 2)(3)" 或 "1 2;3"

        Args:
            notation: 轮换串，空串表示恒等置换
            r: 集合X的大小
            twisted: 是否随后作转置

        Returns:
            群元素
        """
        cycles = []
        text = notation.strip()
        if text and text != '()':
            groups = re.findall(r'\(([^()]*)\)', text) if '(' in text else text.split(';')
            for group in groups:
                points = [int(token) - 1 for token in re.split(r'[\s,]+', group.strip()) if token]
                if any(p < 0 or p >= r for p in points):
                    raise ValueError(f"轮换中的点超出 1..{r}: {group}")
                if len(points) > 1:
                    cycles.append(points)
        permutation = Permutation(cycles, size=r) if cycles else Permutation(list(range(r)))
        return cls(tuple(permutation.array_form), twisted)

    def cell_sources(self) -> Tuple[int, ...]:
        """像的每个格子来自原网格的哪个格子：image[j] = cells[sources[j]]"""
        r = self.r
        sources = [0] * (r * r)
        for x in range(r):
            for y in range(r):
                if self.twisted:
                    target = self.pi[y] * r + self.pi[x]
                else:
                    target = self.pi[x] * r + self.pi[y]
                sources[target] = x * r + y
        return tuple(sources)


@dataclass
class PartitionFlags:
    rigid: bool
    semirigid: bool
    commutative: bool
    selfdual: bool


@dataclass
class ClassificationReport:
    """n阶普查结果"""
    n: int
    counts: Dict[str, int] = field(default_factory=dict)
    per_rank: Dict[int, Dict[str, int]] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {
            'n': self.n,
            'counts': {name: str(self.counts.get(name, 0)) for name in COUNT_NAMES},
            'per_rank': {str(r): {name: str(value) for name, value in sorted(row.items())}
                         for r, row in sorted(self.per_rank.items())},
        }


def canonical_labels(raw: Sequence[int]) -> Tuple[int, ...]:
    """按首次出现重新编号，0保持为空位"""
    mapping = {0: 0}
    out = []
    for label in raw:
        new = mapping.get(label)
        if new is None:
            new = len(mapping)
            mapping[label] = new
        out.append(new)
    return tuple(out)


def _grow(cells: List[int], pos: int, used: int, k: int) -> Iterator[Tuple[int, ...]]:
    total = len(cells)
    if pos == total:
        if used == k:
            yield tuple(cells)
        return
    remaining = total - pos
    if k - used > remaining:
        return
    if k - used < remaining:
        for label in range(used + 1):
            cells[pos] = label
            yield from _grow(cells, pos + 1, used, k)
    if used < k:
        cells[pos] = used + 1
        yield from _grow(cells, pos + 1, used + 1, k)


def _check_prefix(prefix: Sequence[int], k: int) -> int:
    used = 0
    for label in prefix:
        if label == used + 1:
            used += 1
        elif label < 0 or label > used:
            raise ValueError(f"前缀不是规范形: {tuple(prefix)}")
    if used > k:
        raise ValueError(f"前缀的块数 {used} 超过 k={k}")
    return used


def enumerate_cells(r: int, k: int, prefix: Sequence[int] = ()) -> Iterator[Tuple[int, ...]]:
    """按字典序流式产生以prefix开头的规范标号数组"""
    if r < 1:
        raise ValueError(f"r必须为正整数: {r}")
    if k < 1 or k > r * r:
        raise ValueError(f"k必须在1到r²={r * r}之间: {k}")
    if len(prefix) > r * r:
        raise ValueError(f"前缀长度超过 r²: {len(prefix)}")
    used = _check_prefix(prefix, k)
    cells = list(prefix) + [0] * (r * r - len(prefix))
    return _grow(cells, len(prefix), used, k)


def enumerate_partitions(r: int, k: int, prefix: Sequence[int] = ()) -> Iterator[PartialPartition]:
    """X×X (|X| = r) 的全部秩k部分划分，每个规范形恰好一次"""
    for cells in enumerate_cells(r, k, prefix):
        yield PartialPartition(r, k, cells)


def shard_prefixes(r: int, k: int, depth: int = SHARD_DEPTH) -> List[Tuple[int, ...]]:
    """长度为depth的全部可行前缀，各前缀下的枚举互不相交且覆盖全体"""
    total = r * r
    depth = min(depth, total)
    prefixes: List[Tuple[int, ...]] = []

    def extend(prefix: List[int], used: int):
        if len(prefix) == depth:
            if k - used <= total - depth:
                prefixes.append(tuple(prefix))
            return
        for label in range(min(used + 1, k) + 1):
            prefix.append(label)
            extend(prefix, used + 1 if label == used + 1 else used)
            prefix.pop()

    extend([], 0)
    return prefixes


def act(partition: PartialPartition, g: GroupElement) -> PartialPartition:
    """p-作用（及转置）下的像，重新规范化标号"""
    if g.r != partition.r:
        raise ValueError(f"置换大小 {g.r} 与秩 {partition.r} 不符")
    sources = g.cell_sources()
    raw = [partition.cells[s] for s in sources]
    return PartialPartition(partition.r, partition.k, canonical_labels(raw))


def group_elements(r: int, twisted: bool = False) -> List[GroupElement]:
    """S_r 的全部元素，恒等置换在前"""
    return [GroupElement(pi, twisted) for pi in permutations(range(r))]


def _compare_image(cells: Tuple[int, ...], sources: Tuple[int, ...]) -> Tuple[int, bool]:
    """将像的规范形与cells逐位比较

    Returns:
        (比较结果 −1/0/1, 相等时是否每块都被整体固定)
    """
    mapping = {0: 0}
    for j, source in enumerate(sources):
        label = cells[source]
        new = mapping.get(label)
        if new is None:
            new = len(mapping)
            mapping[label] = new
        current = cells[j]
        if new != current:
            return (-1 if new < current else 1), False
    return 0, all(a == b for a, b in mapping.items())


def _is_commutative(cells: Tuple[int, ...], r: int) -> bool:
    return all(cells[x * r + y] == cells[y * r + x] for x in range(r) for y in range(x + 1, r))


def classify(partition: PartialPartition) -> PartitionFlags:
    """判定刚性、半刚性、交换性、自对偶性"""
    r = partition.r
    cells = partition.cells
    stabilizer = 0
    semirigid = True
    for g in group_elements(r):
        order, block_fixed = _compare_image(cells, g.cell_sources())
        if order == 0:
            stabilizer += 1
            semirigid = semirigid and block_fixed
    selfdual = any(_compare_image(cells, g.cell_sources())[0] == 0
                   for g in group_elements(r, twisted=True))
    return PartitionFlags(
        rigid=stabilizer == 1,
        semirigid=semirigid,
        commutative=_is_commutative(cells, r),
        selfdual=selfdual,
    )


def _census_shard(args: Tuple[int, int, Tuple[int, ...]]) -> Counter:
    """统计一个前缀分片内的轨道代表元（进程池任务）"""
    r, k, prefix = args
    plain = [g.cell_sources() for g in group_elements(r)]
    twisted = [g.cell_sources() for g in group_elements(r, twisted=True)]
    r_fact = factorial(r)
    counts: Counter = Counter()

    for cells in enumerate_cells(r, k, prefix):
        stabilizer = 0
        semirigid = True
        minimal = True
        for sources in plain:
            order, block_fixed = _compare_image(cells, sources)
            if order < 0:
                minimal = False
                break
            if order == 0:
                stabilizer += 1
                semirigid = semirigid and block_fixed
        if not minimal:
            continue

        selfdual = False
        equivalence_minimal = True
        for sources in twisted:
            order, _ = _compare_image(cells, sources)
            if order < 0:
                equivalence_minimal = False
            elif order == 0:
                selfdual = True
            if selfdual and not equivalence_minimal:
                break

        rigid = stabilizer == 1
        counts['iso'] += 1
        counts['presentation'] += r_fact // stabilizer
        if rigid:
            counts['iso_rigid'] += 1
        if semirigid:
            counts['iso_semirigid'] += 1
        if _is_commutative(cells, r):
            counts['iso_commutative'] += 1
        if selfdual:
            counts['iso_selfdual'] += 1
            if semirigid:
                counts['selfdual_semirigid'] += 1
        if equivalence_minimal:
            counts['equivalence'] += 1
            if semirigid:
                counts['equivalence_semirigid'] += 1
    return counts


def census_layer(r: int, k: int, workers: int = 1, shard_depth: int = SHARD_DEPTH,
                 progress_callback: Optional[ProgressCallback] = None) -> Counter:
    """单个秩层 (r, k) 的普查，按前缀分片，结果与分片方式无关"""
    jobs = [(r, k, prefix) for prefix in shard_prefixes(r, k, shard_depth)]
    total = len(jobs)
    counts: Counter = Counter()

    if workers > 1 and total > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            for index, shard in enumerate(executor.map(_census_shard, jobs), 1):
                counts.update(shard)
                if progress_callback:
                    progress_callback(index, total, f"r={r} k={k} 分片 {index}/{total}")
    else:
        for index, job in enumerate(jobs, 1):
            counts.update(_census_shard(job))
            if progress_callback:
                progress_callback(index, total, f"r={r} k={k} 分片 {index}/{total}")
    return counts


def orbit_census(n: int, allow_slow: bool = False, workers: int = 1,
                 census_max_n: int = CENSUS_MAX_N, slow_max_n: int = SLOW_MAX_N,
                 progress_callback: Optional[ProgressCallback] = None) -> ClassificationReport:
    """n阶3-幂零半群的全量普查

    逐秩枚举规范部分划分，只统计各轨道的字典序最小元，
    并用轨道大小交叉校验按表示、按单位元的计数。

    Args:
        n: 阶数
        allow_slow: 是否允许超过默认上限（至多slow_max_n）
        workers: 并行进程数
        census_max_n: 默认上限
        slow_max_n: 允许慢速时的上限
        progress_callback: 进度回调函数 (current, total, message)

    Returns:
        普查报告
    """
    cap = slow_max_n if allow_slow else census_max_n
    if n < 3:
        raise ValueError(f"n必须不小于3: {n}")
    if n > cap:
        hint = "" if allow_slow else "（需要 --allow-slow）"
        raise ValueError(f"n={n} 超出暴力枚举上限 {cap}{hint}")

    report = ClassificationReport(n=n)
    totals: Counter = Counter()
    n_fact = factorial(n)
    for r in range(1, n - 1):
        k = n - r - 1
        if k > r * r:
            continue
        logger.info("普查 n=%d 的秩层 r=%d, k=%d", n, r, k)
        layer = census_layer(r, k, workers=workers, progress_callback=progress_callback)
        layer['iso_flexible'] = layer['iso'] - layer['iso_rigid']
        layer['identity'] = layer['presentation'] * (n_fact // factorial(r))
        layer['identity_rigid'] = layer['iso_rigid'] * n_fact
        report.per_rank[r] = dict(layer)
        totals.update(layer)

    report.counts = {name: totals.get(name, 0) for name in COUNT_NAMES}
    _cross_check(report)
    return report


def _cross_check(report: ClassificationReport):
    """与闭式计数以及等价类公式 ½(同构 + 自对偶) 对照"""
    from bounds import t_identity, t_presentation

    counts = report.counts
    checks = [
        ('presentation', counts['presentation'], t_presentation(report.n)),
        ('identity', counts['identity'], t_identity(report.n)),
        ('equivalence', 2 * counts['equivalence'], counts['iso'] + counts['iso_selfdual']),
        ('equivalence_semirigid', 2 * counts['equivalence_semirigid'],
         counts['iso_semirigid'] + counts['selfdual_semirigid']),
    ]
    for name, got, expected in checks:
        if got != expected:
            logger.error("普查交叉校验失败: %s 得到 %d，应为 %d", name, got, expected)
            raise ArithmeticError(f"普查交叉校验失败: n={report.n}, {name}: {got} != {expected}")


def fixed_points_brute(r: int, k: int, g: GroupElement, semirigid_only: bool = False) -> int:
    """枚举统计满足 P·g = P 的秩k部分划分个数

    Args:
        r: 秩
        k: 块数
        g: 群元素
        semirigid_only: 只计半刚性固定点。未转置时要求π整体固定每个块；
            转置时要求π²整体固定每个块

    Returns:
        固定点个数
    """
    if g.r != r:
        raise ValueError(f"置换大小 {g.r} 与秩 {r} 不符")
    sources = g.cell_sources()
    square_sources = None
    if semirigid_only and g.twisted:
        square = tuple(g.pi[g.pi[x]] for x in range(r))
        square_sources = GroupElement(square).cell_sources()

    count = 0
    for cells in enumerate_cells(r, k):
        order, block_fixed = _compare_image(cells, sources)
        if order != 0:
            continue
        if semirigid_only:
            if square_sources is not None:
                if any(cells[s] != cells[j] for j, s in enumerate(square_sources)):
                    continue
            elif not block_fixed:
                continue
        count += 1
    return count


def semirigidly_fixed_brute(r: int, k: int, pi: Tuple[int, ...]) -> int:
    """π整体固定每个块的秩k部分划分个数"""
    return fixed_points_brute(r, k, GroupElement(tuple(pi)), semirigid_only=True)


def twisted_fixed_brute(r: int, k: int, pi: Tuple[int, ...]) -> int:
    """被πτ固定且π²整体固定每个块的秩k部分划分个数"""
    return fixed_points_brute(r, k, GroupElement(tuple(pi), twisted=True), semirigid_only=True)


def permutation_of_type(lam: IntegerPartition) -> Tuple[int, ...]:
    """构造轮换型为λ的一个具体置换，轮换由连续的点组成"""
    cycles = []
    start = 0
    for length in sorted(lam.lengths):
        if length > 1:
            cycles.append(list(range(start, start + length)))
        start += length
    if not cycles:
        return tuple(range(lam.r))
    return tuple(Permutation(cycles, size=lam.r).array_form)


def _cell_orbits(r: int, step: Callable[[Cell], Cell]) -> List[Tuple[Cell, ...]]:
    seen = set()
    orbits = []
    for x in range(r):
        for y in range(r):
            if (x, y) in seen:
                continue
            orbit = [(x, y)]
            seen.add((x, y))
            current = step((x, y))
            while current != (x, y):
                orbit.append(current)
                seen.add(current)
                current = step(current)
            orbits.append(tuple(orbit))
    return orbits


def ccycles(pi: Sequence[int]) -> List[Tuple[Cell, ...]]:
    """π在X×X上的c-轮换，每个按 c, cπ, cπ², … 的顺序给出"""
    return _cell_orbits(len(pi), lambda c: (pi[c[0]], pi[c[1]]))


def symmetric_ccycles(pi: Sequence[int]) -> List[Tuple[Cell, ...]]:
    """在转置下整体不变的c-轮换"""
    result = []
    for cycle in ccycles(pi):
        members = set(cycle)
        if all((y, x) in members for x, y in cycle):
            result.append(cycle)
    return result


def is_symmetric_form(cycle: Tuple[Cell, ...], pi: Sequence[int]) -> bool:
    """非对角c-轮换的对称判据：长度s为偶数且形如 {(x, xπ^{s/2})π^i}"""
    s = len(cycle)
    if s % 2:
        return False
    for x, y in cycle:
        target = x
        for _ in range(s // 2):
            target = pi[target]
        if target == y:
            return True
    return False


def square_ccycle_classes(pi: Sequence[int]) -> Tuple[List[Tuple[Cell, ...]], List[Tuple[Tuple[Cell, ...], Tuple[Cell, ...]]]]:
    """π²的c-轮换按πτ分类

    Returns:
        (奇异轮换列表, 结合对列表)
    """
    r = len(pi)
    square = [pi[pi[x]] for x in range(r)]
    cycles = _cell_orbits(r, lambda c: (square[c[0]], square[c[1]]))
    index = {}
    for i, cycle in enumerate(cycles):
        for cell in cycle:
            index[cell] = i
    singular = []
    pairs = []
    for i, cycle in enumerate(cycles):
        x, y = cycle[0]
        partner = index[(pi[y], pi[x])]
        if partner == i:
            singular.append(cycle)
        elif i < partner:
            pairs.append((cycle, cycles[partner]))
    return singular, pairs


def friezes(cycles: Sequence[Sequence[Cell]], d: int) -> List[Tuple[FrozenSet[Cell], ...]]:
    """由截面与模数d构造c-轮换并集上的全部frieze

    每个c-轮换按轨道顺序给出；截面取每个轮换中的一个起点，
    第i块为各轮换中与起点相差 i (mod d) 步的格子。

    Args:
        cycles: 一组c-轮换
        d: 模数，须整除全部轮换长度

    Returns:
        互不相同的frieze，每个是d个块组成的元组
    """
    if d < 1:
        raise ValueError(f"d必须为正整数: {d}")
    for cycle in cycles:
        if len(cycle) % d:
            raise ValueError(f"模数 {d} 不整除轮换长度 {len(cycle)}")
    seen = set()
    result = []
    for offsets in product(*(range(len(cycle)) for cycle in cycles)):
        blocks = []
        for i in range(d):
            block = set()
            for cycle, offset in zip(cycles, offsets):
                block.update(cycle[(offset + i + step) % len(cycle)]
                             for step in range(0, len(cycle), d))
            blocks.append(frozenset(block))
        key = frozenset(blocks)
        if key not in seen:
            seen.add(key)
            result.append(tuple(blocks))
    return result


def orthogonal_selfdual_count(p: int, q: int) -> int:
    """Y ∪ Y′ 上与匹配 {y, y′} 正交、且在 y ↦ y′ 下不变的2q块划分个数"""
    if p < 0 or q < 0:
        raise ValueError(f"参数必须为非负整数: p={p}, q={q}")
    if p == 0:
        return 1 if q == 0 else 0
    if 2 * q > 2 * p or q == 0:
        return 0

    def dual(element: int) -> int:
        return element + p if element < p else element - p

    count = 0
    for partition in multiset_partitions(list(range(2 * p)), 2 * q):
        blocks = {frozenset(block) for block in partition}
        if any(dual(y) in block for block in blocks for y in block):
            continue
        if {frozenset(dual(y) for y in block) for block in blocks} == blocks:
            count += 1
    return count
