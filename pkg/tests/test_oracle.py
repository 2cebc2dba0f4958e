# -*- coding: utf-8 -*-
import itertools
from math import factorial

import pytest

import known_values
from bounds import F_pitau
from burnside import fixed_partial_partitions
from cycletype import cycle_stats, partitions_of
from exactmath import scaled_stirling, stirling2
from oracle import (
    GroupElement, PartialPartition, act, ccycles, census_layer, classify, enumerate_cells,
    enumerate_partitions, fixed_points_brute, friezes, group_elements, is_symmetric_form, orbit_census,
    orthogonal_selfdual_count, permutation_of_type, semirigidly_fixed_brute, shard_prefixes,
    square_ccycle_classes, symmetric_ccycles, twisted_fixed_brute,
)


def test_enumeration_counts_partial_partitions():
    for r in (1, 2):
        for k in range(1, r * r + 1):
            assert sum(1 for _ in enumerate_cells(r, k)) == stirling2(r * r + 1, k + 1)
    assert sum(1 for _ in enumerate_cells(3, 2)) == stirling2(10, 3)


def test_enumeration_is_canonical_and_ordered():
    cells = list(enumerate_cells(2, 2))
    assert cells == sorted(cells)
    assert len(set(cells)) == len(cells)
    for partition in enumerate_partitions(2, 2):
        assert partition.k == 2
        assert len(partition.blocks()) == 2


def test_enumeration_rejects_bad_arguments():
    with pytest.raises(ValueError):
        list(enumerate_cells(2, 5))
    with pytest.raises(ValueError):
        list(enumerate_cells(2, 1, prefix=(2,)))
    with pytest.raises(ValueError):
        list(enumerate_cells(0, 1))


def test_shards_cover_enumeration_exactly_once():
    full = list(enumerate_cells(2, 2))
    sharded = []
    for prefix in shard_prefixes(2, 2, depth=2):
        sharded.extend(enumerate_cells(2, 2, prefix))
    assert sorted(sharded) == full


def test_partial_partition_validation():
    with pytest.raises(ValueError):
        PartialPartition(2, 2, (2, 1, 0, 0))
    with pytest.raises(ValueError):
        PartialPartition(2, 1, (1, 0, 0))
    with pytest.raises(ValueError):
        PartialPartition(2, 2, (1, 0, 0, 0))


def test_from_blocks_canonicalises_labels():
    partition = PartialPartition.from_blocks(2, [[(1, 1)], [(0, 0), (0, 1)]])
    assert partition.cells == (1, 1, 0, 2)
    assert partition.blocks() == [frozenset({(0, 0), (0, 1)}), frozenset({(1, 1)})]
    with pytest.raises(ValueError):
        PartialPartition.from_blocks(2, [[(0, 0)], [(0, 0)]])


def test_group_element_from_cycles():
    assert GroupElement.from_cycles('(1 2)', 3).pi == (1, 0, 2)
    assert GroupElement.from_cycles('1 2;3', 3).pi == (1, 0, 2)
    assert GroupElement.from_cycles('(1 2 3)', 3).pi == (1, 2, 0)
    assert GroupElement.from_cycles('', 2) == GroupElement.identity(2)
    assert GroupElement.from_cycles('(1)(2)', 2).pi == (0, 1)
    with pytest.raises(ValueError):
        GroupElement.from_cycles('(1 4)', 3)


def test_group_element_rejects_non_permutation():
    with pytest.raises(ValueError):
        GroupElement((0, 0))


def test_transpose_action():
    partition = PartialPartition.from_blocks(2, [[(0, 1)]])
    image = act(partition, GroupElement.identity(2, twisted=True))
    assert image.blocks() == [frozenset({(1, 0)})]
    swap = GroupElement((1, 0))
    assert act(partition, swap).blocks() == [frozenset({(1, 0)})]
    with pytest.raises(ValueError):
        act(partition, GroupElement.identity(3))


def test_classify_flags():
    # 单个非对角格子：可交换性不成立，转置与交换置换都把它映到(1, 0)
    partition = PartialPartition.from_blocks(2, [[(0, 1)]])
    flags = classify(partition)
    assert flags.rigid
    assert flags.semirigid
    assert not flags.commutative
    assert flags.selfdual

    diagonal = PartialPartition.from_blocks(2, [[(0, 0), (1, 1)]])
    flags = classify(diagonal)
    assert not flags.rigid
    assert flags.semirigid
    assert flags.commutative

    split = PartialPartition.from_blocks(2, [[(0, 0)], [(1, 1)]])
    assert not classify(split).semirigid


def test_brute_force_fixed_points_match_counter():
    for r in (1, 2):
        for partition in partitions_of(r):
            pi = permutation_of_type(partition)
            for k in range(1, r * r + 1):
                assert fixed_points_brute(r, k, GroupElement(pi)) == fixed_partial_partitions(partition, k)
                assert semirigidly_fixed_brute(r, k, pi) == fixed_partial_partitions(partition, k, semirigid=True)
                assert twisted_fixed_brute(r, k, pi) == F_pitau(partition, r + k + 1, r)


def test_brute_force_fixed_points_rank_three():
    partition = partitions_of(3)[1]
    pi = permutation_of_type(partition)
    for k in (1, 2, 3):
        assert fixed_points_brute(3, k, GroupElement(pi)) == fixed_partial_partitions(partition, k)


def test_permutation_of_type():
    for r in range(1, 6):
        for partition in partitions_of(r):
            pi = permutation_of_type(partition)
            assert sorted(pi) == list(range(r))
            lengths = []
            seen = set()
            for start in range(r):
                if start in seen:
                    continue
                length, point = 0, start
                while point not in seen:
                    seen.add(point)
                    point = pi[point]
                    length += 1
                lengths.append(length)
            assert sorted(lengths, reverse=True) == list(partition.lengths)


def test_direct_scans_match_statistics():
    for r in range(1, 5):
        for partition in partitions_of(r):
            stats = cycle_stats(partition)
            pi = permutation_of_type(partition)
            singular, pairs = square_ccycle_classes(pi)
            assert len(symmetric_ccycles(pi)) == stats.delta
            assert len(singular) == stats.eta
            assert len(pairs) == stats.zeta
            assert len(ccycles(pi)) == stats.beta_at(1)


def test_symmetric_form_criterion():
    swap = (1, 0)
    cycles = ccycles(swap)
    diagonal = next(c for c in cycles if (0, 0) in c)
    off_diagonal = next(c for c in cycles if (0, 1) in c)
    assert is_symmetric_form(off_diagonal, swap)
    assert not is_symmetric_form(diagonal, swap)


def test_friezes_count():
    swap = (1, 0)
    cycles = ccycles(swap)
    # 两个长2的c-轮换取模2：2^{t−1} = 2 个frieze
    result = friezes(cycles, 2)
    assert len(result) == 2
    for frieze in result:
        assert len(frieze) == 2
        assert frozenset().union(*frieze) == frozenset((x, y) for x in range(2) for y in range(2))
    assert len(friezes(cycles, 1)) == 1
    with pytest.raises(ValueError):
        friezes(cycles, 3)


def test_orthogonal_selfdual_count_matches_scaled_stirling():
    for p in range(0, 5):
        for q in range(0, p + 1):
            assert orthogonal_selfdual_count(p, q) == scaled_stirling(p, q)


def test_census_at_four():
    report = orbit_census(4)
    for name, expected in known_values.CENSUS_4.items():
        assert report.counts[name] == expected
    assert report.counts['presentation'] == known_values.PRESENTATION[4]
    assert report.counts['identity'] == known_values.IDENTITY[4]
    assert report.counts['iso_flexible'] == report.counts['iso'] - report.counts['iso_rigid']


def test_census_at_five():
    counts = orbit_census(5).counts
    for name, values in known_values.CENSUS_TABLES.items():
        if 5 in values:
            assert counts[name] == values[5], name


@pytest.mark.slow
def test_census_at_six():
    counts = orbit_census(6, workers=2).counts
    for name, values in known_values.CENSUS_TABLES.items():
        if 6 in values:
            assert counts[name] == values[6], name


def test_census_layer_independent_of_sharding():
    serial = census_layer(2, 2, shard_depth=1)
    assert census_layer(2, 2, shard_depth=3) == serial
    assert census_layer(2, 2, workers=2, shard_depth=2) == serial


def test_census_caps():
    with pytest.raises(ValueError):
        orbit_census(7)
    with pytest.raises(ValueError):
        orbit_census(8, allow_slow=True)
    with pytest.raises(ValueError):
        orbit_census(2)


def test_report_serialises_counts_as_strings():
    data = orbit_census(3).to_dict()
    assert data['n'] == 3
    assert data['counts']['iso'] == '1'
    assert data['per_rank'] == {'1': data['per_rank']['1']}


def test_flags_are_invariant_under_action():
    cases = [(2, k) for k in range(1, 5)] + [(3, 1)]
    for r, k in cases:
        elements = group_elements(r)
        for partition in enumerate_partitions(r, k):
            flags = classify(partition)
            for g in elements:
                assert classify(act(partition, g)) == flags


@pytest.mark.slow
def test_brute_force_fixed_points_all_rank_three_types():
    for partition in partitions_of(3):
        pi = permutation_of_type(partition)
        for k in range(1, 10):
            assert fixed_points_brute(3, k, GroupElement(pi)) == fixed_partial_partitions(partition, k)
            assert twisted_fixed_brute(3, k, pi) == F_pitau(partition, k + 4, 3)


def test_symmetric_form_criterion_for_every_permutation():
    for r in range(1, 6):
        for pi in itertools.permutations(range(r)):
            for cycle in ccycles(pi):
                if any(x == y for x, y in cycle):
                    continue
                members = set(cycle)
                closed = all((y, x) in members for x, y in cycle)
                assert is_symmetric_form(cycle, pi) == closed, (pi, cycle)


def test_commutative_partitions_are_selfdual():
    found = 0
    for r in range(1, 4):
        for k in range(1, min(r * r, 3) + 1):
            for partition in enumerate_partitions(r, k):
                flags = classify(partition)
                if flags.commutative:
                    found += 1
                    assert flags.selfdual, partition.cells
    assert found > 0


def test_fixed_point_total_matches_orbit_count():
    for r in range(1, 4):
        elements = group_elements(r)
        for k in range(1, min(r * r, 4) + 1):
            total = sum(fixed_points_brute(r, k, g) for g in elements)
            assert total == factorial(r) * census_layer(r, k)['iso'], (r, k)
