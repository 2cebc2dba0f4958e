# -*- coding: utf-8 -*-
from fractions import Fraction

import pytest

import known_values
from bounds import semirigid_iso_bound
from burnside import (
    FixedPointCounter, ccycle_multiset, correction_terms, exact_terms, fixed_partial_partitions,
    iso_classes_exact,
)
from cycletype import IntegerPartition, beta_d, partitions_of
from exactmath import stirling2


def lam(text):
    return IntegerPartition.from_text(text)


def test_ccycle_multiset_of_transposition():
    multiset = ccycle_multiset(lam('2^1'))
    assert multiset.to_dict() == {'2': 2}
    assert multiset.total_cycles == 2
    assert multiset.total_cells == 4


def test_ccycle_multiset_mixed_lengths():
    multiset = ccycle_multiset(lam('2^1,3^1'))
    # (2,2): 2个长2；(3,3): 3个长3；(2,3)与(3,2): 各1个长6
    assert multiset.to_dict() == {'2': 2, '3': 3, '6': 2}
    assert multiset.total_cells == 25


@pytest.mark.parametrize('text,k,expected', [
    ('2^1', 1, 3),
    ('2^1', 2, 5),
    ('1^2', 1, 15),
    ('1^1', 1, 1),
    ('1^1', 2, 0),
])
def test_fixed_partial_partitions_small(text, k, expected):
    assert fixed_partial_partitions(lam(text), k) == expected


def test_identity_fixes_everything():
    for r in range(1, 4):
        for k in range(0, r * r + 1):
            assert fixed_partial_partitions(lam(f'1^{r}'), k) == stirling2(r * r + 1, k + 1)


def test_semirigid_fixed_points_closed_form():
    for r in range(1, 5):
        for partition in partitions_of(r):
            beta = beta_d(partition, 1)
            for k in range(0, 6):
                assert fixed_partial_partitions(partition, k, semirigid=True) == stirling2(beta + 1, k + 1)


def test_counter_reuses_memo_across_k():
    counter = FixedPointCounter(lam('1^1,2^1'))
    first = counter.count(3)
    size = len(counter.memo)
    assert counter.count(3) == first
    assert len(counter.memo) == size
    with pytest.raises(ValueError):
        counter.count(-1)


@pytest.mark.parametrize('n', [3, 4, 5, 6, 7])
def test_iso_classes_exact(n):
    assert iso_classes_exact(n) == known_values.ISO_EXACT[n]


@pytest.mark.slow
@pytest.mark.parametrize('n', [8, 9, 10])
def test_iso_classes_exact_large(n):
    assert iso_classes_exact(n) == known_values.ISO_EXACT[n]


def test_exact_terms_order_and_progress():
    calls = []
    terms = exact_terms(5, progress_callback=lambda current, total, message: calls.append((current, total)))
    assert [(r, p.to_text()) for r, p, _ in terms] == [
        (1, '1^1'), (2, '2^1'), (2, '1^2'), (3, '3^1'), (3, '1^1,2^1'), (3, '1^3'),
    ]
    assert calls[-1] == (6, 6)
    assert sum((value for _, _, value in terms), Fraction(0)) == 118


def test_exact_terms_parallel_matches_serial():
    assert exact_terms(6, workers=2) == exact_terms(6)


def test_exact_terms_rejects_small_order():
    with pytest.raises(ValueError):
        exact_terms(2)


def test_correction_terms_at_seven():
    terms = correction_terms(7)
    got = {partition.to_text(): value for _, partition, value in terms}
    assert got == known_values.CORRECTION_TERMS_7
    assert sum(got.values()) == Fraction(1237, 2)


def test_no_corrections_below_five():
    # 非半刚性固定点至少需要k ≥ 2
    assert correction_terms(3) == []
    assert correction_terms(4) == []


def test_exact_terms_at_five():
    terms = {(r, p.to_text()): value for r, p, value in exact_terms(5)}
    assert terms[(3, '1^3')] == Fraction(511, 6)
    assert terms[(3, '1^1,2^1')] == Fraction(31, 2)
    assert terms[(3, '3^1')] == Fraction(7, 3)
    assert terms[(2, '1^2')] + terms[(2, '2^1')] == 15


@pytest.mark.parametrize('n', [5, 6, 7])
def test_bound_plus_corrections_is_exact(n):
    corrections = sum((value for _, _, value in correction_terms(n)), Fraction(0))
    assert semirigid_iso_bound(n).exact_rational + corrections == known_values.ISO_EXACT[n]
