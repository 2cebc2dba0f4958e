# -*- coding: utf-8 -*-
from math import comb, factorial

import pytest

from cycletype import (
    IntegerPartition, beta_d, ccycles_of_square, cycle_stats, delta, gamma, partitions_of, weight,
    zeta_eta,
)


def test_partitions_of_order_and_count():
    result = partitions_of(4)
    assert len(result) == 5
    assert result[0].to_text() == '4^1'
    assert result[-1].to_text() == '1^4'
    assert len(partitions_of(8)) == 22


def test_partitions_of_rejects_zero():
    with pytest.raises(ValueError):
        partitions_of(0)


def test_from_text_forms_agree():
    lam = IntegerPartition.from_text('1^2,2^1')
    assert lam.parts == ((2, 1), (1, 2))
    assert IntegerPartition.from_text('2 1 1') == lam
    assert IntegerPartition.from_text('1^2 2') == lam
    assert lam.r == 4
    assert lam.lengths == (2, 1, 1)
    assert lam.to_text() == '1^2,2^1'


@pytest.mark.parametrize('text', ['', '   ', 'a^2', '0^1', '2^x'])
def test_from_text_rejects_bad_input(text):
    with pytest.raises(ValueError):
        IntegerPartition.from_text(text)


def test_parts_must_be_strictly_decreasing():
    with pytest.raises(ValueError):
        IntegerPartition(((1, 2), (2, 1)))


def test_weight_and_class_sizes():
    assert weight(IntegerPartition.from_text('1^2,2^1')) == 4
    assert weight(IntegerPartition.from_text('3^1')) == 3
    for r in range(1, 9):
        assert sum(factorial(r) // weight(lam) for lam in partitions_of(r)) == factorial(r)


def test_beta_counts():
    swap = IntegerPartition.from_text('2^1')
    assert beta_d(swap, 1) == 2
    assert beta_d(swap, 2) == 2
    mixed = IntegerPartition.from_text('1^1,2^1')
    assert beta_d(mixed, 1) == 5
    assert beta_d(mixed, 2) == 4
    assert beta_d(IntegerPartition.from_text('1^2'), 2) == 0
    with pytest.raises(ValueError):
        beta_d(swap, 0)


def test_identity_type_statistics():
    for r in range(1, 7):
        lam = IntegerPartition.from_text(f'1^{r}')
        assert beta_d(lam, 1) == r * r
        assert delta(lam) == r
        assert gamma(lam) == r * (r + 1) // 2
        assert zeta_eta(lam) == (comb(r, 2), r)


def test_square_cycles_cover_grid():
    for r in range(1, 7):
        for lam in partitions_of(r):
            total = sum(length * count for length, count in ccycles_of_square(lam))
            assert total == r * r


def test_cycle_stats_to_dict():
    stats = cycle_stats(IntegerPartition.from_text('2^1'))
    data = stats.to_dict()
    assert data['weight'] == '2'
    assert data['beta'] == {'1': 2, '2': 2}
    assert data['delta'] == 2
    assert data['gamma'] == 2
    assert 2 * data['zeta'] + data['eta'] == 4
