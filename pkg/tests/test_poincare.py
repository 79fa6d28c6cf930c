from math import comb

import pytest

from antichain.core import Partition, brute_force_fpp, enumerate_fpp, is_antichain
from antichain.errors import ScaleGuardError, ValidationError
from antichain.hnf import OneColumnHnf, hnf_fpp
from antichain.partitions import iter_partitions
from antichain.poincare import (
    FpaTable,
    TruncatedSeries,
    antichain_series,
    bar_betti_small,
    bar_dimensions,
    check_differential_squares_to_zero,
    coarsen,
    full_poincare,
    is_associative,
    polynomial_ring_factor,
    word_count_oracle,
)


def pts(*parts):
    return enumerate_fpp(Partition(parts))


def only_constant(series: TruncatedSeries) -> bool:
    return series.nonzero() == {(0, 0): 1}


def one_plus_zt_power(k, zo, td):
    return {(i, i): comb(k, i) for i in range(min(k, zo, td) + 1)}


def test_series_arithmetic():
    s = TruncatedSeries.from_terms({(0, 0): 1, (1, 2): -3}, 3, 8)
    inv = s.inverse()
    assert inv.nonzero() == {(0, 0): 1, (1, 2): 3, (2, 4): 9, (3, 6): 27}
    assert only_constant(s * inv)
    with pytest.raises(ValidationError):
        TruncatedSeries.zero(2, 2).inverse()


def test_bar_dimensions_examples():
    assert only_constant(bar_dimensions(pts(1, 1), 6, 20))
    dims = bar_dimensions(pts(2, 1, 1), 6, 20)
    assert dims.nonzero() == {(k, 2 * k): 2**k for k in range(7)}
    p82 = pts(8, 2)
    row = bar_dimensions(p82, 1, 10).coeffs[1]
    for h in range(1, 11):
        assert row[h] == sum(1 for p in p82 if p.b and p.height == h)


def test_guards():
    with pytest.raises(ScaleGuardError):
        bar_dimensions(pts(2, 1, 1), 9, 10)
    with pytest.raises(ScaleGuardError):
        antichain_series(pts(2, 1, 1), 2, 65)
    with pytest.raises(ScaleGuardError):
        bar_betti_small(pts(2, 2), None, 5, 4)
    with pytest.raises(ScaleGuardError):
        bar_betti_small(pts(12, 2), None, 2, 4)


def test_antichain_series_examples():
    s = antichain_series(pts(2, 1, 1), 6, 20)
    assert s.nonzero() == {(k, 2 * k): 2**k for k in range(7)}
    assert only_constant(antichain_series(pts(1, 1), 6, 20))
    heights = [p.height for p in pts(1, 1, 1, 1) if p.b]
    # p(1) = (3; 1, 1, 1, 1), p(2) = (2; 1, 1, 1, 1)
    assert heights == [3, 2]
    assert sorted(q.height for q in brute_force_fpp(Partition((1, 1, 1, 1))) if q.b) == [2, 3]
    assert antichain_series(pts(1, 1, 1, 1), 5, 12) == word_count_oracle(heights, 5, 12)
    with pytest.raises(ValidationError):
        antichain_series(pts(2, 2), 3, 6)


def test_full_poincare_examples():
    assert full_poincare(Partition((1, 1)), 6, 20).nonzero() == one_plus_zt_power(3, 6, 20)
    assert full_poincare(Partition((2,)), 6, 20).nonzero() == one_plus_zt_power(2, 6, 20)
    expected = polynomial_ring_factor(3, 6, 20) * antichain_series(pts(2, 1, 1), 6, 20)
    assert full_poincare(Partition((2, 1, 1)), 6, 20) == expected
    assert full_poincare(Partition((2, 1, 1)), 2, 6)[1, 1] == 4
    with pytest.raises(ValidationError):
        full_poincare(Partition((2, 2)), 3, 6)


def test_antichain_series_equals_bar_dimensions():
    for n in range(2, 13):
        for lam in iter_partitions(n):
            if is_antichain(lam):
                p = enumerate_fpp(lam)
                assert antichain_series(p, 6, 40) == bar_dimensions(p, 6, 40), lam


def test_rationality_recurrence():
    p = pts(3, 2, 1, 1)
    assert is_antichain(Partition((3, 2, 1, 1)))
    s = antichain_series(p, 6, 30)
    heights = [q.height for q in p if q.b]
    for i in range(1, 7):
        for h in range(31):
            assert s[i, h] == sum(s[i - 1, h - ht] for ht in heights if h >= ht)


def test_betti_unimodular():
    assert bar_betti_small(pts(1, 1), None, 4, 10) == {(0, (0, 0, 0)): 1}


def test_betti_antichain_equals_word_counts():
    p = pts(2, 1, 1)
    betti = bar_betti_small(p, None, 3, 6)
    assert coarsen(betti, 3, 6) == bar_dimensions(p, 3, 6)


def test_betti_two_two():
    p = pts(2, 2)
    betti = bar_betti_small(p, None, 3, 6)
    assert betti[1, (1, 1, 1)] == 1
    assert (2, (2, 2, 2)) not in betti
    assert betti == {(0, (0, 0, 0)): 1, (1, (1, 1, 1)): 1, (2, (3, 3, 3)): 1, (3, (4, 4, 4)): 1}


def test_differential_squares_to_zero():
    for parts in [(2, 2), (3, 2), (8, 2), (3, 3), (2, 2, 2)]:
        table = FpaTable(pts(*parts))
        assert check_differential_squares_to_zero(table, 4, 6), parts


def test_table_identity_and_associativity():
    for n in range(2, 14):
        for lam in iter_partitions(n):
            table = FpaTable(enumerate_fpp(lam))
            for s in range(len(table)):
                assert table.product(table.zero, s) == s == table.product(s, table.zero)
                for u in range(len(table)):
                    assert table.product(s, u) == table.product(u, s)
            assert is_associative(table)


def test_table_from_hnf_points():
    table = FpaTable(hnf_fpp(OneColumnHnf(4, 2, (2,))))
    assert table.product(1, 2) == 3
    with pytest.raises(ValidationError):
        FpaTable([(1, 1)])
