import pytest

from hkbetti.partitions import (
    Partition,
    cells_arm_leg,
    conjugate,
    count_by_length,
    enum_partitions,
    length,
    multiplicity,
    pairing_n,
    partition_count,
)


def euler_p(n):
    """p(n) by the sum-of-divisors recurrence (independent of the pentagonal one)."""
    sigma = [0] + [sum(d for d in range(1, m + 1) if m % d == 0) for m in range(1, n + 1)]
    p = [1] + [0] * n
    for m in range(1, n + 1):
        p[m] = sum(sigma[k] * p[m - k] for k in range(1, m + 1)) // m
    return p[n]


def test_empty_partition():
    assert enum_partitions(0) == [Partition()]


def test_counts():
    assert len(enum_partitions(4)) == 5
    assert len(enum_partitions(8)) == 22 == euler_p(8)
    assert all(partition_count(n) == euler_p(n) for n in range(30))


def test_reverse_lexicographic_order():
    assert [tuple(p) for p in enum_partitions(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_pairing_examples():
    assert pairing_n((2, 1), (1, 1, 1)) == 6 == 3 * length((2, 1))
    assert pairing_n((), (3, 2)) == 0
    assert pairing_n((2, 1), (2, 1)) == 5


def test_conjugates():
    assert conjugate((2, 1)) == (2, 1)
    assert conjugate((3,)) == (1, 1, 1)
    assert conjugate((4, 2, 1)) == (3, 2, 1, 1)


def test_arm_leg():
    assert cells_arm_leg((1,)) == [(0, 0)]
    assert cells_arm_leg((2,)) == [(1, 0), (0, 0)]
    assert sorted(cells_arm_leg((2, 1))) == [(0, 0), (0, 0), (1, 1)]


def test_length_multiplicity():
    assert length((3, 1, 1)) == 3
    assert multiplicity((3, 1, 1), 1) == 2
    assert length(()) == 0


def test_count_by_length_sums_to_p():
    for n in range(15):
        byl = count_by_length(n)
        assert sum(byl) == euler_p(n)
        for k in range(n + 1):
            assert byl[k] == sum(1 for lam in enum_partitions(n) if len(lam) == k)


def test_negative_part_rejected():
    with pytest.raises(ValueError):
        Partition((2, 0))
