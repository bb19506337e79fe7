"""Partition enumeration, conjugation, pairing and box statistics."""

import pytest

from higgsvol.partitions import Partition, enumerate_partitions, stats


def test_enumerate_empty():
    assert enumerate_partitions(0) == [Partition(())]


def test_enumerate_counts():
    assert len(enumerate_partitions(4)) == 5
    assert len(enumerate_partitions(5)) == 7
    assert len(enumerate_partitions(6)) == 11


def test_enumerate_sizes_and_order():
    for n in range(7):
        parts = enumerate_partitions(n)
        assert all(p.size == n for p in parts)
        assert len(set(parts)) == len(parts)


def test_invalid_parts_rejected():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))


def test_stats_21():
    s = stats(Partition((2, 1)))
    assert s.conjugate == Partition((2, 1))
    assert s.pairing == 5


def test_stats_111():
    s = stats(Partition((1, 1, 1)))
    assert s.conjugate == Partition((3,))
    assert s.pairing == 9


def test_box_arm_leg_22():
    # the box in column 1, row 1 of (2,2) sees one box right, one box above
    boxes = list(Partition((2, 2)).boxes())
    assert (1, 1) in boxes
    assert len(boxes) == 4


def test_boxes_count_is_size():
    for n in range(1, 7):
        for p in enumerate_partitions(n):
            assert len(list(p.boxes())) == n


def test_conjugate_involution():
    for n in range(7):
        for p in enumerate_partitions(n):
            assert p.conjugate().conjugate() == p


def test_pairing_via_conjugate():
    for n in range(1, 7):
        for p in enumerate_partitions(n):
            assert p.pairing() == sum(m * m for m in p.conjugate().parts)


def test_multiplicities_roundtrip():
    for n in range(1, 7):
        for p in enumerate_partitions(n):
            mults = p.multiplicities()
            assert sum((i + 1) * r for i, r in enumerate(mults)) == n
            prefix = p.prefix_counts()
            # prefix[i] counts parts strictly smaller than i+1
            for i in range(len(mults)):
                assert prefix[i] == sum(mults[:i])
