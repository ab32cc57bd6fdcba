import pytest
from hypothesis import given, settings, strategies as st

from superhom import young
from superhom.superchain import chain_dim
from superhom.young import Partition, conjugate, enumerate_partitions, split_recursive


def brute_partitions(area, length):
    """Every non-increasing tuple of positive ints with the given sum and length."""
    out = set()

    def rec(prefix, remaining, slots, cap):
        if slots == 0:
            if remaining == 0:
                out.add(tuple(prefix))
            return
        for part in range(1, min(cap, remaining) + 1):
            rec(prefix + [part], remaining - part, slots - 1, part)

    rec([], area, length, area)
    return out


def test_partition_examples():
    assert enumerate_partitions(4, 3) == [Partition((2, 1, 1))]
    assert enumerate_partitions(5, 5) == [Partition((1,) * 5)]
    assert enumerate_partitions(6, 1) == [Partition((6,))]
    assert enumerate_partitions(0, 0) == [Partition(())]
    assert enumerate_partitions(3, 0) == []
    assert enumerate_partitions(7, 3, max_part=3) == [Partition((3, 3, 1)), Partition((3, 2, 2))]


def test_conjugate_examples():
    assert conjugate(Partition((4, 1, 1))).parts == (3, 1, 1, 1)
    assert conjugate(Partition((1, 1, 1))).parts == (3,)
    assert Partition((4, 1, 1)).tower() == (3, 1, 1, 1)
    assert Partition((2, 1, 1)).multiplicities() == [2, 1]


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))


@pytest.mark.parametrize("area", range(0, 11))
def test_enumeration_is_exhaustive(area):
    for length in range(0, area + 1):
        got = [p.parts for p in enumerate_partitions(area, length)]
        assert len(got) == len(set(got))
        assert set(got) == brute_partitions(area, length)


@pytest.mark.parametrize("area", range(0, 11))
def test_notation_round_trips(area):
    for length in range(0, area + 1):
        for lam in enumerate_partitions(area, length):
            assert conjugate(conjugate(lam)) == lam
            assert Partition.from_multiplicities(lam.multiplicities()) == lam
            assert Partition.from_tower(lam.tower()) == lam
            k = lam.multiplicities()
            assert sum(k) == lam.length
            assert sum(i * ki for i, ki in enumerate(k, start=1)) == lam.area


def test_split_examples():
    for m in range(1, 6):
        b, t = split_recursive(2 * m, m)
        assert Partition((2,) * m) in t
        b, t = split_recursive(m, m)
        assert t == [] and b == [Partition((1,) * m)]
    b, t = split_recursive(5, 2)
    assert len(b) + len(t) == len(enumerate_partitions(4, 1)) + len(enumerate_partitions(3, 2))
    with pytest.raises(ValueError):
        split_recursive(2, 3)


@pytest.mark.parametrize("area", range(1, 13))
def test_split_recursion_is_exact(area):
    for length in range(1, area + 1):
        b, t = split_recursive(area, length)
        assert not set(b) & set(t)
        assert sorted(b + t) == sorted(enumerate_partitions(area, length))
        assert all(lam.parts[-1] == 1 for lam in b)
        assert all(lam.parts[-1] >= 2 for lam in t)


def test_combinatorial_dim_examples():
    assert young.combinatorial_chain_dim(2, 4, 0, -2) == 6
    assert young.combinatorial_chain_dim(2, 6, 0, 1) == 544
    assert young.combinatorial_chain_dim(3, 2, 0, 0) == chain_dim(3, 2, 0, 0)


def test_combinatorial_euler_examples():
    assert young.combinatorial_euler(2, 0, 0) == 0
    assert young.combinatorial_euler(2, 2, 1) == 0
    assert young.combinatorial_euler(2, 0, 0, "module") == 0
    with pytest.raises(ValueError):
        young.combinatorial_euler(2, 0, 0, "extended")


@pytest.mark.parametrize("mode", ["trivial", "module", "extended"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_oracle_matches_enumeration_counts(n, mode):
    for m in range(0, 9):
        for w in range(-3, 4):
            for h in range(-3, 4):
                assert young.combinatorial_chain_dim(n, m, w, h, mode) == chain_dim(n, m, w, h, mode)


@pytest.mark.parametrize("mode", ["trivial", "module"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_euler_vanishes(n, mode):
    for w in range(0, 5):
        for h in range(-3, 4):
            assert young.combinatorial_euler(n, w, h, mode) == 0


# --- properties ----------------------------------------------------------

# random partitions of area <= 20 (about 2700 of them)
partitions = st.lists(st.integers(1, 20), max_size=20).filter(lambda xs: sum(xs) <= 20).map(
    lambda xs: Partition(tuple(sorted(xs, reverse=True))))


@settings(max_examples=1000, deadline=None)
@given(partitions)
def test_round_trip_property(lam):
    assert Partition.from_multiplicities(lam.multiplicities()) == lam
    assert Partition.from_tower(lam.tower()) == lam
    assert conjugate(conjugate(lam)) == lam
    assert conjugate(lam).area == lam.area
    assert conjugate(lam).length == (lam.parts[0] if lam.parts else 0)


@settings(max_examples=1000, deadline=None)
@given(partitions.filter(lambda lam: lam.length > 0))
def test_split_property(lam):
    b, t = split_recursive(lam.area, lam.length)
    assert (lam in b) != (lam in t)
    if lam in b:
        # drop the last part equal to 1
        assert Partition(lam.parts[:-1]) in enumerate_partitions(lam.area - 1, lam.length - 1)
    else:
        shifted = Partition(tuple(x - 1 for x in lam.parts))
        assert shifted in enumerate_partitions(lam.area - lam.length, lam.length)
    assert len(b) == len(enumerate_partitions(lam.area - 1, lam.length - 1))
    assert len(t) == len(enumerate_partitions(lam.area - lam.length, lam.length))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_weight_one_and_two_decompositions(n):
    for m in range(0, 9):
        for h in range(-3, 4):
            assert young.weight_one_dim(n, m, h) == chain_dim(n, m, 1, h)
            assert young.weight_two_dim(n, m, h) == chain_dim(n, m, 2, h)


def test_weight_decomposition_boundary_terms():
    from superhom.polyvector import dim_multivector_space
    for h in range(-1, 3):
        assert young.weight_one_dim(3, 1, h) == dim_multivector_space(3, 2, h + 1)
        assert young.weight_two_dim(3, 1, h) == dim_multivector_space(3, 3, h + 1)
