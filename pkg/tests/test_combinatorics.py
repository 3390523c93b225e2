import itertools
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from boolkerov.combinatorics import (CycleType, Partition, Permutation,
                                     all_permutations, conjugacy_class_size,
                                     cycle_type, enumerate_partitions,
                                     partitions_up_to, reflection_length,
                                     reflection_length_of_type)
from boolkerov.exactmath import InvalidInputError

partition_strategy = st.integers(0, 10).flatmap(
    lambda n: st.sampled_from(enumerate_partitions(n)))


class TestPartition:
    def test_basic_fields(self):
        p = Partition((5, 3, 2, 2, 1))
        assert p.size == 13 and p.length == 5
        assert str(p) == "(5,3,2,2,1)"
        assert str(Partition()) == "()"

    def test_validation(self):
        with pytest.raises(InvalidInputError):
            Partition((1, 2))
        with pytest.raises(InvalidInputError):
            Partition((2, 0))

    def test_parse_forms(self):
        assert Partition.parse("(5,3,2,2,1)") == Partition((5, 3, 2, 2, 1))
        assert Partition.parse("5, 3, 2, 2, 1") == Partition((5, 3, 2, 2, 1))
        assert Partition.parse("()") == Partition()
        assert Partition.parse("") == Partition()
        with pytest.raises(InvalidInputError):
            Partition.parse("(2,a)")
        with pytest.raises(InvalidInputError):
            Partition.parse("2;1")

    def test_conjugate_examples(self):
        assert Partition((3,)).conjugate() == Partition((1, 1, 1))
        assert Partition((2, 1)).conjugate() == Partition((2, 1))
        assert Partition((5, 3, 2, 2, 1)).conjugate() == Partition((5, 4, 2, 1, 1))

    @given(partition_strategy)
    def test_conjugate_is_an_involution(self, p):
        assert p.conjugate().conjugate() == p
        assert p.conjugate().size == p.size

    def test_pad_to(self):
        assert Partition((2,)).pad_to(4) == Partition((2, 1, 1))
        with pytest.raises(InvalidInputError):
            Partition((3,)).pad_to(2)


def euler_partition_count(n: int, cache={0: 1}) -> int:
    """Independent count via the pentagonal number recurrence."""
    if n in cache:
        return cache[n]
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n:
            break
        sign = -1 if k % 2 == 0 else 1
        total += sign * euler_partition_count(n - g1)
        if g2 <= n:
            total += sign * euler_partition_count(n - g2)
        k += 1
    cache[n] = total
    return total


class TestEnumeration:
    def test_small_cases(self):
        assert [p.parts for p in enumerate_partitions(0)] == [()]
        assert [p.parts for p in enumerate_partitions(2)] == [(2,), (1, 1)]
        assert [p.parts for p in enumerate_partitions(4)] == [
            (4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]

    def test_counts_match_pentagonal_recurrence(self):
        for n in range(0, 26):
            assert len(enumerate_partitions(n)) == euler_partition_count(n)

    def test_reverse_lexicographic_order(self):
        for n in range(0, 12):
            parts = [p.parts for p in enumerate_partitions(n)]
            assert parts == sorted(parts, reverse=True)
            assert len(set(parts)) == len(parts)

    def test_partitions_up_to(self):
        ps = partitions_up_to(3)
        assert [p.parts for p in ps] == [(), (1,), (2,), (1, 1), (3,), (2, 1),
                                         (1, 1, 1)]


class TestPermutation:
    def test_validation(self):
        with pytest.raises(InvalidInputError):
            Permutation((1, 1))

    def test_compose_and_inverse(self):
        s = Permutation((2, 3, 1))
        t = Permutation((2, 1, 3))
        assert (s * t).images == (3, 2, 1)
        assert (s * s.inverse()) == Permutation.identity(3)

    def test_from_cycles(self):
        s = Permutation.from_cycles(4, [(1, 3), (2, 4)])
        assert s.images == (3, 4, 1, 2)

    def test_cycles(self):
        s = Permutation((2, 1, 3, 5, 4))
        assert sorted(len(c) for c in s.cycles()) == [1, 2, 2]

    @given(st.integers(1, 6), st.randoms())
    def test_inverse_property(self, n, rng):
        imgs = list(range(1, n + 1))
        rng.shuffle(imgs)
        s = Permutation(imgs)
        assert s.inverse().inverse() == s
        assert (s * s.inverse()) == Permutation.identity(n)


def brute_force_reflection_length(sigma: Permutation) -> int:
    """Breadth-first search over products of transpositions."""
    n = sigma.degree
    ident = Permutation.identity(n)
    frontier = {ident}
    seen = {ident}
    steps = 0
    transpositions = [Permutation.from_cycles(n, [(i, j)])
                      for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    while sigma not in frontier:
        frontier = {t * f for f in frontier for t in transpositions} - seen
        seen |= frontier
        steps += 1
    return steps


class TestCycleTypeAndLengths:
    def test_cycle_type(self):
        s = Permutation((2, 1, 4, 3, 5))
        ct = cycle_type(s)
        assert ct == CycleType(Partition((2, 2, 1)), 5)

    def test_cycle_type_conjugation_invariant(self):
        for s in all_permutations(4):
            for g in all_permutations(4):
                assert cycle_type(g * s * g.inverse()) == cycle_type(s)

    def test_reflection_length_brute_force(self):
        for n in range(1, 5):
            for s in all_permutations(n):
                assert reflection_length(s) == brute_force_reflection_length(s)

    def test_reflection_length_of_type(self):
        for n in range(1, 6):
            for s in all_permutations(n):
                pi = cycle_type(s).partition
                assert reflection_length(s) == reflection_length_of_type(pi)


class TestConjugacyClassSize:
    def test_examples(self):
        assert conjugacy_class_size(Partition((2, 1))) == 3
        assert conjugacy_class_size(Partition((3,))) == 2
        assert conjugacy_class_size(Partition((1, 1, 1, 1))) == 1

    def test_against_brute_force(self):
        for n in range(1, 6):
            counts = {}
            for s in all_permutations(n):
                pi = cycle_type(s).partition
                counts[pi] = counts.get(pi, 0) + 1
            for pi, c in counts.items():
                assert conjugacy_class_size(pi) == c

    def test_sizes_sum_to_group_order(self):
        for n in range(1, 9):
            total = sum(conjugacy_class_size(pi)
                        for pi in enumerate_partitions(n))
            assert total == factorial(n)
