import itertools
import math

import pytest

from eulersums.combinatorics import (
    compositions,
    iter_compositions,
    multinomial,
    multiset_permutations,
    orbit_size,
    permutations,
)


def test_compositions_of_four():
    assert compositions(4) == [
        (4,),
        (1, 3),
        (2, 2),
        (3, 1),
        (1, 1, 2),
        (1, 2, 1),
        (2, 1, 1),
        (1, 1, 1, 1),
    ]


def test_composition_counts_and_sums():
    for m in range(1, 13):
        comps = list(iter_compositions(m))
        assert len(comps) == 2 ** (m - 1)
        assert len(set(comps)) == len(comps)
        assert all(sum(c) == m for c in comps)
        assert all(min(c) >= 1 for c in comps)


def test_composition_count_ten_bruteforce():
    # independent oracle: enumerate all tuples of positive ints summing to 10
    def brute(m):
        if m == 0:
            return [()]
        return [(k,) + rest for k in range(1, m + 1) for rest in brute(m - k)]

    assert len(list(iter_compositions(10))) == len(brute(10)) == 512


def test_compositions_rejects_zero():
    with pytest.raises(ValueError):
        list(iter_compositions(0))


def test_permutations_basic():
    assert list(permutations(1)) == [(1,)]
    assert list(permutations(2)) == [(1, 2), (2, 1)]
    fives = list(permutations(5))
    assert len(fives) == 120 == len(set(fives))
    assert fives == sorted(fives)  # lexicographic


def test_permutations_cap():
    with pytest.raises(ValueError):
        permutations(11)
    with pytest.raises(ValueError):
        permutations(0)


def test_multinomial():
    assert multinomial(4, (1, 1, 1, 1)) == 24
    assert multinomial(4, (2, 2)) == 6
    assert multinomial(6, (1, 2, 3)) == math.factorial(6) // (1 * 2 * 6) == 60
    with pytest.raises(ValueError):
        multinomial(5, (2, 2))


def test_multinomial_times_factorials():
    for m in range(1, 9):
        for parts in iter_compositions(m):
            prod = 1
            for p in parts:
                prod *= math.factorial(p)
            assert multinomial(m, parts) * prod == math.factorial(m)


def test_multiset_permutations():
    assert list(multiset_permutations([7, 7, 7])) == [(7, 7, 7)]
    assert len(list(multiset_permutations([1, 1, 2]))) == 3
    assert len(list(multiset_permutations([1, 2, 3]))) == 6
    # distinct values reproduce full permutations exactly
    got = list(multiset_permutations([1, 2, 3, 4]))
    assert got == [p for p in itertools.permutations([1, 2, 3, 4])]
    # counts equal the multinomial of multiplicities
    vals = [2, 2, -1, 3, 3, 3]
    assert len(list(multiset_permutations(vals))) == multinomial(6, (2, 1, 3))


def test_orbit_size():
    assert orbit_size([2, 2, -1, 3, 3, 3]) == 2 * 1 * 6
    assert orbit_size([1]) == 1
