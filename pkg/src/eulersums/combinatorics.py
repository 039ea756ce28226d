"""Compositions, permutations, multinomials, and multiset arrangements.

All enumeration orders are deterministic so that expansion output is
reproducible byte for byte:

  * compositions are graded by part count and then lexicographic, e.g. the
    eight compositions of 4 come out as
    (4), (1,3), (2,2), (3,1), (1,1,2), (1,2,1), (2,1,1), (1,1,1,1);
  * permutations and multiset arrangements are lexicographic.

Permutation-driven paths are capped at m = 10 (10! is the desk-scale
ceiling); composition-only paths allow larger m.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterator, Sequence

PERMUTATION_CAP = 10
COMPOSITION_CAP = 20


def iter_compositions(m: int) -> Iterator[tuple[int, ...]]:
    """Yield the 2**(m-1) compositions of m, graded-lex order."""
    if m < 1:
        raise ValueError(f"compositions need m >= 1, got {m}")
    if m > COMPOSITION_CAP:
        raise ValueError(f"composition enumeration capped at m <= {COMPOSITION_CAP}, got {m}")
    for p in range(1, m + 1):
        # p parts <-> p-1 split points chosen from 1..m-1; lex order of the
        # split tuples is lex order of the part tuples.
        for cuts in itertools.combinations(range(1, m), p - 1):
            edges = (0,) + cuts + (m,)
            yield tuple(edges[i + 1] - edges[i] for i in range(p))


def compositions(m: int) -> list[tuple[int, ...]]:
    if m > 16:
        raise ValueError(f"materializing compositions capped at m <= 16, got {m}")
    return list(iter_compositions(m))


def permutations(m: int) -> Iterator[tuple[int, ...]]:
    """Yield all m! permutations of (1..m) lexicographically; m <= 10."""
    if not 1 <= m <= PERMUTATION_CAP:
        raise ValueError(f"permutation enumeration needs 1 <= m <= {PERMUTATION_CAP}, got {m}")
    return iter(itertools.permutations(range(1, m + 1)))


def multinomial(m: int, parts: Sequence[int]) -> int:
    """m! / (parts_1! * ... * parts_p!), with sum(parts) == m enforced."""
    if sum(parts) != m:
        raise ValueError(f"parts {tuple(parts)} do not sum to {m}")
    out = math.factorial(m)
    for p in parts:
        out //= math.factorial(p)
    return out


def multiset_permutations(values: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Yield each distinct ordering of ``values`` exactly once, lex order."""
    n = len(values)
    if not 1 <= n <= PERMUTATION_CAP:
        raise ValueError(f"multiset enumeration needs 1 <= len <= {PERMUTATION_CAP}, got {n}")
    counts = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    distinct = sorted(counts)

    def rec(prefix: list[int], remaining: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield tuple(prefix)
            return
        for v in distinct:
            if counts[v]:
                counts[v] -= 1
                prefix.append(v)
                yield from rec(prefix, remaining - 1)
                prefix.pop()
                counts[v] += 1

    yield from rec([], n)


def orbit_size(values: Sequence[int]) -> int:
    """Number of permutations fixing a given arrangement of the multiset."""
    counts = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    out = 1
    for c in counts.values():
        out *= math.factorial(c)
    return out
