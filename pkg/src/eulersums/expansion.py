"""Expansion of (alternating) Euler sums into exact combinations of MZV atoms.

Two independent engines are provided.

Engine t1 enumerates the weak orderings of the summation variables of the
product of harmonic numbers: orderings fall into classes indexed by
compositions, class members are indexed by permutations, and equal entries
are collapsed into "orbits" so that an index with repeated exponents costs
one term per distinct arrangement instead of one per permutation.  Each
(composition, arrangement) pair contributes two atoms: one keeping the outer
exponent as its own leading slot and one merging it with the first block.
Alternating harmonic factors make a block alternate exactly when the block
holds an odd number of them, and an alternating outer series flips the merge
parity and the global sign.

Engine t2 applies only to non-alternating indices with all exponents >= 2:
each harmonic factor is split as (limit - tail), the product is expanded by
inclusion-exclusion over the factors contributing their tail, and the tail
product is regrouped by the same weak-ordering argument into atoms ending in
the outer exponent, multiplied by depth-1 zeta factors.

Both engines emit raw output: no identities are applied, so each engine is
independently testable against the numerical oracle and against the other.

``expand_harmonic_product`` exposes the n-independent core of engine t1: the
expansion of a finite product of (alternating) generalized harmonic numbers
as a combination of multiple harmonic sums.  Substituting any finite n and
evaluating exactly reproduces the product; the test suite uses this as the
ground-truth oracle for the enumeration.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .algebra import LinComb, MzvAtom, SymbolicTerm, z
from .combinatorics import (
    PERMUTATION_CAP,
    iter_compositions,
    multinomial,
    multiset_permutations,
    orbit_size,
)
from .indices import EulerSumIndex


class UnsupportedHypothesisError(ValueError):
    """The index falls outside the engine's hypotheses."""


class DegreeCapError(ValueError):
    """The index degree exceeds the enumeration cap."""


def _check_degree(m: int):
    if m > PERMUTATION_CAP:
        raise DegreeCapError(
            f"degree {m} exceeds the permutation-driven cap {PERMUTATION_CAP}; "
            "repeated-exponent indices can use the multinomial fast path"
        )


def _blocks(arrangement: tuple[int, ...], comp: tuple[int, ...]):
    """Split an arrangement into (magnitude sum, alternation parity) blocks."""
    out = []
    pos = 0
    for width in comp:
        seg = arrangement[pos : pos + width]
        pos += width
        mag = sum(abs(e) for e in seg)
        lam = sum(1 for e in seg if e < 0)
        out.append((mag, lam))
    return out


def expand_harmonic_product(inner) -> dict[tuple[int, ...], Fraction]:
    """Expand a product of (alternating) harmonic numbers over nested sums.

    ``inner`` lists signed exponents: +i is the generalized harmonic number
    of order i, -i its alternating variant.  The result maps signed
    multiple-harmonic-sum indices (negative entry = alternating slot, with
    the sign convention sigma^n) to rational coefficients, independent of n.
    """
    inner = tuple(inner)
    m = len(inner)
    if m == 0:
        return {(): Fraction(1)}
    _check_degree(m)
    if any(e == 0 for e in inner):
        raise ValueError("inner exponents must be nonzero")
    n_bar = sum(1 for e in inner if e < 0)
    global_sign = (-1) ** n_bar
    orb = orbit_size(inner)
    out: dict[tuple[int, ...], Fraction] = {}
    arrangements = list(multiset_permutations(inner))
    for comp in iter_compositions(m):
        denom = 1
        for c in comp:
            denom *= math.factorial(c)
        coeff = Fraction(orb * global_sign, denom)
        for arr in arrangements:
            key = tuple(mag if lam % 2 == 0 else -mag for mag, lam in _blocks(arr, comp))
            s = out.get(key, Fraction(0)) + coeff
            if s:
                out[key] = s
            elif key in out:
                del out[key]
    return out


def _signed_entry(mag: int, alternating: bool) -> int:
    return -mag if alternating else mag


def expand_t1(idx: EulerSumIndex) -> LinComb:
    """Ordering-class expansion: one MZV atom per output term.

    Every output atom has weight equal to the index weight and depth at most
    degree + 1.
    """
    m = idx.degree
    q = abs(idx.outer)
    outer_bar = idx.outer < 0
    if m == 0:
        # Pure outer series: sum of 1/n^q, or of (-1)^(n-1)/n^q.  The
        # alternating atom convention carries sigma^n, hence the -1.
        return LinComb.of_atom(z(q)) if not outer_bar else LinComb.of_atom(z(-q), -1)
    _check_degree(m)
    n_bar = sum(1 for e in idx.inner if e < 0)
    base_sign = (-1) ** (n_bar + (1 if outer_bar else 0))
    orb = orbit_size(idx.inner)
    acc: dict[SymbolicTerm, Fraction] = {}
    arrangements = list(multiset_permutations(idx.inner))
    for comp in iter_compositions(m):
        denom = 1
        for c in comp:
            denom *= math.factorial(c)
        coeff = Fraction(orb * base_sign, denom)
        for arr in arrangements:
            blocks = _blocks(arr, comp)
            tail = tuple(_signed_entry(mag, lam % 2 == 1) for mag, lam in blocks)
            # Atom 1: the outer exponent keeps its own leading slot.
            lead = -q if outer_bar else q
            a1 = MzvAtom(args=(lead,) + tail)
            # Atom 2: the outer exponent merges with the first block.  For an
            # unsigned outer the merged slot alternates iff the block does;
            # a alternating outer flips that parity.
            mag1, lam1 = blocks[0]
            merged_bar = (lam1 % 2 == 1) ^ outer_bar
            a2 = MzvAtom(args=(_signed_entry(q + mag1, merged_bar),) + tail[1:])
            for atom in (a1, a2):
                t = SymbolicTerm.of(atom)
                s = acc.get(t, Fraction(0)) + coeff
                if s:
                    acc[t] = s
                elif t in acc:
                    del acc[t]
    out = LinComb(acc)
    _assert_t1_shape(idx, out)
    return out


def _assert_t1_shape(idx: EulerSumIndex, lc: LinComb):
    w = idx.weight
    for term, _ in lc.items():
        assert len(term.factors) == 1, "t1 emits single-atom terms"
        atom = term.factors[0]
        assert atom.weight == w, f"weight leak: {atom} in expansion of {idx}"
        assert atom.depth <= idx.degree + 1


def expand_t2(idx: EulerSumIndex) -> LinComb:
    """Tail-sum expansion; needs all inner exponents >= 2 and outer >= 2."""
    if idx.outer < 0 or any(e < 0 for e in idx.inner):
        raise UnsupportedHypothesisError(
            f"engine t2 does not cover alternating indices: {idx}"
        )
    if any(e < 2 for e in idx.inner):
        raise UnsupportedHypothesisError(
            f"engine t2 needs every inner exponent >= 2: {idx}"
        )
    if idx.outer < 2:
        raise UnsupportedHypothesisError(f"engine t2 needs outer >= 2: {idx}")
    m = idx.degree
    _check_degree(m)
    q = idx.outer
    inner = idx.inner
    acc = LinComb.zero()
    for l in range(m + 1):
        for subset in itertools.combinations(range(m), l):
            chosen = tuple(inner[i] for i in subset)
            rest = [inner[i] for i in range(m) if i not in subset]
            prefix = SymbolicTerm.of(*(z(e) for e in rest))
            if l == 0:
                acc = acc + LinComb.of_term(prefix.mul(SymbolicTerm.of(z(q))), 1)
                continue
            orb = orbit_size(chosen)
            arrangements = list(multiset_permutations(chosen))
            sign = (-1) ** l
            for comp in iter_compositions(l):
                denom = 1
                for c in comp:
                    denom *= math.factorial(c)
                coeff = Fraction(orb * sign, denom)
                for arr in arrangements:
                    mags = tuple(mag for mag, _ in _blocks(arr, comp))
                    atom = MzvAtom(args=mags + (q,))
                    acc = acc + LinComb.of_term(prefix.mul(SymbolicTerm.of(atom)), coeff)
    return acc


def expand_repeated_t1(r: int, m: int, outer: int) -> LinComb:
    """Multinomial fast path for indices with one repeated inner exponent.

    Enumerates compositions only (no permutations), so m may exceed the
    permutation cap.  Exactly equal, as a combination, to ``expand_t1`` on
    the expanded index.
    """
    if r == 0 or outer == 0:
        raise ValueError("exponents must be nonzero")
    if outer == 1:
        raise ValueError("outer exponent 1 without alternation diverges")
    if m < 0:
        raise ValueError("multiplicity must be >= 0")
    q = abs(outer)
    outer_bar = outer < 0
    if m == 0:
        return LinComb.of_atom(z(q)) if not outer_bar else LinComb.of_atom(z(-q), -1)
    r_bar = r < 0
    rr = abs(r)
    base_sign = (-1) ** ((m if r_bar else 0) + (1 if outer_bar else 0))
    acc: dict[SymbolicTerm, Fraction] = {}
    for comp in iter_compositions(m):
        coeff = Fraction(base_sign * multinomial(m, comp))
        # A block of width w holds w alternating factors when r is barred,
        # so it alternates iff w is odd.
        tail = tuple(
            _signed_entry(rr * w, r_bar and w % 2 == 1) for w in comp
        )
        lead = -q if outer_bar else q
        a1 = MzvAtom(args=(lead,) + tail)
        merged_bar = (r_bar and comp[0] % 2 == 1) ^ outer_bar
        a2 = MzvAtom(args=(_signed_entry(q + rr * comp[0], merged_bar),) + tail[1:])
        for atom in (a1, a2):
            t = SymbolicTerm.of(atom)
            s = acc.get(t, Fraction(0)) + coeff
            if s:
                acc[t] = s
            elif t in acc:
                del acc[t]
    return LinComb(acc)


def expand_repeated_t2(r: int, m: int, q: int) -> LinComb:
    """Tail-sum fast path for a repeated exponent; r, q >= 2, non-alternating."""
    if r < 2 or q < 2:
        raise UnsupportedHypothesisError(
            f"repeated tail-sum expansion needs r, q >= 2, got r={r}, q={q}"
        )
    if m < 0:
        raise ValueError("multiplicity must be >= 0")
    acc = LinComb.zero()
    zr = SymbolicTerm.of(z(r))
    for l in range(m + 1):
        outer_coeff = (-1) ** l * math.comb(m, l)
        prefix = SymbolicTerm.of(*([z(r)] * (m - l)))
        if l == 0:
            acc = acc + LinComb.of_term(prefix.mul(SymbolicTerm.of(z(q))), outer_coeff)
            continue
        for comp in iter_compositions(l):
            coeff = Fraction(outer_coeff * multinomial(l, comp))
            atom = MzvAtom(args=tuple(r * w for w in comp) + (q,))
            acc = acc + LinComb.of_term(prefix.mul(SymbolicTerm.of(atom)), coeff)
    return acc


def is_conditionally_convergent(idx: EulerSumIndex) -> bool:
    """Outer exponent -1: the defining series converges only conditionally."""
    return idx.outer == -1
