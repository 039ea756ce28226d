import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from eulersums.algebra import LinComb, SymbolicTerm, li_half, z
from eulersums.indices import make_index, parse_index
from eulersums.numerics import (
    CapacityError,
    alt_harmonic_exact,
    eval_atom,
    eval_atoms,
    eval_euler_sum,
    eval_euler_sum_best,
    eval_lincomb,
    eval_lincomb_best,
    eval_mhs_exact,
    eval_term,
    harmonic_exact,
    li_half_value,
    ln2_value,
    pi_reference,
    zeta_tail_interval,
    zeta_upper,
    zeta_value,
)


def brute_mhs(args, n):
    """Independent oracle: enumerate strictly decreasing tuples directly."""
    k = len(args)
    tot = Fraction(0)
    for tup in itertools.combinations(range(n, 0, -1), k):
        term = Fraction(1)
        for s, m in zip(args, tup):
            term *= Fraction((-1) ** m if s < 0 else 1, m ** abs(s))
        tot += term
    return tot


# -- exact layer ----------------------------------------------------------------


def test_mhs_conventions():
    assert eval_mhs_exact((2,), 0) == 0
    assert eval_mhs_exact((2, 1), 1) == 0  # n below depth
    assert eval_mhs_exact((), 7) == 1
    assert eval_mhs_exact((1, 1), 2) == Fraction(1, 2)


def test_mhs_enumerated_value():
    # sum over 4 >= a > b >= 1 of 1/(a^2 b), frozen from the brute enumeration
    assert brute_mhs((2, 1), 4) == Fraction(17, 32)
    assert eval_mhs_exact((2, 1), 4) == Fraction(17, 32)


def test_mhs_matches_bruteforce_random():
    rng = random.Random(11)
    for _ in range(40):
        depth = rng.randrange(1, 5)
        args = tuple(rng.choice([1, -1]) * rng.randrange(1, 4) for _ in range(depth))
        n = rng.randrange(0, 12)
        assert eval_mhs_exact(args, n) == brute_mhs(args, n), (args, n)


def test_mhs_guards():
    with pytest.raises(ValueError):
        eval_mhs_exact((2,), 61)
    with pytest.raises(ValueError):
        eval_mhs_exact((2,) * 7, 10)


def test_harmonic_exact():
    assert harmonic_exact(1, 4) == Fraction(25, 12)
    assert alt_harmonic_exact(1, 4) == Fraction(7, 12)


# -- fixed-point constants --------------------------------------------------------


def test_zeta2_against_pi():
    # pi from the arctangent series is an independent route to zeta(2)
    zv = zeta_value(2)
    piv = pi_reference()
    assert abs(float(zv.value) - float(piv.value) ** 2 / 6) < 1e-15
    assert zv.tail_bound < 1e-15


def test_li4_half_series():
    # direct check from the defining series with an exact rational partial sum
    partial = sum((Fraction(1, 2**n * n**4) for n in range(1, 61)), Fraction(0))
    r = li_half_value(4)
    assert abs(float(r.value) - float(partial)) < 1e-17
    assert abs(float(r.value) - 0.5174790616738994) < 1e-12


def test_ln2():
    assert abs(float(ln2_value().value) - math.log(2)) < 1e-15


def test_zeta_tail_interval():
    # compare against the exact-rational zeta layer to avoid double-precision
    # cancellation in the reference itself
    from eulersums.numerics import _fp_zeta

    for n, s in [(10, 2), (50, 3), (1000, 2), (20, 6)]:
        lo, hi = zeta_tail_interval(n, s)
        zv, zerr = _fp_zeta(s)
        exact = zv - sum(Fraction(1, k**s) for k in range(1, n + 1))
        assert Fraction(lo) <= exact + zerr
        assert exact - zerr <= Fraction(hi)
        # remainder scales like N^-(s+5)
        assert hi - lo < 3.0 * (s + 4) ** 5 * float(n) ** (-s - 5) + 1e-13 * float(exact)
    assert zeta_upper(2) >= 1.6449340668


# -- the blocked walker -----------------------------------------------------------


def test_walker_partials_match_exact_mhs():
    # drive the internal state over a tiny block schedule and compare the
    # running partial sum against the exact rational multiple harmonic sum
    from eulersums.numerics import _AtomState

    for args in [(2, 1), (-2, 1), (-1, 1), (3, -1, 1), (2, -1), (-1, -1, -1)]:
        st = _AtomState(z(*args), 1e-8)
        n_arr = np.arange(1, 51, dtype=np.float64)
        alt_sign = np.where(np.arange(1, 51) % 2 == 0, 1.0, -1.0)
        inv = 1.0 / n_arr
        pows = {m: inv**m for m in {abs(a) for a in args}}
        st.update_block(0, n_arr, pows, alt_sign)
        exact = float(eval_mhs_exact(args, 50))
        assert abs(float(st.carries[0]) - exact) < 1e-15, args


def test_atom_values_against_exact_tails():
    # zeta(2) via the generic walker agrees with the fixed-point value
    res = eval_atoms({z(3, 2): 1e-9})[z(3, 2)]
    assert res.tail_bound <= 1e-9
    # known: zeta(3,2) = -11/2 zeta(5) + 3 zeta(2) zeta(3)
    target = -5.5 * float(zeta_value(5).value) + 3 * float(zeta_value(2).value) * float(
        zeta_value(3).value
    )
    assert abs(float(res.value) - target) <= res.tail_bound + 1e-12


def test_alt_depth1_numeric():
    # direct alternating summation vs the fixed-point zeta route
    r = eval_atom(z(-2), 1e-10)
    assert abs(float(r.value) + 0.5 * float(zeta_value(2).value)) <= r.tail_bound + 1e-12


def test_zeta21_equals_zeta3():
    r = eval_atoms({z(2, 1): 1e-6})[z(2, 1)]
    diff = abs(float(r.value) - float(zeta_value(3).value))
    assert diff <= r.tail_bound + zeta_value(3).tail_bound
    assert r.tail_bound < 1e-6


def test_monotone_refinement():
    a = z(3, 1)
    r1 = eval_atoms({a: 1e-4}, n_cap=10**5)[a]
    r2 = eval_atoms({a: 1e-8}, n_cap=10**6)[a]
    assert r2.tail_bound <= r1.tail_bound


def test_bound_conservative_under_refinement():
    # value moves by less than the earlier bound when run 10x longer
    for atom in (z(2, 1), z(-1, 1), z(-3, 2)):
        r1 = eval_atoms({atom: 1e-14}, n_cap=10**4)[atom]
        r2 = eval_atoms({atom: 1e-14}, n_cap=10**5)[atom]
        assert abs(float(r1.value) - float(r2.value)) <= r1.tail_bound


def test_capacity_error_carries_result():
    with pytest.raises(CapacityError) as ei:
        eval_atom(z(-1, 1, 1, 1), 1e-10, n_cap=2 * 10**4)
    res = ei.value.result
    assert res.tail_bound > 1e-10 and res.terms_used == 2 * 10**4


def test_tol_floor():
    with pytest.raises(ValueError):
        eval_atom(z(2), 1e-14)
    with pytest.raises(ValueError):
        eval_euler_sum(make_index([2], 2), 1e-12)


# -- terms and combinations --------------------------------------------------------


def test_empty_lincomb():
    r = eval_lincomb_best(LinComb.zero(), 1e-10)
    assert float(r.value) == 0.0 and r.tail_bound == 0.0


def test_product_term():
    t = SymbolicTerm.of(z(2), z(3))
    r = eval_term(t, 1e-10)
    expect = float(zeta_value(2).value) * float(zeta_value(3).value)
    assert abs(float(r.value) - expect) <= r.tail_bound + 1e-14
    assert abs(float(r.value) - 1.9773043502972961) < 1e-12


def test_li_term_and_ln2_atom():
    r = eval_lincomb_best(LinComb.of_atom(li_half(4)), 1e-10)
    assert abs(float(r.value) - 0.5174790616738994) < 1e-10
    r2 = eval_lincomb_best(LinComb.of_atom(z(-1)), 1e-10)
    assert abs(float(r2.value) + math.log(2)) < 1e-14


def test_eval_lincomb_raises_capacity():
    lc = LinComb.of_atom(z(-1, 1, 1, 1, 1))
    with pytest.raises(CapacityError):
        eval_lincomb(lc, 1e-9, n_cap=10**4)


# -- Euler sums ---------------------------------------------------------------------


def test_sum_partials_match_exact():
    # the series walker partial sums agree with exact rational evaluation
    from eulersums.numerics import _SumState

    for text in ["S(1,2)", "S(1,1,-3)", "S(-1,2,3)", "S(2,-2)"]:
        idx = parse_index(text)
        st = _SumState(idx)
        n_arr = np.arange(1, 41, dtype=np.float64)
        alt_sign = np.where(np.arange(1, 41) % 2 == 0, 1.0, -1.0)
        inv = 1.0 / n_arr
        pows = {m: inv**m for m in {abs(e) for e in idx.inner} | {abs(idx.outer)}}
        st.update_block(0, n_arr, pows, alt_sign)
        exact = Fraction(0)
        for n in range(1, 41):
            h = Fraction(1)
            for e in idx.inner:
                h *= harmonic_exact(e, n) if e > 0 else alt_harmonic_exact(-e, n)
            sign = (-1) ** (n - 1) if idx.outer < 0 else 1
            exact += h * Fraction(sign, n ** abs(idx.outer))
        assert abs(float(st.partial) - float(exact)) < 1e-14, text


def test_linear_sum_value():
    # S(1,2) = 2 zeta(3)
    r = eval_euler_sum_best(parse_index("S(1,2)"), 1e-7)
    assert abs(float(r.value) - 2 * float(zeta_value(3).value)) <= r.tail_bound + 1e-12


def test_degree_zero_sums():
    r = eval_euler_sum_best(make_index([], 3), 1e-10)
    assert abs(float(r.value) - float(zeta_value(3).value)) <= r.tail_bound + 1e-12
    r = eval_euler_sum_best(make_index([], -2), 1e-9)
    # sum of (-1)^(n-1)/n^2 = zeta(2)/2
    assert abs(float(r.value) - 0.5 * float(zeta_value(2).value)) <= r.tail_bound + 1e-12


def test_oracle_consistency_sampled():
    # series vs expansion across sign patterns (weights <= 8, degrees <= 3)
    from eulersums.expansion import expand_t1

    rng = random.Random(31)
    cases = ["S(2,-2)", "S(-1,3)", "S(1,-2,4)", "S(-1,-2,2)", "S(2,2,-3)", "S(1,1,-1)"]
    while len(cases) < 14:
        degree = rng.randrange(1, 4)
        inner = [rng.choice([1, -1]) * rng.randrange(1, 4) for _ in range(degree)]
        room = 8 - sum(abs(e) for e in inner)
        if room < 2:
            continue
        outer = rng.choice([1, -1]) * rng.randrange(2, room + 1)
        cases.append(str(make_index(inner, outer)))
    for text in cases:
        idx = parse_index(text)
        a = eval_euler_sum_best(idx, 1e-7, n_cap=10**6)
        b = eval_lincomb_best(expand_t1(idx), 1e-7, n_cap=10**6)
        diff = abs(float(a.value) - float(b.value))
        assert diff <= a.tail_bound + b.tail_bound, (text, diff)
