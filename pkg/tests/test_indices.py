import json
import random

import pytest

from eulersums.indices import (
    ConvergenceError,
    EulerSumIndex,
    IndexParseError,
    from_json,
    index_degree,
    index_weight,
    make_index,
    parse_index,
    render_index,
)


def test_parse_examples():
    idx = parse_index("S(1,1,-3)")
    assert idx.inner == (1, 1) and idx.outer == -3
    idx = parse_index("2,1,5")
    assert idx.inner == (1, 2) and idx.outer == 5
    with pytest.raises(ConvergenceError):
        parse_index("S(1,1)")


def test_parse_errors_carry_position():
    with pytest.raises(IndexParseError):
        parse_index("")
    with pytest.raises(IndexParseError):
        parse_index("S(2,)")
    with pytest.raises(IndexParseError):
        parse_index("S(2,,3)")
    with pytest.raises(IndexParseError):
        parse_index("S(02,3)")  # leading zero not in the grammar
    with pytest.raises(IndexParseError):
        parse_index("S(2 3)")
    with pytest.raises(IndexParseError) as ei:
        parse_index("S(1,x)")
    assert ei.value.position >= 0
    with pytest.raises(ValueError):
        parse_index("S(0,3)")


def test_convergence_rules():
    with pytest.raises(ConvergenceError):
        make_index([2], 1)
    make_index([2], -1)  # alternating outer 1 is conditionally convergent
    make_index([], 5)
    make_index([], -1)


def test_weight_degree():
    idx = make_index([1, 1, 2, 2, 2, 5], 2)
    assert index_weight(idx) == 15 and index_degree(idx) == 6
    assert make_index([3], 4).degree == 1
    idx = parse_index("S(1,1,-3)")
    assert idx.weight == 5 and idx.degree == 2
    assert make_index([], 5).degree == 0


def test_canonical_form_order_insensitive():
    rng = random.Random(42)
    entries = [3, 1, -2, 2, -1, 1, -2]
    ref = make_index(entries, 4)
    assert ref.inner == (1, 1, 2, 3, -1, -2, -2)
    for _ in range(30):
        shuffled = entries[:]
        rng.shuffle(shuffled)
        assert make_index(shuffled, 4) == ref
    assert ref.num_unsigned_inner == 4


def test_noncanonical_direct_construction_rejected():
    with pytest.raises(ValueError):
        EulerSumIndex((2, 1), 3)


def test_render_roundtrip_random():
    rng = random.Random(1)
    for _ in range(200):
        deg = rng.randrange(0, 5)
        inner = [rng.choice([1, -1]) * rng.randrange(1, 6) for _ in range(deg)]
        outer = rng.choice([1, -1]) * rng.randrange(2, 7)
        idx = make_index(inner, outer)
        assert parse_index(render_index(idx, "plain")) == idx
        assert from_json(json.loads(render_index(idx, "json"))) == idx


def test_render_styles():
    assert render_index(parse_index("S(1,1,-3)"), "plain") == "S(1,1,-3)"
    assert render_index(make_index([2, 2, 2], 2), "latex") == r"S_{2^{3},2}"
    assert render_index(make_index([1, -1], 3), "latex") == r"S_{1\bar{1},3}"
    assert render_index(make_index([], 5), "plain") == "S(5)"
    assert render_index(make_index([], 5), "latex") == r"\zeta(5)"
    # power grouping with mixed alternation and an alternating outer
    assert (
        render_index(make_index([1, 1, -2, -2, -2, 5], -2), "latex")
        == r"S_{1^{2}5\bar{2}^{3},\bar{2}}"
    )
    with pytest.raises(ValueError):
        render_index(make_index([], 5), "html")
