"""Euler-sum indices: parsing, validation, canonical form, rendering.

An index bundles the signed harmonic exponents (the "inner" list, where a
negative entry -i means the alternating harmonic number of order i) with the
signed outer exponent (negative = the outer series alternates).  The defining
series is symmetric in its harmonic factors, so indices are canonicalized:
unsigned inner entries ascending first, then alternating entries ascending by
absolute value.

Grammar accepted by ``parse_index`` (whitespace insignificant):

    INDEX := "S(" LIST ")" | LIST
    LIST  := INT ("," INT)*
    INT   := "-"? [1-9][0-9]*

The last entry of the list is the outer exponent.  An unsigned outer 1 is
rejected (the series diverges); outer -1 is accepted and conditionally
convergent.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class IndexParseError(ValueError):
    """Malformed index text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ConvergenceError(ValueError):
    """The index denotes a divergent series."""


@dataclass(frozen=True)
class EulerSumIndex:
    inner: tuple[int, ...]
    outer: int

    def __post_init__(self):
        if self.outer == 0 or any(i == 0 for i in self.inner):
            raise ValueError("index entries must be nonzero")
        if self.outer == 1:
            raise ConvergenceError("outer exponent 1 with a non-alternating outer series diverges")
        if tuple(canonical_inner(self.inner)) != self.inner:
            raise ValueError(f"inner entries not in canonical order: {self.inner}")

    @property
    def weight(self) -> int:
        return sum(abs(i) for i in self.inner) + abs(self.outer)

    @property
    def degree(self) -> int:
        return len(self.inner)

    @property
    def is_alternating(self) -> bool:
        return self.outer < 0 or any(i < 0 for i in self.inner)

    @property
    def num_unsigned_inner(self) -> int:
        """The split point: unsigned entries come first in canonical order."""
        return sum(1 for i in self.inner if i > 0)

    def to_json(self) -> dict:
        return {"inner": list(self.inner), "outer": self.outer}

    def __repr__(self):
        return render_index(self, "plain")


def canonical_inner(entries) -> list[int]:
    pos = sorted(e for e in entries if e > 0)
    neg = sorted((e for e in entries if e < 0), key=abs)
    return pos + neg


def make_index(inner, outer: int) -> EulerSumIndex:
    return EulerSumIndex(tuple(canonical_inner(inner)), outer)


_INT_RE = re.compile(r"-?[1-9][0-9]*")


def parse_index(text: str) -> EulerSumIndex:
    """Parse index text; whitespace may separate tokens but not split them."""
    s = text
    pos = 0

    def skip_ws(p):
        while p < len(s) and s[p].isspace():
            p += 1
        return p

    pos = skip_ws(pos)
    if pos == len(s):
        raise IndexParseError("empty index", pos)
    wrapped = False
    if s[pos] in "Ss" and pos + 1 < len(s) and s[skip_ws(pos + 1)] == "(":
        wrapped = True
        pos = skip_ws(skip_ws(pos + 1) + 1)
    entries = []
    expect_int = True
    while True:
        pos = skip_ws(pos)
        if pos == len(s) or (wrapped and s[pos] == ")"):
            break
        if expect_int:
            m = _INT_RE.match(s, pos)
            if not m:
                raise IndexParseError(f"expected a nonzero integer, found {s[pos:]!r}", pos)
            entries.append(int(m.group()))
            pos = m.end()
            expect_int = False
        else:
            if s[pos] != ",":
                raise IndexParseError(f"expected ',', found {s[pos]!r}", pos)
            pos += 1
            expect_int = True
    if expect_int and entries:
        raise IndexParseError("trailing comma", pos)
    if wrapped:
        if pos == len(s) or s[pos] != ")":
            raise IndexParseError("missing closing parenthesis", pos)
        pos = skip_ws(pos + 1)
        if pos != len(s):
            raise IndexParseError(f"unexpected trailing text {s[pos:]!r}", pos)
    if not entries:
        raise IndexParseError("empty list", pos)
    outer = entries[-1]
    inner = entries[:-1]
    if outer == 1:
        raise ConvergenceError(f"index {text!r} diverges: outer exponent 1 without alternation")
    return make_index(inner, outer)


def from_json(obj) -> EulerSumIndex:
    return make_index(list(obj["inner"]), int(obj["outer"]))


def index_weight(idx: EulerSumIndex) -> int:
    return idx.weight


def index_degree(idx: EulerSumIndex) -> int:
    return idx.degree


def _latex_inner(inner: tuple[int, ...]) -> str:
    # Group repeated entries with power notation: (1,1,2) -> 1^22.
    out = []
    i = 0
    while i < len(inner):
        j = i
        while j < len(inner) and inner[j] == inner[i]:
            j += 1
        count = j - i
        e = inner[i]
        base = str(e) if e > 0 else r"\bar{%d}" % -e
        out.append(base if count == 1 else base + "^{%d}" % count)
        i = j
    return "".join(out)


def render_index(idx: EulerSumIndex, style: str = "plain") -> str:
    if style == "plain":
        return "S(" + ",".join(str(e) for e in idx.inner + (idx.outer,)) + ")"
    if style == "latex":
        q = str(idx.outer) if idx.outer > 0 else r"\bar{%d}" % -idx.outer
        if not idx.inner:
            arg = str(abs(idx.outer)) if idx.outer > 0 else r"\bar{%d}" % -idx.outer
            return r"\zeta(%s)" % arg
        return r"S_{%s,%s}" % (_latex_inner(idx.inner), q)
    if style == "json":
        import json

        return json.dumps(idx.to_json())
    raise ValueError(f"unknown style {style!r}")
