"""Identity toolkit and the fixpoint rewrite engine.

The closed-form rules implemented here:

  * ``log_integral(k, l)``: the integral of ln^k(t) ln^l(1-t) / (1-t) over
    (0,1), expressed as a polynomial in zeta values through its recurrence;
    it satisfies the symmetry W(k,l-1)/(k!(l-1)!) = W(l,k-1)/(l!(k-1)!)
    exactly, which the tests enforce.
  * ``zeta_ones(k, l)``: zeta(k+1, {1}_l) = (-1)^(k+l)/(k! l!) * W(k, l).
  * ``alt_depth1(s)``: zeta(s bar) = (2^(1-s) - 1) zeta(s) for s >= 2;
    zeta(1 bar) stays as the -ln(2) basis atom.
  * ``zeta_repeated(r, m)`` and ``zeta_repeated_bar(r, m)``: the values with
    one repeated (possibly alternating) slot, by the Newton-type recurrence
    relating power sums to strictly-decreasing nested sums.
  * ``depth2_odd(atom)``: any depth-2 value of odd weight, signs arbitrary,
    as a combination of depth-1 values (with the convention that an unsigned
    zeta(1) occurring in the closed form is dropped).
  * ``reflection_pair_sum`` / ``reflection_triple_sum``: the symmetric-sum
    identities for zeta(a,b)+zeta(b,a) (signs allowed) and for the six
    orderings of three unsigned slots.
  * ``symmetric_triple_sum(i, j, k)``: zeta(k,i,j) + zeta(k,j,i) written
    through quadratic/linear Euler sums, with the Euler sums resolved by the
    ordering-class expansion.  Exposed and tested, but not part of the
    default pipeline: once the sums are expanded the identity returns its
    own left side, so it cannot make progress as a rewrite.

``reduce_lincomb`` applies a table lookup first and then the rules above in
a fixed order, atom by atom, until nothing fires.  Every rewrite preserves
weight (asserted) and strictly decreases (depth, alternation) of the atom it
replaces, or eliminates a paired atom, so the fixpoint is reached in finitely
many steps.  Atoms no rule covers (even-weight depth-2 values, deep
alternating values, Li constants, the -ln 2 atom) pass through untouched:
they are basis elements of the reduced form.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .algebra import LinComb, MzvAtom, SymbolicTerm, parse_atom, z
from .expansion import expand_t1
from .indices import make_index

TRACE_CAP = 10_000
STEP_CAP = 100_000


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

_W_CACHE: dict[tuple[int, int], LinComb] = {}


def log_integral(k: int, l: int) -> LinComb:
    """W(k, l) as an exact polynomial in single zeta values (k >= 1, l >= 0)."""
    if k < 1 or l < 0:
        raise ValueError(f"need k >= 1, l >= 0, got ({k}, {l})")
    if k + l > 30:
        raise ValueError(f"log_integral capped at k + l <= 30, got {k + l}")
    key = (k, l)
    if key in _W_CACHE:
        return _W_CACHE[key]
    acc = LinComb.of_atom(
        z(k + l + 1), Fraction((-1) ** (k + l) * math.factorial(k + l), l + 1)
    )
    for i in range(1, k):
        for j in range(1, l + 1):
            c = Fraction(
                math.comb(k - 1, i - 1)
                * math.comb(l, j)
                * (-1) ** (i + j)
                * math.factorial(i + j - 1)
            )
            acc = acc - LinComb.of_atom(z(i + j), c) * log_integral(k - i, l - j)
    _W_CACHE[key] = acc
    return acc


def zeta_ones(k: int, l: int) -> LinComb:
    """zeta(k+1, {1}_l) reduced to a polynomial in zeta values."""
    if k < 1 or l < 0:
        raise ValueError(f"need k >= 1, l >= 0, got ({k}, {l})")
    c = Fraction((-1) ** (k + l), math.factorial(k) * math.factorial(l))
    return log_integral(k, l).scale(c)


def alt_depth1(s: int) -> LinComb:
    """zeta(s bar) for s >= 2 as a rational multiple of zeta(s)."""
    if s < 2:
        raise ValueError("the s = 1 atom is a basis element (-ln 2)")
    return LinComb.of_atom(z(s), Fraction(1, 2 ** (s - 1)) - 1)


def _zeta_signed(v: int, sign: int) -> LinComb:
    """zeta(v) or zeta(v bar) as a combination; unsigned v = 1 is dropped (0)."""
    if sign > 0:
        if v == 1:
            return LinComb.zero()
        return LinComb.of_atom(z(v))
    return LinComb.of_atom(z(-v))


_REPEATED_CACHE: dict[tuple[int, int, bool], LinComb] = {}


def zeta_repeated(r: int, m: int) -> LinComb:
    """zeta({r}_m) for unsigned r >= 2 as a polynomial in zeta values."""
    if r < 2:
        raise ValueError("repeated unsigned slot needs r >= 2")
    return _repeated(r, m, barred=False)


def zeta_repeated_bar(r: int, m: int) -> LinComb:
    """zeta({r bar}_m), m >= 1, reduced through the power-sum recurrence."""
    if r < 1:
        raise ValueError("slot must be >= 1")
    return _repeated(r, m, barred=True)


def _repeated(r: int, m: int, barred: bool) -> LinComb:
    if m < 0:
        raise ValueError("multiplicity must be >= 0")
    key = (r, m, barred)
    if key in _REPEATED_CACHE:
        return _REPEATED_CACHE[key]
    if m == 0:
        out = LinComb.scalar(1)
    elif m == 1:
        out = LinComb.of_atom(z(-r) if barred else z(r))
    else:
        acc = LinComb.zero()
        for i in range(m):
            power_sign = (-1) ** (m - i) if barred else 1
            acc = acc + _repeated(r, i, barred).scale(Fraction((-1) ** i)) * _zeta_signed(
                r * (m - i), power_sign
            )
        out = acc.scale(Fraction((-1) ** (m - 1), m))
    _REPEATED_CACHE[key] = out
    return out


def depth2_odd(atom: MzvAtom) -> LinComb | None:
    """Odd-weight depth-2 value as depth-1 products; None if not applicable."""
    if atom.li or atom.depth != 2:
        return None
    s, t = abs(atom.args[0]), abs(atom.args[1])
    if (s + t) % 2 == 0:
        return None
    sg, tg = (1 if atom.args[0] > 0 else -1), (1 if atom.args[1] > 0 else -1)
    w = s + t

    def mu(r: int) -> LinComb:
        out = _zeta_signed(r, sg).scale(math.comb(r - 1, s - 1)) + _zeta_signed(
            r, tg
        ).scale(math.comb(r - 1, t - 1))
        return out.scale((-1) ** s)

    def lam(r: int) -> LinComb:
        return _zeta_signed(r, sg * tg)

    acc = lam(w).scale(Fraction(-1, 2)) + mu(w).scale(Fraction(1, 2))
    if s % 2 == 0:
        acc = acc + _zeta_signed(s, sg) * _zeta_signed(t, tg)
    for k in range(1, (w - 1) // 2 + 1):
        if 2 * k == w:
            break
        acc = acc - lam(2 * k) * mu(w - 2 * k)
    return acc


def reflection_pair_sum(a: int, b: int) -> LinComb:
    """zeta(a,b) + zeta(b,a) for signed slots a, b (stuffle of two singles).

    Needs both slots admissible as depth-1 values, i.e. neither is an
    unsigned 1.  With a == b this encodes the half formula for zeta(a,a).
    """
    if a == 1 or b == 1:
        raise ValueError("unsigned slot 1 is not admissible in the reflection")
    sa, sb = (1 if a > 0 else -1), (1 if b > 0 else -1)
    va, vb = abs(a), abs(b)
    return _zeta_signed(va, sa) * _zeta_signed(vb, sb) - _zeta_signed(va + vb, sa * sb)


def reflection_triple_sum(a: int, b: int, c: int) -> LinComb:
    """Sum of the six orderings of zeta(a,b,c), unsigned a, b, c >= 2."""
    if min(a, b, c) < 2:
        raise ValueError("the triple reflection needs unsigned slots >= 2")
    za, zb, zc = (LinComb.of_atom(z(v)) for v in (a, b, c))
    return (
        za * zb * zc
        + LinComb.of_atom(z(a + b + c), 2)
        - za * LinComb.of_atom(z(b + c))
        - zb * LinComb.of_atom(z(a + c))
        - zc * LinComb.of_atom(z(a + b))
    )


def symmetric_triple_sum(i: int, j: int, k: int) -> LinComb:
    """zeta(k,i,j) + zeta(k,j,i) through Euler sums, for j >= i >= 1, k >= 2.

    The Euler-sum symbols are resolved by the ordering-class expansion, so
    the result is an exact combination of MZV atoms equal to the pair sum.
    """
    if not (j >= i >= 1 and k >= 2):
        raise ValueError(f"need j >= i >= 1 and k >= 2, got ({i}, {j}, {k})")
    out = expand_t1(make_index([i, j], k))
    out = out - expand_t1(make_index([i], j + k))
    out = out - expand_t1(make_index([j], i + k))
    out = out - expand_t1(make_index([i + j], k))
    out = out + LinComb.of_atom(z(i + j + k), 2)
    return out


# ---------------------------------------------------------------------------
# Rules and tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityRule:
    name: str
    matcher: Callable[[MzvAtom], bool]
    rewriter: Callable[[MzvAtom], LinComb | None]


def _match_alt_depth1(a: MzvAtom) -> bool:
    return not a.li and a.depth == 1 and a.args[0] <= -2


def _match_repeated(a: MzvAtom) -> bool:
    return not a.li and a.depth >= 2 and len(set(a.args)) == 1


def _rw_repeated(a: MzvAtom) -> LinComb:
    slot = a.args[0]
    if slot > 0:
        return zeta_repeated(slot, a.depth)
    return zeta_repeated_bar(-slot, a.depth)


def _match_ones(a: MzvAtom) -> bool:
    return (
        not a.li
        and a.depth >= 2
        and a.args[0] >= 2
        and all(t == 1 for t in a.args[1:])
    )


def _rw_ones(a: MzvAtom) -> LinComb:
    return zeta_ones(a.args[0] - 1, a.depth - 1)


def _match_depth2_odd(a: MzvAtom) -> bool:
    return not a.li and a.depth == 2 and (abs(a.args[0]) + abs(a.args[1])) % 2 == 1


def default_rules() -> list[IdentityRule]:
    return [
        IdentityRule("alt_depth1", _match_alt_depth1, lambda a: alt_depth1(-a.args[0])),
        IdentityRule("repeated", _match_repeated, _rw_repeated),
        IdentityRule("zeta_ones", _match_ones, _rw_ones),
        IdentityRule("depth2_odd", _match_depth2_odd, depth2_odd),
    ]


class IdentityTable:
    """An ingested mapping from canonical atom renderings to reduced forms."""

    def __init__(self, label: str = "table"):
        self.label = label
        self.entries: dict[str, LinComb] = {}
        self.max_weight = 0
        self.report: list[str] = []

    def add(self, lhs: MzvAtom, rhs: LinComb):
        if rhs.weights() not in ({lhs.weight}, set()):
            raise ValueError(
                f"weight-inhomogeneous entry {lhs.render()}: "
                f"lhs weight {lhs.weight}, rhs weights {sorted(rhs.weights())}"
            )
        if any(lhs in t.factors for t, _ in rhs.items()):
            raise ValueError(f"self-referential entry {lhs.render()}")
        self.entries[lhs.render()] = rhs
        self.max_weight = max(self.max_weight, lhs.weight)

    def lookup(self, atom: MzvAtom) -> LinComb | None:
        return self.entries.get(atom.render())

    def __len__(self):
        return len(self.entries)


def load_identity_table(source, verify: bool = False, tol: float = 1e-8, label: str | None = None) -> IdentityTable:
    """Load a JSON-lines identity table; malformed or failing entries are
    rejected individually and reported on ``table.report``.

    Each line: {"lhs": "z(...)", "rhs": [{"factors": [...], "coeff": "p/q"}],
    "weight": w}.  With ``verify`` set, each entry is numerically checked
    against the oracle at ``tol`` (plus certified bounds).
    """
    if isinstance(source, (str, bytes)):
        import io
        import os

        if isinstance(source, bytes):
            stream = io.StringIO(source.decode("utf-8"))
            name = label or "bytes"
        elif os.path.exists(source):
            stream = open(source, "r", encoding="utf-8")
            name = label or source
        else:
            stream = io.StringIO(source)
            name = label or "string"
    else:
        stream = source
        name = label or getattr(source, "name", "stream")
    table = IdentityTable(label=str(name))
    try:
        for lineno, line in enumerate(stream, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                obj = json.loads(line)
                lhs = parse_atom(obj["lhs"])
                rhs = LinComb.from_json_terms(obj["rhs"])
                if "weight" in obj and obj["weight"] != lhs.weight:
                    raise ValueError(
                        f"declared weight {obj['weight']} != atom weight {lhs.weight}"
                    )
                if verify:
                    _verify_entry(lhs, rhs, tol)
                table.add(lhs, rhs)
            except Exception as e:  # entry-level rejection
                table.report.append(f"{name}:{lineno}: rejected: {e}")
    finally:
        if stream is not source and hasattr(stream, "close"):
            stream.close()
    return table


def _verify_entry(lhs: MzvAtom, rhs: LinComb, tol: float):
    from . import numerics

    left = numerics.eval_lincomb_best(LinComb.of_atom(lhs), tol / 4)
    right = numerics.eval_lincomb_best(rhs, tol / 4)
    diff = abs(float(left.value) - float(right.value))
    budget = left.tail_bound + right.tail_bound + tol
    if diff > budget:
        raise ValueError(
            f"numeric mismatch for {lhs.render()}: |{float(left.value):.12g} - "
            f"{float(right.value):.12g}| = {diff:.3g} > {budget:.3g}"
        )


def save_table(table: IdentityTable, path):
    with open(path, "w", encoding="utf-8") as f:
        for lhs_text in sorted(table.entries, key=lambda s: (parse_atom(s).weight, s)):
            rhs = table.entries[lhs_text]
            f.write(
                json.dumps(
                    {
                        "lhs": lhs_text,
                        "rhs": rhs.to_json_terms(),
                        "weight": parse_atom(lhs_text).weight,
                    }
                )
                + "\n"
            )


def build_starter_table(max_weight: int = 12) -> IdentityTable:
    """Identities the library derives itself, precomputed as a table.

    Contains the zeta(k+1,{1}_l) closed forms, all odd-weight depth-2 values
    (signs included), and the depth-1 alternating values, each fully reduced.
    No externally compiled data enters here.
    """
    table = IdentityTable(label=f"starter<=w{max_weight}")
    rules = default_rules()
    for s in range(2, max_weight + 1):
        table.add(z(-s), alt_depth1(s))
    for k in range(1, max_weight):
        for l in range(1, max_weight - k):
            atom = z(k + 1, *([1] * l))
            if atom.weight <= max_weight:
                table.add(atom, reduce_lincomb(zeta_ones(k, l), rules=rules).value)
    for w in range(3, max_weight + 1, 2):
        for s in range(1, w):
            t = w - s
            for sg in (1, -1):
                for tg in (1, -1):
                    if s == 1 and sg == 1:
                        continue
                    atom = MzvAtom(args=(sg * s, tg * t))
                    if atom.render() in table.entries:
                        continue
                    rhs = depth2_odd(atom)
                    table.add(atom, reduce_lincomb(rhs, rules=rules).value)
    return table


# ---------------------------------------------------------------------------
# The rewrite engine
# ---------------------------------------------------------------------------


@dataclass
class ReduceResult:
    value: LinComb
    trace: list[str] = field(default_factory=list)
    steps: int = 0


def _term_without(term: SymbolicTerm, atom: MzvAtom) -> SymbolicTerm:
    factors = list(term.factors)
    factors.remove(atom)
    return SymbolicTerm.of(*factors)


def _substitute(lc: LinComb, term: SymbolicTerm, atom: MzvAtom, replacement: LinComb) -> LinComb:
    """Replace one occurrence of ``atom`` inside ``term`` by ``replacement``."""
    assert replacement.weights() in ({atom.weight}, set()), (
        f"weight leak rewriting {atom}: {sorted(replacement.weights())} != {atom.weight}"
    )
    c = lc.coeff(term)
    rest = LinComb.of_term(_term_without(term, atom), c)
    return lc - LinComb.of_term(term, c) + rest * replacement


def _swap_partner(atom: MzvAtom) -> MzvAtom | None:
    a, b = atom.args
    if a == b or b == 1:
        return None
    return MzvAtom(args=(b, a))


def _apply_pair_pass(lc: LinComb, trace: list[str]) -> LinComb | None:
    """One application of the two-slot reflection across matching cofactors."""
    seen: dict[tuple, Fraction] = {}
    for term, c in lc.items():
        for atom in term.factors:
            if atom.li or atom.depth != 2:
                continue
            seen[(_term_without(term, atom).sort_key(), atom)] = c
    for term, c in lc.items():
        for atom in sorted(set(term.factors), key=MzvAtom.sort_key):
            if atom.li or atom.depth != 2:
                continue
            partner = _swap_partner(atom)
            if partner is None or partner.sort_key() <= atom.sort_key():
                continue
            rest = _term_without(term, atom)
            pc = seen.get((rest.sort_key(), partner))
            if pc is None or pc == 0:
                continue
            # c1*A + c2*B -> c1*(pair sum) + (c2 - c1)*B: eliminate the
            # ascending-slot atom, keeping the descending-slot basis form.
            t_amt = lc.coeff(rest.mul(SymbolicTerm.of(atom)))
            rhs = reflection_pair_sum(atom.args[0], atom.args[1])
            partner_term = rest.mul(SymbolicTerm.of(partner))
            out = (
                lc
                - LinComb.of_term(partner_term, t_amt)
                - LinComb.of_term(rest.mul(SymbolicTerm.of(atom)), t_amt)
                + LinComb.of_term(rest, t_amt) * rhs
            )
            if len(trace) < TRACE_CAP:
                trace.append(
                    f"reflection_pair: {atom.render()} + {partner.render()}"
                    + (f" (cofactor {rest.render()})" if not rest.is_unit() else "")
                )
            return out
    return None


def _apply_triple_pass(lc: LinComb, trace: list[str]) -> LinComb | None:
    """One application of the three-slot reflection (unsigned slots >= 2)."""
    from .combinatorics import multiset_permutations, orbit_size

    by_cofactor: dict[tuple, dict[MzvAtom, Fraction]] = {}
    for term, c in lc.items():
        for atom in term.factors:
            if atom.li or atom.depth != 3 or any(t < 2 for t in atom.args):
                continue
            key = _term_without(term, atom).sort_key()
            by_cofactor.setdefault(key, {})[atom] = c
    for term, c in lc.items():
        for atom in sorted(set(term.factors), key=MzvAtom.sort_key):
            if atom.li or atom.depth != 3 or any(t < 2 for t in atom.args):
                continue
            slots = atom.args
            if len(set(slots)) == 1:
                continue  # fully repeated: the repeated-slot rule covers it
            rest = _term_without(term, atom)
            group = by_cofactor.get(rest.sort_key(), {})
            orderings = [MzvAtom(args=o) for o in multiset_permutations(sorted(slots))]
            if any(group.get(o, Fraction(0)) == 0 for o in orderings):
                continue
            last = max(orderings, key=MzvAtom.sort_key)
            t_amt = group[last]
            g = orbit_size(slots)
            rhs = reflection_triple_sum(*sorted(slots)).scale(Fraction(1, g))
            out = lc
            for o in orderings:
                out = out - LinComb.of_term(rest.mul(SymbolicTerm.of(o)), t_amt)
            out = out + LinComb.of_term(rest, t_amt) * rhs
            if len(trace) < TRACE_CAP:
                trace.append(
                    f"reflection_triple: orderings of {atom.render()} eliminated via {last.render()}"
                )
            return out
    return None


def reduce_lincomb(
    lc: LinComb,
    tables: Iterable[IdentityTable] = (),
    rules: list[IdentityRule] | None = None,
    max_steps: int = STEP_CAP,
) -> ReduceResult:
    """Rewrite ``lc`` to its fixpoint under tables, atom rules, and the
    symmetric-sum passes.  Irreducible atoms pass through untouched."""
    if rules is None:
        rules = default_rules()
    tables = list(tables)
    trace: list[str] = []
    steps = 0
    current = lc
    while steps < max_steps:
        progressed = False
        # Atom-level rewrites, tables first.
        for term, _c in current.items():
            hit = None
            for atom in sorted(set(term.factors), key=MzvAtom.sort_key):
                for table in tables:
                    rhs = table.lookup(atom)
                    if rhs is not None:
                        hit = (atom, rhs, f"table[{table.label}]")
                        break
                if hit:
                    break
                for rule in rules:
                    if rule.matcher(atom):
                        rhs = rule.rewriter(atom)
                        if rhs is not None:
                            hit = (atom, rhs, rule.name)
                            break
                if hit:
                    break
            if hit:
                atom, rhs, name = hit
                current = _substitute(current, term, atom, rhs)
                if len(trace) < TRACE_CAP:
                    trace.append(f"{name}: {atom.render()}")
                steps += 1
                progressed = True
                break
        if progressed:
            continue
        out = _apply_pair_pass(current, trace)
        if out is not None:
            current = out
            steps += 1
            continue
        out = _apply_triple_pass(current, trace)
        if out is not None:
            current = out
            steps += 1
            continue
        break
    else:
        raise RuntimeError(f"reduction did not reach a fixpoint within {max_steps} steps")
    return ReduceResult(current, trace, steps)
