"""Exact value system: MZV atoms, products of atoms, and Q-linear combinations.

Every quantity handled by the expansion and reduction engines is a finite
linear combination, with rational coefficients, of products of "atoms".  An
atom is either

  * a (possibly alternating) multiple zeta value, stored as a tuple of
    nonzero signed integers where a negative entry -s stands for the
    alternating slot "s bar" (so ``z(-5, 1)`` is the depth-2 value with an
    alternating leading slot), or
  * the polylogarithm constant Li_q(1/2), a basis element of the alternating,
    low-weight reduction bases.

Coefficients are ``fractions.Fraction`` throughout; no floating point enters
this module.  All values are immutable after construction and safe to share.

Sign conventions:
  * the depth-1 alternating value ``z(-1)`` equals -ln(2) (the series
    sum over n of (-1)^n / n); renderers may display it as -ln(2),
  * an atom's leading slot must not be an unsigned 1 (the defining nested
    series would diverge); ``z(-1, ...)`` is allowed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions, and strings like '3/4' or '-5' to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


@dataclass(frozen=True)
class MzvAtom:
    """One multiple zeta value (or one Li_q(1/2) constant).

    ``args`` is the tuple of signed slots for a zeta atom; ``li`` is the
    polylogarithm order for a Li(q,1/2) atom, in which case ``args`` is empty.
    """

    args: tuple[int, ...] = ()
    li: int = 0

    def __post_init__(self):
        if self.li:
            if self.args:
                raise ValueError("Li atom carries no zeta slots")
            if self.li < 1:
                raise ValueError("Li order must be a positive integer")
            return
        if not self.args:
            raise ValueError("zeta atom needs at least one slot")
        if any(a == 0 for a in self.args):
            raise ValueError(f"zero slot in {self.args}")
        if self.args[0] == 1:
            # An unsigned leading 1 gives a divergent nested series.  The
            # expansion engines never produce one, so this is a logic error.
            raise ValueError(f"divergent atom: leading unsigned 1 in {self.args}")

    @property
    def weight(self) -> int:
        return self.li if self.li else sum(abs(a) for a in self.args)

    @property
    def depth(self) -> int:
        return 0 if self.li else len(self.args)

    @property
    def is_alternating(self) -> bool:
        return (not self.li) and any(a < 0 for a in self.args)

    def sort_key(self):
        if self.li:
            return (1, self.li, ())
        return (0, self.weight, self.args)

    def render(self) -> str:
        if self.li:
            return f"Li({self.li},1/2)"
        return "z(" + ",".join(str(a) for a in self.args) + ")"

    def latex(self) -> str:
        if self.li:
            return r"\mathrm{Li}_{%d}(\tfrac12)" % self.li
        body = ",".join((r"\bar{%d}" % -a) if a < 0 else str(a) for a in self.args)
        return r"\zeta(%s)" % body

    def __repr__(self):
        return self.render()


def z(*args: int) -> MzvAtom:
    """Zeta atom constructor: z(-5, 1) is the value with slots (5 bar, 1)."""
    return MzvAtom(args=tuple(args))


def li_half(q: int) -> MzvAtom:
    """The constant Li_q(1/2)."""
    return MzvAtom(li=q)


LN2_ATOM = z(-1)  # equals -ln(2); kept as an atom so the algebra stays closed


def parse_atom(text: str) -> MzvAtom:
    """Parse the canonical rendering 'z(a,b,...)' or 'Li(q,1/2)'."""
    s = text.strip()
    if s.startswith("Li(") and s.endswith(")"):
        inner = s[3:-1]
        parts = [p.strip() for p in inner.split(",")]
        if len(parts) != 2 or parts[1] != "1/2":
            raise ValueError(f"malformed Li atom: {text!r}")
        return li_half(int(parts[0]))
    if s.startswith("z(") and s.endswith(")"):
        body = s[2:-1]
        try:
            args = tuple(int(p.strip()) for p in body.split(","))
        except ValueError as e:
            raise ValueError(f"malformed zeta atom: {text!r}") from e
        return MzvAtom(args=args)
    raise ValueError(f"unrecognized atom rendering: {text!r}")


@dataclass(frozen=True)
class SymbolicTerm:
    """A commutative product of atoms, canonically sorted.

    The empty product is the unit term and represents the constant 1, so
    plain rationals live inside LinComb uniformly.
    """

    factors: tuple[MzvAtom, ...] = ()

    @staticmethod
    def of(*atoms: MzvAtom) -> "SymbolicTerm":
        return SymbolicTerm(tuple(sorted(atoms, key=MzvAtom.sort_key)))

    @property
    def weight(self) -> int:
        return sum(a.weight for a in self.factors)

    def is_unit(self) -> bool:
        return not self.factors

    def mul(self, other: "SymbolicTerm") -> "SymbolicTerm":
        return SymbolicTerm.of(*(self.factors + other.factors))

    def sort_key(self):
        return (len(self.factors), tuple(a.sort_key() for a in self.factors))

    def render(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(a.render() for a in self.factors)

    def latex(self) -> str:
        if not self.factors:
            return "1"
        # Fold the sign of ln(2) factors (z(-1) = -ln 2) into the display.
        n_ln2 = sum(1 for a in self.factors if a.args == (-1,))
        pieces = []
        for a in self.factors:
            if a.args == (-1,):
                continue
            pieces.append(a.latex())
        if n_ln2 == 1:
            pieces.append(r"\ln(2)")
        elif n_ln2 > 1:
            pieces.append(r"\ln^{%d}(2)" % n_ln2)
        sign = "-" if n_ln2 % 2 else ""
        return sign + " ".join(pieces)

    def __repr__(self):
        return self.render()


UNIT_TERM = SymbolicTerm()


class LinComb:
    """A finite Q-linear combination of SymbolicTerms.

    Stored as a mapping term -> Fraction with zero coefficients pruned on
    every construction; two combinations are equal iff their mappings are.
    Instances are never mutated after construction.
    """

    __slots__ = ("_d",)

    def __init__(self, entries: Mapping[SymbolicTerm, Fraction] | None = None):
        d = {}
        if entries:
            for t, c in entries.items():
                c = as_fraction(c)
                if c:
                    d[t] = d.get(t, Fraction(0)) + c
                    if not d[t]:
                        del d[t]
        self._d = d

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "LinComb":
        return LinComb()

    @staticmethod
    def scalar(c) -> "LinComb":
        return LinComb({UNIT_TERM: as_fraction(c)})

    @staticmethod
    def of_atom(atom: MzvAtom, coeff=1) -> "LinComb":
        return LinComb({SymbolicTerm.of(atom): as_fraction(coeff)})

    @staticmethod
    def of_term(term: SymbolicTerm, coeff=1) -> "LinComb":
        return LinComb({term: as_fraction(coeff)})

    # -- inspection ---------------------------------------------------

    def items(self) -> Iterator[tuple[SymbolicTerm, Fraction]]:
        return iter(sorted(self._d.items(), key=lambda kv: kv[0].sort_key()))

    def coeff(self, term: SymbolicTerm) -> Fraction:
        return self._d.get(term, Fraction(0))

    def atoms(self) -> set[MzvAtom]:
        out = set()
        for t in self._d:
            out.update(t.factors)
        return out

    def is_zero(self) -> bool:
        return not self._d

    def __len__(self) -> int:
        return len(self._d)

    def __bool__(self) -> bool:
        return bool(self._d)

    def weights(self) -> set[int]:
        """Set of total weights present (weight-homogeneous results have one)."""
        return {t.weight for t in self._d}

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            return NotImplemented
        d = dict(self._d)
        for t, c in other._d.items():
            s = d.get(t, Fraction(0)) + c
            if s:
                d[t] = s
            elif t in d:
                del d[t]
        out = LinComb()
        out._d = d
        return out

    def __neg__(self) -> "LinComb":
        out = LinComb()
        out._d = {t: -c for t, c in self._d.items()}
        return out

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def scale(self, c) -> "LinComb":
        c = as_fraction(c)
        out = LinComb()
        if c:
            out._d = {t: c * v for t, v in self._d.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, LinComb):
            d: dict[SymbolicTerm, Fraction] = {}
            for t1, c1 in self._d.items():
                for t2, c2 in other._d.items():
                    t = t1.mul(t2)
                    s = d.get(t, Fraction(0)) + c1 * c2
                    if s:
                        d[t] = s
                    elif t in d:
                        del d[t]
            out = LinComb()
            out._d = d
            return out
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        return isinstance(other, LinComb) and self._d == other._d

    def __ne__(self, other) -> bool:
        return not self.__eq__(other)

    # -- rendering ----------------------------------------------------

    def render(self) -> str:
        if not self._d:
            return "0"
        parts = []
        for t, c in self.items():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if t.is_unit():
                body = str(mag)
            elif mag == 1:
                body = t.render()
            else:
                body = f"{mag}*{t.render()}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        s = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def latex(self) -> str:
        if not self._d:
            return "0"
        parts = []
        for t, c in self.items():
            # ln(2) factors flip the displayed sign (z(-1) = -ln 2).
            n_ln2 = sum(1 for a in t.factors if a.args == (-1,))
            disp = c * (-1) ** n_ln2
            sign = "-" if disp < 0 else "+"
            mag = abs(disp)
            if mag.denominator == 1:
                coeff = str(mag.numerator)
            else:
                coeff = r"\frac{%d}{%d}" % (mag.numerator, mag.denominator)
            body = t.latex().lstrip("-")
            if t.is_unit():
                piece = coeff
            elif coeff == "1":
                piece = body
            else:
                piece = coeff + " " + body
            parts.append((sign, piece))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, piece in parts[1:]:
            s += f" {sign} {piece}"
        return s

    def to_json_terms(self) -> list[dict]:
        return [
            {"factors": [a.render() for a in t.factors], "coeff": str(c)}
            for t, c in self.items()
        ]

    @staticmethod
    def from_json_terms(terms: Iterable[Mapping]) -> "LinComb":
        acc = LinComb.zero()
        for entry in terms:
            atoms = [parse_atom(f) for f in entry["factors"]]
            acc = acc + LinComb.of_term(SymbolicTerm.of(*atoms), as_fraction(entry["coeff"]))
        return acc

    def __repr__(self):
        return f"LinComb({self.render()})"


def lincomb_add(a: LinComb, b: LinComb) -> LinComb:
    return a + b


def lincomb_mul(a: LinComb, b: LinComb) -> LinComb:
    return a * b
