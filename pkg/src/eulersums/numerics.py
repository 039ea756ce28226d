"""Independent numerical oracle with certified truncation bounds.

This module never consults the expansion or reduction engines: every value is
obtained by direct summation of a defining series, so it can serve as the
second route of every identity check.

Three evaluation strategies are used.

  * Exact rational evaluation of finite multiple harmonic sums
    (``eval_mhs_exact``) -- no tolerance, used by the quasi-shuffle tests.

  * Fixed-point integer summation (192 fractional bits) for the rapidly
    convergent depth-1 constants: zeta(s) through an Euler-Maclaurin tail,
    Li_q(1/2) and ln(2) through the geometric series sum 2^-n / n^q, and a
    Machin arctangent series for pi (test cross-checks).  Truncation and
    rounding errors are carried explicitly and end up far below 1e-30.

  * Blocked vectorized summation (numpy, 80-bit extended accumulators) for
    deep atoms and for the Euler-sum series themselves, with an adaptive
    term count up to N_MAX = 10**7.  Tail control:

      - leading slot unsigned (s1 >= 2): the inner partial sum zeta_n(rest)
        is monotone for unsigned rest, which brackets the tail between
        zeta_N(rest) * T(N, s1) and the same plus an explicit growth term;
        T(N, s1) is the Euler-Maclaurin zeta tail.  Growth and crude bounds
        come from zeta_n(..., {1}_j, ...) <= H_n^j / j! * prod zeta(t) and
        the exact log-moment integrals
        sum_{n>N} (H_N + ln(n/N))^k n^-s <= N^(1-s) * sum_t C(k,t) H_N^(k-t)
        t! / (s-1)^(t+1).

      - leading slot alternating: consecutive partial sums bracket the limit
        when the term magnitudes decrease (verified on the computed range),
        giving the midpoint value with half-gap error; independently, the
        pairwise-summed series gives an unconditional triangle bound built
        from the same log-moment integrals.  The better of the two is kept.

    Floating-point rounding is budgeted first-order as
    (4 eps64 + 3 N epsLD) * sum |terms| and added to every reported bound.

Reported ``tail_bound`` values are conservative under the documented
estimates above; decreasing the target tolerance never increases them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import LinComb, MzvAtom, SymbolicTerm
from .indices import EulerSumIndex

LD = np.longdouble
EPS64 = float(np.finfo(np.float64).eps)
EPS_LD = float(np.finfo(LD).eps)
N_MAX = 10**7
BLOCK_EDGES = (
    10_000,
    30_000,
    100_000,
    300_000,
    1_000_000,
    2_000_000,
    4_000_000,
    7_000_000,
    10_000_000,
)
ATOM_TOL_FLOOR = 1e-12
SUM_TOL_FLOOR = 1e-10

_EULER_GAMMA_UB = 0.5772156649015330  # upper bound on the Euler constant


@dataclass(frozen=True)
class NumericResult:
    """A certified evaluation: |value - true| <= tail_bound."""

    value: np.longdouble
    tail_bound: float
    terms_used: int

    def interval(self) -> tuple[float, float]:
        return (float(self.value) - self.tail_bound, float(self.value) + self.tail_bound)

    def __repr__(self):
        return f"NumericResult({float(self.value):.15g} +- {self.tail_bound:.3g}, N={self.terms_used})"


class CapacityError(RuntimeError):
    """Target tolerance unreachable within the term cap; carries the best result."""

    def __init__(self, message: str, result: NumericResult):
        super().__init__(f"{message}; achieved bound {result.tail_bound:.3g}")
        self.result = result


# ---------------------------------------------------------------------------
# Exact finite sums
# ---------------------------------------------------------------------------

MHS_N_CAP = 60
MHS_DEPTH_CAP = 6


def harmonic_exact(r: int, n: int) -> Fraction:
    """Generalized harmonic number of order r at n, as an exact rational."""
    return sum((Fraction(1, k**r) for k in range(1, n + 1)), Fraction(0))


def alt_harmonic_exact(r: int, n: int) -> Fraction:
    """Alternating harmonic number: sum of (-1)^(k-1) / k^r up to n."""
    return sum((Fraction((-1) ** (k - 1), k**r) for k in range(1, n + 1)), Fraction(0))


def eval_mhs_exact(args, n: int) -> Fraction:
    """Exact multiple harmonic sum over n >= n_1 > ... > n_k >= 1.

    ``args`` are signed slots (negative = alternating, contributing
    (-1)^(n_j) in that slot).  Empty args give 1; n below the depth gives 0.
    """
    args = tuple(args)
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > MHS_N_CAP:
        raise ValueError(f"exact MHS evaluation capped at n <= {MHS_N_CAP}")
    if len(args) > MHS_DEPTH_CAP:
        raise ValueError(f"exact MHS evaluation capped at depth <= {MHS_DEPTH_CAP}")
    if not args:
        return Fraction(1)
    if n < len(args):
        return Fraction(0)
    # prev[j] = zeta_j(suffix); build from the innermost slot outward.
    prev = [Fraction(1)] * (n + 1)
    for slot in reversed(args):
        s, alt = abs(slot), slot < 0
        cur = [Fraction(0)] * (n + 1)
        for j in range(1, n + 1):
            term = Fraction((-1) ** j if alt else 1, j**s) * prev[j - 1]
            cur[j] = cur[j - 1] + term
        prev = cur
    return prev[n]


# ---------------------------------------------------------------------------
# Fixed-point (192 fractional bits) constants
# ---------------------------------------------------------------------------

_FP_BITS = 192
_FP_SCALE = 1 << _FP_BITS


def _frac_to_ld(fr: Fraction) -> np.longdouble:
    q, r = divmod(fr.numerator, fr.denominator)
    rem = Fraction(r, fr.denominator)
    scaled = int(rem * (1 << 80))
    return LD(q) + LD(scaled) * LD(2.0) ** LD(-80)


def _fp_result(val: Fraction, err: Fraction, terms: int) -> NumericResult:
    v = _frac_to_ld(val)
    bound = float(err) + 2.0 ** (-79) + 4 * EPS_LD * abs(float(val))
    return NumericResult(v, bound, terms)


def _fp_zeta(s: int) -> tuple[Fraction, Fraction]:
    """zeta(s) for s >= 2 by partial sum plus Euler-Maclaurin tail."""
    if s < 2:
        raise ValueError("zeta needs s >= 2")
    n_cut = 2000 if s < 40 else 64
    acc = 0
    for n in range(1, n_cut + 1):
        acc += _FP_SCALE // n**s
    a = n_cut + 1
    tail = (
        Fraction(1, (s - 1) * a ** (s - 1))
        + Fraction(1, 2 * a**s)
        + Fraction(s, 12 * a ** (s + 1))
        - Fraction(s * (s + 1) * (s + 2), 720 * a ** (s + 3))
    )
    rem = 2 * Fraction(s * (s + 1) * (s + 2) * (s + 3) * (s + 4), 30240 * a ** (s + 5))
    val = Fraction(acc, _FP_SCALE) + tail
    err = Fraction(n_cut, _FP_SCALE) + rem
    return val, err


def _fp_li_half(q: int) -> tuple[Fraction, Fraction]:
    """Li_q(1/2) = sum 2^-n / n^q; geometric tail bound."""
    if q < 1:
        raise ValueError("Li order must be >= 1")
    n_cut = 220
    acc = 0
    for n in range(1, n_cut + 1):
        acc += _FP_SCALE // (2**n * n**q)
    tail = Fraction(2, 2 ** (n_cut + 1) * (n_cut + 1) ** q)
    return Fraction(acc, _FP_SCALE), Fraction(n_cut, _FP_SCALE) + tail


def _fp_atan_inv(x: int) -> tuple[Fraction, Fraction]:
    """arctan(1/x) by the alternating Taylor series, truncation <= next term."""
    acc = 0
    t = 0
    terms = 0
    while True:
        u = _FP_SCALE // ((2 * t + 1) * x ** (2 * t + 1))
        if u == 0:
            break
        acc += -u if t % 2 else u
        t += 1
        terms += 1
    return Fraction(acc, _FP_SCALE), Fraction(terms + 2, _FP_SCALE)


_CONST_CACHE: dict = {}


def zeta_value(s: int) -> NumericResult:
    key = ("zeta", s)
    if key not in _CONST_CACHE:
        _CONST_CACHE[key] = _fp_result(*_fp_zeta(s), terms=2000)
    return _CONST_CACHE[key]


def li_half_value(q: int) -> NumericResult:
    key = ("li", q)
    if key not in _CONST_CACHE:
        _CONST_CACHE[key] = _fp_result(*_fp_li_half(q), terms=220)
    return _CONST_CACHE[key]


def ln2_value() -> NumericResult:
    return li_half_value(1)


def pi_reference() -> NumericResult:
    """pi via Machin's two-arctangent combination (test cross-checks)."""
    key = ("pi",)
    if key not in _CONST_CACHE:
        a5, e5 = _fp_atan_inv(5)
        a239, e239 = _fp_atan_inv(239)
        _CONST_CACHE[key] = _fp_result(16 * a5 - 4 * a239, 16 * e5 + 4 * e239, 0)
    return _CONST_CACHE[key]


def zeta_upper(s: int) -> float:
    """Cheap rigorous upper bound on zeta(s)."""
    key = ("zub", s)
    if key not in _CONST_CACHE:
        r = zeta_value(s)
        _CONST_CACHE[key] = (float(r.value) + r.tail_bound) * (1 + 1e-12)
    return _CONST_CACHE[key]


def zeta_tail_interval(n: int, s: int) -> tuple[float, float]:
    """Rigorous enclosure of sum_{m > n} m^-s via Euler-Maclaurin (s >= 2)."""
    a = float(n + 1)
    est = (
        a ** (1.0 - s) / (s - 1.0)
        + 0.5 * a ** (-float(s))
        + (s / 12.0) * a ** (-float(s) - 1.0)
        - (s * (s + 1) * (s + 2) / 720.0) * a ** (-float(s) - 3.0)
    )
    rem = 2.0 * (s * (s + 1) * (s + 2) * (s + 3) * (s + 4) / 30240.0) * a ** (-float(s) - 5.0)
    rem += 8 * EPS64 * est
    return (max(est - rem, 0.0), est + rem)


# ---------------------------------------------------------------------------
# Log-moment tail bounds
# ---------------------------------------------------------------------------


def _hn_upper(n: int) -> float:
    return math.log(n) + _EULER_GAMMA_UB + 0.5 / n


def log_moment_tail(n: int, k: int, s: float, hn: float | None = None) -> float:
    """Upper bound on sum_{m > n} (H_n + ln(m/n))^k m^-s, s > 1.

    Since H_m <= H_n + ln(m/n), this also bounds sum_{m > n} H_m^k m^-s.
    """
    if hn is None:
        hn = _hn_upper(n)
    a = s - 1.0
    acc = 0.0
    for t in range(k + 1):
        acc += math.comb(k, t) * hn ** (k - t) * math.factorial(t) / a ** (t + 1)
    return acc * float(n) ** (-a) * (1.0 + 1e-9)


def _mhs_prefactor(slots) -> tuple[float, int]:
    """(C, j) with |zeta_n(slots; signs)| <= C * H_n^j for every n.

    j counts the magnitude-1 slots (strictly decreasing in the nested chain,
    whence the 1/j! factor); the remaining slots are bounded by zeta values.
    """
    j = sum(1 for t in slots if abs(t) == 1)
    c = 1.0 / math.factorial(j)
    for t in slots:
        if abs(t) >= 2:
            c *= zeta_upper(abs(t))
    return c * (1 + 1e-12), j


# ---------------------------------------------------------------------------
# Blocked series walker for MZV atoms
# ---------------------------------------------------------------------------


def _block_schedule(cap: int):
    cap = min(cap, N_MAX)
    cap -= cap % 2  # even edges keep the pairing bound aligned
    edges = [e for e in BLOCK_EDGES if e < cap]
    edges.append(cap)
    return edges


class _AtomState:
    """Running state of one atom inside a batch walk."""

    def __init__(self, atom: MzvAtom, tol: float):
        self.atom = atom
        self.tol = tol
        args = atom.args
        self.mags = tuple(abs(a) for a in args)
        self.alts = tuple(a < 0 for a in args)
        self.depth = len(args)
        self.carries = [LD(0.0)] * self.depth  # carries[c] = A_{c+1}(N) level index
        self.abs_sums = [0.0] * self.depth
        self.last_term = LD(0.0)
        self.monotone = True
        self.best: NumericResult | None = None
        rest = args[1:]
        self.rest = rest
        self.rest_unsigned = all(t > 0 for t in rest)
        self.c_lead, self.j_lead = _mhs_prefactor(rest)
        if rest:
            self.t1 = abs(rest[0])
            self.c_inc, self.j_inc = _mhs_prefactor(rest[1:])
        else:
            self.t1 = None
            self.c_inc, self.j_inc = 0.0, 0

    def update_block(self, n_lo: int, n_arr, pows, alt_sign):
        above = None  # block array of the level below (deeper) level
        prev_tail_carry = None
        for c in range(self.depth - 1, -1, -1):
            base = pows[self.mags[c]]
            term = base * alt_sign if self.alts[c] else base
            if above is None and c == self.depth - 1:
                contrib = term.astype(LD)
            else:
                shifted = np.empty_like(above)
                shifted[0] = prev_tail_carry
                shifted[1:] = above[:-1]
                contrib = term * shifted
            prev_tail_carry = self.carries[c]
            arr = self.carries[c] + np.cumsum(contrib)
            self.abs_sums[c] += float(np.sum(np.abs(contrib)))
            self.carries[c] = arr[-1]
            if c == 0:
                # Term magnitudes must be non-increasing over the computed
                # tail (the latest block) for the bracket bound; the head of
                # the series may grow and is irrelevant.
                mags = np.abs(contrib)
                self.monotone = bool(np.all(np.diff(mags) <= mags[:-1] * 1e-9 + 1e-300))
                self.last_term = contrib[-1]
            above = arr
        return

    def bound_at(self, n: int) -> tuple[np.longdouble, float]:
        s1 = self.mags[0]
        lead_alt = self.alts[0]
        partial = self.carries[0]
        round_err = sum(self.abs_sums) * (4 * EPS64 + 3 * n * EPS_LD)
        zrest = float(self.carries[1]) if self.depth >= 2 else 1.0
        hn = _hn_upper(n)
        if not lead_alt:
            if self.rest_unsigned:
                t_lo, t_hi = zeta_tail_interval(n, s1)
                zr_lo = max(zrest * (1 - 1e-10) - round_err, 0.0)
                zr_hi = zrest * (1 + 1e-10) + round_err
                g_hi = self._growth_sum(n, s1, t_hi, hn)
                g_lo = self._growth_sum_lower(n, s1, t_lo, t_hi)
                lo = zr_lo * t_lo + min(g_lo, g_hi)
                hi = zr_hi * t_hi + g_hi
                value = partial + LD((lo + hi) / 2.0)
                return value, (hi - lo) / 2.0 + round_err
            bound = self.c_lead * log_moment_tail(n, self.j_lead, float(s1), hn)
            return partial, bound + round_err
        # alternating leading slot
        bound_b = s1 * self.c_lead * log_moment_tail(n, self.j_lead, float(s1 + 1), hn)
        if self.rest:
            bound_b += self.c_inc * log_moment_tail(n, self.j_inc, float(s1 + self.t1), hn)
        value, bound = partial, bound_b + round_err
        if self.rest_unsigned and self.monotone:
            bound_a = abs(float(self.last_term)) / 2.0 + round_err
            if bound_a < bound:
                value = partial - self.last_term / LD(2.0)
                bound = bound_a
        return value, bound

    def _growth_sum(self, n: int, s1: int, t_hi: float, hn: float) -> float:
        """Upper bound on sum_{m>n} (zeta_{m-1}(rest) - zeta_n(rest)) m^-s1."""
        if not self.rest:
            return 0.0
        if self.t1 == 1:
            j = self.j_lead  # number of 1-slots in rest (= j_inc + 1 here)
            main = log_moment_tail(n, j, float(s1), hn)
            t_lo = zeta_tail_interval(n, s1)[0]
            inc = (self.c_inc / j) * max(0.0, main - hn**j * t_lo)
            return inc
        g_const = self.c_inc * log_moment_tail(n, self.j_inc, float(self.t1), hn)
        return g_const * t_hi

    def _growth_sum_lower(self, n: int, s1: int, t_lo: float, t_hi: float) -> float:
        """Lower bound on the same growth sum, from
        zeta_{m-1}(rest) - zeta_n(rest) >= zeta_n(rest[1:]) * sum_{n<k<m} k^-t1
        and the exact integral moments (both slot sums all-unsigned here)."""
        if not self.rest:
            return 0.0
        zrest2 = float(self.carries[2]) if self.depth >= 3 else 1.0
        zrest2 = max(zrest2 * (1 - 1e-10), 0.0)
        a = float(n + 1)
        t1 = self.t1
        if t1 == 1:
            # sum_{m>n} ln(m/(n+1)) m^-s1 >= (n+1)^(1-s1)/(s1-1)^2 - unimodal slack
            base = a ** (1.0 - s1) / (s1 - 1.0) ** 2 - a ** (-float(s1)) / (s1 - 1.0)
            return zrest2 * max(base, 0.0) * (1 - 1e-9)
        base = (a ** (1.0 - t1) / (t1 - 1.0)) * t_lo - zeta_tail_interval(
            n, s1 + t1 - 1
        )[1] / (t1 - 1.0)
        return zrest2 * max(base, 0.0) * (1 - 1e-9)


_ATOM_CACHE: dict[MzvAtom, NumericResult] = {}


def _atom_fast_path(atom: MzvAtom) -> NumericResult | None:
    if atom.li:
        return li_half_value(atom.li)
    if atom.args == (-1,):
        r = ln2_value()
        return NumericResult(-r.value, r.tail_bound, r.terms_used)
    if atom.depth == 1 and atom.args[0] >= 2:
        return zeta_value(atom.args[0])
    return None


def eval_atoms(requests: dict[MzvAtom, float], n_cap: int = N_MAX) -> dict[MzvAtom, NumericResult]:
    """Evaluate many atoms in one blocked walk; shared power arrays per block.

    Always returns a certified result per atom (the best achieved bound, even
    when it misses the request).
    """
    out: dict[MzvAtom, NumericResult] = {}
    pending: list[_AtomState] = []
    for atom, tol in requests.items():
        fast = _atom_fast_path(atom)
        if fast is not None:
            out[atom] = fast
            continue
        cached = _ATOM_CACHE.get(atom)
        if cached is not None and (
            cached.tail_bound <= tol or cached.terms_used >= min(n_cap, N_MAX)
        ):
            # Either good enough, or already walked to the cap (no improvement
            # possible by re-walking).
            out[atom] = cached
            continue
        pending.append(_AtomState(atom, tol))
    if not pending:
        return out

    n_lo = 0
    for edge in _block_schedule(n_cap):
        if not pending:
            break
        n_arr = np.arange(n_lo + 1, edge + 1, dtype=np.float64)
        alt_sign = np.where(np.arange(n_lo + 1, edge + 1) % 2 == 0, 1.0, -1.0)
        needed = sorted({m for st in pending for m in st.mags})
        inv = 1.0 / n_arr
        pows = {m: inv**m for m in needed}
        still: list[_AtomState] = []
        for st in pending:
            st.update_block(n_lo, n_arr, pows, alt_sign)
            value, bound = st.bound_at(edge)
            res = NumericResult(value, bound, edge)
            if st.best is None or bound < st.best.tail_bound:
                st.best = res
            if st.best.tail_bound <= st.tol:
                out[st.atom] = st.best
                _cache_atom(st.atom, st.best)
            else:
                still.append(st)
        pending = still
        n_lo = edge
        del pows
    for st in pending:
        out[st.atom] = st.best
        _cache_atom(st.atom, st.best)
    return out


def _cache_atom(atom: MzvAtom, res: NumericResult):
    old = _ATOM_CACHE.get(atom)
    if old is None or res.tail_bound < old.tail_bound:
        _ATOM_CACHE[atom] = res


def eval_atom(atom: MzvAtom, target_tol: float = 1e-10, n_cap: int = N_MAX) -> NumericResult:
    """Evaluate one atom; CapacityError (carrying the result) if tol missed."""
    if target_tol < ATOM_TOL_FLOOR:
        raise ValueError(f"target tolerance below the floor {ATOM_TOL_FLOOR}")
    res = eval_atoms({atom: target_tol}, n_cap=n_cap)[atom]
    if res.tail_bound > target_tol:
        raise CapacityError(f"tolerance {target_tol} unreachable for {atom}", res)
    return res


# ---------------------------------------------------------------------------
# Terms and linear combinations
# ---------------------------------------------------------------------------


def _interval_product(results, coeff: Fraction) -> tuple[np.longdouble, float]:
    v = _frac_to_ld(coeff)
    b = 4 * EPS_LD * abs(float(v))
    for r in results:
        nv = v * r.value
        b = abs(float(v)) * r.tail_bound + abs(float(r.value)) * b + b * r.tail_bound
        v = nv
        b += 2 * EPS_LD * abs(float(v))
    return v, b


def eval_term(term: SymbolicTerm, target_tol: float = 1e-10, n_cap: int = N_MAX) -> NumericResult:
    res = eval_lincomb_best(LinComb.of_term(term, 1), target_tol, n_cap=n_cap)
    return res


def eval_lincomb_best(
    lc: LinComb, target_tol: float = 1e-10, n_cap: int = N_MAX
) -> NumericResult:
    """Best-effort certified evaluation of a linear combination (never raises)."""
    if lc.is_zero():
        return NumericResult(LD(0.0), 0.0, 0)
    atoms = sorted(lc.atoms(), key=MzvAtom.sort_key)
    n_atoms = max(len(atoms), 1)
    first_tol = max(target_tol / (4 * n_atoms), ATOM_TOL_FLOOR)
    results = eval_atoms({a: first_tol for a in atoms}, n_cap=n_cap)

    def combine(res_map):
        total_v = LD(0.0)
        total_b = 0.0
        for t, c in lc.items():
            v, b = _interval_product([res_map[a] for a in t.factors], c)
            total_v += v
            total_b += b + 2 * EPS_LD * abs(float(v))
        return NumericResult(total_v, total_b, max((r.terms_used for r in res_map.values()), default=0))

    first = combine(results)
    if first.tail_bound <= target_tol:
        return first
    # Sensitivity-guided refinement: push each atom toward its share of tol.
    sens: dict[MzvAtom, float] = {a: 0.0 for a in atoms}
    for t, c in lc.items():
        mags = [abs(float(results[a].value)) + results[a].tail_bound for a in t.factors]
        for i, a in enumerate(t.factors):
            other = 1.0
            for j, m in enumerate(mags):
                if j != i:
                    other *= max(m, 1e-30)
            sens[a] += abs(float(c)) * other
    req = {
        a: max(target_tol / (2 * n_atoms * max(sens[a], 1e-30)), ATOM_TOL_FLOOR)
        for a in atoms
    }
    results = eval_atoms(req, n_cap=n_cap)
    second = combine(results)
    return second if second.tail_bound < first.tail_bound else first


def eval_lincomb(lc: LinComb, target_tol: float = 1e-10, n_cap: int = N_MAX) -> NumericResult:
    res = eval_lincomb_best(lc, target_tol, n_cap=n_cap)
    if res.tail_bound > target_tol:
        raise CapacityError(f"tolerance {target_tol} unreachable for combination", res)
    return res


# ---------------------------------------------------------------------------
# Euler sums by direct summation of the defining series
# ---------------------------------------------------------------------------


class _SumState:
    def __init__(self, idx: EulerSumIndex):
        self.idx = idx
        self.q = abs(idx.outer)
        self.outer_alt = idx.outer < 0
        # distinct factors with multiplicities
        counts: dict[int, int] = {}
        for e in idx.inner:
            counts[e] = counts.get(e, 0) + 1
        self.factors = sorted(counts.items(), key=lambda kv: (kv[0] < 0, abs(kv[0])))
        self.f_carries = {e: LD(0.0) for e, _ in self.factors}
        self.partial = LD(0.0)
        self.abs_sum = 0.0
        self.last_term = LD(0.0)
        self.monotone = True
        self.k1 = sum(1 for e in idx.inner if e == 1)

    def update_block(self, n_lo, n_arr, pows, alt_sign):
        h = None
        for e, mult in self.factors:
            r = abs(e)
            base = pows[r]
            term = (-base * alt_sign) if e < 0 else base
            f_arr = self.f_carries[e] + np.cumsum(term.astype(LD))
            self.f_carries[e] = f_arr[-1]
            piece = f_arr
            for _ in range(mult - 1):
                piece = piece * f_arr
            h = piece if h is None else h * piece
        if h is None:
            h = LD(1.0)  # degree 0: pure outer series
        a = h * pows[self.q]
        if self.outer_alt:
            a = a * (-alt_sign)
        a = a.astype(LD, copy=False)
        self.abs_sum += float(np.sum(np.abs(a)))
        arr = self.partial + np.cumsum(a)
        mags = np.abs(a)
        # non-increasing over the latest block; the head may grow
        self.monotone = bool(np.all(np.diff(mags) <= mags[:-1] * 1e-9 + 1e-300))
        self.last_term = a[-1]
        self.partial = arr[-1]

    def _factor_sups(self, n: int) -> dict[int, float]:
        sups = {}
        for e, _ in self.factors:
            r = abs(e)
            fv = abs(float(self.f_carries[e]))
            if e > 0 and r == 1:
                continue  # the log factor; handled by the moment bound
            if e > 0:
                sups[e] = (fv + zeta_tail_interval(n, r)[1]) * (1 + 1e-10)
            else:
                sups[e] = (fv + (n + 1.0) ** (-r)) * (1 + 1e-10)
        return sups

    def bound_at(self, n: int) -> tuple[np.longdouble, float]:
        q = self.q
        hn = _hn_upper(n)
        round_err = self.abs_sum * (4 * EPS64 + 3 * n * EPS_LD)
        sups = self._factor_sups(n)
        p_all = 1.0
        for e, mult in self.factors:
            if e > 0 and abs(e) == 1:
                continue
            p_all *= sups[e] ** mult
        if not self.outer_alt:
            hi = p_all * log_moment_tail(n, self.k1, float(q), hn)
            all_unsigned = all(e > 0 for e, _ in self.factors)
            if all_unsigned:
                h_n = 1.0
                for e, mult in self.factors:
                    h_n *= float(self.f_carries[e]) ** mult
                lo = max(h_n * (1 - 1e-9) - round_err, 0.0) * zeta_tail_interval(n, q)[0]
            else:
                lo = 0.0
            value = self.partial + LD((lo + hi) / 2.0)
            return value, (hi - lo) / 2.0 + round_err
        # alternating outer: paired triangle bound ...
        bound_b = q * p_all * log_moment_tail(n, self.k1, float(q + 1), hn)
        for e, mult in self.factors:
            r = abs(e)
            p_other = p_all
            k_other = self.k1
            if e > 0 and r == 1:
                k_other -= 1
            else:
                p_other = p_all / sups[e]
            bound_b += mult * p_other * log_moment_tail(n, k_other, float(q + r), hn) * (1 + 1e-10)
        value, bound = self.partial, bound_b + round_err
        # ... and the consecutive-partial-sum midpoint when magnitudes decrease
        if self.monotone:
            bound_a = abs(float(self.last_term)) / 2.0 + round_err
            if bound_a < bound:
                value = self.partial - self.last_term / LD(2.0)
                bound = bound_a
        return value, bound


def eval_euler_sum_best(idx: EulerSumIndex, target_tol: float = 1e-8, n_cap: int = N_MAX) -> NumericResult:
    state = _SumState(idx)
    needed = sorted({abs(e) for e in idx.inner} | {state.q})
    best: NumericResult | None = None
    n_lo = 0
    for edge in _block_schedule(n_cap):
        n_arr = np.arange(n_lo + 1, edge + 1, dtype=np.float64)
        alt_sign = np.where(np.arange(n_lo + 1, edge + 1) % 2 == 0, 1.0, -1.0)
        inv = 1.0 / n_arr
        pows = {m: inv**m for m in needed}
        state.update_block(n_lo, n_arr, pows, alt_sign)
        value, bound = state.bound_at(edge)
        res = NumericResult(value, bound, edge)
        if best is None or bound < best.tail_bound:
            best = res
        if best.tail_bound <= target_tol:
            return best
        n_lo = edge
    return best


def eval_euler_sum(idx: EulerSumIndex, target_tol: float = 1e-8, n_cap: int = N_MAX) -> NumericResult:
    """Evaluate the defining series; CapacityError carries the best result."""
    if target_tol < SUM_TOL_FLOOR:
        raise ValueError(f"target tolerance below the floor {SUM_TOL_FLOOR}")
    res = eval_euler_sum_best(idx, target_tol, n_cap=n_cap)
    if res.tail_bound > target_tol:
        raise CapacityError(f"tolerance {target_tol} unreachable for {idx}", res)
    return res
