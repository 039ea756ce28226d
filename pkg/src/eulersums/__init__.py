"""Euler sums as exact combinations of multiple zeta values.

The library expands classical and alternating Euler sums into Q-linear
combinations of (alternating) multiple zeta values by enumerating weak
orderings of the summation variables, reduces the results with a toolkit of
closed-form identities and user-supplied tables, and verifies everything
against an independent high-precision numerical oracle.

Quick start::

    >>> from eulersums import parse_index, expand_t1, reduce_lincomb
    >>> idx = parse_index("S(1,1,-3)")
    >>> expand_t1(idx).render()
    '-z(-5) - 2*z(-4,1) - 2*z(-3,1,1) - z(-3,2)'
"""

from .algebra import (
    LinComb,
    MzvAtom,
    SymbolicTerm,
    as_fraction,
    li_half,
    lincomb_add,
    lincomb_mul,
    parse_atom,
    z,
)
from .combinatorics import (
    compositions,
    iter_compositions,
    multinomial,
    multiset_permutations,
    permutations,
)
from .expansion import (
    DegreeCapError,
    UnsupportedHypothesisError,
    expand_harmonic_product,
    expand_repeated_t1,
    expand_repeated_t2,
    expand_t1,
    expand_t2,
)
from .indices import (
    ConvergenceError,
    EulerSumIndex,
    IndexParseError,
    index_degree,
    index_weight,
    make_index,
    parse_index,
    render_index,
)
from .numerics import (
    CapacityError,
    NumericResult,
    eval_atom,
    eval_euler_sum,
    eval_lincomb,
    eval_mhs_exact,
    eval_term,
)
from .reduction import (
    IdentityRule,
    IdentityTable,
    ReduceResult,
    alt_depth1,
    build_starter_table,
    depth2_odd,
    load_identity_table,
    log_integral,
    reduce_lincomb,
    reflection_pair_sum,
    reflection_triple_sum,
    save_table,
    symmetric_triple_sum,
    zeta_ones,
    zeta_repeated,
    zeta_repeated_bar,
)

__version__ = "0.1.0"
