"""Reducing expansions toward a basis with the identity toolkit.

The rewrite engine applies, in order: table substitutions, the depth-1
alternating closed form, repeated-slot recurrences, the zeta(k+1,{1}_l)
family, odd-weight depth-2 closed forms, and symmetric-sum reflections.
Whatever no identity covers stays as a basis element.
"""

from eulersums import (
    build_starter_table,
    expand_t1,
    parse_index,
    reduce_lincomb,
    zeta_ones,
)

print("Odd weight is fully reducible: S(8,9) (weight 17) becomes a zeta polynomial.")
result = reduce_lincomb(expand_t1(parse_index("S(8,9)")))
print("  S(8,9) =", result.value.render())
print("  rewrite trace:", ", ".join(result.trace))

print("\nEven weight leaves irreducible depth-2 atoms as basis elements:")
result = reduce_lincomb(expand_t1(parse_index("S(2,6)")))
print("  S(2,6) =", result.value.render())

print("\nzeta(k+1,{1}_l) values reduce to zeta polynomials, e.g. zeta(6,1,1):")
print("  ", zeta_ones(5, 2).render())

print("\nAlternating cubes reduce completely; z(-1) stands for -ln 2:")
for text in ["S(-1,-1,-1)", "S(-3,-3,-3)"]:
    result = reduce_lincomb(expand_t1(parse_index(text)))
    print(f"  {text} = {result.value.render()}")

print("\nA starter identity table (everything the library can derive itself,")
print("precomputed to weight 12) ships with the package; user tables in the")
print("same JSON-lines format extend reductions to externally compiled data.")
table = build_starter_table(8)
result = reduce_lincomb(expand_t1(parse_index("S(2,5)")), tables=[table])
print(f"  with table: S(2,5) = {result.value.render()}")
print(f"  trace: {result.trace}")
