"""Preimage search and orphan words.

A rule is surjective exactly when every finite word appears somewhere in
the image of every configuration cylinder.  The search below decides, for
a given word, whether any configuration maps onto it: it tries every
candidate word within vertical distance 2 cellwise, together with every
saturated boundary condition.  A word with no preimage proves the rule
is not surjective.
"""

import time

from sandlab import (
    apply,
    gamma_table,
    goe_search,
    has_predecessor_word,
    realize_witness,
)

gamma = gamma_table()

print("== an orphan word for the rotation rule ==")
t0 = time.perf_counter()
wit = has_predecessor_word(gamma, (100, 3, 2, 100))
dt = time.perf_counter() - t0
print(f"word 100,3,2,100: {'no predecessor' if wit is None else wit}")
print(f"(exhausted all 5**4 * 25 candidates in {dt * 1000:.1f} ms)")
print()

print("== most words do have predecessors ==")
wit = has_predecessor_word(gamma, (3, 2))
print("word 3,2 has witness:", wit)
x = realize_witness(wit)
print("realized:", x.describe())
y = apply(gamma, x)
print("image starts with:", [y.at(0), y.at(1)])
print()

print("== searching the shortest orphan over an alphabet ==")
found = goe_search(gamma, 4, {2, 3, 100})
print("alphabet {2,3,100}, lengths up to 4:", found)
print("single letters are never orphans here:", goe_search(gamma, 1, range(5)))
