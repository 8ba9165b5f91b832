"""Blocking words: finite height patterns that pin down cells forever.

A word over heights 0..4 is blocking for a rule if, whenever it appears
in a configuration, the interior cells of the word evolve the same way
no matter what lies outside it.  The verifier proves this by showing
the interior increments form an invariant closed under one update, and
then double-checks one concrete step for each boundary behavior.
"""

import random

from sandlab import (
    apply,
    find_blocking_word,
    gamma_table,
    random_cylinder,
    table_from_linear,
    verify_blocking,
)

gamma = gamma_table()

print("== certifying a word by exhaustive boundary analysis ==")
word = (0, 3, 2, 3, 0)
res = verify_blocking(gamma, word, 1, 1)
print("word:", word)
print("verified:", res.verified)
print("interior increments per step:", res.increments)
print()

print("== a non-example ==")
res = verify_blocking(gamma, (0, 0, 0), 1, 1)
print("word (0,0,0): verified =", res.verified, "-", res.reason)
print()

print("== searching for the shortest blocking word ==")
for a, b in ((1, 1), (2, -1), (-1, 2)):
    t = table_from_linear(a, b)
    w = find_blocking_word(t, 5, (0, 4), 1, 1)
    print(f"  coefficients ({a},{b}): {w}")
print()

print("== the doubled-coefficient map needs length 6 ==")
t = table_from_linear(-2, -2)
print("  length <= 5:", find_blocking_word(t, 5, (0, 4), 1, 1))
print("  length <= 6:", find_blocking_word(t, 6, (0, 4), 1, 1))
print()

print("== cross-checking the certificate dynamically ==")
rng = random.Random(11)
word = (0, 3, 2, 3, 0)
res = verify_blocking(gamma, word, 1, 1)
agree = True
for _ in range(50):
    x = random_cylinder(word, rng)
    y = apply(gamma, x)
    for j, inc in enumerate(res.increments):
        if y.at(1 + j) != x.at(1 + j) + inc:
            agree = False
print("50 random completions all follow the certified increments:", agree)
assert agree
