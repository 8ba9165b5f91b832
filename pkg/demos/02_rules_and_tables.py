"""Rule tables.

A rule is a 5x5 table of height increments in -2..2, indexed by the
clamped gradients toward the two neighbors.  Gradients saturate: any
neighbor two or more above reads as 2, two or more below as -2, and
infinite neighbors read as saturated too.
"""

import random

from sandlab import (
    CLASSES,
    apply,
    format_table,
    gamma_table,
    is_latin_square,
    measure,
    omega_table,
    parse_table,
    periodic_config,
    table_from_linear,
)

print("== measuring neighbors ==")
for neighbor in (3, 10, 4, 5, 6, float("inf"), float("-inf")):
    print(f"  height 5 sees a neighbor at {neighbor}: class {measure(5, neighbor)}")
print()

print("== the rotation rule ==")
print(format_table(gamma_table()))
print("rows are the left gradient, columns the right, both -2..2")
print("latin square:", is_latin_square(gamma_table()))
print()

print("== the grain rule ==")
print(format_table(omega_table()))
y = apply(omega_table(), periodic_config((4, 2, 1)))
print("profile 4,2,1 after one step:", y.describe())
print("the tall column shed one grain to its lower right neighbor")
print()

print("== the linear family ==")
# entry at (L, R) is a*L + b*R reduced into -2..2 modulo 5
t = table_from_linear(2, 1)
print(format_table(t))
print("latin square whenever both coefficients are nonzero:")
rng = random.Random(0)
for _ in range(3):
    a = rng.choice([c for c in CLASSES if c != 0])
    b = rng.choice([c for c in CLASSES if c != 0])
    print(f"  coefficients ({a},{b}):", is_latin_square(table_from_linear(a, b)))
print()

print("== tables round-trip through text ==")
text = format_table(gamma_table())
print("parse(format(t)) == t:", parse_table(text).entries == gamma_table().entries)
