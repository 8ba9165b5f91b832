"""Vertical inducing configurations and the preservation census.

A configuration is vertical inducing of order n if one application of
the rule raises every finite column by exactly n.  Such configurations
come from cycles in a small gradient graph: walking the cycle writes
down a periodic profile whose every cell sees the same increment.
"""

from fractions import Fraction

from sandlab import (
    census_preservation,
    check_vip,
    classify_preservation,
    corner_signature,
    find_vip_cycle,
    gamma_table,
    omega_table,
    periodic_config,
    realize_cycle,
    table_from_linear,
)

gamma = gamma_table()

print("== an order-1 cycle for the rotation rule ==")
c = find_vip_cycle(gamma)
print("pairs:", tuple(tuple(p) for p in c.pairs), "order:", c.order)
x = realize_cycle(c)
print("realization:", x.describe())
print("rises by 1 per step for 20 steps:", check_vip(gamma, x, 1, 20))
print()

print("== a hand-written rising profile ==")
v = periodic_config((0, 1, 3, 1, 0))
print(v.describe(), "->", check_vip(gamma, v, 1, 20))
print()

print("== every nontrivial linear rule has one ==")
for a, b in ((1, 1), (2, -1), (-2, -2)):
    t = table_from_linear(a, b)
    c = find_vip_cycle(t)
    ok = check_vip(t, realize_cycle(c), c.order, 10)
    print(f"  coefficients ({a},{b}): order {c.order} cycle, verified {ok}")
print()

print("== which rules preserve terrain features ==")
print("rotation rule:", classify_preservation(gamma))
print("grain rule:   ", classify_preservation(omega_table()))
print("corner signature of the rotation rule:", corner_signature(gamma))
count, frac = census_preservation()
print(f"tables preserving peaks and valleys: {count} / 625 = {float(frac):.3f}")
assert frac == Fraction(105, 625)
