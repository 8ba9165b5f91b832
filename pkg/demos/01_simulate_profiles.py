"""Configurations and orbits.

A configuration assigns every integer cell a height: an integer, or plus
or minus infinity for columns that act as sources and sinks.  Only the
center is stored explicitly; both ends continue as affine-periodic tails,
so bi-infinite profiles like staircases fit in finite memory.
"""

from sandlab import (
    INF,
    NEG_INF,
    Tail,
    apply,
    distance,
    gamma_table,
    iterate,
    make_config,
    periodic_config,
    run_until_fixed,
)

gamma = gamma_table()

print("== a periodic profile under the rotation rule ==")
x = periodic_config((0, 3))
print("start:   ", x.describe())
for n in range(1, 4):
    print(f"step {n}:  ", iterate(gamma, x, n).describe())
print("the valleys rise and the peaks sink by one each step,")
print("so the profile oscillates with period two\n")

print("== the rising profile ==")
v = periodic_config((0, 1, 3, 1, 0))
y = apply(gamma, v)
print("start:   ", v.describe())
print("step 1:  ", y.describe())
print("every height went up by exactly one:", all(y.at(i) == v.at(i) + 1 for i in range(-10, 11)))
print()

print("== sources and sinks stay put ==")
w = make_config(Tail((NEG_INF,), 0), (5,), Tail((INF,), 0))
fixed, steps = run_until_fixed(gamma, w, 10)
print("column between a sink and a source:", w.describe())
print(f"fixed after {steps} steps:", fixed.describe())
print()

print("== a staircase is frozen ==")
s = periodic_config((0,), drift=2)
print("staircase:", s.describe())
print("fixed point:", apply(gamma, s) == s)
print()

print("== orbits separate slowly in the product metric ==")
a = periodic_config((0, 3))
b = make_config(Tail((0, 3), 0), (0, 3, 0, 5), Tail((0, 3), 0), origin=-2)
d0 = distance(a, b, max_radius=16)
d1 = distance(apply(gamma, a), apply(gamma, b), max_radius=16)
print(f"distance before: {d0.value}, after one step: {d1.value}")
print("the disagreement rode upward out of the clamped window, so the")
print("orbits look closer; one application can at most double a distance")
