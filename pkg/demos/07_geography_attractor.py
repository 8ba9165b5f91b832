"""Steep configurations, segment graphs, and the attractor experiment.

Configurations whose gaps all have magnitude at least 2 behave linearly
under the rotation rule: the orbit is x, x + y, x + 2y, ... for a fixed
increment profile y.  Their gradient words decompose into a small
catalog of constant-increment segments; chaining conditions between
segments give a finite graph, and long random orbits drift toward
configurations whose central windows read as paths in that graph.
"""

import random
from pathlib import Path

from sandlab import (
    attractor_experiment,
    check_linear_orbit,
    extended_segment_graph,
    gamma_segment_graph,
    gamma_table,
    is_steep,
    matches_segment_paths,
    periodic_config,
    random_steep_config,
    realize_segment_cycle,
    save_graph,
    save_series_csv,
    steep_increment,
)

gamma = gamma_table()

print("== steepness and the linear orbit law ==")
x = periodic_config((0, 2, 7, 4), -3)
print("x =", x.describe())
print("steep:", is_steep(x))
y = steep_increment(x)
print("increment profile y =", y.describe())
print("orbit follows x + n*y for 30 steps:", check_linear_orbit(gamma, x, y, 30))
flat = periodic_config((0, 1))
print("a gentle profile is not steep:", not is_steep(flat))
print()

print("== the segment catalog and its chaining graph ==")
h = gamma_segment_graph()
for s in h.segments:
    pairs = ",".join(f"({p.L},{p.R})" for p in s.pairs)
    print(f"  {s.label}: order {s.order:+d}  pairs {pairs}")
print("edges:")
for s in h.segments:
    print(f"  {s.label} -> {', '.join(h.successors(s.label)) or '(none)'}")
print()

print("== walking a cycle in the graph ==")
walk = realize_segment_cycle(h, ("A", "B"))
print("A,B cycle realization:", walk.describe())
print("matches segment paths at radius 8:", matches_segment_paths(walk, 8, h))
print()

print("== random steep configurations always match ==")
rng = random.Random(7)
ok = all(
    matches_segment_paths(random_steep_config(rng), 6, h) for _ in range(40)
)
print("40 random steep samples, radius 6:", ok)
print()

print("== the extended graph with alternating border words ==")
hx = extended_segment_graph()
print("segments:", " ".join(s.label for s in hx.segments))
print("marked heuristic:", hx.heuristic)
print("period-2 partners:", hx.periodic_pairs)
out = Path(__file__).resolve().parent / "data" / "segments_extended.json"
out.parent.mkdir(parents=True, exist_ok=True)
save_graph(hx, str(out))
print("saved editable copy to", out.name)
print()

print("== do random orbits approach the segment language? ==")
series = attractor_experiment(gamma, samples=30, steps=60, radius=4, seed=20260816)
print(f"{'step':>4}  mean window proxy")
for n in (0, 5, 10, 20, 40, 60):
    print(f"{n:>4}  {series.mean[n]:.4f}")
csv_path = out.parent / "attractor_demo.csv"
save_series_csv(series, str(csv_path))
print("full series written to", csv_path.name)
print("floor for radius 4 is 2**-4 =", 2.0 ** -4)
