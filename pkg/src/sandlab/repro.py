"""Scripted end-to-end checks with expected values, used by the CLI and tests.

Each check returns a CheckResult carrying a one-line expected/computed
pair and its runtime, so the full battery prints as a table.  All
randomness is seeded; rerunning produces identical outcomes.
"""

from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .analysis import (
    antidiagonal_fraction,
    antidiagonal_profile,
    census_preservation,
    check_vip,
    find_blocking_word,
    find_vip_cycle,
    has_predecessor_word,
    random_cylinder,
    realize_cycle,
    verify_blocking,
)
from .automaton import apply
from .config import (
    Tail,
    is_finite_height,
    make_config,
    periodic_config,
    random_configuration,
    shift,
    vertical,
)
from .embedding import INDETERMINATE, apply_2d, embed
from .geography import (
    attractor_experiment,
    check_linear_orbit,
    gamma_segment_graph,
    is_steep,
    random_steep_config,
    realize_segment_cycle,
    save_series_csv,
    steep_increment,
)
from .rules import CLASSES, gamma_table, lookup, random_table, table_from_linear

BLOCKING_MAPS = ((1, 1), (2, 2), (-1, -1), (-2, -2), (-1, 2), (1, -2), (2, -1), (-2, 1))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    expected: str
    computed: str
    seconds: float

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return f"{status}  {self.name}: expected {self.expected}; got {self.computed} ({self.seconds:.2f} s)"


def check_orphan_word() -> CheckResult:
    """The word 100,3,2,100 has no one-step preimage under gamma."""
    t0 = time.perf_counter()
    wit = has_predecessor_word(gamma_table(), (100, 3, 2, 100))
    dt = time.perf_counter() - t0
    passed = wit is None and dt < 1.0
    return CheckResult(
        "orphan-word",
        passed,
        "no predecessor over all 5^4 * 25 candidates in under 1 s",
        f"{'no predecessor' if wit is None else wit} in {dt:.3f} s",
        dt,
    )


def check_preservation_census() -> CheckResult:
    """Exactly 105 of the 625 corner signatures keep peaks and valleys."""
    t0 = time.perf_counter()
    count, frac = census_preservation()
    dt = time.perf_counter() - t0
    passed = count == 105 and frac == Fraction(105, 625) and dt < 1.0
    return CheckResult(
        "preservation-census",
        passed,
        "105 / 625 = 0.168 in under 1 s",
        f"{count} / 625 = {float(frac):.3f} in {dt:.3f} s",
        dt,
    )


def check_antidiagonal() -> CheckResult:
    """Fraction of tables with a nonzero antidiagonal entry, and that every
    sampled such table admits an inducing cycle."""
    t0 = time.perf_counter()
    frac = antidiagonal_fraction()
    rng = random.Random(20260816)
    found = 0
    failures = 0
    while found < 1000:
        t = random_table(rng)
        if all(v == 0 for v in antidiagonal_profile(t)):
            continue
        found += 1
        if find_vip_cycle(t) is None:
            failures += 1
    dt = time.perf_counter() - t0
    passed = frac == Fraction(3124, 3125) and failures == 0
    return CheckResult(
        "antidiagonal-fraction",
        passed,
        "3124/3125 (0.99968); 1000 sampled tables all admit cycles",
        f"{frac.numerator}/{frac.denominator} ({float(frac):.5f}); {failures} of 1000 lacked a cycle",
        dt,
    )


def check_inducing_cycle() -> CheckResult:
    """gamma admits an order-1 inducing cycle whose realization checks out."""
    t0 = time.perf_counter()
    c = find_vip_cycle(gamma_table())
    ok = c is not None and c.order == 1
    if ok:
        ok = check_vip(gamma_table(), realize_cycle(c), 1, 20)
    ok = ok and check_vip(gamma_table(), periodic_config((0, 1, 3, 1, 0)), 1, 20)
    dt = time.perf_counter() - t0
    return CheckResult(
        "inducing-cycle-gamma",
        ok,
        "order-1 cycle, realization and the 0,1,3,1,0 profile both advance by 1 per step for 20 steps",
        f"order {'none' if c is None else c.order}, checks {'pass' if ok else 'fail'}",
        dt,
    )


def check_linear_family() -> CheckResult:
    """Every nontrivial linear table admits an inducing cycle."""
    t0 = time.perf_counter()
    bad = []
    for a in CLASSES:
        for b in CLASSES:
            if (a, b) == (0, 0):
                continue
            c = find_vip_cycle(table_from_linear(a, b))
            if c is None or not check_vip(
                table_from_linear(a, b), realize_cycle(c), c.order, 10
            ):
                bad.append((a, b))
    dt = time.perf_counter() - t0
    return CheckResult(
        "linear-family-cycles",
        not bad,
        "verified cycles for all 24 nontrivial coefficient pairs",
        "all verified" if not bad else f"failed for {bad}",
        dt,
    )


def check_blocking_gamma() -> CheckResult:
    """The word 0,3,2,3,0 pins its interior; random surroundings agree for 30 steps."""
    t0 = time.perf_counter()
    t = gamma_table()
    w = (0, 3, 2, 3, 0)
    res = verify_blocking(t, w, 1, 1)
    ok = res.verified
    rng = random.Random(404)
    disagreements = 0
    if ok:
        for _ in range(100):
            x = random_cylinder(w, rng)
            y = random_cylinder(w, rng)
            for _ in range(30):
                x, y = apply(t, x), apply(t, y)
                if any(x.at(i) != y.at(i) for i in range(1, 4)):
                    disagreements += 1
                    break
    dt = time.perf_counter() - t0
    passed = ok and disagreements == 0
    return CheckResult(
        "blocking-word-gamma",
        passed,
        "word certified; 100 random surrounding pairs agree on the interior for 30 steps",
        f"certified={ok}, disagreeing pairs={disagreements}",
        dt,
    )


def check_blocking_eight_maps() -> CheckResult:
    """A certified blocking word of length at most 5 over heights 0..4 for
    each of the eight linear maps known to admit them."""
    t0 = time.perf_counter()
    missing = []
    found = {}
    for a, b in BLOCKING_MAPS:
        w = find_blocking_word(table_from_linear(a, b), 5, (0, 4), 1, 1)
        if w is None:
            missing.append((a, b))
        else:
            found[(a, b)] = w
    dt = time.perf_counter() - t0
    if missing:
        computed = f"{len(found)} of 8 maps; none within length 5 for {missing}"
    else:
        computed = "words found for all 8 maps"
    return CheckResult(
        "blocking-eight-maps",
        not missing,
        "a certified word of length <= 5 over heights 0..4 for all eight maps",
        computed,
        dt,
    )


def check_steep_orbit_law() -> CheckResult:
    """Steep orbits advance by their fixed increment, 50 steps, 200 samples."""
    t0 = time.perf_counter()
    t = gamma_table()
    g = periodic_config((0, 3))
    ok = check_linear_orbit(t, g, steep_increment(g), 50)
    rng = random.Random(808)
    failures = 0
    for _ in range(200):
        x = random_steep_config(rng)
        if not check_linear_orbit(t, x, steep_increment(x), 50):
            failures += 1
    dt = time.perf_counter() - t0
    passed = ok and failures == 0
    return CheckResult(
        "steep-orbit-law",
        passed,
        "alternating profile plus 200 random steep samples all affine for 50 steps",
        f"alternating={'pass' if ok else 'fail'}, failures={failures}",
        dt,
    )


def check_plateau_orbit_law() -> CheckResult:
    """A non-steep profile with plateaus still advances affinely for 30 steps."""
    t0 = time.perf_counter()
    x = make_config(Tail((2, 2, 4, 3, 4), 0), (2, 1, 1, 2), Tail((5, 4, 5, 3, 3), 0))
    y = make_config(Tail((2,), 0), (1, 1, 1, 1), Tail((2,), 0))
    ok = check_linear_orbit(gamma_table(), x, y, 30)
    dt = time.perf_counter() - t0
    return CheckResult(
        "plateau-orbit-law",
        ok,
        "orbit advances by the mixed increment for 30 steps, exactly",
        "holds" if ok else "diverged",
        dt,
    )


def check_embedding_conjugacy() -> CheckResult:
    """Updating the binary picture matches embedding the updated configuration
    on every determined cell, and never stacks a 1 over a 0."""
    t0 = time.perf_counter()
    rng = random.Random(909)
    mismatches = 0
    forbidden = 0
    for _ in range(1000):
        t = random_table(rng)
        x = random_configuration(rng, allow_inf=True)
        i_lo = rng.randint(-6, -2)
        i_hi = rng.randint(2, 6)
        peak = max(
            (v for v in x.window(i_lo - 1, i_hi + 1) if is_finite_height(v)), default=0
        )
        dip = min(
            (v for v in x.window(i_lo - 1, i_hi + 1) if is_finite_height(v)), default=0
        )
        j_lo = dip - rng.randint(3, 5)
        j_hi = peak + rng.randint(3, 5)
        w = embed(x, (i_lo, i_hi), (j_lo, j_hi))
        out = apply_2d(t, w)
        truth = embed(apply(t, x), (i_lo + 1, i_hi - 1), (j_lo + 2, j_hi - 2))
        for i in range(out.i_lo, out.i_hi + 1):
            for j in range(out.j_lo, out.j_hi + 1):
                b = out.bit(i, j)
                if b != INDETERMINATE and b != truth.bit(i, j):
                    mismatches += 1
                if (
                    j < out.j_hi
                    and out.bit(i, j) == 0
                    and out.bit(i, j + 1) == 1
                ):
                    forbidden += 1
    dt = time.perf_counter() - t0
    passed = mismatches == 0 and forbidden == 0 and dt < 10.0
    return CheckResult(
        "embedding-conjugacy",
        passed,
        "1000 random triples: determined cells exact, no 1-over-0, under 10 s",
        f"mismatches={mismatches}, forbidden={forbidden}, {dt:.2f} s",
        dt,
    )


def check_automaton_laws() -> CheckResult:
    """Shift and vertical commutation, infinity conservation, increments
    bounded by 2; 1000 randomized trials each."""
    t0 = time.perf_counter()
    rng = random.Random(111)
    fails = {"shift": 0, "vertical": 0, "infinity": 0, "bound": 0}
    for _ in range(1000):
        t = random_table(rng)
        x = random_configuration(rng, allow_inf=True)
        k = rng.randint(-3, 3)
        n = rng.randint(-3, 3)
        y = apply(t, x)
        if apply(t, shift(x, k)) != shift(y, k):
            fails["shift"] += 1
        if apply(t, vertical(x, n)) != vertical(y, n):
            fails["vertical"] += 1
        for i in range(-12, 13):
            a, b = x.at(i), y.at(i)
            if is_finite_height(a) != is_finite_height(b):
                fails["infinity"] += 1
                break
            if is_finite_height(a) and abs(b - a) > 2:
                fails["bound"] += 1
                break
    dt = time.perf_counter() - t0
    passed = not any(fails.values())
    return CheckResult(
        "automaton-laws",
        passed,
        "zero failures across 1000 trials of each law",
        f"failures {fails}",
        dt,
    )


def check_segment_catalog() -> CheckResult:
    """The thirteen segments cover all pairs with constant increments, and
    the three staircase segments realize fixed points."""
    t0 = time.perf_counter()
    g = gamma_segment_graph()
    t = gamma_table()
    ok = len(g.segments) == 13
    pairs = [p for s in g.segments for p in s.pairs]
    ok = ok and len(pairs) == 25 and len(set(pairs)) == 25
    for s in g.segments:
        for p in s.pairs:
            ok = ok and lookup(t, p) == s.order
    for lab in ("K", "L", "M"):
        x = realize_segment_cycle(g, [lab])
        ok = ok and apply(t, x) == x
    dt = time.perf_counter() - t0
    return CheckResult(
        "segment-catalog",
        ok,
        "13 segments, 25 pairs covered, constant orders, staircases fixed",
        "all hold" if ok else "violated",
        dt,
    )


def _steep_sampler(rng: random.Random, radius: int):
    return random_steep_config(rng)


def check_attractor(out_dir: str | None = None, threads: int | None = None) -> CheckResult:
    """Seeded attractor run; samples that start on segment paths never leave
    the proxy floor.  The mean series is written out for inspection, not
    asserted against a target."""
    t0 = time.perf_counter()
    t = gamma_table()
    radius = 6
    floor = 2.0 ** -radius
    series = attractor_experiment(t, 100, 200, radius, 20260816, threads=threads)
    steep = attractor_experiment(
        t, 25, 200, radius, 707, sampler=_steep_sampler, threads=threads
    )
    off_floor = sum(1 for row in steep.proxies for v in row if v != floor)
    wrote = ""
    if out_dir is not None:
        path = os.path.join(out_dir, "attractor_mean.csv")
        save_series_csv(series, path)
        wrote = f"; series written to {path}"
    dt = time.perf_counter() - t0
    passed = off_floor == 0
    return CheckResult(
        "attractor-run",
        passed,
        "25 path-following samples pinned at the proxy floor for 200 steps; 100-sample mean series emitted",
        f"off-floor readings={off_floor}, mean {series.mean[0]:.4f} -> {series.mean[-1]:.4f}{wrote}",
        dt,
    )


ALL_CHECKS = (
    check_orphan_word,
    check_preservation_census,
    check_antidiagonal,
    check_inducing_cycle,
    check_linear_family,
    check_blocking_gamma,
    check_blocking_eight_maps,
    check_steep_orbit_law,
    check_plateau_orbit_law,
    check_embedding_conjugacy,
    check_automaton_laws,
    check_segment_catalog,
    check_attractor,
)


def run_all(out_dir: str | None = None, threads: int | None = None) -> list[CheckResult]:
    """Run every check in order; deterministic and idempotent."""
    results = []
    for fn in ALL_CHECKS:
        if fn is check_attractor:
            results.append(fn(out_dir=out_dir, threads=threads))
        else:
            results.append(fn())
    return results
