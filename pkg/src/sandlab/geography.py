"""Steep configurations, segment graphs, and attractor experiments.

A configuration is steep when every adjacent height gap has magnitude at
least 2.  On steep configurations the gamma rule acts by a fixed recipe
(peaks rise, valleys sink, slopes hold still), so whole orbits are affine
in time.  Segment graphs describe a wider class of gradient words with
the same flavor: a word that follows an infinite path through the graph
is built from constant-increment runs that chain consistently, and the
path structure is what the attractor experiment scans for.
"""

from __future__ import annotations

import csv
import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .automaton import apply
from .config import (
    Configuration,
    Tail,
    add_configs,
    is_finite_height,
    make_config,
    periodic_config,
    scale_config,
)
from .rules import CLASSES, GradientPair, RuleTable, gradient_word, realized_gap

GRAPH_FORMAT = "sandlab-segment-graph/1"
SERIES_FORMAT = "sandlab-attractor-series/1"

# raise peaks, lower valleys, leave slopes alone
_FEATURES = RuleTable(
    tuple(
        tuple(1 if (l, r) == (-2, -2) else -1 if (l, r) == (2, 2) else 0 for r in CLASSES)
        for l in CLASSES
    ),
    name="features",
)


def is_steep(x: Configuration) -> bool:
    """Whether every adjacent gap of ``x`` has magnitude at least 2.

    Tail gaps repeat with the tail period, so the center plus one period
    on each side (and the joins) covers every distinct gap.  Raises
    ValueError if that window contains an infinite height.
    """
    lo = x.origin - len(x.left.word) - 1
    hi = x.center_end + len(x.right.word) + 1
    heights = x.window(lo, hi)
    for i, h in zip(range(lo, hi + 1), heights):
        if not is_finite_height(h):
            raise ValueError(f"cell {i} has infinite height")
    return all(abs(b - a) >= 2 for a, b in zip(heights, heights[1:]))


def steep_increment(x: Configuration) -> Configuration:
    """Per-step height change of a steep configuration under gamma.

    Every cell of a steep configuration is a peak, a valley, or a slope,
    and stays one forever, so the orbit advances by this same increment
    at every step.  Raises ValueError if ``x`` is not steep.
    """
    if not is_steep(x):
        raise ValueError("configuration has a gap of magnitude less than 2")
    return add_configs(apply(_FEATURES, x), scale_config(x, -1))


def check_linear_orbit(
    t: RuleTable, x: Configuration, y: Configuration, horizon: int
) -> bool:
    """Whether the orbit of ``x`` under ``t`` advances by ``y`` each step.

    Checks that n applications of the rule land exactly on x + n*y for
    every n from 1 to ``horizon``.
    """
    if horizon < 0:
        raise ValueError("horizon must be nonnegative")
    cur = x
    for n in range(1, horizon + 1):
        cur = apply(t, cur)
        if cur != add_configs(x, scale_config(y, n)):
            return False
    return True


@dataclass(frozen=True)
class CycleSegment:
    """A run of gradient pairs that chains consistently left to right.

    Consecutive pairs must satisfy L_next = -R_prev: the gap a cell sees
    on its right is the gap its right neighbor sees on its left with the
    sign flipped.  ``order`` records the segment's per-step increment
    under the gamma rule; a Fraction marks an averaged value used by the
    heuristic extension segments.
    """

    label: str
    pairs: tuple[GradientPair, ...]
    order: int | Fraction

    def __post_init__(self):
        if not self.label:
            raise ValueError("segment label must be nonempty")
        if not self.pairs:
            raise ValueError(f"segment {self.label} has no pairs")
        coerced = tuple(GradientPair(*p) for p in self.pairs)
        object.__setattr__(self, "pairs", coerced)
        for p in coerced:
            if p.L not in CLASSES or p.R not in CLASSES:
                raise ValueError(
                    f"segment {self.label} has a gradient class outside -2..2: {tuple(p)}"
                )
        for a, b in zip(coerced, coerced[1:]):
            if b.L != -a.R:
                raise ValueError(
                    f"segment {self.label} is inconsistent: pair {tuple(b)} "
                    f"follows {tuple(a)} but must start with L = {-a.R}"
                )


@dataclass(frozen=True)
class SegmentGraph:
    """Cycle segments plus the allowed successions between them.

    ``edges`` maps each segment label to the labels that may follow it.
    Every edge obeys the chaining rule: the successor's first L equals
    the negation of the predecessor's final R.  ``periodic_pairs`` names
    segments that trade places under one gamma step.  ``heuristic``
    marks graphs whose extension edges rest on averaged orders.
    """

    segments: tuple[CycleSegment, ...]
    edges: dict[str, tuple[str, ...]]
    periodic_pairs: tuple[tuple[str, str], ...] = ()
    heuristic: bool = False

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        by_label: dict[str, CycleSegment] = {}
        for seg in self.segments:
            if seg.label in by_label:
                raise ValueError(f"duplicate segment label {seg.label!r}")
            by_label[seg.label] = seg
        norm: dict[str, tuple[str, ...]] = {}
        for u, succs in dict(self.edges).items():
            if u not in by_label:
                raise ValueError(f"edge source {u!r} is not a segment")
            pred = by_label[u]
            for v in succs:
                if v not in by_label:
                    raise ValueError(f"edge target {v!r} is not a segment")
                succ = by_label[v]
                if succ.pairs[0].L != -pred.pairs[-1].R:
                    raise ValueError(
                        f"edge {u} -> {v} breaks chaining: {v} must start "
                        f"with L = {-pred.pairs[-1].R}"
                    )
            norm[u] = tuple(succs)
        for u in by_label:
            norm.setdefault(u, ())
        object.__setattr__(self, "edges", norm)
        pp = tuple((str(a), str(b)) for a, b in self.periodic_pairs)
        for a, b in pp:
            if a not in by_label or b not in by_label:
                raise ValueError(f"periodic pair ({a}, {b}) names a missing segment")
        object.__setattr__(self, "periodic_pairs", pp)

    def segment(self, label: str) -> CycleSegment:
        for seg in self.segments:
            if seg.label == label:
                return seg
        raise KeyError(label)

    def successors(self, label: str) -> tuple[str, ...]:
        return self.edges.get(label, ())


def _edges_by_conditions(segments: tuple[CycleSegment, ...]) -> dict[str, tuple[str, ...]]:
    # chaining always; a saturated final R leaves the next run free to
    # keep climbing (+2: successor order at least ours) or keep dropping
    # (-2: at most ours); a finite final R pins the gap and adds nothing
    out = {}
    for u in segments:
        last = u.pairs[-1].R
        succs = []
        for v in segments:
            if v.pairs[0].L != -last:
                continue
            if last == 2 and v.order < u.order:
                continue
            if last == -2 and v.order > u.order:
                continue
            succs.append(v.label)
        out[u.label] = tuple(succs)
    return out


_CATALOG = (
    ("A", ((2, -1), (1, 0), (0, 1), (-1, 2)), 1),
    ("B", ((-2, -2),), 1),
    ("C", ((2, 0), (0, 2)), 2),
    ("D", ((-2, -1), (1, 1), (-1, -2)), 2),
    ("E", ((2, -2),), 0),
    ("F", ((-2, 2),), 0),
    ("G", ((-2, 0), (0, -2)), -2),
    ("H", ((2, 1), (-1, -1), (1, 2)), -2),
    ("I", ((-2, 1), (-1, 0), (0, -1), (1, -2)), -1),
    ("J", ((2, 2),), -1),
    ("K", ((-1, 1),), 0),
    ("L", ((1, -1),), 0),
    ("M", ((0, 0),), 0),
)

_EXTENSION = (
    ("O", ((-2, -2), (2, 0), (0, 2), (-2, -2)), Fraction(3, 2)),
    ("P", ((-2, -1), (1, 0), (0, 1), (-1, -2)), Fraction(3, 2)),
    ("Q", ((2, 2), (-2, 0), (0, -2), (2, 2)), Fraction(-3, 2)),
    ("R", ((2, 1), (-1, 0), (0, -1), (1, 2)), Fraction(-3, 2)),
)


def gamma_segment_graph() -> SegmentGraph:
    """The thirteen constant-increment segments of the gamma rule.

    The segments cover all 25 gradient pairs once each, and the gamma
    increment is the same on every pair of a segment (its order).  Edges
    follow from the chaining and order conditions; the three staircase
    segments K, L and M chain only to themselves.
    """
    segs = tuple(CycleSegment(lab, pairs, order) for lab, pairs, order in _CATALOG)
    return SegmentGraph(segs, _edges_by_conditions(segs))


def extended_segment_graph(source: str | None = None) -> SegmentGraph:
    """The gamma segment graph plus four alternating border words.

    O and P trade places under one gamma step, as do Q and R, so orbits
    can weave them between plain segments.  Their per-pair increments
    are not constant; each word gets its average increment and the edges
    come from the same conditions, so the result is marked heuristic.
    Pass a file path to load a hand-edited graph instead.
    """
    if source is not None:
        return load_graph(source)
    segs = tuple(
        CycleSegment(lab, pairs, order) for lab, pairs, order in _CATALOG + _EXTENSION
    )
    return SegmentGraph(
        segs,
        _edges_by_conditions(segs),
        periodic_pairs=(("O", "P"), ("Q", "R")),
        heuristic=True,
    )


def _order_to_json(order):
    if isinstance(order, Fraction):
        return int(order) if order.denominator == 1 else str(order)
    return order


def _order_from_json(raw, label):
    if isinstance(raw, bool):
        raise ValueError(f"segment {label}: field 'order' must be an integer or fraction")
    if isinstance(raw, int):
        return raw
    if isinstance(raw, str):
        try:
            value = Fraction(raw)
        except (ValueError, ZeroDivisionError):
            raise ValueError(
                f"segment {label}: field 'order' is not a fraction: {raw!r}"
            ) from None
        return int(value) if value.denominator == 1 else value
    raise ValueError(f"segment {label}: field 'order' must be an integer or fraction")


def format_graph(g: SegmentGraph) -> str:
    """Serialize a segment graph as versioned JSON."""
    data = {
        "format": GRAPH_FORMAT,
        "segments": [
            {
                "label": s.label,
                "pairs": [[p.L, p.R] for p in s.pairs],
                "order": _order_to_json(s.order),
            }
            for s in g.segments
        ],
        "edges": [[u, v] for u in sorted(g.edges) for v in g.edges[u]],
        "periodic_pairs": [[a, b] for a, b in g.periodic_pairs],
        "heuristic": g.heuristic,
    }
    return json.dumps(data, indent=2) + "\n"


def parse_graph(text: str) -> SegmentGraph:
    """Parse a segment graph from versioned JSON.

    Raises ValueError naming the offending field, including edges that
    break the chaining rule.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"invalid JSON: {e}") from None
    if not isinstance(data, dict):
        raise ValueError("top level must be an object")
    if data.get("format") != GRAPH_FORMAT:
        raise ValueError(f"field 'format' must be {GRAPH_FORMAT!r}")
    raw_segs = data.get("segments")
    if not isinstance(raw_segs, list) or not raw_segs:
        raise ValueError("field 'segments' must be a nonempty list")
    segs = []
    for k, item in enumerate(raw_segs):
        if not isinstance(item, dict):
            raise ValueError(f"segment {k} must be an object")
        label = item.get("label")
        if not isinstance(label, str) or not label:
            raise ValueError(f"segment {k}: field 'label' must be a nonempty string")
        pairs = item.get("pairs")
        if not isinstance(pairs, list) or not all(
            isinstance(p, list) and len(p) == 2 and all(isinstance(v, int) for v in p)
            for p in pairs
        ):
            raise ValueError(
                f"segment {label}: field 'pairs' must be a list of [L, R] integer pairs"
            )
        order = _order_from_json(item.get("order"), label)
        segs.append(CycleSegment(label, tuple(tuple(p) for p in pairs), order))
    raw_edges = data.get("edges")
    if not isinstance(raw_edges, list):
        raise ValueError("field 'edges' must be a list of [from, to] label pairs")
    edges: dict[str, list[str]] = {}
    for k, item in enumerate(raw_edges):
        if not (
            isinstance(item, list)
            and len(item) == 2
            and all(isinstance(v, str) for v in item)
        ):
            raise ValueError(f"edge {k} must be a [from, to] pair of labels")
        edges.setdefault(item[0], []).append(item[1])
    raw_pp = data.get("periodic_pairs", [])
    if not isinstance(raw_pp, list) or not all(
        isinstance(p, list) and len(p) == 2 and all(isinstance(v, str) for v in p)
        for p in raw_pp
    ):
        raise ValueError("field 'periodic_pairs' must be a list of label pairs")
    heuristic = data.get("heuristic", False)
    if not isinstance(heuristic, bool):
        raise ValueError("field 'heuristic' must be a boolean")
    return SegmentGraph(
        tuple(segs),
        {u: tuple(vs) for u, vs in edges.items()},
        tuple((a, b) for a, b in raw_pp),
        heuristic,
    )


def load_graph(path: str) -> SegmentGraph:
    with open(path, "r", encoding="utf-8") as f:
        return parse_graph(f.read())


def save_graph(g: SegmentGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_graph(g))


def _reachable(start, succs):
    seen = set(start)
    frontier = list(start)
    while frontier:
        u = frontier.pop()
        for v in succs.get(u, ()):
            if v not in seen:
                seen.add(v)
                frontier.append(v)
    return seen


def matches_segment_paths(x: Configuration, radius: int, graph: SegmentGraph) -> bool:
    """Whether the gradient word of ``x`` on [-radius, radius] follows the graph.

    True iff the word is a factor of a bi-infinite concatenation of
    segments along a path in ``graph``.  Matching runs an automaton with
    states (segment, position); a state may start the word only if its
    segment is reachable from a cycle and may end it only if its segment
    can reach one, so the witnessing path extends to infinity both ways.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    word = gradient_word(x, -radius, radius)
    succs = graph.edges
    on_cycle = {s.label for s in graph.segments if s.label in _reachable(succs.get(s.label, ()), succs)}
    can_back = _reachable(on_cycle, succs)
    can_fwd = {s.label for s in graph.segments if _reachable((s.label,), succs) & on_cycle}
    by_label = {s.label: s.pairs for s in graph.segments}
    states = {
        (lab, i)
        for lab in can_back
        for i in range(len(by_label[lab]))
    }
    for letter in word:
        nxt = set()
        for lab, i in states:
            pairs = by_label[lab]
            if pairs[i] != letter:
                continue
            if i + 1 < len(pairs):
                nxt.add((lab, i + 1))
            else:
                for v in succs.get(lab, ()):
                    nxt.add((v, 0))
        states = nxt
        if not states:
            return False
    return any(lab in can_fwd for lab, _ in states)


def realize_segment_cycle(
    graph: SegmentGraph, labels: tuple[str, ...] | list[str], origin: int = 0
) -> Configuration:
    """Periodic configuration whose gradient word walks a cyclic label path.

    Consecutive labels, including the wrap from last to first, must be
    edges of ``graph``.  Saturated gradients are realized with gaps of
    magnitude exactly 2; the drift is the total height change over one
    trip around the cycle.
    """
    if not labels:
        raise ValueError("label path must be nonempty")
    pairs = []
    for k, lab in enumerate(labels):
        succ = labels[(k + 1) % len(labels)]
        if succ not in graph.successors(lab):
            raise ValueError(f"{lab} -> {succ} is not an edge of the graph")
        pairs.extend(graph.segment(lab).pairs)
    h = 0
    heights = []
    for p in pairs:
        heights.append(h)
        h += realized_gap(p.R)
    return periodic_config(tuple(heights), h, origin)


def random_steep_config(rng: random.Random, max_period: int = 4, max_gap: int = 4) -> Configuration:
    """Random periodic steep configuration with gap magnitudes in 2..max_gap."""
    if max_period < 1 or max_gap < 2:
        raise ValueError("need max_period >= 1 and max_gap >= 2")
    p = rng.randint(1, max_period)
    gaps = [rng.choice((1, -1)) * rng.randint(2, max_gap) for _ in range(p)]
    base = rng.randint(-3, 3)
    heights = [base]
    for g in gaps[:-1]:
        heights.append(heights[-1] + g)
    return periodic_config(tuple(heights), sum(gaps))


@dataclass(frozen=True)
class AttractorSeries:
    """Per-sample and mean window-proxy distances over time.

    ``proxies[k][n]`` is 2**-kappa for sample k after n steps, where
    kappa is the largest scan radius up to ``radius`` whose central
    window still follows the graph (1.0 when even radius 0 fails).
    """

    radius: int
    proxies: tuple[tuple[float, ...], ...]
    mean: tuple[float, ...]


def _window_proxy(x: Configuration, radius: int, graph: SegmentGraph) -> float:
    # passing windows are downward closed, so scan up and stop at the
    # first failure
    kappa = -1
    for r in range(radius + 1):
        if not matches_segment_paths(x, r, graph):
            break
        kappa = r
    return 2.0 ** -kappa if kappa >= 0 else 1.0


def _default_sampler(rng: random.Random, radius: int) -> Configuration:
    # uniform heights on a window comfortably wider than the scan radius
    width = 2 * radius + 5
    center = tuple(rng.randint(-4, 4) for _ in range(width))
    zeros = Tail((0,), 0)
    return make_config(zeros, center, zeros, origin=-(radius + 2))


def _sample_series(args):
    t, graph, sampler, seed, idx, steps, radius = args
    rng = random.Random(f"{seed}/{idx}")
    x = sampler(rng, radius)
    out = []
    for n in range(steps + 1):
        out.append(_window_proxy(x, radius, graph))
        if n < steps:
            x = apply(t, x)
    return out


def _worker_count(threads: int | None, samples: int) -> int:
    if threads is None:
        env = os.environ.get("SANDLAB_THREADS", "").strip()
        threads = int(env) if env else 1
    if threads < 1:
        raise ValueError("thread count must be at least 1")
    return max(1, min(threads, samples))


def attractor_experiment(
    t: RuleTable,
    samples: int,
    steps: int,
    radius: int,
    seed: int,
    graph: SegmentGraph | None = None,
    sampler: Callable[[random.Random, int], Configuration] | None = None,
    threads: int | None = None,
) -> AttractorSeries:
    """Track how closely random orbits hug the segment-path language.

    Draws ``samples`` configurations (one rng per sample, derived from
    ``seed``), runs each for ``steps`` applications of ``t``, and records
    the window proxy at every step.  The proxy floor is 2**-radius, hit
    when the full scanned window follows the graph.  Deterministic given
    the seed; samples run in parallel when ``threads`` (or the
    SANDLAB_THREADS environment variable) allows.
    """
    if samples < 0 or steps < 0 or radius < 0:
        raise ValueError("samples, steps and radius must be nonnegative")
    if graph is None:
        graph = extended_segment_graph()
    if sampler is None:
        sampler = _default_sampler
    jobs = [(t, graph, sampler, seed, k, steps, radius) for k in range(samples)]
    workers = _worker_count(threads, samples)
    if workers <= 1:
        rows = [_sample_series(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sample_series, jobs))
    proxies = tuple(tuple(row) for row in rows)
    mean = tuple(sum(col) / samples for col in zip(*proxies)) if samples else ()
    return AttractorSeries(radius, proxies, mean)


def save_series_csv(series: AttractorSeries, path: str) -> None:
    """Write a series as CSV: step, mean, then one column per sample."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(f"# {SERIES_FORMAT}\n")
        w = csv.writer(f)
        w.writerow(["step", "mean"] + [f"sample_{k}" for k in range(len(series.proxies))])
        for n, m in enumerate(series.mean):
            w.writerow([n, m] + [row[n] for row in series.proxies])
