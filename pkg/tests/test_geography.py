"""Steep configurations, segment graphs, path matching, attractor runs."""

import json
import random
from collections import deque
from fractions import Fraction

import pytest

from sandlab.automaton import apply
from sandlab.config import INF, Tail, make_config, periodic_config
from sandlab.geography import (
    AttractorSeries,
    CycleSegment,
    SegmentGraph,
    attractor_experiment,
    check_linear_orbit,
    extended_segment_graph,
    format_graph,
    gamma_segment_graph,
    is_steep,
    load_graph,
    matches_segment_paths,
    parse_graph,
    random_steep_config,
    realize_segment_cycle,
    save_graph,
    save_series_csv,
    steep_increment,
)
from sandlab.rules import GradientPair, gamma_table, gradient_word, lookup

GAMMA = gamma_table()
ZEROS = Tail((0,), 0)

FROZEN_EDGES = {
    "A": ("B", "D"),
    "B": ("A", "E", "H", "J"),
    "C": ("D",),
    "D": ("A", "C", "E", "H", "J"),
    "E": ("E", "H", "J"),
    "F": ("B", "D", "F"),
    "G": ("H",),
    "H": ("B", "D", "F", "G", "I"),
    "I": ("H", "J"),
    "J": ("B", "D", "F", "I"),
    "K": ("K",),
    "L": ("L",),
    "M": ("M",),
}


def config_42():
    # a non-steep configuration whose whole orbit is affine in time
    return make_config(Tail((2, 2, 4, 3, 4), 0), (2, 1, 1, 2), Tail((5, 4, 5, 3, 3), 0))


class TestSteepMembership:
    def test_alternating_profile(self):
        assert is_steep(periodic_config((0, 3)))

    def test_shallow_gap_rejected(self):
        assert not is_steep(periodic_config((0, 1, 3, 1, 0)))
        assert not is_steep(periodic_config((1, 2)))

    def test_drifted_staircase(self):
        assert is_steep(periodic_config((0,), 2))
        assert not is_steep(periodic_config((0,), 1))

    def test_infinite_cell_named(self):
        x = make_config(Tail((INF,), 0), (0,), ZEROS)
        with pytest.raises(ValueError, match="cell .* infinite"):
            is_steep(x)


class TestSteepIncrement:
    def test_alternating_profile(self):
        y = steep_increment(periodic_config((0, 3)))
        assert y == periodic_config((-1, 1))

    def test_wider_gaps_same_increment(self):
        assert steep_increment(periodic_config((0, 4))) == periodic_config((-1, 1))

    def test_staircase_is_frozen(self):
        assert steep_increment(periodic_config((0,), 2)) == periodic_config((0,))

    def test_rejects_shallow(self):
        with pytest.raises(ValueError):
            steep_increment(periodic_config((0, 1)))


class TestLinearOrbit:
    def test_alternating_profile(self):
        x = periodic_config((0, 3))
        assert check_linear_orbit(GAMMA, x, steep_increment(x), 50)

    def test_mixed_profile_with_plateaus(self):
        y = make_config(Tail((2,), 0), (1, 1, 1, 1), Tail((2,), 0))
        assert check_linear_orbit(GAMMA, config_42(), y, 30)

    def test_inducing_profile_constant_increment(self):
        x = periodic_config((0, 1, 3, 1, 0))
        assert check_linear_orbit(GAMMA, x, periodic_config((1,)), 20)

    def test_wrong_increment_rejected(self):
        x = periodic_config((0, 3))
        assert not check_linear_orbit(GAMMA, x, periodic_config((0,)), 3)


class TestSegmentCatalog:
    def test_thirteen_segments_cover_all_pairs(self):
        g = gamma_segment_graph()
        assert len(g.segments) == 13
        seen = [p for s in g.segments for p in s.pairs]
        assert len(seen) == 25
        assert set(seen) == {GradientPair(l, r) for l in range(-2, 3) for r in range(-2, 3)}

    def test_orders_constant_under_gamma(self):
        for s in gamma_segment_graph().segments:
            for p in s.pairs:
                assert lookup(GAMMA, p) == s.order, s.label

    def test_inconsistent_segment_rejected(self):
        with pytest.raises(ValueError, match="inconsistent"):
            CycleSegment("X", ((0, 1), (0, 0)), 0)

    def test_class_out_of_range_rejected(self):
        with pytest.raises(ValueError, match="outside"):
            CycleSegment("X", ((0, 3),), 0)

    def test_empty_segment_rejected(self):
        with pytest.raises(ValueError):
            CycleSegment("X", (), 0)


class TestGraphEdges:
    def test_frozen_edge_sets(self):
        assert gamma_segment_graph().edges == FROZEN_EDGES

    def test_staircases_chain_only_to_themselves(self):
        g = gamma_segment_graph()
        for lab in ("K", "L", "M"):
            assert g.edges[lab] == (lab,)
            x = realize_segment_cycle(g, [lab])
            assert apply(GAMMA, x) == x

    def test_every_edge_realization_stays_on_paths(self):
        # close each edge into a shortest cycle, realize it, and check the
        # gradient word survives one step of the rule
        g = gamma_segment_graph()
        for u, succs in g.edges.items():
            for v in succs:
                path = _shortest_path(g, v, u)
                assert path is not None, (u, v)
                cycle = (u,) + path[:-1]
                x = realize_segment_cycle(g, cycle)
                pairs = [p for lab in cycle for p in g.segment(lab).pairs]
                assert gradient_word(x, 0, len(pairs) - 1) == pairs
                radius = len(pairs) + 2
                assert matches_segment_paths(x, radius, g), (u, v)
                assert matches_segment_paths(apply(GAMMA, x), radius, g), (u, v)

    def test_bad_edge_rejected(self):
        segs = (CycleSegment("x", ((0, 0),), 0), CycleSegment("y", ((1, -1),), 0))
        with pytest.raises(ValueError, match="breaks chaining"):
            SegmentGraph(segs, {"x": ("y",)})

    def test_unknown_endpoint_rejected(self):
        segs = (CycleSegment("x", ((0, 0),), 0),)
        with pytest.raises(ValueError, match="edge target"):
            SegmentGraph(segs, {"x": ("z",)})

    def test_duplicate_label_rejected(self):
        segs = (CycleSegment("x", ((0, 0),), 0), CycleSegment("x", ((1, -1),), 0))
        with pytest.raises(ValueError, match="duplicate"):
            SegmentGraph(segs, {})


def _shortest_path(graph, src, dst):
    dq = deque([(src, (src,))])
    seen = {src}
    while dq:
        node, path = dq.popleft()
        if node == dst:
            return path
        for w in graph.successors(node):
            if w not in seen:
                seen.add(w)
                dq.append((w, path + (w,)))
    return None


class TestExtendedGraph:
    def test_shape(self):
        g = extended_segment_graph()
        assert len(g.segments) == 17
        assert g.heuristic
        assert g.periodic_pairs == (("O", "P"), ("Q", "R"))

    def test_averaged_orders(self):
        g = extended_segment_graph()
        assert g.segment("O").order == Fraction(3, 2)
        assert g.segment("P").order == Fraction(3, 2)
        assert g.segment("Q").order == Fraction(-3, 2)
        assert g.segment("R").order == Fraction(-3, 2)

    def test_extension_edges(self):
        g = extended_segment_graph()
        assert g.edges["O"] == ("A", "E", "H", "J", "Q", "R")
        assert g.edges["P"] == ("A", "E", "H", "J", "Q", "R")
        assert g.edges["Q"] == ("B", "D", "F", "I", "O", "P")
        assert g.edges["R"] == ("B", "D", "F", "I", "O", "P")

    def test_base_edges_unchanged(self):
        g = extended_segment_graph()
        for u, succs in FROZEN_EDGES.items():
            kept = tuple(v for v in g.edges[u] if v in FROZEN_EDGES)
            assert kept == succs

    def test_periodic_pair_dynamics(self):
        # a bump realizing O reads P one step later, and vice versa for Q/R
        g = extended_segment_graph()
        x = make_config(ZEROS, (4, 2, 2, 4), ZEROS)
        assert gradient_word(x, 0, 3) == list(g.segment("O").pairs)
        assert gradient_word(apply(GAMMA, x), 0, 3) == list(g.segment("P").pairs)
        x = make_config(ZEROS, (-4, -2, -2, -4), ZEROS)
        assert gradient_word(x, 0, 3) == list(g.segment("Q").pairs)
        assert gradient_word(apply(GAMMA, x), 0, 3) == list(g.segment("R").pairs)


class TestPathMatching:
    def test_unit_sawtooth_rejected(self):
        assert not matches_segment_paths(periodic_config((0, 1)), 4, gamma_segment_graph())

    def test_mixed_profile_accepted(self):
        assert matches_segment_paths(config_42(), 10, gamma_segment_graph())

    def test_staircase_accepted(self):
        assert matches_segment_paths(periodic_config((0,), 2), 5, gamma_segment_graph())

    def test_flat_accepted(self):
        assert matches_segment_paths(periodic_config((0,)), 5, gamma_segment_graph())

    def test_steep_configurations_always_match(self):
        rng = random.Random(67)
        h = gamma_segment_graph()
        hp = extended_segment_graph()
        for _ in range(100):
            x = random_steep_config(rng)
            assert matches_segment_paths(x, 8, h)
            assert matches_segment_paths(x, 8, hp)

    def test_negative_radius_rejected(self):
        with pytest.raises(ValueError):
            matches_segment_paths(periodic_config((0,)), -1, gamma_segment_graph())


class TestGraphFiles:
    def test_round_trip(self, tmp_path):
        for g in (gamma_segment_graph(), extended_segment_graph()):
            path = tmp_path / "g.json"
            save_graph(g, path)
            back = load_graph(path)
            assert back.edges == g.edges
            assert back.periodic_pairs == g.periodic_pairs
            assert back.heuristic == g.heuristic
            assert [(s.label, s.pairs, s.order) for s in back.segments] == [
                (s.label, s.pairs, s.order) for s in g.segments
            ]

    def test_chaining_violation_in_file(self):
        data = {
            "format": "sandlab-segment-graph/1",
            "segments": [
                {"label": "x", "pairs": [[0, 0]], "order": 0},
                {"label": "y", "pairs": [[1, -1]], "order": 0},
            ],
            "edges": [["x", "y"]],
        }
        with pytest.raises(ValueError, match="breaks chaining"):
            parse_graph(json.dumps(data))

    def test_format_field_checked(self):
        with pytest.raises(ValueError, match="'format'"):
            parse_graph(json.dumps({"format": "nope"}))

    def test_order_field_checked(self):
        data = {
            "format": "sandlab-segment-graph/1",
            "segments": [{"label": "x", "pairs": [[0, 0]], "order": "abc"}],
            "edges": [],
        }
        with pytest.raises(ValueError, match="'order'"):
            parse_graph(json.dumps(data))

    def test_fraction_orders_survive(self):
        g = parse_graph(format_graph(extended_segment_graph()))
        assert g.segment("O").order == Fraction(3, 2)


class TestSteepInvariance:
    def test_steepness_preserved(self):
        rng = random.Random(71)
        for _ in range(300):
            x = random_steep_config(rng)
            assert is_steep(apply(GAMMA, x))

    def test_orbit_law(self):
        rng = random.Random(73)
        for _ in range(60):
            x = random_steep_config(rng)
            assert check_linear_orbit(GAMMA, x, steep_increment(x), 20)

    def test_features_preserved_cellwise(self):
        rng = random.Random(79)
        for _ in range(60):
            x = random_steep_config(rng)
            y = apply(GAMMA, x)
            before = gradient_word(x, -5, 5)
            after = gradient_word(y, -5, 5)
            for b, a in zip(before, after):
                assert a == b


class TestAttractor:
    def test_deterministic(self):
        a = attractor_experiment(GAMMA, 5, 8, 3, 99)
        b = attractor_experiment(GAMMA, 5, 8, 3, 99)
        assert a == b

    def test_shape(self):
        s = attractor_experiment(GAMMA, 3, 6, 4, 1)
        assert len(s.proxies) == 3
        assert all(len(row) == 7 for row in s.proxies)
        assert len(s.mean) == 7

    def test_flat_sample_sits_at_floor(self):
        s = attractor_experiment(
            GAMMA, 1, 5, 6, 1, sampler=lambda rng, radius: periodic_config((0,))
        )
        assert s.proxies[0] == (2.0 ** -6,) * 6

    def test_steep_samples_sit_at_floor(self):
        s = attractor_experiment(
            GAMMA, 6, 5, 5, 9, sampler=lambda rng, radius: random_steep_config(rng)
        )
        assert all(v == 2.0 ** -5 for row in s.proxies for v in row)

    def test_parallel_matches_serial(self):
        a = attractor_experiment(GAMMA, 4, 4, 3, 7, threads=1)
        b = attractor_experiment(GAMMA, 4, 4, 3, 7, threads=2)
        assert a == b

    def test_csv_output(self, tmp_path):
        s = attractor_experiment(GAMMA, 2, 3, 3, 5)
        path = tmp_path / "series.csv"
        save_series_csv(s, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "# sandlab-attractor-series/1"
        assert lines[1].split(",") == ["step", "mean", "sample_0", "sample_1"]
        assert len(lines) == 2 + 4
