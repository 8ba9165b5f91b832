"""Gradient measurement and rule tables."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sandlab.config import INF, NEG_INF, Tail, make_config, periodic_config
from sandlab.rules import (
    CLASSES,
    GradientPair,
    RuleTable,
    format_table,
    gamma_table,
    gradient_word,
    is_latin_square,
    lookup,
    measure,
    omega_table,
    parse_table,
    random_table,
    resolve_table,
    table_from_linear,
)


class TestMeasure:
    def test_small_differences_exact(self):
        assert measure(5, 4) == -1
        assert measure(5, 5) == 0
        assert measure(5, 6) == 1

    def test_large_differences_saturate(self):
        assert measure(0, 2) == 2
        assert measure(0, 99) == 2
        assert measure(0, -2) == -2
        assert measure(0, -99) == -2

    def test_infinite_neighbors(self):
        assert measure(7, INF) == 2
        assert measure(7, NEG_INF) == -2

    def test_infinite_base_rejected(self):
        with pytest.raises(ValueError):
            measure(INF, 0)

    @settings(max_examples=200, deadline=None)
    @given(base=st.integers(-50, 50), n=st.integers(-50, 50), k=st.integers(-50, 50))
    def test_invariant_under_common_translation(self, base, n, k):
        assert measure(base, n) == measure(base + k, n + k)


class TestGradientWord:
    def test_flat_reads_zeroes(self):
        x = periodic_config((0,))
        assert gradient_word(x, -2, 2) == [GradientPair(0, 0)] * 5

    def test_single_column(self):
        x = make_config(Tail((0,)), (2,), Tail((0,)), origin=0)
        assert gradient_word(x, 0, 0) == [GradientPair(-2, -2)]
        assert gradient_word(x, -1, -1) == [GradientPair(0, 2)]
        assert gradient_word(x, 1, 1) == [GradientPair(2, 0)]

    def test_infinite_cell_named_in_error(self):
        x = make_config(Tail((0,)), (INF,), Tail((0,)), origin=3)
        with pytest.raises(ValueError, match="cell 3"):
            gradient_word(x, 2, 4)

    def test_infinite_neighbor_is_fine(self):
        x = make_config(Tail((0,)), (INF,), Tail((0,)), origin=0)
        assert gradient_word(x, 1, 1) == [GradientPair(2, 0)]


class TestRuleTable:
    def test_entry_indexing(self):
        t = gamma_table()
        assert t.entry(-2, -2) == 1
        assert t.entry(0, 0) == 0
        assert t.entry(2, 2) == -1

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            RuleTable(((0,) * 5,) * 4)

    def test_rejects_out_of_range_entry(self):
        rows = [[0] * 5 for _ in range(5)]
        rows[0][0] = 3
        with pytest.raises(ValueError):
            RuleTable(tuple(tuple(r) for r in rows))

    def test_entry_rejects_bad_class(self):
        with pytest.raises(ValueError):
            gamma_table().entry(3, 0)

    def test_lookup_matches_entry(self):
        t = gamma_table()
        assert lookup(t, GradientPair(1, -2)) == t.entry(1, -2)


class TestGammaTable:
    def test_full_table(self):
        assert gamma_table().entries == (
            (1, 2, -2, -1, 0),
            (2, -2, -1, 0, 1),
            (-2, -1, 0, 1, 2),
            (-1, 0, 1, 2, -2),
            (0, 1, 2, -2, -1),
        )

    def test_agrees_with_linear_construction(self):
        assert gamma_table().entries == table_from_linear(1, 1).entries

    def test_is_latin(self):
        assert is_latin_square(gamma_table())

    def test_corners(self):
        assert gamma_table().corners() == (1, 0, 0, -1)


class TestOmegaTable:
    def test_full_table(self):
        t = omega_table()
        for left in CLASSES:
            for right in CLASSES:
                if left == 2 and right != -2:
                    assert t.entry(left, right) == 1
                elif left != 2 and right == -2:
                    assert t.entry(left, right) == -1
                else:
                    assert t.entry(left, right) == 0

    def test_not_latin(self):
        assert not is_latin_square(omega_table())

    def test_corners(self):
        assert omega_table().corners() == (-1, 0, 0, 1)


class TestLinearFamily:
    @settings(max_examples=100, deadline=None)
    @given(a=st.integers(-2, 2), b=st.integers(-2, 2))
    def test_entries_are_sums_mod_5(self, a, b):
        t = table_from_linear(a, b)
        for left in CLASSES:
            for right in CLASSES:
                assert (t.entry(left, right) - a * left - b * right) % 5 == 0

    def test_latin_iff_both_coefficients_invertible(self):
        for a in CLASSES:
            for b in CLASSES:
                expected = a != 0 and b != 0  # every nonzero residue is a unit mod 5
                assert is_latin_square(table_from_linear(a, b)) == expected


class TestFileFormat:
    def test_round_trip(self):
        rng = random.Random(4)
        for _ in range(25):
            t = random_table(rng)
            assert parse_table(format_table(t)).entries == t.entries

    def test_comments_and_blanks_ignored(self):
        text = "# banner\n\n" + "\n".join("0 0 0 0 0  # flat" for _ in range(5))
        t = parse_table(text)
        assert t.entries == ((0,) * 5,) * 5

    def test_wrong_row_width_reports_line(self):
        text = "0 0 0 0 0\n0 0 0 0\n0 0 0 0 0\n0 0 0 0 0\n0 0 0 0 0"
        with pytest.raises(ValueError, match="line 2"):
            parse_table(text)

    def test_wrong_row_count(self):
        with pytest.raises(ValueError, match="5 table rows"):
            parse_table("0 0 0 0 0")

    def test_resolve_builtins_and_linear(self):
        assert resolve_table("gamma").entries == gamma_table().entries
        assert resolve_table("omega").entries == omega_table().entries
        assert resolve_table("linear:2,1").entries == table_from_linear(2, 1).entries

    def test_resolve_bad_linear(self):
        with pytest.raises(ValueError):
            resolve_table("linear:2")

    def test_resolve_file(self, tmp_path):
        p = tmp_path / "t.rule"
        p.write_text(format_table(gamma_table()))
        assert resolve_table(str(p)).entries == gamma_table().entries
