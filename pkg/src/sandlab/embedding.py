"""Two-dimensional binary pictures of configurations.

A configuration embeds into {0,1}^(Z^2) by filling each column up to its
height: bit (i, j) is 1 exactly when j <= x_i.  Legal pictures never
show a 1 strictly above a 0 in the same column.  A finite window of the
picture pins each column down to one of three readings

    exact h      the column tops out at height h inside the window
    at_least v   all 1s: the height is v or more (possibly a source)
    below v      all 0s: the height is less than v (possibly a sink)

and the update map acts on windows: ``apply_2d`` computes every output
bit that is determined by the input window alone, marking the rest
indeterminate.  Shrinking the window by one column on each side and two
rows top and bottom makes the all-1s and all-0s readings fully
determined again after one step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .config import Configuration, is_finite_height
from .rules import RuleTable, measure

__all__ = [
    "BinaryWindow",
    "ColumnReading",
    "embed",
    "decode",
    "apply_2d",
    "shift_window",
    "render_ascii",
    "render_pgm",
]

INDETERMINATE = -1


@dataclass(frozen=True)
class BinaryWindow:
    """Bits of the picture over [i_lo, i_hi] x [j_lo, j_hi].

    ``bits[a, b]`` is the value at cell i_lo + a, height j_lo + b:
    0, 1, or -1 for indeterminate.
    """

    i_lo: int
    j_lo: int
    bits: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.bits, dtype=np.int8)
        if arr.ndim != 2 or arr.size == 0:
            raise ValueError("window bits must form a nonempty 2d array")
        if not np.all(np.isin(arr, (-1, 0, 1))):
            raise ValueError("window bits must be 0, 1 or -1")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "bits", arr)

    @property
    def ncols(self) -> int:
        return self.bits.shape[0]

    @property
    def nrows(self) -> int:
        return self.bits.shape[1]

    @property
    def i_hi(self) -> int:
        return self.i_lo + self.ncols - 1

    @property
    def j_hi(self) -> int:
        return self.j_lo + self.nrows - 1

    def bit(self, i: int, j: int) -> int:
        if not (self.i_lo <= i <= self.i_hi and self.j_lo <= j <= self.j_hi):
            raise ValueError(f"({i}, {j}) lies outside the window")
        return int(self.bits[i - self.i_lo, j - self.j_lo])

    def __eq__(self, other):
        if not isinstance(other, BinaryWindow):
            return NotImplemented
        return (
            self.i_lo == other.i_lo
            and self.j_lo == other.j_lo
            and self.bits.shape == other.bits.shape
            and bool(np.all(self.bits == other.bits))
        )


class ColumnReading(NamedTuple):
    kind: str  # "exact" | "at_least" | "below"
    value: int


def embed(
    x: Configuration, i_range: tuple[int, int], j_range: tuple[int, int]
) -> BinaryWindow:
    """The window of the picture of ``x`` over the given inclusive ranges."""
    i_lo, i_hi = i_range
    j_lo, j_hi = j_range
    if i_hi < i_lo or j_hi < j_lo:
        raise ValueError("ranges must be nondegenerate (lo <= hi)")
    bits = np.zeros((i_hi - i_lo + 1, j_hi - j_lo + 1), dtype=np.int8)
    for a, i in enumerate(range(i_lo, i_hi + 1)):
        h = x.at(i)
        for b, j in enumerate(range(j_lo, j_hi + 1)):
            bits[a, b] = 1 if j <= h else 0
    return BinaryWindow(i_lo, j_lo, bits)


def decode(w: BinaryWindow) -> list[ColumnReading]:
    """Column readings of a fully determined window.

    Raises if any cell is indeterminate or a column shows a 1 above a 0.
    """
    out = []
    for a in range(w.ncols):
        col = w.bits[a]
        if np.any(col == INDETERMINATE):
            b = int(np.argmax(col == INDETERMINATE))
            raise ValueError(f"cell ({w.i_lo + a}, {w.j_lo + b}) is indeterminate")
        top = -1  # highest row holding a 1
        for b in range(w.nrows - 1, -1, -1):
            if col[b] == 1:
                top = b
                break
        for b in range(top):
            if col[b] == 0:
                raise ValueError(
                    f"column {w.i_lo + a} shows a 1 above a 0 at height {w.j_lo + b}"
                )
        if top == -1:
            out.append(ColumnReading("below", w.j_lo))
        elif top == w.nrows - 1:
            out.append(ColumnReading("at_least", w.j_hi))
        else:
            out.append(ColumnReading("exact", w.j_lo + top))
    return out


def _gradient_classes(h: int, reading: ColumnReading) -> set[int]:
    """All gradient classes a neighbor with this reading can show to height h."""
    kind, v = reading
    if kind == "exact":
        return {measure(h, v)}
    if kind == "at_least":
        if v >= h + 2:
            return {2}
        return {measure(h, g) for g in range(v, h + 3)}
    if v - 1 <= h - 2:
        return {-2}
    return {measure(h, g) for g in range(h - 2, v)}


def apply_2d(t: RuleTable, w: BinaryWindow) -> BinaryWindow:
    """One update step seen through the window.

    The result covers one column less on each side and two rows less top
    and bottom.  A cell is 1 or 0 when every configuration consistent
    with the input window agrees on it, and indeterminate otherwise.
    """
    if w.ncols < 3 or w.nrows < 5:
        raise ValueError("window too small: need at least 3 columns and 5 rows")
    readings = decode(w)
    out = np.full((w.ncols - 2, w.nrows - 4), INDETERMINATE, dtype=np.int8)
    j_lo = w.j_lo + 2
    for a in range(1, w.ncols - 1):
        r = readings[a]
        if r.kind == "at_least":
            lo_bound, hi_bound = r.value - 2, None
        elif r.kind == "below":
            lo_bound, hi_bound = None, r.value + 1
        else:
            h = r.value
            incs = {
                t.entry(gl, gr)
                for gl in _gradient_classes(h, readings[a - 1])
                for gr in _gradient_classes(h, readings[a + 1])
            }
            lo_bound, hi_bound = h + min(incs), h + max(incs)
        for b in range(out.shape[1]):
            j = j_lo + b
            if lo_bound is not None and j <= lo_bound:
                out[a - 1, b] = 1
            elif hi_bound is not None and j > hi_bound:
                out[a - 1, b] = 0
    return BinaryWindow(w.i_lo + 1, j_lo, out)


def shift_window(w: BinaryWindow, di: int, dj: int) -> BinaryWindow:
    """The same bits read in a translated coordinate frame."""
    return BinaryWindow(w.i_lo + di, w.j_lo + dj, w.bits)


def render_ascii(w: BinaryWindow) -> str:
    """Rows top-down; '#' filled, '.' empty, '?' indeterminate."""
    glyphs = {1: "#", 0: ".", INDETERMINATE: "?"}
    lines = []
    for b in range(w.nrows - 1, -1, -1):
        lines.append("".join(glyphs[int(w.bits[a, b])] for a in range(w.ncols)))
    return "\n".join(lines) + "\n"


def render_pgm(w: BinaryWindow) -> str:
    """Portable graymap: filled cells black, empty white, unknown gray."""
    shade = {1: 0, 0: 255, INDETERMINATE: 128}
    lines = ["P2", f"{w.ncols} {w.nrows}", "255"]
    for b in range(w.nrows - 1, -1, -1):
        lines.append(" ".join(str(shade[int(w.bits[a, b])]) for a in range(w.ncols)))
    return "\n".join(lines) + "\n"
