"""The global update map induced by a rule table.

Every finite cell adds the table increment for its measured gradient
pair; infinite cells stay fixed.  Because the rule has radius 1 and only
reacts to height differences, an affine-periodic tail maps to an
affine-periodic tail with the same period and drift, so one application
only has to evaluate finitely many cells.
"""

from __future__ import annotations

from .config import Configuration, Tail, is_finite_height, make_config
from .rules import RuleTable, measure

__all__ = ["apply", "iterate", "run_until_fixed"]


def _step_cell(t: RuleTable, x: Configuration, i: int):
    h = x.at(i)
    if not is_finite_height(h):
        return h
    return h + t.entry(measure(h, x.at(i - 1)), measure(h, x.at(i + 1)))


def apply(t: RuleTable, x: Configuration) -> Configuration:
    """One synchronous update of every cell.

    Inside a tail the repetition law x(i + p) = x(i) + d covers a cell's
    whole neighborhood one period over, so increments repeat there too
    and the image keeps the law, except possibly at the innermost tail
    cell whose neighborhood touches the center.  Anchoring the image
    words one cell further out therefore describes the image exactly;
    canonicalization then shrinks the enlarged center again.
    """
    p_l, d_l = x.left.period, x.left.drift
    p_r, d_r = x.right.period, x.right.drift
    lo = x.origin - 1 - p_l
    hi = x.center_end + p_r  # inclusive
    image = [_step_cell(t, x, i) for i in range(lo, hi + 1)]

    def img(i: int):
        return image[i - lo]

    left = Tail(tuple(img(i) for i in range(lo, x.origin - 1)), d_l)
    center = tuple(img(i) for i in range(x.origin - 1, x.center_end + 1))
    right = Tail(tuple(img(i) for i in range(x.center_end + 1, hi + 1)), d_r)
    return make_config(left, center, right, x.origin - 1)


def iterate(t: RuleTable, x: Configuration, n: int) -> Configuration:
    """n applications of the map."""
    if n < 0:
        raise ValueError("iteration count must be nonnegative")
    for _ in range(n):
        x = apply(t, x)
    return x


def run_until_fixed(
    t: RuleTable, x: Configuration, max_steps: int
) -> tuple[Configuration, int | None]:
    """Apply until a fixed point appears or ``max_steps`` updates elapse.

    Returns the final configuration and the number of steps taken to
    reach the fixed point, or None if none was found in time.
    """
    for step in range(max_steps + 1):
        y = apply(t, x)
        if y == x:
            return x, step
        x = y
    return x, None
