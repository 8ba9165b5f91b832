"""Decision procedures over rule tables.

Four families of questions about a radius-1 rule:

* Surjectivity probes: does a finite word of heights have a preimage,
  and is there an orphan word over a given alphabet?
* Vertical inducing points: configurations the map merely raises by a
  constant, found by cycle search over gradient classes.
* Shape preservation: which tables keep peaks peaks and valleys valleys
  on steep terrain, counted exactly over the corner entries.
* Blocking words: a sound but incomplete verifier for words that cut
  all influence across themselves, plus an exhaustive word search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .automaton import apply
from .config import Configuration, Tail, make_config, periodic_config, vertical
from .rules import CLASSES, GradientPair, RuleTable, measure, realized_gap

__all__ = [
    "PredecessorWitness",
    "has_predecessor_word",
    "realize_witness",
    "goe_search",
    "VipCycle",
    "find_vip_cycle",
    "realize_cycle",
    "check_vip",
    "CornerSignature",
    "corner_signature",
    "PreservationFlags",
    "classify_preservation",
    "census_preservation",
    "antidiagonal_profile",
    "antidiagonal_fraction",
    "BlockingResult",
    "verify_blocking",
    "find_blocking_word",
    "random_cylinder",
]


# -- predecessors and orphan words ---------------------------------------


@dataclass(frozen=True)
class PredecessorWitness:
    """A preimage of a finite word: interior heights plus the gradient
    classes shown by the two cells just outside."""

    word: tuple[int, ...]
    left_class: int
    right_class: int


def has_predecessor_word(t: RuleTable, w) -> PredecessorWitness | None:
    """Search for a word mapping onto ``w`` under one update.

    The image height at each of the |w| cells depends on the preimage
    heights at those cells plus the two outside neighbors, and on the
    outside neighbors only through their clamped gradient classes.  The
    search space is therefore y_i in [w_i - 2, w_i + 2] times 25 class
    pairs; it is walked depth-first with early pruning, which keeps the
    search exhaustive.  Returns the first witness found or None.
    """
    w = tuple(w)
    if not w:
        raise ValueError("word must be nonempty")
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in w):
        raise ValueError("word entries must be finite integers")
    n = len(w)

    def extend(ys: list[int], left_class: int) -> PredecessorWitness | None:
        i = len(ys)
        if i == n:
            # only the final cell's right class is still free
            prev_l = left_class if n == 1 else measure(ys[-1], ys[-2])
            need = w[-1] - ys[-1]
            for gr in CLASSES:
                if t.entry(prev_l, gr) == need:
                    return PredecessorWitness(tuple(ys), left_class, gr)
            return None
        for y in range(w[i] - 2, w[i] + 3):
            if i >= 1:
                # choosing y fixes cell i-1's right gradient; check it
                li = left_class if i == 1 else measure(ys[i - 1], ys[i - 2])
                if t.entry(li, measure(ys[i - 1], y)) != w[i - 1] - ys[i - 1]:
                    continue
            ys.append(y)
            found = extend(ys, left_class)
            if found is not None:
                return found
            ys.pop()
        return None

    for gl in CLASSES:
        found = extend([], gl)
        if found is not None:
            return found
    return None


def realize_witness(wit: PredecessorWitness, origin: int = 0) -> Configuration:
    """A configuration whose update writes the witnessed image word.

    The outside classes are realized by constant tails at the minimal
    height offsets, so applying the table reproduces the target word on
    the witness cells.
    """
    left = wit.word[0] + realized_gap(wit.left_class)
    right = wit.word[-1] + realized_gap(wit.right_class)
    return make_config(Tail((left,)), wit.word, Tail((right,)), origin)


def goe_search(t: RuleTable, max_len: int, height_set) -> tuple[int, ...] | None:
    """First word (shortest, then lexicographic) with no predecessor.

    Scans all words over ``height_set`` up to ``max_len``; None means
    every word in range has a preimage.
    """
    if max_len < 1:
        raise ValueError("max_len must be a positive integer")
    alphabet = sorted(set(height_set))
    if not alphabet:
        raise ValueError("height_set must be nonempty")
    for n in range(1, max_len + 1):
        for w in product(alphabet, repeat=n):
            if has_predecessor_word(t, w) is None:
                return w
    return None


# -- vertical inducing points --------------------------------------------


@dataclass(frozen=True)
class VipCycle:
    """A cyclic gradient-pair word on which a table is constant.

    ``order`` is that constant: a configuration realizing the cycle is
    raised by exactly ``order`` per step.
    """

    pairs: tuple[GradientPair, ...]
    order: int

    def __post_init__(self):
        pairs = tuple(GradientPair(*p) for p in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise ValueError("cycle must be nonempty")
        for p in pairs:
            if p.L not in CLASSES or p.R not in CLASSES:
                raise ValueError(f"pair {p} is not a gradient pair over -2..2")
        k = len(pairs)
        for i in range(k):
            if pairs[(i + 1) % k].L != -pairs[i].R:
                raise ValueError(
                    f"inconsistent cycle: pair {i} ends R={pairs[i].R} but "
                    f"pair {(i + 1) % k} starts L={pairs[(i + 1) % k].L}"
                )


def find_vip_cycle(t: RuleTable, include_zero: bool = False) -> VipCycle | None:
    """Search for a cycle of gradient classes with one constant increment.

    For each candidate increment m (smallest magnitude first, positive
    before negative) build the graph on left-classes with an edge
    g -> -R whenever entry(g, R) = m, and return the shortest cycle
    found.  Any cycle realizes a configuration that the map translates
    vertically by m; m = 0 (fixed points) joins the hunt only on request.
    """
    orders = [1, -1, 2, -2]
    if include_zero:
        orders.insert(0, 0)
    for m in orders:
        succ = {u: [v for v in CLASSES if t.entry(u, -v) == m] for u in CLASSES}
        for length in range(1, 6):
            for start in CLASSES:
                path = _cycle_path(succ, start, length)
                if path is not None:
                    pairs = tuple(
                        GradientPair(path[i], -path[(i + 1) % length])
                        for i in range(length)
                    )
                    return VipCycle(pairs, m)
    return None


def _cycle_path(succ, start: int, length: int) -> list[int] | None:
    """Lexicographically first simple cycle of exactly this length."""

    def walk(path: list[int]) -> list[int] | None:
        if len(path) == length:
            return path if start in succ[path[-1]] else None
        for v in succ[path[-1]]:
            if v == start or v in path:
                continue
            path.append(v)
            out = walk(path)
            if out is not None:
                return out
            path.pop()
        return None

    return walk([start])


def realize_cycle(c: VipCycle, origin: int = 0) -> Configuration:
    """The minimal periodic configuration reading the cycle's gradients.

    Clamped classes are realized as height differences of exactly 2; the
    per-period height change becomes the tail drift.
    """
    gaps = [realized_gap(p.R) for p in c.pairs]
    heights = [0]
    for g in gaps[:-1]:
        heights.append(heights[-1] + g)
    drift = heights[-1] + gaps[-1]
    return periodic_config(tuple(heights), drift, origin)


def check_vip(t: RuleTable, x: Configuration, n: int, horizon: int) -> bool:
    """Does the map translate ``x`` vertically by n, and keep doing so?

    Checks apply(t, x) = raise(x, n) and then every iterate up to the
    horizon against the accumulated translation (the latter follows from
    the former; verifying both is deliberate).
    """
    if apply(t, x) != vertical(x, n):
        return False
    y = x
    for m in range(1, horizon + 1):
        y = apply(t, y)
        if y != vertical(x, m * n):
            return False
    return True


# -- preservation of peaks and valleys ------------------------------------


@dataclass(frozen=True)
class CornerSignature:
    """The four corner entries of a table: the increments of peaks
    (alpha), ascents (beta), descents (delta) and valleys (lambda_)."""

    alpha: int
    beta: int
    delta: int
    lambda_: int


def corner_signature(t: RuleTable) -> CornerSignature:
    return CornerSignature(*t.corners())


@dataclass(frozen=True)
class PreservationFlags:
    peak: bool
    valley: bool
    upslope: bool
    downslope: bool


def _peak_valley(alpha: int, beta: int, delta: int, lam: int) -> tuple[bool, bool]:
    peak = alpha >= max(beta, delta, lam)
    valley = lam <= min(alpha, beta, delta)
    return peak, valley


def classify_preservation(t: RuleTable) -> PreservationFlags:
    """Which steep-terrain features survive one update, by corner entries.

    A peak outruns its flanks exactly when its increment dominates the
    other three corners; dually for valleys.  When both hold the slopes
    are pinned between preserved extremes, so they are preserved too.
    """
    c = corner_signature(t)
    peak, valley = _peak_valley(c.alpha, c.beta, c.delta, c.lambda_)
    slopes = peak and valley
    return PreservationFlags(peak, valley, slopes, slopes)


def census_preservation() -> tuple[int, Fraction]:
    """Count corner quadruples preserving both peaks and valleys.

    All 625 corner assignments are enumerated; the rest of a table does
    not matter for these two properties.
    """
    count = 0
    for corners in product(CLASSES, repeat=4):
        peak, valley = _peak_valley(*corners)
        if peak and valley:
            count += 1
    return count, Fraction(count, 625)


# -- the anti-diagonal criterion ------------------------------------------


def antidiagonal_profile(t: RuleTable) -> tuple[int, ...]:
    """The increments assigned to the five uniform slopes (a, -a)."""
    return tuple(t.entry(a, -a) for a in CLASSES)


def antidiagonal_fraction() -> Fraction:
    """Fraction of all tables with some nonzero anti-diagonal entry.

    Such an entry gives a one-pair cycle, hence a vertically induced
    configuration.  Computed symbolically: tables are free on 25 cells,
    and zeroing the 5 anti-diagonal cells leaves 5^20 of 5^25.
    """
    return 1 - Fraction(5**20, 5**25)


# -- blocking words --------------------------------------------------------


@dataclass(frozen=True)
class BlockingResult:
    """Outcome of the blocking-word verifier.

    ``verified`` True means proven: every configuration containing the
    word keeps the interior window's evolution fixed forever.  False
    means unknown, with ``reason`` naming the first failed condition;
    it is never a disproof.
    """

    verified: bool
    word: tuple[int, ...]
    k: int
    s: int
    increments: tuple[int, ...]
    reason: str = ""


def _edge_class_sets(t: RuleTable, gap_class: int, inc_inside: int, left_side: bool):
    """Uncertainty set for the outward gradient of an edge interior cell.

    A clamped outward gap survives forever exactly when the outside
    neighbor can never gain on the inside cell: the neighbor sees the
    inside cell clamped too, so its increment ranges over one row or
    column of the table.  An unclamped or unsustained edge yields the
    full class set.
    """
    if gap_class == -2:
        # outside sits far below and sees the inside at +2
        outside = (
            {t.entry(c, 2) for c in CLASSES}
            if left_side
            else {t.entry(2, c) for c in CLASSES}
        )
        if max(outside) <= inc_inside:
            return {-2}
    elif gap_class == 2:
        outside = (
            {t.entry(c, -2) for c in CLASSES}
            if left_side
            else {t.entry(-2, c) for c in CLASSES}
        )
        if min(outside) >= inc_inside:
            return {2}
    return set(CLASSES)


def verify_blocking(t: RuleTable, w, k: int, s: int) -> BlockingResult:
    """Semi-decide whether ``w`` blocks outside influence.

    The window of interest is positions [k, |w|-1-s].  The proof
    obligation is an invariant closed under one update: interior
    increments stay fixed, interior gaps keep their gradient classes,
    and clamped edge gaps never close.  Three checks establish it:

    1. adjacent interior cells: an exact gap forces equal increments, a
       clamped gap forces the increments to widen it (or tie);
    2. edge cells: the outward gradient is either clamped and
       self-sustaining, or written off as fully unknown;
    3. every interior cell's increment must be the same for all gradient
       pairs in its uncertainty set (a one-element hull).

    A vacuously empty window verifies trivially.  The result is finally
    double-checked by one concrete update for each of the 25 boundary
    behaviors.  False results mean "not proven", never "disproven".
    """
    w = tuple(w)
    n = len(w)
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in w):
        raise ValueError("word entries must be finite integers")
    if k < 1 or s < 1:
        raise ValueError(f"offsets must satisfy k >= 1 and s >= 1, got k={k}, s={s}")
    if k + s > n:
        raise ValueError(f"offsets k={k}, s={s} exceed the word length {n}")

    first, last = k, n - 1 - s
    interior = range(first, last + 1)
    if first > last:
        return BlockingResult(True, w, k, s, (), "empty interior window")

    pairs = {
        p: GradientPair(measure(w[p], w[p - 1]), measure(w[p], w[p + 1]))
        for p in interior
    }
    incs = {p: t.entry(*pairs[p]) for p in interior}

    def unknown(reason: str) -> BlockingResult:
        return BlockingResult(False, w, k, s, tuple(incs[p] for p in interior), reason)

    # 1. interior gaps must keep their classes as the cells move
    for p in range(first, last):
        g = pairs[p].R
        if abs(g) <= 1 and incs[p + 1] != incs[p]:
            return unknown(f"cells {p} and {p + 1} drift apart across an exact gap")
        if g == 2 and incs[p + 1] < incs[p]:
            return unknown(f"rising gap between cells {p} and {p + 1} closes over time")
        if g == -2 and incs[p + 1] > incs[p]:
            return unknown(f"falling gap between cells {p} and {p + 1} closes over time")

    # 2 + 3. uncertainty hulls, clamped-and-sustaining edges included
    left_set = _edge_class_sets(t, pairs[first].L, incs[first], left_side=True)
    right_set = _edge_class_sets(t, pairs[last].R, incs[last], left_side=False)
    for p in interior:
        ls = {pairs[p].L} if p > first else left_set
        rs = {pairs[p].R} if p < last else right_set
        hull = {t.entry(l, r) for l in ls for r in rs}
        if hull != {incs[p]}:
            return unknown(f"increment of cell {p} is not pinned down by the word")

    # cross-check the proven invariant dynamically: a few concrete
    # updates for each of the 25 boundary behaviors (three steps let
    # outside influence reach the window edge)
    for cl, cr in product(CLASSES, repeat=2):
        x = make_config(
            Tail((w[0] + realized_gap(cl),)), w, Tail((w[-1] + realized_gap(cr),)), 0
        )
        for step in range(1, 4):
            x = apply(t, x)
            for p in interior:
                if x.at(p) != w[p] + step * incs[p]:
                    return unknown(
                        f"step-{step} check failed at cell {p} "
                        f"for boundary classes ({cl}, {cr})"
                    )

    return BlockingResult(True, w, k, s, tuple(incs[p] for p in interior))


def find_blocking_word(
    t: RuleTable, max_len: int, height_range: tuple[int, int], k: int, s: int
) -> tuple[int, ...] | None:
    """Exhaustive scan for a verified blocking word.

    Words run over the inclusive height range, shortest first then
    lexicographic, skipping lengths whose interior window would be
    empty.  Vertical translation never changes the verdict, so the
    first letter is pinned to the bottom of the range.
    """
    lo, hi = height_range
    if hi < lo:
        raise ValueError("height_range must satisfy lo <= hi")
    for n in range(k + s + 1, max_len + 1):
        for rest in product(range(lo, hi + 1), repeat=n - 1):
            w = (lo,) + rest
            if verify_blocking(t, w, k, s).verified:
                return w
    return None


# -- cylinder sampling (dynamical confirmation of blocking) ---------------


def random_cylinder(w, rng, pad: int = 3, span: int = 6) -> Configuration:
    """A random configuration showing the word ``w`` at cells 0..|w|-1.

    Everything outside the word is drawn freely: up to ``pad`` extra
    center cells on each side and random periodic tails.
    """
    w = tuple(w)

    def tail() -> Tail:
        p = rng.randint(1, 3)
        drift = rng.randint(-2, 2)
        return Tail(tuple(rng.randint(-span, span) for _ in range(p)), drift)

    lpad = [rng.randint(-span, span) for _ in range(rng.randint(0, pad))]
    rpad = [rng.randint(-span, span) for _ in range(rng.randint(0, pad))]
    return make_config(tail(), (*lpad, *w, *rpad), tail(), origin=-len(lpad))
