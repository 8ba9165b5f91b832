"""Bi-infinite sandpile configurations with affine-periodic tails.

A configuration assigns to every integer cell a column height, which is
either an integer or one of the two sentinels ``INF`` / ``NEG_INF`` (a
source or a sink).  Only finitely many cells are stored explicitly: a
finite ``center`` flanked by two ``Tail`` descriptions.  A tail repeats a
finite word outward, adding a fixed integer ``drift`` per period, so both
plain periodic backgrounds (drift 0) and staircase backgrounds (nonzero
drift) are representable.  The class is closed under everything this
package does to configurations: local rules of radius 1, shifts, and
vertical translations all map affine-periodic tails to affine-periodic
tails with the same period and drift.

Conventions
-----------
* ``center[0]`` sits at cell ``origin``; the center covers
  ``[origin, origin + len(center) - 1]``.
* The right tail word occupies ``[end, end + p - 1]`` and repeats with
  ``x[i + p] = x[i] + drift`` going right.
* The left tail word occupies ``[origin - p, origin - 1]`` (read left to
  right) and repeats with ``x[i - p] = x[i] - drift`` going left.

Configurations are immutable and canonicalized on construction: tail
words are reduced to their shortest affine period and the center is
shrunk greedily into the tails.  Equality is extensional: two
configurations compare equal exactly when they assign the same height to
every cell, regardless of internal representation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

__all__ = [
    "INF",
    "NEG_INF",
    "Height",
    "is_finite_height",
    "is_height",
    "Tail",
    "Configuration",
    "make_config",
    "periodic_config",
    "zero_config",
    "shift",
    "vertical",
    "add_configs",
    "scale_config",
    "Distance",
    "distance",
    "parse_config",
    "format_config",
    "load_config",
    "save_config",
    "random_configuration",
]

INF = math.inf
NEG_INF = -math.inf

# A height is a plain int or one of the two infinite sentinels.
Height = int | float

CONFIG_FORMAT = "sandlab-config/1"


def is_finite_height(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def is_height(v) -> bool:
    if is_finite_height(v):
        return True
    return isinstance(v, float) and math.isinf(v)


def _check_heights(values: Iterable[Height], what: str) -> tuple[Height, ...]:
    out = tuple(values)
    for v in out:
        if not is_height(v):
            raise ValueError(f"{what} entry {v!r} is not an integer or +/-inf")
    return out


@dataclass(frozen=True)
class Tail:
    """One half-infinite background: a repeating word plus a drift per period.

    drift != 0 demands an all-finite word, since adding an integer to a
    sentinel is meaningless.
    """

    word: tuple[Height, ...]
    drift: int = 0

    def __post_init__(self):
        object.__setattr__(self, "word", _check_heights(self.word, "tail word"))
        if not self.word:
            raise ValueError("tail word must be nonempty")
        if not isinstance(self.drift, int) or isinstance(self.drift, bool):
            raise ValueError(f"tail drift {self.drift!r} is not an integer")
        if self.drift != 0 and not all(is_finite_height(v) for v in self.word):
            raise ValueError("nonzero drift requires every tail entry to be finite")

    @property
    def period(self) -> int:
        return len(self.word)


def _hadd(v: Height, d: int) -> Height:
    # sentinel + integer stays the sentinel; works because d == 0 whenever
    # v is infinite (enforced by Tail) or the caller multiplies by 0.
    if is_finite_height(v):
        return v + d
    return v


def _ray_reduce(vals: list[Height], p: int) -> tuple[int, int]:
    """Shortest affine period of an outward ray given two periods of values.

    ``vals`` holds ray(0..2p-1) where ray(j+p) = ray(j) + D already holds.
    Returns (q, e) with ray(j+q) = ray(j) + e for all j, q minimal.
    """
    for q in range(1, p):
        a, b = vals[0], vals[q]
        if is_finite_height(a) and is_finite_height(b):
            e = b - a
        elif a == b:  # same infinite sentinel
            e = 0
        else:
            continue
        ok = True
        for j in range(p):
            u, w = vals[j], vals[j + q]
            if is_finite_height(u):
                if w != u + e:
                    ok = False
                    break
            elif w != u:
                ok = False
                break
        if ok:
            return q, e
    # full period; recover D from the stored values
    a, b = vals[0], vals[p]
    D = b - a if is_finite_height(a) else 0
    return p, D


class Configuration:
    """An immutable bi-infinite configuration in canonical form."""

    __slots__ = ("left", "center", "right", "origin")

    def __init__(self, left: Tail, center: Sequence[Height], right: Tail, origin: int = 0):
        if not isinstance(left, Tail) or not isinstance(right, Tail):
            raise TypeError("left and right must be Tail instances")
        if not isinstance(origin, int) or isinstance(origin, bool):
            raise ValueError(f"origin {origin!r} is not an integer")
        ctr = list(_check_heights(center, "center"))

        lw, ld = self._primitive_left(left)
        rw, rd = self._primitive_right(right)

        # absorb center cells that already continue a tail; left first,
        # then right (a fixed order keeps the result deterministic)
        while ctr and ctr[0] == _hadd(lw[0], ld):
            v = ctr.pop(0)
            lw = lw[1:] + [v]
            origin += 1
        while ctr and ctr[-1] == _hadd(rw[-1], -rd):
            v = ctr.pop()
            rw = [v] + rw[:-1]

        object.__setattr__(self, "left", Tail(tuple(lw), ld))
        object.__setattr__(self, "center", tuple(ctr))
        object.__setattr__(self, "right", Tail(tuple(rw), rd))
        object.__setattr__(self, "origin", origin)

    @staticmethod
    def _primitive_right(t: Tail) -> tuple[list[Height], int]:
        p = t.period
        vals = [_hadd(t.word[j % p], (j // p) * t.drift) for j in range(2 * p)]
        q, e = _ray_reduce(vals, p)
        return vals[:q], e

    @staticmethod
    def _primitive_left(t: Tail) -> tuple[list[Height], int]:
        p = t.period
        # outward means leftward here: ray(j) is the cell j steps left of
        # the anchor, so the word is consumed right to left
        vals = [_hadd(t.word[p - 1 - (j % p)], -(j // p) * t.drift) for j in range(2 * p)]
        q, e = _ray_reduce(vals, p)
        word = [vals[q - 1 - m] for m in range(q)]
        return word, -e

    def __setattr__(self, *a):  # pragma: no cover - defensive
        raise AttributeError("Configuration is immutable")

    # -- cell access ---------------------------------------------------

    def at(self, i: int) -> Height:
        """Height of cell i."""
        lo = self.origin
        hi = lo + len(self.center)
        if lo <= i < hi:
            return self.center[i - lo]
        if i >= hi:
            j = i - hi
            w, d = self.right.word, self.right.drift
            return _hadd(w[j % len(w)], (j // len(w)) * d)
        j = lo - 1 - i
        w, d = self.left.word, self.left.drift
        return _hadd(w[len(w) - 1 - (j % len(w))], -(j // len(w)) * d)

    def window(self, lo: int, hi: int) -> list[Height]:
        """Heights of cells lo..hi inclusive."""
        return [self.at(i) for i in range(lo, hi + 1)]

    @property
    def center_end(self) -> int:
        """Index one past the last center cell."""
        return self.origin + len(self.center)

    # -- equality is extensional ----------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        if (
            self.left == other.left
            and self.center == other.center
            and self.right == other.right
            and self.origin == other.origin
        ):
            return True
        return _same_function(self, other)

    def __hash__(self):
        # extensional equality admits no cheap structural hash; drifts and
        # periods are the invariants shared by all representations
        return hash((self.left.drift, self.right.drift))

    def __repr__(self):
        return (
            f"Configuration(left={self.left!r}, center={self.center!r}, "
            f"right={self.right!r}, origin={self.origin})"
        )

    def describe(self) -> str:
        """Human-oriented one-line rendering."""

        def fmt(v):
            if v == INF:
                return "inf"
            if v == NEG_INF:
                return "-inf"
            return str(v)

        lw = ",".join(fmt(v) for v in self.left.word)
        rw = ",".join(fmt(v) for v in self.right.word)
        ctr = ",".join(fmt(v) for v in self.center) or "·"
        ldrift = f"{self.left.drift:+d}/period" if self.left.drift else ""
        rdrift = f"{self.right.drift:+d}/period" if self.right.drift else ""
        return f"...[{lw}]{ldrift} | {ctr} | [{rw}]{rdrift}... @origin={self.origin}"


def _same_function(x: Configuration, y: Configuration) -> bool:
    """Do two configurations assign the same height to every cell?

    Tails are affine-periodic, so agreement on one common period beyond
    both centers, together with equal drift per common period, propagates
    to the whole ray by induction.
    """
    a = max(x.center_end, y.center_end)
    px, py = x.right.period, y.right.period
    L = lcm(px, py)
    if x.right.drift * (L // px) != y.right.drift * (L // py):
        return False
    if any(x.at(i) != y.at(i) for i in range(a, a + L)):
        return False

    b = min(x.origin, y.origin)
    qx, qy = x.left.period, y.left.period
    M = lcm(qx, qy)
    if x.left.drift * (M // qx) != y.left.drift * (M // qy):
        return False
    if any(x.at(i) != y.at(i) for i in range(b - M, b)):
        return False

    return all(x.at(i) == y.at(i) for i in range(b, a))


# -- constructors -------------------------------------------------------


def make_config(
    left: Tail, center: Sequence[Height] = (), right: Tail | None = None, origin: int = 0
) -> Configuration:
    """Build a canonical configuration from tails, center and origin."""
    if right is None:
        right = left
    return Configuration(left, center, right, origin)


def periodic_config(word: Sequence[Height], drift: int = 0, origin: int = 0) -> Configuration:
    """The configuration repeating ``word`` over the whole line.

    With nonzero drift the pattern rises (or falls) by ``drift`` per
    period going right, and symmetrically going left, so the word read at
    ``[origin, origin + p - 1]`` is exactly ``word``.
    """
    w = _check_heights(word, "word")
    if drift == 0:
        left = Tail(w, 0)
    else:
        left = Tail(tuple(v - drift for v in w), drift)
    return Configuration(left, (), Tail(w, drift), origin)


def zero_config() -> Configuration:
    return periodic_config((0,))


# -- the commuting maps --------------------------------------------------


def shift(x: Configuration, k: int) -> Configuration:
    """The shifted configuration: cell i of the result reads cell i+k of x."""
    return Configuration(x.left, x.center, x.right, x.origin - k)


def vertical(x: Configuration, n: int) -> Configuration:
    """Raise every finite column by n; sources and sinks stay put."""
    return Configuration(
        Tail(tuple(_hadd(v, n) for v in x.left.word), x.left.drift),
        tuple(_hadd(v, n) for v in x.center),
        Tail(tuple(_hadd(v, n) for v in x.right.word), x.right.drift),
        x.origin,
    )


def _height_sum(a: Height, b: Height) -> Height:
    if is_finite_height(a) and is_finite_height(b):
        return a + b
    if is_finite_height(a):
        return b
    if is_finite_height(b):
        return a
    if a == b:
        return a
    raise ValueError("cannot add opposite infinities")


def add_configs(x: Configuration, y: Configuration) -> Configuration:
    """Cellwise sum; infinite cells absorb finite summands."""
    pl = lcm(x.left.period, y.left.period)
    pr = lcm(x.right.period, y.right.period)
    lo = min(x.origin, y.origin)
    hi = max(x.center_end, y.center_end)
    left = Tail(
        tuple(_height_sum(x.at(i), y.at(i)) for i in range(lo - pl, lo)),
        x.left.drift * (pl // x.left.period) + y.left.drift * (pl // y.left.period),
    )
    right = Tail(
        tuple(_height_sum(x.at(i), y.at(i)) for i in range(hi, hi + pr)),
        x.right.drift * (pr // x.right.period) + y.right.drift * (pr // y.right.period),
    )
    center = tuple(_height_sum(x.at(i), y.at(i)) for i in range(lo, hi))
    return Configuration(left, center, right, lo)


def _height_scale(v: Height, n: int) -> Height:
    if is_finite_height(v):
        return v * n
    if n > 0:
        return v
    if n < 0:
        return -v
    raise ValueError("cannot scale an infinite height by 0")


def scale_config(x: Configuration, n: int) -> Configuration:
    """Cellwise integer multiple of a configuration."""
    if n == 0 and not all(
        is_finite_height(v) for v in (*x.left.word, *x.center, *x.right.word)
    ):
        raise ValueError("cannot scale an infinite height by 0")
    return Configuration(
        Tail(tuple(_height_scale(v, n) for v in x.left.word), x.left.drift * n),
        tuple(_height_scale(v, n) for v in x.center),
        Tail(tuple(_height_scale(v, n) for v in x.right.word), x.right.drift * n),
        x.origin,
    )


# -- the metric ----------------------------------------------------------


@dataclass(frozen=True)
class Distance:
    """A dyadic distance value plus whether it is exact.

    When ``exact`` is False the true distance is only bounded above by
    ``bound`` (agreement persisted to the largest window inspected).
    """

    value: Fraction
    exact: bool
    bound: Fraction | None = None

    def __str__(self):
        if self.exact:
            return str(self.value)
        return f"<= {self.bound}"


def _clamped_agree(x: Configuration, y: Configuration, n: int) -> bool:
    lo, hi = -n - 1, n
    for i in range(-n, n + 1):
        a, b = x.at(i), y.at(i)
        if max(lo, min(a, hi)) != max(lo, min(b, hi)):
            return False
    return True


def distance(x: Configuration, y: Configuration, max_radius: int) -> Distance:
    """2^(-k) where k is the largest window radius of agreement.

    Agreement at radius n means the binary embeddings coincide on the
    square [-n, n]^2, which reduces column by column to equality of
    heights clamped into [-n-1, n].  Failing at n = 0 already gives
    distance 1.  Identical configurations give an exact 0; agreement all
    the way to ``max_radius`` between distinct configurations is reported
    as an inexact 0 bounded by 2^(-max_radius).
    """
    if max_radius < 1:
        raise ValueError("max_radius must be a positive integer")
    if x == y:
        return Distance(Fraction(0), exact=True)
    for n in range(max_radius + 1):
        if not _clamped_agree(x, y, n):
            k = max(n - 1, 0)
            return Distance(Fraction(1, 2**k), exact=True)
    return Distance(Fraction(0), exact=False, bound=Fraction(1, 2**max_radius))


# -- file format ---------------------------------------------------------


def _height_to_json(v: Height):
    if v == INF:
        return "inf"
    if v == NEG_INF:
        return "-inf"
    return v


def _height_from_json(v) -> Height:
    if v == "inf":
        return INF
    if v == "-inf":
        return NEG_INF
    if isinstance(v, int) and not isinstance(v, bool):
        return v
    raise ValueError(f"height entry {v!r} is not an integer or 'inf'/'-inf'")


def format_config(x: Configuration) -> str:
    """Serialize a configuration; parse_config inverts this losslessly."""
    doc = {
        "format": CONFIG_FORMAT,
        "left": {
            "word": [_height_to_json(v) for v in x.left.word],
            "drift": x.left.drift,
        },
        "center": [_height_to_json(v) for v in x.center],
        "right": {
            "word": [_height_to_json(v) for v in x.right.word],
            "drift": x.right.drift,
        },
        "origin": x.origin,
    }
    return json.dumps(doc, indent=2) + "\n"


def _parse_tail(doc, side: str) -> Tail:
    if not isinstance(doc, dict) or "word" not in doc:
        raise ValueError(f"field '{side}' must be an object with a 'word' list")
    drift = doc.get("drift", 0)
    if not isinstance(drift, int) or isinstance(drift, bool):
        raise ValueError(f"field '{side}.drift' must be an integer")
    return Tail(tuple(_height_from_json(v) for v in doc["word"]), drift)


def parse_config(text: str) -> Configuration:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"configuration file is not valid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise ValueError("configuration file must hold a JSON object")
    fmt = doc.get("format")
    if fmt != CONFIG_FORMAT:
        raise ValueError(f"field 'format' must be {CONFIG_FORMAT!r}, got {fmt!r}")
    for field in ("left", "center", "right"):
        if field not in doc:
            raise ValueError(f"missing field '{field}'")
    origin = doc.get("origin", 0)
    if not isinstance(origin, int) or isinstance(origin, bool):
        raise ValueError("field 'origin' must be an integer")
    return Configuration(
        _parse_tail(doc["left"], "left"),
        tuple(_height_from_json(v) for v in doc["center"]),
        _parse_tail(doc["right"], "right"),
        origin,
    )


def load_config(path) -> Configuration:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def save_config(x: Configuration, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_config(x))


# -- randomized construction (tests, experiments, demos) -----------------


def random_configuration(
    rng,
    *,
    max_period: int = 3,
    max_center: int = 6,
    height_span: int = 5,
    max_drift: int = 2,
    allow_inf: bool = False,
    inf_rate: float = 0.1,
) -> Configuration:
    """A random configuration drawn from a seeded ``random.Random``."""

    def entry() -> Height:
        if allow_inf and rng.random() < inf_rate:
            return INF if rng.random() < 0.5 else NEG_INF
        return rng.randint(-height_span, height_span)

    def tail() -> Tail:
        p = rng.randint(1, max_period)
        drift = rng.randint(-max_drift, max_drift)
        if drift != 0:
            word = tuple(rng.randint(-height_span, height_span) for _ in range(p))
        else:
            word = tuple(entry() for _ in range(p))
        return Tail(word, drift)

    center = tuple(entry() for _ in range(rng.randint(0, max_center)))
    return Configuration(tail(), center, tail(), rng.randint(-3, 3))
