"""Local rules of radius 1: gradient measurement and 5x5 update tables.

A cell of finite height reacts to the height difference to each
neighbor, but only resolves differences up to 2.  ``measure`` reports
the neighbor relative to the cell as one of five classes

    -2   at least two below (or a sink)
    -1   exactly one below
     0   level
     1   exactly one above
     2   at least two above (or a source)

and a rule table maps a (left class, right class) pair to the height
increment the cell applies to itself, again one of -2..2.  Cells of
infinite height never change.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .config import Configuration, Height, is_finite_height

__all__ = [
    "CLASSES",
    "measure",
    "GradientPair",
    "gradient_word",
    "RuleTable",
    "lookup",
    "table_from_linear",
    "gamma_table",
    "omega_table",
    "is_latin_square",
    "realized_gap",
    "random_table",
    "parse_table",
    "format_table",
    "load_table",
    "save_table",
    "resolve_table",
]

CLASSES = (-2, -1, 0, 1, 2)

RULE_FORMAT = "sandlab-rule/1"


def measure(base: Height, neighbor: Height) -> int:
    """Gradient class of ``neighbor`` as seen from a finite ``base``."""
    if not is_finite_height(base):
        raise ValueError(f"cannot measure from an infinite base height {base!r}")
    if not is_finite_height(neighbor):
        return 2 if neighbor > 0 else -2
    d = neighbor - base
    if d >= 2:
        return 2
    if d <= -2:
        return -2
    return d


class GradientPair(NamedTuple):
    """What one cell sees: the classes of its left and right neighbors."""

    L: int
    R: int


def gradient_word(x: Configuration, lo: int, hi: int) -> list[GradientPair]:
    """Gradient pairs at cells lo..hi inclusive; all must be finite."""
    out = []
    for i in range(lo, hi + 1):
        h = x.at(i)
        if not is_finite_height(h):
            raise ValueError(f"cell {i} has infinite height {h!r}")
        out.append(GradientPair(measure(h, x.at(i - 1)), measure(h, x.at(i + 1))))
    return out


def _rep5(v: int) -> int:
    """Integers mod 5 represented in -2..2."""
    return (v + 2) % 5 - 2


@dataclass(frozen=True)
class RuleTable:
    """A 5x5 increment table, rows by left class, columns by right class.

    ``entries[li][ri]`` is the increment for left class ``CLASSES[li]``
    and right class ``CLASSES[ri]``.
    """

    entries: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        if len(self.entries) != 5 or any(len(row) != 5 for row in self.entries):
            raise ValueError("rule table must be 5 rows of 5 entries")
        for row in self.entries:
            for v in row:
                if v not in CLASSES:
                    raise ValueError(f"table entry {v!r} is outside -2..2")

    def entry(self, left: int, right: int) -> int:
        if left not in CLASSES or right not in CLASSES:
            raise ValueError(f"gradient classes must lie in -2..2, got ({left}, {right})")
        return self.entries[left + 2][right + 2]

    def corners(self) -> tuple[int, int, int, int]:
        """Increments at (-2,-2), (-2,2), (2,-2), (2,2) in that order."""
        return (self.entry(-2, -2), self.entry(-2, 2), self.entry(2, -2), self.entry(2, 2))

    def __str__(self):
        rows = [" ".join(f"{v:2d}" for v in row) for row in self.entries]
        return "\n".join(rows)


def lookup(t: RuleTable, pair: GradientPair) -> int:
    return t.entry(pair.L, pair.R)


def table_from_linear(a: int, b: int, name: str = "") -> RuleTable:
    """The table (L, R) -> a*L + b*R taken mod 5 into -2..2."""
    entries = tuple(
        tuple(_rep5(a * left + b * right) for right in CLASSES) for left in CLASSES
    )
    return RuleTable(entries, name or f"linear:{a},{b}")


def gamma_table() -> RuleTable:
    """The sum-of-gradients rule: increment = L + R mod 5."""
    return RuleTable(
        (
            (1, 2, -2, -1, 0),
            (2, -2, -1, 0, 1),
            (-2, -1, 0, 1, 2),
            (-1, 0, 1, 2, -2),
            (0, 1, 2, -2, -1),
        ),
        name="gamma",
    )


def omega_table() -> RuleTable:
    """One grain topples to the right off any cliff of height >= 2."""
    entries = []
    for left in CLASSES:
        row = []
        for right in CLASSES:
            if left == 2 and right != -2:
                row.append(1)  # a grain arrives from the higher left column
            elif left != 2 and right == -2:
                row.append(-1)  # this column sheds a grain to the right
            else:
                row.append(0)
        entries.append(tuple(row))
    return RuleTable(tuple(entries), name="omega")


def is_latin_square(t: RuleTable) -> bool:
    """Does every row and every column hit all five increments?"""
    full = set(CLASSES)
    for i in range(5):
        if set(t.entries[i]) != full:
            return False
        if {t.entries[j][i] for j in range(5)} != full:
            return False
    return True


def realized_gap(cls: int, sign: int = 1) -> int:
    """A concrete neighbor offset realizing a gradient class.

    Classes -1..1 force the offset; class +/-2 is realized minimally as
    +/-2.  ``sign`` flips the direction for building descending examples.
    """
    return cls * sign if abs(cls) < 2 else 2 * (1 if cls > 0 else -1) * sign


def random_table(rng, name: str = "") -> RuleTable:
    entries = tuple(
        tuple(rng.choice(CLASSES) for _ in range(5)) for _ in range(5)
    )
    return RuleTable(entries, name=name)


# -- file format ---------------------------------------------------------

_BUILTINS = {
    "gamma": gamma_table,
    "omega": omega_table,
}


def parse_table(text: str, name: str = "") -> RuleTable:
    """Parse the 5-line table format; '#' starts a comment."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 5:
            raise ValueError(f"line {lineno}: expected 5 entries, got {len(parts)}")
        try:
            row = tuple(int(p) for p in parts)
        except ValueError:
            raise ValueError(f"line {lineno}: entries must be integers") from None
        rows.append(row)
    if len(rows) != 5:
        raise ValueError(f"expected 5 table rows, got {len(rows)}")
    return RuleTable(tuple(rows), name=name)


def format_table(t: RuleTable) -> str:
    lines = [f"# {RULE_FORMAT}"]
    if t.name:
        lines.append(f"# {t.name}")
    lines.append("# rows: left class -2..2; columns: right class -2..2")
    for row in t.entries:
        lines.append(" ".join(f"{v:2d}" for v in row))
    return "\n".join(lines) + "\n"


def load_table(path) -> RuleTable:
    from os.path import basename

    with open(path, "r", encoding="utf-8") as fh:
        return parse_table(fh.read(), name=basename(str(path)))


def save_table(t: RuleTable, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_table(t))


def resolve_table(spec: str) -> RuleTable:
    """Turn a rule argument into a table.

    Accepts the builtin names ``gamma`` and ``omega``, the form
    ``linear:a,b``, or a path to a table file.
    """
    if spec in _BUILTINS:
        return _BUILTINS[spec]()
    if spec.startswith("linear:"):
        body = spec[len("linear:"):]
        parts = body.split(",")
        if len(parts) != 2:
            raise ValueError(f"rule {spec!r}: expected linear:a,b with two integers")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"rule {spec!r}: coefficients must be integers") from None
        return table_from_linear(a, b)
    return load_table(spec)
