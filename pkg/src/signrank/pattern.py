"""Sign patterns: the qualitative matrices whose realizations we study.

Indices are 1-based in every public interface so that positions line up
with the way matrices are usually written down.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

__all__ = [
    "Sign",
    "SignPattern",
    "IndexSet",
    "Block",
    "PatternError",
    "parse_pattern",
    "format_pattern",
    "load_pattern",
    "strip_comments",
    "paper_pattern",
    "paper_blocks",
    "subpattern",
]


class PatternError(ValueError):
    """Malformed pattern text, bad indices or an invalid block."""


class Sign(enum.Enum):
    PLUS = "+"
    MINUS = "-"
    ZERO = "0"

    def __str__(self) -> str:
        return self.value

    @property
    def nonzero(self) -> bool:
        return self is not Sign.ZERO


_TOKENS = {"+": Sign.PLUS, "1": Sign.PLUS, "-": Sign.MINUS, "0": Sign.ZERO}

Grid = tuple[tuple[Sign, ...], ...]


class IndexSet(tuple):
    """Strictly increasing tuple of 1-based indices.

    >>> IndexSet([1, 3, 5], n=9)
    (1, 3, 5)
    """

    def __new__(cls, indices: Iterable[int] = (), n: int | None = None):
        idx = tuple(int(i) for i in indices)
        for a, b in zip(idx, idx[1:]):
            if a >= b:
                raise PatternError(f"index set must be strictly increasing: {idx}")
        if idx and idx[0] < 1:
            raise PatternError(f"indices are 1-based: {idx}")
        if n is not None and idx and idx[-1] > n:
            raise PatternError(f"index {idx[-1]} out of range 1..{n}")
        return super().__new__(cls, idx)

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"


@dataclass(frozen=True)
class SignPattern:
    """Square grid over {+, -, 0}."""

    cells: Grid

    def __post_init__(self):
        cells = tuple(tuple(Sign(c) if not isinstance(c, Sign) else c for c in row)
                      for row in self.cells)
        n = len(cells)
        if n == 0:
            raise PatternError("pattern must have order >= 1")
        for row in cells:
            if len(row) != n:
                raise PatternError(f"pattern is not square: row of length {len(row)} in order {n}")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_support(cls, n: int, support: Iterable[tuple[int, int]]) -> SignPattern:
        """Pattern with PLUS at each given 1-based (row, col) and ZERO elsewhere."""
        grid = [[Sign.ZERO] * n for _ in range(n)]
        for i, j in support:
            grid[i - 1][j - 1] = Sign.PLUS
        return cls(tuple(map(tuple, grid)))

    @property
    def n(self) -> int:
        return len(self.cells)

    def __getitem__(self, pos: tuple[int, int]) -> Sign:
        i, j = pos
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise PatternError(f"position {pos} out of range for order {self.n}")
        return self.cells[i - 1][j - 1]

    def support(self) -> list[tuple[int, int]]:
        """Nonzero positions, row-major, 1-based."""
        return [(i + 1, j + 1) for i, row in enumerate(self.cells)
                for j, c in enumerate(row) if c.nonzero]

    def row_support(self, i: int) -> set[int]:
        return {j + 1 for j, c in enumerate(self.cells[i - 1]) if c.nonzero}

    def col_support(self, j: int) -> set[int]:
        return {i + 1 for i in range(self.n) if self.cells[i][j - 1].nonzero}

    def has_minus(self) -> bool:
        return any(c is Sign.MINUS for row in self.cells for c in row)

    def fingerprint(self) -> str:
        return hashlib.sha256(format_pattern(self).encode()).hexdigest()[:16]

    def with_cell(self, i: int, j: int, sign: Sign) -> SignPattern:
        grid = [list(row) for row in self.cells]
        grid[i - 1][j - 1] = sign
        return SignPattern(tuple(map(tuple, grid)))

    def __str__(self) -> str:
        return format_pattern(self)


@dataclass(frozen=True)
class Block:
    """A 2x2 all-nonzero submatrix position; principal when rows == cols."""

    rows: IndexSet
    cols: IndexSet

    def __post_init__(self):
        rows, cols = IndexSet(self.rows), IndexSet(self.cols)
        if len(rows) != 2 or len(cols) != 2:
            raise PatternError(f"a block is 2x2, got rows={rows} cols={cols}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)

    @property
    def principal(self) -> bool:
        return self.rows == self.cols

    def validate(self, p: SignPattern) -> None:
        IndexSet(self.rows, p.n)
        IndexSet(self.cols, p.n)
        for i in self.rows:
            for j in self.cols:
                if not p[i, j].nonzero:
                    raise PatternError(f"{self} is not a block of the pattern: cell ({i},{j}) is zero")

    def __str__(self) -> str:
        return f"{self.rows[0]},{self.rows[1]}x{self.cols[0]},{self.cols[1]}"


def strip_comments(text: str) -> list[str]:
    """Non-blank lines of ``text`` that do not start with '#'."""
    out = []
    for line in text.splitlines():
        s = line.strip()
        if s and not s.startswith("#"):
            out.append(s)
    return out


def parse_pattern(text: str) -> SignPattern:
    """Parse whitespace-separated rows of ``+ - 0 1`` tokens (``1`` means ``+``)."""
    lines = strip_comments(text)
    if not lines:
        raise PatternError("empty pattern")
    rows = []
    for lineno, line in enumerate(lines, 1):
        row = []
        for tok in line.split():
            try:
                row.append(_TOKENS[tok])
            except KeyError:
                raise PatternError(f"unknown token {tok!r} on row {lineno}") from None
        rows.append(tuple(row))
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise PatternError(f"ragged rows: lengths {sorted(widths)}")
    return SignPattern(tuple(rows))


def format_pattern(p: SignPattern) -> str:
    return "\n".join(" ".join(c.value for c in row) for row in p.cells) + "\n"


def load_pattern(path: str | Path) -> SignPattern:
    return parse_pattern(Path(path).read_text(encoding="utf-8"))


PAPER_GRID = """\
1 1 0 0 1 0 0 0 0
1 1 0 0 0 0 0 0 0
0 0 1 1 1 0 0 0 0
0 0 1 1 0 0 0 0 0
0 0 0 0 1 0 1 0 1
0 0 0 0 0 1 1 0 0
0 0 0 0 0 1 1 0 0
0 0 0 0 0 0 0 1 1
0 0 0 0 0 0 0 1 1
"""

_PAPER_SUPPORT = {
    1: (1, 2, 5), 2: (1, 2), 3: (3, 4, 5), 4: (3, 4), 5: (5, 7, 9),
    6: (6, 7), 7: (6, 7), 8: (8, 9), 9: (8, 9),
}


def paper_pattern() -> SignPattern:
    """The 9x9 pattern with nonzero diagonal whose minimum rank is 6."""
    return SignPattern.from_support(9, ((i, j) for i, cols in _PAPER_SUPPORT.items() for j in cols))


def paper_blocks() -> list[Block]:
    return [Block(ix, ix) for ix in ((1, 2), (3, 4), (6, 7), (8, 9))]


def subpattern(p: SignPattern, rows: Sequence[int], cols: Sequence[int]) -> Grid:
    """Restriction of ``p`` to ``rows x cols`` as a (possibly rectangular) grid."""
    rows = IndexSet(rows, p.n)
    cols = IndexSet(cols, p.n)
    return tuple(tuple(p.cells[i - 1][j - 1] for j in cols) for i in rows)
