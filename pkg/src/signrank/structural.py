"""Certificates that hold for every realization of a sign pattern.

Two kinds of evidence are produced here:

* monomial minors: a square subpattern whose bipartite graph of nonzero
  cells has exactly one perfect matching. Its determinant is a single signed
  monomial in the entries, so it never vanishes and every realization has
  rank at least its size.
* block-pivot minors: a square subpattern whose determinant expands to
  ``+-(block 2x2 determinant) * monomial``. Whenever the block is
  nonsingular the minor is nonzero.

All search orders are fixed (size descending, row subsets outer, column
subsets inner, each lexicographic) so the certificate found is reproducible.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .linalg import ExactMatrix
from .pattern import Block, Grid, IndexSet, PatternError, SignPattern, subpattern

__all__ = [
    "SparsePoly",
    "MonomialMinorCertificate",
    "BlockPivotCertificate",
    "Confinement",
    "term_rank",
    "count_matchings",
    "monomial_minor_bound",
    "symbolic_minor",
    "block_pivot_certificate",
    "collinearity_confinement",
    "pigeonhole_cover",
    "pigeonhole_witness",
    "permutation_sign",
    "certificate_from_dict",
]

SYMBOLIC_MINOR_LIMIT = 8

Position = tuple[int, int]
Monomial = tuple[Position, ...]  # sorted multiset of 1-based cell positions


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(sorted(a + b))


class SparsePoly:
    """Sparse integer polynomial in the cell variables ``x_ij``.

    Terms map a monomial (sorted tuple of positions, repeats allowed) to a
    nonzero integer coefficient.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, int] | None = None):
        self.terms = {tuple(sorted(m)): int(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def variable(cls, i: int, j: int) -> SparsePoly:
        return cls({((i, j),): 1})

    @classmethod
    def constant(cls, c: int) -> SparsePoly:
        return cls({(): c})

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, SparsePoly) and self.terms == other.terms

    def __add__(self, other: SparsePoly) -> SparsePoly:
        out = defaultdict(int, self.terms)
        for m, c in other.terms.items():
            out[m] += c
        return SparsePoly(out)

    def __neg__(self) -> SparsePoly:
        return SparsePoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: SparsePoly) -> SparsePoly:
        return self + (-other)

    def __mul__(self, other: SparsePoly) -> SparsePoly:
        out = defaultdict(int)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out[_mono_mul(m1, m2)] += c1 * c2
        return SparsePoly(out)

    def variables(self) -> set[Position]:
        return {v for m in self.terms for v in m}

    def evaluate(self, values) -> Fraction:
        """Substitute ``values[i, j]`` (1-based, e.g. an ExactMatrix) for ``x_ij``."""
        total = Fraction(0)
        for m, c in self.terms.items():
            t = Fraction(c)
            for pos in m:
                t *= values[pos]
            total += t
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            mono = "*".join(f"x{i}_{j}" for i, j in m) or "1"
            parts.append(f"{c:+d}*{mono}")
        return " ".join(parts)


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation of 0..k-1 given in one-line notation."""
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        j, length = start, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class MonomialMinorCertificate:
    rows: IndexSet
    cols: IndexSet
    matching: tuple[Position, ...]  # (row, col) pairs, ordered by row
    sign: int

    @property
    def size(self) -> int:
        return len(self.rows)

    def monomial(self) -> Monomial:
        return tuple(sorted(self.matching))

    def predicted_minor(self, m: ExactMatrix) -> Fraction:
        v = Fraction(self.sign)
        for pos in self.matching:
            v *= m[pos]
        return v

    def to_dict(self) -> dict:
        return {
            "kind": "monomial-minor",
            "rows": list(self.rows),
            "cols": list(self.cols),
            "matching": [list(p) for p in self.matching],
            "sign": self.sign,
        }


@dataclass(frozen=True)
class BlockPivotCertificate:
    block: Block
    rows: IndexSet
    cols: IndexSet
    monomial: Monomial
    sign: int

    @property
    def size(self) -> int:
        return len(self.rows)

    def predicted_minor(self, m: ExactMatrix) -> Fraction:
        (r1, r2), (c1, c2) = self.block.rows, self.block.cols
        v = Fraction(self.sign) * (m[r1, c1] * m[r2, c2] - m[r1, c2] * m[r2, c1])
        for pos in self.monomial:
            v *= m[pos]
        return v

    def to_dict(self) -> dict:
        return {
            "kind": "block-pivot",
            "rows": list(self.rows),
            "cols": list(self.cols),
            "monomial": [list(p) for p in self.monomial],
            "sign": self.sign,
            "block": {"rows": list(self.block.rows), "cols": list(self.block.cols)},
        }


def certificate_from_dict(d: dict) -> MonomialMinorCertificate | BlockPivotCertificate:
    kind = d.get("kind")
    if kind == "monomial-minor":
        return MonomialMinorCertificate(IndexSet(d["rows"]), IndexSet(d["cols"]),
                                        tuple(tuple(p) for p in d["matching"]), int(d["sign"]))
    if kind == "block-pivot":
        b = d["block"]
        return BlockPivotCertificate(Block(b["rows"], b["cols"]), IndexSet(d["rows"]),
                                     IndexSet(d["cols"]), tuple(tuple(p) for p in d["monomial"]),
                                     int(d["sign"]))
    raise ValueError(f"unknown certificate kind {kind!r}")


def _adjacency(grid: Grid) -> list[list[int]]:
    return [[j for j, c in enumerate(row) if c.nonzero] for row in grid]


def term_rank(p: SignPattern | Grid) -> int:
    """Maximum matching between rows and columns over nonzero cells (Kuhn)."""
    grid = p.cells if isinstance(p, SignPattern) else p
    adj = _adjacency(grid)
    n_cols = len(grid[0]) if grid else 0
    match_col = [-1] * n_cols

    def augment(u, seen):
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                if match_col[v] < 0 or augment(match_col[v], seen):
                    match_col[v] = u
                    return True
        return False

    return sum(augment(u, set()) for u in range(len(adj)))


def count_matchings(grid: Grid, cap: int = 2) -> tuple[int, tuple[int, ...] | None]:
    """Count perfect matchings of a square grid, stopping at ``cap``.

    Returns ``(min(count, cap), matching)`` where ``matching[i]`` is the
    column (0-based, within the grid) matched to row ``i``, or ``None``.
    Rows or columns with a single remaining option are assigned before
    branching.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    k = len(grid)
    if any(len(r) != k for r in grid):
        raise ValueError("count_matchings needs a square grid")
    if k == 0:
        return 1, ()
    row_opts = [frozenset(j for j, c in enumerate(r) if c.nonzero) for r in grid]
    found: list[tuple[int, ...]] = []

    def search(assign: dict[int, int], rows_left: frozenset, cols_left: frozenset):
        assign = dict(assign)
        # forced-edge propagation
        while True:
            if not rows_left:
                found.append(tuple(assign[i] for i in range(k)))
                return
            forced = False
            col_opts: dict[int, list[int]] = {j: [] for j in cols_left}
            best_row, best_opts = None, None
            for i in rows_left:
                opts = row_opts[i] & cols_left
                if not opts:
                    return
                for j in opts:
                    col_opts[j].append(i)
                if len(opts) == 1:
                    (j,) = opts
                    assign[i] = j
                    rows_left, cols_left = rows_left - {i}, cols_left - {j}
                    forced = True
                    break
                if best_opts is None or len(opts) < len(best_opts) or (
                        len(opts) == len(best_opts) and i < best_row):
                    best_row, best_opts = i, opts
            if forced:
                continue
            for j, rs in sorted(col_opts.items()):
                if not rs:
                    return
                if len(rs) == 1:
                    i = rs[0]
                    assign[i] = j
                    rows_left, cols_left = rows_left - {i}, cols_left - {j}
                    forced = True
                    break
            if not forced:
                break
        for j in sorted(best_opts):
            search({**assign, best_row: j}, rows_left - {best_row}, cols_left - {j})
            if len(found) >= cap:
                return

    search({}, frozenset(range(k)), frozenset(range(k)))
    return min(len(found), cap), (found[0] if found else None)


def monomial_minor_bound(p: SignPattern) -> tuple[int, MonomialMinorCertificate | None]:
    """Largest k with a k x k subpattern having a unique perfect matching.

    Every realization of ``p`` has rank >= k. Returns ``(0, None)`` for the
    zero pattern.
    """
    n = p.n
    for k in range(term_rank(p), 0, -1):
        for rows in combinations(range(1, n + 1), k):
            row_cells = [p.cells[i - 1] for i in rows]
            for cols in combinations(range(1, n + 1), k):
                grid = tuple(tuple(r[j - 1] for j in cols) for r in row_cells)
                count, match = count_matchings(grid, cap=2)
                if count == 1:
                    matching = tuple((rows[a], cols[b]) for a, b in enumerate(match))
                    cert = MonomialMinorCertificate(IndexSet(rows), IndexSet(cols), matching,
                                                    permutation_sign(match))
                    return k, cert
    return 0, None


def symbolic_minor(p: SignPattern, rows: Sequence[int], cols: Sequence[int]) -> SparsePoly:
    """Determinant of the generic realization restricted to ``rows x cols``.

    Variables are indexed by their position in the full pattern. Expansion is
    by cofactors along whichever line has the fewest nonzero cells.
    """
    rows = IndexSet(rows, p.n)
    cols = IndexSet(cols, p.n)
    if len(rows) != len(cols):
        raise PatternError(f"minor needs |rows| == |cols|, got {len(rows)} and {len(cols)}")
    if len(rows) > SYMBOLIC_MINOR_LIMIT:
        raise PatternError(f"symbolic minors are limited to order {SYMBOLIC_MINOR_LIMIT}")
    nz = {(i, j) for i, j in p.support()}
    memo: dict[tuple[tuple[int, ...], tuple[int, ...]], SparsePoly] = {}

    def expand(rs: tuple[int, ...], cs: tuple[int, ...]) -> SparsePoly:
        if not rs:
            return SparsePoly.constant(1)
        key = (rs, cs)
        if key in memo:
            return memo[key]
        best = None  # (count, is_row, line index, cells)
        for a, i in enumerate(rs):
            cells = [b for b, j in enumerate(cs) if (i, j) in nz]
            if best is None or len(cells) < best[0]:
                best = (len(cells), True, a, cells)
        for b, j in enumerate(cs):
            cells = [a for a, i in enumerate(rs) if (i, j) in nz]
            if len(cells) < best[0]:
                best = (len(cells), False, b, cells)
        _, is_row, line, cells = best
        total = SparsePoly()
        for other in cells:
            a, b = (line, other) if is_row else (other, line)
            sub = expand(rs[:a] + rs[a + 1:], cs[:b] + cs[b + 1:])
            if sub.is_zero():
                continue
            term = SparsePoly.variable(rs[a], cs[b]) * sub
            total = total + (term if (a + b) % 2 == 0 else -term)
        memo[key] = total
        return total

    return expand(tuple(rows), tuple(cols))


def _block_factor(poly: SparsePoly, b: Block) -> tuple[Monomial, int] | None:
    """Match ``poly`` against ``sign * (x11 x22 - x12 x21) * monomial``."""
    if len(poly) != 2:
        return None
    (r1, r2), (c1, c2) = b.rows, b.cols
    diag = ((r1, c1), (r2, c2))
    anti = ((r1, c2), (r2, c1))

    def cofactor(mono: Monomial, vars_: tuple[Position, Position]) -> Monomial | None:
        rest = list(mono)
        for v in vars_:
            if v not in rest:
                return None
            rest.remove(v)
        return tuple(rest)

    (m1, k1), (m2, k2) = poly.terms.items()
    for (ma, ka), (mb, kb) in (((m1, k1), (m2, k2)), ((m2, k2), (m1, k1))):
        co_a, co_b = cofactor(ma, diag), cofactor(mb, anti)
        if co_a is not None and co_a == co_b and abs(ka) == 1 and kb == -ka:
            return co_a, ka
    return None


def block_pivot_certificate(p: SignPattern, b: Block, ambient: int) -> BlockPivotCertificate | None:
    """First ambient-sized minor containing block ``b`` that factors through it.

    Row supersets are the outer loop and column supersets the inner loop,
    both lexicographic. ``None`` when no such minor exists.
    """
    b.validate(p)
    if not 3 <= ambient <= p.n:
        raise PatternError(f"ambient size must lie in 3..{p.n}, got {ambient}")
    others_r = [i for i in range(1, p.n + 1) if i not in b.rows]
    others_c = [j for j in range(1, p.n + 1) if j not in b.cols]
    for extra_r in combinations(others_r, ambient - 2):
        rows = IndexSet(sorted(b.rows + extra_r))
        for extra_c in combinations(others_c, ambient - 2):
            cols = IndexSet(sorted(b.cols + extra_c))
            found = _block_factor(symbolic_minor(p, rows, cols), b)
            if found is not None:
                mono, sign = found
                return BlockPivotCertificate(b, rows, cols, mono, sign)
    return None


class Confinement(enum.Enum):
    ROWS = "RowsConfined"
    COLS = "ColsConfined"
    BOTH = "Both"
    NONE = "None"

    def __str__(self) -> str:
        return self.value


def collinearity_confinement(p: SignPattern, b: Block) -> Confinement:
    """Whether the block's rows (or columns) vanish outside the block.

    If the rows are confined, a singular block makes the two full rows of any
    realization collinear; likewise for columns.
    """
    b.validate(p)
    rows_ok = all(p.row_support(i) <= set(b.cols) for i in b.rows)
    cols_ok = all(p.col_support(j) <= set(b.rows) for j in b.cols)
    if rows_ok and cols_ok:
        return Confinement.BOTH
    if rows_ok:
        return Confinement.ROWS
    if cols_ok:
        return Confinement.COLS
    return Confinement.NONE


def _check_principal_disjoint(n: int, blocks: Iterable[Block]) -> list[tuple[int, int]]:
    used: set[int] = set()
    pairs = []
    for b in blocks:
        if not b.principal:
            raise PatternError(f"block {b} is not principal")
        IndexSet(b.rows, n)
        if used & set(b.rows):
            raise PatternError(f"block {b} overlaps another block")
        used |= set(b.rows)
        pairs.append(tuple(b.rows))
    return pairs


def pigeonhole_witness(n: int, blocks: Sequence[Block], k: int) -> IndexSet | None:
    """Lexicographically first k-subset of 1..n containing no whole block."""
    pairs = _check_principal_disjoint(n, blocks)
    if not 1 <= k <= n:
        raise PatternError(f"subset size {k} out of range 1..{n}")
    for s in combinations(range(1, n + 1), k):
        chosen = set(s)
        if not any(a in chosen and b in chosen for a, b in pairs):
            return IndexSet(s)
    return None


def pigeonhole_cover(n: int, blocks: Sequence[Block], k: int) -> bool:
    """True iff every k-subset of 1..n contains both indices of some block."""
    return pigeonhole_witness(n, blocks, k) is None
