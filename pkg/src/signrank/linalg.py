"""Exact rational linear algebra.

Everything here works on :class:`fractions.Fraction` entries. Determinants
and ranks clear denominators row by row and then run Bareiss fraction-free
elimination on Python integers; characteristic polynomials use Berkowitz's
division-free recurrence. Nothing is ever rounded.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from .pattern import IndexSet, strip_comments

__all__ = [
    "ExactMatrix",
    "UniPoly",
    "MatrixError",
    "parse_matrix",
    "format_matrix",
    "load_matrix",
    "rank",
    "determinant",
    "char_poly",
    "squarefree_part",
    "poly_gcd",
    "eval_poly_at_matrix",
    "is_diagonalizable",
    "principal_minors",
    "minors",
    "max_nonsingular_principal_size",
    "inverse",
]


class MatrixError(ValueError):
    """Shape mismatch or malformed matrix input."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise MatrixError("floats are not accepted; pass int, Fraction or 'p/q' strings")
    return Fraction(x)


class ExactMatrix:
    """Dense immutable matrix of Fractions.

    ``m[i, j]`` uses 1-based indices; ``m.rows`` is the plain 0-based
    tuple-of-tuples for internal loops.
    """

    __slots__ = ("rows", "n_rows", "n_cols")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(_frac(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise MatrixError("matrix must be at least 1x1")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise MatrixError("ragged matrix rows")
        self.rows = data
        self.n_rows = len(data)
        self.n_cols = width

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int | None = None) -> ExactMatrix:
        return cls([[0] * (n_cols or n_rows) for _ in range(n_rows)])

    @classmethod
    def diagonal(cls, values: Sequence) -> ExactMatrix:
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def __getitem__(self, pos: tuple[int, int]) -> Fraction:
        i, j = pos
        return self.rows[i - 1][j - 1]

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"ExactMatrix({[[str(x) for x in r] for r in self.rows]})"

    def __str__(self) -> str:
        return format_matrix(self)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> ExactMatrix:
        """Rows x cols restriction with 1-based index sets."""
        rows = IndexSet(rows, self.n_rows)
        cols = IndexSet(cols, self.n_cols)
        return ExactMatrix([[self.rows[i - 1][j - 1] for j in cols] for i in rows])

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(zip(*self.rows))

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        if self.shape != other.shape:
            raise MatrixError("shape mismatch in addition")
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        if self.shape != other.shape:
            raise MatrixError("shape mismatch in subtraction")
        return ExactMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> ExactMatrix:
        c = _frac(c)
        return ExactMatrix([[c * a for a in r] for r in self.rows])

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.n_cols != other.n_rows:
            raise MatrixError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows))
        return ExactMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols]
                            for r in self.rows])


def parse_matrix(text: str) -> ExactMatrix:
    """Parse rows of rational tokens (``3``, ``-2``, ``5/7``); '#' comments allowed."""
    lines = strip_comments(text)
    if not lines:
        raise MatrixError("empty matrix")
    rows = []
    for lineno, line in enumerate(lines, 1):
        row = []
        for tok in line.split():
            try:
                row.append(Fraction(tok))
            except (ValueError, ZeroDivisionError):
                raise MatrixError(f"bad rational token {tok!r} on row {lineno}") from None
        rows.append(row)
    return ExactMatrix(rows)


def format_matrix(m: ExactMatrix) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in m.rows) + "\n"


def load_matrix(path: str | Path) -> ExactMatrix:
    return parse_matrix(Path(path).read_text(encoding="utf-8"))


def _integer_rows(m: ExactMatrix) -> tuple[list[list[int]], int]:
    """Scale each row by the lcm of its denominators.

    Returns the integer rows and the product of the scale factors.
    """
    out, scale = [], 1
    for row in m.rows:
        d = 1
        for x in row:
            d = math.lcm(d, x.denominator)
        out.append([x.numerator * (d // x.denominator) for x in row])
        scale *= d
    return out, scale


def _bareiss(a: list[list[int]]) -> tuple[int, int]:
    """In-place fraction-free echelon reduction of an integer matrix.

    Returns ``(rank, sign)`` where ``sign`` tracks row swaps. When the matrix
    is square and of full rank, ``a[-1][-1] * sign`` is its determinant.
    Pivot: first nonzero entry in the current column, scanning downwards.
    """
    n_rows, n_cols = len(a), len(a[0])
    r, prev, sign = 0, 1, 1
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        p = a[r][c]
        for i in range(r + 1, n_rows):
            ai = a[i]
            f = ai[c]
            ar = a[r]
            for j in range(c + 1, n_cols):
                ai[j] = (p * ai[j] - f * ar[j]) // prev
            ai[c] = 0
        prev = p
        r += 1
    return r, sign


def rank(m: ExactMatrix) -> int:
    a, _ = _integer_rows(m)
    return _bareiss(a)[0]


def determinant(m: ExactMatrix) -> Fraction:
    if not m.is_square:
        raise MatrixError(f"determinant of non-square {m.shape} matrix")
    a, scale = _integer_rows(m)
    r, sign = _bareiss(a)
    if r < m.n_rows:
        return Fraction(0)
    return Fraction(sign * a[-1][-1], scale)


def inverse(m: ExactMatrix) -> ExactMatrix:
    """Gauss-Jordan inverse over the rationals."""
    if not m.is_square:
        raise MatrixError("inverse of non-square matrix")
    n = m.n_rows
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m.rows)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise MatrixError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv_p = 1 / a[c][c]
        a[c] = [x * inv_p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return ExactMatrix([row[n:] for row in a])


class UniPoly:
    """Univariate polynomial over Q, coefficients stored lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_roots(cls, roots: Iterable) -> UniPoly:
        p = cls([1])
        for r in roots:
            p = p * cls([-_frac(r), 1])
        return p

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            mag = abs(c)
            body = mono if (mag == 1 and mono) else (f"{mag}*{mono}" if mono else str(mag))
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __add__(self, other: UniPoly) -> UniPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    def __neg__(self) -> UniPoly:
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other: UniPoly) -> UniPoly:
        return self + (-other)

    def __mul__(self, other: UniPoly) -> UniPoly:
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    def __divmod__(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        lead = other.lead
        for k in range(len(rem) - 1 - dq, -1, -1):
            q = rem[k + dq] / lead
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return UniPoly(quot), UniPoly(rem)

    def __floordiv__(self, other: UniPoly) -> UniPoly:
        return divmod(self, other)[0]

    def __mod__(self, other: UniPoly) -> UniPoly:
        return divmod(self, other)[1]

    def derivative(self) -> UniPoly:
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def monic(self) -> UniPoly:
        if self.is_zero():
            return self
        lead = self.lead
        return UniPoly(c / lead for c in self.coeffs)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def char_poly(m: ExactMatrix) -> UniPoly:
    """det(xI - m) by Berkowitz's algorithm.

    Peel the matrix as [[a, R], [C, A1]]; then
    charpoly(m) = T @ charpoly(A1) with T lower-triangular Toeplitz whose
    first column is (1, -a, -R C, -R A1 C, -R A1^2 C, ...).
    Works from the trailing 1x1 corner outwards; no divisions.
    """
    if not m.is_square:
        raise MatrixError(f"characteristic polynomial of non-square {m.shape} matrix")
    a = m.rows
    n = m.n_rows
    # coefficients highest degree first while iterating
    p = [Fraction(1), -a[n - 1][n - 1]]
    for k in range(n - 2, -1, -1):
        size = n - k  # order of the current leading submatrix a[k:, k:]
        row = a[k][k + 1:]
        col = [a[i][k] for i in range(k + 1, n)]
        sub = [r[k + 1:] for r in a[k + 1:]]
        t = [Fraction(1), -a[k][k]]
        v = col
        for _ in range(size - 1):
            t.append(-sum((x * y for x, y in zip(row, v)), Fraction(0)))
            v = [sum((x * y for x, y in zip(r, v)), Fraction(0)) for r in sub]
        p = [sum((t[i - j] * p[j] for j in range(min(i, len(p) - 1) + 1)), Fraction(0))
             for i in range(size + 1)]
    return UniPoly(reversed(p))


def squarefree_part(p: UniPoly) -> UniPoly:
    """Monic ``p / gcd(p, p')``: same roots as ``p``, each simple."""
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    g = poly_gcd(p, p.derivative())
    q, r = divmod(p, g)
    assert r.is_zero()
    return q.monic()


def eval_poly_at_matrix(p: UniPoly, m: ExactMatrix) -> ExactMatrix:
    """Horner evaluation of ``p`` at the square matrix ``m``."""
    if not m.is_square:
        raise MatrixError("polynomial evaluation needs a square matrix")
    n = m.n_rows
    acc = ExactMatrix.zeros(n)
    for c in reversed(p.coeffs):
        acc = acc @ m
        if c:
            acc = ExactMatrix([[x + c if i == j else x for j, x in enumerate(r)]
                               for i, r in enumerate(acc.rows)])
    return acc


def is_diagonalizable(m: ExactMatrix) -> bool:
    """Diagonalizability over C, decided exactly.

    A rational matrix is diagonalizable over C iff its minimal polynomial is
    squarefree, i.e. iff the squarefree part of its characteristic
    polynomial annihilates it.
    """
    if not m.is_square:
        raise MatrixError("diagonalizability of a non-square matrix")
    q = squarefree_part(char_poly(m))
    return eval_poly_at_matrix(q, m).is_zero()


def principal_minors(m: ExactMatrix, k: int) -> list[tuple[IndexSet, Fraction]]:
    """All k x k principal minors, index sets in lexicographic order."""
    if not m.is_square:
        raise MatrixError("principal minors of a non-square matrix")
    n = m.n_rows
    if not 1 <= k <= n:
        raise MatrixError(f"minor size {k} out of range 1..{n}")
    out = []
    for s in combinations(range(1, n + 1), k):
        idx = IndexSet(s)
        out.append((idx, determinant(m.submatrix(idx, idx))))
    return out


def minors(m: ExactMatrix, k: int) -> list[tuple[IndexSet, IndexSet, Fraction]]:
    """All k x k minors; row sets outer, column sets inner, both lexicographic."""
    if not 1 <= k <= min(m.shape):
        raise MatrixError(f"minor size {k} out of range 1..{min(m.shape)}")
    out = []
    for rs in combinations(range(1, m.n_rows + 1), k):
        for cs in combinations(range(1, m.n_cols + 1), k):
            out.append((IndexSet(rs), IndexSet(cs), determinant(m.submatrix(rs, cs))))
    return out


def max_nonsingular_principal_size(m: ExactMatrix) -> int:
    """Largest k with a nonzero k x k principal minor (0 for the zero matrix)."""
    if not m.is_square:
        raise MatrixError("principal minors of a non-square matrix")
    n = m.n_rows
    for k in range(n, 0, -1):
        for s in combinations(range(1, n + 1), k):
            if determinant(m.submatrix(s, s)) != 0:
                return k
    return 0
