"""Exact rational realizations of sign patterns.

Randomness: trial ``t`` under master seed ``s`` draws from
``random.Random(splitmix64((s + t) mod 2**64))`` (Mersenne Twister seeded
with a SplitMix64-mixed integer). Results depend only on ``(seed, trial)``,
so trials can run in any order or in parallel.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import ExactMatrix, determinant, inverse, rank
from .pattern import Sign, SignPattern, paper_blocks, paper_pattern

__all__ = [
    "Realization",
    "SampleConfig",
    "RealizationError",
    "splitmix64",
    "trial_rng",
    "all_ones_realization",
    "sample_realization",
    "sample_min_rank_realization",
    "construct_diagonalizable",
    "empirical_min_rank",
    "force_block_nonsingular",
]

MASK64 = (1 << 64) - 1
MAX_RESAMPLES = 1000


class RealizationError(ValueError):
    pass


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def trial_rng(seed: int, trial: int = 0) -> random.Random:
    return random.Random(splitmix64((seed + trial) & MASK64))


@dataclass(frozen=True)
class SampleConfig:
    seed: int = 0
    magnitude: int = 10
    trials: int = 100

    def __post_init__(self):
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.magnitude < 1:
            raise ValueError("magnitude must be >= 1")
        # trials == 0 is allowed: certificate-only runs
        if self.trials < 0:
            raise ValueError("trials must be >= 0")


@dataclass(frozen=True)
class Realization:
    pattern: SignPattern
    matrix: ExactMatrix

    def __post_init__(self):
        p, m = self.pattern, self.matrix
        if m.shape != (p.n, p.n):
            raise RealizationError(f"matrix shape {m.shape} does not match pattern order {p.n}")
        for i, (prow, mrow) in enumerate(zip(p.cells, m.rows), 1):
            for j, (s, x) in enumerate(zip(prow, mrow), 1):
                ok = (x > 0) if s is Sign.PLUS else (x < 0) if s is Sign.MINUS else (x == 0)
                if not ok:
                    raise RealizationError(f"entry ({i},{j}) = {x} does not have sign {s}")


def _random_rational(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(1, bound), rng.randint(1, bound))


def all_ones_realization(p: SignPattern) -> Realization:
    if p.has_minus():
        raise RealizationError("all-ones realization needs a pattern without '-' cells")
    return Realization(p, ExactMatrix([[int(c.nonzero) for c in row] for row in p.cells]))


def _sample_rows(p: SignPattern, rng: random.Random, bound: int) -> list[list[Fraction]]:
    rows = []
    for prow in p.cells:
        row = []
        for c in prow:
            if c is Sign.ZERO:
                row.append(Fraction(0))
            else:
                x = _random_rational(rng, bound)
                row.append(-x if c is Sign.MINUS else x)
        rows.append(row)
    return rows


def sample_realization(p: SignPattern, cfg: SampleConfig, trial: int = 0) -> Realization:
    """Independent random rational ``num/den`` (both in ``[1, M]``) per nonzero cell."""
    rng = trial_rng(cfg.seed, trial)
    return Realization(p, ExactMatrix(_sample_rows(p, rng, cfg.magnitude)))


def sample_min_rank_realization(p: SignPattern, cfg: SampleConfig, trial: int = 0) -> Realization:
    """Rank-6 realization of the built-in 9x9 pattern.

    Free entries are random; then in each of the four diagonal 2x2 blocks
    the second row is overwritten by ``t`` times the first for a fresh
    positive rational ``t``, which makes every block singular.
    """
    if p != paper_pattern():
        raise RealizationError("minimum-rank sampling is only implemented for the built-in 9x9 pattern")
    rng = trial_rng(cfg.seed, trial)
    rows = _sample_rows(p, rng, cfg.magnitude)
    for b in paper_blocks():
        (r1, r2), cols = b.rows, b.cols
        t = _random_rational(rng, cfg.magnitude)
        for j in cols:
            rows[r2 - 1][j - 1] = t * rows[r1 - 1][j - 1]
    real = Realization(p, ExactMatrix(rows))
    r = rank(real.matrix)
    if r != 6:
        raise AssertionError(f"singular-block realization has rank {r}, expected 6 "
                             f"(seed={cfg.seed}, trial={trial})")
    return real


def force_block_nonsingular(real: Realization, rows: Sequence[int], cols: Sequence[int]) -> Realization:
    """Return ``real`` with a nonsingular ``rows x cols`` 2x2 block.

    If the block is singular, the ``(r2, c2)`` entry is doubled; with all four
    entries nonzero this changes the determinant by ``a*d != 0``.
    """
    (r1, r2), (c1, c2) = rows, cols
    m = real.matrix
    if m[r1, c1] * m[r2, c2] - m[r1, c2] * m[r2, c1] != 0:
        return real
    data = [list(r) for r in m.rows]
    data[r2 - 1][c2 - 1] *= 2
    return Realization(real.pattern, ExactMatrix(data))


def construct_diagonalizable(eigenvalues: Sequence, cfg: SampleConfig, trial: int = 0) -> ExactMatrix:
    """``P D P^-1`` with ``D = diag(eigenvalues)`` and random integer ``P``.

    Entries of ``P`` are uniform in ``[-M, M]``; ``P`` is redrawn until
    invertible, giving up after 1000 attempts.
    """
    n = len(eigenvalues)
    if not 1 <= n <= 8:
        raise ValueError("between 1 and 8 eigenvalues are supported")
    rng = trial_rng(cfg.seed, trial)
    bound = cfg.magnitude
    for _ in range(MAX_RESAMPLES):
        p = ExactMatrix([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)])
        if determinant(p) != 0:
            return p @ ExactMatrix.diagonal([Fraction(e) for e in eigenvalues]) @ inverse(p)
    raise RuntimeError(f"no invertible matrix found in {MAX_RESAMPLES} draws")


def empirical_min_rank(p: SignPattern, cfg: SampleConfig) -> int:
    """Smallest exact rank over sampled realizations (plus all-ones when allowed).

    This is an upper bound on the minimum rank of ``p``.
    """
    ranks = [rank(sample_realization(p, cfg, t).matrix) for t in range(cfg.trials)]
    if not p.has_minus():
        ranks.append(rank(all_ones_realization(p).matrix))
    if not ranks:
        raise ValueError("no realizations to measure: trials is 0 and the pattern has '-' cells")
    return min(ranks)
