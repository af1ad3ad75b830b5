"""Rank-6 realizations: vanishing 6x6 principal minors and a Jordan block at 0.

Run:  python demos/03_principal_minors_and_diagonalizability.py
"""
from signrank import (
    SampleConfig,
    char_poly,
    construct_diagonalizable,
    is_diagonalizable,
    max_nonsingular_principal_size,
    paper_pattern,
    principal_minors,
    rank,
    sample_min_rank_realization,
    squarefree_part,
)

p = paper_pattern()
cfg = SampleConfig(seed=0)
b = sample_min_rank_realization(p, cfg).matrix
print(b)
print("rank:", rank(b))

minors6 = principal_minors(b, 6)
print(f"nonzero 6x6 principal minors: {sum(d != 0 for _, d in minors6)} of {len(minors6)}")
print("largest nonsingular principal submatrix:", max_nonsingular_principal_size(b))

cp = char_poly(b)
print("char poly:", cp)
print("squarefree part:", squarefree_part(cp))
print("diagonalizable over C:", is_diagonalizable(b))

# Contrast: a diagonalizable matrix of rank 3 always has a nonzero 3x3
# principal minor.
d = construct_diagonalizable([0, 1, 1, 2], cfg)
print("\nP diag(0,1,1,2) P^-1: rank", rank(d), " largest nonsingular principal:",
      max_nonsingular_principal_size(d), " diagonalizable:", is_diagonalizable(d))
