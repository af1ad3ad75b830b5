"""The 9x9 pattern, its all-ones realization, and why rank 6 is the minimum.

Run:  python demos/01_pattern_and_rank.py
"""
from signrank import (
    SampleConfig,
    all_ones_realization,
    empirical_min_rank,
    monomial_minor_bound,
    paper_pattern,
    rank,
    sample_realization,
    term_rank,
)

p = paper_pattern()
print(p)
print("nonzero cells:", len(p.support()), " term rank:", term_rank(p))

ones = all_ones_realization(p).matrix
print("rank of the all-ones realization:", rank(ones))

# Lower bound valid for every realization: a 6x6 subpattern with a single
# perfect matching has a determinant that is one signed monomial.
k, cert = monomial_minor_bound(p)
print(f"every realization has rank >= {k}")
print("  rows", cert.rows, "cols", cert.cols, "matching", cert.matching, "sign", cert.sign)

# Upper bound from realizations actually seen.
cfg = SampleConfig(seed=0, trials=20)
print("smallest rank over 20 random samples + all-ones:", empirical_min_rank(p, cfg))
print("ranks of a few random samples:", [rank(sample_realization(p, cfg, t).matrix) for t in range(5)])
