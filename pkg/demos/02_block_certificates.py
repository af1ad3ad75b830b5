"""Why a rank-6 realization must have four singular 2x2 blocks.

Run:  python demos/02_block_certificates.py
"""
from signrank import (
    SampleConfig,
    block_pivot_certificate,
    collinearity_confinement,
    paper_blocks,
    paper_pattern,
    pigeonhole_cover,
    rank,
    sample_realization,
    symbolic_minor,
)
from signrank.realize import force_block_nonsingular
from signrank.structural import pigeonhole_witness

p = paper_pattern()

for b in paper_blocks():
    cert = block_pivot_certificate(p, b, 7)
    print(f"block {b}: {collinearity_confinement(p, b)}")
    print(f"  7x7 minor rows={cert.rows!r} cols={cert.cols!r}")
    print(f"  expands to {symbolic_minor(p, cert.rows, cert.cols)}")

# With a nonsingular block, the certified minor is nonzero, so rank >= 7.
real = sample_realization(p, SampleConfig(seed=1))
m = force_block_nonsingular(real, (1, 2), (1, 2)).matrix
print("rank of a sample with block {1,2} nonsingular:", rank(m))

# Singular blocks each contribute at most one index to a nonsingular
# principal submatrix; four blocks plus index 5 leave room for only five.
blocks = paper_blocks()
print("every 6-subset contains a whole block:", pigeonhole_cover(9, blocks, 6))
print("a 5-subset avoiding all blocks:", pigeonhole_witness(9, blocks, 5))
