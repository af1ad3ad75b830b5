"""Exact verification tools for sign pattern matrices.

Built around a 9x9 pattern with nonzero diagonal whose minimum-rank
realizations all have vanishing 6x6 principal minors and so are never
diagonalizable over C.
"""

from .linalg import (
    ExactMatrix,
    UniPoly,
    char_poly,
    determinant,
    is_diagonalizable,
    max_nonsingular_principal_size,
    principal_minors,
    rank,
    squarefree_part,
)
from .pattern import Block, IndexSet, Sign, SignPattern, paper_blocks, paper_pattern, parse_pattern, subpattern
from .realize import (
    Realization,
    SampleConfig,
    all_ones_realization,
    construct_diagonalizable,
    empirical_min_rank,
    sample_min_rank_realization,
    sample_realization,
)
from .structural import (
    Confinement,
    SparsePoly,
    block_pivot_certificate,
    collinearity_confinement,
    count_matchings,
    monomial_minor_bound,
    pigeonhole_cover,
    symbolic_minor,
    term_rank,
)
from .verify import verify_paper_claims

__version__ = "0.1.0"
