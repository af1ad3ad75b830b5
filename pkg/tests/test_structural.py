import json
from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_monomial_bound, generic_det_value, perfect_matchings
from signrank.linalg import ExactMatrix, determinant
from signrank.pattern import Block, PatternError, Sign, SignPattern, paper_blocks, parse_pattern
from signrank.realize import SampleConfig, sample_min_rank_realization, sample_realization
from signrank.structural import (
    BlockPivotCertificate,
    Confinement,
    MonomialMinorCertificate,
    SparsePoly,
    block_pivot_certificate,
    certificate_from_dict,
    collinearity_confinement,
    count_matchings,
    monomial_minor_bound,
    permutation_sign,
    pigeonhole_cover,
    pigeonhole_witness,
    symbolic_minor,
    term_rank,
)

P, Z = Sign.PLUS, Sign.ZERO

sign_grids = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.sampled_from([P, Z, Z, Sign.MINUS]), min_size=n, max_size=n),
                       min_size=n, max_size=n)
).map(lambda rows: tuple(map(tuple, rows)))


def pat(rows):
    return SignPattern(tuple(map(tuple, rows)))


def nonzero(grid):
    return [[c.nonzero for c in row] for row in grid]


@pytest.fixture(scope="module")
def paper_unique_minors(paper):
    """Exhaustive oracle over all C(9,k)^2 subpattern pairs for k = 6..9."""
    support = set(paper.support())
    return {k: brute_monomial_bound(support, 9, k) for k in (9, 8, 7, 6)}


# -- matchings ----------------------------------------------------------------

def test_term_rank_examples(paper):
    assert term_rank(paper) == 9
    assert term_rank(pat([[Z] * 3] * 3)) == 0
    assert term_rank(pat([[P, Z], [P, P]])) == 2


def test_count_matchings_examples():
    assert count_matchings(((P, Z), (P, P)), cap=2) == (1, (0, 1))
    count, m = count_matchings(((P, P), (P, P)), cap=2)
    assert count == 2 and sorted(m) == [0, 1]
    assert count_matchings(((Z, P), (Z, P)), cap=2) == (0, None)


@given(sign_grids)
def test_count_matchings_matches_permutation_brute_force(grid):
    brute = perfect_matchings(nonzero(grid))
    count, m = count_matchings(grid, cap=2)
    assert count == min(len(brute), 2)
    assert (count == 1) == (len(brute) == 1)
    if brute:
        assert m in brute
    else:
        assert m is None
    assert count_matchings(grid, cap=200)[0] == len(brute)


@given(sign_grids)
def test_term_rank_bounds(grid):
    p = pat(grid)
    k, cert = monomial_minor_bound(p)
    assert k <= term_rank(p) <= p.n
    if cert is not None:
        assert symbolic_minor(p, cert.rows, cert.cols) == SparsePoly({cert.monomial(): cert.sign})


# -- monomial minor bound ----------------------------------------------------

def test_monomial_bound_paper_against_exhaustive_oracle(paper, paper_unique_minors):
    k, cert = monomial_minor_bound(paper)
    assert k == 6
    assert not paper_unique_minors[9] and not paper_unique_minors[8] and not paper_unique_minors[7]
    hits = paper_unique_minors[6]
    assert len(hits) == 256
    # the search returns the first hit in (rows, cols) lexicographic order
    assert (tuple(cert.rows), tuple(cert.cols)) == hits[0] == ((1, 2, 3, 5, 6, 8), (1, 3, 5, 6, 7, 8))
    assert ((1, 2, 4, 5, 6, 8), (1, 3, 5, 6, 8, 9)) in hits
    assert cert.matching == ((1, 5), (2, 1), (3, 3), (5, 7), (6, 6), (8, 8))
    assert cert.sign == -1


def test_monomial_certificate_random_realizations(paper):
    _, cert = monomial_minor_bound(paper)
    cfg = SampleConfig(seed=11)
    for t in range(10):
        m = sample_realization(paper, cfg, t).matrix
        minor = determinant(m.submatrix(cert.rows, cert.cols))
        assert minor == cert.predicted_minor(m) != 0


def test_monomial_bound_small():
    assert monomial_minor_bound(pat([[P, Z], [P, P]]))[0] == 2
    k, cert = monomial_minor_bound(pat([[P, P], [P, P]]))
    assert k == 1 and cert.rows == (1,) and cert.cols == (1,)
    assert monomial_minor_bound(pat([[Z, Z], [Z, Z]])) == (0, None)


def test_monomial_certificate_soundness_100(paper):
    _, cert = monomial_minor_bound(paper)
    cfg = SampleConfig(seed=2024, magnitude=7)
    for t in range(100):
        m = sample_realization(paper, cfg, t).matrix
        assert determinant(m.submatrix(cert.rows, cert.cols)) == cert.predicted_minor(m) != 0


# -- symbolic minors ----------------------------------------------------------

def test_symbolic_minor_examples(paper):
    assert symbolic_minor(paper, [1, 2], [1, 2]) == SparsePoly({((1, 1), (2, 2)): 1, ((1, 2), (2, 1)): -1})
    assert symbolic_minor(paper, [5], [6]).is_zero()
    _, cert = monomial_minor_bound(paper)
    poly = symbolic_minor(paper, cert.rows, cert.cols)
    assert len(poly) == 1 and abs(next(iter(poly.terms.values()))) == 1


def test_symbolic_minor_guards(paper):
    with pytest.raises(PatternError):
        symbolic_minor(paper, [1, 2], [1, 2, 3])
    with pytest.raises(PatternError):
        symbolic_minor(paper, range(1, 10), range(1, 10))


@settings(max_examples=60)
@given(st.integers(1, 6).flatmap(
    lambda n: st.tuples(
        st.lists(st.lists(st.sampled_from([P, Z, Sign.MINUS]), min_size=n, max_size=n), min_size=n, max_size=n),
        st.lists(st.integers(1, 9), min_size=n * n, max_size=n * n))))
def test_symbolic_minor_matches_numeric(data):
    rows, vals = data
    p = pat(rows)
    n = p.n
    values = {}
    it = iter(vals)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            v = F(next(it))
            values[(i, j)] = -v if p[i, j] is Sign.MINUS else (v if p[i, j] is P else F(0))
    m = ExactMatrix([[values[(i, j)] for j in range(1, n + 1)] for i in range(1, n + 1)])
    idx = list(range(1, n + 1))
    poly = symbolic_minor(p, idx, idx)
    assert poly.evaluate(m) == determinant(m)
    support = set(p.support())
    assert poly.evaluate(m) == generic_det_value(support, idx, idx, values)
    # distinct matchings give distinct monomials, so nothing cancels
    assert len(poly) == len(perfect_matchings(nonzero(p.cells)))


def test_sparse_poly_algebra():
    x, y = SparsePoly.variable(1, 1), SparsePoly.variable(1, 2)
    assert (x + y) - y == x
    assert (x * y) == SparsePoly({((1, 2), (1, 1)): 1})
    assert (x - x).is_zero()
    assert (x * x).terms == {((1, 1), (1, 1)): 1}


# -- block pivot certificates ------------------------------------------------

def test_block_pivot_paper_blocks(paper):
    for b in paper_blocks():
        cert = block_pivot_certificate(paper, b, 7)
        assert cert is not None and cert.size == 7
        assert set(b.rows) <= set(cert.rows) and set(b.cols) <= set(cert.cols)


def test_block_pivot_stated_witness(paper):
    poly = symbolic_minor(paper, [1, 2, 3, 4, 5, 6, 8], [1, 2, 3, 5, 6, 8, 9])
    cofactor = ((3, 5), (4, 3), (5, 9), (6, 6), (8, 8))
    diag = tuple(sorted(((1, 1), (2, 2)) + cofactor))
    anti = tuple(sorted(((1, 2), (2, 1)) + cofactor))
    assert len(poly) == 2
    assert poly.terms[diag] == -poly.terms[anti] and abs(poly.terms[diag]) == 1


def test_block_pivot_errors(paper):
    b = Block((1, 2), (1, 2))
    with pytest.raises(PatternError):
        block_pivot_certificate(paper, b, 10)
    with pytest.raises(PatternError):
        block_pivot_certificate(paper, Block((1, 2), (1, 5)), 7)


def test_block_pivot_none_when_no_factorization():
    p = parse_pattern("+ + +\n+ + +\n+ + +")
    assert block_pivot_certificate(p, Block((1, 2), (1, 2)), 3) is None


def test_block_pivot_soundness(paper):
    cfg = SampleConfig(seed=99)
    for b in paper_blocks():
        cert = block_pivot_certificate(paper, b, 7)
        (r1, r2), (c1, c2) = b.rows, b.cols
        for t in range(100):
            m = sample_realization(paper, cfg, t).matrix
            assert determinant(m.submatrix(cert.rows, cert.cols)) == cert.predicted_minor(m)
            # make the block singular: second block row := first block row * ratio
            data = [list(r) for r in m.rows]
            ratio = data[r2 - 1][c1 - 1] / data[r1 - 1][c1 - 1]
            data[r2 - 1][c2 - 1] = ratio * data[r1 - 1][c2 - 1]
            ms = ExactMatrix(data)
            assert ms[r1, c1] * ms[r2, c2] - ms[r1, c2] * ms[r2, c1] == 0
            assert determinant(ms.submatrix(cert.rows, cert.cols)) == cert.predicted_minor(ms) == 0


# -- confinement ----------------------------------------------------------------

def test_confinement_examples(paper):
    kinds = [collinearity_confinement(paper, b) for b in paper_blocks()]
    assert kinds == [Confinement.COLS, Confinement.COLS, Confinement.ROWS, Confinement.ROWS]
    assert collinearity_confinement(pat([[P, P], [P, P]]), Block((1, 2), (1, 2))) is Confinement.BOTH
    full = parse_pattern("+ + +\n+ + +\n+ + +")
    assert collinearity_confinement(full, Block((1, 2), (1, 2))) is Confinement.NONE
    with pytest.raises(PatternError):
        collinearity_confinement(paper, Block((1, 5), (1, 2)))


def test_confinement_forces_singular_principal_submatrices(paper):
    cfg = SampleConfig(seed=5, trials=10)
    for t in range(cfg.trials):
        m = sample_min_rank_realization(paper, cfg, t).matrix
        for b in paper_blocks():
            rest = [i for i in range(1, 10) if i not in b.rows]
            for extra in range(0, 8):
                for others in combinations(rest, extra):
                    s = sorted(b.rows + others)
                    assert determinant(m.submatrix(s, s)) == 0


# -- pigeonhole -------------------------------------------------------------------

def test_pigeonhole_examples():
    blocks = paper_blocks()
    assert pigeonhole_cover(9, blocks, 6)
    assert not pigeonhole_cover(9, blocks, 5)
    assert pigeonhole_witness(9, blocks, 5) == (1, 3, 5, 6, 8)
    assert not pigeonhole_cover(2, [], 1)


def test_pigeonhole_brute_force():
    blocks = paper_blocks()
    pairs = [set(b.rows) for b in blocks]
    for k in range(1, 10):
        brute = all(any(pr <= set(s) for pr in pairs) for s in combinations(range(1, 10), k))
        assert pigeonhole_cover(9, blocks, k) == brute == (k >= 6)


def test_pigeonhole_errors():
    with pytest.raises(PatternError):
        pigeonhole_cover(9, [Block((1, 2), (1, 2)), Block((2, 3), (2, 3))], 4)
    with pytest.raises(PatternError):
        pigeonhole_cover(9, [Block((1, 2), (3, 4))], 4)


# -- serialization ----------------------------------------------------------------

def test_certificate_json_round_trip(paper):
    _, mono = monomial_minor_bound(paper)
    piv = block_pivot_certificate(paper, paper_blocks()[2], 7)
    for cert in (mono, piv):
        d = json.loads(json.dumps(cert.to_dict()))
        assert certificate_from_dict(d) == cert
    assert mono.to_dict()["kind"] == "monomial-minor"
    assert set(piv.to_dict()) == {"kind", "rows", "cols", "monomial", "sign", "block"}
    assert isinstance(certificate_from_dict(piv.to_dict()), BlockPivotCertificate)
    assert isinstance(certificate_from_dict(mono.to_dict()), MonomialMinorCertificate)


def test_permutation_sign():
    assert permutation_sign([0, 1, 2]) == 1
    assert permutation_sign([1, 0, 2]) == -1
    assert permutation_sign([1, 2, 0]) == 1
