from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from signrank.linalg import (
    ExactMatrix,
    determinant,
    is_diagonalizable,
    max_nonsingular_principal_size,
    principal_minors,
    rank,
)
from signrank.pattern import Sign, SignPattern, paper_blocks, parse_pattern
from signrank.realize import (
    Realization,
    RealizationError,
    SampleConfig,
    all_ones_realization,
    construct_diagonalizable,
    empirical_min_rank,
    force_block_nonsingular,
    sample_min_rank_realization,
    sample_realization,
    splitmix64,
)
from signrank.structural import monomial_minor_bound


def test_all_ones(paper):
    r = all_ones_realization(paper)
    assert rank(r.matrix) == 6
    two = parse_pattern("+ +\n+ +")
    assert all_ones_realization(two).matrix == ExactMatrix([[1, 1], [1, 1]])
    assert rank(all_ones_realization(two).matrix) == 1
    with pytest.raises(RealizationError):
        all_ones_realization(parse_pattern("+ -\n0 +"))


def test_sample_realization_determinism_and_rank(paper):
    cfg = SampleConfig(seed=7)
    a = sample_realization(paper, cfg, 3)
    assert a == sample_realization(paper, cfg, 3)
    assert a != sample_realization(paper, cfg, 4)
    assert rank(a.matrix) >= 6
    zero = parse_pattern("0 0\n0 0")
    assert sample_realization(zero, cfg).matrix.is_zero()


def test_sample_respects_magnitude_and_signs():
    p = parse_pattern("+ - 0\n- + +\n0 0 -")
    cfg = SampleConfig(seed=1, magnitude=3)
    for t in range(20):
        m = sample_realization(p, cfg, t).matrix
        for row in m.rows:
            for x in row:
                if x:
                    assert abs(x.numerator) <= 3 and x.denominator <= 3


def test_realization_rejects_sign_mismatch():
    p = parse_pattern("+ 0\n0 -")
    with pytest.raises(RealizationError):
        Realization(p, ExactMatrix([[1, 0], [0, 1]]))
    with pytest.raises(RealizationError):
        Realization(p, ExactMatrix([[1, 1], [0, -1]]))
    with pytest.raises(RealizationError):
        Realization(p, ExactMatrix([[1]]))


def test_splitmix_reference_values():
    # first two outputs of the reference SplitMix64 stream started at state 0
    assert splitmix64(0) == 0xE220A8397B1DCDAF
    assert splitmix64(0x9E3779B97F4A7C15) == 0x6E789E6AA1B965F4


def test_min_rank_witness_properties(paper):
    cfg = SampleConfig(seed=3)
    for t in range(15):
        m = sample_min_rank_realization(paper, cfg, t).matrix
        for b in paper_blocks():
            (r1, r2), (c1, c2) = b.rows, b.cols
            assert m[r1, c1] * m[r2, c2] - m[r1, c2] * m[r2, c1] == 0
        assert rank(m) == 6
        assert all(d == 0 for _, d in principal_minors(m, 6))
        assert max_nonsingular_principal_size(m) == 5
        assert not is_diagonalizable(m)


def test_min_rank_only_for_paper_pattern():
    with pytest.raises(RealizationError):
        sample_min_rank_realization(parse_pattern("+ +\n+ +"), SampleConfig())


def test_bounds_bracket_min_rank(paper):
    cfg = SampleConfig(seed=0, trials=20)
    k, _ = monomial_minor_bound(paper)
    for t in range(cfg.trials):
        assert rank(sample_realization(paper, cfg, t).matrix) >= k
    assert empirical_min_rank(paper, cfg) == k == 6


def test_empirical_min_rank_examples():
    assert empirical_min_rank(parse_pattern("+ +\n+ +"), SampleConfig(trials=10)) == 1
    ident = SignPattern.from_support(4, [(i, i) for i in range(1, 5)])
    assert empirical_min_rank(ident, SampleConfig(trials=3)) == 4
    with pytest.raises(ValueError):
        empirical_min_rank(parse_pattern("- 0\n0 -"), SampleConfig(trials=0))


def test_rank_six_iff_all_blocks_singular(paper):
    """Observed, not claimed by the source: on generic samples any nonsingular block lifts rank to >= 7."""
    cfg = SampleConfig(seed=17)
    for t in range(30):
        m = sample_realization(paper, cfg, t).matrix
        singular = [m[b.rows[0], b.cols[0]] * m[b.rows[1], b.cols[1]]
                    - m[b.rows[0], b.cols[1]] * m[b.rows[1], b.cols[0]] == 0 for b in paper_blocks()]
        assert (rank(m) == 6) == all(singular)
        if not all(singular):
            assert rank(m) >= 7
    for t in range(10):
        assert rank(sample_min_rank_realization(paper, cfg, t).matrix) == 6


def test_force_block_nonsingular(paper):
    m = sample_min_rank_realization(paper, SampleConfig(seed=1)).matrix
    real = Realization(paper, m)
    fixed = force_block_nonsingular(real, (1, 2), (1, 2)).matrix
    assert fixed[1, 1] * fixed[2, 2] - fixed[1, 2] * fixed[2, 1] != 0
    assert rank(fixed) >= 7


def test_construct_diagonalizable_examples():
    cfg = SampleConfig(seed=4, magnitude=3)
    m = construct_diagonalizable([1, 2, 3], cfg)
    assert m.shape == (3, 3) and is_diagonalizable(m)
    assert rank(construct_diagonalizable([0, 0, 5], cfg)) == 1
    for t in range(10):
        assert max_nonsingular_principal_size(construct_diagonalizable([0, 1, 1, 2], cfg, t)) == 3


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=1, max_size=6), st.integers(0, 2**64 - 1))
def test_diagonalizable_criterion(eigs, seed):
    m = construct_diagonalizable(eigs, SampleConfig(seed=seed, magnitude=3))
    assert is_diagonalizable(m)
    r = rank(m)
    assert r == sum(e != 0 for e in eigs)
    assert max_nonsingular_principal_size(m) == r


def test_sample_config_validation():
    for bad in (dict(seed=-1), dict(seed=2**64), dict(magnitude=0), dict(trials=-1)):
        with pytest.raises(ValueError):
            SampleConfig(**bad)
    assert SampleConfig(trials=0).trials == 0
