import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ewl_pd.ewl import (
    ENTANGLED_BASIS,
    OUTCOMES,
    StrategyTriple,
    closed_form_distribution,
    ewl_payoffs,
    outcome_distribution,
    symmetry_check,
    unitary,
)
from ewl_pd.game import BimatrixGame, affine_transform

angles = st.floats(0, 2 * math.pi, exclude_max=True, allow_nan=False)
triples = st.builds(StrategyTriple, st.floats(0, math.pi, allow_nan=False), angles, angles)


def test_basis_orthonormal():
    vecs = np.array([ENTANGLED_BASIS[k] for k in OUTCOMES])
    assert np.allclose(vecs.conj() @ vecs.T, np.eye(4), atol=1e-12)


def test_basis_is_read_only():
    with pytest.raises(ValueError):
        ENTANGLED_BASIS[(1, 1)][0] = 0


def test_identity_strategies_give_cooperation():
    s = StrategyTriple(0.0)
    assert outcome_distribution(unitary(s), unitary(s)).p11 == pytest.approx(1.0)


def test_flip_gives_defection():
    s = StrategyTriple(math.pi)
    assert outcome_distribution(unitary(s), unitary(s)).p22 == pytest.approx(1.0)


@pytest.mark.parametrize("bad", [dict(theta=-0.1), dict(theta=4.0), dict(theta=1, alpha=2 * math.pi), dict(theta=1, beta=-1)])
def test_triple_ranges(bad):
    with pytest.raises(ValueError):
        StrategyTriple(**bad)


def test_non_unitary_rejected():
    with pytest.raises(ValueError):
        outcome_distribution(np.array([[2, 0], [0, 1]]), np.eye(2))


@given(triples, triples)
def test_distribution_normalized_and_paths_agree(s1, s2):
    basis = outcome_distribution(unitary(s1), unitary(s2))
    closed = closed_form_distribution(s1, s2)
    assert abs(sum(basis) - 1) <= 1e-12
    assert np.allclose(basis, closed, atol=1e-12)


@settings(max_examples=50)
@given(triples, triples)
def test_symmetry_on_pd(standard_game, s1, s2):
    assert symmetry_check(standard_game, s1, s2)


@pytest.fixture(scope="module")
def standard_game():
    from ewl_pd.game import STANDARD_PD, normalize

    return normalize(STANDARD_PD).game()


@given(triples, triples)
def test_affine_payoffs(s1, s2):
    game = BimatrixGame.from_matrices([[3, 0], [5, 1]], [[3, 5], [0, 1]])
    moved = affine_transform(game, 2, -1)
    for b, m in zip(ewl_payoffs(game, s1, s2), ewl_payoffs(moved, s1, s2)):
        assert m == pytest.approx(2 * b - 1, abs=1e-9)


def test_rejects_wrong_shapes(standard_game):
    s = StrategyTriple(1.0)
    with pytest.raises(ValueError):
        ewl_payoffs(BimatrixGame(((((1, 1)),),)), s, s)
    with pytest.raises(ValueError):
        ewl_payoffs(standard_game, s, s, method="magic")
    with pytest.raises(ValueError):
        symmetry_check(BimatrixGame.from_matrices([[1, 0], [0, 0]], [[0, 0], [0, 0]]), s, s)
