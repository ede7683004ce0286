from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import naive_pure_ne, normalized_pds
from ewl_pd.game import (
    BimatrixGame,
    NormalizedPD,
    RawPD,
    STANDARD_PD,
    StrategyProfile,
    affine_transform,
    as_rational,
    best_responses,
    format_rational,
    gamma_family,
    is_symmetric,
    normalize,
    pareto_optimal_profiles,
    pure_nash_equilibria,
)

fracs = st.fractions(min_value=-10, max_value=10, max_denominator=12)


@st.composite
def games(draw, max_size=4):
    n = draw(st.integers(1, max_size))
    m = draw(st.integers(1, max_size))
    return BimatrixGame(tuple(tuple((draw(fracs), draw(fracs)) for _ in range(m)) for _ in range(n)))


def test_standard_pd_normalizes():
    pd = normalize(STANDARD_PD)
    assert (pd.r, pd.p) == (Fraction(3, 5), Fraction(1, 5))


def test_classical_ne_is_mutual_defection(standard):
    game = standard.game()
    assert pure_nash_equilibria(game) == [StrategyProfile(2, 2)]
    assert game.payoff(2, 2) == (Fraction(1, 5), Fraction(1, 5))


def test_gamma_variants(standard):
    g, g1, g2, g3 = gamma_family(standard)
    r, p = standard.r, standard.p
    assert g.player_matrix(1) == ((r, 0), (1, p))
    assert g1.player_matrix(1) == ((1, p), (r, 0))
    assert g2.player_matrix(1) == ((0, r), (p, 1))
    assert g3.player_matrix(1) == ((p, 1), (0, r))
    assert all(is_symmetric(x) for x in (g, g3))


@pytest.mark.parametrize(
    "T,R,P,S,needle",
    [(3, 5, 1, 0, "T > R"), (5, 1, 3, 0, "R > P"), (5, 3, 0, 1, "P > S"), (10, 3, 1, 0, "2R > T + S")],
)
def test_raw_pd_names_failing_inequality(T, R, P, S, needle):
    with pytest.raises(ValueError, match=needle.replace("+", r"\+")):
        RawPD(T, R, P, S)


@pytest.mark.parametrize("r,p", [("2/5", "1/5"), ("3/5", "3/5"), ("3/5", "0"), ("1", "1/5")])
def test_normalized_pd_rejects(r, p):
    with pytest.raises(ValueError):
        NormalizedPD(r=r, p=p)


def test_as_rational_parsing():
    assert as_rational("0.25") == Fraction(1, 4)
    assert as_rational(" 3/5 ") == Fraction(3, 5)
    assert as_rational(7) == 7
    with pytest.raises(TypeError):
        as_rational(0.25)
    with pytest.raises(TypeError):
        as_rational(True)
    with pytest.raises(ValueError):
        as_rational("1/0")
    with pytest.raises(ValueError):
        as_rational("abc")


@given(st.fractions(max_denominator=10**6))
def test_format_round_trip(x):
    assert as_rational(format_rational(x)) == x


def test_payoff_index_errors(standard):
    game = standard.game()
    with pytest.raises(IndexError):
        game.payoff(0, 1)
    with pytest.raises(IndexError):
        game.payoff(1, 3)


def test_ragged_game_rejected():
    with pytest.raises(ValueError):
        BimatrixGame((((1, 1), (2, 2)), ((1, 1),)))


@given(games())
def test_ne_matches_naive_oracle(game):
    assert [tuple(p) for p in pure_nash_equilibria(game)] == naive_pure_ne(game)


@given(games())
def test_json_round_trip(game):
    assert BimatrixGame.from_json(game.to_json()) == game


@given(games(), st.fractions(min_value=Fraction(1, 30), max_value=50, max_denominator=30), fracs)
def test_affine_keeps_ne(game, lam, mu):
    assert pure_nash_equilibria(affine_transform(game, lam, mu)) == pure_nash_equilibria(game)


def test_affine_rejects_nonpositive_scale(standard):
    with pytest.raises(ValueError):
        affine_transform(standard.game(), 0, 1)


@given(games())
def test_best_responses_agree_with_ne(game):
    for prof in pure_nash_equilibria(game):
        assert prof.row in best_responses(game, 1, prof.col)
        assert prof.col in best_responses(game, 2, prof.row)


@given(normalized_pds())
def test_pd_ne_and_pareto(pd):
    game = pd.game()
    assert pure_nash_equilibria(game) == [(2, 2)]
    assert (2, 2) not in pareto_optimal_profiles(game)
    assert (1, 1) in pareto_optimal_profiles(game)
