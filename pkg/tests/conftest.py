from fractions import Fraction

import pytest
from hypothesis import strategies as st

from ewl_pd.game import STANDARD_PD, NormalizedPD, normalize


@pytest.fixture
def standard():
    return normalize(STANDARD_PD)


@st.composite
def normalized_pds(draw, max_den=40):
    den = draw(st.integers(min_value=3, max_value=max_den))
    r_num = draw(st.integers(min_value=den // 2 + 1, max_value=den - 1))
    p_num = draw(st.integers(min_value=1, max_value=r_num - 1))
    return NormalizedPD(r=Fraction(r_num, den), p=Fraction(p_num, den))


def unit_fractions(lo_open=False, hi_open=False, max_den=64):
    lo = 1 if lo_open else 0

    @st.composite
    def draw_one(draw):
        den = draw(st.integers(min_value=2, max_value=max_den))
        hi = den - 1 if hi_open else den
        return Fraction(draw(st.integers(min_value=lo, max_value=hi)), den)

    return draw_one()


def naive_pure_ne(game):
    """Textbook double loop, kept independent of the library's vectorised version."""
    out = []
    n, m = game.shape
    for i in range(n):
        for j in range(m):
            u1, u2 = game.entries[i][j]
            if all(game.entries[k][j][0] <= u1 for k in range(n)) and all(
                game.entries[i][k][1] <= u2 for k in range(m)
            ):
                out.append((i + 1, j + 1))
    return out
