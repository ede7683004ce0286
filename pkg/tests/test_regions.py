from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from conftest import normalized_pds, unit_fractions
from ewl_pd.extensions import ExtensionClass, ExtensionSpec, build_extension
from ewl_pd.game import NormalizedPD, StrategyProfile, pure_nash_equilibria
from ewl_pd.regions import RegionQuery, RegionVerdict, ne_condition, ne_region_table

ALL = [StrategyProfile(i, j) for i in range(1, 5) for j in range(1, 5)]
STD = NormalizedPD(r=F(3, 5), p=F(1, 5))


def verdict(cls, prof, pd, x=None):
    return ne_condition(RegionQuery(cls, prof, pd, x))


@pytest.mark.parametrize(
    "cls,prof,pd,x,expected",
    [
        ("A1", (2, 2), STD, F(1), True),
        ("A1", (1, 1), STD, F(1, 2), False),
        ("B", (2, 2), STD, None, False),
        ("B", (3, 3), STD, None, True),
        ("C", (2, 2), NormalizedPD(r=F(4, 5), p=F(3, 5)), F(1, 2), True),
        ("C", (3, 3), STD, F(1, 2), True),
        ("E1", (4, 4), STD, F(3, 4), True),
        ("A1", (3, 4), STD, F(1, 4), False),
    ],
)
def test_documented_verdicts(cls, prof, pd, x, expected):
    assert verdict(cls, prof, pd, x).is_ne is expected


@pytest.mark.parametrize(
    "cls,x,expected",
    [("D1", F(1, 3), [(2, 2)]), ("D2", F(2, 3), []), ("E2", F(1, 4), [(3, 3)]), ("E1", F(1, 4), [])],
)
def test_documented_tables(cls, x, expected):
    assert ne_region_table(cls, STD, x) == expected


def test_verdict_consistency():
    with pytest.raises(ValueError):
        RegionVerdict(True)
    with pytest.raises(ValueError):
        RegionVerdict(False, "branch 1")
    v = verdict("A1", (2, 2), STD, F(1))
    assert v.active_branch.startswith("branch")


def test_query_validation():
    with pytest.raises(ValueError):
        RegionQuery("A1", (5, 1), STD, F(1, 2))
    with pytest.raises(ValueError):
        RegionQuery("C", (2, 2), STD, F(0))
    with pytest.raises(ValueError):
        RegionQuery("B", (2, 2), STD, F(1, 2))


def _param_for(cls, a, t):
    name = ExtensionClass(cls).param_name
    return None if name is None else (a if name == "a" else t)


@settings(max_examples=200, deadline=None)
@given(normalized_pds(), unit_fractions(max_den=48), unit_fractions(True, True, max_den=48))
def test_regions_match_enumeration(pd, a, t):
    for cls in ExtensionClass:
        x = _param_for(cls, a, t)
        oracle = pure_nash_equilibria(build_extension(ExtensionSpec(cls, x), pd))
        assert ne_region_table(cls, pd, x) == oracle, (cls, pd, x)


@given(normalized_pds(), unit_fractions(), unit_fractions(True, True))
def test_profile_swap_symmetry(pd, a, t):
    for cls in ExtensionClass:
        x = _param_for(cls, a, t)
        for i, j in ALL:
            assert verdict(cls, (i, j), pd, x).is_ne == verdict(cls, (j, i), pd, x).is_ne


@given(normalized_pds(), unit_fractions())
def test_a2_duality(pd, a):
    swap = {1: 1, 2: 2, 3: 4, 4: 3}
    for i, j in ALL:
        assert verdict("A2", (i, j), pd, a).is_ne == verdict("A1", (swap[i], swap[j]), pd, a).is_ne


@given(normalized_pds(), unit_fractions(), unit_fractions(True, True))
def test_first_strategy_never_in_equilibrium(pd, a, t):
    for cls in ExtensionClass:
        x = _param_for(cls, a, t)
        for k in range(1, 5):
            assert not verdict(cls, (1, k), pd, x).is_ne
            assert not verdict(cls, (k, 1), pd, x).is_ne


def test_exact_boundaries():
    # p = (1 + r)/3 exactly: B (2,2) and (2,3) both hold
    pd = NormalizedPD(r=F(3, 5), p=F(8, 15))
    assert verdict("B", (2, 2), pd).is_ne and verdict("B", (2, 3), pd).is_ne
    # A1 (3,4) at a = 1/4 needs r <= 1 - 3p and p < 1/6
    pd = NormalizedPD(r=F(7, 10), p=F(1, 10))
    assert verdict("A1", (3, 4), pd, F(1, 4)).is_ne
    assert not verdict("A1", (3, 4), pd, F(1, 4) + F(1, 10**9)).is_ne


def test_c22_at_p_half_excluded():
    pd = NormalizedPD(r=F(3, 4), p=F(1, 2))
    for k in range(1, 64):
        t = F(k, 64)
        if t != F(1, 2):
            assert not verdict("C", (2, 2), pd, t).is_ne
