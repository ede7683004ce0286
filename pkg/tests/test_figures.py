import csv
import io
from fractions import Fraction as F

import pytest

from ewl_pd.figures import FigureSeries, figure_data, series_to_csv
from ewl_pd.game import STANDARD_PD, NormalizedPD, StrategyProfile
from ewl_pd.regions import RegionQuery, ne_condition

STD = NormalizedPD(r=F(3, 5), p=F(1, 5))


def by_profile(series, i, j):
    return [s for s in series if tuple(s.profile) == (i, j)]


def test_a1_param_axis():
    series = figure_data("A1", STD)
    assert len(series) == 16
    s22 = by_profile(series, 2, 2)[0]
    assert s22.x == [F(1)] and s22.payoff1 == [F(1, 5)]
    assert by_profile(series, 1, 1)[0].x == []


def test_classic_scale_needs_raw():
    with pytest.raises(ValueError):
        figure_data("A1", STD, scale="classic")
    series = figure_data("A1", raw=STANDARD_PD, scale="classic")
    assert by_profile(series, 2, 2)[0].payoff1 == [F(1)]


def test_points_lie_in_region():
    for cls in ("A1", "C", "E2"):
        for s in figure_data(cls, STD):
            for x in s.x:
                assert ne_condition(RegionQuery(cls, s.profile, STD, x)).is_ne


def test_b_rejected_on_param_axis():
    with pytest.raises(ValueError):
        figure_data("B", STD)


def test_pr_axis_standard_point():
    series = figure_data("A1", axis="PR", scale="classic", refine_tol=1e-6)
    s = [x for x in series if tuple(x.profile) == (2, 3) and x.label.endswith("P=1/1")][0]
    assert s.payoff1[s.x.index(F(3))] == F(5, 2)


def test_series_x_increasing():
    s = FigureSeries("x", StrategyProfile(2, 2))
    s.append(F(1, 2), 0, 0)
    with pytest.raises(ValueError):
        s.append(F(1, 2), 0, 0)


def test_csv_matches_json():
    series = figure_data("E1", STD)
    rows = list(csv.DictReader(io.StringIO(series_to_csv(series))))
    flat = [
        (js["label"], x, u1, u2)
        for js in (s.to_json() for s in series)
        for x, u1, u2 in zip(js["x"], js["payoff1"], js["payoff2"])
    ]
    assert [(r["profile"], r["x"], r["payoff1"], r["payoff2"]) for r in rows] == flat
