"""Plot-ready series of equilibrium payoffs.

Nothing here draws; the series are emitted as JSON or CSV for external
plotting tools.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional

from .extensions import ExtensionClass, extension_matrix
from .game import NormalizedPD, RawPD, StrategyProfile, as_rational, format_rational, normalize
from .regions import RegionQuery, ne_condition
from .verify import max_equal_payoff, param_grid

__all__ = ["FigureSeries", "figure_data", "series_to_csv"]

ALL_PROFILES = [StrategyProfile(i, j) for i in range(1, 5) for j in range(1, 5)]
UPPER_PROFILES = [p for p in ALL_PROFILES if p.row <= p.col]


@dataclass
class FigureSeries:
    label: str
    profile: StrategyProfile
    x: list[Fraction] = field(default_factory=list)
    payoff1: list[Fraction] = field(default_factory=list)
    payoff2: list[Fraction] = field(default_factory=list)

    def append(self, x, u1, u2):
        if self.x and x <= self.x[-1]:
            raise ValueError("series x values must be strictly increasing")
        self.x.append(x)
        self.payoff1.append(u1)
        self.payoff2.append(u2)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "profile": list(self.profile),
            "x": [format_rational(v) for v in self.x],
            "payoff1": [format_rational(v) for v in self.payoff1],
            "payoff2": [format_rational(v) for v in self.payoff2],
        }


def _param_axis(cls, pd, step, scale, shift):
    series = []
    grid = param_grid(cls, step)
    for prof in ALL_PROFILES:
        s = FigureSeries(f"({prof.row},{prof.col})", prof)
        for x in grid:
            if ne_condition(RegionQuery(cls, prof, pd, x)).is_ne:
                m = extension_matrix(cls, pd, x)
                u1, u2 = m[prof.row - 1][prof.col - 1], m[prof.col - 1][prof.row - 1]
                s.append(x, u1 * scale + shift, u2 * scale + shift)
        series.append(s)
    return series


def _pr_axis(cls, T, pr_step, param_step, refine_tol, scale_mode):
    """Payoffs at each profile's best equal-equilibrium parameter over (P, R) with S = 0."""
    series = []
    k_max = int(T / pr_step)
    values = [k * pr_step for k in range(1, k_max) if k * pr_step < T]
    for prof in UPPER_PROFILES:
        for P in values:
            s = FigureSeries(f"({prof.row},{prof.col}) P={format_rational(P)}", prof)
            for R in values:
                try:
                    pd = normalize(RawPD(T, R, P, 0))
                except ValueError:
                    continue
                res = max_equal_payoff(cls, pd, prof, param_step=param_step, refine_tol=refine_tol)
                if not res.found:
                    continue
                # supremum-only maxima sit outside the domain; use the last admissible point
                v = res.approach_payoff if res.is_supremum_only else res.payoff_star
                scale = T if scale_mode == "classic" else 1
                s.append(R, v * scale, v * scale)
            series.append(s)
    return series


def figure_data(
    class_id,
    pd: Optional[NormalizedPD] = None,
    axis: Literal["param", "PR"] = "param",
    *,
    param_step=None,
    scale: Literal["normalized", "classic"] = "normalized",
    raw: Optional[RawPD] = None,
    T=5,
    pr_step=Fraction(1, 2),
    refine_tol: float = 1e-9,
) -> list[FigureSeries]:
    """Equilibrium payoff series for one extension class.

    ``axis="param"``: one series per profile, the payoffs against the class
    parameter at every grid value where the profile is an equilibrium
    (empty when it never is). ``axis="PR"``: with ``S = 0`` and ``T`` fixed,
    one series per (profile, P) giving the best equal equilibrium payoff as
    a function of ``R``.

    Classic scale maps normalized payoffs back through ``raw`` (``T - S``
    and ``S``); for the PR axis it multiplies by ``T``.
    """
    cls = ExtensionClass(class_id)
    if scale not in ("normalized", "classic"):
        raise ValueError(f"unknown scale {scale!r}")
    if axis == "param":
        if cls.param_name is None:
            raise ValueError(f"class {cls} has no parameter to plot against")
        if raw is not None:
            pd = normalize(raw)
        if pd is None:
            raise ValueError("param axis needs a PD")
        if scale == "classic":
            if raw is None:
                raise ValueError("classic scale needs the raw payoffs (T, R, P, S)")
            span, shift = raw.T - raw.S, raw.S
        else:
            span, shift = Fraction(1), Fraction(0)
        return _param_axis(cls, pd, param_step, span, shift)
    if axis == "PR":
        T, pr_step = as_rational(T), as_rational(pr_step)
        if T <= 0 or pr_step <= 0:
            raise ValueError("T and the P/R step must be positive")
        return _pr_axis(cls, T, pr_step, param_step, refine_tol, scale)
    raise ValueError(f"unknown axis {axis!r}")


def series_to_csv(series: list[FigureSeries]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["profile", "x", "payoff1", "payoff2"])
    for s in series:
        for x, u1, u2 in zip(s.x, s.payoff1, s.payoff2):
            writer.writerow([s.label, format_rational(x), format_rational(u1), format_rational(u2)])
    return buf.getvalue()
