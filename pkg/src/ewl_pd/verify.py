"""Cross-checks between the closed-form regions and brute force.

The brute-force side builds each extension game exactly and enumerates its
pure equilibria; the closed-form side evaluates the region predicates. A
sweep compares the two at every grid point. The module also hosts the
structural checks (symmetry, affine invariance, EWL dual path) and the
search for the best equal equilibrium payoff per profile.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .ewl import StrategyTriple, ewl_payoffs
from .extensions import (
    ExtensionClass,
    ExtensionSpec,
    build_extension,
    extension_matrix,
    param_in_domain,
)
from .game import (
    BimatrixGame,
    NormalizedPD,
    StrategyProfile,
    affine_transform,
    as_rational,
    format_rational,
    is_symmetric,
    pure_nash_equilibria,
)
from .regions import RegionQuery, ne_condition, ne_region_table

__all__ = [
    "DEFAULT_SEED",
    "DualPathResult",
    "ExtremalResult",
    "GridSpec",
    "Mismatch",
    "MismatchReport",
    "check_affine_ne_invariance",
    "check_ewl_dual_path",
    "check_extension_symmetry",
    "max_equal_payoff",
    "param_grid",
    "random_strategy",
    "sweep_verify",
]

DEFAULT_SEED = 20240917
DEFAULT_PR_STEP = Fraction(1, 20)
DEFAULT_A_STEP = Fraction(1, 32)
DEFAULT_T_STEP = Fraction(1, 64)


def param_grid(cls: ExtensionClass, step: Optional[Fraction] = None) -> list[Optional[Fraction]]:
    """Class parameter values on a uniform grid (``[0, 1]`` for ``a``, ``(0, 1)`` for ``t``)."""
    cls = ExtensionClass(cls)
    if cls.param_name is None:
        return [None]
    if step is None:
        step = DEFAULT_A_STEP if cls.param_name == "a" else DEFAULT_T_STEP
    step = as_rational(step)
    if step <= 0:
        raise ValueError("grid step must be positive")
    values, k = [], 0
    while k * step <= 1:
        x = k * step
        if param_in_domain(cls, x):
            values.append(x)
        k += 1
    return values


@dataclass(frozen=True)
class GridSpec:
    """Rational grid over (p, r) and the class parameter.

    ``pd`` pins the sweep to a single game instead of the (p, r) grid.
    ``param_step`` of ``None`` selects the class default (1/32 for ``a``,
    1/64 for ``t``).
    """

    p_step: Fraction = DEFAULT_PR_STEP
    r_step: Fraction = DEFAULT_PR_STEP
    param_step: Optional[Fraction] = None
    pd: Optional[NormalizedPD] = None

    def __post_init__(self):
        for name in ("p_step", "r_step"):
            value = as_rational(getattr(self, name))
            if value <= 0:
                raise ValueError(f"{name} must be positive")
            object.__setattr__(self, name, value)
        if self.param_step is not None:
            step = as_rational(self.param_step)
            if step <= 0:
                raise ValueError("param_step must be positive")
            object.__setattr__(self, "param_step", step)

    def pd_points(self) -> list[NormalizedPD]:
        if self.pd is not None:
            return [self.pd]
        out = []
        r_count = math.ceil(1 / self.r_step)
        p_count = math.ceil(1 / self.p_step)
        for ri in range(1, r_count):
            r = ri * self.r_step
            if not Fraction(1, 2) < r < 1:
                continue
            for pi in range(1, p_count):
                p = pi * self.p_step
                if p >= r:
                    break
                out.append(NormalizedPD(r=r, p=p))
        return out

    def param_points(self, cls: ExtensionClass) -> list[Optional[Fraction]]:
        return param_grid(cls, self.param_step)

    def to_json(self) -> dict:
        return {
            "p_step": format_rational(self.p_step),
            "r_step": format_rational(self.r_step),
            "param_step": None if self.param_step is None else format_rational(self.param_step),
            "pd": None if self.pd is None else {"r": format_rational(self.pd.r), "p": format_rational(self.pd.p)},
        }


def _fmt_opt(x: Optional[Fraction]) -> Optional[str]:
    return None if x is None else format_rational(x)


def _profiles_json(profiles: Iterable[StrategyProfile]) -> list[list[int]]:
    return [[i, j] for i, j in profiles]


@dataclass(frozen=True)
class Mismatch:
    p: Fraction
    r: Fraction
    param: Optional[Fraction]
    predicted: tuple[StrategyProfile, ...]
    oracle: tuple[StrategyProfile, ...]

    def to_json(self) -> dict:
        return {
            "p": format_rational(self.p),
            "r": format_rational(self.r),
            "param": _fmt_opt(self.param),
            "predicted": _profiles_json(self.predicted),
            "oracle": _profiles_json(self.oracle),
        }


@dataclass
class MismatchReport:
    class_id: ExtensionClass
    grid: GridSpec
    points: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)
    # how many grid points the oracle reports each profile as an equilibrium
    oracle_counts: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "class": self.class_id.value,
            "grid": self.grid.to_json(),
            "points": self.points,
            "mismatches": len(self.mismatches),
            "details": [m.to_json() for m in self.mismatches],
            "oracle_counts": dict(sorted(self.oracle_counts.items())),
        }

    def csv_rows(self) -> list[list[str]]:
        """One row per (mismatched point, disputed profile)."""
        rows = []
        for m in self.mismatches:
            for prof in sorted(set(m.predicted) ^ set(m.oracle)):
                rows.append(
                    [
                        self.class_id.value,
                        format_rational(m.p),
                        format_rational(m.r),
                        _fmt_opt(m.param) or "",
                        f"{prof.row},{prof.col}",
                        str(prof in m.predicted).lower(),
                        str(prof in m.oracle).lower(),
                    ]
                )
        return rows

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["class", "p", "r", "param", "profile", "predicted", "oracle"])
        writer.writerows(self.csv_rows())
        return buf.getvalue()


def _sweep_one_game(cls: ExtensionClass, pd: NormalizedPD, params: Sequence[Optional[Fraction]]):
    mismatches, counts = [], {}
    for x in params:
        oracle = tuple(pure_nash_equilibria(build_extension(ExtensionSpec(cls, x), pd)))
        predicted = tuple(ne_region_table(cls, pd, x))
        for prof in oracle:
            key = f"{prof.row},{prof.col}"
            counts[key] = counts.get(key, 0) + 1
        if predicted != oracle:
            mismatches.append(Mismatch(pd.p, pd.r, x, predicted, oracle))
    return mismatches, counts


def sweep_verify(class_id, grid: Optional[GridSpec] = None, workers: int = 1) -> MismatchReport:
    """Compare predicted and brute-force equilibrium sets at every grid point.

    Games are independent work items; with ``workers > 1`` they run in a
    process pool and results are merged in grid order, so the report does
    not depend on scheduling.
    """
    cls = ExtensionClass(class_id)
    grid = grid or GridSpec()
    pds = grid.pd_points()
    params = grid.param_points(cls)
    if not pds or not params:
        raise ValueError("grid is empty")
    report = MismatchReport(cls, grid, points=len(pds) * len(params))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_one_game, [cls] * len(pds), pds, [params] * len(pds)))
    else:
        results = [_sweep_one_game(cls, pd, params) for pd in pds]
    for mismatches, counts in results:
        report.mismatches.extend(mismatches)
        for key, n in counts.items():
            report.oracle_counts[key] = report.oracle_counts.get(key, 0) + n
    return report


def check_extension_symmetry(class_id, pd: NormalizedPD, param=None) -> bool:
    return is_symmetric(build_extension(ExtensionSpec(class_id, param), pd))


def check_affine_ne_invariance(game: BimatrixGame, lam, mu) -> bool:
    return pure_nash_equilibria(affine_transform(game, lam, mu)) == pure_nash_equilibria(game)


class DualPathResult(NamedTuple):
    max_deviation: float
    samples: int
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance


def random_strategy(rng: np.random.Generator) -> StrategyTriple:
    return StrategyTriple(
        float(rng.uniform(0, math.pi)),
        float(rng.uniform(0, 2 * math.pi)),
        float(rng.uniform(0, 2 * math.pi)),
    )


def check_ewl_dual_path(
    samples: int = 1000,
    tolerance: float = 1e-9,
    seed: int = DEFAULT_SEED,
    game: Optional[BimatrixGame] = None,
    pairs: Optional[Sequence[tuple[StrategyTriple, StrategyTriple]]] = None,
) -> DualPathResult:
    """Largest gap between the state-vector and closed-form payoffs.

    Random strategy pairs are drawn unless explicit ``pairs`` are given.
    """
    if game is None:
        game = NormalizedPD(Fraction(3, 5), Fraction(1, 5)).game()
    if pairs is None:
        if samples < 1:
            raise ValueError("need at least one sample")
        rng = np.random.default_rng(seed)
        pairs = [(random_strategy(rng), random_strategy(rng)) for _ in range(samples)]
    worst = 0.0
    for s1, s2 in pairs:
        a = ewl_payoffs(game, s1, s2, "basis")
        b = ewl_payoffs(game, s1, s2, "closed_form")
        worst = max(worst, abs(a[0] - b[0]), abs(a[1] - b[1]))
    return DualPathResult(worst, len(pairs), tolerance)


# -- extremal equal payoffs -----------------------------------------------------


@dataclass(frozen=True)
class ExtremalResult:
    """Best equal equilibrium payoff of one profile over the class parameter.

    ``payoff_star`` is in normalized units. When ``is_supremum_only`` the
    value is a limit at an excluded endpoint (``param_star``) and
    ``approach_param``/``approach_payoff`` give the last admissible point
    examined. ``is_approximate`` marks a parameter located by refinement
    rather than hit exactly on the grid.
    """

    class_id: ExtensionClass
    profile: StrategyProfile
    found: bool
    param_star: Optional[Fraction] = None
    payoff_star: Optional[Fraction] = None
    is_supremum_only: bool = False
    is_approximate: bool = False
    approach_param: Optional[Fraction] = None
    approach_payoff: Optional[Fraction] = None

    def scaled_payoff(self, scale=1, shift=0) -> Optional[Fraction]:
        if self.payoff_star is None:
            return None
        return self.payoff_star * as_rational(scale) + as_rational(shift)

    def to_json(self, scale=1, shift=0) -> dict:
        out = {
            "class": self.class_id.value,
            "profile": list(self.profile),
            "found": self.found,
        }
        if not self.found:
            out["message"] = "no NE on grid"
            return out
        scale, shift = as_rational(scale), as_rational(shift)
        out.update(
            param_star=_fmt_opt(self.param_star),
            param_float=None if self.param_star is None else float(self.param_star),
            payoff_star=format_rational(self.scaled_payoff(scale, shift)),
            payoff_float=float(self.scaled_payoff(scale, shift)),
            is_supremum_only=self.is_supremum_only,
            is_approximate=self.is_approximate,
        )
        if self.approach_param is not None:
            out["approach_param"] = format_rational(self.approach_param)
            out["approach_payoff"] = format_rational(self.approach_payoff * scale + shift)
        return out


def _equal_ne_payoff(cls, pd, profile, x) -> Optional[Fraction]:
    """Common payoff if ``profile`` is an equilibrium with equal payoffs, else None."""
    if not ne_condition(RegionQuery(cls, profile, pd, x)).is_ne:
        return None
    m = extension_matrix(cls, pd, x)
    i, j = profile.row - 1, profile.col - 1
    u1, u2 = m[i][j], m[j][i]
    return u1 if u1 == u2 else None


def _best(candidates, cls, pd, profile):
    best_x, best_v = None, None
    for x in candidates:
        v = _equal_ne_payoff(cls, pd, profile, x)
        if v is not None and (best_v is None or v > best_v):
            best_x, best_v = x, v
    return best_x, best_v


def max_equal_payoff(
    class_id,
    pd: NormalizedPD,
    profile,
    param_step: Optional[Fraction] = None,
    refine_tol: float = 1e-12,
    subdivisions: int = 8,
) -> ExtremalResult:
    """Maximise the equal equilibrium payoff of ``profile`` over the parameter.

    A coarse scan on the rational grid is followed by zooming in around the
    best grid point (exact arithmetic throughout) until the bracket is
    narrower than ``refine_tol``. A maximiser that drifts onto an excluded
    endpoint of ``(0, 1)`` is reported as a supremum, with the limit value
    evaluated exactly at that endpoint.
    """
    cls = ExtensionClass(class_id)
    profile = StrategyProfile(*profile)
    grid = param_grid(cls, param_step)
    x0, v0 = _best(grid, cls, pd, profile)
    if v0 is None:
        return ExtremalResult(cls, profile, found=False)
    if cls.param_name is None:
        return ExtremalResult(cls, profile, True, None, v0)

    step = as_rational(param_step) if param_step is not None else (grid[1] - grid[0])
    lo_dom, hi_dom = Fraction(0), Fraction(1)
    x, v, half_width = x0, v0, step
    while 2 * half_width > refine_tol:
        lo, hi = max(lo_dom, x - half_width), min(hi_dom, x + half_width)
        h = (hi - lo) / subdivisions
        cands = [lo + k * h for k in range(subdivisions + 1)]
        cands = [c for c in cands if param_in_domain(cls, c)]
        cx, cv = _best(cands, cls, pd, profile)
        if cv is not None and cv > v:
            x, v = cx, cv
        half_width = 2 * h
    refined = x != x0

    if cls.param_name == "t" and (x <= refine_tol or 1 - x <= refine_tol):
        end = Fraction(0) if x <= refine_tol else Fraction(1)
        m = extension_matrix(cls, pd, end)
        limit = m[profile.row - 1][profile.col - 1]
        return ExtremalResult(cls, profile, True, end, limit, True, True, x, v)
    return ExtremalResult(cls, profile, True, x, v, is_approximate=refined)
