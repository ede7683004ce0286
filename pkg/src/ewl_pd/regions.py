"""Closed-form pure-equilibrium regions of the extension classes.

Every (class, profile) pair has a predicate in ``(p, r, param)`` written as
a disjunction of exact rational inequalities. Bounds that involve square
roots are tested through the quadratic they come from, so no irrational
number is ever formed. Branch labels follow the order in which the
disjuncts are listed for each profile.

All games here are symmetric, so profile ``(i, j)`` has the same region as
``(j, i)``; predicates are written for ``i <= j`` only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .extensions import ExtensionClass, ExtensionSpec
from .game import NormalizedPD, StrategyProfile

__all__ = ["RegionQuery", "RegionVerdict", "ne_condition", "ne_region_table"]

ONE_QUARTER = Fraction(1, 4)
ONE_THIRD = Fraction(1, 3)
ONE_HALF = Fraction(1, 2)
ONE_SIXTH = Fraction(1, 6)
THREE_QUARTERS = Fraction(3, 4)

# Each branch is a closure over (p, r, x) returning bool.
Branch = Callable[[Fraction, Fraction, Optional[Fraction]], bool]


@dataclass(frozen=True)
class RegionQuery:
    class_id: ExtensionClass
    profile: StrategyProfile
    pd: NormalizedPD
    param: Optional[Fraction] = None

    def __post_init__(self):
        spec = ExtensionSpec(self.class_id, self.param)  # validates param presence/range
        object.__setattr__(self, "class_id", spec.id)
        object.__setattr__(self, "param", spec.param)
        i, j = self.profile
        if not (1 <= i <= 4 and 1 <= j <= 4):
            raise ValueError(f"profile {tuple(self.profile)} outside the 4x4 grid")
        object.__setattr__(self, "profile", StrategyProfile(i, j))


@dataclass(frozen=True)
class RegionVerdict:
    is_ne: bool
    active_branch: str = "none"

    def __post_init__(self):
        if self.is_ne == (self.active_branch == "none"):
            raise ValueError("active_branch must name a branch exactly when is_ne holds")


# -- A class (A1 orientation) -------------------------------------------------


def _a33_quadratic(p, r, a):
    # >= 0 between 1/2 -+ 1/2 sqrt(p / (1 + p - r))
    k = r - p - 1
    return 4 * a * a * k - 4 * a * k + r - 1


def _a44_quadratic(p, r, a):
    # >= 0 outside 1/2 -+ 1/2 sqrt((1 - r) / (1 + p - r))
    k = p - r + 1
    return 4 * a * a * k - 4 * a * k + p


def _a44_upper(p, r, a):
    return a >= ONE_HALF and _a44_quadratic(p, r, a) >= 0


def _a44_lower(p, r, a):
    return ONE_QUARTER <= a <= ONE_HALF and _a44_quadratic(p, r, a) >= 0


_A1_BRANCHES: dict[tuple[int, int], Sequence[Branch]] = {
    (2, 2): [lambda p, r, a: a == 1],
    (2, 3): [
        lambda p, r, a: p <= ONE_SIXTH and r <= 1 - 3 * p and ONE_QUARTER <= a <= (r - 1) / (r - 1 - p),
        lambda p, r, a: p <= ONE_SIXTH and 1 - 3 * p < r < 1 - p and p / (1 + p - r) <= a <= (r - 1) / (r - 1 - p),
        lambda p, r, a: p <= ONE_SIXTH and r == 1 - p and a == (r - 1) / (r - 1 - p),
        lambda p, r, a: ONE_SIXTH < p < ONE_HALF and r <= 1 - p and p / (1 + p - r) <= a <= (r - 1) / (r - 1 - p),
    ],
    # The third disjunct is the interval [(1-r)/(1+p-r), 1/4] plus the point
    # a = 1: the deviation to strategy 4 forces a <= 1/4 or a = 1.
    (2, 4): [
        lambda p, r, a: r < (3 - p) / 3 and a == 1,
        lambda p, r, a: r == (3 - p) / 3 and a in (ONE_QUARTER, 1),
        lambda p, r, a: r > (3 - p) / 3 and ((1 - r) / (1 + p - r) <= a <= ONE_QUARTER or a == 1),
    ],
    (3, 3): [
        lambda p, r, a: p < ONE_SIXTH and r == 1 - 3 * p and a == ONE_QUARTER,
        lambda p, r, a: p < ONE_SIXTH and r > 1 - 3 * p and a <= ONE_QUARTER and _a33_quadratic(p, r, a) >= 0,
        lambda p, r, a: ONE_SIXTH <= p <= ONE_HALF and a <= ONE_QUARTER and _a33_quadratic(p, r, a) >= 0,
        lambda p, r, a: p > ONE_HALF and a <= ONE_QUARTER and _a33_quadratic(p, r, a) >= 0,
    ],
    (3, 4): [lambda p, r, a: a == ONE_QUARTER and r <= 1 - 3 * p and p < ONE_SIXTH],
    (4, 4): [
        lambda p, r, a: r <= THREE_QUARTERS and _a44_upper(p, r, a),
        lambda p, r, a: r > THREE_QUARTERS and p < 3 - 3 * r and _a44_upper(p, r, a),
        lambda p, r, a: r > THREE_QUARTERS and p == 3 - 3 * r and (a == ONE_QUARTER or _a44_upper(p, r, a)),
        lambda p, r, a: r > THREE_QUARTERS and p > 3 - 3 * r and (_a44_lower(p, r, a) or _a44_upper(p, r, a)),
    ],
}

# A2 is A1 with strategies 3 and 4 relabelled.
_SWAP_34 = {1: 1, 2: 2, 3: 4, 4: 3}
_A2_BRANCHES = {
    tuple(sorted((_SWAP_34[i], _SWAP_34[j]))): branches for (i, j), branches in _A1_BRANCHES.items()
}


# -- B and C ------------------------------------------------------------------

_B_BRANCHES: dict[tuple[int, int], Sequence[Branch]] = {
    (2, 2): [lambda p, r, _: p >= (1 + r) / 3],
    (2, 3): [lambda p, r, _: p <= (1 + r) / 3],
    (2, 4): [lambda p, r, _: p <= (1 + r) / 3],
    (3, 3): [lambda p, r, _: True],
    (3, 4): [lambda p, r, _: True],
    (4, 4): [lambda p, r, _: True],
}


def _c22_interval(p, r, t):
    # p > 1/2 keeps p + r - 1 positive
    return p > ONE_HALF and (r - p) / (p + r - 1) <= t <= (2 * p - 1) / (p + r - 1)


_C_BRANCHES: dict[tuple[int, int], Sequence[Branch]] = {
    (2, 2): [_c22_interval, lambda p, r, t: t == ONE_HALF and p == (1 + r) / 3],
    (2, 3): [
        lambda p, r, t: p <= 1 - r and t >= ONE_HALF,
        lambda p, r, t: t == ONE_HALF and 1 - r < p <= (1 + r) / 3,
    ],
    (2, 4): [
        lambda p, r, t: p <= 1 - r and t <= ONE_HALF,
        lambda p, r, t: t == ONE_HALF and 1 - r < p <= (1 + r) / 3,
    ],
    (3, 3): [lambda p, r, t: t == ONE_HALF],
    (3, 4): [lambda p, r, t: t == ONE_HALF],
    (4, 4): [lambda p, r, t: t == ONE_HALF],
}


# -- D and E ------------------------------------------------------------------

_D1_BRANCHES = {(2, 2): [lambda p, r, t: True]}
_D2_BRANCHES: dict = {}
# Below t = 1/2 (E1) and above it (E2) there is no pure equilibrium at all.
_E1_BRANCHES = {(4, 4): [lambda p, r, t: t >= ONE_HALF]}
_E2_BRANCHES = {(3, 3): [lambda p, r, t: t <= ONE_HALF]}


_TABLES = {
    ExtensionClass.A1: _A1_BRANCHES,
    ExtensionClass.A2: _A2_BRANCHES,
    ExtensionClass.B: _B_BRANCHES,
    ExtensionClass.C: _C_BRANCHES,
    ExtensionClass.D1: _D1_BRANCHES,
    ExtensionClass.D2: _D2_BRANCHES,
    ExtensionClass.E1: _E1_BRANCHES,
    ExtensionClass.E2: _E2_BRANCHES,
}


def _evaluate(cls: ExtensionClass, profile: tuple[int, int], pd: NormalizedPD, x) -> RegionVerdict:
    key = (min(profile), max(profile))
    for k, branch in enumerate(_TABLES[cls].get(key, ()), start=1):
        if branch(pd.p, pd.r, x):
            return RegionVerdict(True, f"branch {k}")
    return RegionVerdict(False)


def ne_condition(q: RegionQuery) -> RegionVerdict:
    """Closed-form verdict on whether ``q.profile`` is a pure equilibrium."""
    return _evaluate(q.class_id, q.profile, q.pd, q.param)


def ne_region_table(class_id, pd: NormalizedPD, param=None) -> list[StrategyProfile]:
    """Profiles (row-major) that the closed forms predict to be equilibria."""
    spec = ExtensionSpec(class_id, param)
    return [
        StrategyProfile(i, j)
        for i in range(1, 5)
        for j in range(1, 5)
        if _evaluate(spec.id, (i, j), pd, spec.param).is_ne
    ]
