"""Pure-strategy equilibria of quantum EWL extensions of the Prisoner's Dilemma."""

from .extensions import ExtensionClass, ExtensionSpec, build_extension
from .game import (
    BimatrixGame,
    NormalizedPD,
    RawPD,
    STANDARD_PD,
    StrategyProfile,
    affine_transform,
    normalize,
    pure_nash_equilibria,
)
from .regions import RegionQuery, RegionVerdict, ne_condition, ne_region_table
from .verify import max_equal_payoff, sweep_verify

__version__ = "0.1.0"

__all__ = [
    "BimatrixGame",
    "ExtensionClass",
    "ExtensionSpec",
    "NormalizedPD",
    "RawPD",
    "RegionQuery",
    "RegionVerdict",
    "STANDARD_PD",
    "StrategyProfile",
    "affine_transform",
    "build_extension",
    "max_equal_payoff",
    "ne_condition",
    "ne_region_table",
    "normalize",
    "pure_nash_equilibria",
    "sweep_verify",
]
