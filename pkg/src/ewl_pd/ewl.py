"""Two-qubit EWL payoff engine.

Two independent routes to the expected payoffs are provided: an explicit
state-vector computation (tensor product, projection onto the entangled
basis) and the trigonometric closed form. They must agree to 1e-9.

This is the only floating-point part of the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np

from .game import BimatrixGame, is_symmetric

__all__ = [
    "ENTANGLED_BASIS",
    "OutcomeDistribution",
    "StrategyTriple",
    "closed_form_distribution",
    "ewl_payoffs",
    "outcome_distribution",
    "symmetry_check",
    "unitary",
]

UNITARITY_TOL = 1e-12
INPUT_UNITARITY_TOL = 1e-9
PAYOFF_TOL = 1e-9

_SQ2 = 1 / math.sqrt(2)

# Computational order |00>, |01>, |10>, |11>; player 1 is the left factor.
# psi_12 carries |10> in its second term: with |01> repeated (as sometimes
# printed) the basis is not orthogonal.
ENTANGLED_BASIS: dict[tuple[int, int], np.ndarray] = {
    (1, 1): _SQ2 * np.array([1, 0, 0, 1j]),
    (1, 2): _SQ2 * np.array([0, 1j, -1, 0]),
    (2, 1): -_SQ2 * np.array([0, 1, -1j, 0]),
    (2, 2): -_SQ2 * np.array([1j, 0, 0, 1]),
}
for _v in ENTANGLED_BASIS.values():
    _v.setflags(write=False)

OUTCOMES = ((1, 1), (1, 2), (2, 1), (2, 2))


@dataclass(frozen=True)
class StrategyTriple:
    theta: float
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        for name in ("alpha", "beta"):
            value = getattr(self, name)
            if not 0.0 <= value < 2 * math.pi:
                raise ValueError(f"{name} must lie in [0, 2pi), got {value}")


class OutcomeDistribution(NamedTuple):
    p11: float
    p12: float
    p21: float
    p22: float

    def as_dict(self) -> dict[tuple[int, int], float]:
        return dict(zip(OUTCOMES, self))


def unitary(s: StrategyTriple) -> np.ndarray:
    c, sn = math.cos(s.theta / 2), math.sin(s.theta / 2)
    return np.array(
        [
            [np.exp(1j * s.alpha) * c, 1j * np.exp(1j * s.beta) * sn],
            [1j * np.exp(-1j * s.beta) * sn, np.exp(-1j * s.alpha) * c],
        ]
    )


def _unitarity_error(u: np.ndarray) -> float:
    return float(np.max(np.abs(u @ u.conj().T - np.eye(2))))


def _clamp_probs(raw, tol: float) -> OutcomeDistribution:
    for value in raw:
        if not -tol <= value <= 1 + tol:
            raise ArithmeticError(f"outcome probability {value} outside [0, 1]")
    return OutcomeDistribution(*(min(max(float(v), 0.0), 1.0) for v in raw))


def outcome_distribution(u1: np.ndarray, u2: np.ndarray) -> OutcomeDistribution:
    """Squared overlaps ``|<psi_kl| U1 (x) U2 |psi_11>|^2``."""
    for name, u in (("u1", u1), ("u2", u2)):
        if np.shape(u) != (2, 2):
            raise ValueError(f"{name} must be a 2x2 matrix")
        if _unitarity_error(u) > INPUT_UNITARITY_TOL:
            raise ValueError(f"{name} is not unitary")
    state = np.kron(u1, u2) @ ENTANGLED_BASIS[(1, 1)]
    amps = [np.vdot(ENTANGLED_BASIS[kl], state) for kl in OUTCOMES]
    return _clamp_probs([abs(a) ** 2 for a in amps], UNITARITY_TOL)


def closed_form_distribution(s1: StrategyTriple, s2: StrategyTriple) -> OutcomeDistribution:
    c1, s1n = math.cos(s1.theta / 2), math.sin(s1.theta / 2)
    c2, s2n = math.cos(s2.theta / 2), math.sin(s2.theta / 2)
    a1, b1, a2, b2 = s1.alpha, s1.beta, s2.alpha, s2.beta
    raw = (
        (math.cos(a1 + a2) * c1 * c2 + math.sin(b1 + b2) * s1n * s2n) ** 2,
        (math.cos(a1 - b2) * c1 * s2n + math.sin(a2 - b1) * s1n * c2) ** 2,
        (math.sin(a1 - b2) * c1 * s2n + math.cos(a2 - b1) * s1n * c2) ** 2,
        (math.sin(a1 + a2) * c1 * c2 - math.cos(b1 + b2) * s1n * s2n) ** 2,
    )
    return _clamp_probs(raw, UNITARITY_TOL)


def _require_2x2(game: BimatrixGame) -> None:
    if game.shape != (2, 2):
        raise ValueError(f"EWL payoffs need a 2x2 game, got {game.rows}x{game.cols}")


def ewl_payoffs(
    game2x2: BimatrixGame,
    s1: StrategyTriple,
    s2: StrategyTriple,
    method: Literal["basis", "closed_form"] = "basis",
) -> tuple[float, float]:
    _require_2x2(game2x2)
    if method == "basis":
        dist = outcome_distribution(unitary(s1), unitary(s2))
    elif method == "closed_form":
        dist = closed_form_distribution(s1, s2)
    else:
        raise ValueError(f"unknown method {method!r}")
    u1 = u2 = 0.0
    for (k, l), prob in dist.as_dict().items():
        d1, d2 = game2x2.entries[k - 1][l - 1]
        u1 += prob * float(d1)
        u2 += prob * float(d2)
    return u1, u2


def symmetry_check(game2x2: BimatrixGame, s1: StrategyTriple, s2: StrategyTriple) -> bool:
    """Whether ``u2(s2, s1) == u1(s1, s2)`` (to 1e-9) in the quantum game."""
    _require_2x2(game2x2)
    if not is_symmetric(game2x2):
        raise ValueError("symmetry check needs a symmetric classical game")
    forward = ewl_payoffs(game2x2, s1, s2)[0]
    swapped = ewl_payoffs(game2x2, s2, s1)[1]
    return abs(forward - swapped) <= PAYOFF_TOL
