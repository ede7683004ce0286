"""Exact-rational bimatrix games and the Prisoner's Dilemma normal form.

Payoffs are :class:`fractions.Fraction` throughout, so best-response and
equilibrium comparisons never involve rounding. Strategy indices are
1-based, matching the usual ``(i, j)`` profile notation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "BimatrixGame",
    "NormalizedPD",
    "RawPD",
    "STANDARD_PD",
    "StrategyProfile",
    "affine_transform",
    "as_rational",
    "best_responses",
    "format_rational",
    "gamma_family",
    "is_symmetric",
    "normalize",
    "pareto_optimal_profiles",
    "pure_nash_equilibria",
]


def as_rational(value) -> Fraction:
    """Coerce ``value`` to a Fraction without ever going through binary floats.

    Strings may be ``"num/den"``, integers or decimals (``"0.25"`` is 1/4).
    Python floats are refused because they are already rounded.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not payoffs")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def format_rational(x: Fraction) -> str:
    """Render as ``"num/den"`` (denominator always present)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


class StrategyProfile(NamedTuple):
    row: int
    col: int


Payoff = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class BimatrixGame:
    """Finite two-player game; ``entries[i][j] = (u1, u2)`` with 0-based storage."""

    entries: tuple[tuple[Payoff, ...], ...]

    def __post_init__(self):
        rows = tuple(
            tuple((as_rational(u1), as_rational(u2)) for u1, u2 in row)
            for row in self.entries
        )
        if not rows or not rows[0]:
            raise ValueError("a game needs at least one row and one column")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ValueError("payoff grid is not rectangular")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_matrices(cls, u1: Sequence[Sequence], u2: Sequence[Sequence]) -> "BimatrixGame":
        if len(u1) != len(u2) or any(len(a) != len(b) for a, b in zip(u1, u2)):
            raise ValueError("player matrices differ in shape")
        return cls(tuple(tuple(zip(a, b)) for a, b in zip(u1, u2)))

    @classmethod
    def symmetric(cls, u1: Sequence[Sequence]) -> "BimatrixGame":
        """Game whose column player's matrix is the transpose of ``u1``."""
        n = len(u1)
        if any(len(row) != n for row in u1):
            raise ValueError("symmetric games need a square payoff matrix")
        u2 = [[u1[j][i] for j in range(n)] for i in range(n)]
        return cls.from_matrices(u1, u2)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def payoff(self, row: int, col: int) -> Payoff:
        """Payoff pair at the 1-based profile ``(row, col)``."""
        self._check_index(row, self.rows, "row")
        self._check_index(col, self.cols, "column")
        return self.entries[row - 1][col - 1]

    def player_matrix(self, player: int) -> tuple[tuple[Fraction, ...], ...]:
        if player not in (1, 2):
            raise ValueError(f"player must be 1 or 2, got {player}")
        k = player - 1
        return tuple(tuple(cell[k] for cell in row) for row in self.entries)

    def profiles(self) -> Iterable[StrategyProfile]:
        for i in range(1, self.rows + 1):
            for j in range(1, self.cols + 1):
                yield StrategyProfile(i, j)

    def swap_rows(self, a: int, b: int) -> "BimatrixGame":
        rows = list(self.entries)
        rows[a - 1], rows[b - 1] = rows[b - 1], rows[a - 1]
        return BimatrixGame(tuple(rows))

    def swap_cols(self, a: int, b: int) -> "BimatrixGame":
        out = []
        for row in self.entries:
            row = list(row)
            row[a - 1], row[b - 1] = row[b - 1], row[a - 1]
            out.append(tuple(row))
        return BimatrixGame(tuple(out))

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [
                [[format_rational(u1), format_rational(u2)] for u1, u2 in row]
                for row in self.entries
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BimatrixGame":
        game = cls(
            tuple(tuple((as_rational(u1), as_rational(u2)) for u1, u2 in row) for row in data["entries"])
        )
        if data.get("rows", game.rows) != game.rows or data.get("cols", game.cols) != game.cols:
            raise ValueError("declared shape does not match the entries")
        return game

    @staticmethod
    def _check_index(index: int, size: int, what: str) -> None:
        if not 1 <= index <= size:
            raise IndexError(f"{what} index {index} outside 1..{size}")


def pure_nash_equilibria(game: BimatrixGame) -> list[StrategyProfile]:
    """All pure Nash equilibria (weak inequalities), in row-major order."""
    entries = game.entries
    n, m = game.shape
    col_best = [max(entries[i][j][0] for i in range(n)) for j in range(m)]
    row_best = [max(entries[i][j][1] for j in range(m)) for i in range(n)]
    return [
        StrategyProfile(i + 1, j + 1)
        for i in range(n)
        for j in range(m)
        if entries[i][j][0] == col_best[j] and entries[i][j][1] == row_best[i]
    ]


def best_responses(game: BimatrixGame, player: int, opponent_strategy: int) -> list[int]:
    """1-based argmax set of ``player`` against a fixed opponent strategy (ties kept)."""
    if player == 1:
        BimatrixGame._check_index(opponent_strategy, game.cols, "column")
        values = [game.entries[i][opponent_strategy - 1][0] for i in range(game.rows)]
    elif player == 2:
        BimatrixGame._check_index(opponent_strategy, game.rows, "row")
        values = [cell[1] for cell in game.entries[opponent_strategy - 1]]
    else:
        raise ValueError(f"player must be 1 or 2, got {player}")
    best = max(values)
    return [k + 1 for k, v in enumerate(values) if v == best]


def is_symmetric(game: BimatrixGame) -> bool:
    n, m = game.shape
    if n != m:
        return False
    e = game.entries
    return all(e[i][j][1] == e[j][i][0] for i in range(n) for j in range(n))


def affine_transform(game: BimatrixGame, lam, mu) -> BimatrixGame:
    """Apply ``x -> lam * x + mu`` to every payoff of both players."""
    lam, mu = as_rational(lam), as_rational(mu)
    if lam <= 0:
        raise ValueError(f"affine scale must be positive, got {lam}")
    return BimatrixGame(
        tuple(tuple((lam * u1 + mu, lam * u2 + mu) for u1, u2 in row) for row in game.entries)
    )


def pareto_optimal_profiles(game: BimatrixGame) -> list[StrategyProfile]:
    """Profiles whose payoff pair no other profile weakly improves with one strict gain."""
    cells = [(prof, game.entries[prof.row - 1][prof.col - 1]) for prof in game.profiles()]
    out = []
    for prof, (a1, a2) in cells:
        dominated = any(
            b1 >= a1 and b2 >= a2 and (b1 > a1 or b2 > a2) for _, (b1, b2) in cells
        )
        if not dominated:
            out.append(prof)
    return out


@dataclass(frozen=True)
class RawPD:
    """Prisoner's Dilemma in its ``(T, R, P, S)`` form."""

    T: Fraction
    R: Fraction
    P: Fraction
    S: Fraction

    def __post_init__(self):
        for name in ("T", "R", "P", "S"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        T, R, P, S = self.T, self.R, self.P, self.S
        if not T > R:
            raise ValueError(f"PD requires T > R (T={T}, R={R})")
        if not R > P:
            raise ValueError(f"PD requires R > P (R={R}, P={P})")
        if not P > S:
            raise ValueError(f"PD requires P > S (P={P}, S={S})")
        if not 2 * R > T + S:
            raise ValueError(f"PD requires 2R > T + S (2R={2 * R}, T+S={T + S})")

    def game(self) -> BimatrixGame:
        T, R, P, S = self.T, self.R, self.P, self.S
        return BimatrixGame((((R, R), (S, T)), ((T, S), (P, P))))


@dataclass(frozen=True)
class NormalizedPD:
    """PD rescaled so that ``S = 0`` and ``T = 1``; only ``r`` and ``p`` remain."""

    r: Fraction
    p: Fraction

    def __post_init__(self):
        r, p = as_rational(self.r), as_rational(self.p)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "p", p)
        if not 0 < p < r < 1:
            raise ValueError(f"normalized PD requires 0 < p < r < 1 (p={p}, r={r})")
        if not r > Fraction(1, 2):
            raise ValueError(f"normalized PD requires r > 1/2 (r={r})")

    def game(self) -> BimatrixGame:
        return gamma_family(self)[0]


STANDARD_PD = RawPD(5, 3, 1, 0)


def normalize(raw: RawPD) -> NormalizedPD:
    span = raw.T - raw.S
    return NormalizedPD(r=(raw.R - raw.S) / span, p=(raw.P - raw.S) / span)


def gamma_family(pd: NormalizedPD) -> tuple[BimatrixGame, BimatrixGame, BimatrixGame, BimatrixGame]:
    """The normalized PD and its row-, column- and doubly-swapped variants."""
    r, p = pd.r, pd.p
    base = BimatrixGame.from_matrices([[r, 0], [1, p]], [[r, 1], [0, p]])
    rows = base.swap_rows(1, 2)
    cols = base.swap_cols(1, 2)
    return base, rows, cols, rows.swap_cols(1, 2)
