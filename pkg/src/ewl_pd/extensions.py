"""Four-strategy quantum extensions of the normalized Prisoner's Dilemma.

Each extension is a 4x4 symmetric game whose top-left 2x2 block is the
classical game; the other three blocks are fixed convex combinations of
the normalized PD and its row/column-swapped variants.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Optional

from .game import BimatrixGame, NormalizedPD, as_rational, format_rational, gamma_family

__all__ = [
    "DerivedAParams",
    "ExtensionClass",
    "ExtensionSpec",
    "build_extension",
    "classical_embedding_check",
    "derive_a_params",
    "extension_matrix",
]

class ExtensionClass(str, Enum):
    A1 = "A1"
    A2 = "A2"
    B = "B"
    C = "C"
    D1 = "D1"
    D2 = "D2"
    E1 = "E1"
    E2 = "E2"

    @property
    def param_name(self) -> Optional[str]:
        if self in (ExtensionClass.A1, ExtensionClass.A2):
            return "a"
        if self is ExtensionClass.B:
            return None
        return "t"

    def __str__(self) -> str:
        return self.value


def param_in_domain(cls: ExtensionClass, value: Fraction) -> bool:
    if cls.param_name == "a":
        return 0 <= value <= 1
    return 0 < value < 1


@dataclass(frozen=True)
class ExtensionSpec:
    """Extension class plus its scalar parameter (``a`` in [0, 1] or ``t`` in (0, 1))."""

    id: ExtensionClass
    param: Optional[Fraction] = None

    def __post_init__(self):
        cls = ExtensionClass(self.id)
        object.__setattr__(self, "id", cls)
        name = cls.param_name
        if name is None:
            if self.param is not None:
                raise ValueError(f"class {cls} takes no parameter")
            return
        if self.param is None:
            raise ValueError(f"class {cls} requires parameter {name}")
        value = as_rational(self.param)
        if not param_in_domain(cls, value):
            bounds = "[0, 1]" if name == "a" else "(0, 1)"
            raise ValueError(f"parameter {name}={value} outside {bounds} for class {cls}")
        object.__setattr__(self, "param", value)

    def to_json(self) -> dict:
        out = {"class": self.id.value}
        if self.param is not None:
            out["param"] = format_rational(self.param)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ExtensionSpec":
        param = data.get("param")
        return cls(ExtensionClass(data["class"]), None if param is None else as_rational(param))


class DerivedAParams(NamedTuple):
    a: Fraction
    a_prime: Fraction
    b: Fraction
    b_prime: Fraction


def derive_a_params(a) -> DerivedAParams:
    a = as_rational(a)
    if not 0 <= a <= 1:
        raise ValueError(f"a must lie in [0, 1], got {a}")
    return DerivedAParams(a, 1 - a, (1 - 2 * a) ** 2, 4 * a * (1 - a))


def _combine(*terms):
    """Weighted sum of 2x2 player-1 matrices."""
    return [[sum(w * m[i][j] for w, m in terms) for j in range(2)] for i in range(2)]


def _assemble(tl, tr, bl, br):
    top = [list(tl[i]) + list(tr[i]) for i in range(2)]
    return top + [list(bl[i]) + list(br[i]) for i in range(2)]


def extension_matrix(cls: ExtensionClass, pd: NormalizedPD, param: Optional[Fraction]) -> list[list[Fraction]]:
    """Player-1 4x4 payoff matrix, without parameter-domain checks.

    Used directly by the extremal search to evaluate limits at open ends
    of the ``t`` interval; everything else should go through
    :func:`build_extension`.
    """
    cls = ExtensionClass(cls)
    g, g1, g2, g3 = (m.player_matrix(1) for m in gamma_family(pd))

    if cls is ExtensionClass.B:
        quarter = Fraction(1, 4)
        avg = _combine((quarter, g), (quarter, g1), (quarter, g2), (quarter, g3))
        return _assemble(g, avg, avg, avg)

    x = as_rational(param)
    if cls in (ExtensionClass.A1, ExtensionClass.A2):
        a, a_, b, b_ = derive_a_params(x)
        if cls is ExtensionClass.A1:
            off = _combine((a, g), (a_, g3))
            return _assemble(g, off, off, _combine((b, g), (b_, g3)))
        return _assemble(
            g,
            _combine((a, g2), (a_, g1)),
            _combine((a, g1), (a_, g2)),
            _combine((b, g3), (b_, g)),
        )

    t, t_ = x, 1 - x
    # D and E share this lower-right block; C has the t <-> t' mirror of it.
    mixed = _combine((t * t, g), (t * t_, g1), (t * t_, g2), (t_ * t_, g3))
    if cls is ExtensionClass.C:
        off = _combine((t / 2, g), (t / 2, g3), (t_ / 2, g1), (t_ / 2, g2))
        return _assemble(g, off, off, _combine((t_ * t_, g), (t * t_, g1), (t * t_, g2), (t * t, g3)))
    if cls is ExtensionClass.D1:
        return _assemble(g, _combine((t, g), (t_, g2)), _combine((t, g), (t_, g1)), mixed)
    if cls is ExtensionClass.D2:
        return _assemble(g, _combine((t, g3), (t_, g1)), _combine((t, g3), (t_, g2)), mixed)
    if cls is ExtensionClass.E1:
        return _assemble(g, _combine((t, g), (t_, g1)), _combine((t, g), (t_, g2)), mixed)
    return _assemble(g, _combine((t, g3), (t_, g2)), _combine((t, g3), (t_, g1)), mixed)


def build_extension(spec: ExtensionSpec, pd: NormalizedPD) -> BimatrixGame:
    """The 4x4 extension game; the column player's matrix is the transpose."""
    return BimatrixGame.symmetric(extension_matrix(spec.id, pd, spec.param))


def classical_embedding_check(ext: BimatrixGame, pd: NormalizedPD) -> bool:
    if ext.shape != (4, 4):
        raise ValueError("expected a 4x4 extension")
    base = pd.game().entries
    return all(ext.entries[i][j] == base[i][j] for i in range(2) for j in range(2))
