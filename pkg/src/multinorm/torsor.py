"""The torsor (X1^2-aY1^2)(X2^2-bY2^2)(X3^2-abY3^2) = c and the Brauer class A = (X1^2-aY1^2, b).

Along each curve gamma we decide whether E has a K_gamma-point and which
residues d_gamma(A(P)) a local point P can produce.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from . import surface
from .kernel import LocalSqClass, UnitSqClass, identity, is_trivial, tame_residue
from .surface import MonomialElement, SurfaceConfig


class Solvability(str, Enum):
    SOLVABLE = "solvable"
    UNSOLVABLE = "unsolvable"
    UNKNOWN = "unknown"


class UnsolvableCurve(ValueError):
    """E has no point over K_gamma, so no residue set exists."""


class IndeterminateResidue(ValueError):
    """A squareness test needed for the case analysis returned unknown."""


@dataclass(frozen=True)
class TorsorProblem:
    config: SurfaceConfig
    a: MonomialElement
    b: MonomialElement
    c: MonomialElement

    @property
    def ab(self) -> MonomialElement:
        return self.a * self.b

    def validate(self) -> list:
        return surface.validate(self.config, (self.a, self.b, self.c))


@dataclass(frozen=True)
class ResidueSet:
    """{base} or {base, base*offset}; ``exact`` means every listed class is attained."""

    base: UnitSqClass
    offset: Optional[UnitSqClass]
    exact: bool
    case: str = ""

    def elements(self) -> list:
        if self.offset is None:
            return [self.base]
        return [self.base, self.base * self.offset]

    def __len__(self) -> int:
        return 1 if self.offset is None else 2

    def __contains__(self, x: UnitSqClass) -> bool:
        return any(x == e for e in self.elements())


def cd2_at_most_1(config: SurfaceConfig, cid: str) -> bool:
    """Residue fields of curves over a separably closed base have cd_2 <= 1."""
    config.curve(cid)
    return config.separably_closed


def trivially_solvable(problem: TorsorProblem) -> Optional[bool]:
    """True when one of a, b, ab is a square in K; never proves the converse."""
    if any(x.is_global_square() for x in (problem.a, problem.b, problem.ab)):
        return True
    return None


def local_solvability(a: LocalSqClass, b: LocalSqClass, c: LocalSqClass, cd2: bool) -> Solvability:
    squares = [a.is_square(), b.is_square(), (a * b).is_square()]
    if True in squares or c.is_square() is True:
        return Solvability.SOLVABLE
    if a.valuation % 2 == 0 and b.valuation % 2 == 0 and c.valuation % 2 == 1:
        if squares == [False, False, False]:
            return Solvability.UNSOLVABLE
        return Solvability.UNKNOWN
    return Solvability.SOLVABLE if cd2 else Solvability.UNKNOWN


def local_classes(problem: TorsorProblem, cid: str) -> tuple:
    cfg = problem.config
    return tuple(surface.local_class(cfg, x, cid) for x in (problem.a, problem.b, problem.c))


def local_solvable(problem: TorsorProblem, cid: str) -> Solvability:
    a, b, c = local_classes(problem, cid)
    return local_solvability(a, b, c, cd2_at_most_1(problem.config, cid))


def local_residue_set(a: LocalSqClass, b: LocalSqClass, c: LocalSqClass, cd2: bool) -> ResidueSet:
    """Case analysis for the residues of A(P), P in E(K_v), over a henselian K_v."""
    if local_solvability(a, b, c, cd2) is Solvability.UNSOLVABLE:
        raise UnsolvableCurve("E has no local point")
    one = identity(a.unit.kind, decidable=a.unit.decidable and b.unit.decidable)
    sq_a, sq_b, sq_ab = a.is_square(), b.is_square(), (a * b).is_square()
    if sq_b is True or sq_ab is True:
        return ResidueSet(one, None, True, "i")
    if sq_a is True:
        return ResidueSet(tame_residue(c, b), None, True, "ii")
    if None in (sq_a, sq_b, sq_ab):
        raise IndeterminateResidue("cannot decide whether a, b or ab is a local square")
    va, vb = a.valuation % 2, b.valuation % 2
    if not va and not vb:
        return ResidueSet(one, None, True, "iii")
    offset = tame_residue(a, b)
    if is_trivial(offset) is True:
        offset = None
    if not va:
        return ResidueSet(tame_residue(c, b), offset, cd2, "iv")
    # -a and a have the same class since -1 is a square
    return ResidueSet(one, offset, cd2, "iv")


def residue_value_set(problem: TorsorProblem, cid: str) -> ResidueSet:
    a, b, c = local_classes(problem, cid)
    try:
        return local_residue_set(a, b, c, cd2_at_most_1(problem.config, cid))
    except (UnsolvableCurve, IndeterminateResidue) as exc:
        raise type(exc)(f"{cid}: {exc}") from None


def symbol_residue(config: SurfaceConfig, f: MonomialElement, g: MonomialElement, cid: str) -> UnitSqClass:
    """d_gamma of the quaternion symbol (f, g) as a class on gamma."""
    return tame_residue(surface.local_class(config, f, cid), surface.local_class(config, g, cid))


def is_trivial_set(rs: ResidueSet) -> bool:
    return rs.offset is None and is_trivial(rs.base) is True and not rs.base.divisor
