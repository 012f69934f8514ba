"""Square classes of residue fields and the tame residue of quaternion symbols.

Every residue field handled here has characteristic different from 2 and
contains a square root of -1, so the sign factor (-1)^{v(a)v(b)} of the tame
symbol is always a square and drops out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union


class KindMismatch(ValueError):
    """Two square classes live in different groups."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class SeparablyClosed:
    """A separably closed field of characteristic not 2; every unit is a square."""

    def __str__(self) -> str:
        return "separably-closed"


@dataclass(frozen=True)
class FiniteQ1Mod4:
    """The prime field F_q with q = 1 mod 4."""

    q: int

    def __post_init__(self) -> None:
        if not _is_prime(self.q) or self.q % 4 != 1:
            raise ValueError(f"q={self.q} must be a prime congruent to 1 mod 4")

    def __str__(self) -> str:
        return f"F_{self.q}"


BaseField = Union[SeparablyClosed, FiniteQ1Mod4]


@dataclass(frozen=True)
class CurveFunctionField:
    """Function field of a configuration curve over the base residue field."""

    curve: str
    base: BaseField = SeparablyClosed()

    def __str__(self) -> str:
        return f"{self.base}({self.curve})"


ResidueFieldKind = Union[SeparablyClosed, FiniteQ1Mod4, CurveFunctionField]


def euler_bit(x: int, q: int) -> int:
    """0 if x is a nonzero square mod q, 1 otherwise (Euler's criterion)."""
    x %= q
    if x == 0:
        raise ZeroDivisionError("0 has no square class")
    return 0 if pow(x, (q - 1) // 2, q) == 1 else 1


@dataclass(frozen=True)
class UnitSqClass:
    """An element of kappa^x / kappa^x2.

    ``bit`` is the class of a constant of the finite base field (always 0 over
    a separably closed field).  For curve function fields ``divisor`` holds the
    points where a representative has odd order; ``decidable`` says whether a
    zero divisor mod 2 already forces the class to be trivial (rational curves,
    and the henselian curve germs whose residue field is a local field).
    """

    kind: ResidueFieldKind
    bit: int = 0
    divisor: frozenset = field(default_factory=frozenset)
    decidable: bool = field(default=True, compare=False)
    declared_trivial: Optional[bool] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if isinstance(self.kind, SeparablyClosed) and self.bit:
            raise ValueError("every unit of a separably closed field is a square")
        if self.divisor and not isinstance(self.kind, CurveFunctionField):
            raise ValueError("only curve function fields carry a divisor")
        if (
            isinstance(self.kind, CurveFunctionField)
            and isinstance(self.kind.base, SeparablyClosed)
            and self.bit
        ):
            raise ValueError("constant part must be trivial over a separably closed base")

    def __mul__(self, other: UnitSqClass) -> UnitSqClass:
        return sqclass_mul(self, other)

    def __pow__(self, n: int) -> UnitSqClass:
        return self if n % 2 else identity(self.kind, decidable=self.decidable)

    def support(self) -> frozenset:
        return self.divisor

    def __str__(self) -> str:
        parts = []
        if self.bit:
            parts.append("eps")
        parts.extend(sorted(self.divisor))
        return "class(" + "*".join(parts) + ")" if parts else "1"


def identity(kind: ResidueFieldKind, decidable: bool = True) -> UnitSqClass:
    return UnitSqClass(kind, decidable=decidable)


def sqclass_mul(x: UnitSqClass, y: UnitSqClass) -> UnitSqClass:
    """Group law of kappa^x / kappa^x2 (componentwise XOR)."""
    if x.kind != y.kind:
        raise KindMismatch(f"{x.kind} vs {y.kind}")
    declared = True if (x.declared_trivial and y.declared_trivial) else None
    return UnitSqClass(
        x.kind,
        bit=x.bit ^ y.bit,
        divisor=x.divisor ^ y.divisor,
        decidable=x.decidable and y.decidable,
        declared_trivial=declared,
    )


def is_trivial(x: UnitSqClass) -> Optional[bool]:
    """True / False, or None when the combinatorial data cannot decide.

    A zero divisor on a non-rational curve may still hide a nontrivial
    2-torsion point of the Jacobian, hence the third value.
    """
    if x.divisor:
        return False
    if x.declared_trivial is not None:
        return x.declared_trivial
    if isinstance(x.kind, CurveFunctionField) and not x.decidable:
        return None
    return x.bit == 0


@dataclass(frozen=True)
class LocalSqClass:
    """Element of K_v^x / K_v^x2 for a discretely valued K_v, with its valuation kept."""

    valuation: int
    unit: UnitSqClass

    @property
    def valuation_parity(self) -> int:
        return self.valuation % 2

    def __mul__(self, other: LocalSqClass) -> LocalSqClass:
        return LocalSqClass(self.valuation + other.valuation, self.unit * other.unit)

    def is_square(self) -> Optional[bool]:
        if self.valuation % 2:
            return False
        return is_trivial(self.unit)


def tame_residue(a: LocalSqClass, b: LocalSqClass) -> UnitSqClass:
    """Residue of the quaternion symbol (a, b): class of u^{v(b)} w^{-v(a)}.

    u, w are the unit parts of a, b.  Modulo squares the inverse is harmless and
    only exponent parities matter.
    """
    return (a.unit ** b.valuation) * (b.unit ** a.valuation)
