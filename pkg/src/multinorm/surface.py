"""Closed-world combinatorial model of an SNC divisor configuration on a regular surface.

The configuration lists curves (codimension-1 points) and closed points with
their incident curves.  Intersections that are not declared do not exist.
Elements of K^x are monomials in fixed local equations of the curves, times a
unit of the base ring.
"""

from __future__ import annotations

import dataclasses
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping, Optional

import networkx as nx

from .kernel import (
    BaseField,
    CurveFunctionField,
    FiniteQ1Mod4,
    LocalSqClass,
    SeparablyClosed,
    UnitSqClass,
    is_trivial,
)


class BaseKind(str, Enum):
    SEMI_GLOBAL = "semi-global"
    LOCAL = "local"


class CurveKind(str, Enum):
    SPECIAL = "special-fiber"
    HORIZONTAL = "horizontal"
    EXCEPTIONAL = "exceptional"


@dataclass(frozen=True)
class Curve:
    id: str
    kind: CurveKind = CurveKind.SPECIAL
    rational: bool = True
    name: str = ""


@dataclass(frozen=True)
class ClosedPoint:
    id: str
    curves: tuple


@dataclass(frozen=True)
class SurfaceConfig:
    base_kind: BaseKind
    residue_field: BaseField
    curves: tuple
    points: tuple
    equicharacteristic: bool = True

    @cached_property
    def curve_map(self) -> dict:
        return {c.id: c for c in self.curves}

    @cached_property
    def point_map(self) -> dict:
        return {p.id: p for p in self.points}

    @cached_property
    def _incidence(self) -> dict:
        inc = defaultdict(list)
        for p in self.points:
            for cid in p.curves:
                inc[cid].append(p.id)
        return {k: tuple(v) for k, v in inc.items()}

    def curve(self, cid: str) -> Curve:
        try:
            return self.curve_map[cid]
        except KeyError:
            raise KeyError(f"curve {cid!r} not in configuration") from None

    def point(self, pid: str) -> ClosedPoint:
        try:
            return self.point_map[pid]
        except KeyError:
            raise KeyError(f"point {pid!r} not in configuration") from None

    def points_on(self, cid: str) -> tuple:
        self.curve(cid)
        return self._incidence.get(cid, ())

    @property
    def curve_ids(self) -> list:
        return [c.id for c in self.curves]

    @property
    def separably_closed(self) -> bool:
        return isinstance(self.residue_field, SeparablyClosed)

    def in_special_fiber(self, cid: str) -> bool:
        return self.curve(cid).kind in (CurveKind.SPECIAL, CurveKind.EXCEPTIONAL)


@dataclass(frozen=True)
class MonomialElement:
    """u * prod_gamma pi_gamma^{e_gamma}; ``unit`` is the square class bit of u."""

    exponents: tuple = ()
    unit: int = 0

    @classmethod
    def of(cls, exponents: Optional[Mapping] = None, unit: int = 0) -> MonomialElement:
        items = tuple(sorted((k, int(v)) for k, v in (exponents or {}).items() if v))
        return cls(items, unit % 2)

    @cached_property
    def as_dict(self) -> dict:
        return dict(self.exponents)

    def exponent(self, cid: str) -> int:
        return self.as_dict.get(cid, 0)

    def support(self) -> set:
        return set(self.as_dict)

    def __mul__(self, other: MonomialElement) -> MonomialElement:
        out = dict(self.as_dict)
        for k, v in other.exponents:
            out[k] = out.get(k, 0) + v
        return MonomialElement.of(out, self.unit ^ other.unit)

    def __pow__(self, n: int) -> MonomialElement:
        return MonomialElement.of({k: v * n for k, v in self.exponents}, self.unit * n)

    def is_global_square(self) -> bool:
        return self.unit == 0 and all(v % 2 == 0 for _, v in self.exponents)

    def __str__(self) -> str:
        if not self.exponents and not self.unit:
            return "1"
        parts = ["eps"] if self.unit else []
        parts += [k if v == 1 else f"{k}^{v}" for k, v in self.exponents]
        return "*".join(parts)


@dataclass(frozen=True)
class Violation:
    code: str
    detail: str

    def __str__(self) -> str:
        return f"{self.code}: {self.detail}"


def validate(config: SurfaceConfig, elements: Iterable[MonomialElement] = ()) -> list:
    """Structural problems of a configuration, as data; empty when clean."""
    out = []
    seen = set()
    for c in config.curves:
        if c.id in seen:
            out.append(Violation("DuplicateId", f"curve {c.id}"))
        seen.add(c.id)
    for p in config.points:
        if p.id in seen:
            out.append(Violation("DuplicateId", f"point {p.id}"))
        seen.add(p.id)

    for p in config.points:
        if not p.curves:
            out.append(Violation("EmptyPoint", f"point {p.id} lies on no curve"))
        if len(p.curves) > 2:
            out.append(Violation("NotSNC", f"point {p.id} lies on {len(p.curves)} curves"))
        if len(set(p.curves)) != len(p.curves):
            out.append(Violation("NotSNC", f"point {p.id} repeats a curve"))
        for cid in p.curves:
            if cid not in config.curve_map:
                out.append(Violation("UnknownCurve", f"point {p.id} names {cid}"))
    if any(v.code == "UnknownCurve" for v in out):
        return out

    if config.base_kind is BaseKind.SEMI_GLOBAL:
        for p in config.points:
            if not any(config.in_special_fiber(cid) for cid in p.curves):
                out.append(Violation("OffSpecialFiber", f"point {p.id} misses the special fiber"))
        for c in config.curves:
            if c.kind is not CurveKind.HORIZONTAL:
                continue
            pts = config.points_on(c.id)
            good = [
                pid for pid in pts
                if any(config.in_special_fiber(x) for x in config.point(pid).curves if x != c.id)
            ]
            if len(pts) != 1 or len(good) != 1:
                out.append(
                    Violation("DanglingHorizontal", f"{c.id} must meet the special fiber at one declared point")
                )
    else:
        exceptional = [c for c in config.curves if c.kind is CurveKind.EXCEPTIONAL]
        if any(c.kind is CurveKind.SPECIAL for c in config.curves):
            out.append(Violation("SpecialInLocal", "local configurations have no special fiber"))
        if exceptional:
            for p in config.points:
                if not any(config.curve(cid).kind is CurveKind.EXCEPTIONAL for cid in p.curves):
                    out.append(Violation("OffExceptional", f"point {p.id} misses the exceptional locus"))
        elif len(config.points) > 1:
            out.append(Violation("OffExceptional", "without exceptional curves only the closed point may be declared"))
        for c in config.curves:
            if c.kind is CurveKind.HORIZONTAL and len(config.points_on(c.id)) != 1:
                out.append(Violation("DanglingHorizontal", f"{c.id} must pass through one declared point"))

    for f in elements:
        for cid in f.support():
            if cid not in config.curve_map:
                out.append(Violation("UnknownCurve", f"element {f} uses {cid}"))
    return out


def _curve_kind(config: SurfaceConfig, cid: str) -> CurveFunctionField:
    return CurveFunctionField(cid, config.residue_field)


def _decidable(config: SurfaceConfig, cid: str) -> bool:
    c = config.curve(cid)
    return c.rational or (c.kind is CurveKind.HORIZONTAL and config.separably_closed)


def restrict_to_curve(config: SurfaceConfig, f: MonomialElement, cid: str) -> UnitSqClass:
    """Square class in kappa(gamma) of the unit part f / pi_gamma^{v_gamma(f)}.

    At a point M of gamma the order is the sum of the exponents of the other
    curve through M (transverse crossings).
    """
    divisor = []
    for pid in config.points_on(cid):
        order = sum(f.exponent(x) for x in config.point(pid).curves if x != cid)
        if order % 2:
            divisor.append(pid)
    bit = f.unit if isinstance(config.residue_field, FiniteQ1Mod4) else 0
    return UnitSqClass(
        _curve_kind(config, cid),
        bit=bit,
        divisor=frozenset(divisor),
        decidable=_decidable(config, cid),
    )


def local_class(config: SurfaceConfig, f: MonomialElement, cid: str) -> LocalSqClass:
    """Class of f in K_gamma^x / K_gamma^x2 (henselization along gamma)."""
    return LocalSqClass(f.exponent(cid), restrict_to_curve(config, f, cid))


def point_residue(config: SurfaceConfig, r: UnitSqClass, pid: str) -> int:
    """Order mod 2 at M of a class on the curve owning r."""
    if not isinstance(r.kind, CurveFunctionField):
        raise TypeError("point residues are defined on curve function fields")
    if pid not in config.points_on(r.kind.curve):
        raise KeyError(f"point {pid} is not on curve {r.kind.curve}")
    return 1 if pid in r.divisor else 0


def is_square_in_Kgamma(config: SurfaceConfig, f: MonomialElement, cid: str) -> Optional[bool]:
    """Yes / No / None (unknown).  Over a henselian DVR a unit is a square iff its residue is."""
    return local_class(config, f, cid).is_square()


def intersection_parity(config: SurfaceConfig, f: MonomialElement, cid: str) -> int:
    """Parity of the off-gamma part of div(f) . gamma, counted over declared points."""
    total = 0
    for pid in config.points_on(cid):
        total += sum(f.exponent(x) for x in config.point(pid).curves if x != cid)
    return total % 2


def _fresh(taken: set, stem: str) -> str:
    if stem not in taken:
        return stem
    i = 1
    while f"{stem}_{i}" in taken:
        i += 1
    return f"{stem}_{i}"


def lift_element(f: MonomialElement, pt: ClosedPoint, new_curve: str) -> MonomialElement:
    """v_lambda(f) = v_pi(f) + v_delta(f) for the exceptional curve over pt."""
    e = sum(f.exponent(c) for c in pt.curves)
    if not e:
        return f
    d = dict(f.as_dict)
    d[new_curve] = e
    return MonomialElement.of(d, f.unit)


def blowup(config: SurfaceConfig, pid: str, problem=None):
    """Blow up the closed point ``pid``.

    Returns ``(config', problem')``.  The exceptional curve meets the strict
    transform of each curve through the point once; a point on a single curve
    gets a fresh second point on the exceptional curve.
    """
    pt = config.point(pid)
    taken = set(config.curve_map) | set(config.point_map)
    k = 1
    while f"E{k}" in taken:
        k += 1
    lam = Curve(f"E{k}", CurveKind.EXCEPTIONAL, True, f"exceptional curve over {pid}")
    taken.add(lam.id)
    n1 = _fresh(taken, f"{pid}.1")
    taken.add(n1)
    n2 = _fresh(taken, f"{pid}.2")
    if len(pt.curves) == 2:
        new_pts = (ClosedPoint(n1, (pt.curves[0], lam.id)), ClosedPoint(n2, (pt.curves[1], lam.id)))
    else:
        new_pts = (ClosedPoint(n1, (*pt.curves, lam.id)), ClosedPoint(n2, (lam.id,)))
    points = tuple(p for p in config.points if p.id != pid) + new_pts
    new = dataclasses.replace(config, curves=config.curves + (lam,), points=points)
    if problem is None:
        return new, None
    lifted = {
        name: lift_element(getattr(problem, name), pt, lam.id) for name in ("a", "b", "c")
    }
    return new, dataclasses.replace(problem, config=new, **lifted)


def dual_graph(config: SurfaceConfig, subset: Optional[Iterable[str]] = None) -> nx.MultiGraph:
    """Vertices are curves, one edge per declared intersection point."""
    keep = set(config.curve_ids if subset is None else subset)
    g = nx.MultiGraph()
    g.add_nodes_from(c for c in config.curve_ids if c in keep)
    for p in config.points:
        if len(p.curves) == 2 and all(c in keep for c in p.curves):
            g.add_edge(p.curves[0], p.curves[1], key=p.id)
    return g


def is_forest(graph: nx.Graph) -> bool:
    if graph.number_of_nodes() == 0:
        return True
    return nx.is_forest(graph)


def special_fiber(config: SurfaceConfig) -> list:
    return [c.id for c in config.curves if config.in_special_fiber(c.id)]
