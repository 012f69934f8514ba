"""Kodaira types of Weierstrass models over k[t]_(t) with char k = 0 or >= 5.

Coefficients are exact sympy polynomials in t over QQ or GF(p).  In these
residue characteristics the triple (v(c4), v(c6), v(Delta)) of a minimal
model determines the type, so Tate's full algorithm is not needed.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional, Sequence

import networkx as nx
import sympy as sp

from .kernel import SeparablyClosed
from .surface import BaseKind, ClosedPoint, Curve, CurveKind, SurfaceConfig

t = sp.Symbol("t")
INF = math.inf


class DegenerateModel(ValueError):
    """Delta vanishes identically."""


class UnsupportedCharacteristic(ValueError):
    pass


def _domain(p: Optional[int]):
    if p is None or p == 0:
        return sp.QQ
    if p < 5 or not sp.isprime(p):
        raise UnsupportedCharacteristic(f"characteristic {p} is not 0 or a prime >= 5")
    return sp.GF(p)


def valuation(f: sp.Poly) -> float:
    """t-adic valuation; inf for the zero polynomial."""
    if f.is_zero:
        return INF
    return min(m[0] for m in f.monoms())


@dataclass(frozen=True)
class WeierstrassModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: sp.Poly
    a2: sp.Poly
    a3: sp.Poly
    a4: sp.Poly
    a6: sp.Poly
    p: Optional[int] = None

    @classmethod
    def from_lists(cls, coeffs: Sequence[Sequence], p: Optional[int] = None) -> WeierstrassModel:
        """Five coefficient lists [a1, a2, a3, a4, a6], each low degree first."""
        if len(coeffs) != 5:
            raise ValueError("expected five coefficient lists a1, a2, a3, a4, a6")
        dom = _domain(p)
        polys = []
        for c in coeffs:
            expr = sum(sp.Rational(x) * t**i for i, x in enumerate(c))
            polys.append(sp.Poly(expr, t, domain=dom))
        return cls(*polys, p=p)

    @classmethod
    def from_exprs(cls, a1=0, a2=0, a3=0, a4=0, a6=0, p: Optional[int] = None) -> WeierstrassModel:
        dom = _domain(p)
        return cls(*(sp.Poly(sp.sympify(x), t, domain=dom) for x in (a1, a2, a3, a4, a6)), p=p)

    @property
    def coefficients(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def __str__(self) -> str:
        names = ("a1", "a2", "a3", "a4", "a6")
        return ", ".join(f"{n}={c.as_expr()}" for n, c in zip(names, self.coefficients))


@dataclass(frozen=True)
class Invariants:
    c4: sp.Poly
    c6: sp.Poly
    delta: sp.Poly

    @property
    def v_c4(self) -> float:
        return valuation(self.c4)

    @property
    def v_c6(self) -> float:
        return valuation(self.c6)

    @property
    def v_delta(self) -> float:
        return valuation(self.delta)


def invariants(w: WeierstrassModel) -> Invariants:
    a1, a2, a3, a4, a6 = w.coefficients
    b2 = a1**2 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3**2 + 4 * a6
    b8 = a1**2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3**2 - a4**2
    c4 = b2**2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    delta = -(b2**2) * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6
    if delta.is_zero:
        raise DegenerateModel("discriminant is zero")
    return Invariants(c4, c6, delta)


def _shift(f: sp.Poly, k: int) -> sp.Poly:
    return sp.Poly(sp.expand(f.as_expr() / t**k), t, domain=f.domain)


def minimalize(inv: Invariants) -> tuple:
    """Divide out t^(4,6,12) while v(Delta) >= 12 and v(c4) >= 4; returns (invariants, steps)."""
    steps = 0
    while inv.v_delta >= 12 and inv.v_c4 >= 4:
        if inv.v_c6 < 6:
            raise DegenerateModel("v(c6) < 6 with v(c4) >= 4 and v(Delta) >= 12")
        inv = Invariants(_shift(inv.c4, 4), _shift(inv.c6, 6), _shift(inv.delta, 12))
        steps += 1
    return inv, steps


@dataclass(frozen=True)
class KodairaType:
    symbol: str  # "I", "II", "III", "IV"
    n: int = 0
    star: bool = False

    def __str__(self) -> str:
        s = f"I{self.n}" if self.symbol == "I" else self.symbol
        return s + ("*" if self.star else "")

    @classmethod
    def parse(cls, text: str) -> KodairaType:
        m = re.fullmatch(r"\s*(I(\d+)|II|III|IV)(\*?)\s*", text.replace("_", ""))
        if not m:
            raise ValueError(f"not a Kodaira symbol: {text!r}")
        star = bool(m.group(3))
        if m.group(2) is not None:
            return cls("I", int(m.group(2)), star)
        return cls(m.group(1), 0, star)

    @property
    def components(self) -> int:
        if self.symbol == "I":
            return self.n + 5 if self.star else max(self.n, 1)
        base = {"II": 1, "III": 2, "IV": 3}[self.symbol]
        return {"II": 9, "III": 8, "IV": 7}[self.symbol] if self.star else base


def classify_invariants(inv: Invariants) -> KodairaType:
    vc4, vc6, vd = inv.v_c4, inv.v_c6, int(inv.v_delta)
    if vd == 0:
        return KodairaType("I", 0)
    if vc4 == 0:
        return KodairaType("I", vd)
    if vc4 == 2 and vc6 == 3 and vd > 6:
        return KodairaType("I", vd - 6, True)
    table = {
        2: KodairaType("II"),
        3: KodairaType("III"),
        4: KodairaType("IV"),
        6: KodairaType("I", 0, True),
        8: KodairaType("IV", 0, True),
        9: KodairaType("III", 0, True),
        10: KodairaType("II", 0, True),
    }
    if vd not in table:
        raise DegenerateModel(f"no Kodaira type for v(c4)={vc4}, v(c6)={vc6}, v(Delta)={vd}")
    return table[vd]


def classify(w: WeierstrassModel) -> KodairaType:
    inv, _ = minimalize(invariants(w))
    return classify_invariants(inv)


def coordinate_change(w: WeierstrassModel, u, r=0, s=0, z=0) -> WeierstrassModel:
    """Model after x = u^2 x' + r, y = u^3 y' + s u^2 x' + z.

    ``u`` is a nonzero constant; r, s, z are polynomials in t.
    """
    u = sp.Rational(u) if not isinstance(u, sp.Basic) else u
    if u == 0:
        raise ValueError("u must be a unit")
    dom = w.a1.domain
    r, s, z = (sp.Poly(sp.sympify(x), t, domain=dom) for x in (r, s, z))
    a1, a2, a3, a4, a6 = w.coefficients
    n1 = a1 + 2 * s
    n2 = a2 - s * a1 + 3 * r - s**2
    n3 = a3 + r * a1 + 2 * z
    n4 = a4 - s * a3 + 2 * r * a2 - (z + r * s) * a1 + 3 * r**2 - 2 * s * z
    n6 = a6 + r * a4 + r**2 * a2 + r**3 - z * a3 - z**2 - r * z * a1
    scaled = [f * sp.Poly(1 / u**k, t, domain=dom) for f, k in zip((n1, n2, n3, n4, n6), (1, 2, 3, 4, 6))]
    return WeierstrassModel(*scaled, p=w.p)


# -- special fiber -------------------------------------------------------------


@dataclass(frozen=True)
class FiberGraph:
    kodaira: KodairaType
    graph: nx.MultiGraph
    snc: bool
    hint: str = ""
    config: Optional[SurfaceConfig] = None


def _tree_from_arms(center: str, arms: Sequence[int]) -> list:
    edges = []
    for i, length in enumerate(arms):
        prev = center
        for j in range(length):
            node = f"{center}.{i}.{j}"
            edges.append((prev, node))
            prev = node
    return edges


def _snc_config(nodes: list, edges: list, prefix: str = "C") -> SurfaceConfig:
    curves = tuple(Curve(n, CurveKind.SPECIAL, True, f"fiber component {n}") for n in nodes)
    points = tuple(ClosedPoint(f"m{i + 1}", (u, v)) for i, (u, v) in enumerate(edges))
    return SurfaceConfig(BaseKind.SEMI_GLOBAL, SeparablyClosed(), curves, points)


def fiber_graph(kt: KodairaType) -> FiberGraph:
    g = nx.MultiGraph()
    if kt.symbol == "I" and not kt.star:
        n = kt.n
        if n == 0:
            g.add_node("C0")
            cfg = SurfaceConfig(
                BaseKind.SEMI_GLOBAL,
                SeparablyClosed(),
                (Curve("C0", CurveKind.SPECIAL, False, "smooth genus one fiber"),),
                (),
            )
            return FiberGraph(kt, g, True, config=cfg)
        nodes = [f"C{i}" for i in range(n)]
        g.add_nodes_from(nodes)
        edges = [(nodes[i], nodes[(i + 1) % n]) for i in range(n)]
        for i, (u, v) in enumerate(edges):
            g.add_edge(u, v, key=f"m{i + 1}")
        if n == 1:
            return FiberGraph(kt, g, False, "nodal rational curve; blow up twice to reach a triangle")
        if n == 2:
            return FiberGraph(kt, g, False, "two curves meeting twice; blow up once to reach a triangle")
        return FiberGraph(kt, g, True, config=_snc_config(nodes, edges))
    if not kt.star:
        # II, III, IV: cusp, tangency, three concurrent lines
        nodes = [f"C{i}" for i in range(kt.components)]
        g.add_nodes_from(nodes)
        hint = {
            "II": "cuspidal rational curve",
            "III": "two rational curves tangent at one point",
            "IV": "three rational curves through one point",
        }[kt.symbol]
        return FiberGraph(kt, g, False, hint)
    if kt.symbol == "I":
        chain = [f"C{i}" for i in range(kt.n + 1)]
        edges = [(chain[i], chain[i + 1]) for i in range(kt.n)]
        edges += [(chain[0], "L1"), (chain[0], "L2"), (chain[-1], "L3"), (chain[-1], "L4")]
        nodes = chain + ["L1", "L2", "L3", "L4"]
    else:
        arms = {"IV": (2, 2, 2), "III": (1, 3, 3), "II": (1, 2, 5)}[kt.symbol]
        edges = _tree_from_arms("C", arms)
        nodes = ["C"] + [v for _, v in edges]
    g.add_nodes_from(nodes)
    for i, (u, v) in enumerate(edges):
        g.add_edge(u, v, key=f"m{i + 1}")
    return FiberGraph(kt, g, True, config=_snc_config(nodes, edges))
