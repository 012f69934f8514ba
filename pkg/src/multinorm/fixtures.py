"""Named configurations with their known verdicts, and counterexample synthesis."""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass
from typing import Optional

from . import document, kodaira, surface
from .kernel import SeparablyClosed
from .obstruction import VerdictKind
from .surface import BaseKind, ClosedPoint, Curve, CurveKind, MonomialElement, SurfaceConfig
from .torsor import TorsorProblem


class NoTriangle(ValueError):
    """The dual graph has no three pairwise-meeting curves."""


class UnknownFixture(KeyError):
    pass


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    problem: TorsorProblem
    expected: VerdictKind
    # expected Weil-level feasibility, when the fixture carries Weil data
    weil_feasible: Optional[bool] = None

    @property
    def document(self) -> document.ConfigDocument:
        return document.from_model(self.problem.config, self.problem)


def _sg(curves, points, field=SeparablyClosed()) -> SurfaceConfig:
    return SurfaceConfig(BaseKind.SEMI_GLOBAL, field, tuple(curves), tuple(points))


def _special(cid: str, name: str = "") -> Curve:
    return Curve(cid, CurveKind.SPECIAL, True, name)


def _horizontal(cid: str, name: str = "") -> Curve:
    return Curve(cid, CurveKind.HORIZONTAL, True, name)


def p1_over_dvr(c_exponent: int) -> TorsorProblem:
    """P^1 over C[[t]] with a = x, b = x + 1, c = t^k."""
    cfg = _sg(
        [
            _special("eta", "special fiber t = 0"),
            _horizontal("X0", "x = 0"),
            _horizontal("X1", "x = -1"),
            _horizontal("Xinf", "x = infinity"),
        ],
        [
            ClosedPoint("M0", ("eta", "X0")),
            ClosedPoint("M1", ("eta", "X1")),
            ClosedPoint("Minf", ("eta", "Xinf")),
        ],
    )
    a = MonomialElement.of({"X0": 1, "Xinf": -1})
    b = MonomialElement.of({"X1": 1, "Xinf": -1})
    c = MonomialElement.of({"eta": c_exponent})
    return TorsorProblem(cfg, a, b, c)


def triangle_config() -> SurfaceConfig:
    """Three curves pairwise meeting; m_i is the node off L_i."""
    return _sg(
        [_special("L1", "pi_1 = 0"), _special("L2", "pi_2 = 0"), _special("L3", "pi_3 = 0")],
        [
            ClosedPoint("m1", ("L2", "L3")),
            ClosedPoint("m2", ("L1", "L3")),
            ClosedPoint("m3", ("L1", "L2")),
        ],
    )


def triangle_problem() -> TorsorProblem:
    cfg = triangle_config()
    a = MonomialElement.of({"L2": 1, "L3": 1})
    b = MonomialElement.of({"L3": 1, "L1": 1})
    c = MonomialElement.of({"L1": 1, "L2": 1, "L3": 1})
    return TorsorProblem(cfg, a, b, c)


def find_triangle(config: SurfaceConfig) -> tuple:
    """First (in curve order) triple of curves meeting pairwise at three distinct points."""
    meets = {}
    for p in config.points:
        if len(p.curves) == 2:
            meets.setdefault(frozenset(p.curves), p.id)
    ids = config.curve_ids
    for trio in itertools.combinations(ids, 3):
        pairs = [frozenset(x) for x in itertools.combinations(trio, 2)]
        if all(pr in meets for pr in pairs):
            nodes = {meets[pr] for pr in pairs}
            if len(nodes) == 3:
                return trio
    raise NoTriangle("dual graph contains no triangle")


def synthesize_counterexample(config: SurfaceConfig) -> TorsorProblem:
    """a = pi2 pi3, b = pi3 pi1, c = pi1 pi2 pi3 with div(pi_i) = L_i + D_i.

    Each D_i is a fresh horizontal curve crossing L_1 at a fresh point, so it
    avoids the nodes of the triangle, the other D_j and every earlier crossing.
    """
    trio = find_triangle(config)
    taken = set(config.curve_map) | set(config.point_map)

    def fresh(stem: str) -> str:
        name, k = stem, 1
        while name in taken:
            name = f"{stem}_{k}"
            k += 1
        taken.add(name)
        return name

    host = trio[0]
    d_ids, new_curves, new_points = [], [], []
    for i in range(3):
        d = fresh(f"D{i + 1}")
        d_ids.append(d)
        new_curves.append(Curve(d, CurveKind.HORIZONTAL, True, f"residual divisor of pi_{i + 1}"))
        new_points.append(ClosedPoint(fresh(f"d{i + 1}"), (host, d)))
    cfg = dataclasses.replace(
        config,
        curves=config.curves + tuple(new_curves),
        points=config.points + tuple(new_points),
    )
    pis = [MonomialElement.of({trio[i]: 1, d_ids[i]: 1}) for i in range(3)]
    a = pis[1] * pis[2]
    b = pis[2] * pis[0]
    c = pis[0] * pis[1] * pis[2]
    return TorsorProblem(cfg, a, b, c)


def i3_problem() -> TorsorProblem:
    w = kodaira.WeierstrassModel.from_exprs(a2=1, a6=kodaira.t**3)
    fg = kodaira.fiber_graph(kodaira.classify(w))
    return synthesize_counterexample(fg.config)


def gabber_problem() -> TorsorProblem:
    """Resolution of C[[x,y,z]]/(xyz + x^4 + y^4 + z^4), taken as given.

    The exceptional locus is a triangle L1, L2, L3 on which (v(x), v(y), v(z))
    is (2,1,1), (1,2,1), (1,1,2).  The strict transforms of x = 0 (four
    branches X1..X4) cross L1; likewise Y* cross L2 and Z* cross L3.  The
    three branches S1..S3 of x + y + z = 0 cross L1, L2, L3 respectively.
    """
    curves = [Curve(f"L{i}", CurveKind.EXCEPTIONAL, True, f"exceptional L{i}") for i in (1, 2, 3)]
    points = [
        ClosedPoint("m1", ("L2", "L3")),
        ClosedPoint("m2", ("L1", "L3")),
        ClosedPoint("m3", ("L1", "L2")),
    ]
    for var, host in (("X", "L1"), ("Y", "L2"), ("Z", "L3")):
        for k in range(1, 5):
            cid = f"{var}{k}"
            curves.append(Curve(cid, CurveKind.HORIZONTAL, True, f"branch {k} of {var.lower()} = 0"))
            points.append(ClosedPoint(f"p{cid}", (host, cid)))
    for k, host in enumerate(("L1", "L2", "L3"), start=1):
        cid = f"S{k}"
        curves.append(Curve(cid, CurveKind.HORIZONTAL, True, f"branch {k} of x + y + z = 0"))
        points.append(ClosedPoint(f"p{cid}", (host, cid)))
    cfg = SurfaceConfig(BaseKind.LOCAL, SeparablyClosed(), tuple(curves), tuple(points))

    weights = {"L1": (2, 1, 1), "L2": (1, 2, 1), "L3": (1, 1, 2)}

    def div(x: int, y: int, z: int, s: int = 0) -> MonomialElement:
        exps = {L: x * w[0] + y * w[1] + z * w[2] + s * min(w) for L, w in weights.items()}
        for var, e in (("X", x), ("Y", y), ("Z", z)):
            for k in range(1, 5):
                exps[f"{var}{k}"] = e
        for k in range(1, 4):
            exps[f"S{k}"] = s
        return MonomialElement.of(exps)

    a = div(0, 1, 1)  # yz
    b = div(1, 0, 1)  # xz
    c = div(1, 1, 1, 1)  # xyz(x+y+z)
    return TorsorProblem(cfg, a, b, c)


def tree_problem() -> TorsorProblem:
    """A chain of three special components with horizontal curves; the curves
    with two-element residue sets form a tree."""
    cfg = _sg(
        [
            _special("C1"),
            _special("C2"),
            _special("C3"),
            _horizontal("H1", "crosses C1"),
            _horizontal("H2", "crosses C2"),
            _horizontal("H3", "crosses C3"),
        ],
        [
            ClosedPoint("n12", ("C1", "C2")),
            ClosedPoint("n23", ("C2", "C3")),
            ClosedPoint("h1", ("C1", "H1")),
            ClosedPoint("h2", ("C2", "H2")),
            ClosedPoint("h3", ("C3", "H3")),
        ],
    )
    a = MonomialElement.of({"C1": 1, "C3": 1, "H2": 1})
    b = MonomialElement.of({"C2": 1, "H1": 1, "H3": 1})
    c = MonomialElement.of({"C1": 1, "C2": 1, "C3": 1, "H1": 1})
    return TorsorProblem(cfg, a, b, c)


def _fixtures() -> dict:
    return {
        "p1-dvr-odd": Fixture(
            "p1-dvr-odd",
            "P^1 over C[[t]], a = x, b = x + 1, c = t",
            p1_over_dvr(1),
            VerdictKind.NO_POINT,
            weil_feasible=False,
        ),
        "p1-dvr-even": Fixture(
            "p1-dvr-even",
            "P^1 over C[[t]], a = x, b = x + 1, c = t^2",
            p1_over_dvr(2),
            VerdictKind.HAS_POINT,
            weil_feasible=True,
        ),
        "triangle-semilocal": Fixture(
            "triangle-semilocal",
            "triangle of curves, a = pi2 pi3, b = pi3 pi1, c = pi1 pi2 pi3",
            triangle_problem(),
            VerdictKind.NO_POINT,
        ),
        "i3-elliptic": Fixture(
            "i3-elliptic",
            "type I3 fiber of y^2 = x^3 + x^2 + t^3 with synthesized a, b, c",
            i3_problem(),
            VerdictKind.NO_POINT,
        ),
        "gabber-local": Fixture(
            "gabber-local",
            "resolved xyz + x^4 + y^4 + z^4 = 0, a = yz, b = xz, c = xyz(x+y+z)",
            gabber_problem(),
            VerdictKind.NO_POINT,
        ),
        "tree-cor62": Fixture(
            "tree-cor62",
            "chain of three components; tree of two-element residue sets",
            tree_problem(),
            VerdictKind.HAS_POINT,
        ),
        "weil-insufficient": Fixture(
            "weil-insufficient",
            "synthesized counterexample on the triangle; Weil data is feasible",
            synthesize_counterexample(triangle_config()),
            VerdictKind.NO_POINT,
            weil_feasible=True,
        ),
    }


FIXTURE_NAMES = (
    "p1-dvr-odd",
    "p1-dvr-even",
    "triangle-semilocal",
    "i3-elliptic",
    "gabber-local",
    "tree-cor62",
    "weil-insufficient",
)


def fixture(name: str) -> Fixture:
    table = _fixtures()
    if name not in table:
        raise UnknownFixture(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
    return table[name]
