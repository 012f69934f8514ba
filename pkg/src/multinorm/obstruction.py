"""Reciprocity obstructions for the multinorm torsor and the verdict logic.

The point-level obstruction asks for a choice of local residue per curve
whose point residues cancel at every closed point.  That is an affine system
over GF(2).  The Weil-level obstruction only looks at the generic fiber and
is strictly weaker.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from . import gf2, surface, torsor
from .gf2 import Gf2System, Solution
from .surface import BaseKind, CurveKind, MonomialElement, SurfaceConfig
from .torsor import (
    IndeterminateResidue,
    ResidueSet,
    Solvability,
    TorsorProblem,
    UnsolvableCurve,
)


class CycleError(ValueError):
    """The graph of curves with two-element residue sets is not a forest."""


class PropagationError(ValueError):
    """Tree propagation met two incompatible constraints."""


class SystemUnavailable(ValueError):
    """The system cannot be written down; ``reason`` says why."""

    def __init__(self, reason: str, unsolvable: Optional[str] = None):
        super().__init__(reason)
        self.reason = reason
        self.unsolvable = unsolvable


def reciprocity_check(config: SurfaceConfig, f: MonomialElement, g: MonomialElement) -> dict:
    """Per point M, the sum over curves through M of the point residues of d_gamma((f, g))."""
    sums = {}
    for p in config.points:
        total = 0
        for cid in p.curves:
            r = torsor.symbol_residue(config, f, g, cid)
            total += surface.point_residue(config, r, p.id)
        sums[p.id] = total % 2
    return sums


def solvability_table(problem: TorsorProblem) -> dict:
    return {cid: torsor.local_solvable(problem, cid) for cid in problem.config.curve_ids}


def residue_sets(problem: TorsorProblem) -> dict:
    """Residue set per curve; raises SystemUnavailable on the first failure."""
    out = {}
    for cid in problem.config.curve_ids:
        try:
            out[cid] = torsor.residue_value_set(problem, cid)
        except UnsolvableCurve as exc:
            raise SystemUnavailable(str(exc), unsolvable=cid) from None
        except IndeterminateResidue as exc:
            raise SystemUnavailable(str(exc)) from None
    return out


def _supported(rs: ResidueSet) -> bool:
    return bool(rs.base.divisor) or (rs.offset is not None and bool(rs.offset.divisor))


def build_system(problem: TorsorProblem, sets: Optional[dict] = None) -> Gf2System:
    cfg = problem.config
    sets = residue_sets(problem) if sets is None else sets
    variables = tuple(cid for cid in cfg.curve_ids if len(sets[cid]) == 2)
    index = {v: j for j, v in enumerate(variables)}
    hot = {cid for cid, rs in sets.items() if _supported(rs)}
    points, constants, rows = [], [], []
    for p in cfg.points:
        if not hot.intersection(p.curves):
            continue
        const, row = 0, 0
        for cid in p.curves:
            rs = sets[cid]
            const ^= surface.point_residue(cfg, rs.base, p.id)
            if rs.offset is not None and surface.point_residue(cfg, rs.offset, p.id):
                row ^= 1 << index[cid]
        points.append(p.id)
        constants.append(const)
        rows.append(row)
    inexact = tuple(cid for cid in variables if not sets[cid].exact)
    return Gf2System(variables, tuple(points), tuple(constants), tuple(rows), inexact)


def solve(system: Gf2System) -> Solution:
    return gf2.solve(system)


def variable_graph(problem: TorsorProblem, sets: dict):
    t = [cid for cid in problem.config.curve_ids if len(sets[cid]) == 2]
    return surface.dual_graph(problem.config, t)


def tree_propagate(problem: TorsorProblem, sets: Optional[dict] = None) -> dict:
    """Witness assignment built by walking each tree of two-element curves."""
    sets = residue_sets(problem) if sets is None else sets
    graph = variable_graph(problem, sets)
    if not surface.is_forest(graph):
        raise CycleError("curves with two-element residue sets contain a cycle")
    system = build_system(problem, sets)
    var = list(system.variables)
    fixed = {}
    edges = {v: [] for v in var}
    for i, pid in enumerate(system.points):
        involved = [var[j] for j, bit in enumerate(system.row_bits(i)) if bit]
        const = system.constants[i]
        if len(involved) == 1:
            v = involved[0]
            if fixed.get(v, const) != const:
                raise PropagationError(f"{v} is pinned to both values")
            fixed[v] = const
        elif len(involved) == 2:
            x, y = involved
            edges[x].append((y, const))
            edges[y].append((x, const))
        elif const:
            raise PropagationError(f"point {pid} reads 0 = 1")

    out = {}
    for start in var:
        if start in out:
            continue
        # collect the component, then root it at a pinned vertex if any
        comp, queue = [start], deque([start])
        seen = {start}
        while queue:
            v = queue.popleft()
            for w, _ in edges[v]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        root = next((v for v in comp if v in fixed), start)
        out[root] = fixed.get(root, 0)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w, const in edges[v]:
                if w not in out:
                    out[w] = out[v] ^ const
                    queue.append(w)
    if not system.satisfied_by(out):
        bad = [p for p, r in zip(system.points, system.residuals(out)) if r]
        raise PropagationError(f"propagation leaves points {bad} unbalanced")
    return out


# -- Weil level ---------------------------------------------------------------


def weil_places(problem: TorsorProblem, sets: Optional[dict] = None) -> dict:
    """Pre-corestricted Z/2 data: for each horizontal curve, the point residues of
    its residue set at the point where it meets the special fiber.

    Needs a semi-global configuration over a separably closed base, where the
    corestriction on Z/2 is the identity.
    """
    cfg = problem.config
    if cfg.base_kind is not BaseKind.SEMI_GLOBAL or not cfg.separably_closed:
        raise ValueError("Weil data needs a semi-global configuration over a separably closed base")
    places = {}
    for c in cfg.curves:
        if c.kind is not CurveKind.HORIZONTAL:
            continue
        rs = sets[c.id] if sets is not None else torsor.residue_value_set(problem, c.id)
        (pid,) = cfg.points_on(c.id)
        places[c.id] = frozenset(surface.point_residue(cfg, e, pid) for e in rs.elements())
    return places


@dataclass(frozen=True)
class WeilResult:
    feasible: bool
    witness: Optional[dict] = None
    common_sum: Optional[int] = None


def weil_obstruction(places) -> WeilResult:
    """Infeasible exactly when every selection of one value per place sums to 1."""
    items = dict(places) if isinstance(places, dict) else dict(enumerate(places))
    for k, subset in items.items():
        if not subset:
            raise ValueError(f"empty residue subset at place {k}")
    keys = list(items)
    flexible = next((k for k in keys if len(set(items[k])) == 2), None)
    pick = {k: min(items[k]) for k in keys}
    total = sum(pick.values()) % 2
    if total == 0:
        return WeilResult(True, witness=pick)
    if flexible is not None:
        pick[flexible] ^= 1
        return WeilResult(True, witness=pick)
    return WeilResult(False, common_sum=1)


def weil_obstruction_exhaustive(places) -> WeilResult:
    """Brute-force reference for ``weil_obstruction``."""
    items = dict(places) if isinstance(places, dict) else dict(enumerate(places))
    keys = list(items)
    for combo in itertools.product(*(sorted(items[k]) for k in keys)):
        if sum(combo) % 2 == 0:
            return WeilResult(True, witness=dict(zip(keys, combo)))
    return WeilResult(False, common_sum=1)


# -- verdict -------------------------------------------------------------------


class VerdictKind(str, Enum):
    NO_POINT = "NoRationalPoint"
    HAS_POINT = "HasRationalPoint"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    reason: str
    witness: Optional[dict] = None
    certificate: tuple = field(default=())

    def __str__(self) -> str:
        return f"{self.kind.value}: {self.reason}"


def descent_hypotheses(problem: TorsorProblem) -> list:
    """Hypotheses of the descent theorem that fail; empty when all hold."""
    cfg = problem.config
    missing = []
    if not cfg.separably_closed:
        missing.append("base residue field is not separably closed")
    if not cfg.equicharacteristic:
        missing.append("base is not an algebra over a field")
    if problem.validate():
        missing.append("supports of a, b, c are not a clean SNC configuration")
    return missing


def verdict(problem: TorsorProblem) -> Verdict:
    if torsor.trivially_solvable(problem):
        return Verdict(VerdictKind.HAS_POINT, "one of a, b, ab is a square in K")
    for cid, s in solvability_table(problem).items():
        if s is Solvability.UNSOLVABLE:
            return Verdict(VerdictKind.NO_POINT, f"no local point along {cid}", certificate=(cid,))
    try:
        sets = residue_sets(problem)
    except SystemUnavailable as exc:
        return Verdict(VerdictKind.INCONCLUSIVE, exc.reason)
    system = build_system(problem, sets)
    sol = solve(system)
    if not sol.feasible:
        return Verdict(
            VerdictKind.NO_POINT,
            "reciprocity system is infeasible",
            certificate=sol.certificate,
        )
    if system.inexact:
        return Verdict(VerdictKind.INCONCLUSIVE, "feasible, but residue sets on "
                       + ", ".join(system.inexact) + " are only containments")
    table = solvability_table(problem)
    unknown = [cid for cid, s in table.items() if s is not Solvability.SOLVABLE]
    if unknown:
        return Verdict(VerdictKind.INCONCLUSIVE, "local solvability unknown on " + ", ".join(unknown))
    missing = descent_hypotheses(problem)
    if missing:
        return Verdict(VerdictKind.INCONCLUSIVE, "feasible, but " + "; ".join(missing))
    return Verdict(VerdictKind.HAS_POINT, "feasible system and descent hypotheses hold", witness=sol.witness)
