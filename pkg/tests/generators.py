"""Random configurations and problems for the property suites."""

from __future__ import annotations

import random

from multinorm.kernel import SeparablyClosed
from multinorm.surface import BaseKind, ClosedPoint, Curve, CurveKind, MonomialElement, SurfaceConfig
from multinorm.torsor import Solvability, TorsorProblem, local_solvable, trivially_solvable


def random_config(rng: random.Random, max_curves: int = 8, forest: bool = False) -> SurfaceConfig:
    n_special = rng.randint(1, min(5, max_curves))
    n_horizontal = rng.randint(0, max_curves - n_special)
    special = [f"C{i}" for i in range(n_special)]
    curves = [Curve(c, CurveKind.SPECIAL, True) for c in special]
    points = []
    if forest:
        for i in range(1, n_special):
            points.append(ClosedPoint(f"n{i}", (special[rng.randrange(i)], special[i])))
    else:
        k = 0
        for i in range(n_special):
            for j in range(i + 1, n_special):
                if rng.random() < 0.6:
                    points.append(ClosedPoint(f"n{k}", (special[i], special[j])))
                    k += 1
    for i in range(n_horizontal):
        h = f"H{i}"
        curves.append(Curve(h, CurveKind.HORIZONTAL, True))
        points.append(ClosedPoint(f"h{i}", (rng.choice(special), h)))
    for i in range(rng.randint(0, 2)):
        points.append(ClosedPoint(f"z{i}", (rng.choice(special),)))
    return SurfaceConfig(BaseKind.SEMI_GLOBAL, SeparablyClosed(), tuple(curves), tuple(points))


def random_element(rng: random.Random, cfg: SurfaceConfig, lo: int = -2, hi: int = 3) -> MonomialElement:
    return MonomialElement.of({cid: rng.randint(lo, hi) for cid in cfg.curve_ids if rng.random() < 0.7})


def random_problem(rng: random.Random, cfg: SurfaceConfig, solvable: bool = True, tries: int = 200):
    """Problem with every curve locally solvable and a, b, ab nonsquares; None if not found."""
    for _ in range(tries):
        p = TorsorProblem(cfg, random_element(rng, cfg), random_element(rng, cfg), random_element(rng, cfg))
        if trivially_solvable(p):
            continue
        if solvable and any(local_solvable(p, c) is not Solvability.SOLVABLE for c in cfg.curve_ids):
            continue
        return p
    return None


def with_adjusters(cfg: SurfaceConfig) -> SurfaceConfig:
    """Add one horizontal curve per special curve, used to balance degrees."""
    curves = list(cfg.curves)
    points = list(cfg.points)
    for c in cfg.curves:
        if c.kind is CurveKind.SPECIAL:
            curves.append(Curve(f"A_{c.id}", CurveKind.HORIZONTAL, True, "degree adjuster"))
            points.append(ClosedPoint(f"a_{c.id}", (c.id, f"A_{c.id}")))
    return SurfaceConfig(cfg.base_kind, cfg.residue_field, tuple(curves), tuple(points))


def balance(cfg: SurfaceConfig, f: MonomialElement) -> MonomialElement:
    """Make div(f).gamma even on every special curve, as for a principal divisor
    when the special curves have even self-intersection."""
    exps = dict(f.as_dict)
    for c in cfg.curves:
        if c.kind is not CurveKind.SPECIAL:
            continue
        adj = f"A_{c.id}"
        total = 0
        for pid in cfg.points_on(c.id):
            total += sum(exps.get(x, 0) for x in cfg.point(pid).curves if x not in (c.id, adj))
        exps[adj] = total % 2
    return MonomialElement.of(exps, f.unit)


def random_balanced_problem(rng: random.Random, max_curves: int = 8, tries: int = 200):
    cfg = with_adjusters(random_config(rng, max_curves=max_curves))
    for _ in range(tries):
        a, b, c = (balance(cfg, random_element(rng, cfg)) for _ in range(3))
        p = TorsorProblem(cfg, a, b, c)
        if not trivially_solvable(p):
            return p
    return None
