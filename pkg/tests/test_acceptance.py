"""Acceptance criteria 1-9.  Each prints one PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) or under pytest.
"""

from __future__ import annotations

import os
import random
import sys
import time

sys.path.insert(0, os.path.dirname(__file__))

from generators import random_config, random_element, random_problem  # noqa: E402
from multinorm import fixtures, kodaira, obstruction as ob, surface  # noqa: E402
from multinorm.gf2 import Gf2System, exhausted_sums, solve, solve_exhaustive  # noqa: E402
from multinorm.obstruction import VerdictKind  # noqa: E402
from multinorm.oracle import check_lemma_facile, check_valeursdeA  # noqa: E402
from multinorm.torsor import Solvability, local_solvable, residue_value_set  # noqa: E402


def _line(n: int, ok: bool, detail: str) -> str:
    return f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"


def _emit(text: str) -> None:
    print(text, flush=True)


def criterion_1():
    t0 = time.perf_counter()
    p = fixtures.triangle_problem()
    nodes = ("m1", "m2", "m3")
    triplets = {}
    for cid in ("L1", "L2", "L3"):
        rs = residue_value_set(p, cid)
        triplets[cid] = {tuple(int(m in e.divisor) for m in nodes) for e in rs.elements()}
    expected = {
        "L1": {(0, 0, 1), (0, 1, 0)},
        "L2": {(0, 0, 0), (1, 0, 1)},
        "L3": {(0, 0, 0), (1, 1, 0)},
    }
    system = ob.build_system(p)
    sol = solve(system)
    sums = exhausted_sums(system)
    elapsed = time.perf_counter() - t0
    ok = (
        triplets == expected
        and not sol.feasible
        and len(sums) == 8
        and all(any(r) for _, r in sums)
        and elapsed < 1.0
    )
    return ok, f"triplets {triplets == expected}, infeasible {not sol.feasible}, 8/8 sums violated, {elapsed:.3f}s"


def criterion_2():
    t0 = time.perf_counter()
    w = kodaira.WeierstrassModel.from_exprs(a2=1, a6=kodaira.t**3)
    inv = kodaira.invariants(w)
    kt = kodaira.classify(w)
    fg = kodaira.fiber_graph(kt)
    cyc = fg.snc and fg.graph.number_of_nodes() == 3 and fg.graph.number_of_edges() == 3
    cyc = cyc and not surface.is_forest(surface.dual_graph(fg.config))
    p = fixtures.synthesize_counterexample(fg.config)
    v = ob.verdict(p)
    solvable = all(local_solvable(p, c) is Solvability.SOLVABLE for c in p.config.curve_ids)
    elapsed = time.perf_counter() - t0
    ok = (
        str(kt) == "I3"
        and inv.c4.as_expr() == 16
        and inv.v_delta == 3
        and cyc
        and v.kind is VerdictKind.NO_POINT
        and solvable
        and elapsed < 1.0
    )
    return ok, f"type {kt}, c4={inv.c4.as_expr()}, v(Delta)={inv.v_delta}, 3-cycle {cyc}, {v.kind.value}, all solvable {solvable}, {elapsed:.3f}s"


def criterion_3():
    odd, even = fixtures.p1_over_dvr(1), fixtures.p1_over_dvr(2)
    unsolvable = local_solvable(odd, "eta") is Solvability.UNSOLVABLE
    v_odd, v_even = ob.verdict(odd).kind, ob.verdict(even).kind
    weil = ob.weil_obstruction(ob.weil_places(odd))
    ok = (
        unsolvable
        and v_odd is VerdictKind.NO_POINT
        and v_even is VerdictKind.HAS_POINT
        and not weil.feasible
        and weil.common_sum == 1
    )
    return ok, f"c=t: eta unsolvable {unsolvable}, {v_odd.value}, Weil infeasible sum {weil.common_sum}; c=t^2: {v_even.value}"


def criterion_4():
    p = fixtures.fixture("weil-insufficient").problem
    weil = ob.weil_obstruction(ob.weil_places(p))
    v = ob.verdict(p)
    ok = weil.feasible and v.kind is VerdictKind.NO_POINT and "system" in v.reason
    return ok, f"Weil feasible {weil.feasible}, point-level verdict {v.kind.value} ({v.reason})"


def criterion_5(n: int = 100, seed: int = 5):
    t0 = time.perf_counter()
    rng = random.Random(seed)
    done = failures = nontrivial = 0
    while done < n:
        p = random_problem(rng, random_config(rng, forest=True))
        if p is None:
            continue
        sets = ob.residue_sets(p)
        if not all(rs.exact for rs in sets.values()):
            continue
        done += 1
        try:
            w = ob.tree_propagate(p, sets)
        except (ob.CycleError, ob.PropagationError):
            failures += 1
            continue
        nontrivial += bool(w)
        if not ob.build_system(p, sets).satisfied_by(w) or ob.verdict(p).kind is not VerdictKind.HAS_POINT:
            failures += 1
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 10.0
    return ok, f"{done} forest problems ({nontrivial} with variables), {failures} failures, {elapsed:.2f}s"


def criterion_6(n: int = 100, min_infeasible: int = 10, seed: int = 6):
    rng = random.Random(seed)
    pool = [fixtures.triangle_problem(), fixtures.fixture("weil-insufficient").problem]
    infeasible = 0
    tries = 0
    while (len(pool) < n or infeasible < min_infeasible) and tries < 20000:
        tries += 1
        cfg = random_config(rng, max_curves=8)
        p = random_problem(rng, cfg)
        if p is None:
            continue
        feasible = solve(ob.build_system(p)).feasible
        if feasible and len(pool) >= n:
            continue
        infeasible += not feasible
        pool.append(p)
    violations = blowups = 0
    for p in pool:
        before = solve(ob.build_system(p)).feasible
        for pt in p.config.points:
            if len(pt.curves) != 2:
                continue
            cfg2, p2 = surface.blowup(p.config, pt.id, p)
            blowups += 1
            if surface.validate(cfg2, (p2.a, p2.b, p2.c)):
                violations += 1
                continue
            if solve(ob.build_system(p2)).feasible != before:
                violations += 1
    infeasible = sum(not solve(ob.build_system(p)).feasible for p in pool)
    ok = violations == 0 and len(pool) >= n
    return ok, f"{len(pool)} problems ({infeasible} infeasible), {blowups} blow-ups, {violations} violations"


def criterion_7(n: int = 1000, seed: int = 7):
    rng = random.Random(seed)
    violations = points = 0
    for _ in range(n):
        cfg = random_config(rng)
        f, g = random_element(rng, cfg), random_element(rng, cfg)
        sums = ob.reciprocity_check(cfg, f, g)
        points += len(sums)
        violations += sum(sums.values())
    return violations == 0, f"{n} symbols, {points} point sums, {violations} nonzero"


def criterion_8(n: int = 1000, seed: int = 8):
    rng = random.Random(seed)
    disagreements = infeasible = 0
    for _ in range(n):
        k = rng.randint(0, 20)
        m = rng.randint(0, k + 4)
        s = Gf2System(
            tuple(f"x{i}" for i in range(k)),
            tuple(f"p{i}" for i in range(m)),
            tuple(rng.randrange(2) for _ in range(m)),
            tuple(rng.randrange(1 << k) if k else 0 for _ in range(m)),
        )
        fast, slow = solve(s), solve_exhaustive(s)
        infeasible += not fast.feasible
        if fast.feasible != slow.feasible or (fast.feasible and not s.satisfied_by(fast.witness)):
            disagreements += 1
    return disagreements == 0, f"{n} systems ({infeasible} infeasible), {disagreements} disagreements"


FACILE = [(2, 0), (1, 1), (2, 1), (1, 0)]
VALUES = [((1, 1), (2, 0)), ((2, 2), (1, 1)), ((1, 1), (2, 1)), ((1, 0), (1, 1))]


def criterion_9(trials: int = 10_000, seed: int = 9):
    lines, ok = [], True
    for q in (5, 13):
        t0 = time.perf_counter()
        violations = 0
        missing = []
        for i, (u, m) in enumerate(FACILE):
            rep = check_lemma_facile(u, m, q=q, trials=trials, seed=seed + i)
            violations += len(rep.violations)
            if m % 2 and not rep.all_hit:
                missing.append(rep.name)
        for i, (a, b) in enumerate(VALUES):
            rep = check_valeursdeA(a, b, q=q, trials=trials, seed=seed + 10 + i)
            violations += len(rep.violations)
        elapsed = time.perf_counter() - t0
        good = violations == 0 and not missing and elapsed < 60.0
        ok &= good
        lines.append(f"q={q}: {violations} violations, unobserved {missing or 'none'}, {elapsed:.1f}s")
    return ok, "; ".join(lines) + f" ({trials} samples per case)"


CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
]


def _check(n: int, capsys):
    ok, detail = CRITERIA[n - 1]()
    with capsys.disabled():
        _emit(_line(n, ok, detail))
    assert ok, detail


def test_criterion_1_triangle(capsys):
    _check(1, capsys)


def test_criterion_2_kodaira_pipeline(capsys):
    _check(2, capsys)


def test_criterion_3_p1_over_dvr(capsys):
    _check(3, capsys)


def test_criterion_4_weil_insufficient(capsys):
    _check(4, capsys)


def test_criterion_5_tree_propagation(capsys):
    _check(5, capsys)


def test_criterion_6_blowup_invariance(capsys):
    _check(6, capsys)


def test_criterion_7_reciprocity(capsys):
    _check(7, capsys)


def test_criterion_8_solver_oracle(capsys):
    _check(8, capsys)


def test_criterion_9_finite_field_oracle(capsys):
    _check(9, capsys)


if __name__ == "__main__":
    failed = 0
    for i, crit in enumerate(CRITERIA, start=1):
        ok, detail = crit()
        _emit(_line(i, ok, detail))
        failed += not ok
    sys.exit(1 if failed else 0)
