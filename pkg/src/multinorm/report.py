"""End-to-end analysis and its report, in machine-readable and human form."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import obstruction, torsor
from .gf2 import exhausted_sums
from .obstruction import VerdictKind
from .surface import BaseKind
from .torsor import TorsorProblem

# exhausted sums are listed up to this many variables
MAX_EXHAUST = 12


@dataclass
class Report:
    verdict: dict
    solvability: dict
    residue_sets: dict = field(default_factory=dict)
    system: Optional[dict] = None
    exhausted_sums: Optional[list] = None
    weil: Optional[dict] = None
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def kind(self) -> VerdictKind:
        return VerdictKind(self.verdict["kind"])

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> Report:
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))

    def human(self) -> str:
        lines = [f"verdict: {self.verdict['kind']} ({self.verdict['reason']})"]
        if self.violations:
            lines.append("violations:")
            lines += [f"  {v}" for v in self.violations]
        if self.solvability:
            lines.append("local solvability:")
            lines += [f"  {cid:>8}  {s}" for cid, s in self.solvability.items()]
        if self.residue_sets:
            lines.append("residue sets (divisor mod 2 of each element):")
            for cid, rs in self.residue_sets.items():
                elems = " | ".join("{" + ",".join(e) + "}" for e in rs["elements"])
                tag = "exact" if rs["exact"] else "containment"
                lines.append(f"  {cid:>8}  case {rs['case']:<3} {tag:<11} {elems}")
        if self.system is not None:
            s = self.system
            lines.append(f"system over {', '.join(s['variables']) or 'no variables'}:")
            for pid, const, row in zip(s["points"], s["constants"], s["rows"]):
                lines.append(f"  {pid:>8}  {''.join(map(str, row)) or '-'} = {const}")
        if self.exhausted_sums is not None:
            lines.append(f"all {len(self.exhausted_sums)} assignments violate some point:")
            for item in self.exhausted_sums:
                a = "".join(str(item["assignment"][v]) for v in self.system["variables"])
                lines.append(f"  {a or '-'} -> {''.join(map(str, item['residuals']))}")
        cert = self.verdict.get("certificate")
        if cert:
            lines.append("certificate: " + ", ".join(cert))
        wit = self.verdict.get("witness")
        if wit:
            lines.append("witness: " + ", ".join(f"{k}={v}" for k, v in wit.items()))
        if self.weil is not None:
            w = self.weil
            state = "feasible" if w["feasible"] else f"infeasible, every selection sums to {w['common_sum']}"
            lines.append(f"Weil level: {state}")
            lines += [f"  {k:>8}  {sorted(v)}" for k, v in w["places"].items()]
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)


def _rs_dict(rs: torsor.ResidueSet) -> dict:
    return {
        "case": rs.case,
        "exact": rs.exact,
        "elements": [sorted(e.divisor) + (["eps"] if e.bit else []) for e in rs.elements()],
    }


def analyze(problem: TorsorProblem, weil: bool = False) -> Report:
    violations = [str(v) for v in problem.validate()]
    if violations:
        return Report(
            verdict={"kind": VerdictKind.INCONCLUSIVE.value, "reason": "configuration is invalid",
                     "witness": None, "certificate": []},
            solvability={},
            violations=violations,
        )
    v = obstruction.verdict(problem)
    rep = Report(
        verdict={
            "kind": v.kind.value,
            "reason": v.reason,
            "witness": dict(v.witness) if v.witness else None,
            "certificate": list(v.certificate),
        },
        solvability={k: s.value for k, s in obstruction.solvability_table(problem).items()},
    )
    sets = {}
    for cid in problem.config.curve_ids:
        try:
            sets[cid] = torsor.residue_value_set(problem, cid)
        except (torsor.UnsolvableCurve, torsor.IndeterminateResidue) as exc:
            rep.notes.append(str(exc))
    rep.residue_sets = {cid: _rs_dict(rs) for cid, rs in sets.items()}
    if len(sets) == len(problem.config.curve_ids):
        system = obstruction.build_system(problem, sets)
        rep.system = {
            "variables": list(system.variables),
            "points": list(system.points),
            "constants": list(system.constants),
            "rows": [list(system.row_bits(i)) for i in range(len(system.points))],
            "inexact": list(system.inexact),
        }
        sol = obstruction.solve(system)
        if not sol.feasible and system.n_vars <= MAX_EXHAUST:
            rep.exhausted_sums = [
                {"assignment": a, "residuals": list(r)} for a, r in exhausted_sums(system)
            ]
    if weil:
        cfg = problem.config
        if cfg.base_kind is BaseKind.SEMI_GLOBAL and cfg.separably_closed:
            try:
                places = obstruction.weil_places(problem)
            except (torsor.UnsolvableCurve, torsor.IndeterminateResidue) as exc:
                rep.notes.append(f"Weil level unavailable: {exc}")
            else:
                w = obstruction.weil_obstruction(places)
                rep.weil = {
                    "feasible": w.feasible,
                    "common_sum": w.common_sum,
                    "witness": w.witness,
                    "places": {k: sorted(s) for k, s in places.items()},
                }
        else:
            rep.notes.append("Weil level needs a semi-global configuration over a separably closed base")
    return rep


def exit_code(rep: Report) -> int:
    return 1 if rep.kind is VerdictKind.INCONCLUSIVE else 0

