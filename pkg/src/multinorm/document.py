"""JSON configuration documents: schema, parsing with line diagnostics, printing."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .kernel import FiniteQ1Mod4, SeparablyClosed
from .surface import BaseKind, ClosedPoint, Curve, CurveKind, MonomialElement, SurfaceConfig
from .torsor import TorsorProblem


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class FiniteField(_Strict):
    finite: int


class BaseSpec(_Strict):
    kind: Literal["semi-global", "local"]
    residue_field: Union[Literal["separably-closed"], FiniteField]
    equicharacteristic: bool = True


class CurveSpec(_Strict):
    id: str
    name: str = ""
    kind: Literal["special-fiber", "horizontal", "exceptional"]
    rational: bool = True


class PointSpec(_Strict):
    id: str
    curves: List[str]


class ElementSpec(_Strict):
    exponents: Dict[str, int] = Field(default_factory=dict)
    unit: Literal["square", "nonsquare"] = "square"


class ProblemSpec(_Strict):
    a: ElementSpec
    b: ElementSpec
    c: ElementSpec


class ConfigDocument(_Strict):
    base: BaseSpec
    curves: List[CurveSpec]
    points: List[PointSpec]
    problem: Optional[ProblemSpec] = None


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    message: str

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}: {self.message}"


class DocumentError(ValueError):
    def __init__(self, diagnostics: list):
        self.diagnostics = diagnostics
        super().__init__("\n".join(str(d) for d in diagnostics))


# -- locating JSON paths in source text ----------------------------------------

_decoder = json.JSONDecoder()


def _skip_ws(text: str, i: int) -> int:
    while i < len(text) and text[i] in " \t\r\n":
        i += 1
    return i


def _locate(text: str, path: tuple) -> int:
    """Character offset of the value (or key) named by ``path``; best effort."""
    i = _skip_ws(text, 0)
    for step in path:
        if i >= len(text):
            break
        if text[i] == "{" and isinstance(step, str):
            j = _skip_ws(text, i + 1)
            found = None
            while j < len(text) and text[j] != "}":
                key, k = json.decoder.scanstring(text, j + 1)
                key_at = j
                k = _skip_ws(text, k) + 1  # colon
                k = _skip_ws(text, k)
                if key == step:
                    found = (key_at, k)
                    break
                _, k = _decoder.raw_decode(text, k)
                k = _skip_ws(text, k)
                if text[k] == ",":
                    k = _skip_ws(text, k + 1)
                j = k
            if found is None:
                return i
            i = found[1]
        elif text[i] == "[" and isinstance(step, int):
            j = _skip_ws(text, i + 1)
            for _ in range(step):
                _, j = _decoder.raw_decode(text, j)
                j = _skip_ws(text, j)
                if text[j] == ",":
                    j = _skip_ws(text, j + 1)
            i = j
        else:
            break
    return i


def _line_col(text: str, offset: int) -> tuple:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _id_offset(text: str, ident: str) -> int:
    for needle in (f'"id": "{ident}"', f'"id":"{ident}"', f'"{ident}"'):
        k = text.find(needle)
        if k >= 0:
            return k
    return 0


# -- conversion ----------------------------------------------------------------


def _element(spec: ElementSpec) -> MonomialElement:
    return MonomialElement.of(spec.exponents, 1 if spec.unit == "nonsquare" else 0)


def to_model(doc: ConfigDocument) -> tuple:
    """(SurfaceConfig, TorsorProblem or None); no validation beyond the schema."""
    rf = doc.base.residue_field
    field = SeparablyClosed() if rf == "separably-closed" else FiniteQ1Mod4(rf.finite)
    cfg = SurfaceConfig(
        BaseKind(doc.base.kind),
        field,
        tuple(Curve(c.id, CurveKind(c.kind), c.rational, c.name) for c in doc.curves),
        tuple(ClosedPoint(p.id, tuple(p.curves)) for p in doc.points),
        doc.base.equicharacteristic,
    )
    if doc.problem is None:
        return cfg, None
    pr = doc.problem
    return cfg, TorsorProblem(cfg, _element(pr.a), _element(pr.b), _element(pr.c))


def _element_spec(f: MonomialElement) -> ElementSpec:
    return ElementSpec(exponents=dict(f.exponents), unit="nonsquare" if f.unit else "square")


def from_model(cfg: SurfaceConfig, problem: Optional[TorsorProblem] = None) -> ConfigDocument:
    rf = "separably-closed" if cfg.separably_closed else FiniteField(finite=cfg.residue_field.q)
    base = BaseSpec(kind=cfg.base_kind.value, residue_field=rf, equicharacteristic=cfg.equicharacteristic)
    curves = [CurveSpec(id=c.id, name=c.name, kind=c.kind.value, rational=c.rational) for c in cfg.curves]
    points = [PointSpec(id=p.id, curves=list(p.curves)) for p in cfg.points]
    prob = None
    if problem is not None:
        prob = ProblemSpec(a=_element_spec(problem.a), b=_element_spec(problem.b), c=_element_spec(problem.c))
    return ConfigDocument(base=base, curves=curves, points=points, problem=prob)


def print_document(doc: ConfigDocument) -> str:
    return json.dumps(doc.model_dump(mode="json"), indent=2) + "\n"


def parse_document(text: str) -> ConfigDocument:
    """Schema-checked document; DocumentError with line/column diagnostics otherwise."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError([Diagnostic(exc.lineno, exc.colno, exc.msg)]) from None
    try:
        return ConfigDocument.model_validate(raw)
    except ValidationError as exc:
        diags = []
        for err in exc.errors():
            loc = tuple(err["loc"])
            # union members show up as extra path steps; keep the JSON part
            path = tuple(s for s in loc if isinstance(s, int) or s in _json_keys(raw, loc))
            line, col = _line_col(text, _locate(text, path))
            where = ".".join(str(s) for s in path) or "<root>"
            diags.append(Diagnostic(line, col, f"{where}: {err['msg']}"))
        raise DocumentError(diags) from None


def _json_keys(raw, loc: tuple) -> set:
    keys, node = set(), raw
    for step in loc:
        if isinstance(node, dict) and step in node:
            keys.add(step)
            node = node[step]
        elif isinstance(node, list) and isinstance(step, int) and step < len(node):
            node = node[step]
        elif isinstance(node, dict) and isinstance(step, str):
            keys.add(step)  # missing or extra key: still worth pointing at
            break
    return keys


def load(text: str) -> tuple:
    """Parse and validate; returns (document, config, problem)."""
    from . import surface

    doc = parse_document(text)
    try:
        cfg, problem = to_model(doc)
    except ValueError as exc:
        line, col = _line_col(text, _locate(text, ("base", "residue_field")))
        raise DocumentError([Diagnostic(line, col, str(exc))]) from None
    elements = () if problem is None else (problem.a, problem.b, problem.c)
    violations = surface.validate(cfg, elements)
    if violations:
        known = set(cfg.curve_ids) | {p.id for p in cfg.points}
        diags = []
        for v in violations:
            ident = next((w for w in v.detail.split() if w in known), "")
            line, col = _line_col(text, _id_offset(text, ident))
            diags.append(Diagnostic(line, col, str(v)))
        raise DocumentError(diags)
    return doc, cfg, problem
