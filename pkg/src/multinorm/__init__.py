"""Reciprocity obstructions for multinorm torsors over two-dimensional bases."""

from .fixtures import fixture, synthesize_counterexample
from .obstruction import Verdict, VerdictKind, build_system, solve, tree_propagate, verdict, weil_obstruction
from .report import Report, analyze
from .surface import BaseKind, ClosedPoint, Curve, CurveKind, MonomialElement, SurfaceConfig, blowup, validate
from .torsor import ResidueSet, TorsorProblem, residue_value_set

__version__ = "0.1.0"

__all__ = [
    "BaseKind",
    "ClosedPoint",
    "Curve",
    "CurveKind",
    "MonomialElement",
    "Report",
    "ResidueSet",
    "SurfaceConfig",
    "TorsorProblem",
    "Verdict",
    "VerdictKind",
    "analyze",
    "blowup",
    "build_system",
    "fixture",
    "residue_value_set",
    "solve",
    "synthesize_counterexample",
    "tree_propagate",
    "validate",
    "verdict",
    "weil_obstruction",
]
