"""Affine linear systems over GF(2) with int-bitset rows."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np


@dataclass(frozen=True)
class Gf2System:
    """Equations ``row . x = constant`` (mod 2), one per closed point.

    Bit j of a row is the coefficient of ``variables[j]``.
    """

    variables: tuple
    points: tuple
    constants: tuple
    rows: tuple
    inexact: tuple = ()

    def __post_init__(self) -> None:
        if not (len(self.points) == len(self.constants) == len(self.rows)):
            raise ValueError("points, constants and rows must have equal length")
        limit = 1 << len(self.variables)
        if any(r < 0 or r >= limit for r in self.rows):
            raise ValueError("row mentions an unknown variable")

    @property
    def n_vars(self) -> int:
        return len(self.variables)

    def row_bits(self, i: int) -> tuple:
        return tuple((self.rows[i] >> j) & 1 for j in range(self.n_vars))

    def residuals(self, assignment: dict) -> tuple:
        """Per-equation value of constant + row . x; all zero iff satisfied."""
        x = sum(1 << j for j, v in enumerate(self.variables) if assignment.get(v, 0) % 2)
        return tuple((c + bin(r & x).count("1")) % 2 for c, r in zip(self.constants, self.rows))

    def satisfied_by(self, assignment: dict) -> bool:
        return not any(self.residuals(assignment))


@dataclass(frozen=True)
class Solution:
    feasible: bool
    witness: Optional[dict] = None
    # equations whose sum reads 0 = 1
    certificate: tuple = field(default=())


def solve(system: Gf2System) -> Solution:
    """Gauss-Jordan elimination, tracking which input equations each row combines."""
    n = system.n_vars
    work = [
        [row, const, 1 << i] for i, (row, const) in enumerate(zip(system.rows, system.constants))
    ]
    pivots = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, len(work)) if (work[i][0] >> col) & 1), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and (work[i][0] >> col) & 1:
                work[i][0] ^= work[r][0]
                work[i][1] ^= work[r][1]
                work[i][2] ^= work[r][2]
        pivots.append(col)
        r += 1
    for row, const, combo in work[r:]:
        if row == 0 and const:
            cert = tuple(system.points[i] for i in range(len(system.points)) if (combo >> i) & 1)
            return Solution(False, certificate=cert)
    x = [0] * n
    for i, col in enumerate(pivots):
        x[col] = work[i][1]
    return Solution(True, witness={v: x[j] for j, v in enumerate(system.variables)})


def all_assignments(system: Gf2System):
    for bits in itertools.product((0, 1), repeat=system.n_vars):
        yield dict(zip(system.variables, bits))


def _parity(v: np.ndarray) -> np.ndarray:
    for shift in (32, 16, 8, 4, 2, 1):
        v = v ^ (v >> shift)
    return v & 1


def solve_exhaustive(system: Gf2System, chunk: int = 1 << 16) -> Solution:
    """Try all 2^n assignments; the independent check on ``solve``."""
    n = system.n_vars
    rows = np.array(system.rows, dtype=np.int64)
    consts = np.array(system.constants, dtype=np.int64)
    for start in range(0, 1 << n, chunk):
        xs = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        ok = np.ones(len(xs), dtype=bool)
        for r, c in zip(rows, consts):
            ok &= _parity(xs & r) == c
        hits = np.flatnonzero(ok)
        if hits.size:
            x = int(xs[hits[0]])
            return Solution(True, witness={v: (x >> j) & 1 for j, v in enumerate(system.variables)})
    return Solution(False)


def exhausted_sums(system: Gf2System) -> list:
    """(assignment, residual vector) for every assignment."""
    return [(a, system.residuals(a)) for a in all_assignments(system)]
