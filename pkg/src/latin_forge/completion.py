"""Constructive completion of an admissible rectangle to a full square.

The pipeline: find row/column symbol allocations for the blocks right of and
below the rectangle (two f-factors), collapse everything outside the
rectangle into one extra row and column with large weights, then repeatedly
peel a weight-1 line off the heavy last row (and afterwards the heavy last
column) by laminar rounding until every weight is 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .admissibility import (Deficits, NotAdmissible, Witness, check_admissible,
                            gamma_multiplicities)
from .factors import BipartiteMultigraph, DegreeSpec, LaminarInstance, f_factor, laminar_round
from .model import Instance, InternalError, Square, verify_square


@dataclass(frozen=True)
class RaggedSquare:
    """Array whose rows and columns carry weights.

    A cell in a row of weight ``g`` and a column of weight ``h`` stands for a
    ``g x h`` block of the final square and holds ``lam*g*h`` symbols.
    """

    n: int
    lam: int
    rho: tuple[int, ...]
    row_weights: tuple[int, ...]
    col_weights: tuple[int, ...]
    cells: np.ndarray = field(repr=False)
    simple: bool = False

    def __post_init__(self):
        c = np.array(self.cells, dtype=np.int64)
        c.setflags(write=False)
        object.__setattr__(self, "cells", c)

    @property
    def shape(self) -> tuple[int, int]:
        return self.cells.shape[0], self.cells.shape[1]

    def transpose(self) -> "RaggedSquare":
        return RaggedSquare(self.n, self.lam, self.rho, self.col_weights, self.row_weights,
                            self.cells.transpose(1, 0, 2), self.simple)

    def violations(self) -> list[str]:
        """Every failed weighted-square condition (empty when consistent)."""
        out = []
        c, lam = self.cells, self.lam
        g = np.array(self.row_weights, dtype=np.int64)
        h = np.array(self.col_weights, dtype=np.int64)
        if c.shape[:2] != (len(g), len(h)):
            return [f"cells shape {c.shape[:2]} does not match weights ({len(g)}, {len(h)})"]
        tot = c.sum(axis=(0, 1))
        for l in np.nonzero(tot != np.array(self.rho))[0]:
            out.append(f"|Q_{l + 1}|={tot[l]} != rho_{l + 1}={self.rho[l]}")
        target = lam * g[:, None] * h[None, :]
        sums = c.sum(axis=2)
        for i, j in zip(*np.nonzero(sums != target)):
            out.append(f"cell ({i + 1},{j + 1}) holds {sums[i, j]}, expected {target[i, j]}")
        rows = c.sum(axis=1)
        for i, l in zip(*np.nonzero(rows > lam * g[:, None])):
            out.append(f"row {i + 1} has {rows[i, l]} > {lam * g[i]} copies of {l + 1}")
        cols = c.sum(axis=0)
        for j, l in zip(*np.nonzero(cols > lam * h[:, None])):
            out.append(f"column {j + 1} has {cols[j, l]} > {lam * h[j]} copies of {l + 1}")
        if self.simple:
            cap = (g[:, None] * h[None, :])[:, :, None]
            for i, j, l in zip(*np.nonzero(c > cap)):
                out.append(f"cell ({i + 1},{j + 1}) has {c[i, j, l]} > {cap[i, j, 0]} copies of {l + 1}")
        return out

    def check(self, what: str) -> "RaggedSquare":
        bad = self.violations()
        if bad:
            raise InternalError(f"{what}: " + "; ".join(bad[:5]), self.to_json())
        return self

    def to_json(self) -> dict:
        return {"n": self.n, "lambda": self.lam, "rho": list(self.rho),
                "row_weights": list(self.row_weights), "col_weights": list(self.col_weights),
                "simple": self.simple, "cells": self.cells.tolist()}


def build_step1(inst: Instance, w: Witness, simple: bool = False) -> RaggedSquare:
    """The (r+1) x (s+1) outline array: rectangle, one heavy row, one heavy column.

    Column s+1 gets, row by row, the symbols of an f-factor of the row-symbol
    graph with row degrees lam(n-s) and symbol degrees ``block_a``; row r+1
    likewise from the column-symbol graph; the corner takes what is left.
    """
    r, s, k, n, lam = inst.r, inst.s, inst.k, inst.n, inst.lam
    g1, g2 = gamma_multiplicities(inst, simple)
    theta1 = f_factor(BipartiteMultigraph(g1),
                      DegreeSpec(np.full(r, lam * (n - s)), np.array(w.block_a)))
    theta2 = f_factor(BipartiteMultigraph(g2),
                      DegreeSpec(np.full(s, lam * (n - r)), np.array(w.block_b)))
    if theta1 is None or theta2 is None:
        raise InternalError("no f-factor for an admissible witness",
                            {"instance": inst.to_json(), "witness": w.to_json()})
    cells = np.zeros((r + 1, s + 1, k), dtype=np.int64)
    cells[:r, :s] = inst.cells
    cells[:r, s] = theta1
    cells[r, :s] = theta2
    cells[r, s] = Deficits.of(inst).rem - theta1.sum(axis=0) - theta2.sum(axis=0)
    if (cells[r, s] < 0).any():
        raise InternalError("negative corner count", {"instance": inst.to_json(), "witness": w.to_json()})
    p = RaggedSquare(n, lam, inst.rho, (1,) * r + (n - r,), (1,) * s + (n - s,), cells, simple)
    return p.check("outline array")


def split_last_row(q: RaggedSquare) -> RaggedSquare:
    """Split the heavy last row into a weight-1 row and a row of weight one less."""
    m = q.row_weights[-1]
    if m < 2:
        raise ValueError(f"last row has weight {m}; nothing to split")
    last = q.cells[-1]
    z = laminar_round(LaminarInstance(last, m))
    cells = np.concatenate([q.cells[:-1], z[None], (last - z)[None]], axis=0)
    out = RaggedSquare(q.n, q.lam, q.rho, q.row_weights[:-1] + (1, m - 1), q.col_weights,
                       cells, q.simple)
    return out.check("row split")


def split_last_col(q: RaggedSquare) -> RaggedSquare:
    """Column analogue of :func:`split_last_row`."""
    return split_last_row(q.transpose()).transpose()


def complete(inst: Instance, simple: bool = False) -> Square | NotAdmissible:
    """Extend ``inst`` to an n x n (simple) (rho, lambda)-Latin square.

    Returns the verdict of :func:`check_admissible` unchanged when the
    rectangle cannot be extended.
    """
    w = check_admissible(inst, simple)
    if not w:
        return w
    q = build_step1(inst, w, simple)
    while q.row_weights[-1] >= 2:
        q = split_last_row(q)
    while q.col_weights[-1] >= 2:
        q = split_last_col(q)
    keep_r = [i for i, g in enumerate(q.row_weights) if g]
    keep_c = [j for j, h in enumerate(q.col_weights) if h]
    cells = q.cells[keep_r][:, keep_c]
    sq = Square(inst.n, inst.k, inst.lam, inst.rho, cells)
    rep = verify_square(sq, contains=inst, simple_required=simple)
    if not rep.ok:
        raise InternalError("completed square fails verification: " + "; ".join(rep.violations),
                            {"instance": inst.to_json()})
    return sq
