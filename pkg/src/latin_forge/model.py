"""Core value types for multi-Latin rectangles and squares.

Cells are stored as dense count vectors: ``cells[i, j, l]`` is the number of
copies of symbol ``l`` (0-based) in cell ``(i, j)``.  All JSON I/O is 1-based
in the sense that the count vector of length ``k`` lists symbols ``1..k``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import numpy as np

#: Instances with ``lambda * n**2`` above this are rejected at construction.
MAX_TOTAL = 2**40


class InternalError(RuntimeError):
    """An invariant that the underlying theory guarantees was violated.

    Always indicates a bug in this package, never bad input.  ``dump`` holds
    a JSON-serialisable snapshot of whatever was being processed.
    """

    def __init__(self, message: str, dump: Any = None):
        super().__init__(message)
        self.dump = dump


def _as_counts(cells: Any, k: int, ndim: int = 3) -> np.ndarray:
    arr = np.array(cells, dtype=np.int64)
    if arr.size == 0:
        # keep whatever leading shape was given, e.g. (0, 3, k) or (2, 0, k)
        shape = list(arr.shape) + [0] * (ndim - arr.ndim)
        shape = shape[: ndim - 1] + [k]
        arr = np.zeros(shape, dtype=np.int64)
    if arr.ndim != ndim or arr.shape[-1] != k:
        raise ValueError(f"cells must have shape (rows, cols, {k}), got {arr.shape}")
    if (arr < 0).any():
        raise ValueError("cell counts must be non-negative")
    arr.setflags(write=False)
    return arr


def _check_scalars(n: int, k: int, lam: int, rho: Sequence[int]) -> tuple[int, ...]:
    for name, v in (("n", n), ("k", k), ("lambda", lam)):
        if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or v < 1:
            raise ValueError(f"{name} must be a positive integer, got {v!r}")
    rho = tuple(int(x) for x in rho)
    if len(rho) != k:
        raise ValueError(f"rho must have length k={k}, got {len(rho)}")
    if lam * n * n > MAX_TOTAL:
        raise ValueError(f"lambda*n^2 = {lam * n * n} exceeds the 2^40 guard")
    return rho


@dataclass(frozen=True, eq=False)
class Instance:
    """An r x s (rho, lambda)-Latin rectangle together with its target order n."""

    n: int
    k: int
    lam: int
    rho: tuple[int, ...]
    cells: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "rho", _check_scalars(self.n, self.k, self.lam, self.rho))
        object.__setattr__(self, "cells", _as_counts(self.cells, self.k))

    def _key(self):
        return (self.n, self.k, self.lam, self.rho, self.cells.shape, self.cells.tobytes())

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @classmethod
    def _trusted(cls, n: int, k: int, lam: int, rho: tuple, cells: np.ndarray) -> "Instance":
        # skips all checks; ``cells`` must already be a read-only int64 (r, s, k) array
        obj = object.__new__(cls)
        for name, v in (("n", n), ("k", k), ("lam", lam), ("rho", rho), ("cells", cells)):
            object.__setattr__(obj, name, v)
        return obj

    @classmethod
    def empty(cls, n: int, k: int, lam: int, rho: Sequence[int]) -> "Instance":
        return cls(n, k, lam, tuple(rho), np.zeros((0, 0, k), dtype=np.int64))

    @property
    def r(self) -> int:
        return self.cells.shape[0]

    @property
    def s(self) -> int:
        return self.cells.shape[1]

    @property
    def rho_array(self) -> np.ndarray:
        return np.array(self.rho, dtype=np.int64)

    def symbol_totals(self) -> np.ndarray:
        """``|M_l|`` for every symbol."""
        return self.cells.sum(axis=(0, 1))

    def row_counts(self) -> np.ndarray:
        """``(r, k)`` table of ``|M_l^i|``."""
        return self.cells.sum(axis=1)

    def col_counts(self) -> np.ndarray:
        """``(s, k)`` table of ``|^jM_l|``."""
        return self.cells.sum(axis=0)

    def is_simple(self) -> bool:
        return bool((self.cells <= 1).all())

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "s": self.s,
            "n": self.n,
            "k": self.k,
            "lambda": self.lam,
            "rho": list(self.rho),
            "cells": self.cells.tolist(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Instance":
        try:
            r, s, k = int(obj["r"]), int(obj["s"]), int(obj["k"])
            cells = obj["cells"] if r * s else np.zeros((r, s, k), dtype=np.int64)
            inst = cls(int(obj["n"]), k, int(obj["lambda"]), tuple(obj["rho"]), cells)
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed instance JSON: {exc}") from exc
        if (inst.r, inst.s) != (r, s):
            raise ValueError(f"cells shape {inst.cells.shape[:2]} does not match r={r}, s={s}")
        return inst


@dataclass(frozen=True, eq=False)
class Square:
    """An n x n array of count vectors, candidate (rho, lambda)-Latin square."""

    n: int
    k: int
    lam: int
    rho: tuple[int, ...]
    cells: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "rho", _check_scalars(self.n, self.k, self.lam, self.rho))
        object.__setattr__(self, "cells", _as_counts(self.cells, self.k))

    def _key(self):
        return (self.n, self.k, self.lam, self.rho, self.cells.shape, self.cells.tobytes())

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def as_instance(self) -> Instance:
        return Instance(self.n, self.k, self.lam, self.rho, self.cells)

    def to_json(self) -> dict:
        return self.as_instance().to_json()

    @classmethod
    def from_json(cls, obj: dict) -> "Square":
        inst = Instance.from_json(obj)
        if inst.r != inst.n or inst.s != inst.n:
            raise ValueError(f"square must be {inst.n}x{inst.n}, got {inst.r}x{inst.s}")
        return cls(inst.n, inst.k, inst.lam, inst.rho, inst.cells)

    def symbol_lists(self) -> list[list[list[int]]]:
        return cell_symbol_lists(self.cells)


@dataclass(frozen=True, eq=False)
class PartialInstance:
    """A partial lambda-Latin rectangle: every cell holds at most lambda symbols."""

    k: int
    lam: int
    cells: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.k < 1 or self.lam < 1:
            raise ValueError("k and lambda must be positive")
        object.__setattr__(self, "cells", _as_counts(self.cells, self.k))

    @property
    def r(self) -> int:
        return self.cells.shape[0]

    @property
    def s(self) -> int:
        return self.cells.shape[1]

    def violations(self) -> list[str]:
        out = []
        sums = self.cells.sum(axis=2)
        for i, j in zip(*np.nonzero(sums > self.lam)):
            out.append(f"cell ({i + 1},{j + 1}) holds {sums[i, j]} > lambda={self.lam} symbols")
        out += _line_violations(self.cells, self.lam)
        return out

    def is_simple(self) -> bool:
        return bool((self.cells <= 1).all())


@dataclass
class ValidationReport:
    violations: list[str]
    is_simple: bool

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def cell_symbol_lists(cells: np.ndarray) -> list[list[list[int]]]:
    """Expand count vectors into sorted 1-based symbol lists (for display)."""
    return [[[int(l) + 1 for l in range(cells.shape[2]) for _ in range(cells[i, j, l])]
             for j in range(cells.shape[1])] for i in range(cells.shape[0])]


def from_symbol_lists(grid: Sequence[Sequence[Sequence[int]]], k: int) -> np.ndarray:
    """Inverse of :func:`cell_symbol_lists`; symbols are 1-based."""
    rows = len(grid)
    cols = len(grid[0]) if rows else 0
    out = np.zeros((rows, cols, k), dtype=np.int64)
    for i, row in enumerate(grid):
        if len(row) != cols:
            raise ValueError("ragged grid")
        for j, cell in enumerate(row):
            for sym in cell:
                if not 1 <= sym <= k:
                    raise ValueError(f"symbol {sym} outside [1, {k}]")
                out[i, j, sym - 1] += 1
    return out


def _line_violations(cells: np.ndarray, lam: int) -> list[str]:
    out = []
    rows = cells.sum(axis=1)
    cols = cells.sum(axis=0)
    for i, l in zip(*np.nonzero(rows > lam)):
        out.append(f"symbol {l + 1} occurs {rows[i, l]} > lambda={lam} times in row {i + 1}")
    for j, l in zip(*np.nonzero(cols > lam)):
        out.append(f"symbol {l + 1} occurs {cols[j, l]} > lambda={lam} times in column {j + 1}")
    return out


def _rho_violations(n: int, k: int, lam: int, rho: Sequence[int]) -> list[str]:
    out = []
    for l, p in enumerate(rho):
        if not 1 <= p <= lam * n:
            out.append(f"rho_{l + 1}={p} outside [1, lambda*n={lam * n}]")
    if sum(rho) != lam * n * n:
        out.append(f"sum(rho)={sum(rho)} != lambda*n^2={lam * n * n}")
    return out


def symbol_counts(inst: Instance) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(|M_l|, |M_l^i|, |^jM_l|)`` as arrays of shape (k,), (r, k), (s, k)."""
    return inst.symbol_totals(), inst.row_counts(), inst.col_counts()


def validate(inst: Instance, simple_required: bool = False) -> ValidationReport:
    """Check every defining property of a (rho, lambda)-Latin rectangle."""
    v: list[str] = []
    if not max(inst.r, inst.s) <= inst.n <= inst.k:
        v.append(f"need max(r,s) <= n <= k, got r={inst.r}, s={inst.s}, n={inst.n}, k={inst.k}")
    v += _rho_violations(inst.n, inst.k, inst.lam, inst.rho)
    sums = inst.cells.sum(axis=2)
    for i, j in zip(*np.nonzero(sums != inst.lam)):
        v.append(f"cell ({i + 1},{j + 1}) holds {sums[i, j]} symbols, expected lambda={inst.lam}")
    v += _line_violations(inst.cells, inst.lam)
    tot = inst.symbol_totals()
    for l in np.nonzero(tot > inst.rho_array)[0]:
        v.append(f"|M_{l + 1}|={tot[l]} exceeds rho_{l + 1}={inst.rho[l]}")
    simple = inst.is_simple()
    if simple_required:
        if not simple:
            v.append("a cell contains a repeated symbol (not simple)")
        if inst.lam > inst.k:
            v.append(f"simple requires lambda <= k, got lambda={inst.lam}, k={inst.k}")
    return ValidationReport(v, simple)


def verify_square(sq: Square, contains: Optional[Instance] = None,
                  simple_required: bool = False) -> ValidationReport:
    """Check that ``sq`` is a (simple) (rho, lambda)-Latin square, optionally containing ``contains``."""
    v: list[str] = []
    if sq.cells.shape[:2] != (sq.n, sq.n):
        v.append(f"expected {sq.n}x{sq.n} cells, got {sq.cells.shape[:2]}")
        return ValidationReport(v, sq.as_instance().is_simple() if sq.cells.size else True)
    v += _rho_violations(sq.n, sq.k, sq.lam, sq.rho)
    sums = sq.cells.sum(axis=2)
    for i, j in zip(*np.nonzero(sums != sq.lam)):
        v.append(f"cell ({i + 1},{j + 1}) holds {sums[i, j]} symbols, expected lambda={sq.lam}")
    v += _line_violations(sq.cells, sq.lam)
    tot = sq.cells.sum(axis=(0, 1))
    for l in np.nonzero(tot != np.array(sq.rho))[0]:
        v.append(f"|N_{l + 1}|={tot[l]} but rho_{l + 1}={sq.rho[l]}")
    simple = bool((sq.cells <= 1).all())
    if simple_required and not simple:
        v.append("a cell contains a repeated symbol (not simple)")
    if contains is not None:
        if (contains.n, contains.k, contains.lam, contains.rho) != (sq.n, sq.k, sq.lam, sq.rho):
            v.append("square parameters (n, k, lambda, rho) differ from the contained instance")
        elif not np.array_equal(sq.cells[: contains.r, : contains.s], contains.cells):
            v.append("top-left block differs from the given rectangle")
    return ValidationReport(v, simple)


def dumps(obj: Any) -> str:
    """Canonical JSON text used for all machine-readable output."""
    return json.dumps(obj, separators=(",", ":"))
