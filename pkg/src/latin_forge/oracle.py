"""Naive ground truth for tiny instances.

Nothing here shares logic with the flow-based solvers: extensions are found
by plain backtracking, witnesses by enumerating the (a, b) box and testing
every inequality with integer loops.  Scale guards are hard errors; set the
environment variable ``LATIN_FORGE_GUARD_OVERRIDE`` to lift them (at your
own risk: runtimes grow exponentially).
"""
from __future__ import annotations

import hashlib
import itertools
import os
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Union

import numpy as np

from .model import Instance, Square, dumps

GUARD_ENV = "LATIN_FORGE_GUARD_OVERRIDE"


class GuardError(ValueError):
    """Request exceeds an oracle scale guard."""


def _guard(ok: bool, message: str) -> None:
    if not ok and not os.environ.get(GUARD_ENV):
        raise GuardError(message + f" (set {GUARD_ENV}=1 to override)")


# --------------------------------------------------------------------------
# backtracking extension

def brute_extend(inst: Instance, simple: bool = False, max_slots: int = 64,
                 max_k: int = 6) -> Optional[Square]:
    """First extension of ``inst`` found by depth-first search, or None.

    Cells outside the rectangle are filled row-major, one symbol at a time in
    ascending order (non-decreasing inside a cell, strictly increasing in
    simple mode).  Exhaustive: ``None`` means no extension exists.
    """
    n, k, lam, r, s = inst.n, inst.k, inst.lam, inst.r, inst.s
    _guard(lam * n * n <= max_slots and k <= max_k,
           f"brute_extend limited to lambda*n^2 <= {max_slots} and k <= {max_k}")
    rho = list(inst.rho)
    grid = [[[0] * k for _ in range(n)] for _ in range(n)]
    row = [[0] * k for _ in range(n)]
    col = [[0] * k for _ in range(n)]
    tot = [0] * k
    for i in range(r):
        for j in range(s):
            for l in range(k):
                c = int(inst.cells[i, j, l])
                grid[i][j][l] = c
                row[i][l] += c
                col[j][l] += c
                tot[l] += c
    if any(tot[l] > rho[l] for l in range(k)):
        return None
    if any(row[i][l] > lam for i in range(n) for l in range(k)) or \
            any(col[j][l] > lam for j in range(n) for l in range(k)):
        return None
    free = [(i, j) for i in range(n) for j in range(n) if i >= r or j >= s]
    # cells still untouched in each row, indexed by position in `free`
    left_in_row = []
    for idx, (i, _) in enumerate(free):
        left_in_row.append(sum(1 for (i2, _) in free[idx:] if i2 == i))

    def fits(ci: int) -> bool:
        # every symbol's outstanding copies must fit in the rows still open
        room = [0] * k
        rows_seen = {}
        for (i, _), cnt in zip(free[ci:], left_in_row[ci:]):
            if i not in rows_seen:
                rows_seen[i] = cnt
        for i, cnt in rows_seen.items():
            slots = cnt if simple else cnt * lam
            for l in range(k):
                room[l] += min(lam - row[i][l], slots)
        return all(rho[l] - tot[l] <= room[l] for l in range(k))

    def rec(ci: int, pos: int, lo: int) -> bool:
        if ci == len(free):
            return True
        if pos == lam:
            return rec(ci + 1, 0, 0)
        i, j = free[ci]
        if pos == 0 and not fits(ci):
            return False
        cell = grid[i][j]
        for l in range(lo, k):
            if row[i][l] < lam and col[j][l] < lam and tot[l] < rho[l] and not (simple and cell[l]):
                cell[l] += 1
                row[i][l] += 1
                col[j][l] += 1
                tot[l] += 1
                if rec(ci, pos + 1, l + 1 if simple else l):
                    return True
                cell[l] -= 1
                row[i][l] -= 1
                col[j][l] -= 1
                tot[l] -= 1
        return False

    if not rec(0, 0, 0):
        return None
    return Square(n, k, lam, inst.rho, np.array(grid, dtype=np.int64).reshape(n, n, k))


# --------------------------------------------------------------------------
# exhaustive enumeration

Side = Union[int, str, None]


@dataclass(frozen=True)
class ScaleBounds:
    """Inclusive parameter ranges for :func:`enumerate_instances`.

    ``r`` / ``s`` may be None (every value 0..n), an int, or the string
    ``"n"`` (equal to the order).  ``simple`` keeps only simple rectangles,
    ``uniform_rho`` only rho = (lam*n, ..., lam*n).
    """

    n_max: int
    k_max: int
    lam_max: int
    n_min: int = 1
    k_min: int = 1
    lam_min: int = 1
    r: Side = None
    s: Side = None
    simple: bool = False
    uniform_rho: bool = False

    @classmethod
    def parse(cls, text: str) -> "ScaleBounds":
        """Parse ``"n=2,k=3,lambda=1..2,s=n"``.

        A bare number is an upper bound (lower bound 1); ``a..b`` is a range.
        """
        kw: dict = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            key, _, val = part.partition("=")
            key = "lam" if key == "lambda" else key
            if key in ("n", "k", "lam"):
                lo, _, hi = val.partition("..")
                kw[f"{key}_min"] = int(lo) if hi else 1
                kw[f"{key}_max"] = int(hi) if hi else int(lo)
            elif key in ("r", "s"):
                kw[key] = val if val == "n" else int(val)
            elif key in ("simple", "uniform_rho"):
                kw[key] = val.lower() in ("1", "true", "yes")
            else:
                raise ValueError(f"unknown bound {key!r}")
        for key in ("n", "k", "lam"):
            if f"{key}_max" not in kw:
                raise ValueError(f"bounds must fix {key}")
        return cls(**kw)


def _sides(spec: Side, n: int) -> Iterable[int]:
    if spec is None:
        return range(n + 1)
    if spec == "n":
        return (n,)
    return (spec,) if 0 <= int(spec) <= n else ()


def rho_vectors(n: int, k: int, lam: int) -> Iterator[tuple[int, ...]]:
    """All valid rho in lexicographic order: 1 <= rho_l <= lam*n, sum lam*n^2."""
    cap, total = lam * n, lam * n * n

    def rec(prefix: list, left: int, slots: int):
        if slots == 0:
            if left == 0:
                yield tuple(prefix)
            return
        for v in range(max(1, left - cap * (slots - 1)), min(cap, left - (slots - 1)) + 1):
            prefix.append(v)
            yield from rec(prefix, left - v, slots - 1)
            prefix.pop()

    yield from rec([], total, k)


def enumerate_grids(r: int, s: int, k: int, lam: int, simple: bool = False) -> Iterator[np.ndarray]:
    """Every r x s lambda-matrix on [k] respecting the row/column caps."""
    pick = itertools.combinations if simple else itertools.combinations_with_replacement
    options = []
    for combo in pick(range(k), lam):
        v = [0] * k
        for l in combo:
            v[l] += 1
        options.append(v)
    cells = [[None] * s for _ in range(r)]
    row = [[0] * k for _ in range(r)]
    col = [[0] * k for _ in range(s)]

    def rec(idx: int):
        if idx == r * s:
            yield np.array(cells, dtype=np.int64).reshape(r, s, k)
            return
        i, j = divmod(idx, s)
        for v in options:
            if all(row[i][l] + v[l] <= lam and col[j][l] + v[l] <= lam for l in range(k)):
                cells[i][j] = v
                for l in range(k):
                    row[i][l] += v[l]
                    col[j][l] += v[l]
                yield from rec(idx + 1)
                for l in range(k):
                    row[i][l] -= v[l]
                    col[j][l] -= v[l]

    yield from rec(0)


def enumerate_instances(bounds: ScaleBounds,
                        keep: Optional[Callable[[Instance], bool]] = None) -> Iterator[Instance]:
    """Every valid instance within ``bounds`` (and accepted by ``keep``).

    Order: n, k, lambda, r, s ascending; then cell grids row-major with
    symbol-ascending cells; then rho lexicographic.
    """
    _guard(bounds.n_max <= 3 and bounds.lam_max <= 2 and bounds.k_max <= 4,
           "enumerate_instances limited to n <= 3, lambda <= 2, k <= 4")
    for n in range(bounds.n_min, bounds.n_max + 1):
        for k in range(max(n, bounds.k_min), bounds.k_max + 1):
            for lam in range(bounds.lam_min, bounds.lam_max + 1):
                if bounds.uniform_rho:
                    rhos = [(lam * n,) * k] if k == n else []
                else:
                    rhos = list(rho_vectors(n, k, lam))
                if not rhos:
                    continue
                rho_arr = np.array(rhos, dtype=np.int64)
                for r in _sides(bounds.r, n):
                    for s in _sides(bounds.s, n):
                        for grid in enumerate_grids(r, s, k, lam, bounds.simple):
                            grid.setflags(write=False)
                            fits = (rho_arr >= grid.sum(axis=(0, 1))).all(axis=1)
                            for idx in np.nonzero(fits)[0]:
                                inst = Instance._trusted(n, k, lam, rhos[idx], grid)
                                if keep is None or keep(inst):
                                    yield inst


class CorpusDigest:
    """Running SHA-256 over the canonical JSON of each instance, one per line."""

    def __init__(self):
        self._h = hashlib.sha256()
        self.count = 0

    def add(self, inst: Instance) -> Instance:
        self._h.update(dumps(inst.to_json()).encode())
        self._h.update(b"\n")
        self.count += 1
        return inst

    def hexdigest(self) -> str:
        return self._h.hexdigest()


def corpus_digest(instances: Iterable[Instance]) -> str:
    d = CorpusDigest()
    for inst in instances:
        d.add(inst)
    return d.hexdigest()


# --------------------------------------------------------------------------
# direct search over the witness definition

def witness_search(inst: Instance, simple: bool = False,
                   max_box: int = 10**6) -> Optional[tuple[list[int], list[int]]]:
    """First ``(a, b)`` meeting every admissibility inequality, or None.

    Candidates for ``a`` and ``b`` are enumerated separately inside their
    per-symbol boxes (they only interact through the coupling bounds).
    """
    n, k, lam, r, s = inst.n, inst.k, inst.lam, inst.r, inst.s
    _guard(k <= 6, "witness_search limited to k <= 6")
    if simple and lam > k:
        return None
    c = inst.cells.tolist()
    tot = [sum(c[i][j][l] for i in range(r) for j in range(s)) for l in range(k)]
    rows = [[sum(c[i][j][l] for j in range(s)) for l in range(k)] for i in range(r)]
    cols = [[sum(c[i][j][l] for i in range(r)) for l in range(k)] for j in range(s)]
    rem = [inst.rho[l] - tot[l] for l in range(k)]
    fa = [max(0, rem[l] + lam * r - lam * n) for l in range(k)]
    fb = [max(0, rem[l] + lam * s - lam * n) for l in range(k)]

    if simple:
        room_r = [[min(n - s, lam - rows[i][l]) for l in range(k)] for i in range(r)]
        room_c = [[min(n - r, lam - cols[j][l]) for l in range(k)] for j in range(s)]
        if any(lam * (n - s) > sum(room_r[i]) for i in range(r)):
            return None
        if any(lam * (n - r) > sum(room_c[j]) for j in range(s)):
            return None
        ub_a = [sum(room_r[i][l] for i in range(r)) - fa[l] for l in range(k)]
        ub_b = [sum(room_c[j][l] for j in range(s)) - fb[l] for l in range(k)]
    else:
        ub_a = [lam * r - tot[l] - fa[l] for l in range(k)]
        ub_b = [lam * s - tot[l] - fb[l] for l in range(k)]

    def need_rows(K) -> int:
        if simple:
            return sum(max(0, lam * (n - s) - sum(room_r[i][l] for l in K)) for i in range(r))
        return sum(max(0, lam * n - lam * s + sum(rows[i][l] for l in K) - lam * len(K))
                   for i in range(r))

    def need_cols(K) -> int:
        if simple:
            return sum(max(0, lam * (n - r) - sum(room_c[j][l] for l in K)) for j in range(s))
        return sum(max(0, lam * n - lam * r + sum(cols[j][l] for l in K) - lam * len(K))
                   for j in range(s))

    subsets = [tuple(K) for size in range(k + 1) for K in itertools.combinations(range(k), size)]
    req_a = [(K, need_rows(K)) for K in subsets]
    req_b = [(K, need_cols(K)) for K in subsets]

    def candidates(ub, forced, target, req):
        if any(u < 0 for u in ub) or target < 0:
            return []
        box = 1
        for u in ub:
            box *= u + 1
        _guard(box <= max_box, f"witness box of size {box} exceeds {max_box}")
        out = []
        for vec in itertools.product(*(range(u + 1) for u in ub)):
            if sum(vec) != target:
                continue
            if all(sum(vec[l] + forced[l] for l in range(k) if l not in K) >= need
                   for K, need in req):
                out.append(list(vec))
        return out

    cand_a = candidates(ub_a, fa, lam * r * (n - s) - sum(fa), req_a)
    cand_b = candidates(ub_b, fb, lam * s * (n - r) - sum(fb), req_b)
    corner = (n - r) * (n - s)
    for a in cand_a:
        for b in cand_b:
            ok = True
            for l in range(k):
                top = rem[l] - fa[l] - fb[l]
                if a[l] + b[l] > top or (simple and a[l] + b[l] < top - corner):
                    ok = False
                    break
            if ok:
                return a, b
    return None
