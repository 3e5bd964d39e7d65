"""Closed-form special cases: existence from scratch, the simple multi-Ryser
condition, Evans-type embedding and the Hall-type conditions for full-width
rectangles.

The checkers mirror their closed forms literally (subset families by direct
enumeration); they are not on the production path, which always goes through
:func:`~latin_forge.admissibility.check_admissible`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .admissibility import monus
from .completion import complete
from .factors import subset_masks
from .model import Instance, InternalError, PartialInstance, Square, validate


@dataclass
class CorollaryReport:
    """Verdict plus every evaluated condition as ``(name, passed, detail)``."""

    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, passed, detail: str = "") -> None:
        self.checks.append((name, bool(passed), detail))

    @property
    def verdict(self) -> bool:
        return all(p for _, p, _ in self.checks)

    def __bool__(self) -> bool:
        return self.verdict

    def failures(self) -> list[str]:
        return [f"{name}: {detail}" for name, ok, detail in self.checks if not ok]

    def to_json(self) -> list:
        return [{"condition": n, "passed": p, "detail": d} for n, p, d in self.checks]


def exists_square(n: int, k: int, lam: int, rho: Sequence[int], simple: bool = False) -> CorollaryReport:
    """Whether an n x n (simple) (rho, lambda)-Latin square exists at all."""
    rep = CorollaryReport()
    rep.add("n<=k", n <= k, f"n={n}, k={k}")
    rep.add("len(rho)=k", len(rho) == k, f"len={len(rho)}")
    rep.add("sum(rho)=lambda*n^2", sum(rho) == lam * n * n, f"{sum(rho)} vs {lam * n * n}")
    for l, p in enumerate(rho):
        rep.add(f"1<=rho_{l + 1}<=lambda*n", 1 <= p <= lam * n, f"rho={p}, lambda*n={lam * n}")
    if simple:
        rep.add("lambda<=k", lam <= k, f"lambda={lam}, k={k}")
        for l, p in enumerate(rho):
            rep.add(f"rho_{l + 1}<=n^2", p <= n * n, f"rho={p}, n^2={n * n}")
    return rep


def simple_ryser_check(inst: Instance) -> CorollaryReport:
    """Closed-form extendability test for simple lambda-Latin rectangles (k = n, rho = lam*n)."""
    n, lam, r, s = inst.n, inst.lam, inst.r, inst.s
    if inst.k != n or any(p != lam * n for p in inst.rho):
        raise ValueError("simple_ryser_check needs k = n and rho = (lambda*n, ..., lambda*n)")
    if not inst.is_simple():
        raise ValueError("simple_ryser_check needs a simple rectangle")
    rep = CorollaryReport()
    rep.add("lambda<=n", lam <= n, f"lambda={lam}, n={n}")
    lo = lam * (r + s - n)
    hi = lo + (n - r) * (n - s)
    for l, t in enumerate(inst.symbol_totals()):
        rep.add(f"|M_{l + 1}| band", lo <= t <= hi, f"{lo} <= {t} <= {hi}")
    rows, cols = inst.row_counts(), inst.col_counts()
    for i in range(r):
        for l in range(n):
            rep.add(f"|M_{l + 1}^{i + 1}|>=lambda+s-n", rows[i, l] >= lam + s - n,
                    f"{rows[i, l]} >= {lam + s - n}")
    for j in range(s):
        for l in range(n):
            rep.add(f"|^{j + 1}M_{l + 1}|>=lambda+r-n", cols[j, l] >= lam + r - n,
                    f"{cols[j, l]} >= {lam + r - n}")
    return rep


def hall_check(inst: Instance, simple: bool = False) -> CorollaryReport:
    """Closed-form extendability test for rectangles spanning all n columns."""
    n, k, lam, r = inst.n, inst.k, inst.lam, inst.r
    if inst.s != n:
        raise ValueError(f"hall_check needs s = n, got s={inst.s}, n={n}")
    if k > 20:
        raise ValueError("hall_check enumerates 2^k subsets; k must be <= 20")
    rep = CorollaryReport()
    rem = inst.rho_array - inst.symbol_totals()
    cols = inst.col_counts()
    if simple:
        rep.add("lambda<=k", lam <= k, f"lambda={lam}, k={k}")
    for l in range(k):
        rep.add(f"rho_{l + 1}-|M_{l + 1}|<=lambda(n-r)", rem[l] <= lam * (n - r),
                f"{rem[l]} <= {lam * (n - r)}")
    masks = subset_masks(k).astype(np.int64)
    rhs = (1 - masks) @ rem
    if simple:
        room = np.minimum(n - r, lam - cols)        # (n, k)
        for j in range(n):
            rep.add(f"column {j + 1} room", lam * (n - r) <= room[j].sum(),
                    f"{lam * (n - r)} <= {room[j].sum()}")
        for l in range(k):
            rep.add(f"symbol {l + 1} room", rem[l] <= room[:, l].sum(),
                    f"{rem[l]} <= {room[:, l].sum()}")
        lhs = monus(lam * (n - r), masks @ room.T).sum(axis=1)
    else:
        size = masks.sum(axis=1)
        lhs = monus(lam * (n - r) + masks @ cols.T, lam * size[:, None]).sum(axis=1)
    for b in range(len(lhs)):
        K = [l + 1 for l in range(k) if b >> l & 1]
        rep.add(f"subset K={K}", lhs[b] <= rhs[b], f"{lhs[b]} <= {rhs[b]}")
    return rep


def cyclic_simple_square(m: int, lam: int, offset: int = 0) -> np.ndarray:
    """Count array ``(m, m, offset + m)`` of the cyclic simple lambda-Latin square.

    Cell (i, j) (0-based) holds symbols ``offset + (i + j + t) % m`` for
    ``t < lam``; symbols below ``offset`` are unused.
    """
    if not 1 <= lam <= m:
        raise ValueError(f"cyclic construction needs 1 <= lambda <= m, got lambda={lam}, m={m}")
    cells = np.zeros((m, m, offset + m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            for t in range(lam):
                cells[i, j, offset + (i + j + t) % m] = 1
    return cells


@dataclass(frozen=True)
class Rejected:
    """The embedding guarantee does not apply (this is not a non-existence proof)."""

    reason: str

    def __bool__(self) -> bool:
        return False


def evans_bound(p: PartialInstance, n: int) -> list[str]:
    """Violated hypotheses of the embedding guarantee for order ``n``."""
    out = []
    if p.lam > p.k:
        out.append(f"lambda={p.lam} > k={p.k}")
    need = max(p.k + p.r, p.k + p.s, p.k + p.lam, p.r + p.s)
    if n < need:
        out.append(f"n={n} < max(k+r, k+s, k+lambda, r+s) = {need}")
    return out


def evans_embed(p: PartialInstance, n: int) -> Square | Rejected:
    """Embed a simple partial lambda-Latin rectangle in a simple n x n lambda-Latin square.

    Empty slots are topped up from the cyclic square on symbols k+1..n (lowest
    symbols of the matching cell first), and the resulting full rectangle is
    completed.
    """
    if not p.is_simple():
        raise ValueError("evans_embed needs a simple partial rectangle")
    bad = p.violations()
    if bad:
        raise ValueError("invalid partial rectangle: " + "; ".join(bad))
    why = evans_bound(p, n)
    if why:
        return Rejected("; ".join(why))
    k, lam = p.k, p.lam
    block = cyclic_simple_square(n - k, lam, offset=k)
    cells = np.zeros((p.r, p.s, n), dtype=np.int64)
    cells[:, :, :k] = p.cells
    for i in range(p.r):
        for j in range(p.s):
            short = lam - int(p.cells[i, j].sum())
            for sym in np.nonzero(block[i, j])[0][:short]:
                cells[i, j, sym] = 1
    inst = Instance(n, n, lam, (lam * n,) * n, cells)
    rep = validate(inst, simple_required=True)
    if not rep.ok:
        raise InternalError("padded rectangle invalid: " + "; ".join(rep.violations), inst.to_json())
    sq = complete(inst, simple=True)
    if not sq:
        raise InternalError(f"embedding failed within the guaranteed range: {sq.reason}", inst.to_json())
    return sq
