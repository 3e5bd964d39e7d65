"""Deciding (simple) admissibility and certifying it with a witness.

A witness is the pair of sequences ``(a_l, b_l)``.  Admissibility is decided by
a single feasible-circulation problem whose integral solutions project onto
exactly the witnesses; :func:`recheck_conditions` re-evaluates the defining
inequality system literally, subset by subset, as an independent check.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .factors import INF, FlowNetwork, feasible_flow, subset_masks
from .model import Instance, validate


def monus(x, y):
    """``max(0, x - y)``, elementwise for arrays."""
    return np.maximum(np.asarray(x) - np.asarray(y), 0)


@dataclass(frozen=True)
class Deficits:
    """Per-symbol quantities every condition is phrased in.

    ``rem[l] = rho_l - |M_l|`` copies of l still to place; ``forced_a`` and
    ``forced_b`` are the copies of l that cannot fit in the bottom rows and
    right columns respectively and so must go into blocks A and B.
    """

    rem: np.ndarray
    forced_a: np.ndarray
    forced_b: np.ndarray

    @classmethod
    def of(cls, inst: Instance) -> "Deficits":
        lam, n = inst.lam, inst.n
        rem = inst.rho_array - inst.symbol_totals()
        return cls(rem, monus(rem + lam * inst.r, lam * n), monus(rem + lam * inst.s, lam * n))


def gamma_multiplicities(inst: Instance, simple: bool) -> tuple[np.ndarray, np.ndarray]:
    """Edge multiplicities of the row-symbol and column-symbol auxiliary graphs.

    Entry ``[i, l]`` is how many more copies of l row i (column j) can take in
    the block to its right (below it).
    """
    lam = inst.lam
    g1 = lam - inst.row_counts()
    g2 = lam - inst.col_counts()
    if simple:
        g1 = np.minimum(g1, inst.n - inst.s)
        g2 = np.minimum(g2, inst.n - inst.r)
    return g1, g2


@dataclass(frozen=True)
class Witness:
    a: tuple[int, ...]
    b: tuple[int, ...]
    forced_a: tuple[int, ...]
    forced_b: tuple[int, ...]
    block_a: tuple[int, ...]
    block_b: tuple[int, ...]
    block_c: tuple[int, ...]

    @classmethod
    def build(cls, inst: Instance, a, b) -> "Witness":
        d = Deficits.of(inst)
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        ba, bb = a + d.forced_a, b + d.forced_b

        def t(v):
            return tuple(int(x) for x in v)

        return cls(t(a), t(b), t(d.forced_a), t(d.forced_b), t(ba), t(bb), t(d.rem - ba - bb))

    def to_json(self) -> dict:
        return {"a": list(self.a), "b": list(self.b),
                "block_a": list(self.block_a), "block_b": list(self.block_b),
                "block_c": list(self.block_c)}


@dataclass(frozen=True)
class NotAdmissible:
    """Negative verdict.  ``symbols`` (1-based) hint at where it fails."""

    reason: str
    symbols: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {"reason": self.reason, "symbols": list(self.symbols)}


def necessary_quick_check(inst: Instance) -> bool:
    """Cheap screen: every symbol's missing copies fit in the new rows plus new columns.

    False proves non-admissibility; True says nothing.
    """
    return _quick_violation(inst) is None


def _quick_violation(inst: Instance) -> Optional[NotAdmissible]:
    rem = inst.rho_array - inst.symbol_totals()
    cap = inst.lam * (2 * inst.n - inst.r - inst.s)
    for l in np.nonzero(rem > cap)[0]:
        return NotAdmissible(
            f"rho_{l + 1}-|M_{l + 1}| = {rem[l]} > lambda(2n-r-s) = {cap}", (int(l) + 1,))
    return None


def _require_valid(inst: Instance, simple: bool) -> None:
    rep = validate(inst)
    if not rep.ok:
        raise ValueError("invalid instance: " + "; ".join(rep.violations))
    if simple and not rep.is_simple:
        raise ValueError("simple mode requires a simple rectangle")


@dataclass
class _Net:
    net: FlowNetwork
    arc_a: list[int]
    arc_b: list[int]
    hub: list[int]


def admissibility_network(inst: Instance, simple: bool) -> _Net:
    """Circulation whose feasible integral flows correspond to witnesses.

    source -> row i (exactly lambda(n-s)) -> symA_l (<= row-graph mult)
    -> hub_l (>= forced_a) -> sink (<= rem_l), and the same through columns
    and symB_l with lambda(n-r) and forced_b.  In simple mode hub_l must also
    carry at least ``rem_l - (n-r)(n-s)`` so the corner block is not overfull.
    """
    r, s, k, n, lam = inst.r, inst.s, inst.k, inst.n, inst.lam
    d = Deficits.of(inst)
    g1, g2 = gamma_multiplicities(inst, simple)
    src, snk = 0, 1
    xs = range(2, 2 + r)
    ys = range(2 + r, 2 + r + s)
    sym_a = [2 + r + s + l for l in range(k)]
    sym_b = [2 + r + s + k + l for l in range(k)]
    hub = [2 + r + s + 2 * k + l for l in range(k)]
    net = FlowNetwork(2 + r + s + 3 * k, src, snk)
    for i, x in enumerate(xs):
        net.add_arc(src, x, upper=lam * (n - s), lower=lam * (n - s))
        for l in range(k):
            if g1[i, l] > 0:
                net.add_arc(x, sym_a[l], upper=int(g1[i, l]))
    for j, y in enumerate(ys):
        net.add_arc(src, y, upper=lam * (n - r), lower=lam * (n - r))
        for l in range(k):
            if g2[j, l] > 0:
                net.add_arc(y, sym_b[l], upper=int(g2[j, l]))
    arc_a, arc_b = [], []
    corner = (n - r) * (n - s)
    for l in range(k):
        arc_a.append(net.add_arc(sym_a[l], hub[l], lower=int(d.forced_a[l])))
        arc_b.append(net.add_arc(sym_b[l], hub[l], lower=int(d.forced_b[l])))
        low = max(0, int(d.rem[l]) - corner) if simple else 0
        # rem_l < low cannot happen (low <= rem_l); rem_l < 0 is rejected by validation
        net.add_arc(hub[l], snk, upper=int(d.rem[l]), lower=low)
    net.add_arc(snk, src, upper=INF)
    return _Net(net, arc_a, arc_b, hub)


def check_admissible(inst: Instance, simple: bool = False) -> Witness | NotAdmissible:
    """Decide (simple) admissibility; return a witness or the reason it fails.

    Raises ValueError on an invalid instance (or a non-simple one in simple mode).
    """
    _require_valid(inst, simple)
    if simple and inst.lam > inst.k:
        return NotAdmissible(f"simple squares need lambda <= k, got lambda={inst.lam}, k={inst.k}")
    quick = _quick_violation(inst)
    if quick is not None:
        return quick
    an = admissibility_network(inst, simple)
    fa = feasible_flow(an.net)
    if not fa:
        syms = tuple(l + 1 for l, h in enumerate(an.hub) if h in fa.source_side)
        return NotAdmissible(
            f"no witness exists: {fa.shortfall} unit(s) of required flow cannot be routed"
            + (f"; cut through symbols {list(syms)}" if syms else ""), syms)
    d = Deficits.of(inst)
    a = [fa.flows[e] - int(d.forced_a[l]) for l, e in enumerate(an.arc_a)]
    b = [fa.flows[e] - int(d.forced_b[l]) for l, e in enumerate(an.arc_b)]
    return Witness.build(inst, a, b)


# --------------------------------------------------------------------------
# literal re-evaluation of the definition

@dataclass(frozen=True)
class Condition:
    name: str
    where: object
    lhs: int
    rel: str
    rhs: int

    @property
    def passed(self) -> bool:
        if self.rel == "==":
            return self.lhs == self.rhs
        if self.rel == "<=":
            return self.lhs <= self.rhs
        return self.lhs >= self.rhs

    def __str__(self) -> str:
        mark = "ok  " if self.passed else "FAIL"
        return f"{mark} {self.name}[{self.where}]: {self.lhs} {self.rel} {self.rhs}"


@dataclass
class ConditionReport:
    """Every inequality of the definition for one witness.

    Scalar and per-index conditions are kept as :class:`Condition` objects;
    the two subset families are kept as ``(lhs, rhs)`` arrays indexed by the
    bitmask of K and expanded on demand.
    """

    k: int
    conditions: list[Condition]
    subset_families: dict[str, tuple[np.ndarray, np.ndarray]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.conditions) and all(
            bool((lhs <= rhs).all()) for lhs, rhs in self.subset_families.values())

    def __bool__(self) -> bool:
        return self.ok

    def entries(self) -> Iterator[Condition]:
        yield from self.conditions
        for name, (lhs, rhs) in self.subset_families.items():
            for mask in range(len(lhs)):
                K = tuple(l + 1 for l in range(self.k) if mask >> l & 1)
                yield Condition(name, K, int(lhs[mask]), "<=", int(rhs[mask]))

    def failures(self) -> list[Condition]:
        return [c for c in self.entries() if not c.passed]

    def count(self) -> int:
        return len(self.conditions) + sum(len(l) for l, _ in self.subset_families.values())


def recheck_conditions(inst: Instance, w: Witness, simple: bool = False) -> ConditionReport:
    """Evaluate the full (simple) admissibility system for the witness ``w``.

    Enumerates all ``2**k`` symbol subsets, so ``k <= 20`` is required.
    """
    if inst.k > 20:
        raise ValueError(f"recheck enumerates 2^k subsets; k={inst.k} > 20")
    r, s, k, n, lam = inst.r, inst.s, inst.k, inst.n, inst.lam
    d = Deficits.of(inst)
    tot = inst.symbol_totals()
    rows, cols = inst.row_counts(), inst.col_counts()
    a = np.asarray(w.a, dtype=np.int64)
    b = np.asarray(w.b, dtype=np.int64)
    conds: list[Condition] = []

    def add(name, where, lhs, rel, rhs):
        conds.append(Condition(name, where, int(lhs), rel, int(rhs)))

    if simple:
        add("lambda<=k", None, lam, "<=", k)
    add("sum_a", None, a.sum(), "==", lam * r * (n - s) - d.forced_a.sum())
    add("sum_b", None, b.sum(), "==", lam * s * (n - r) - d.forced_b.sum())
    if simple:
        room_row = np.minimum(n - s, lam - rows)    # (r, k)
        room_col = np.minimum(n - r, lam - cols)    # (s, k)
        cap_a, cap_b = room_row.sum(axis=0), room_col.sum(axis=0)
    else:
        cap_a, cap_b = lam * r - tot, lam * s - tot
    for l in range(k):
        add("a>=0", l + 1, a[l], ">=", 0)
        add("b>=0", l + 1, b[l], ">=", 0)
        add("a_upper", l + 1, a[l], "<=", cap_a[l] - d.forced_a[l])
        add("b_upper", l + 1, b[l], "<=", cap_b[l] - d.forced_b[l])
        add("a+b_upper", l + 1, a[l] + b[l], "<=", d.rem[l] - d.forced_a[l] - d.forced_b[l])
        if simple:
            add("a+b_lower", l + 1, a[l] + b[l], ">=",
                d.rem[l] - d.forced_a[l] - d.forced_b[l] - (n - r) * (n - s))
    if simple:
        for i in range(r):
            add("row_room", i + 1, lam * (n - s), "<=", room_row[i].sum())
        for j in range(s):
            add("col_room", j + 1, lam * (n - r), "<=", room_col[j].sum())

    masks = subset_masks(k)
    mi = masks.astype(np.int64)
    size = mi.sum(axis=1)
    rhs_a = (1 - mi) @ (a + d.forced_a)
    rhs_b = (1 - mi) @ (b + d.forced_b)
    if simple:
        lhs_a = monus(lam * (n - s), mi @ room_row.T).sum(axis=1)
        lhs_b = monus(lam * (n - r), mi @ room_col.T).sum(axis=1)
    else:
        lhs_a = monus(lam * (n - s) + mi @ rows.T, lam * size[:, None]).sum(axis=1)
        lhs_b = monus(lam * (n - r) + mi @ cols.T, lam * size[:, None]).sum(axis=1)
    fams = {"row_subset": (lhs_a, rhs_a), "col_subset": (lhs_b, rhs_b)}
    return ConditionReport(k, conds, fams)
