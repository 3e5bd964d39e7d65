"""Integral flow machinery: max-flow, flows with lower bounds, bipartite
f-factors and two-family laminar rounding.

Everything here is deterministic: arcs are explored in insertion order and no
randomness is involved, so identical inputs give identical outputs.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .model import InternalError

#: Stand-in for an infinite capacity; far above any count the model permits.
INF = 1 << 62


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    lower: int
    upper: int


class FlowNetwork:
    """Directed network with integer lower/upper bounds on every arc."""

    def __init__(self, num_nodes: int = 0, source: Optional[int] = None,
                 sink: Optional[int] = None):
        self.num_nodes = num_nodes
        self.source = source
        self.sink = sink
        self.arcs: list[Arc] = []

    def add_node(self) -> int:
        self.num_nodes += 1
        return self.num_nodes - 1

    def add_arc(self, tail: int, head: int, upper: int = INF, lower: int = 0) -> int:
        if tail == head:
            raise ValueError("self-loops are not allowed")
        if not (0 <= tail < self.num_nodes and 0 <= head < self.num_nodes):
            raise ValueError(f"arc ({tail},{head}) references a missing node")
        if not 0 <= lower <= upper:
            raise ValueError(f"need 0 <= lower <= upper, got [{lower}, {upper}]")
        self.arcs.append(Arc(tail, head, int(lower), int(upper)))
        return len(self.arcs) - 1


@dataclass
class FlowAssignment:
    value: int
    flows: list[int]


@dataclass
class Infeasible:
    """No flow meets the bounds.

    ``source_side`` is the node set of a violated cut (nodes of the original
    network reachable from the super-source in the final residual graph), and
    ``shortfall`` the amount of mandatory flow that could not be routed.
    """

    source_side: frozenset = field(default_factory=frozenset)
    shortfall: int = 0

    def __bool__(self) -> bool:
        return False


class _Dinic:
    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add(self, u: int, v: int, c: int) -> int:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)
        return len(self.to) - 2

    def _bfs(self, s: int, t: int) -> bool:
        level = [-1] * self.n
        level[s] = 0
        q = deque([s])
        to, cap = self.to, self.cap
        while q:
            u = q.popleft()
            for e in self.head[u]:
                if cap[e] > 0 and level[to[e]] < 0:
                    level[to[e]] = level[u] + 1
                    q.append(to[e])
        self.level = level
        return level[t] >= 0

    def _dfs(self, u: int, t: int, pushed: int) -> int:
        if u == t:
            return pushed
        to, cap, level, it = self.to, self.cap, self.level, self.it
        adj = self.head[u]
        while it[u] < len(adj):
            e = adj[it[u]]
            v = to[e]
            if cap[e] > 0 and level[v] == level[u] + 1:
                d = self._dfs(v, t, min(pushed, cap[e]))
                if d:
                    cap[e] -= d
                    cap[e ^ 1] += d
                    return d
            it[u] += 1
        return 0

    def run(self, s: int, t: int) -> int:
        total = 0
        while self._bfs(s, t):
            self.it = [0] * self.n
            while True:
                d = self._dfs(s, t, INF)
                if not d:
                    break
                total += d
        return total

    def reachable(self, s: int) -> set[int]:
        seen = {s}
        q = deque([s])
        while q:
            u = q.popleft()
            for e in self.head[u]:
                if self.cap[e] > 0 and self.to[e] not in seen:
                    seen.add(self.to[e])
                    q.append(self.to[e])
        return seen


def max_flow(net: FlowNetwork) -> FlowAssignment:
    """Integral maximum source-sink flow; all lower bounds must be zero."""
    if net.source is None or net.sink is None:
        raise ValueError("max_flow needs a designated source and sink")
    if any(a.lower for a in net.arcs):
        raise ValueError("max_flow requires zero lower bounds; use feasible_flow")
    d = _Dinic(net.num_nodes)
    ids = [d.add(a.tail, a.head, a.upper) for a in net.arcs]
    value = d.run(net.source, net.sink)
    return FlowAssignment(value, [d.cap[e ^ 1] for e in ids])


def feasible_flow(net: FlowNetwork) -> FlowAssignment | Infeasible:
    """Find an integral circulation with ``lower <= flow <= upper`` on every arc.

    Flow is conserved at every node, source and sink included; an s-t demand
    is expressed by adding a return arc from sink to source.  The returned
    ``value`` is the total flow on arcs leaving ``net.source`` (0 if unset).
    """
    n = net.num_nodes
    ss, tt = n, n + 1
    d = _Dinic(n + 2)
    excess = [0] * n
    ids = []
    for a in net.arcs:
        ids.append(d.add(a.tail, a.head, a.upper - a.lower))
        excess[a.head] += a.lower
        excess[a.tail] -= a.lower
    need = 0
    for v in range(n):
        if excess[v] > 0:
            d.add(ss, v, excess[v])
            need += excess[v]
        elif excess[v] < 0:
            d.add(v, tt, -excess[v])
    got = d.run(ss, tt)
    if got < need:
        side = frozenset(v for v in d.reachable(ss) if v < n)
        return Infeasible(side, need - got)
    flows = [a.lower + d.cap[e ^ 1] for a, e in zip(net.arcs, ids)]
    value = sum(f for a, f in zip(net.arcs, flows) if a.tail == net.source) if net.source is not None else 0
    result = FlowAssignment(value, flows)
    _check_circulation(net, result)
    return result


def _check_circulation(net: FlowNetwork, fa: FlowAssignment) -> None:
    bal = [0] * net.num_nodes
    for a, f in zip(net.arcs, fa.flows):
        if not a.lower <= f <= a.upper:
            raise InternalError(f"flow {f} on arc {a} breaks its bounds")
        bal[a.tail] -= f
        bal[a.head] += f
    if any(bal):
        raise InternalError("flow is not conserved", {"balance": bal})


# --------------------------------------------------------------------------
# bipartite f-factors

@dataclass(frozen=True)
class BipartiteMultigraph:
    """Bipartite multigraph between left vertices X and symbols [k].

    ``mult[x, l]`` is the number of parallel edges between ``x`` and ``l``.
    """

    mult: np.ndarray

    def __post_init__(self):
        m = np.array(self.mult, dtype=np.int64)
        if m.ndim != 2 or (m < 0).any():
            raise ValueError("mult must be a non-negative 2-d array")
        m.setflags(write=False)
        object.__setattr__(self, "mult", m)

    @property
    def num_left(self) -> int:
        return self.mult.shape[0]

    @property
    def k(self) -> int:
        return self.mult.shape[1]


@dataclass(frozen=True)
class DegreeSpec:
    """Target degrees: ``left[x]`` for each x in X, ``right[l]`` for each symbol."""

    left: np.ndarray
    right: np.ndarray

    def __post_init__(self):
        for name in ("left", "right"):
            v = np.array(getattr(self, name), dtype=np.int64).reshape(-1)
            if (v < 0).any():
                raise ValueError("degrees must be non-negative")
            v.setflags(write=False)
            object.__setattr__(self, name, v)


def _check_shapes(g: BipartiteMultigraph, f: DegreeSpec) -> None:
    if f.left.shape != (g.num_left,) or f.right.shape != (g.k,):
        raise ValueError("degree spec does not match the graph's vertex sets")


def f_factor(g: BipartiteMultigraph, f: DegreeSpec) -> Optional[np.ndarray]:
    """Sub-multigraph with every degree exactly ``f``, or ``None`` if none exists.

    The factor is returned as a multiplicity table shaped like ``g.mult``.
    """
    _check_shapes(g, f)
    if f.left.sum() != f.right.sum():
        return None
    nx, k = g.mult.shape
    src, snk = nx + k, nx + k + 1
    net = FlowNetwork(nx + k + 2, src, snk)
    for x in range(nx):
        net.add_arc(src, x, int(f.left[x]))
    edges = []
    for x in range(nx):
        for l in range(k):
            if g.mult[x, l]:
                edges.append((x, l, net.add_arc(x, nx + l, int(g.mult[x, l]))))
    for l in range(k):
        net.add_arc(nx + l, snk, int(f.right[l]))
    fa = max_flow(net)
    if fa.value != f.left.sum():
        return None
    out = np.zeros_like(g.mult)
    for x, l, a in edges:
        out[x, l] = fa.flows[a]
    return out


def subset_masks(k: int) -> np.ndarray:
    """``(2**k, k)`` boolean matrix; row ``b`` is the subset encoded by bitmask ``b``."""
    if k > 20:
        raise ValueError(f"subset enumeration limited to k <= 20, got k={k}")
    return ((np.arange(2**k)[:, None] >> np.arange(k)[None, :]) & 1).astype(bool)


def ore_condition_holds(g: BipartiteMultigraph, f: DegreeSpec) -> bool:
    """Ore's criterion, evaluated over every symbol subset A.

    True iff ``f(X) == f([k])`` and ``f(comp A) >= sum_x (f(x) - mult(x, A))^+``
    for all ``A``.  Exponential in ``k``; meant as an oracle only.
    """
    _check_shapes(g, f)
    masks = subset_masks(g.k)
    if f.left.sum() != f.right.sum():
        return False
    mult_a = masks.astype(np.int64) @ g.mult.T          # (2^k, |X|)
    need = np.maximum(f.left[None, :] - mult_a, 0).sum(axis=1)
    have = (~masks).astype(np.int64) @ f.right
    return bool((have >= need).all())


# --------------------------------------------------------------------------
# laminar rounding

@dataclass(frozen=True)
class LaminarInstance:
    """Ground multiset H of (column, symbol) elements and a divisor m.

    ``counts[j, l]`` copies of element ``(j, l)``.  The two laminar families
    are implicit: A = {H_l} (all copies of symbol l) and
    B = {^jH} (everything in column j) together with {^jH_l} (one cell).
    """

    counts: np.ndarray
    m: int

    def __post_init__(self):
        c = np.array(self.counts, dtype=np.int64)
        if c.ndim != 2 or (c < 0).any():
            raise ValueError("counts must be a non-negative 2-d array")
        if self.m < 1:
            raise ValueError("divisor m must be >= 1")
        c.setflags(write=False)
        object.__setattr__(self, "counts", c)

    def family_sizes(self, z: np.ndarray) -> list[tuple[str, int, int]]:
        """``(label, |W|, |Z & W|)`` for every W of both families."""
        c = self.counts
        out = [(f"H_{l + 1}", int(c[:, l].sum()), int(z[:, l].sum())) for l in range(c.shape[1])]
        out += [(f"^{j + 1}H", int(c[j].sum()), int(z[j].sum())) for j in range(c.shape[0])]
        out += [(f"^{j + 1}H_{l + 1}", int(c[j, l]), int(z[j, l]))
                for j in range(c.shape[0]) for l in range(c.shape[1])]
        return out

    def families(self) -> tuple[list[frozenset], list[frozenset]]:
        """Explicit element-id sets of both families (for laminarity checks).

        Element ids are ``(j, l, copy)`` triples.
        """
        c = self.counts
        elem = {(j, l): [(j, l, t) for t in range(c[j, l])]
                for j in range(c.shape[0]) for l in range(c.shape[1])}
        fam_a = [frozenset(e for j in range(c.shape[0]) for e in elem[j, l]) for l in range(c.shape[1])]
        fam_b = [frozenset(e for l in range(c.shape[1]) for e in elem[j, l]) for j in range(c.shape[0])]
        fam_b += [frozenset(elem[j, l]) for j in range(c.shape[0]) for l in range(c.shape[1])]
        return fam_a, fam_b


def is_laminar(family: list[frozenset]) -> bool:
    for i, a in enumerate(family):
        for b in family[i + 1:]:
            if not (a <= b or b <= a or not (a & b)):
                return False
    return True


def rounding_violations(li: LaminarInstance, z: np.ndarray) -> list[str]:
    """Every W with ``|Z & W|`` outside ``[floor(|W|/m), ceil(|W|/m)]``."""
    out = []
    if z.shape != li.counts.shape or (z < 0).any() or (z > li.counts).any():
        out.append("selection is not a sub-multiset of H")
    m = li.m
    for label, w, zw in li.family_sizes(z):
        if not w // m <= zw <= -(-w // m):
            out.append(f"|Z & {label}|={zw} not within [{w // m}, {-(-w // m)}]")
    return out


def laminar_round(li: LaminarInstance) -> np.ndarray:
    """Pick ``z[j, l] <= counts[j, l]`` with every family total rounded from |W|/m.

    A feasible circulation on source -> symbol -> column -> sink -> source,
    each arc bounded by the floor and ceiling of its set size over m.  The
    fractional flow counts/m fits all bounds, so an integral one always
    exists; failure is an internal error.
    """
    c, m = li.counts, li.m
    ncol, k = c.shape
    src, snk = 0, 1
    sym = [2 + l for l in range(k)]
    col = [2 + k + j for j in range(ncol)]
    net = FlowNetwork(2 + k + ncol, src, snk)
    for l in range(k):
        h = int(c[:, l].sum())
        if h:
            net.add_arc(src, sym[l], upper=-(-h // m), lower=h // m)
    cell_arcs = []
    for l in range(k):
        for j in range(ncol):
            h = int(c[j, l])
            if h:
                cell_arcs.append((j, l, net.add_arc(sym[l], col[j], upper=min(-(-h // m), h), lower=h // m)))
    for j in range(ncol):
        h = int(c[j].sum())
        if h:
            net.add_arc(col[j], snk, upper=-(-h // m), lower=h // m)
    net.add_arc(snk, src)
    fa = feasible_flow(net)
    if not fa:
        raise InternalError("laminar rounding infeasible", {"counts": c.tolist(), "m": m})
    z = np.zeros_like(c)
    for j, l, a in cell_arcs:
        z[j, l] = fa.flows[a]
    bad = rounding_violations(li, z)
    if bad:
        raise InternalError("laminar rounding out of bounds: " + "; ".join(bad),
                            {"counts": c.tolist(), "m": m})
    return z
