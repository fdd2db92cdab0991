"""Exhaustive decision procedure for L-shaped drawings of small trees.

Nodes are placed in DFS order starting at a vertex of maximum degree.  Each
step picks an unused point and a bend orientation for the edge to the already
placed neighbour, and is rejected at once if it reuses a port, crosses an
existing segment, or breaks the prescribed cyclic order.  Under general
orthogonal position a horizontal segment lies on the line through one of its
own nodes, so these three checks are complete.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import NamedTuple, Sequence

from .drawing import Drawing, bend_point
from .embedding import InsufficientPoints
from .geometry import Point, PointSet
from .trees import CaterpillarShape, OrderedTree, RootedTree, build_top_view_caterpillar

DEFAULT_CAP = 16
_R, _U, _L, _D = 0, 1, 2, 3  # counterclockwise port indices


class CapExceeded(ValueError):
    """The instance is larger than the exhaustive search accepts."""


class Feasible(NamedTuple):
    drawing: Drawing


class _Verdict(NamedTuple):
    name: str

    def __repr__(self) -> str:
        return self.name


Infeasible = _Verdict("Infeasible")
Unknown = _Verdict("Unknown")


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    prunes_by_kind: Counter = field(default_factory=Counter)
    elapsed: float = 0.0
    result: object = Unknown

    @property
    def feasible(self) -> bool | None:
        if isinstance(self.result, Feasible):
            return True
        return False if self.result is Infeasible else None

    @property
    def drawing(self) -> Drawing | None:
        return self.result.drawing if isinstance(self.result, Feasible) else None


class _Budget(Exception):
    pass


def _order_ok(sigma_pos: dict[int, int], deg: int, ports: list) -> bool:
    """Can the neighbours already on ports still be completed to the cyclic order?"""
    placed = [(p, sigma_pos[w]) for p, w in enumerate(ports) if w is not None]
    if len(placed) <= 1:
        return True
    total = 0
    for (p1, s1), (p2, s2) in zip(placed, placed[1:] + placed[:1]):
        k = (s2 - s1) % deg
        if (p2 - p1) % 4 < k:
            return False
        total += k
    return total == deg


class _Search:
    def __init__(self, tree: RootedTree, pts: Sequence[Point], orders: dict[int, tuple] | None,
                 stats: SearchStats, node_budget: int | None) -> None:
        self.tree = tree
        self.pts = list(pts)
        self.xr = {p.x: i for i, p in enumerate(sorted(pts, key=lambda p: p.x))}
        self.yr = {p.y: i for i, p in enumerate(sorted(pts, key=lambda p: p.y))}
        self.X = [self.xr[p.x] for p in self.pts]
        self.Y = [self.yr[p.y] for p in self.pts]
        n = tree.n
        self.nbrs = [tree.neighbors(v) for v in range(n)]
        start = max(range(n), key=lambda v: (len(self.nbrs[v]), -v))
        self.order, self.via = [start], {start: None}
        stack = [start]
        seen = {start}
        while stack:
            v = stack.pop()
            if v != start:
                self.order.append(v)
            for w in reversed(self.nbrs[v]):
                if w not in seen:
                    seen.add(w)
                    self.via[w] = v
                    stack.append(w)
        self.sigma = None
        if orders is not None:
            self.sigma = {v: {w: i for i, w in enumerate(orders[v])} for v in range(n)}
        self.stats = stats
        self.budget = node_budget
        self.pos = [-1] * n
        self.used = [False] * len(self.pts)
        self.ports = [[None] * 4 for _ in range(n)]
        self.H: list[tuple] = []  # (y, xlo, xhi, anchor)
        self.V: list[tuple] = []  # (x, ylo, yhi, anchor)
        self.bends: dict[tuple[int, int], str] = {}

    def _crosses(self, hy, hlo, hhi, ha, vx, vlo, vhi, va) -> bool:
        for (x, lo, hi, a) in self.V:
            if a != ha and hlo <= x <= hhi and lo <= hy <= hi:
                return True
        for (y, lo, hi, a) in self.H:
            if a != va and vlo <= y <= vhi and lo <= vx <= hi:
                return True
        return False

    def run(self) -> bool:
        first = self.order[0]
        for i in range(len(self.pts)):
            self.pos[first] = i
            self.used[i] = True
            if self._place(1):
                return True
            self.used[i] = False
        self.pos[first] = -1
        return False

    def _place(self, k: int) -> bool:
        if k == len(self.order):
            return True
        st = self.stats
        st.nodes_expanded += 1
        if self.budget is not None and st.nodes_expanded > self.budget:
            raise _Budget
        v = self.order[k]
        u = self.via[v]
        a = self.pos[u]
        ax, ay = self.X[a], self.Y[a]
        pu = self.ports[u]
        prunes = st.prunes_by_kind
        for b in range(len(self.pts)):
            if self.used[b]:
                continue
            bx, by = self.X[b], self.Y[b]
            for orient in ("HV", "VH"):
                if orient == "HV":
                    port_u = _R if bx > ax else _L
                    port_v = _U if ay > by else _D
                    h = (ay, min(ax, bx), max(ax, bx), u)
                    vs = (bx, min(ay, by), max(ay, by), v)
                else:
                    port_u = _U if by > ay else _D
                    port_v = _R if ax > bx else _L
                    vs = (ax, min(ay, by), max(ay, by), u)
                    h = (by, min(ax, bx), max(ax, bx), v)
                if pu[port_u] is not None:
                    prunes["port"] += 1
                    continue
                if self._crosses(*h, *vs):
                    prunes["crossing"] += 1
                    continue
                pu[port_u] = v
                if self.sigma is not None and not _order_ok(self.sigma[u], len(self.nbrs[u]), pu):
                    pu[port_u] = None
                    prunes["order"] += 1
                    continue
                self.ports[v][port_v] = u
                self.pos[v] = b
                self.used[b] = True
                self.H.append(h)
                self.V.append(vs)
                self.bends[(u, v)] = orient
                if self._place(k + 1):
                    return True
                del self.bends[(u, v)]
                self.H.pop()
                self.V.pop()
                self.used[b] = False
                self.pos[v] = -1
                self.ports[v][port_v] = None
                pu[port_u] = None
        return False

    def drawing(self) -> Drawing:
        pos = {v: self.pts[i] for v, i in enumerate(self.pos)}
        bend_pts = {(u, v): bend_point(pos[u], pos[v], o) for (u, v), o in self.bends.items()}
        return Drawing.from_bend_points(self.tree, pos, bend_pts)


def _as_tree(t: RootedTree | OrderedTree, ordered: bool) -> tuple[RootedTree, OrderedTree | None]:
    if isinstance(t, OrderedTree):
        return t.to_rooted(), (t if ordered else None)
    return t, (OrderedTree.from_rooted(t) if ordered else None)


def exists_drawing(
    t: RootedTree | OrderedTree,
    ps: Sequence,
    ordered: bool = False,
    cap: int = DEFAULT_CAP,
    node_budget: int | None = None,
) -> SearchStats:
    """Decide whether ``t`` has a planar L-shaped drawing on a subset of ``ps``.

    With ``ordered`` the drawing must realise the tree's cyclic orders up to a
    global reflection.  ``node_budget`` bounds the search; an exhausted budget
    yields ``Unknown``, never ``Infeasible``.
    """
    tree, otree = _as_tree(t, ordered)
    if tree.n > cap:
        raise CapExceeded(f"tree has {tree.n} nodes; the exhaustive search is capped at {cap}")
    pts = sorted(PointSet(ps), key=lambda p: (p.x, p.y))
    if len(pts) < tree.n:
        raise InsufficientPoints(len(pts), tree.n)
    stats = SearchStats()
    t0 = time.perf_counter()
    variants = [None]
    if otree is not None:
        variants = [otree.cyclic, {v: tuple(reversed(c)) for v, c in otree.cyclic.items()}]
    try:
        for orders in variants:
            s = _Search(tree, pts, orders, stats, node_budget)
            if s.run():
                stats.result = Feasible(s.drawing())
                break
        else:
            stats.result = Infeasible
    except _Budget:
        stats.result = Unknown
    stats.elapsed = time.perf_counter() - t0
    return stats


# --------------------------------------------------------------------------
# Ordering classes of caterpillars
# --------------------------------------------------------------------------

_SIDE_CHOICES = {0: ("",), 1: ("L", "R"), 2: ("LR", "LL", "RR")}
_MIRROR = str.maketrans("LR", "RL")


def ordering_classes(shape: CaterpillarShape) -> list[tuple[str, ...]]:
    """Leaf-side assignments of the internal spine vertices, one per class.

    Two leaves on opposite sides form one class whatever their labels, and an
    assignment and its mirror image (every side swapped) form one class.
    """
    counts = shape.leaf_counts()
    k = len(counts)
    choices = [("",) if i in (0, k - 1) else _SIDE_CHOICES[counts[i]] for i in range(k)]
    seen: set[tuple[str, ...]] = set()
    out = []
    for combo in product(*choices):
        mirror = tuple("".join(sorted(s.translate(_MIRROR))) if s != "LR" else s for s in combo)
        if combo in seen or mirror in seen:
            continue
        seen.add(combo)
        out.append(combo)
    return out


@dataclass
class OrderingResult:
    ordering: tuple[str, ...]
    stats: SearchStats

    @property
    def label(self) -> str:
        return ",".join(s or "-" for s in self.ordering)


def enumerate_orderings_and_test(
    shape: CaterpillarShape, ps: Sequence, cap: int = DEFAULT_CAP
) -> list[OrderingResult]:
    """Run the ordered search on every ordering class of ``shape``."""
    if shape.n > cap:
        raise CapExceeded(f"shape has {shape.n} nodes; the exhaustive search is capped at {cap}")
    out = []
    for combo in ordering_classes(shape):
        ot, _ = build_top_view_caterpillar(len(shape.spine), shape.leaf_counts(), list(combo))
        out.append(OrderingResult(combo, exists_drawing(ot, ps, ordered=True, cap=cap)))
    return out
