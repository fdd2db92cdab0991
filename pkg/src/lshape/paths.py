"""x-monotone straight-through paths and top-view caterpillars.

A path drawing is *straight-through* when the two edges at every internal vertex
leave it in opposite directions.  With L-shaped edges this forces the segments
to alternate: a path that starts horizontally uses HV, VH, HV, ... edges, and
each vertex reached by a vertical segment must lie between its neighbours in y.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Sequence

from .drawing import PORTS_CCW, Drawing, same_cycle
from .embedding import InsufficientPoints, InternalBudgetViolation
from .geometry import Point, minimal_layer
from .trees import CaterpillarShape, OrderedTree, RootedTree


def _pow2(n: int) -> int:
    p = 1
    while p < n:
        p *= 2
    return p


@lru_cache(maxsize=None)
def _m(n: int, extra: int) -> int:
    if n <= 1:
        return 1
    return 2 * _m(n // 2, extra) + extra * n


def M(n: int) -> int:
    """Points that suffice for an x-monotone straight-through path on n vertices."""
    if n < 1:
        raise ValueError("n must be positive")
    return _m(_pow2(n), 2)


def M_cat(n: int) -> int:
    """The caterpillar variant of :func:`M` (three layers per side per step)."""
    if n < 1:
        raise ValueError("n must be positive")
    return _m(_pow2(n), 6)


# --------------------------------------------------------------------------
# Straight-through path drawings
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class StraightThroughDrawing:
    """A path drawing; vertex ``i`` of the path is node ``i`` of ``drawing.tree``."""

    drawing: Drawing

    @property
    def vertices(self) -> list[Point]:
        return [self.drawing.pos[i] for i in range(self.drawing.tree.n)]

    def is_straight_through(self) -> bool:
        d = self.drawing
        for v in range(1, d.tree.n - 1):
            a = d.ports(v - 1, v)[1]
            b = d.ports(v, v + 1)[0]
            if {a, b} not in ({"left", "right"}, {"up", "down"}):
                return False
        return True

    def is_x_monotone(self) -> bool:
        xs = [p.x for p in self.vertices]
        return all(a < b for a, b in zip(xs, xs[1:]))


def path_drawing(pts: Sequence[Point]) -> StraightThroughDrawing:
    """Alternating HV/VH drawing of the path through ``pts`` in order."""
    n = len(pts)
    tree = RootedTree([None] + list(range(n - 1)), degree_cap=4)
    bends = {(i, i + 1): "HV" if i % 2 == 0 else "VH" for i in range(n - 1)}
    return StraightThroughDrawing(Drawing(tree, dict(enumerate(pts)), bends))


def _first_dominated(cands: Sequence[Point], r: Point, above: bool) -> Point | None:
    """A point of ``cands`` left of ``r`` and strictly between p and r in y."""
    best = None
    for q in cands:
        if q.x < r.x and ((q.y < r.y) if above else (q.y > r.y)):
            if best is None or q.x > best.x:
                best = q
    return best


def _mono(pts: list[Point], n: int) -> list[Point]:
    """Vertices of an n-vertex (n a power of 2) monotone path on x-sorted pts."""
    if len(pts) < _path_need(n):
        raise InternalBudgetViolation(f"path of {n}: have {len(pts)}, need {_path_need(n)}")
    if n == 1:
        return [pts[0]]
    if n == 2:
        return [pts[0], pts[1]]
    half = n // 2
    first = _mono(pts[: M(half)], half)
    p = first[-2]
    right = [s for s in pts if s.x > p.x]
    top = [s for s in right if s.y > p.y]
    bot = [s for s in right if s.y < p.y]
    t1 = minimal_layer(top, "SW")
    b1 = minimal_layer(bot, "NW")
    for layer in (t1, b1):
        if len(layer) >= n:
            return sorted(layer, key=lambda s: s.x)[:n]
    used = set(t1) | set(b1)
    rest = [s for s in right if s not in used]
    second = _mono(rest, half)
    r = second[0]
    above = r.y > p.y
    q = _first_dominated(top if above else bot, r, above)
    if q is None:
        raise InternalBudgetViolation("no dominated joining point")
    return first[:-1] + [q] + second


def embed_monotone_path(n: int, ps: Sequence) -> StraightThroughDrawing:
    """x-monotone straight-through drawing of the n-vertex path on ``ps``.

    The first edge leaves horizontally.  Requires ``len(ps) >= M(n)``, or just
    n points when n <= 2.
    """
    if n < 1:
        raise ValueError("n must be positive")
    pts = sorted({Point(p[0], p[1]) for p in ps}, key=lambda s: s.x)
    need = _path_need(n)
    if len(pts) < need:
        raise InsufficientPoints(len(pts), need)
    verts = _mono(pts, _pow2(n))[:n]
    return path_drawing(verts)


def _path_need(n: int) -> int:
    # one or two vertices fit on any one or two points; beyond that use M
    return n if n <= 2 else M(n)


# --------------------------------------------------------------------------
# Top-view caterpillars
# --------------------------------------------------------------------------
#
# The spine is drawn x-monotone and straight-through; spine vertex i passes
# horizontally ("H") when i is even and vertically ("V") when i is odd.  Leaves
# sit on the ports perpendicular to the spine.  Pieces of the spine are drawn
# on monotone staircases (every vertex flanked by its leaves in x-order) or
# recursively: the first half goes on the leftmost points, the second half on
# what survives three dominance layers per side, and the V vertex between them
# is placed with its leaves on a monotone 3-chain inside the joining rectangle.

def caterpillar_orders(c: CaterpillarShape) -> OrderedTree:
    """Cyclic orders implied by ``c.sides`` (counterclockwise, forward first)."""
    spine = list(c.spine)
    cyc: dict[int, tuple[int, ...]] = {}
    for i, s in enumerate(spine):
        prev = spine[i - 1] if i > 0 else None
        succ = spine[i + 1] if i + 1 < len(spine) else None
        lv = list(c.leaves[i])
        if prev is None or succ is None:
            cyc[s] = tuple([u for u in (prev, succ) if u is not None] + lv)
            continue
        plan = c.sides[i]
        left = [lv[j] for j, ch in enumerate(plan) if ch == "L"]
        right = [lv[j] for j, ch in enumerate(plan) if ch == "R"]
        cyc[s] = tuple([succ] + left + [prev] + right)
        for leaf in lv:
            cyc[leaf] = (s,)
    for i in (0, len(spine) - 1):
        for leaf in c.leaves[i]:
            cyc[leaf] = (spine[i],)
    return OrderedTree(spine[0], cyc)


class _Cat:
    """Spine with leafless ends plus the prescribed cyclic orders."""

    def __init__(self, c: CaterpillarShape, ordered: OrderedTree) -> None:
        self.cyc = ordered.cyclic
        spine = list(c.spine)
        leaves = {s: list(lv) for s, lv in zip(c.spine, c.leaves)}
        if len(spine) == 1 and leaves[spine[0]]:
            v = spine[0]
            ring = list(self.cyc[v])
            spine = [ring[0], v]
            leaves[v] = ring[1:]
        spine = self._extend(spine[::-1], leaves)[::-1]
        spine = self._extend(spine, leaves)
        for s in spine:
            leaves.setdefault(s, [])
            leaves[s] = [u for u in leaves[s] if u not in spine]
        self.spine = spine
        self.leaves = [leaves[s] for s in spine]
        self.sizes = [1 + len(lv) for lv in self.leaves]

    def _extend(self, spine: list[int], leaves: dict) -> list[int]:
        """Continue the spine past its last vertex through the opposite leaf."""
        end = spine[-1]
        if len(spine) < 2 or not leaves.get(end):
            return spine
        ring = list(self.cyc[end])
        i = ring.index(spine[-2])
        ring = ring[i:] + ring[:i]
        nxt = ring[2] if len(ring) == 4 else ring[1]
        leaves[end] = [u for u in leaves[end] if u != nxt]
        return spine + [nxt]

    def kind(self, i: int) -> str:
        return "H" if i % 2 == 0 else "V"

    def leaf_ports(self, i: int, spine_ports: dict[int, str]) -> dict[int, str]:
        """Ports for the leaves of spine vertex i that realise its cyclic order."""
        v = self.spine[i]
        lv = self.leaves[i]
        if not lv:
            return {}
        free = [p for p in PORTS_CCW if p not in spine_ports.values()]
        want = self.cyc[v]
        for choice in permutations(free, len(lv)):
            at = {p: u for u, p in spine_ports.items()}
            at.update(zip(choice, lv))
            ring = tuple(at[p] for p in PORTS_CCW if p in at)
            if same_cycle(ring, want):
                return dict(zip(lv, choice))
        raise ValueError(f"cyclic order at node {v} cannot be drawn with a straight spine")

    def spine_ports(self, i: int, going_up: bool) -> dict[int, str]:
        """Ports used by the spine at vertex i; ``going_up`` matters for V vertices."""
        out: dict[int, str] = {}
        h = self.kind(i) == "H"
        if i > 0:
            out[self.spine[i - 1]] = "left" if h else ("down" if going_up else "up")
        if i + 1 < len(self.spine):
            out[self.spine[i + 1]] = "right" if h else ("up" if going_up else "down")
        return out


def _chain3(pts: Sequence[Point], increasing: bool) -> tuple[Point, Point, Point] | None:
    """Three points of ``pts`` forming a monotone chain in the given direction."""
    pts = sorted(pts, key=lambda s: s.x)
    n = len(pts)
    if n < 3:
        return None
    sign = 1 if increasing else -1
    low = [0] * n
    for i in range(1, n):
        low[i] = i if sign * pts[i].y < sign * pts[low[i - 1]].y else low[i - 1]
    high = [n - 1] * n
    for i in range(n - 2, -1, -1):
        high[i] = i if sign * pts[i].y > sign * pts[high[i + 1]].y else high[i + 1]
    for j in range(1, n - 1):
        a, c = pts[low[j - 1]], pts[high[j + 1]]
        if sign * a.y < sign * pts[j].y < sign * c.y:
            return a, pts[j], c
    return None


_BASE_NEED = {0: 1, 1: 2, 2: 5}


class _CatEmbedder:
    def __init__(self, cat: _Cat) -> None:
        self.cat = cat
        self.prefix = [0]
        for s in cat.sizes:
            self.prefix.append(self.prefix[-1] + s)
        self._need: dict[tuple[int, int], int] = {}

    def size(self, a: int, b: int) -> int:
        return self.prefix[b + 1] - self.prefix[a]

    def split(self, a: int, b: int) -> int:
        return min(range(a + 1, b, 2), key=lambda j: abs(self.size(a, j - 1) - self.size(j + 1, b)))

    def need(self, a: int, b: int) -> int:
        key = (a, b)
        if key not in self._need:
            k = b - a + 1
            if k == 1:
                val = _BASE_NEED[len(self.cat.leaves[a])]
            elif k == 2:
                val = _BASE_NEED[len(self.cat.leaves[a])] + 1
            else:
                j = self.split(a, b)
                val = self.need(a, j - 1) + self.need(j + 1, b) + 6 * (self.size(a, b) - 1)
            self._need[key] = val
        return self._need[key]

    # -- pieces ------------------------------------------------------------

    def base(self, a: int, pts: list[Point]):
        cat = self.cat
        v = cat.spine[a]
        ports = cat.leaf_ports(a, cat.spine_ports(a, True))
        pos = {}
        if not ports:
            pos[v] = pts[0]
        elif len(ports) == 1:
            (leaf, port), = ports.items()
            lo, hi = sorted(pts[:2], key=lambda s: s.y)
            pos[v], pos[leaf] = (lo, hi) if port == "up" else (hi, lo)
        else:
            trio = _chain3(pts[:5], True) or _chain3(pts[:5], False)
            lo, mid, hi = sorted(trio, key=lambda s: s.y)
            pos[v] = mid
            for leaf, port in ports.items():
                pos[leaf] = hi if port == "up" else lo
        return pos, ports

    def chain_layout(self, a: int, b: int, chain: list[Point], decreasing: bool):
        cat = self.cat
        before = {"up", "left"} if decreasing else {"down", "left"}
        order: list[int] = []
        all_ports: dict[int, str] = {}
        for i in range(a, b + 1):
            ports = cat.leaf_ports(i, cat.spine_ports(i, not decreasing))
            all_ports.update(ports)
            pre = sorted((u for u, p in ports.items() if p in before), key=lambda u: ports[u] in ("left", "right"))
            post = sorted((u for u, p in ports.items() if p not in before), key=lambda u: ports[u] not in ("left", "right"))
            order += pre + [cat.spine[i]] + post
        return dict(zip(order, chain)), all_ports

    def draw(self, a: int, b: int, pts: list[Point]):
        cat = self.cat
        if len(pts) < self.need(a, b):
            raise InternalBudgetViolation(f"caterpillar piece {a}..{b}: too few points")
        k = b - a + 1
        if k == 1:
            return self.base(a, pts)
        if k == 2:
            n1 = self.need(a, a)
            pos, ports = self.base(a, pts[:n1])
            pos[cat.spine[b]] = pts[n1]
            return pos, ports
        j = self.split(a, b)
        pos, ports = self.draw(a, j - 1, pts[: self.need(a, j - 1)])
        p = pos[cat.spine[j - 1]]
        pmax = max(s.x for s in pos.values())
        right = [s for s in pts if s.x > pmax]
        n = self.size(a, b)
        layers = []
        rest = {"SW": [s for s in right if s.y > p.y], "NW": [s for s in right if s.y < p.y]}
        for _ in range(3):
            for order in ("SW", "NW"):
                layer = minimal_layer(rest[order], order)
                if len(layer) >= n:
                    chain = sorted(layer, key=lambda s: s.x)[:n]
                    return self.chain_layout(a, b, chain, decreasing=order == "SW")
                drop = set(layer)
                rest[order] = [s for s in rest[order] if s not in drop]
                layers.append(layer)
        remaining = sorted(rest["SW"] + rest["NW"], key=lambda s: s.x)
        pos2, ports2 = self.draw(j + 1, b, remaining)
        r = pos2[cat.spine[j + 1]]
        up = r.y > p.y
        guard = r
        early = [s for s in pos2.values() if s.x < r.x]
        if len(early) > 1:
            raise InternalBudgetViolation("second half starts with more than one leaf")
        if early and min(p.y, r.y) < early[0].y < max(p.y, r.y):
            guard = early[0]
        lo_y, hi_y = (p.y, guard.y) if up else (guard.y, p.y)
        box = [s for s in pts if pmax < s.x < guard.x and lo_y < s.y < hi_y]
        trio = _chain3(box, increasing=up)
        if trio is None:
            raise InternalBudgetViolation("no monotone 3-chain in the joining rectangle")
        jports = cat.leaf_ports(j, cat.spine_ports(j, up))
        pos.update(pos2)
        ports.update(ports2)
        ports.update(jports)
        pos[cat.spine[j]] = trio[1]
        for leaf, port in jports.items():
            pos[leaf] = trio[0] if port == "left" else trio[2]
        return pos, ports


def caterpillar_points_needed(c: CaterpillarShape, ordered: OrderedTree | None = None) -> int:
    """Points the caterpillar construction needs for ``c`` (at most ``M_cat``-like)."""
    cat = _Cat(c, ordered or caterpillar_orders(c))
    if not any(cat.leaves):
        return M(len(cat.spine))
    return _CatEmbedder(cat).need(0, len(cat.spine) - 1)


def embed_top_view_caterpillar(
    c: CaterpillarShape, ps: Sequence, ordered: OrderedTree | None = None
) -> Drawing:
    """Planar L-shaped drawing of a top-view caterpillar with a straight-through spine.

    The drawing realises the cyclic orders of ``ordered`` (by default those
    implied by ``c.sides``).
    """
    ordered = ordered or caterpillar_orders(c)
    cat = _Cat(c, ordered)
    pts = sorted({Point(p[0], p[1]) for p in ps}, key=lambda s: s.x)
    m = len(cat.spine)
    need = caterpillar_points_needed(c, ordered)
    if len(pts) < need:
        raise InsufficientPoints(len(pts), need)
    if not any(cat.leaves):
        verts = _mono(pts, _pow2(m))[:m]
        pos, ports = dict(zip(cat.spine, verts)), {}
    else:
        pos, ports = _CatEmbedder(cat).draw(0, m - 1, pts)
    bend_pts = {}
    for i in range(m - 1):
        u, w = pos[cat.spine[i]], pos[cat.spine[i + 1]]
        bend_pts[(cat.spine[i], cat.spine[i + 1])] = Point(w.x, u.y) if i % 2 == 0 else Point(u.x, w.y)
    for i, s in enumerate(cat.spine):
        for leaf in cat.leaves[i]:
            u, w = pos[s], pos[leaf]
            bend_pts[(s, leaf)] = Point(w.x, u.y) if ports[leaf] in ("left", "right") else Point(u.x, w.y)
    return Drawing.from_bend_points(ordered.to_rooted(), pos, bend_pts)
