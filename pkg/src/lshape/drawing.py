"""The L-shaped drawing object, its validator and its JSON / SVG serializers.

An edge ``(u, v)`` is stored from the parent ``u``.  ``"HV"`` means the segment
leaving ``u`` is horizontal, so the bend sits at ``(v.x, u.y)``; ``"VH"`` puts
the bend at ``(u.x, v.y)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

import numpy as np

from .geometry import Point, Scalar, Symmetry, exact
from .trees import OrderedTree, RootedTree, parse_tree, serialize_tree

ORIENTATIONS = ("HV", "VH")
PORTS_CCW = ("right", "up", "left", "down")


class SchemaError(ValueError):
    pass


def bend_point(u: Point, v: Point, orientation: str) -> Point:
    return Point(v.x, u.y) if orientation == "HV" else Point(u.x, v.y)


def orientation_of(u: Point, v: Point, bend: Point) -> str:
    """Orientation of edge u->v given its bend point."""
    if bend == (v.x, u.y):
        return "HV"
    if bend == (u.x, v.y):
        return "VH"
    raise ValueError(f"{bend} is not a bend of {u}-{v}")


def port_toward(src: Point, dst: Point) -> str:
    """Port of ``src`` used by an axis-parallel segment heading to ``dst``."""
    if src.y == dst.y:
        return "right" if dst.x > src.x else "left"
    return "up" if dst.y > src.y else "down"


@dataclass(frozen=True)
class Drawing:
    tree: RootedTree
    pos: Mapping[int, Point]
    bends: Mapping[tuple[int, int], str]

    def __post_init__(self) -> None:
        if len(self.pos) != self.tree.n or set(self.pos) != set(range(self.tree.n)):
            raise ValueError("every tree node must be placed exactly once")
        if len(set(self.pos.values())) != len(self.pos):
            raise ValueError("placement is not injective")
        for e in self.tree.edges():
            if self.bends.get(e) not in ORIENTATIONS:
                raise ValueError(f"edge {e} lacks a bend orientation")

    @classmethod
    def from_bend_points(
        cls, tree: RootedTree, pos: Mapping[int, Point], bend_pts: Mapping[tuple[int, int], Point]
    ) -> "Drawing":
        bends = {}
        for u, v in tree.edges():
            b = bend_pts.get((u, v))
            if b is None:
                b = bend_pts[(v, u)]
            bends[(u, v)] = orientation_of(pos[u], pos[v], b)
        return cls(tree, dict(pos), bends)

    def bend(self, u: int, v: int) -> Point:
        return bend_point(self.pos[u], self.pos[v], self.bends[(u, v)])

    def ports(self, u: int, v: int) -> tuple[str, str]:
        """(port at parent u, port at child v) of edge u->v."""
        b = self.bend(u, v)
        return port_toward(self.pos[u], b), port_toward(self.pos[v], b)

    def segments(self) -> list[tuple[tuple[int, int], Point, Point]]:
        out = []
        for u, v in self.tree.edges():
            b = self.bend(u, v)
            out.append(((u, v), self.pos[u], b))
            out.append(((u, v), b, self.pos[v]))
        return out

    def transformed(self, s: Symmetry) -> "Drawing":
        flip = s.swaps_axes
        bends = {e: ({"HV": "VH", "VH": "HV"}[o] if flip else o) for e, o in self.bends.items()}
        return Drawing(self.tree, {v: s(p) for v, p in self.pos.items()}, bends)

    def port_map(self) -> dict[int, dict[str, int]]:
        """node -> {port: neighbour}; later edges overwrite on clashes."""
        out: dict[int, dict[str, int]] = {v: {} for v in self.pos}
        for u, v in self.tree.edges():
            pu, pv = self.ports(u, v)
            out[u][pu] = v
            out[v][pv] = u
        return out

    def cyclic_orders(self) -> OrderedTree:
        """The counterclockwise neighbour orders realised by this drawing."""
        pm = self.port_map()
        return OrderedTree(
            self.tree.root,
            {v: tuple(pm[v][p] for p in PORTS_CCW if p in pm[v]) for v in pm},
        )


# --------------------------------------------------------------------------
# Validation
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    kind: str  # Crossing | Overlap | VertexStabbed | PortClash | OrderViolation
    witness: tuple


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


def _port_clashes(d: Drawing) -> list[Violation]:
    used: dict[tuple[int, str], tuple[int, int]] = {}
    out = []
    for u, v in d.tree.edges():
        for node, port in zip((u, v), d.ports(u, v)):
            if (node, port) in used:
                out.append(Violation("PortClash", (node, port, used[(node, port)], (u, v))))
            else:
                used[(node, port)] = (u, v)
    return out


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    if a.x == b.x == p.x:
        return min(a.y, b.y) <= p.y <= max(a.y, b.y)
    if a.y == b.y == p.y:
        return min(a.x, b.x) <= p.x <= max(a.x, b.x)
    return False


def _segment_meet(a1: Point, a2: Point, b1: Point, b2: Point):
    """Intersection of two closed axis-parallel segments: None, a Point, or a
    pair of Points (collinear overlap of positive length)."""
    ah = a1.y == a2.y
    bh = b1.y == b2.y
    if ah == bh:
        if ah:
            if a1.y != b1.y:
                return None
            lo = max(min(a1.x, a2.x), min(b1.x, b2.x))
            hi = min(max(a1.x, a2.x), max(b1.x, b2.x))
            if lo > hi:
                return None
            return Point(lo, a1.y) if lo == hi else (Point(lo, a1.y), Point(hi, a1.y))
        if a1.x != b1.x:
            return None
        lo = max(min(a1.y, a2.y), min(b1.y, b2.y))
        hi = min(max(a1.y, a2.y), max(b1.y, b2.y))
        if lo > hi:
            return None
        return Point(a1.x, lo) if lo == hi else (Point(a1.x, lo), Point(a1.x, hi))
    if not ah:
        a1, a2, b1, b2 = b1, b2, a1, a2
    # a horizontal, b vertical
    x, y = b1.x, a1.y
    if min(a1.x, a2.x) <= x <= max(a1.x, a2.x) and min(b1.y, b2.y) <= y <= max(b1.y, b2.y):
        return Point(x, y)
    return None


def validate_brute(d: Drawing, ordered: OrderedTree | None = None) -> ValidationReport:
    """All-pairs segment check; the reference implementation."""
    violations = _port_clashes(d)
    segs = d.segments()
    for (e1, a1, a2), (e2, b1, b2) in combinations(segs, 2):
        if e1 == e2:
            continue
        meet = _segment_meet(a1, a2, b1, b2)
        if meet is None:
            continue
        if isinstance(meet, tuple) and not isinstance(meet, Point):
            violations.append(Violation("Overlap", (e1, e2, meet)))
            continue
        shared = set(e1) & set(e2)
        if not any(d.pos[w] == meet for w in shared):
            violations.append(Violation("Crossing", (e1, e2, meet)))
    for e, a, b in segs:
        for w, p in d.pos.items():
            if w not in e and _on_segment(p, a, b):
                violations.append(Violation("VertexStabbed", (e, w, p)))
    if ordered is not None:
        violations.extend(_order_violations(d, ordered))
    return ValidationReport(violations)


def _ranks(values: Iterable[Scalar]) -> dict:
    return {v: i for i, v in enumerate(sorted(set(values)))}


def validate_fast(d: Drawing, ordered: OrderedTree | None = None) -> ValidationReport:
    """Vectorised check, exact under general orthogonal position.

    Every horizontal segment lies on the horizontal line through one of its own
    endpoints, so collinear overlaps are port clashes, no segment can pass
    through a foreign node, and a horizontal/vertical crossing is legal only
    when both lines are anchored at the same node.  Drawings whose nodes are
    not in general position fall back to :func:`validate_brute`.
    """
    xs = [p.x for p in d.pos.values()]
    ys = [p.y for p in d.pos.values()]
    if len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
        return validate_brute(d, ordered)
    violations = _port_clashes(d)
    xr, yr = _ranks(xs), _ranks(ys)
    node_at_x = {xr[p.x]: v for v, p in d.pos.items()}
    node_at_y = {yr[p.y]: v for v, p in d.pos.items()}
    H, V = [], []  # (line, lo, hi, edge index, anchor node)
    edges = d.tree.edges()
    for i, (u, v) in enumerate(edges):
        pu, pv = d.pos[u], d.pos[v]
        if d.bends[(u, v)] == "HV":
            h_y, h_x = yr[pu.y], sorted((xr[pu.x], xr[pv.x]))
            v_x, v_y = xr[pv.x], sorted((yr[pu.y], yr[pv.y]))
        else:
            h_y, h_x = yr[pv.y], sorted((xr[pu.x], xr[pv.x]))
            v_x, v_y = xr[pu.x], sorted((yr[pu.y], yr[pv.y]))
        H.append((h_y, h_x[0], h_x[1], i, node_at_y[h_y]))
        V.append((v_x, v_y[0], v_y[1], i, node_at_x[v_x]))
    if H:
        h = np.array(H, dtype=np.int64)
        vv = np.array(V, dtype=np.int64)
        hit = (
            (vv[None, :, 0] >= h[:, None, 1])
            & (vv[None, :, 0] <= h[:, None, 2])
            & (h[:, None, 0] >= vv[None, :, 1])
            & (h[:, None, 0] <= vv[None, :, 2])
            & (h[:, None, 3] != vv[None, :, 3])
            & (h[:, None, 4] != vv[None, :, 4])
        )
        for i, j in zip(*np.nonzero(hit)):
            e1, e2 = edges[h[i, 3]], edges[vv[j, 3]]
            where = (d.pos[node_at_x[int(vv[j, 0])]].x, d.pos[node_at_y[int(h[i, 0])]].y)
            violations.append(Violation("Crossing", (e1, e2, Point(*where))))
    if ordered is not None:
        violations.extend(_order_violations(d, ordered))
    return ValidationReport(violations)


def validate(d: Drawing, ordered: OrderedTree | None = None, method: str = "fast") -> ValidationReport:
    if method == "brute":
        return validate_brute(d, ordered)
    return validate_fast(d, ordered)


def same_cycle(a: tuple, b: tuple) -> bool:
    if len(a) != len(b) or set(a) != set(b):
        return False
    if not a:
        return True
    i = b.index(a[0])
    return tuple(b[i:] + b[:i]) == tuple(a)


def _order_violations(d: Drawing, ordered: OrderedTree) -> list[Violation]:
    # built from the raw port map so that drawings with port clashes still
    # yield a (non-matching) order instead of an inconsistent OrderedTree
    pm = d.port_map()
    realised = {v: tuple(pm[v][p] for p in PORTS_CCW if p in pm[v]) for v in pm}
    bad_direct, bad_mirror = [], []
    for v, want in ordered.cyclic.items():
        got = realised.get(v, ())
        if not same_cycle(tuple(got), tuple(want)):
            bad_direct.append(v)
        if not same_cycle(tuple(reversed(got)), tuple(want)):
            bad_mirror.append(v)
    if not bad_direct or not bad_mirror:
        return []
    worst = bad_direct if len(bad_direct) <= len(bad_mirror) else bad_mirror
    return [Violation("OrderViolation", (v, realised.get(v), ordered.cyclic[v])) for v in worst]


# --------------------------------------------------------------------------
# JSON
# --------------------------------------------------------------------------

def _num(v: Scalar):
    return v if isinstance(v, int) else str(v)


def _parse_num(v) -> Scalar:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise SchemaError(f"coordinate {v!r} must be an integer or 'p/q' string")
    try:
        return exact(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(str(exc)) from None


def drawing_to_json(d: Drawing, ordered: OrderedTree | None = None) -> dict:
    # the parenthesized form numbers nodes in preorder, so other labellings
    # are written as an ordered-tree document to keep node ids intact
    if ordered is None and d.tree.preorder() != tuple(range(d.tree.n)):
        ordered = OrderedTree.from_rooted(d.tree)
    return {
        "tree": ordered.to_json() if ordered is not None else serialize_tree(d.tree),
        "nodes": [{"id": v, "x": _num(d.pos[v].x), "y": _num(d.pos[v].y)} for v in sorted(d.pos)],
        "edges": [{"u": u, "v": v, "bend": d.bends[(u, v)]} for u, v in d.tree.edges()],
    }


def drawing_from_json(doc: dict) -> Drawing:
    try:
        tree_doc = doc["tree"]
        nodes = doc["nodes"]
        edges = doc["edges"]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"missing field {exc}") from None
    try:
        if isinstance(tree_doc, str):
            tree = parse_tree(tree_doc)
        elif isinstance(tree_doc, dict):
            tree = OrderedTree.from_json(tree_doc).to_rooted()
        else:
            raise SchemaError("tree must be a parenthesized string or an ordered-tree object")
    except ValueError as exc:
        raise SchemaError(f"bad tree: {exc}") from None
    pos = {}
    for nd in nodes:
        if not isinstance(nd, dict) or not {"id", "x", "y"} <= nd.keys():
            raise SchemaError(f"bad node record {nd!r}")
        pos[int(nd["id"])] = Point(_parse_num(nd["x"]), _parse_num(nd["y"]))
    bends = {}
    tree_edges = set(tree.edges())
    for ed in edges:
        if not isinstance(ed, dict) or not {"u", "v", "bend"} <= ed.keys():
            raise SchemaError(f"bad edge record {ed!r}")
        if ed["bend"] not in ORIENTATIONS:
            raise SchemaError(f"bend must be HV or VH, got {ed['bend']!r}")
        key = (int(ed["u"]), int(ed["v"]))
        if key not in tree_edges:
            raise SchemaError(f"edge {key} is not a parent->child edge of the tree")
        bends[key] = ed["bend"]
    if set(bends) != tree_edges:
        raise SchemaError("edge list does not cover the tree")
    try:
        return Drawing(tree, pos, bends)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def dumps_drawing(d: Drawing, ordered: OrderedTree | None = None) -> str:
    return json.dumps(drawing_to_json(d, ordered), indent=1)


def loads_drawing(text: str) -> Drawing:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return drawing_from_json(doc)


# --------------------------------------------------------------------------
# SVG
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SvgStyle:
    unit: int = 20
    margin: int = 20
    node_radius: float = 4.0
    stroke: str = "#222"
    stroke_width: float = 1.5
    node_fill: str = "#c33"
    points: tuple = ()  # unused candidate points drawn faintly


def render_svg(d: Drawing, style: SvgStyle = SvgStyle()) -> str:
    """Render on the rank-normalised grid (y axis pointing up)."""
    coords = list(d.pos.values()) + [Point(exact(p[0]), exact(p[1])) for p in style.points]
    xr = _ranks(p.x for p in coords)
    yr = _ranks(p.y for p in coords)
    nx, ny = max(len(xr), 1), max(len(yr), 1)
    u, m = style.unit, style.margin
    width = (nx - 1) * u + 2 * m
    height = (ny - 1) * u + 2 * m

    def sx(x):
        return m + xr[x] * u

    def sy(y):
        return m + (ny - 1 - yr[y]) * u

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
    ]
    for p in style.points:
        q = Point(exact(p[0]), exact(p[1]))
        if q not in set(d.pos.values()):
            out.append(f'<circle cx="{sx(q.x)}" cy="{sy(q.y)}" r="{style.node_radius / 2}" fill="#bbb"/>')
    for u_, v_ in d.tree.edges():
        a, b, c = d.pos[u_], d.bend(u_, v_), d.pos[v_]
        pts = " ".join(f"{sx(p.x)},{sy(p.y)}" for p in (a, b, c))
        out.append(
            f'<polyline points="{pts}" fill="none" stroke="{style.stroke}" '
            f'stroke-width="{style.stroke_width}"/>'
        )
    for v in sorted(d.pos):
        p = d.pos[v]
        out.append(
            f'<circle cx="{sx(p.x)}" cy="{sy(p.y)}" r="{style.node_radius}" fill="{style.node_fill}">'
            f"<title>{v}</title></circle>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
