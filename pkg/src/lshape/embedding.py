"""Machinery shared by the recursive embedders.

Every construction is written once in a canonical frame: the parent sits above
the region and its reserved ray points down.  A :class:`Symmetry` maps canonical
coordinates back to the caller's frame, and the :class:`Builder` records the
final placement and bend orientations in input coordinates.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Sequence

from .drawing import Drawing
from .geometry import IDENTITY, Insufficient, Point, Symmetry, midpoint, symmetry_mapping
from .trees import RootedTree, canonical_children

InsufficientPoints = Insufficient


class InternalBudgetViolation(RuntimeError):
    """A construction step found fewer points than its budget guarantees."""


class NotAChain(ValueError):
    pass


_FLIP = {"HV": "VH", "VH": "HV"}


class Builder:
    """Collects node positions and edge orientations in input coordinates."""

    def __init__(self, tree: RootedTree) -> None:
        self.tree = tree
        self.pos: dict[int, Point] = {}
        self.bends: dict[tuple[int, int], str] = {}
        self.tags: Counter = Counter()

    def place(self, v: int, p: Point, frame: Symmetry) -> None:
        if v in self.pos:
            raise InternalBudgetViolation(f"node {v} placed twice")
        self.pos[v] = frame(p)

    def edge(self, u: int | None, v: int, orientation: str, frame: Symmetry) -> None:
        if u is None:
            return
        self.bends[(u, v)] = _FLIP[orientation] if frame.swaps_axes else orientation

    def drawing(self) -> Drawing:
        return Drawing(self.tree, dict(self.pos), dict(self.bends))


def sub_frame(frame: Symmetry, down: str, right: str | None = None) -> tuple[Symmetry, Symmetry]:
    """Frame for a child configuration whose canonical "down" is ``down`` (and
    canonical "right" is ``right``) in the current frame.

    Returns ``(child_frame, to_child)`` where ``to_child`` maps current local
    coordinates into the child's canonical coordinates.
    """
    s = symmetry_mapping("down", down, keep=("right", right) if right else None)
    return frame @ s, s.inverse()


def need_points(pts: Sequence[Point], need: int, what: str) -> None:
    if len(pts) < need:
        raise InternalBudgetViolation(f"{what}: have {len(pts)} points, budget promised {need}")


def bottommost(pts: Iterable[Point]) -> Point:
    return min(pts, key=lambda p: p.y)


def topmost(pts: Iterable[Point]) -> Point:
    return max(pts, key=lambda p: p.y)


def inner_apex(pts: Sequence[Point]):
    """An x strictly inside the x-range of ``pts`` that avoids every point."""
    xs = sorted(p.x for p in pts)
    if len(xs) == 1:
        return xs[0] - 1
    mid = len(xs) // 2
    return midpoint(xs[mid - 1], xs[mid])


def leaf_rooted(t: RootedTree, max_root_children: int) -> RootedTree:
    """Reroot at the smallest leaf when the root has too many children."""
    if len(t.children[t.root]) <= max_root_children:
        return t
    leaf = min(v for v in range(t.n) if v != t.root and not t.children[v])
    return t.rerooted(leaf)


def restore_tree(original: RootedTree, d: Drawing) -> Drawing:
    """Re-express a drawing of a rerooted copy in terms of ``original``."""
    if d.tree == original:
        return d
    bend_pts = {e: d.bend(*e) for e in d.tree.edges()}
    return Drawing.from_bend_points(original, d.pos, bend_pts)


# --------------------------------------------------------------------------
# Diagonal point sets
# --------------------------------------------------------------------------

def check_chain(chain: Sequence[Point]) -> None:
    if len(chain) <= 2:
        if len(chain) == 2 and (chain[0].x == chain[1].x or chain[0].y == chain[1].y):
            raise NotAChain("points share a coordinate")
        return
    sx = chain[1].x > chain[0].x
    sy = chain[1].y > chain[0].y
    for a, b in zip(chain, chain[1:]):
        if (b.x > a.x) != sx or (b.y > a.y) != sy or a.x == b.x or a.y == b.y:
            raise NotAChain("points do not form a strictly monotone chain")


def _outward(pts: Sequence[Point]) -> dict[str, str]:
    """Port directions at ``pts[0]`` that face away from the rest of the chain."""
    if len(pts) < 2:
        return {"h": "right", "v": "up"}
    return {
        "h": "right" if pts[1].x < pts[0].x else "left",
        "v": "up" if pts[1].y < pts[0].y else "down",
    }


def diagonal_layout(
    b: Builder,
    t: RootedTree,
    v: int,
    pts: Sequence[Point],
    parent: int | None,
    parent_kind: str | None,
    frame: Symmetry = IDENTITY,
) -> None:
    """Draw the subtree of ``v`` on the chain ``pts`` (ordered from the end that
    faces the parent).  The parent edge arrives through the outward port of kind
    ``parent_kind`` ("h" or "v"), which stays unobstructed.

    Near children occupy the chain part between ``v`` and the parent-side end and
    use the remaining outward ports; far children occupy consecutive intervals
    beyond ``v`` and use the inward ports.  Every edge wraps around the bounding
    box of the interval nearer to ``v``, so no crossings arise.
    """
    work = [(v, list(pts), parent, parent_kind)]
    while work:
        v, pts, parent, parent_kind = work.pop()
        kids = canonical_children(t, v)
        if len(pts) != t.size[v]:
            raise InternalBudgetViolation("diagonal interval size mismatch")
        near_kinds = [k for k in ("h", "v") if k != parent_kind]
        n_far = min(len(kids), 2)
        near, far = kids[: len(kids) - n_far], kids[len(kids) - n_far:]
        if len(near) > len(near_kinds):
            raise InternalBudgetViolation(f"node {v} has too many children for a chain")
        m = sum(t.size[c] for c in near)
        me = pts[m]
        b.place(v, me, frame)
        if parent is not None:
            b.edge(parent, v, "VH" if parent_kind == "h" else "HV", frame)
        near_pts = pts[:m][::-1]
        off = 0
        for c, kind in zip(near, near_kinds):
            seg = near_pts[off: off + t.size[c]]
            off += t.size[c]
            work.append((c, seg, v, "v" if kind == "h" else "h"))
        off = m + 1
        for c, kind in zip(far, ("h", "v")):
            seg = pts[off: off + t.size[c]]
            off += t.size[c]
            work.append((c, seg, v, "v" if kind == "h" else "h"))


def _kind_of(direction: str) -> str:
    return "h" if direction in ("left", "right") else "v"


def embed_on_diagonal(
    t: RootedTree,
    chain: Sequence[Sequence],
    free_port: str | None = None,
    need_upward_visibility: bool = False,
) -> Drawing:
    """Draw ``t`` (max degree 4) on the first ``t.n`` points of a monotone chain.

    ``free_port`` names a direction ("up", "down", "left", "right") whose port
    at the root must stay unused with an unobstructed ray; the chain is reversed
    if needed so that this direction faces away from it.
    ``need_upward_visibility`` is shorthand for ``free_port="up"``.
    """
    pts = [Point(p[0], p[1]) for p in chain]
    check_chain(pts)
    if len(pts) < t.n:
        raise InsufficientPoints(len(pts), t.n)
    if need_upward_visibility:
        free_port = free_port or "up"
    if free_port is not None and len(pts) >= 2:
        if _outward(pts)[_kind_of(free_port)] != free_port:
            pts = pts[::-1]
    pts = pts[: t.n]
    root_kids = len(t.children[t.root])
    kind = _kind_of(free_port) if free_port else None
    if kind is not None and root_kids > 3:
        raise ValueError("a root with 4 children leaves no port free")
    b = Builder(t)
    diagonal_layout(b, t, t.root, pts, None, kind)
    return b.drawing()
