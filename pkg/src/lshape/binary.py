"""Drawings of binary trees (max degree 3) with the f/g-configuration recursions.

Budgets count the points a subtree needs: ``F`` in an f-configuration (one
vertical entry ray), ``G`` in a g-configuration (vertical ray plus a horizontal
ray along the top), and ``Gh`` in a g-configuration whose vertical ray is
blocked.  Empty subtrees need 0 points and a leaf needs 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .drawing import Drawing
from .embedding import (
    Builder,
    InsufficientPoints,
    InternalBudgetViolation,
    bottommost,
    diagonal_layout,
    embed_on_diagonal,
    inner_apex,
    leaf_rooted,
    need_points,
    restore_tree,
    sub_frame,
    topmost,
)
from .geometry import IDENTITY, REFLECT_X, Point, PointSet, Symmetry, split_by_half_grid
from .trees import DegreeExceeded, RootedTree, padded_children

__all__ = [
    "Budget",
    "compute_budgets",
    "embed_binary",
    "embed_on_diagonal",
    "draw_in_config",
    "Configuration",
    "binary_points_needed",
    "F_TAGS",
    "COVERAGE_TAGS",
]

F_TAGS = ("f-2", "f-1", "f-1'", "f-1'+f-1")
COVERAGE_TAGS = ("f-1", "f-1'", "g", "f-2 lucky", "f-2 unlucky", "f-2 diagonal")


@dataclass
class Budget:
    F: list[int]
    G: list[int]
    Gh: list[int]
    tag_F: list[str | None]
    tag_G: list[str | None]
    options: list[dict] = field(default_factory=list)

    def f(self, v: int | None) -> int:
        return 0 if v is None else self.F[v]

    def g(self, v: int | None) -> int:
        return 0 if v is None else self.G[v]

    def gh(self, v: int | None) -> int:
        return 0 if v is None else self.Gh[v]


def recursion_values(n: int, F1: int, G1: int, F2: int, G2: int,
                     F21: int, Gh21: int, F22: int, G22: int, has_t2: bool) -> dict[str, int]:
    """Values of every f-recursion for one node, keyed by tag."""
    out = {
        "f-1": 2 * F1 + G2 + 1,
        "f-1'": 2 * G1 + F2 + 1,
    }
    if has_t2:
        lucky = 1 + G1 + min(Gh21 - 1, G1) + F2
        unlucky = 2 * G1 + F22 + n
        out["f-2"] = max(lucky, unlucky)
        out["f-1'+f-1"] = 2 * G1 + 2 * F21 + G22 + 2
    return out


def compute_budgets(t: RootedTree) -> Budget:
    n = t.n
    F = [0] * n
    G = [0] * n
    Gh = [0] * n
    tag_F: list[str | None] = [None] * n
    tag_G: list[str | None] = [None] * n
    options: list[dict] = [{} for _ in range(n)]
    for v in reversed(t.preorder()):
        if len(t.children[v]) > 2:
            raise DegreeExceeded(v, t.degree(v), 3)
        if not t.children[v]:
            F[v] = G[v] = Gh[v] = 1
            continue
        c1, c2 = padded_children(t, v, 2)
        F1, G1 = (0, 0) if c1 is None else (F[c1], G[c1])
        F2, G2 = F[c2], G[c2]
        c21, c22 = padded_children(t, c2, 2)
        F21 = 0 if c21 is None else F[c21]
        Gh21 = 0 if c21 is None else Gh[c21]
        F22, G22 = (0, 0) if c22 is None else (F[c22], G[c22])
        opts = recursion_values(t.size[v], F1, G1, F2, G2, F21, Gh21, F22, G22, True)
        best = min(F_TAGS, key=lambda k: (opts.get(k, 1 << 60), F_TAGS.index(k)))
        F[v], tag_F[v] = opts[best], best
        Gh[v] = 1 + F1 + G2
        if Gh[v] < F[v]:
            G[v], tag_G[v] = Gh[v], "g"
        else:
            G[v], tag_G[v] = F[v], "F"
        options[v] = opts
        assert G[v] <= F[v]
    return Budget(F, G, Gh, tag_F, tag_G, options)


def binary_points_needed(t: RootedTree) -> int:
    """Points :func:`embed_binary` needs for ``t``."""
    work = leaf_rooted(t.with_cap(3), 2)
    return compute_budgets(work).F[work.root]


@dataclass(frozen=True)
class Configuration:
    """An f- or g-subproblem in canonical orientation.

    ``frame`` maps canonical coordinates to input coordinates.  The parent sits
    above the region at ``x = apex_x``; a g-configuration additionally owns a
    horizontal ray to the right along the region's top.  ``vertical`` is False
    when the parent's downward ray is blocked.
    """

    kind: str  # "F" or "G"
    apex_x: object
    frame: Symmetry = IDENTITY
    vertical: bool = True


class _BinaryDrawer:
    def __init__(self, t: RootedTree, budget: Budget) -> None:
        self.t = t
        self.bud = budget
        self.b = Builder(t)

    # Entry edges.  In canonical coordinates an f-entry runs down the ray and
    # then horizontally (VH); a g-entry along the top ray then down (HV).

    def _leaf_F(self, v, P, apex, par, fr):
        r = topmost(P)
        self.b.place(v, r, fr)
        self.b.edge(par, v, "VH", fr)

    def _child(self, kind, v, P, anchor, fr, down, right=None, vertical=True):
        """Recurse into a child configuration hanging off ``anchor``."""
        if v is None:
            return
        child_fr, to_child = sub_frame(fr, down, right)
        pts = [to_child(p) for p in P]
        apex = to_child(anchor).x
        par = self.t.parent[v]
        if kind == "F":
            self.draw_F(v, pts, apex, par, child_fr)
        else:
            self.draw_G(v, pts, apex, par, child_fr, vertical)

    def draw_F(self, v, P, apex, par, fr, tag=None):
        t, bud = self.t, self.bud
        need_points(P, bud.F[v], f"F-config of node {v}")
        if not t.children[v]:
            self._leaf_F(v, P, apex, par, fr)
            return
        tag = tag or bud.tag_F[v]
        if tag == "f-1'+f-1":
            tag = "f-1'"
        c1, c2 = padded_children(t, v, 2)
        if tag in ("f-1", "f-1'"):
            self._f1(v, c1, c2, P, apex, par, fr, prime=(tag == "f-1'"))
        elif tag == "f-2":
            self._f2(v, c1, c2, P, apex, par, fr)
        else:
            raise InternalBudgetViolation(f"unknown tag {tag}")

    def _sweep(self, P, apex, need, fr):
        """Half-grid sweep; mirror so the satisfied side is the left one."""
        sp = split_by_half_grid(P, apex, need)
        if sp.side == "right":
            fr = fr @ REFLECT_X
            m = REFLECT_X
            P = [m(p) for p in P]
            apex = -apex
            sp = split_by_half_grid(P, apex, need, side="left")
        return sp, P, apex, fr

    def _f1(self, v, c1, c2, P, apex, par, fr, prime):
        bud = self.bud
        K = 1 + (bud.g(c1) if prime else bud.f(c1))
        sp, P, apex, fr = self._sweep(P, apex, K, fr)
        r0 = bottommost(sp.q_left)
        self.b.place(v, r0, fr)
        self.b.edge(par, v, "VH", fr)
        self.b.tags["f-1'" if prime else "f-1"] += 1
        upper = [p for p in sp.q_left if p != r0]
        # T1 above r0: ray up (and, for a g-config, the ray to the left).
        self._child("G" if prime else "F", c1, upper, r0, fr, "up", "left")
        # T2 below the sweep line via the ray down from r0.
        if prime:
            self._child("F", c2, sp.q_below, r0, fr, "down", "right")
        else:
            self._child("G", c2, sp.q_below, r0, fr, "down", "left")

    def _f2(self, v, c1, c2, P, apex, par, fr):
        t, bud = self.t, self.bud
        K = 1 + bud.g(c1)
        sp, P, apex, fr = self._sweep(P, apex, K, fr)
        c21, c22 = padded_children(t, c2, 2)
        p1 = bottommost(sp.q_left)
        if len(sp.q_right) < bud.gh(c21):
            self.b.tags["f-2 lucky"] += 1
            self.b.place(v, p1, fr)
            self.b.edge(par, v, "VH", fr)
            self._child("G", c1, [p for p in sp.q_left if p != p1], p1, fr, "up", "left")
            self._child("F", c2, sp.q_below, p1, fr, "down", "right")
            return
        n = t.size[v]
        below = sorted(sp.q_below, key=lambda p: p.y, reverse=True)
        chain = [p1]
        i = 0
        while len(chain) < n and i < len(below) and below[i].x < chain[-1].x:
            chain.append(below[i])
            i += 1
        if len(chain) == n:
            self.b.tags["f-2 diagonal"] += 1
            # The chain descends to the left from p1, so the root's right port
            # faces the parent's ray.
            start = len(self.b.pos)
            diagonal_layout(self.b, t, v, chain, par, "h", fr)
            assert len(self.b.pos) == start + n
            return
        if i >= len(below):
            raise InternalBudgetViolation(f"f-2 chain of node {v} ran out of points")
        self.b.tags["f-2 unlucky"] += 1
        r0, r1 = chain[-1], below[i]
        self.b.place(v, r0, fr)
        self.b.edge(par, v, "VH", fr)
        self.b.place(c2, r1, fr)
        self.b.edge(v, c2, "VH", fr)
        upper = [p for p in P if p.x < apex and p.y > r0.y]
        self._child("G", c1, upper, r0, fr, "up", "left")
        self._child("F", c22, [p for p in P if p.y < r1.y], r1, fr, "down", "right")
        self._child("G", c21, sp.q_right, r1, fr, "up", "right", vertical=r1.x > apex)

    def draw_G(self, v, P, apex, par, fr, vertical=True):
        t, bud = self.t, self.bud
        use_g = bud.tag_G[v] == "g" or not vertical
        need_points(P, bud.Gh[v] if use_g else bud.G[v], f"G-config of node {v}")
        if not t.children[v]:
            if vertical:
                self._leaf_F(v, P, apex, par, fr)
            else:
                r = max((p for p in P if p.x > apex), key=lambda p: p.y)
                self.b.place(v, r, fr)
                self.b.edge(par, v, "HV", fr)
            return
        if not use_g:
            self.draw_F(v, P, apex, par, fr)
            return
        self.b.tags["g"] += 1
        c1, c2 = padded_children(t, v, 2)
        K = 1 + bud.f(c1)
        ordered = sorted(P, key=lambda p: p.y, reverse=True)
        QA, QB = ordered[:K], ordered[K:]
        q = max(QA, key=lambda p: p.x)
        if q.x > apex:
            self.b.place(v, q, fr)
            self.b.edge(par, v, "HV", fr)
            self._child("F", c1, [p for p in QA if p != q], q, fr, "left", "down")
            self._child("G", c2, QB, q, fr, "down", "right")
        else:
            if not vertical:
                raise InternalBudgetViolation(f"g-draw of node {v} needs a point right of the apex")
            r0 = bottommost(QA)
            self.b.place(v, r0, fr)
            self.b.edge(par, v, "VH", fr)
            self._child("F", c1, [p for p in QA if p != r0], r0, fr, "up", "left")
            self._child("G", c2, QB, r0, fr, "down", "left")


def draw_in_config(
    t: RootedTree, points: Sequence[Point], cfg: Configuration, budget: Budget | None = None,
    v: int | None = None,
) -> tuple[dict[int, Point], dict[tuple[int, int], str], dict[str, int]]:
    """Draw the subtree of ``v`` (default: root) in configuration ``cfg``.

    ``points`` are in input coordinates.  Returns placement, bend orientations
    (the entry edge from ``v``'s parent included when it exists) and the
    construction tags used.
    """
    budget = budget or compute_budgets(t)
    v = t.root if v is None else v
    d = _BinaryDrawer(t, budget)
    to_local = cfg.frame.inverse()
    pts = [to_local(Point(*p)) for p in points]
    par = t.parent[v]
    if cfg.kind == "F":
        d.draw_F(v, pts, cfg.apex_x, par, cfg.frame)
    else:
        d.draw_G(v, pts, cfg.apex_x, par, cfg.frame, cfg.vertical)
    return d.b.pos, d.b.bends, dict(d.b.tags)


@dataclass
class BinaryResult:
    drawing: Drawing
    tags: dict[str, int]
    need: int


def embed_binary_ex(t: RootedTree, ps: Sequence) -> BinaryResult:
    pts = list(ps.points if isinstance(ps, PointSet) else PointSet(ps).points)
    work = leaf_rooted(t.with_cap(3), 2)
    bud = compute_budgets(work)
    need = bud.F[work.root]
    if len(pts) < need:
        raise InsufficientPoints(len(pts), need)
    d = _BinaryDrawer(work, bud)
    d.draw_F(work.root, pts, inner_apex(pts), None, IDENTITY)
    return BinaryResult(restore_tree(t, d.b.drawing()), dict(d.b.tags), need)


def embed_binary(t: RootedTree, ps: Sequence) -> Drawing:
    """Planar L-shaped drawing of a max-degree-3 tree on a subset of ``ps``."""
    return embed_binary_ex(t, ps).drawing
