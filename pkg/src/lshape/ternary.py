"""Drawings of ternary trees (max degree 4).

Two constructions compete at every node.  The first splits the region under
the entry ray into a left, right and bottom part and draws the two light
subtrees beside the node and the heavy one below.  The second follows the
heavy chain ``r_0, r_1, ...`` down to the first level ``k`` where it shrinks,
packs every light subtree of levels ``1..k-1`` into horizontal slabs on one
side of the entry ray, and then finishes the last level in one of four cases
depending on how many points were left over on the other side.

Budgets count points: a leaf needs 1 and an empty subtree 0.
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
    inner_apex,
    leaf_rooted,
    need_points,
    restore_tree,
    sub_frame,
    topmost,
)
from .geometry import IDENTITY, REFLECT_X, PointSet, split_by_half_grid
from .trees import DegreeExceeded, LevelChain, RootedTree, find_level_k, padded_children

CASE_TAGS = ("F4-1", "A", "B1", "B2", "B3")


@dataclass
class TernaryBudget:
    """Per-node point budgets and the construction chosen for each node."""

    F: list[int]
    tag: list[str]
    k: list[int | None]
    Y: list[int | None]
    swap: list[bool]
    options: list[dict] = field(default_factory=list)

    def f(self, v: int | None) -> int:
        return 0 if v is None else self.F[v]


def _f42(N, chain: LevelChain) -> tuple[int, int, bool]:
    """(bound, Y, swap) of the heavy-chain construction."""
    k = chain.k
    Y = N(chain.a[1]) + N(chain.b[1]) + 1
    for i in range(2, k):
        Y += 2 * N(chain.a[i]) + 2 * N(chain.b[i]) + 1
    nr = N(chain.r[k])
    best = None
    for swap in (False, True):
        na, nb = N(chain.a[k]), N(chain.b[k])
        if swap:
            na, nb = nb, na
        cands = []
        if nb >= 1:
            cands.append(Y + min(nb - 1, Y - 1) + 2 * na + 2 * nb + 1 + nr)
        if Y - 1 >= nb:
            cands.append(2 * Y + 3 * na + nb + nr)
        val = max(cands)
        if best is None or val < best[0]:
            best = (val, Y, swap)
    return best


def compute_budgets_ternary(t: RootedTree) -> TernaryBudget:
    """Point budgets for every node of a tree whose nodes have at most 3 children."""
    n = t.n
    F = [0] * n
    tag = ["leaf"] * n
    ks: list[int | None] = [None] * n
    Ys: list[int | None] = [None] * n
    swaps = [False] * n
    options: list[dict] = [{} for _ in range(n)]

    def N(v):
        return 0 if v is None else F[v]

    for v in reversed(t.preorder()):
        if len(t.children[v]) > 3:
            raise DegreeExceeded(v, t.degree(v), 4)
        if not t.children[v]:
            F[v] = 1
            continue
        a1, b1, r1 = padded_children(t, v, 3)
        f41 = 2 * N(a1) + 2 * N(b1) + N(r1) + 1
        f42, Y, swap = _f42(N, find_level_k(t, v))
        options[v] = {"F4-1": f41, "F4-2": f42}
        if f42 <= f41:
            F[v], tag[v] = f42, "F4-2"
            ks[v], Ys[v], swaps[v] = find_level_k(t, v).k, Y, swap
        else:
            F[v], tag[v] = f41, "F4-1"
    return TernaryBudget(F, tag, ks, Ys, swaps, options)


def ternary_points_needed(t: RootedTree) -> int:
    """Points :func:`embed_ternary` needs for ``t``."""
    work = leaf_rooted(t.with_cap(4), 3)
    return compute_budgets_ternary(work).F[work.root]


class _TernaryDrawer:
    def __init__(self, t: RootedTree, bud: TernaryBudget) -> None:
        self.t = t
        self.bud = bud
        self.b = Builder(t)

    def _child(self, v, P, anchor, fr, down):
        """Draw the subtree of ``v`` entered by the ray from ``anchor`` heading ``down``."""
        if v is None:
            return
        child_fr, to_child = sub_frame(fr, down)
        pts = [to_child(p) for p in P]
        self.draw_F(v, pts, to_child(anchor).x, self.t.parent[v], child_fr)

    def _pair(self, v, a, b, region, side, par, fr):
        """Place ``v`` in ``region`` (one side of the entry ray) with its light
        children ``a`` beside it and ``b`` above it.  Returns v's point."""
        na = self.bud.f(a)
        by_x = sorted(region, key=lambda p: p.x, reverse=(side == "right"))
        far, near = by_x[:na], by_x[na:]
        r = bottommost(near)
        self.b.place(v, r, fr)
        self.b.edge(par, v, "VH", fr)
        self._child(a, far, r, fr, side)
        self._child(b, [p for p in near if p != r], r, fr, "up")
        return r

    def draw_F(self, v, P, apex, par, fr):
        t, bud = self.t, self.bud
        need_points(P, bud.F[v], f"F-config of node {v}")
        if not t.children[v]:
            self.b.place(v, topmost(P), fr)
            self.b.edge(par, v, "VH", fr)
            return
        if bud.tag[v] == "F4-1":
            self._f41(v, P, apex, par, fr)
        else:
            self._f42(v, P, apex, par, fr)

    def _sweep(self, P, apex, need, fr):
        sp = split_by_half_grid(P, apex, need)
        if sp.side == "right":
            fr = fr @ REFLECT_X
            P = [REFLECT_X(p) for p in P]
            apex = -apex
            sp = split_by_half_grid(P, apex, need, side="left")
        return sp, P, apex, fr

    def _f41(self, v, P, apex, par, fr):
        a1, b1, r1 = padded_children(self.t, v, 3)
        need = self.bud.f(a1) + self.bud.f(b1) + 1
        sp, P, apex, fr = self._sweep(P, apex, need, fr)
        self.b.tags["F4-1"] += 1
        r = self._pair(v, a1, b1, sp.q_left, "left", par, fr)
        self._child(r1, sp.q_below, r, fr, "down")

    def _f42(self, v, P, apex, par, fr):
        t, bud = self.t, self.bud
        f = bud.f
        chain = find_level_k(t, v)
        k = chain.k
        sp, P, apex, fr = self._sweep(P, apex, bud.Y[v], fr)
        # Level 1 takes the top points of Q_L; the entry ray is its right edge.
        ql = sorted(sp.q_left, key=lambda p: p.y, reverse=True)
        k1 = f(chain.a[1]) + f(chain.b[1]) + 1
        pos = {0: self._pair(v, chain.a[1], chain.b[1], ql[:k1], "left", par, fr)}
        rest = ql[k1:]
        for i in range(2, k):
            ray = pos[i - 2].x
            need = f(chain.a[i]) + f(chain.b[i]) + 1
            try:
                lv = split_by_half_grid(rest, ray, need)
            except InsufficientPoints as exc:
                raise InternalBudgetViolation(f"level {i} of node {v}: {exc}") from None
            region = lv.q_left if lv.side == "left" else lv.q_right
            pos[i - 1] = self._pair(chain.r[i - 1], chain.a[i], chain.b[i], region, lv.side, chain.r[i - 2], fr)
            rest = lv.q_below
        self._finish(v, chain, sp, pos[k - 2], apex, fr)

    def _finish(self, v, chain, sp, anchor, apex, fr):
        """Draw r_{k-1} and its three subtrees below the sweep line."""
        bud, f = self.bud, self.bud.f
        k = chain.k
        node, par = chain.r[k - 1], chain.r[k - 2]
        a, b = chain.a[k], chain.b[k]
        if bud.swap[v]:
            a, b = b, a
        na, nb = f(a), f(b)
        below = sorted(sp.q_below, key=lambda p: p.y)
        nr = f(chain.r[k])
        qb, E = below[:nr], below[nr:]
        Z = len(sp.q_right)
        ray = anchor.x
        if Z < nb:
            self.b.tags["A"] += 1
            try:
                es = split_by_half_grid(E, ray, na + nb + 1)
            except InsufficientPoints as exc:
                raise InternalBudgetViolation(f"case A of node {v}: {exc}") from None
            region = es.q_left if es.side == "left" else es.q_right
            r = self._pair(node, a, b, region, es.side, par, fr)
        else:
            e_l = [p for p in E if p.x < ray]
            e_m = [p for p in E if ray < p.x < apex]
            e_r = [p for p in E if p.x > apex]
            if len(e_l) >= na + nb + 1:
                self.b.tags["B1"] += 1
                top = sorted(e_l, key=lambda p: p.y, reverse=True)[: na + nb + 1]
                r = self._pair(node, a, b, top, "left", par, fr)
            elif len(e_m) >= na + 1:
                self.b.tags["B2"] += 1
                r = bottommost(e_m)
                self.b.place(node, r, fr)
                self.b.edge(par, node, "VH", fr)
                self._child(a, [p for p in e_m if p != r], r, fr, "up")
                self._child(b, sp.q_right + e_r, r, fr, "right")
            elif len(e_r) >= na + 1:
                self.b.tags["B3"] += 1
                r = min(e_r, key=lambda p: p.x)
                self.b.place(node, r, fr)
                self.b.edge(par, node, "VH", fr)
                self._child(a, [p for p in e_r if p != r], r, fr, "right")
                self._child(b, sp.q_right, r, fr, "up")
            else:
                raise InternalBudgetViolation(
                    f"node {v}: |E_L|={len(e_l)}, |E_M|={len(e_m)}, |E_R|={len(e_r)} all too small"
                )
        self._child(chain.r[k], qb, r, fr, "down")


@dataclass
class TernaryResult:
    drawing: Drawing
    tags: dict[str, int]
    need: int


def embed_ternary_ex(t: RootedTree, ps: Sequence) -> TernaryResult:
    pts = list(ps.points if isinstance(ps, PointSet) else PointSet(ps).points)
    work = leaf_rooted(t.with_cap(4), 3)
    bud = compute_budgets_ternary(work)
    need = bud.F[work.root]
    if len(pts) < need:
        raise InsufficientPoints(len(pts), need)
    d = _TernaryDrawer(work, bud)
    d.draw_F(work.root, pts, inner_apex(pts), None, IDENTITY)
    return TernaryResult(restore_tree(t, d.b.drawing()), dict(d.b.tags), need)


def embed_ternary(t: RootedTree, ps: Sequence) -> Drawing:
    """Planar L-shaped drawing of a max-degree-4 tree on a subset of ``ps``."""
    return embed_ternary_ex(t, ps).drawing
