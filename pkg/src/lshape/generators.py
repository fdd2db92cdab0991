"""Seeded point-set and tree generators, including the fixed fixtures."""

from __future__ import annotations

import random

from .geometry import PointSet
from .trees import (
    OrderedTree,
    RootedTree,
    build_top_view_caterpillar,
    c14_shape,
    path_tree,
    perfect_tree,
    random_tree,
)

POINT_STYLES = (
    "uniform", "diagonal", "anti-diagonal", "skewed", "clustered",
    "staircases", "fig2b", "fig2c", "p14",
)
TREE_SHAPES = ("random", "perfect", "caterpillar", "c14-shape", "path", "f2-heavy")


def _distinct_ys(xs, ys) -> list[tuple[int, int]]:
    seen: set[int] = set()
    out = []
    for x, y in zip(xs, ys):
        while y in seen:
            y += 1
        seen.add(y)
        out.append((x, y))
    return out


def _perm_points(perm) -> PointSet:
    return PointSet([(i, y) for i, y in enumerate(perm)])


def fig2b_permutation(n: int) -> list[int]:
    """2n values whose longest x-monotone straight-through path has n+1 points."""
    if n < 1:
        raise ValueError("n must be positive")
    return [0] + [v for i in range(1, n) for v in (2 * i, 2 * i - 1)] + [2 * n - 1]


def fig2c_permutation(n: int) -> list[int]:
    """Two interleaved ascending runs of n values each."""
    if n < 1:
        raise ValueError("n must be positive")
    return [v for i in range(n) for v in (i, n + i)]


def p14_points() -> PointSet:
    """Three descending staircases of 4, 6 and 4 points, each above and right of the last."""
    r1 = [(i, 5 - i) for i in range(1, 5)]
    r2 = [(i, 15 - i) for i in range(5, 11)]
    r3 = [(i, 25 - i) for i in range(11, 15)]
    return PointSet(r1 + r2 + r3)


def staircase_points(m: int, rng: random.Random, groups: int | None = None) -> PointSet:
    """Descending staircases stacked up and to the right."""
    groups = groups or max(1, min(m, rng.randint(2, 5)))
    cuts = sorted(rng.sample(range(1, m), groups - 1)) if m > groups else list(range(1, groups))
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [m])]
    pts, base = [], 0
    for s in sizes:
        pts += [(base + i, base + s - 1 - i) for i in range(s)]
        base += s
    return PointSet(pts)


def gen_points(style: str, n: int, seed: int = 0) -> PointSet:
    """Point set of the given style.  ``fig2b``/``fig2c`` return 2n points,
    ``p14`` ignores ``n``; every other style returns n points."""
    rng = random.Random(seed)
    if style == "uniform":
        xs, ys = rng.sample(range(10 * n), n), rng.sample(range(10 * n), n)
        return PointSet(list(zip(xs, ys)))
    if style == "diagonal":
        return PointSet([(i, i) for i in range(n)])
    if style == "anti-diagonal":
        return PointSet([(i, n - 1 - i) for i in range(n)])
    if style == "skewed":
        xs = rng.sample(range(10 * n), n)
        ys = [int((x / (10 * n)) ** 3 * 100 * n) + rng.randint(0, n) for x in xs]
        return PointSet(_distinct_ys(xs, ys))
    if style == "clustered":
        xs = rng.sample(range(10 * n), n)
        ys = [-x if rng.random() < 0.8 else x for x in xs]
        return PointSet(_distinct_ys(xs, ys))
    if style == "staircases":
        return staircase_points(n, rng)
    if style == "fig2b":
        return _perm_points(fig2b_permutation(n))
    if style == "fig2c":
        return _perm_points(fig2c_permutation(n))
    if style == "p14":
        return p14_points()
    raise ValueError(f"unknown point style {style!r}")


def graft(children: list[RootedTree]) -> RootedTree:
    """New root whose subtrees are ``children`` in order."""
    parent: list[int | None] = [None]
    for t in children:
        off = len(parent)
        parent += [0 if t.parent[v] is None else t.parent[v] + off for v in range(t.n)]
    return RootedTree(parent, degree_cap=4)


def f2_heavy_tree(height: int) -> RootedTree:
    """Binary tree on which the two-level recursion wins at the root."""
    if height < 2:
        raise ValueError("height must be at least 2")
    inner = graft([perfect_tree(2, height - 2), perfect_tree(2, height - 1)])
    return graft([perfect_tree(2, height), inner]).with_cap(3)


def _largest(build, n: int, lo: int):
    h = lo
    while build(h + 1).n <= n:
        h += 1
    return build(h)


def random_caterpillar(n: int, degree: int, rng: random.Random) -> tuple[OrderedTree, list[int]]:
    """Top-view caterpillar with n nodes and maximum degree ``degree``."""
    while True:
        s = rng.randint(1, n)
        caps = [degree] if s == 1 else [degree - 1] + [degree - 2] * (s - 2) + [degree - 1]
        if s + sum(caps) < n:
            continue
        plan = [0] * s
        slots = [i for i, c in enumerate(caps) for _ in range(c)]
        for i in rng.sample(slots, n - s):
            plan[i] += 1
        ordered, _ = build_top_view_caterpillar(s, plan)
        return ordered, plan


def gen_tree(shape: str, n: int, degree: int = 3, seed: int = 0) -> RootedTree | OrderedTree:
    """Tree of the given shape with at most n nodes (exactly n where the shape allows)."""
    if degree not in (3, 4):
        raise ValueError("degree must be 3 or 4")
    rng = random.Random(seed)
    if shape == "random":
        return random_tree(n, degree - 1, rng)
    if shape == "perfect":
        return _largest(lambda h: perfect_tree(degree - 1, h), n, 0)
    if shape == "caterpillar":
        return random_caterpillar(n, degree, rng)[0]
    if shape == "c14-shape":
        return c14_shape()[0]
    if shape == "path":
        return path_tree(n)
    if shape == "f2-heavy":
        if n < f2_heavy_tree(2).n:
            raise ValueError(f"f2-heavy trees need at least {f2_heavy_tree(2).n} nodes")
        return _largest(f2_heavy_tree, n, 2)
    raise ValueError(f"unknown tree shape {shape!r}")
