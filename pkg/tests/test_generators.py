from __future__ import annotations

import random

import pytest

from lshape.binary import compute_budgets
from lshape.generators import (
    POINT_STYLES,
    TREE_SHAPES,
    f2_heavy_tree,
    fig2b_permutation,
    fig2c_permutation,
    gen_points,
    gen_tree,
    graft,
    p14_points,
    random_caterpillar,
    staircase_points,
)
from lshape.geometry import Point
from lshape.trees import OrderedTree, parse_tree, serialize_tree


@pytest.mark.parametrize("style", POINT_STYLES)
def test_point_styles_are_seeded_and_sized(style):
    a = gen_points(style, 12, seed=5)
    b = gen_points(style, 12, seed=5)
    assert list(a) == list(b)
    expected = {"fig2b": 24, "fig2c": 24, "p14": 14}.get(style, 12)
    assert len(a) == expected
    assert len({p.x for p in a}) == len({p.y for p in a}) == len(a)


def test_seeds_differ():
    assert list(gen_points("uniform", 20, 1)) != list(gen_points("uniform", 20, 2))
    with pytest.raises(ValueError):
        gen_points("spiral", 5)


def test_fixed_sets():
    assert fig2b_permutation(3) == [0, 2, 1, 4, 3, 5]
    assert fig2c_permutation(3) == [0, 3, 1, 4, 2, 5]
    for n in range(1, 20):
        assert sorted(fig2b_permutation(n)) == list(range(2 * n))
        assert sorted(fig2c_permutation(n)) == list(range(2 * n))
    with pytest.raises(ValueError):
        fig2b_permutation(0)
    pts = sorted(p14_points())
    runs = [pts[:4], pts[4:10], pts[10:]]
    for run in runs:
        assert all(a.y > b.y for a, b in zip(run, run[1:]))
    for lower, upper in zip(runs, runs[1:]):
        assert max(p.y for p in lower) < min(p.y for p in upper)


def test_staircases():
    rng = random.Random(71)
    for _ in range(50):
        m = rng.randint(1, 40)
        pts = staircase_points(m, rng)
        assert len(pts) == m
        steps = sum(1 for a, b in zip(pts, pts[1:]) if b.y > a.y)
        assert steps <= 4


def test_graft_and_f2_heavy():
    t = graft([parse_tree("()"), parse_tree("(())")])
    assert serialize_tree(t) == "(()(()))"
    for h in range(2, 7):
        t = f2_heavy_tree(h)
        assert max(len(c) for c in t.children) <= 2
    assert compute_budgets(f2_heavy_tree(6)).tag_F[0] == "f-2"
    with pytest.raises(ValueError):
        f2_heavy_tree(1)


@pytest.mark.parametrize("shape", TREE_SHAPES)
@pytest.mark.parametrize("degree", [3, 4])
def test_tree_shapes(shape, degree):
    n = 40
    a = gen_tree(shape, n, degree, seed=3)
    b = gen_tree(shape, n, degree, seed=3)
    assert a.n == b.n and a.n <= max(n, 14)
    rooted = a.to_rooted() if isinstance(a, OrderedTree) else a
    assert serialize_tree(rooted) == serialize_tree(b.to_rooted() if isinstance(b, OrderedTree) else b)
    if shape not in ("c14-shape",):
        assert all(rooted.degree(v) <= degree for v in range(rooted.n))
    if shape in ("random", "path", "caterpillar"):
        assert a.n == n


def test_tree_errors():
    with pytest.raises(ValueError):
        gen_tree("random", 5, degree=5)
    with pytest.raises(ValueError):
        gen_tree("f2-heavy", 3)
    with pytest.raises(ValueError):
        gen_tree("spiral", 5)


def test_random_caterpillar_plan():
    rng = random.Random(72)
    for _ in range(100):
        n = rng.randint(1, 30)
        degree = rng.choice((3, 4))
        ordered, plan = random_caterpillar(n, degree, rng)
        assert ordered.n == n == len(plan) + sum(plan)
        inner = plan[1:-1]
        assert all(c <= degree - 2 for c in inner)


def test_points_are_points():
    assert all(isinstance(p, Point) for p in gen_points("skewed", 10, 0))
