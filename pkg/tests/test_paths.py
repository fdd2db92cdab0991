from __future__ import annotations

import math
import random

import pytest

from lshape.analysis import longest_monotone_straight_through
from lshape.drawing import validate
from lshape.embedding import InsufficientPoints
from lshape.generators import fig2b_permutation, fig2c_permutation, gen_points
from lshape.geometry import Point
from lshape.oracle import exists_drawing
from lshape.paths import (
    M,
    M_cat,
    caterpillar_orders,
    caterpillar_points_needed,
    embed_monotone_path,
    embed_top_view_caterpillar,
    path_drawing,
)
from lshape.trees import build_top_view_caterpillar, c14_shape


def test_recurrence_values():
    assert M(1) == 1
    assert M(2) == 6
    assert M(3) == M(4) == 2 * M(2) + 8
    assert M_cat(2) == 2 + 12
    for k in range(1, 21):
        n = 2 ** k
        assert M(n) / (n * math.log2(n)) <= 4
    with pytest.raises(ValueError):
        M(0)


def _check(sd, n):
    assert len(sd.vertices) == n
    assert sd.is_straight_through() and sd.is_x_monotone()
    assert validate(sd.drawing).ok
    if n >= 2:
        assert sd.drawing.ports(0, 1)[0] in ("left", "right")


def test_small_paths():
    _check(embed_monotone_path(1, [(4, 4)]), 1)
    _check(embed_monotone_path(2, [(0, 0), (1, 5)]), 2)
    with pytest.raises(InsufficientPoints):
        embed_monotone_path(3, gen_points("uniform", M(3) - 1, 0))


def test_random_paths():
    rng = random.Random(41)
    for _ in range(300):
        n = rng.randint(1, 40)
        ps = gen_points(rng.choice(("uniform", "staircases", "skewed")), M(n), rng.randrange(10**6))
        _check(embed_monotone_path(n, ps), n)


@pytest.mark.parametrize("make", [fig2b_permutation, fig2c_permutation])
def test_lower_bound_sets(make):
    for n in range(1, 17):
        perm = make(n)
        pts = [Point(i, y) for i, y in enumerate(perm)]
        assert len(pts) == 2 * n
        length, witness = longest_monotone_straight_through(pts)
        assert length == n + 1
        _check(path_drawing(witness), n + 1)


def test_caterpillar_bare_path_uses_path_budget():
    ordered, shape = build_top_view_caterpillar(5, [0] * 5)
    assert caterpillar_points_needed(shape) == M(5)
    d = embed_top_view_caterpillar(shape, gen_points("uniform", M(5), 1))
    assert validate(d, ordered).ok


def test_c14_caterpillar_on_random_points():
    ordered, shape = c14_shape()
    need = caterpillar_points_needed(shape)
    assert need <= M_cat(shape.n)
    for seed in range(20):
        d = embed_top_view_caterpillar(shape, gen_points("uniform", need, seed), ordered)
        assert validate(d, ordered).ok


def test_c14_witness_agrees_with_oracle():
    ordered, shape = c14_shape()
    need = caterpillar_points_needed(shape)
    pts = gen_points("uniform", need, 7)
    d = embed_top_view_caterpillar(shape, pts, ordered)
    used = sorted(d.pos.values())
    stats = exists_drawing(ordered, used, ordered=True)
    assert stats.feasible


def test_full_caterpillar_on_200_points():
    ordered, shape = build_top_view_caterpillar(4, [3, 2, 2, 3])
    rng = random.Random(42)
    for _ in range(20):
        ps = gen_points("uniform", 200, rng.randrange(10**6))
        d = embed_top_view_caterpillar(shape, ps)
        assert validate(d, caterpillar_orders(shape)).ok


def test_random_caterpillars():
    rng = random.Random(43)
    for _ in range(60):
        m = rng.randint(1, 12)
        plan = [rng.randint(0, 3) if i in (0, m - 1) else rng.choice((0, 1, 2)) for i in range(m)]
        if m == 1:
            plan = [rng.randint(0, 4)]
        ordering = ["LR" if c == 2 else rng.choice("LR") * c for c in plan]
        ordered, shape = build_top_view_caterpillar(m, plan, ordering)
        need = caterpillar_points_needed(shape, ordered)
        ps = gen_points(rng.choice(("uniform", "skewed", "staircases")), need, rng.randrange(10**6))
        d = embed_top_view_caterpillar(shape, ps, ordered)
        assert validate(d, ordered).ok
