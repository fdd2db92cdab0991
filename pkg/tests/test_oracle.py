from __future__ import annotations

import random

import pytest
from references import grid_instance, naive_exists, random_ordering

from lshape.drawing import validate
from lshape.embedding import InsufficientPoints
from lshape.generators import p14_points
from lshape.geometry import Point
from lshape.oracle import (
    CapExceeded,
    Infeasible,
    Unknown,
    enumerate_orderings_and_test,
    exists_drawing,
    ordering_classes,
)
from lshape.trees import (
    build_top_view_caterpillar,
    c14_shape,
    parse_tree,
    path_tree,
    random_tree,
)


def test_two_nodes_always_feasible():
    stats = exists_drawing(parse_tree("(())"), [(0, 0), (1, 1)])
    assert stats.feasible and validate(stats.drawing).ok


def test_diagonal_sets_are_feasible():
    rng = random.Random(51)
    for _ in range(20):
        n = rng.randint(1, 9)
        t = random_tree(n, 3, rng)
        pts = [Point(i, i) for i in range(n)]
        stats = exists_drawing(t, pts)
        assert stats.feasible and validate(stats.drawing).ok


def test_cap_and_size_errors():
    with pytest.raises(CapExceeded):
        exists_drawing(path_tree(17), [Point(i, i) for i in range(17)])
    with pytest.raises(CapExceeded):
        exists_drawing(path_tree(5), [Point(i, i) for i in range(5)], cap=4)
    with pytest.raises(InsufficientPoints):
        exists_drawing(path_tree(4), [Point(0, 0)])


def test_budget_gives_unknown_not_infeasible():
    ordered, _ = c14_shape()
    stats = exists_drawing(ordered, p14_points(), ordered=True, node_budget=50)
    assert stats.result is Unknown and stats.feasible is None


def test_agrees_with_naive_enumerator_unordered():
    rng = random.Random(52)
    for _ in range(60):
        tree, pts = grid_instance(rng, rng.randint(1, 5))
        assert bool(exists_drawing(tree, pts).feasible) == naive_exists(tree, pts)


def test_agrees_with_naive_enumerator_ordered():
    rng = random.Random(53)
    for _ in range(60):
        tree, pts = grid_instance(rng, rng.randint(1, 5))
        ot = random_ordering(tree, rng)
        stats = exists_drawing(ot, pts, ordered=True)
        assert bool(stats.feasible) == naive_exists(ot.to_rooted(), pts, ot)
        if stats.feasible:
            assert validate(stats.drawing, ot).ok


def test_deterministic_under_point_order():
    rng = random.Random(54)
    for _ in range(20):
        tree, pts = grid_instance(rng, rng.randint(2, 6))
        a = exists_drawing(tree, pts)
        shuffled = pts[:]
        rng.shuffle(shuffled)
        b = exists_drawing(tree, shuffled)
        assert a.feasible == b.feasible
        assert a.drawing.pos == b.drawing.pos


def test_unordered_is_or_over_ordering_classes():
    rng = random.Random(55)
    for _ in range(15):
        plan = [rng.randint(0, 2), rng.choice((0, 1, 2)), rng.randint(0, 2)]
        ordered, shape = build_top_view_caterpillar(3, plan)
        if shape.n > 8:
            continue
        pts = [Point(x, y) for x, y in zip(rng.sample(range(20), shape.n), rng.sample(range(20), shape.n))]
        classes = enumerate_orderings_and_test(shape, pts)
        any_ordered = any(r.stats.feasible for r in classes)
        assert any_ordered == bool(exists_drawing(ordered.to_rooted(), pts).feasible)


def test_ordering_classes():
    _, bare = build_top_view_caterpillar(4, [0, 0, 0, 0])
    assert ordering_classes(bare) == [("", "", "", "")]
    _, c14 = c14_shape()
    labels = {",".join(c) for c in ordering_classes(c14)}
    assert labels == {",LR,LR,", ",LR,LL,", ",LL,LR,", ",LL,LL,", ",LL,RR,"}


def test_bare_path_single_class_feasible_on_diagonal():
    _, shape = build_top_view_caterpillar(5, [0] * 5)
    rows = enumerate_orderings_and_test(shape, [Point(i, i) for i in range(5)])
    assert len(rows) == 1 and rows[0].stats.feasible


@pytest.mark.slow
def test_c14_on_p14_has_feasible_and_infeasible_classes():
    _, shape = c14_shape()
    rows = {r.label: r.stats for r in enumerate_orderings_and_test(shape, p14_points())}
    assert rows["-,LR,LR,-"].result is Infeasible
    assert any(s.feasible for s in rows.values())
    for s in rows.values():
        if s.feasible:
            assert validate(s.drawing).ok
