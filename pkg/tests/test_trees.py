from __future__ import annotations

import json
import random

import pytest

from lshape.trees import (
    DegreeExceeded,
    OrderedTree,
    RootedTree,
    TreeSyntaxError,
    build_top_view_caterpillar,
    c14_shape,
    canonical_children,
    find_level_k,
    parse_tree,
    perfect_tree,
    random_tree,
    serialize_tree,
    size_of,
)


def test_parse_examples():
    assert parse_tree("()").n == 1
    t = parse_tree("(()())")
    assert t.n == 3 and len(t.children[t.root]) == 2
    t = parse_tree("((()())(()()))")
    assert t.n == 7
    assert [t.size[c] for c in canonical_children(t, t.root)] == [3, 3]


@pytest.mark.parametrize("text", ["", "(", "())", "(()", "(x)", "()()"])
def test_parse_rejects_malformed(text):
    with pytest.raises(TreeSyntaxError):
        parse_tree(text)


def test_degree_cap_enforced():
    with pytest.raises(DegreeExceeded):
        parse_tree("(()()()())", degree_cap=3)
    with pytest.raises(DegreeExceeded):
        parse_tree("((()()()))", degree_cap=3)
    parse_tree("(()()())", degree_cap=3)
    parse_tree("((()()()))", degree_cap=4)


def test_round_trip_random_trees():
    rng = random.Random(5)
    for _ in range(200):
        t = random_tree(rng.randint(1, 200), 3, rng)
        text = serialize_tree(t)
        back = parse_tree(text)
        assert serialize_tree(back) == text
        assert back.n == t.n and sorted(back.size) == sorted(t.size)


def test_subtree_sizes():
    rng = random.Random(6)
    for _ in range(50):
        t = random_tree(rng.randint(1, 80), 2, rng)
        assert t.size[t.root] == t.n
        for v in range(t.n):
            assert t.size[v] == 1 + sum(t.size[c] for c in t.children[v])


def _star(sizes):
    """Root whose children head paths with the given sizes."""
    parent = [None]
    for s in sizes:
        prev = 0
        for _ in range(s):
            parent.append(prev)
            prev = len(parent) - 1
    return RootedTree(parent)


def test_canonical_children_examples():
    t = _star([5, 2])
    assert [t.size[c] for c in canonical_children(t, 0)] == [2, 5]
    t = _star([4, 4, 4])
    assert canonical_children(t, 0) == sorted(t.children[0])
    t = _star([1, 7, 3])
    assert [t.size[c] for c in canonical_children(t, 0)] == [1, 3, 7]


def test_canonical_children_idempotent_and_label_free():
    rng = random.Random(7)
    for _ in range(50):
        t = random_tree(rng.randint(2, 40), 3, rng)
        for v in range(t.n):
            kids = canonical_children(t, v)
            assert sorted(kids, key=lambda c: (t.size[c], c)) == kids
            assert sorted(t.size[c] for c in t.children[v]) == [t.size[c] for c in kids]


def _chain_over_split(j, tail):
    """j single-child nodes above a node with two paths of ``tail`` nodes."""
    parent = [None] + list(range(j))
    split = j
    for _ in range(2):
        prev = split
        for _ in range(tail):
            parent.append(prev)
            prev = len(parent) - 1
    return RootedTree(parent)


def test_find_level_k_examples():
    t = perfect_tree(3, 3)
    assert find_level_k(t).k == 2
    t = _chain_over_split(4, 10)
    assert find_level_k(t).k == 5
    single = parse_tree("()")
    lone = find_level_k(single)
    assert lone.k == 2 and all(size_of(single, r) == 0 for r in lone.r[1:])


def test_find_level_k_minimality_and_light_children():
    rng = random.Random(8)
    for _ in range(300):
        t = random_tree(rng.randint(1, 120), 3, rng)
        ch = find_level_k(t)
        sizes = [size_of(t, r) for r in ch.r]
        assert 10 * sizes[ch.k] <= 9 * sizes[ch.k - 1]
        for j in range(2, ch.k):
            assert 10 * sizes[j] > 9 * sizes[j - 1]
        for i in range(2, ch.k):
            assert 10 * size_of(t, ch.a[i]) <= sizes[i - 1]
            assert 10 * size_of(t, ch.b[i]) <= sizes[i - 1]


def test_caterpillar_builder_counts():
    ordered, shape = c14_shape()
    assert ordered.n == shape.n == 14
    assert shape.top_view
    ordered, shape = build_top_view_caterpillar(2, [0, 0])
    assert ordered.n == 2
    ordered, shape = build_top_view_caterpillar(3, [0, 2, 0])
    assert ordered.n == 5
    with pytest.raises(DegreeExceeded):
        build_top_view_caterpillar(3, [4, 0, 0])


def test_caterpillar_removing_leaves_leaves_spine():
    ordered, shape = c14_shape(["", "LL", "LR", ""])
    assert not shape.top_view
    t = ordered.to_rooted()
    leaves = {v for v in range(t.n) if t.degree(v) == 1}
    assert sorted(set(range(t.n)) - leaves) == list(shape.spine)


def test_ordered_tree_json_round_trip():
    ordered, _ = c14_shape()
    doc = json.loads(json.dumps(ordered.to_json()))
    assert OrderedTree.from_json(doc) == ordered
    t = ordered.to_rooted()
    assert t.n == 14
    for v, order in ordered.cyclic.items():
        assert sorted(order) == sorted(t.neighbors(v))


def test_ordered_tree_rejects_asymmetric_edges():
    with pytest.raises(ValueError):
        OrderedTree(0, {0: (1,), 1: ()})
