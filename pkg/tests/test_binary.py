from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction

import pytest

from lshape.binary import (
    COVERAGE_TAGS,
    Configuration,
    compute_budgets,
    draw_in_config,
    embed_binary,
    embed_binary_ex,
)
from lshape.drawing import Drawing, validate
from lshape.embedding import InsufficientPoints, NotAChain, embed_on_diagonal
from lshape.generators import f2_heavy_tree, gen_points
from lshape.geometry import Point
from lshape.trees import (
    DegreeExceeded,
    parse_tree,
    path_tree,
    perfect_tree,
    random_tree,
    serialize_tree,
)


def test_budget_examples():
    b = compute_budgets(parse_tree("()"))
    assert b.F == [1] and b.G == [1]
    b = compute_budgets(perfect_tree(2, 1))
    # budgets count the subtree root's own point as well
    assert b.G[0] == 3 and b.F[0] == 4
    for k in range(1, 10):
        t = perfect_tree(2, k)
        assert compute_budgets(t).F[0] <= 24 * t.n ** 1.142


def test_budget_rejects_high_degree():
    with pytest.raises(DegreeExceeded):
        compute_budgets(parse_tree("(()()())"))


def test_budget_invariants():
    rng = random.Random(21)
    for _ in range(200):
        t = random_tree(rng.randint(1, 150), 2, rng)
        b = compute_budgets(t)
        for v in range(t.n):
            assert b.G[v] <= b.F[v]
            if t.children[v]:
                assert b.F[v] == min(b.options[v].values())
            else:
                assert b.F[v] == b.G[v] == 1
            # G grows with the subtree; F does not, since a heavy child may
            # only need a g-configuration inside its parent's f-configuration
            for c in t.children[v]:
                assert b.G[c] <= b.G[v]


def test_embed_small_cases():
    d = embed_binary(parse_tree("()"), [(3, 7)])
    assert d.pos[0] == Point(3, 7)
    diag = [Point(i, i) for i in range(6)]
    d = embed_binary(path_tree(3), diag)
    assert validate(d).ok
    with pytest.raises(InsufficientPoints):
        embed_binary(perfect_tree(2, 2), diag)


def _attach(t, v, pts, cfg):
    """Draw the subtree of v in cfg below a parent placed on the apex ray."""
    pos, bends, tags = draw_in_config(t, pts, cfg, v=v)
    top = max(p.y for p in pts) + 1
    pos = dict(pos)
    pos[t.parent[v]] = Point(cfg.apex_x, top)
    return Drawing(t, pos, bends), tags


def test_draw_in_config_leaf_and_g_draw():
    t = parse_tree("((()()))")
    leaf = parse_tree("(())")
    d, _ = _attach(leaf, 1, [Point(4, 2)], Configuration("F", 3))
    assert validate(d).ok and d.pos[1] == Point(4, 2)
    pts = [Point(1, 5), Point(6, 3), Point(2, 1)]
    d, tags = _attach(t, 1, pts, Configuration("G", 3))
    assert validate(d).ok and tags.get("g") == 1
    assert d.pos[1] == Point(6, 3)


def test_draw_in_config_random_subproblems():
    rng = random.Random(22)
    for _ in range(200):
        sub = random_tree(rng.randint(1, 30), 2, rng)
        t = parse_tree("(" + serialize_tree(sub) + ")")
        b = compute_budgets(t)
        kind = rng.choice("FG")
        need = b.F[1] if kind == "F" else b.G[1]
        pts = gen_points("uniform", need, rng.randrange(10**6))
        xs = sorted(p.x for p in pts)
        apex = xs[len(xs) // 2] - Fraction(1, 2)
        d, _ = _attach(t, 1, list(pts), Configuration(kind, apex))
        assert validate(d).ok


def test_random_embeddings_validate_and_cover_tags():
    rng = random.Random(23)
    tags = Counter()
    for i in range(240):
        if i % 8 == 0:
            t = f2_heavy_tree(6)
            style = rng.choice(("anti-diagonal", "skewed", "clustered"))
        else:
            t = random_tree(rng.randint(1, 120), 2, rng)
            style = rng.choice(("uniform", "diagonal", "anti-diagonal", "skewed", "clustered"))
        res = embed_binary_ex(t, gen_points(style, compute_budgets(t).F[t.root], rng.randrange(10**6)))
        assert validate(res.drawing).ok
        tags.update(res.tags)
    for tag in COVERAGE_TAGS:
        assert tags[tag] > 0, tag


def test_root_with_three_children():
    t = parse_tree("(()(())(()()))")
    res = embed_binary_ex(t, gen_points("uniform", 200, 1))
    assert validate(res.drawing).ok and set(res.drawing.pos) == set(range(t.n))


def test_diagonal_embedding():
    chain = [Point(i, i) for i in range(8)]
    d = embed_on_diagonal(path_tree(8), chain)
    assert validate(d).ok
    star = parse_tree("(()()())")
    d = embed_on_diagonal(star, chain[:4], need_upward_visibility=True)
    assert validate(d).ok
    root = d.pos[star.root]
    assert "up" not in d.port_map()[star.root]
    for _, a, b in d.segments():
        if a.y == b.y and a.y > root.y:
            assert not min(a.x, b.x) <= root.x <= max(a.x, b.x)
    d = embed_on_diagonal(parse_tree("()"), chain[:1], need_upward_visibility=True)
    assert d.pos[0] == chain[0]
    with pytest.raises(NotAChain):
        embed_on_diagonal(path_tree(3), [Point(0, 0), Point(1, 2), Point(2, 1)])


def test_diagonal_embedding_random_trees():
    rng = random.Random(24)
    for _ in range(200):
        n = rng.randint(1, 40)
        t = random_tree(n, 3, rng)
        sign = rng.choice((1, -1))
        chain = [Point(i, sign * i) for i in range(n + rng.randint(0, 3))]
        port = rng.choice((None, "up", "down", "left", "right"))
        if port and len(t.children[t.root]) > 3:
            continue
        d = embed_on_diagonal(t, chain, free_port=port)
        assert validate(d).ok
