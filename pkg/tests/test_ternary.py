from __future__ import annotations

import math
import random
from collections import Counter

import pytest

from lshape.drawing import validate
from lshape.embedding import InsufficientPoints
from lshape.generators import gen_points
from lshape.ternary import (
    CASE_TAGS,
    compute_budgets_ternary,
    embed_ternary,
    embed_ternary_ex,
    ternary_points_needed,
)
from lshape.trees import DegreeExceeded, find_level_k, parse_tree, perfect_tree, random_tree

STYLES = ("uniform", "diagonal", "anti-diagonal", "skewed", "clustered")


def test_budget_examples():
    assert compute_budgets_ternary(parse_tree("()")).F == [1]
    b = compute_budgets_ternary(perfect_tree(3, 1))
    # the construction also counts the subtree root, hence 5 + 1
    assert b.options[0]["F4-1"] == 6
    with pytest.raises(DegreeExceeded):
        compute_budgets_ternary(parse_tree("((()()()()))"))


def test_perfect_ternary_growth():
    values = [compute_budgets_ternary(perfect_tree(3, h)).F[0] for h in range(1, 7)]
    sizes = [perfect_tree(3, h).n for h in range(1, 7)]
    for (n1, f1), (n2, f2) in zip(zip(sizes, values), zip(sizes[1:], values[1:])):
        assert f2 == 5 * f1 + 1
    slope = math.log(values[-1] / values[-2]) / math.log(sizes[-1] / sizes[-2])
    assert abs(slope - math.log(5, 3)) < 0.01


def test_budget_uses_cheaper_construction():
    rng = random.Random(31)
    for _ in range(200):
        t = random_tree(rng.randint(1, 121), 3, rng)
        b = compute_budgets_ternary(t)
        for v in range(t.n):
            if not t.children[v]:
                assert b.F[v] == 1
                continue
            assert b.F[v] == min(b.options[v].values())
            if b.tag[v] == "F4-2":
                assert b.k[v] == find_level_k(t, v).k


def test_embed_small_and_insufficient():
    d = embed_ternary(parse_tree("()"), [(1, 1)])
    assert len(d.pos) == 1
    t = perfect_tree(3, 2)
    assert t.n == 13
    d = embed_ternary(t, gen_points("uniform", 5 * 13, 4))
    assert validate(d).ok
    with pytest.raises(InsufficientPoints):
        embed_ternary(t, gen_points("uniform", ternary_points_needed(t) - 1, 4))


def test_root_with_four_children():
    t = parse_tree("(()(())(()())(()()()))")
    d = embed_ternary(t, gen_points("uniform", ternary_points_needed(t), 2))
    assert validate(d).ok


def test_random_embeddings_validate_and_cover_cases():
    rng = random.Random(32)
    tags = Counter()
    for _ in range(200):
        t = random_tree(rng.randint(1, 121), 3, rng)
        style = rng.choice(STYLES)
        need = compute_budgets_ternary(t).F[t.root]
        res = embed_ternary_ex(t, gen_points(style, need, rng.randrange(10**6)))
        assert res.need == need
        assert validate(res.drawing).ok
        tags.update(res.tags)
    for tag in CASE_TAGS:
        assert tags[tag] >= 50, tag


@pytest.mark.parametrize("style", ["uniform", "skewed"])
def test_spread_points_reach_middle_zone_case(style):
    # on monotone chains the equatorial zone is never split three ways, so
    # the middle and right cases need scattered points
    rng = random.Random(33)
    tags = Counter()
    for seed in range(30):
        t = random_tree(rng.randint(40, 121), 3, rng)
        need = compute_budgets_ternary(t).F[t.root]
        res = embed_ternary_ex(t, gen_points(style, need, seed))
        assert validate(res.drawing).ok
        tags.update(res.tags)
    assert tags["B2"] > 0 and tags["B3"] > 0
