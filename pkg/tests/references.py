"""Brute-force references the tests compare the library against."""

from __future__ import annotations

import random
from itertools import combinations, permutations, product

from lshape.drawing import Drawing, validate
from lshape.geometry import Point
from lshape.trees import OrderedTree, RootedTree, random_tree


def naive_exists(tree, pts, ordered: OrderedTree | None = None) -> bool:
    """Every placement times every bend assignment, no pruning."""
    edges = tree.edges()
    for placement in permutations(pts, tree.n):
        pos = dict(enumerate(placement))
        for bends in product(("HV", "VH"), repeat=len(edges)):
            d = Drawing(tree, pos, dict(zip(edges, bends)))
            if validate(d, ordered, method="brute").ok:
                return True
    return False


def grid_instance(rng: random.Random, n: int, grid: int = 6):
    """Random tree on n nodes and n points of a grid x grid rank grid."""
    tree = random_tree(n, 3, rng)
    xs = rng.sample(range(grid), n)
    ys = rng.sample(range(grid), n)
    return tree, [Point(x, y) for x, y in zip(xs, ys)]


def random_ordering(tree, rng: random.Random) -> OrderedTree:
    cyc = {}
    for v in range(tree.n):
        nb = tree.neighbors(v)
        rng.shuffle(nb)
        cyc[v] = tuple(nb)
    return OrderedTree(tree.root, cyc)


def tree_shapes(n: int, max_children: int) -> list[str]:
    """Parenthesized forms of every unordered rooted tree with n nodes."""
    return sorted(_shapes(n, max_children))


def _partitions(rem: int, parts: int, smallest: int):
    if rem == 0:
        yield []
        return
    if parts == 0:
        return
    for s in range(smallest, rem + 1):
        for rest in _partitions(rem - s, parts - 1, s):
            yield [s] + rest


def _shapes(n: int, k: int, _memo={}) -> frozenset:
    if (n, k) not in _memo:
        if n == 1:
            out = {"()"}
        else:
            out = set()
            for sizes in _partitions(n - 1, k, 1):
                for kids in product(*(sorted(_shapes(s, k)) for s in sizes)):
                    out.add("(" + "".join(sorted(kids)) + ")")
        _memo[(n, k)] = frozenset(out)
    return _memo[(n, k)]


def three_good_brute(seq) -> bool:
    """Maximal monotone stretches each span at least two steps."""
    if len(seq) < 3:
        return False
    signs = [b > a for a, b in zip(seq, seq[1:])]
    run = 1
    for prev, cur in zip(signs, signs[1:]):
        if cur == prev:
            run += 1
        else:
            if run < 2:
                return False
            run = 1
    return run >= 2


def longest_three_good_brute(seq) -> int:
    n = len(seq)
    for size in range(n, 2, -1):
        for idx in combinations(range(n), size):
            if three_good_brute([seq[i] for i in idx]):
                return size
    return 0


def longest_mono_path_brute(pts) -> int:
    """Largest k such that some k points, in x-order, carry a valid
    straight-through path (orientations alternate once the first is fixed)."""
    pts = sorted(pts)
    for size in range(len(pts), 0, -1):
        for idx in combinations(range(len(pts)), size):
            chosen = [pts[i] for i in idx]
            tree = RootedTree([None] + list(range(size - 1)))
            for first in (0, 1):
                bends = {(i, i + 1): ("HV", "VH")[(i + first) % 2] for i in range(size - 1)}
                if validate(Drawing(tree, dict(enumerate(chosen)), bends), method="brute").ok:
                    return size
    return 0
