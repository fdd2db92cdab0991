"""Rooted and ordered trees of maximum degree 3 or 4.

Node ids are ``0..n-1``; parsed trees number nodes in preorder.  Missing
children are treated as empty subtrees of size 0 (represented by ``None``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class TreeSyntaxError(ValueError):
    def __init__(self, offset: int, message: str = "malformed tree") -> None:
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class DegreeExceeded(ValueError):
    def __init__(self, node: int, degree: int, cap: int) -> None:
        super().__init__(f"node {node} has degree {degree} > {cap}")
        self.node = node


class RootedTree:
    """Immutable rooted tree.  ``children[v]`` is an ordered list of child ids."""

    __slots__ = ("parent", "children", "size", "root", "degree_cap", "_preorder")

    def __init__(
        self,
        parent: Sequence[int | None],
        children: Sequence[Sequence[int]] | None = None,
        degree_cap: int = 4,
    ) -> None:
        n = len(parent)
        if children is None:
            kids: list[list[int]] = [[] for _ in range(n)]
            for v, p in enumerate(parent):
                if p is not None:
                    kids[p].append(v)
        else:
            kids = [list(c) for c in children]
        roots = [v for v, p in enumerate(parent) if p is None]
        if n and len(roots) != 1:
            raise ValueError("tree must have exactly one root")
        self.parent = tuple(parent)
        self.children = tuple(tuple(c) for c in kids)
        self.root = roots[0] if n else None
        self.degree_cap = degree_cap
        order = []
        if n:
            stack = [self.root]
            while stack:
                v = stack.pop()
                order.append(v)
                for c in reversed(self.children[v]):
                    if self.parent[c] != v:
                        raise ValueError(f"child {c} of {v} has parent {self.parent[c]}")
                    stack.append(c)
        if len(order) != n:
            raise ValueError("tree is not connected")
        self._preorder = tuple(order)
        size = [1] * n
        for v in reversed(order):
            p = self.parent[v]
            if p is not None:
                size[p] += size[v]
        self.size = tuple(size)
        for v in range(n):
            d = self.degree(v)
            if d > degree_cap:
                raise DegreeExceeded(v, d, degree_cap)

    def __len__(self) -> int:
        return len(self.parent)

    def __repr__(self) -> str:
        return f"RootedTree({serialize_tree(self)!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RootedTree):
            return NotImplemented
        return self.parent == other.parent and self.children == other.children

    def __hash__(self) -> int:
        return hash((self.parent, self.children))

    @property
    def n(self) -> int:
        return len(self.parent)

    def degree(self, v: int) -> int:
        return len(self.children[v]) + (self.parent[v] is not None)

    def preorder(self) -> tuple[int, ...]:
        return self._preorder

    def edges(self) -> list[tuple[int, int]]:
        """(parent, child) pairs in preorder."""
        return [(self.parent[v], v) for v in self._preorder if self.parent[v] is not None]

    def subtree_nodes(self, v: int) -> list[int]:
        out = []
        stack = [v]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(reversed(self.children[u]))
        return out

    def neighbors(self, v: int) -> list[int]:
        p = self.parent[v]
        return ([p] if p is not None else []) + list(self.children[v])

    def with_cap(self, degree_cap: int) -> "RootedTree":
        return RootedTree(self.parent, self.children, degree_cap)

    def rerooted(self, new_root: int) -> "RootedTree":
        """Same unrooted tree, rooted at ``new_root``; node ids are preserved."""
        n = self.n
        parent: list[int | None] = [None] * n
        children: list[list[int]] = [[] for _ in range(n)]
        seen = [False] * n
        seen[new_root] = True
        stack = [new_root]
        while stack:
            v = stack.pop()
            for u in self.neighbors(v):
                if not seen[u]:
                    seen[u] = True
                    parent[u] = v
                    children[v].append(u)
                    stack.append(u)
        return RootedTree(parent, children, self.degree_cap)


# --------------------------------------------------------------------------
# Parenthesized format
# --------------------------------------------------------------------------

def parse_tree(text: str, degree_cap: int = 4) -> RootedTree:
    """Parse ``( child* )`` notation; whitespace is ignored."""
    parent: list[int | None] = []
    stack: list[int] = []
    done = False
    for i, ch in enumerate(text):
        if ch.isspace():
            continue
        if done:
            raise TreeSyntaxError(i, "trailing input")
        if ch == "(":
            parent.append(stack[-1] if stack else None)
            stack.append(len(parent) - 1)
        elif ch == ")":
            if not stack:
                raise TreeSyntaxError(i, "unbalanced ')'")
            stack.pop()
            done = not stack
        else:
            raise TreeSyntaxError(i, f"unexpected {ch!r}")
    if stack or not parent:
        raise TreeSyntaxError(len(text), "unexpected end of input")
    return RootedTree(parent, degree_cap=degree_cap)


def serialize_tree(t: RootedTree) -> str:
    if t.n == 0:
        return ""
    out = []
    stack: list[tuple[int, bool]] = [(t.root, False)]
    while stack:
        v, closing = stack.pop()
        if closing:
            out.append(")")
            continue
        out.append("(")
        stack.append((v, True))
        for c in reversed(t.children[v]):
            stack.append((c, False))
    return "".join(out)


# --------------------------------------------------------------------------
# Naming conventions
# --------------------------------------------------------------------------

def canonical_children(t: RootedTree, v: int) -> list[int]:
    """Children of ``v`` by ascending subtree size, ties by id."""
    return sorted(t.children[v], key=lambda c: (t.size[c], c))


def padded_children(t: RootedTree, v: int, k: int) -> list[int | None]:
    """``canonical_children`` left-padded with ``None`` (empty subtrees) to length k."""
    kids = canonical_children(t, v)
    if len(kids) > k:
        raise DegreeExceeded(v, t.degree(v), k)
    return [None] * (k - len(kids)) + kids


def size_of(t: RootedTree, v: int | None) -> int:
    return 0 if v is None else t.size[v]


@dataclass(frozen=True)
class LevelChain:
    """The heavy chain ``r_0, r_1, ..., r_k`` with light children ``a_i, b_i``.

    Lists are indexed by level; index 0 of ``a``/``b`` is unused (None).
    """

    k: int
    r: list[int | None]
    a: list[int | None]
    b: list[int | None]


def find_level_k(t: RootedTree, v: int | None = None) -> LevelChain:
    """Walk down the largest-child chain from ``v`` and stop at the first level
    k >= 2 where ``size(r_k) <= 0.9 * size(r_{k-1})``."""
    v = t.root if v is None else v
    r: list[int | None] = [v]
    a: list[int | None] = [None]
    b: list[int | None] = [None]
    level = 0
    while True:
        cur = r[-1]
        if cur is None:
            ai = bi = ri = None
        else:
            ai, bi, ri = padded_children(t, cur, 3)
        a.append(ai)
        b.append(bi)
        r.append(ri)
        level += 1
        if level >= 2 and 10 * size_of(t, ri) <= 9 * size_of(t, cur):
            return LevelChain(level, r, a, b)


# --------------------------------------------------------------------------
# Ordered trees and caterpillars
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class OrderedTree:
    """Tree with a counterclockwise cyclic order of neighbours at every node."""

    root: int
    cyclic: dict[int, tuple[int, ...]]

    def __post_init__(self) -> None:
        for v, order in self.cyclic.items():
            if len(set(order)) != len(order):
                raise ValueError(f"node {v} lists a neighbour twice")
            for u in order:
                if v not in self.cyclic.get(u, ()):
                    raise ValueError(f"edge {v}-{u} is not symmetric")

    @property
    def n(self) -> int:
        return len(self.cyclic)

    def to_rooted(self, degree_cap: int = 4) -> RootedTree:
        n = len(self.cyclic)
        if sorted(self.cyclic) != list(range(n)):
            raise ValueError("node ids must be 0..n-1")
        parent: list[int | None] = [None] * n
        children: list[list[int]] = [[] for _ in range(n)]
        seen = {self.root}
        stack = [self.root]
        while stack:
            v = stack.pop()
            order = list(self.cyclic[v])
            p = parent[v]
            if p is not None:
                i = order.index(p)
                order = order[i + 1:] + order[:i]
            for u in order:
                if u in seen:
                    raise ValueError("cyclic orders do not describe a tree")
                seen.add(u)
                parent[u] = v
                children[v].append(u)
                stack.append(u)
        return RootedTree(parent, children, degree_cap)

    def to_json(self) -> dict:
        return {
            "root": self.root,
            "nodes": [{"id": v, "cyclic": list(self.cyclic[v])} for v in sorted(self.cyclic)],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "OrderedTree":
        try:
            cyc = {int(nd["id"]): tuple(int(u) for u in nd["cyclic"]) for nd in doc["nodes"]}
            return cls(int(doc["root"]), cyc)
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad ordered-tree document: {exc}") from None

    @classmethod
    def from_rooted(cls, t: RootedTree) -> "OrderedTree":
        """Ordered tree whose cyclic order at v is (parent, children...)."""
        return cls(t.root, {v: tuple(t.neighbors(v)) for v in range(t.n)})


def dumps_ordered(t: OrderedTree) -> str:
    return json.dumps(t.to_json())


@dataclass(frozen=True)
class CaterpillarShape:
    """Spine plus leaves; ``sides[i]`` holds one 'L'/'R' label per leaf of spine[i]."""

    spine: tuple[int, ...]
    leaves: tuple[tuple[int, ...], ...]
    sides: tuple[str, ...]
    top_view: bool = field(default=False)

    @property
    def n(self) -> int:
        return len(self.spine) + sum(map(len, self.leaves))

    def leaf_counts(self) -> list[int]:
        return [len(x) for x in self.leaves]


def build_top_view_caterpillar(
    spine_len: int, leaf_plan: Sequence[int], ordering: Sequence[str] | None = None
) -> tuple[OrderedTree, CaterpillarShape]:
    """Ordered caterpillar with ``leaf_plan[i]`` leaves at spine vertex i.

    ``ordering[i]`` places the leaves of internal spine vertex i relative to the
    direction of travel along the spine: ``"LR"`` (opposite sides, the top-view
    case), ``"LL"``/``"RR"`` (both on one side), ``"L"``/``"R"`` or ``""``.  End
    vertices have a unique order up to leaf relabelling, so their entries are
    ignored.
    """
    if spine_len < 1 or len(leaf_plan) != spine_len:
        raise ValueError("leaf_plan must give one count per spine vertex")
    spine = list(range(spine_len))
    nxt = spine_len
    leaves = []
    for cnt in leaf_plan:
        leaves.append(tuple(range(nxt, nxt + cnt)))
        nxt += cnt
    if ordering is None:
        ordering = ["LR" if c == 2 else "L" * c for c in leaf_plan]
    cyclic: dict[int, tuple[int, ...]] = {}
    sides = []
    for i, s in enumerate(spine):
        prev = spine[i - 1] if i > 0 else None
        succ = spine[i + 1] if i + 1 < spine_len else None
        lv = list(leaves[i])
        if prev is None or succ is None:
            deg = len(lv) + (prev is not None) + (succ is not None)
            if deg > 4:
                raise DegreeExceeded(s, deg, 4)
            other = [u for u in (prev, succ) if u is not None]
            cyclic[s] = tuple(other + lv)
            sides.append("L" * len(lv))
            continue
        plan = ordering[i]
        if sorted(plan) != sorted("L" * plan.count("L") + "R" * plan.count("R")) or len(plan) != len(lv):
            raise ValueError(f"ordering {plan!r} does not match {len(lv)} leaves at spine vertex {i}")
        if len(lv) + 2 > 4:
            raise DegreeExceeded(s, len(lv) + 2, 4)
        left = [lv[j] for j, c in enumerate(plan) if c == "L"]
        right = [lv[j] for j, c in enumerate(plan) if c == "R"]
        # counterclockwise starting from the forward direction: left side, back, right side
        cyclic[s] = tuple([succ] + left + [prev] + right)
        sides.append(plan)
    for i, lv in enumerate(leaves):
        for leaf in lv:
            cyclic[leaf] = (spine[i],)
    top = all(
        sorted(sides[i]) == ["L", "R"] for i in range(1, spine_len - 1) if len(leaves[i]) == 2
    )
    shape = CaterpillarShape(tuple(spine), tuple(leaves), tuple(sides), top)
    return OrderedTree(spine[0], cyclic), shape


def c14_shape(ordering: Sequence[str] | None = None) -> tuple[OrderedTree, CaterpillarShape]:
    """The 14-node caterpillar family: spine of 4, three leaves at each end, two inside."""
    return build_top_view_caterpillar(4, [3, 2, 2, 3], ordering)


def random_tree(n: int, max_children: int, rng, degree_cap: int | None = None) -> RootedTree:
    """Random rooted tree where every node has at most ``max_children`` children."""
    parent: list[int | None] = [None]
    nkids = [0]
    open_nodes = [0]
    for v in range(1, n):
        i = rng.randrange(len(open_nodes))
        p = open_nodes[i]
        parent.append(p)
        nkids[p] += 1
        nkids.append(0)
        if nkids[p] == max_children:
            open_nodes[i] = open_nodes[-1]
            open_nodes.pop()
        open_nodes.append(v)
    return RootedTree(parent, degree_cap=degree_cap or max_children + 1)


def perfect_tree(arity: int, height: int) -> RootedTree:
    """Perfect ``arity``-ary tree with ``height`` levels below the root."""
    parent: list[int | None] = [None]
    frontier = [0]
    for _ in range(height):
        nxt = []
        for p in frontier:
            for _ in range(arity):
                parent.append(p)
                nxt.append(len(parent) - 1)
        frontier = nxt
    return RootedTree(parent, degree_cap=arity + 1)


def path_tree(n: int) -> RootedTree:
    return RootedTree([None] + list(range(n - 1)), degree_cap=2 if n > 2 else 4)


def caterpillar_tree(spine_len: int, leaf_plan: Iterable[int]) -> RootedTree:
    ordered, _ = build_top_view_caterpillar(spine_len, list(leaf_plan))
    return ordered.to_rooted()
