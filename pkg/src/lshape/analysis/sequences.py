"""Exact dynamic programs over point sequences and permutations."""

from __future__ import annotations

from typing import Sequence

from ..geometry import Point

# Path states: a vertex reached horizontally (or the first vertex) may leave
# with a horizontal segment; a vertex reached vertically must keep going in
# the same vertical direction.
_FREE, _UP, _DOWN = 0, 1, 2


def longest_monotone_straight_through(ps: Sequence) -> tuple[int, list[Point]]:
    """Most vertices of an x-monotone straight-through path on ``ps``, with a witness."""
    pts = sorted((Point(p[0], p[1]) for p in ps), key=lambda s: s.x)
    n = len(pts)
    if n == 0:
        return 0, []
    best = [[1, 0, 0] for _ in range(n)]
    back: list[list[tuple[int, int] | None]] = [[None, None, None] for _ in range(n)]
    for k in range(n):
        yk = pts[k].y
        for j in range(k):
            bj = best[j]
            # horizontal segment out of j, vertical into k
            s = _UP if yk > pts[j].y else _DOWN
            if bj[_FREE] + 1 > best[k][s]:
                best[k][s] = bj[_FREE] + 1
                back[k][s] = (j, _FREE)
            # vertical segment out of j continuing its direction, horizontal into k
            for s in (_UP, _DOWN):
                if bj[s] and (yk > pts[j].y) == (s == _UP) and bj[s] + 1 > best[k][_FREE]:
                    best[k][_FREE] = bj[s] + 1
                    back[k][_FREE] = (j, s)
            # a first edge that starts vertically
            if best[k][_FREE] < 2:
                best[k][_FREE] = 2
                back[k][_FREE] = (j, -1)
    length, k, s = max((best[k][s], k, s) for k in range(n) for s in range(3))
    path = [pts[k]]
    while back[k][s] is not None:
        j, s2 = back[k][s]
        path.append(pts[j])
        if s2 == -1:
            break
        k, s = j, s2
    return length, path[::-1]


def is_three_good(seq: Sequence[int]) -> bool:
    """True when ``seq`` splits into alternating monotone runs of at least three
    elements each, consecutive runs sharing their junction element."""
    if len(seq) < 3:
        return False
    ups = [b > a for a, b in zip(seq, seq[1:])]
    run = 1
    for i in range(1, len(ups)):
        if ups[i] == ups[i - 1]:
            run += 1
        else:
            if run < 2:
                return False
            run = 1
    return run >= 2


def longest_three_good_subsequence(seq: Sequence[int]) -> tuple[int, list[int]]:
    """Longest 3-good subsequence (0 when none exists) and a witness."""
    n = len(seq)
    # state (i, up, p): subsequence ends at i, current run direction up/down,
    # p = elements in the current run capped at 3
    best: dict[tuple[int, bool, int], int] = {}
    back: dict[tuple[int, bool, int], tuple] = {}
    for j in range(n):
        for i in range(j):
            up = seq[j] > seq[i]
            cands = [((i, None, 1), 1)]
            for d in (True, False):
                for p in (2, 3):
                    if (i, d, p) in best:
                        cands.append(((i, d, p), best[(i, d, p)]))
            for (st, ln) in cands:
                _, d, p = st
                if d is None:
                    key = (j, up, 2)
                elif d == up:
                    key = (j, up, min(p + 1, 3))
                elif p >= 3:
                    key = (j, up, 2)
                else:
                    continue
                if ln + 1 > best.get(key, 0):
                    best[key] = ln + 1
                    back[key] = st
    done = [(ln, st) for st, ln in best.items() if st[2] == 3]
    if not done:
        return 0, []
    length, st = max(done)
    out = []
    while st is not None:
        out.append(seq[st[0]])
        st = back.get(st) if st[1] is not None else None
    return length, out[::-1]
