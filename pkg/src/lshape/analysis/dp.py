"""Worst-case budget curves over all tree shapes of each size.

The curves are upper bounds on what :func:`compute_budgets` and
:func:`compute_budgets_ternary` return for any tree with n nodes.  Where one
recursion looks two levels down (the f-2 family, the heavy-chain construction)
the grandchild terms are maximised independently, which can only raise the
curve.
"""

from __future__ import annotations

import numpy as np

NEG = -(1 << 60)


def binary_worst_case(N: int) -> dict[str, np.ndarray]:
    """Arrays ``F``, ``G``, ``Gh`` indexed by tree size 0..N."""
    F = np.zeros(N + 1, dtype=np.int64)
    G = np.zeros(N + 1, dtype=np.int64)
    Gh = np.zeros(N + 1, dtype=np.int64)
    # Per child size m: the worst grandchild terms over the child's own splits.
    best_gh21 = np.zeros(N + 1, dtype=np.int64)
    best_f22 = np.zeros(N + 1, dtype=np.int64)
    best_comb = np.zeros(N + 1, dtype=np.int64)
    for n in range(1, N + 1):
        if n == 1:
            F[1] = G[1] = Gh[1] = 1
        else:
            n1 = np.arange(0, (n - 1) // 2 + 1)
            n2 = n - 1 - n1
            F1, G1, F2, G2 = F[n1], G[n1], F[n2], G[n2]
            f1 = 2 * F1 + G2 + 1
            f1p = 2 * G1 + F2 + 1
            lucky = 1 + G1 + np.minimum(best_gh21[n2] - 1, G1) + F2
            unlucky = 2 * G1 + best_f22[n2] + n
            f2 = np.maximum(lucky, unlucky)
            comb = 2 * G1 + best_comb[n2] + 2
            fv = np.minimum(np.minimum(f1, f1p), np.minimum(f2, comb))
            ghv = 1 + F1 + G2
            F[n] = fv.max()
            Gh[n] = ghv.max()
            G[n] = np.minimum(fv, ghv).max()
        k = np.arange(0, (n - 1) // 2 + 1)
        rest = n - 1 - k
        best_gh21[n] = Gh[k].max()
        best_f22[n] = F[rest].max()
        best_comb[n] = (2 * F[k] + G[rest]).max()
    return {"F": F, "G": G, "Gh": Gh}


def _ternary_splits(m: int):
    """All (a, b, r) with a <= b <= r and a + b + r = m - 1."""
    s = m - 1
    out = [(a, b, s - a - b) for a in range(0, s // 3 + 1) for b in range(a, (s - a) // 2 + 1)]
    arr = np.array(out, dtype=np.int64).reshape(-1, 3)
    return arr[:, 0], arr[:, 1], arr[:, 2]


def ternary_worst_case(N: int) -> np.ndarray:
    """Upper bound ``W[n]`` on the ternary budget of any tree with n nodes."""
    W = np.zeros(N + 1, dtype=np.int64)
    U1 = np.full(N + 1, NEG, dtype=np.int64)
    U2 = np.full(N + 1, NEG, dtype=np.int64)
    for m in range(1, N + 1):
        a, b, r = _ternary_splits(m)
        Wa, Wb, Wr = W[a], W[b], W[r]
        if m > 1:
            y1 = Wa + Wb + 1
            f41 = 2 * Wa + 2 * Wb + Wr + 1
            f42 = np.maximum(np.where(U1[r] > NEG, y1 + U1[r], NEG), 2 * y1 + U2[r])
            W[m] = np.minimum(f41, f42).max()
        else:
            W[1] = 1
        # Continuation of the heavy chain through a node of size m.
        stop = 10 * r <= 9 * m
        lvl = 2 * Wa + 2 * Wb + 1
        ta = np.where(Wb >= 1, Wb - 1 + 2 * Wa + 2 * Wb + 1 + Wr, NEG)
        tb = 3 * Wa + Wb + Wr
        c1 = np.where(U1[r] > NEG, lvl + U1[r], NEG)
        c2 = 2 * lvl + U2[r]
        U1[m] = np.where(stop, ta, c1).max()
        U2[m] = np.where(stop, tb, c2).max()
    return W


def perfect_binary_curve(max_height: int) -> list[tuple[int, int]]:
    """``(n, F)`` for perfect binary trees of height ``0..max_height``.

    All subtrees of one height are alike, so the per-node recursion of
    :func:`compute_budgets` collapses to one step per height.
    """
    from ..binary import F_TAGS, recursion_values

    rows = [(1, 1, 1, 1)]  # (n, F, G, Gh)
    for h in range(1, max_height + 1):
        n1, F1, G1, Gh1 = rows[-1]
        F21, Gh21, G21 = (rows[-2][1], rows[-2][3], rows[-2][2]) if h >= 2 else (0, 0, 0)
        n = 2 * n1 + 1
        opts = recursion_values(n, F1, G1, F1, G1, F21, Gh21, F21, G21, True)
        F = min(opts[k] for k in F_TAGS if k in opts)
        Gh = 1 + F1 + G1
        rows.append((n, F, min(F, Gh), Gh))
    return [(n, F) for n, F, _, _ in rows]


def perfect_binary_exponent() -> float:
    """log2 of the real root of x**3 - 2x**2 - 1."""
    roots = np.roots([1, -2, 0, -1])
    real = max(r.real for r in roots if abs(r.imag) < 1e-12)
    return float(np.log2(real))
