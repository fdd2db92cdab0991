from __future__ import annotations

import itertools
import random
import time
from collections import Counter

import pytest
from references import grid_instance, longest_three_good_brute, naive_exists, random_ordering

from lshape.analysis import (
    binary_worst_case,
    library_specs,
    longest_monotone_straight_through,
    longest_three_good_subsequence,
    ternary_worst_case,
    verify_induction,
)
from lshape.binary import COVERAGE_TAGS, compute_budgets, embed_binary_ex
from lshape.drawing import validate
from lshape.embedding import InsufficientPoints
from lshape.generators import f2_heavy_tree, fig2b_permutation, fig2c_permutation, gen_points, p14_points
from lshape.geometry import Point
from lshape.oracle import Infeasible, enumerate_orderings_and_test, exists_drawing
from lshape.paths import M, embed_monotone_path
from lshape.ternary import CASE_TAGS, compute_budgets_ternary, embed_ternary_ex
from lshape.trees import c14_shape, perfect_tree, random_tree

STYLES = ("uniform", "diagonal", "anti-diagonal", "skewed", "clustered", "staircases")


@pytest.fixture(scope="module")
def corpus():
    """5000 embedder runs: 3500 binary (n <= 255), 1500 ternary (n <= 121)."""
    rng = random.Random(2024)
    heavy = f2_heavy_tree(6)
    tags, invalid, failed, extra_runs = Counter(), 0, 0, 0
    start = time.perf_counter()
    for i in range(5000):
        binary = i < 3500
        if binary and i % 10 == 0:
            t = heavy
            style = rng.choice(STYLES[1:])
        else:
            t = random_tree(rng.randint(1, 255 if binary else 121), 2 if binary else 3, rng)
            style = rng.choice(STYLES)
        need = compute_budgets(t).F[t.root] if binary else compute_budgets_ternary(t).F[t.root]
        extra = rng.randint(1, need) if i % 4 == 3 else 0
        extra_runs += extra > 0
        pts = gen_points(style, need + extra, rng.randrange(10**9))
        try:
            res = (embed_binary_ex if binary else embed_ternary_ex)(t, pts)
        except InsufficientPoints:
            failed += 1
            continue
        invalid += not validate(res.drawing).ok
        tags.update(res.tags)
    return {"tags": tags, "invalid": invalid, "failed": failed,
            "extra_runs": extra_runs, "seconds": time.perf_counter() - start}


def test_criterion_1_validator_corpus(corpus, criterion):
    tags = corpus["tags"]
    low = {t: tags[t] for t in COVERAGE_TAGS + CASE_TAGS if tags[t] < 50}
    ok = corpus["invalid"] == 0 and corpus["failed"] == 0 and not low and corpus["seconds"] <= 300
    counts = ", ".join(f"{t}={tags[t]}" for t in COVERAGE_TAGS + CASE_TAGS)
    criterion(1, ok, f"5000 runs, {corpus['invalid']} invalid, {corpus['seconds']:.0f}s; {counts}")


def _le_power(value: int, c: int, n: int, num: int, den: int) -> bool:
    """value <= c * n**(num/den), compared exactly."""
    return value ** den <= c ** den * n ** num


def test_criterion_2_budget_sufficiency(corpus, criterion):
    perfect = []
    for h in range(10):
        t = perfect_tree(2, h)
        perfect.append(_le_power(compute_budgets(t).F[0], 24, t.n, 571, 500))
    W = binary_worst_case(2000)["F"]
    binary = [_le_power(int(W[n]), 112, n, 61, 50) for n in range(1, 2001)]
    T = ternary_worst_case(500)
    ternary = [_le_power(int(T[n]), 2, n, 31, 20) for n in range(1, 501)]
    ok = corpus["failed"] == 0 and all(perfect) and all(binary) and all(ternary)
    criterion(2, ok, f"corpus failures {corpus['failed']} ({corpus['extra_runs']} runs with surplus points); "
                     f"perfect binary {sum(perfect)}/10, binary DP {sum(binary)}/2000, "
                     f"ternary DP {sum(ternary)}/500 within bound")


def test_criterion_3_recurrence_reproduction(criterion):
    start = time.perf_counter()
    reports = [verify_induction(s) for s in library_specs("all")]
    seconds = time.perf_counter() - start
    holds = all(r.passed for r in reports)
    misses = [f"{spec.name} {float(row.value):.5f} vs {float(row.quoted):g}"
              for spec, r in zip(library_specs("all"), reports)
              for row in r.rows if row.reproduced is False]
    ok = holds and not misses and seconds <= 1
    criterion(3, ok, f"inequalities {'all hold' if holds else 'FAIL'}; "
                     f"constants off by more than 1e-3: {misses or 'none'}; {seconds:.2f}s")


def test_criterion_4_c14_on_p14(criterion):
    _, shape = c14_shape()
    start = time.perf_counter()
    rows = enumerate_orderings_and_test(shape, p14_points())
    seconds = time.perf_counter() - start
    infeasible = [r.label for r in rows if r.stats.result is Infeasible]
    feasible = [r.label for r in rows if r.stats.feasible]
    complete = len(infeasible) + len(feasible) == len(rows)
    witnesses = all(validate(r.stats.drawing).ok for r in rows if r.stats.feasible)
    ok = complete and infeasible and feasible and witnesses and seconds <= 1800
    criterion(4, bool(ok), f"infeasible {infeasible}, feasible {feasible}, {seconds:.1f}s")


def test_criterion_5_oracle_ground_truth(criterion):
    rng = random.Random(505)
    agree = 0
    for i in range(200):
        tree, pts = grid_instance(rng, rng.randint(1, 6))
        if i % 2:
            ot = random_ordering(tree, rng)
            agree += bool(exists_drawing(ot, pts, ordered=True).feasible) == naive_exists(tree, pts, ot)
        else:
            agree += bool(exists_drawing(tree, pts).feasible) == naive_exists(tree, pts)
    diagonal = 0
    for _ in range(50):
        n = rng.randint(1, 10)
        stats = exists_drawing(random_tree(n, 3, rng), [Point(i, i) for i in range(n)])
        diagonal += bool(stats.feasible) and validate(stats.drawing).ok
    criterion(5, agree == 200 and diagonal == 50,
              f"naive agreement {agree}/200, diagonal feasible {diagonal}/50")


def test_criterion_6_monotone_paths(criterion):
    start = time.perf_counter()
    rng = random.Random(606)
    good = total = 0
    for n in (4, 8, 16, 32, 64, 128, 256, 512):
        for _ in range(100):
            total += 1
            sd = embed_monotone_path(n, gen_points("uniform", M(n), rng.randrange(10**9)))
            good += (len(sd.vertices) == n and sd.is_straight_through() and sd.is_x_monotone()
                     and validate(sd.drawing).ok)
    exact = 0
    for make in (fig2b_permutation, fig2c_permutation):
        for n in range(1, 65):
            pts = [Point(i, y) for i, y in enumerate(make(n))]
            exact += longest_monotone_straight_through(pts)[0] == n + 1
    seconds = time.perf_counter() - start
    ok = good == total and exact == 128 and seconds <= 120
    criterion(6, ok, f"paths {good}/{total}, fig2b/fig2c exact {exact}/128, {seconds:.0f}s")


def test_criterion_7_three_good(criterion):
    start = time.perf_counter()
    examples = (longest_three_good_subsequence([1, 3, 6, 4, 2, 10, 12, 13])[0] == 8
                and longest_three_good_subsequence([5, 2, 6, 3, 1, 7, 4])[0] == 3)
    checked = mismatched = 0
    for n in range(9):
        for perm in itertools.permutations(range(1, n + 1)):
            checked += 1
            mismatched += longest_three_good_subsequence(list(perm))[0] != longest_three_good_brute(perm)
    seconds = time.perf_counter() - start
    criterion(7, examples and mismatched == 0 and seconds <= 60,
              f"examples {'ok' if examples else 'wrong'}, {checked - mismatched}/{checked} "
              f"permutations match brute force, {seconds:.1f}s")
