"""Command-line interface: ``ortho <subcommand>``.

Exit codes: 0 success/feasible/pass, 1 infeasible/fail, 2 usage or input error.
Human-readable logs go to stderr; machine output goes to files or to stdout
when the output path is ``-``.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from .drawing import SchemaError, SvgStyle, dumps_drawing, loads_drawing, render_svg, validate
from .generators import POINT_STYLES, TREE_SHAPES
from .geometry import format_points, parse_points
from .trees import OrderedTree, RootedTree, TreeSyntaxError, dumps_ordered, parse_tree, serialize_tree


class InputError(Exception):
    pass


def _log(msg: str) -> None:
    click.echo(msg, err=True)


def _input_errors(fn):
    """Turn malformed input into a one-line diagnostic and exit code 2."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (InputError, SchemaError, TreeSyntaxError, ValueError, KeyError, OSError) as exc:
            _log(f"error: {exc}")
            sys.exit(2)

    return wrapper


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    if path == "-":
        click.echo(text, nl=not text.endswith("\n"))
    else:
        Path(path).write_text(text, encoding="utf-8")


def load_tree(path: str) -> RootedTree | OrderedTree:
    """A parenthesized tree, or an ordered tree in JSON."""
    text = _read(path).strip()
    if text.startswith("{"):
        try:
            return OrderedTree.from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON: {exc}") from None
    return parse_tree(text)


def _rooted(t: RootedTree | OrderedTree) -> RootedTree:
    return t.to_rooted() if isinstance(t, OrderedTree) else t


def dump_tree(t: RootedTree | OrderedTree) -> str:
    return dumps_ordered(t) + "\n" if isinstance(t, OrderedTree) else serialize_tree(t) + "\n"


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="artifact")
def main() -> None:
    """Planar L-shaped drawings of trees on point sets."""


@main.command()
@click.option("--degree", type=click.Choice(["3", "4"]), required=True, help="Maximum degree of the tree.")
@click.option("--tree", "tree_path", required=True, help="Tree file (parenthesized or ordered JSON).")
@click.option("--points", "points_path", required=True, help="Point file, one 'x y' per line.")
@click.option("--out", default="-", show_default=True, help="Drawing JSON output.")
@click.option("--svg", default=None, help="Also render the drawing as SVG.")
@_input_errors
def embed(degree: str, tree_path: str, points_path: str, out: str, svg: str | None) -> None:
    """Draw a tree on a point set."""
    from .binary import embed_binary_ex
    from .embedding import InsufficientPoints
    from .ternary import embed_ternary_ex

    t = _rooted(load_tree(tree_path))
    ps = parse_points(_read(points_path))
    run = embed_binary_ex if degree == "3" else embed_ternary_ex
    try:
        res = run(t, ps)
    except InsufficientPoints as exc:
        _log(f"infeasible for this construction: {exc}")
        sys.exit(1)
    _write(out, dumps_drawing(res.drawing) + "\n")
    if svg:
        _write(svg, render_svg(res.drawing, SvgStyle(points=tuple(ps))))
    _log(f"drew {t.n} nodes using a budget of {res.need} points; steps: {dict(sorted(res.tags.items()))}")


@main.command(name="validate")
@click.option("--drawing", "drawing_path", required=True, help="Drawing JSON.")
@click.option("--ordered-tree", "ordered_path", default=None, help="Ordered tree JSON to check cyclic orders against.")
@_input_errors
def validate_cmd(drawing_path: str, ordered_path: str | None) -> None:
    """Check planarity, ports and (optionally) cyclic orders of a drawing."""
    d = loads_drawing(_read(drawing_path))
    ordered = None
    if ordered_path:
        ot = load_tree(ordered_path)
        if not isinstance(ot, OrderedTree):
            raise InputError("--ordered-tree needs an ordered tree in JSON")
        ordered = ot
    rep = validate(d, ordered)
    if rep.ok:
        click.echo("valid")
        return
    for v in rep.violations:
        click.echo(f"{v.kind}: {v.witness}")
    sys.exit(1)


@main.command()
@click.option("--drawing", "drawing_path", required=True, help="Drawing JSON.")
@click.option("--svg", required=True, help="SVG output.")
@_input_errors
def render(drawing_path: str, svg: str) -> None:
    """Render a drawing as SVG."""
    _write(svg, render_svg(loads_drawing(_read(drawing_path))))


def caterpillar_shape_of(t: RootedTree):
    """The caterpillar shape (spine and leaf counts) of ``t``."""
    from .trees import build_top_view_caterpillar

    inner = [v for v in range(t.n) if len(t.neighbors(v)) > 1]
    if not inner:
        inner = [0]
    inner_set = set(inner)
    ends = [v for v in inner if sum(w in inner_set for w in t.neighbors(v)) <= 1]
    if len(inner) > 1 and len(ends) != 2:
        raise InputError("tree is not a caterpillar")
    spine, prev = [ends[0] if ends else inner[0]], None
    while True:
        nxt = [w for w in t.neighbors(spine[-1]) if w in inner_set and w != prev]
        if not nxt:
            break
        prev = spine[-1]
        spine.append(nxt[0])
    if len(spine) != len(inner):
        raise InputError("tree is not a caterpillar")
    counts = [sum(w not in inner_set for w in t.neighbors(v)) for v in spine]
    return build_top_view_caterpillar(len(spine), counts)[1]


@main.command()
@click.option("--tree", "tree_path", required=True, help="Tree file; ordered JSON for --ordered.")
@click.option("--points", "points_path", required=True, help="Point file.")
@click.option("--ordered", is_flag=True, help="Require the tree's cyclic orders (up to reflection).")
@click.option("--enumerate-orderings", is_flag=True, help="Test every ordering class of a caterpillar.")
@click.option("--cap", default=16, show_default=True, help="Largest tree the search accepts.")
@click.option("--budget", type=int, default=None, help="Stop after this many search nodes (result Unknown).")
@click.option("--out", default=None, help="Write a witness drawing here when feasible.")
@_input_errors
def oracle(tree_path, points_path, ordered, enumerate_orderings, cap, budget, out) -> None:
    """Exhaustively decide whether a drawing exists."""
    from .oracle import CapExceeded, Feasible, enumerate_orderings_and_test, exists_drawing

    t = load_tree(tree_path)
    ps = parse_points(_read(points_path))
    try:
        if enumerate_orderings:
            table = enumerate_orderings_and_test(caterpillar_shape_of(_rooted(t)), ps, cap=cap)
            click.echo("ordering\tresult\tnodes\tseconds")
            for row in table:
                st = row.stats
                verdict = "Feasible" if isinstance(st.result, Feasible) else repr(st.result)
                click.echo(f"{row.label}\t{verdict}\t{st.nodes_expanded}\t{st.elapsed:.2f}")
            return
        if ordered and not isinstance(t, OrderedTree):
            raise InputError("--ordered needs an ordered tree in JSON")
        st = exists_drawing(t, ps, ordered=ordered, cap=cap, node_budget=budget)
    except CapExceeded as exc:
        raise InputError(str(exc)) from None
    _log(f"expanded {st.nodes_expanded} search nodes in {st.elapsed:.2f}s; prunes {dict(st.prunes_by_kind)}")
    if isinstance(st.result, Feasible):
        click.echo("Feasible")
        if out:
            _write(out, dumps_drawing(st.drawing, t if isinstance(t, OrderedTree) else None) + "\n")
        return
    click.echo(repr(st.result))
    sys.exit(1)


def _fmt_point(point) -> str:
    return "(" + ", ".join(f"{float(x):.4g}" for x in point) + ")" if point else "-"


@main.command(name="verify-recurrences")
@click.option("--family", type=click.Choice(["perfect-binary", "binary", "ternary", "all"]), default="all",
              show_default=True)
@click.option("--spec", "spec_path", default=None, help="JSON file with extra recurrence specs.")
@click.option("--strict", is_flag=True, help="Also fail when a quoted constant is off by more than 1e-3.")
@_input_errors
def verify_recurrences(family: str, spec_path: str | None, strict: bool) -> None:
    """Check the induction inequalities at every extreme point."""
    from .analysis.recurrences import library_specs, load_specs, verify_induction

    specs = load_specs(spec_path) if spec_path else library_specs(family)
    ok = True
    click.echo("spec\tpoint\tvalue\tquoted\tholds\tcloses\twithin_1e-3")
    for spec in specs:
        rep = verify_induction(spec)
        for row in rep.rows + rep.outside:
            quoted = "-" if row.quoted is None else f"{row.relation}{float(row.quoted):g}"
            repro = "-" if row.reproduced is None else ("yes" if row.reproduced else "NO")
            where = "" if row.in_region else " [outside region]"
            click.echo(f"{spec.name}\t{_fmt_point(row.point)}{where}\t{row.value:.6f}\t{quoted}\t"
                       f"{'yes' if row.holds else 'NO'}\t{'yes' if row.closes else 'NO'}\t{repro}")
        ok &= rep.passed and (rep.reproduced or not strict)
    _log("all inequalities verified" if ok else "some checks failed")
    sys.exit(0 if ok else 1)


@main.group()
def gen() -> None:
    """Generate point sets and trees."""


@gen.command(name="points")
@click.option("--n", type=click.IntRange(min=1), required=True, help="Size (fig2b/fig2c give 2n points).")
@click.option("--seed", default=0, show_default=True)
@click.option("--style", type=click.Choice(list(POINT_STYLES)),
              default="uniform", show_default=True)
@click.option("--out", default="-", show_default=True)
@_input_errors
def gen_points_cmd(n: int, seed: int, style: str, out: str) -> None:
    from .generators import gen_points

    _write(out, format_points(gen_points(style, n, seed)))


@gen.command(name="tree")
@click.option("--n", type=click.IntRange(min=1), required=True)
@click.option("--degree", type=click.Choice(["3", "4"]), default="3", show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--shape", type=click.Choice(list(TREE_SHAPES)),
              default="random", show_default=True)
@click.option("--out", default="-", show_default=True)
@_input_errors
def gen_tree_cmd(n: int, degree: str, seed: int, shape: str, out: str) -> None:
    from .generators import gen_tree

    _write(out, dump_tree(gen_tree(shape, n, int(degree), seed)))


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise InputError(f"{what} must be a comma-separated list of integers") from None


@main.command()
@click.option("--family", type=click.Choice(["perfect-binary", "binary", "perfect-ternary", "ternary", "path"]),
              required=True)
@click.option("--sizes", required=True, help="Comma-separated tree sizes.")
@click.option("--seeds", type=click.IntRange(min=1), default=20, show_default=True)
@click.option("--generator", default="uniform", show_default=True,
              help="Point style, or a comma-separated list (worst case is reported).")
@click.option("--csv", "csv_path", default="-", show_default=True)
@_input_errors
def bench(family: str, sizes: str, seeds: int, generator: str, csv_path: str) -> None:
    """Fewest points on which the embedder succeeds for 95% of seeds."""
    from .analysis.bench import bench_point_budget

    gens = [g for g in generator.split(",") if g]
    bad = [g for g in gens if g not in POINT_STYLES]
    if bad or not gens:
        raise InputError(f"unknown point style(s): {', '.join(bad) or '(none)'}")
    res = bench_point_budget(family, _int_list(sizes, "--sizes"), seeds, gens)
    if csv_path == "-":
        res.write_csv(sys.stdout)
    else:
        res.write_csv(csv_path)
    if res.exponent is not None:
        _log(f"fitted exponent {res.exponent:.4f}")


@main.command(name="longest-mono-path")
@click.option("--points", "points_path", required=True)
@_input_errors
def longest_mono_path(points_path: str) -> None:
    """Longest x-monotone straight-through path on a point set."""
    from .analysis.sequences import longest_monotone_straight_through

    length, path = longest_monotone_straight_through(parse_points(_read(points_path)))
    click.echo(length)
    click.echo(" ".join(f"({p.x},{p.y})" for p in path))


@main.command(name="three-good")
@click.option("--sequence", required=True, help="Comma-separated distinct integers.")
@_input_errors
def three_good(sequence: str) -> None:
    """Longest subsequence made of alternating runs of length at least 3."""
    from .analysis.sequences import longest_three_good_subsequence

    seq = _int_list(sequence, "--sequence")
    if len(set(seq)) != len(seq):
        raise InputError("--sequence must not repeat a value")
    length, witness = longest_three_good_subsequence(seq)
    click.echo(length)
    click.echo(",".join(map(str, witness)))
