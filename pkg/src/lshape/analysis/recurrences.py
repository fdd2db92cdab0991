"""Numeric checks of the induction steps behind the point-count bounds.

Each :class:`RecurrenceSpec` states one inequality family: a sum of terms
``coef * w(fn) * arg**alpha`` over split fractions of ``n`` (``n = 1``), an
optional additive ``n`` term worth ``1/c``, a convex region given by linear
constraints, and the region's extreme points.  Convexity makes the extreme
points sufficient.  Every verdict is backed by an outward-rounded interval.
"""

from __future__ import annotations

import ast
import json
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from mpmath import iv

MARGIN = Fraction(1, 10**6)
REPRO_TOL = Fraction(1, 10**3)


class RegionViolation(ValueError):
    """An extreme point does not satisfy its region's constraints."""


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}
_CMPOPS = {ast.Lt: operator.lt, ast.LtE: operator.le, ast.Gt: operator.gt, ast.GtE: operator.ge, ast.Eq: operator.eq}


def evaluate(expr: str, env: dict[str, Fraction]):
    """Exact value of a linear expression or comparison chain over ``env``."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return Fraction(str(node.value))
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise ValueError(f"unknown name {node.id!r} in {expr!r}")
            return env[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.Compare):
            left = ev(node.left)
            for op, comp in zip(node.ops, node.comparators):
                right = ev(comp)
                if type(op) not in _CMPOPS or not _CMPOPS[type(op)](left, right):
                    return False
                left = right
            return True
        if isinstance(node, ast.BoolOp) and isinstance(node.op, ast.And):
            return all(ev(v) for v in node.values)
        raise ValueError(f"unsupported expression {expr!r}")

    return ev(ast.parse(expr, mode="eval"))


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x))


@dataclass(frozen=True)
class Term:
    coef: Fraction
    fn: str  # "f" (weight 1) or "g" (weight beta)
    arg: str


@dataclass(frozen=True)
class Recursion:
    terms: tuple[Term, ...]
    additive: tuple[str, ...] = ()
    guard: str | None = None


@dataclass(frozen=True)
class ExtremePoint:
    point: tuple[Fraction, ...]
    quoted: Fraction | None = None
    relation: str = "<"


@dataclass
class RecurrenceSpec:
    """One induction inequality over a convex region of split fractions."""

    name: str
    alpha: Fraction
    variables: tuple[str, ...]
    recursions: list[Recursion]
    region: list[str]
    extreme_points: list[ExtremePoint]
    beta: Fraction | None = None  # None means 1/(2**alpha - 1)
    c: Fraction | None = None
    target: Fraction = Fraction(1)
    target_relation: str = "<"
    # points quoted for this case that lie outside its region; reported only
    outside: list[ExtremePoint] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.alpha <= 1:
            raise ValueError(f"{self.name}: alpha must exceed 1")
        if (self.beta is not None and self.beta <= 0) or (self.c is not None and self.c <= 0):
            raise ValueError(f"{self.name}: constants must be positive")
        for ep in self.extreme_points:
            if len(ep.point) != len(self.variables):
                raise ValueError(f"{self.name}: point {ep.point} has the wrong arity")
            bad = self.violated(ep.point)
            if bad:
                raise RegionViolation(f"{self.name}: point {_fmt(ep.point)} breaks {bad}")

    def env(self, point) -> dict[str, Fraction]:
        return {"n": Fraction(1), **dict(zip(self.variables, point))}

    def violated(self, point) -> list[str]:
        env = self.env(point)
        return [con for con in self.region if not evaluate(con, env)]


def _fmt(point) -> str:
    return "(" + ", ".join(f"{float(x):.4g}" for x in point) + ")"


class _Value:
    """Exact rational part plus an optional outward-rounded interval part."""

    def __init__(self, exact: Fraction = Fraction(0), inexact=None) -> None:
        self.exact = exact
        self.inexact = inexact

    def __add__(self, other: _Value) -> _Value:
        if self.inexact is None:
            inexact = other.inexact
        elif other.inexact is None:
            inexact = self.inexact
        else:
            inexact = self.inexact + other.inexact
        return _Value(self.exact + other.exact, inexact)

    def _iv(self):
        e = iv.mpf(self.exact.numerator) / self.exact.denominator
        return e if self.inexact is None else e + self.inexact

    @property
    def lo(self) -> float:
        return float(self.exact) if self.inexact is None else float(self._iv().a)

    @property
    def hi(self) -> float:
        return float(self.exact) if self.inexact is None else float(self._iv().b)

    @property
    def mid(self) -> float:
        return float(self.exact) if self.inexact is None else float(self._iv().mid)

    def below(self, bound: Fraction, relation: str, margin: Fraction = MARGIN) -> bool:
        """True when every value in the interval satisfies ``relation`` against ``bound``."""
        if self.inexact is None:
            return self.exact < bound - margin if relation == "<" else self.exact <= bound
        top = self._iv().b
        limit = bound - margin if relation == "<" else bound
        lim = iv.mpf(limit.numerator) / limit.denominator
        return bool(top.b < lim.a) if relation == "<" else bool(top.b <= lim.a)


def _ivfrac(x: Fraction):
    return iv.mpf(x.numerator) / x.denominator


def _power(x: Fraction, alpha) -> _Value:
    if x in (0, 1):
        return _Value(x)
    return _Value(Fraction(0), _ivfrac(x) ** alpha)


def _evaluate_recursion(spec: RecurrenceSpec, rec: Recursion, env, alpha, beta) -> tuple[_Value, _Value]:
    """(value of the terms, value including the additive part) in units of ``c n**alpha``."""
    val = _Value()
    for term in rec.terms:
        p = _power(evaluate(term.arg, env), alpha)
        if term.fn == "f":
            part = _Value(p.exact * term.coef, None if p.inexact is None else p.inexact * _ivfrac(term.coef))
        elif term.fn == "g":
            if p.exact == 0 and p.inexact is None:
                part = _Value()
            else:
                part = _Value(Fraction(0), p._iv() * beta * _ivfrac(term.coef))
        else:
            raise ValueError(f"{spec.name}: unknown function {term.fn!r}")
        val = val + part
    total = val
    for expr in rec.additive:
        if spec.c is None:
            raise ValueError(f"{spec.name}: an additive term needs the constant c")
        total = total + _Value(evaluate(expr, env) / spec.c)
    return val, total


@dataclass
class PointReport:
    point: tuple[Fraction, ...]
    value: float
    lo: float
    hi: float
    total_hi: float
    quoted: Fraction | None
    relation: str
    holds: bool  # value against the quoted constant
    closes: bool  # total against the spec's target
    reproduced: bool | None
    in_region: bool = True

    @property
    def ok(self) -> bool:
        return self.holds and self.closes


@dataclass
class InductionReport:
    name: str
    rows: list[PointReport]
    outside: list[PointReport]

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def reproduced(self) -> bool:
        return all(r.reproduced is not False for r in self.rows + self.outside)


def _reproduced(value: float, quoted: Fraction | None, relation: str) -> bool | None:
    if quoted is None:
        return None
    gap = float(quoted) - value
    if relation == "<":
        return 0 < gap <= float(REPRO_TOL)
    return abs(gap) <= float(REPRO_TOL)


def _row(spec: RecurrenceSpec, ep: ExtremePoint, alpha, beta, in_region: bool) -> PointReport:
    env = spec.env(ep.point)
    best = None
    for rec in spec.recursions:
        if rec.guard is not None and not evaluate(rec.guard, env):
            continue
        val, total = _evaluate_recursion(spec, rec, env, alpha, beta)
        if best is None or total.hi < best[1].hi:
            best = (val, total)
    if best is None:
        raise ValueError(f"{spec.name}: no recursion applies at {_fmt(ep.point)}")
    val, total = best
    holds = True if ep.quoted is None else val.below(ep.quoted, ep.relation)
    return PointReport(
        point=ep.point,
        value=val.mid,
        lo=val.lo,
        hi=val.hi,
        total_hi=total.hi,
        quoted=ep.quoted,
        relation=ep.relation,
        holds=holds,
        closes=total.below(spec.target, spec.target_relation),
        reproduced=_reproduced(val.mid, ep.quoted, ep.relation),
        in_region=in_region,
    )


def spec_beta(spec: RecurrenceSpec):
    """The constant beta of ``spec`` as an interval."""
    alpha = _ivfrac(spec.alpha)
    return _ivfrac(spec.beta) if spec.beta is not None else 1 / (iv.mpf(2) ** alpha - 1)


def verify_induction(spec: RecurrenceSpec, precision: int = 80) -> InductionReport:
    """Evaluate every extreme point of ``spec`` with interval arithmetic."""
    saved = iv.prec
    iv.prec = precision
    try:
        alpha = _ivfrac(spec.alpha)
        beta = spec_beta(spec)
        rows = [_row(spec, ep, alpha, beta, True) for ep in spec.extreme_points]
        outside = [_row(spec, ep, alpha, beta, False) for ep in spec.outside]
    finally:
        iv.prec = saved
    return InductionReport(spec.name, rows, outside)


# --------------------------------------------------------------------------
# Loading
# --------------------------------------------------------------------------

def _point(raw) -> ExtremePoint:
    if isinstance(raw, dict):
        quoted = raw.get("quoted")
        return ExtremePoint(
            tuple(_frac(x) for x in raw["point"]),
            None if quoted is None else _frac(quoted),
            raw.get("relation", "<"),
        )
    return ExtremePoint(tuple(_frac(x) for x in raw))


def spec_from_dict(d: dict) -> RecurrenceSpec:
    recs = [
        Recursion(
            tuple(Term(_frac(t.get("coef", 1)), t["fn"], str(t["arg"])) for t in r["terms"]),
            tuple(r.get("additive", ())),
            r.get("guard"),
        )
        for r in d["recursions"]
    ]
    pts = [_point(p) for p in d.get("extreme_points", [])]
    variables = d.get("variables")
    if variables is None:
        variables = [f"x{i + 1}" for i in range(len(pts[0].point))] if pts else []
    return RecurrenceSpec(
        name=d["name"],
        alpha=_frac(d["alpha"]),
        variables=tuple(variables),
        recursions=recs,
        region=list(d.get("region", [])),
        extreme_points=pts,
        beta=None if d.get("beta") is None else _frac(d["beta"]),
        c=None if d.get("c") is None else _frac(d["c"]),
        target=_frac(d.get("target", 1)),
        target_relation=d.get("target_relation", "<"),
        outside=[_point(p) for p in d.get("outside", [])],
    )


def load_specs(path: str | Path) -> list[RecurrenceSpec]:
    """Read one spec object or a list of them from a JSON file."""
    data = json.loads(Path(path).read_text())
    return [spec_from_dict(d) for d in (data if isinstance(data, list) else [data])]


# --------------------------------------------------------------------------
# Built-in library
# --------------------------------------------------------------------------

def _t(coef, fn, arg):
    return {"coef": coef, "fn": fn, "arg": arg}


def _p(point, quoted=None, relation="<"):
    return {"point": point, "quoted": quoted, "relation": relation}


_BINARY = {"alpha": "1.22", "c": 112}
_PERFECT = {"alpha": "1.142", "c": 24}
_TERNARY = {"alpha": "1.55"}
_ORDERED3 = ["0 <= a", "a <= b", "b <= r", "a + b + r <= n"]

LIBRARY: dict[str, list[dict]] = {
    "perfect-binary": [
        {**_PERFECT, "name": "perfect f-2 unlucky", "variables": [],
         "recursions": [{"terms": [_t(2, "g", "n/2"), _t(1, "f", "n/4")], "additive": ["n"]}],
         "extreme_points": [_p([], "0.957")]},
        {**_PERFECT, "name": "perfect f-2 lucky", "variables": [],
         "recursions": [{"terms": [_t(1, "g", "n/2"), _t(1, "g", "n/4"), _t(1, "f", "n/2")]}],
         "extreme_points": [_p([], "0.999")]},
    ],
    "binary": [
        {**_BINARY, "name": "binary case 1 (f-1)", "variables": ["n1", "n2"],
         "region": ["0 <= n1", "n1 <= n2", "n1 + n2 <= n", "n1 <= 0.349*n"],
         "recursions": [{"terms": [_t(2, "f", "n1"), _t(1, "g", "n2")]}],
         "extreme_points": [_p([0, 1], "0.753"), _p(["0.349", "0.651"], "0.9993")]},
        {**_BINARY, "name": "binary case 2 (f-1' then f-1)", "variables": ["n1", "n21", "n22"],
         "region": ["0 <= n1", "0 <= n21", "n21 <= n22", "n1 <= n21 + n22",
                    "n1 + n21 + n22 <= n", "n21 <= 0.082*n"],
         "recursions": [{"terms": [_t(2, "g", "n1"), _t(2, "f", "n21"), _t(1, "g", "n22")]}],
         "extreme_points": [_p([0, 0, 1], "0.753"), _p([0, "0.082", "0.918"], "0.773"),
                            _p(["0.5", 0, "0.5"], "0.969"), _p(["0.5", "0.082", "0.418"], "0.99991")]},
        {**_BINARY, "name": "binary case 3 (f-2 lucky)", "variables": ["n1", "n21", "n2"],
         "region": ["0.349*n <= n1", "n1 <= n2", "n1 + n2 <= n", "0.082*n <= n21", "2*n21 <= n2"],
         "recursions": [{"terms": [_t(1, "g", "n1"), _t(1, "g", "n21"), _t(1, "f", "n2")]}],
         "extreme_points": [_p(["0.5", "0.25", "0.5"], "0.891"), _p(["0.349", "0.3255", "0.651"], "0.992")]},
        {**_BINARY, "name": "binary case 3 (f-2 unlucky)", "variables": ["n1", "n22"],
         "region": ["0.349*n <= n1", "n1 <= 0.5*n", "0 <= n22", "n1 + n22 <= 0.918*n"],
         "recursions": [{"terms": [_t(2, "g", "n1"), _t(1, "f", "n22")], "additive": ["n"]}],
         "extreme_points": [_p(["0.5", "0.418"], "0.991"), _p(["0.349", "0.569"], "0.920")]},
    ],
    "ternary": [
        {**_TERNARY, "name": "ternary case 1 (F4-1)", "variables": ["a", "b", "r"],
         "region": _ORDERED3 + ["b <= 0.47*n"], "target_relation": "<=",
         "recursions": [{"terms": [_t(2, "f", "a"), _t(2, "f", "b"), _t(1, "f", "r")]}],
         "extreme_points": [_p([0, 0, 1], 1, "<="), _p(["1/3", "1/3", "1/3"], "0.911"),
                            _p([0, "0.47", "0.53"], "0.995")]},
        {**_TERNARY, "name": "ternary case 2 (second bound dominates)", "variables": [],
         "target": 0,
         "recursions": [{"terms": [_t(2, "f", "0.265"), _t(-1, "f", "0.47")]}],
         "extreme_points": [_p([])]},
        {**_TERNARY, "name": "ternary claim 1 (last level)", "variables": ["a", "b", "r"],
         "region": _ORDERED3 + ["r <= 0.9*n"], "target": "0.92",
         "recursions": [{"terms": [_t(3, "f", "a"), _t(1, "f", "b"), _t(1, "f", "r")]}],
         "extreme_points": [_p([0, "0.5", "0.5"], "0.685"), _p([0, "0.1", "0.9"], "0.878"),
                            _p(["0.05", "0.05", "0.9"], "0.888"), _p(["1/3", "1/3", "1/3"], "0.911")]},
        {**_TERNARY, "name": "ternary claim 2 (middle levels)", "variables": ["a", "b", "r"],
         "region": _ORDERED3 + ["0.9*n <= r"], "target": "0.92", "target_relation": "<=",
         "recursions": [{"terms": [_t(4, "f", "a"), _t(4, "f", "b"), _t("0.92", "f", "r")]}],
         "extreme_points": [_p([0, 0, 1], "0.92", "<="), _p([0, "0.1", "0.9"], "0.895"),
                            _p(["0.05", "0.05", "0.9"], "0.859")],
         "outside": [_p([0, "0.5", "0.5"]), _p(["1/3", "1/3", "1/3"])]},
        {**_TERNARY, "name": "ternary claim 3 (first level)", "variables": ["a", "b", "r"],
         "region": _ORDERED3 + ["0.47*n <= b"], "target_relation": "<=",
         "recursions": [{"terms": [_t(2, "f", "a"), _t(2, "f", "b"), _t("0.92", "f", "r")]}],
         "extreme_points": [_p(["0.06", "0.47", "0.47"]), _p([0, "0.47", "0.47"]),
                            _p([0, "0.47", "0.53"]), _p([0, "0.5", "0.5"], "0.998")],
         "outside": [_p(["0.08", "0.47", "0.47"], "0.946"), _p([0, 0, 1], "0.92", "<=")]},
    ],
}

FAMILIES = tuple(LIBRARY)


def library_specs(family: str = "all") -> list[RecurrenceSpec]:
    if family == "all":
        return [spec_from_dict(d) for fam in FAMILIES for d in LIBRARY[fam]]
    if family not in LIBRARY:
        raise KeyError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)} or all")
    return [spec_from_dict(d) for d in LIBRARY[family]]
