"""Exact planar primitives: points, rectangles, half-grid lines, dominance layers
and the 8-element group of axis symmetries.

All coordinates are ints or ``fractions.Fraction``; nothing here touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

Scalar = Union[int, Fraction]


class DuplicateCoordinate(ValueError):
    def __init__(self, axis: str, value: Scalar) -> None:
        super().__init__(f"two points share {axis} = {value}")
        self.axis = axis
        self.value = value


class Insufficient(ValueError):
    def __init__(self, have: int, need: int) -> None:
        super().__init__(f"only {have} points available, {need} needed")
        self.have = have
        self.need = need


class Point(NamedTuple):
    x: Scalar
    y: Scalar


def exact(value: Union[str, int, Fraction]) -> Scalar:
    """Parse ``value`` as an exact scalar, collapsing integral fractions to int."""
    if isinstance(value, bool):
        raise TypeError("bool is not a coordinate")
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        raise TypeError("floating-point coordinates are not accepted")
    q = Fraction(value)
    return q.numerator if q.denominator == 1 else q


def midpoint(a: Scalar, b: Scalar) -> Scalar:
    return exact(Fraction(a) / 2 + Fraction(b) / 2)


class PointSet(Sequence[Point]):
    """Immutable point sequence in general orthogonal position.

    ``x_rank[i]`` / ``y_rank[i]`` give the rank of point ``i`` among all x / y
    coordinates.
    """

    __slots__ = ("_points", "x_rank", "y_rank")

    def __init__(self, points: Iterable[Sequence[Scalar]] = (), *, check: bool = True) -> None:
        pts = tuple(Point(exact(p[0]), exact(p[1])) for p in points)
        self._points = pts
        if check:
            assert_general_position(pts)
        by_x = sorted(range(len(pts)), key=lambda i: pts[i].x)
        by_y = sorted(range(len(pts)), key=lambda i: pts[i].y)
        xr = [0] * len(pts)
        yr = [0] * len(pts)
        for r, i in enumerate(by_x):
            xr[i] = r
        for r, i in enumerate(by_y):
            yr[i] = r
        self.x_rank = tuple(xr)
        self.y_rank = tuple(yr)

    def __len__(self) -> int:
        return len(self._points)

    def __getitem__(self, i):  # type: ignore[override]
        return self._points[i]

    def __iter__(self) -> Iterator[Point]:
        return iter(self._points)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PointSet):
            return self._points == other._points
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._points)

    def __repr__(self) -> str:
        return f"PointSet({list(map(tuple, self._points))})"

    @property
    def points(self) -> tuple[Point, ...]:
        return self._points

    def sorted_by_x(self) -> list[Point]:
        return sorted(self._points)

    def sorted_by_y(self) -> list[Point]:
        return sorted(self._points, key=lambda p: p.y)

    def normalized(self) -> "PointSet":
        """Replace every coordinate by twice its rank, so half-grid lines sit on odd integers."""
        return PointSet(
            [(2 * self.x_rank[i], 2 * self.y_rank[i]) for i in range(len(self))], check=False
        )


def assert_general_position(points: Iterable[Sequence[Scalar]]) -> None:
    seen_x: set = set()
    seen_y: set = set()
    for p in points:
        x, y = p[0], p[1]
        if x in seen_x:
            raise DuplicateCoordinate("x", x)
        if y in seen_y:
            raise DuplicateCoordinate("y", y)
        seen_x.add(x)
        seen_y.add(y)


# --------------------------------------------------------------------------
# Rectangles and half-grid lines
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Rect:
    """Axis-parallel rectangle; ``None`` bounds are infinite.

    By default the low sides are closed and the high sides open, so that
    rectangles cut along a common line partition the plane exactly.
    """

    x_lo: Scalar | None = None
    x_hi: Scalar | None = None
    y_lo: Scalar | None = None
    y_hi: Scalar | None = None
    lo_closed: bool = True
    hi_closed: bool = False

    def __post_init__(self) -> None:
        if self.x_lo is not None and self.x_hi is not None and not self.x_lo < self.x_hi:
            raise ValueError("empty x-range")
        if self.y_lo is not None and self.y_hi is not None and not self.y_lo < self.y_hi:
            raise ValueError("empty y-range")

    def _in(self, v: Scalar, lo: Scalar | None, hi: Scalar | None) -> bool:
        if lo is not None and (v < lo or (v == lo and not self.lo_closed)):
            return False
        if hi is not None and (v > hi or (v == hi and not self.hi_closed)):
            return False
        return True

    def contains(self, p: Sequence[Scalar]) -> bool:
        return self._in(p[0], self.x_lo, self.x_hi) and self._in(p[1], self.y_lo, self.y_hi)

    def select(self, points: Iterable[Point]) -> list[Point]:
        return [p for p in points if self.contains(p)]


@dataclass(frozen=True)
class HalfGridLine:
    orientation: str  # "horizontal" | "vertical"
    position: Scalar


@dataclass(frozen=True)
class Split:
    h: HalfGridLine
    q_left: list[Point]
    q_right: list[Point]
    q_below: list[Point]
    side: str | None  # side that reached the requested count ("left"/"right"), None if need == 0


def split_by_half_grid(
    points: Iterable[Point], apex_x: Scalar, need: int, side: str = "either"
) -> Split:
    """Sweep a horizontal half-grid line downward from above all points and stop
    at the highest position where the chosen side of ``x = apex_x`` holds
    ``need`` points.  Points above the line go to ``q_left``/``q_right``, the rest
    to ``q_below``.
    """
    if side not in ("left", "right", "either"):
        raise ValueError(f"bad side {side!r}")
    pts = sorted(points, key=lambda p: p.y, reverse=True)
    if any(p.x == apex_x for p in pts):
        raise ValueError("apex_x coincides with a point")
    if need <= 0:
        top = pts[0].y + 1 if pts else 0
        return Split(HalfGridLine("horizontal", top), [], [], pts, None)
    left: list[Point] = []
    right: list[Point] = []
    for i, p in enumerate(pts):
        (left if p.x < apex_x else right).append(p)
        hit = None
        if side in ("left", "either") and len(left) == need:
            hit = "left"
        elif side in ("right", "either") and len(right) == need:
            hit = "right"
        if hit is not None:
            below = pts[i + 1:]
            pos = midpoint(p.y, below[0].y) if below else p.y - 1
            return Split(HalfGridLine("horizontal", pos), left, right, below, hit)
    have = {"left": len(left), "right": len(right), "either": max(len(left), len(right))}[side]
    raise Insufficient(have, need)


# --------------------------------------------------------------------------
# Dominance layers
# --------------------------------------------------------------------------

# Direction in which a predecessor lies.  "SW" is x1 < x2 and y1 < y2
# (the top-side order); "NW" is x1 < x2 and y1 > y2 (the bottom-side order).
_QUADRANT_SIGNS = {"SW": (1, 1), "NW": (1, -1), "SE": (-1, 1), "NE": (-1, -1)}
ORDER_ALIASES = {"T": "SW", "B": "NW", "T_reflected": "SE", "B_reflected": "NE"}


def minimal_layer(points: Iterable[Point], order: str = "SW") -> list[Point]:
    """Points with no predecessor in the quadrant named by ``order``.

    The result is returned sorted by x and forms a monotone staircase.
    """
    order = ORDER_ALIASES.get(order, order)
    sx, sy = _QUADRANT_SIGNS[order]
    pts = sorted(points, key=lambda p: sx * p.x)
    out = []
    best = None
    for p in pts:
        v = sy * p.y
        if best is None or v < best:
            out.append(p)
            best = v
    return sorted(out)


def dominance_layers(points: Iterable[Point], order: str = "SW") -> list[list[Point]]:
    rest = list(points)
    layers = []
    while rest:
        layer = minimal_layer(rest, order)
        chosen = set(layer)
        rest = [p for p in rest if p not in chosen]
        layers.append(layer)
    return layers


def is_chain(points: Sequence[Point]) -> bool:
    """True if the points, sorted by x, are strictly monotone in y."""
    pts = sorted(points)
    if len(pts) <= 2:
        return True
    up = pts[1].y > pts[0].y
    return all((b.y > a.y) == up for a, b in zip(pts, pts[1:]))


# --------------------------------------------------------------------------
# Symmetries
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Symmetry:
    """Signed permutation matrix ``[[a, b], [c, d]]`` acting on column vectors."""

    a: int = 1
    b: int = 0
    c: int = 0
    d: int = 1

    def __post_init__(self) -> None:
        ok = {(abs(self.a), abs(self.b), abs(self.c), abs(self.d))} <= {(1, 0, 0, 1), (0, 1, 1, 0)}
        if not ok:
            raise ValueError("not an axis symmetry")

    def __call__(self, p: Sequence[Scalar]) -> Point:
        x, y = p[0], p[1]
        return Point(self.a * x + self.b * y, self.c * x + self.d * y)

    def __matmul__(self, other: "Symmetry") -> "Symmetry":
        """``(s @ t)(p) == s(t(p))``."""
        return Symmetry(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Symmetry":
        return Symmetry(self.a, self.c, self.b, self.d)

    @property
    def swaps_axes(self) -> bool:
        return self.b != 0

    def direction(self, d: str) -> str:
        """Image of a unit direction ("up", "down", "left", "right")."""
        return _DIR_NAMES[self(_DIR_VECTORS[d])]


_DIR_VECTORS = {"right": (1, 0), "up": (0, 1), "left": (-1, 0), "down": (0, -1)}
_DIR_NAMES = {Point(*v): k for k, v in _DIR_VECTORS.items()}

IDENTITY = Symmetry()
REFLECT_X = Symmetry(-1, 0, 0, 1)  # x -> -x
REFLECT_Y = Symmetry(1, 0, 0, -1)
ROTATE_90 = Symmetry(0, -1, 1, 0)  # counterclockwise
ROTATE_180 = Symmetry(-1, 0, 0, -1)
TRANSPOSE = Symmetry(0, 1, 1, 0)
ALL_SYMMETRIES = tuple(
    Symmetry(a, b, c, d)
    for a, b, c, d in [
        (1, 0, 0, 1), (-1, 0, 0, 1), (1, 0, 0, -1), (-1, 0, 0, -1),
        (0, 1, 1, 0), (0, -1, 1, 0), (0, 1, -1, 0), (0, -1, -1, 0),
    ]
)


def symmetry_mapping(src: str, dst: str, keep: tuple[str, str] | None = None) -> Symmetry:
    """A symmetry sending direction ``src`` to ``dst``; if ``keep`` is given it
    also sends ``keep[0]`` to ``keep[1]``."""
    for s in ALL_SYMMETRIES:
        if s.direction(src) == dst and (keep is None or s.direction(keep[0]) == keep[1]):
            return s
    raise ValueError(f"no symmetry maps {src}->{dst} with {keep}")


def apply_symmetry(s: Symmetry, obj):
    """Transform a Point, PointSet, Rect, Drawing or iterable of points."""
    if isinstance(obj, Point) or (isinstance(obj, tuple) and len(obj) == 2 and not isinstance(obj[0], tuple)):
        return s(obj)
    if isinstance(obj, PointSet):
        return PointSet([s(p) for p in obj], check=False)
    if isinstance(obj, Rect):
        return _transform_rect(s, obj)
    if hasattr(obj, "transformed"):
        return obj.transformed(s)
    return [s(p) for p in obj]


def _transform_rect(s: Symmetry, r: Rect) -> Rect:
    def scaled(lo, hi, sign):
        if sign > 0:
            return lo, hi
        return (None if hi is None else -hi), (None if lo is None else -lo)

    if s.swaps_axes:
        nx = scaled(r.y_lo, r.y_hi, s.b)
        ny = scaled(r.x_lo, r.x_hi, s.c)
    else:
        nx = scaled(r.x_lo, r.x_hi, s.a)
        ny = scaled(r.y_lo, r.y_hi, s.d)
    # A negated closed-low side becomes a closed-high side; keep the partition
    # convention only when no side flipped.
    flipped = (s.b if s.swaps_axes else s.a) < 0 or (s.c if s.swaps_axes else s.d) < 0
    lo_c, hi_c = (r.hi_closed, r.lo_closed) if flipped else (r.lo_closed, r.hi_closed)
    return Rect(nx[0], nx[1], ny[0], ny[1], lo_c, hi_c)


# --------------------------------------------------------------------------
# Point-set files
# --------------------------------------------------------------------------

def parse_points(text: str) -> PointSet:
    pts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected '<x> <y>', got {raw!r}")
        try:
            pts.append((exact(parts[0]), exact(parts[1])))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return PointSet(pts)


def format_points(ps: Iterable[Sequence[Scalar]]) -> str:
    return "".join(f"{p[0]} {p[1]}\n" for p in ps)


def read_points(path: str | Path) -> PointSet:
    return parse_points(Path(path).read_text(encoding="utf-8"))


def write_points(path: str | Path, ps: Iterable[Sequence[Scalar]]) -> None:
    Path(path).write_text(format_points(ps), encoding="utf-8")
