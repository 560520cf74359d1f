"""Newton polygons as convex piecewise-linear functions with exact
rational vertices.

A polygon is a vertex list starting at (0,0) with strictly increasing x
and strictly increasing slopes between consecutive vertices; the function
it represents is the linear interpolation of the vertices.  Polygons are
stored as vertices (not slope lists) because orbit averaging produces
rational slopes no slope multiset represents cleanly; a slope-multiset
export is provided for reporting.

All comparisons are exact rational arithmetic; no epsilons anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional

from .hodge import DegreeProfile, ExponentVector, frobenius_orbit, hodge_numbers

Point = tuple[Fraction, Fraction]


class DominanceResult(NamedTuple):
    holds: bool
    witness_x: Optional[Fraction]  # a point where upper(x) < lower(x)
    equal: bool  # polygons agree as functions


class NewtonPolygon:
    __slots__ = ("vertices",)

    def __init__(self, vertices) -> None:
        vs = [(Fraction(x), Fraction(y)) for x, y in vertices]
        if not vs:
            raise ValueError("polygon needs at least one vertex")
        if vs[0] != (Fraction(0), Fraction(0)):
            raise ValueError(f"polygon must start at (0,0), got {vs[0]}")
        for (x0, _), (x1, _) in zip(vs, vs[1:]):
            if x1 <= x0:
                raise ValueError("vertex x-coordinates must strictly increase")
        slopes = [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(vs, vs[1:])]
        for s0, s1 in zip(slopes, slopes[1:]):
            if s1 <= s0:
                raise ValueError(f"slopes must strictly increase, got {slopes}")
        self.vertices = tuple(vs)

    @property
    def width(self) -> Fraction:
        return self.vertices[-1][0]

    @property
    def height(self) -> Fraction:
        return self.vertices[-1][1]

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        if x < 0 or x > self.width:
            raise ValueError(f"{x} outside polygon domain [0, {self.width}]")
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            if x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        return self.vertices[-1][1]

    def slope_segments(self) -> list[tuple[Fraction, Fraction]]:
        """(slope, horizontal length) per segment, for reporting."""
        return [((y1 - y0) / (x1 - x0), x1 - x0)
                for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:])]

    def breakpoints(self) -> list[Fraction]:
        return [x for x, _ in self.vertices]

    def to_quads(self) -> list[list[int]]:
        """Exact serialization: [x_num, x_den, y_num, y_den] per vertex."""
        return [[x.numerator, x.denominator, y.numerator, y.denominator]
                for x, y in self.vertices]

    @classmethod
    def from_quads(cls, quads) -> "NewtonPolygon":
        return cls([(Fraction(a, b), Fraction(c, d)) for a, b, c, d in quads])

    def __eq__(self, other):
        if not isinstance(other, NewtonPolygon):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        pts = ", ".join(f"({x},{y})" for x, y in self.vertices)
        return f"NewtonPolygon[{pts}]"


def _canonical_vertices(points: list[Point]) -> list[Point]:
    # drop interior points lying on the segment through their neighbours
    out: list[Point] = []
    for p in points:
        while len(out) >= 2:
            (x0, y0), (x1, y1) = out[-2], out[-1]
            # keep only strictly convex corners
            if (y1 - y0) * (p[0] - x1) >= (p[1] - y1) * (x1 - x0):
                out.pop()
            else:
                break
        out.append(p)
    return out


def from_slope_multiplicities(pairs) -> NewtonPolygon:
    """Polygon whose slope-s segment has the given horizontal multiplicity.
    Zero multiplicities are dropped; equal slopes merged; slopes sorted."""
    merged: dict[Fraction, int] = {}
    for slope, mult in pairs:
        if mult < 0:
            raise ValueError(f"negative multiplicity {mult} at slope {slope}")
        if mult:
            key = Fraction(slope)
            merged[key] = merged.get(key, 0) + int(mult)
    x, y = Fraction(0), Fraction(0)
    vertices = [(x, y)]
    for slope in sorted(merged):
        mult = merged[slope]
        x, y = x + mult, y + mult * slope
        vertices.append((x, y))
    return NewtonPolygon(vertices)


def from_valuation_points(points) -> NewtonPolygon:
    """Lower convex hull of (index, valuation) pairs; a valuation of None
    means +infinity (zero coefficient) and is excluded from the hull.
    The point at index 0 must be present with valuation 0."""
    finite = sorted((int(i), Fraction(v)) for i, v in points if v is not None)
    if not finite or finite[0][0] != 0 or finite[0][1] != 0:
        raise ValueError("valuation points must include index 0 with valuation 0")
    seen = set()
    for i, _ in finite:
        if i in seen:
            raise ValueError(f"duplicate index {i}")
        seen.add(i)
    hull: list[Point] = []
    for px, py in ((Fraction(i), v) for i, v in finite):
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            # pop while the middle point is on or above the chord
            if (y1 - y0) * (px - x0) >= (py - y0) * (x1 - x0):
                hull.pop()
            else:
                break
        hull.append((px, py))
    return NewtonPolygon(hull)


def average(polys) -> NewtonPolygon:
    """Pointwise average of convex piecewise-linear functions sharing a
    domain; breakpoints are the union of the inputs' breakpoints."""
    polys = list(polys)
    if not polys:
        raise ValueError("cannot average zero polygons")
    width = polys[0].width
    for p in polys[1:]:
        if p.width != width:
            raise ValueError(f"polygon domains differ: {p.width} vs {width}")
    xs = sorted({x for p in polys for x in p.breakpoints()})
    k = len(polys)
    pts = [(x, sum(p(x) for p in polys) / k) for x in xs]
    return NewtonPolygon(_canonical_vertices(pts))


def dominates(upper: NewtonPolygon, lower: NewtonPolygon) -> DominanceResult:
    """Whether upper(x) >= lower(x) throughout the common domain.

    For convex piecewise-linear functions this is exact when checked at
    the union of both polygons' breakpoints (checking only one side's
    breakpoints is not sufficient).  On failure the witness is a
    breakpoint where the upper polygon dips below.
    """
    if upper.width != lower.width:
        raise ValueError(f"polygon domains differ: {upper.width} vs {lower.width}")
    xs = sorted(set(upper.breakpoints()) | set(lower.breakpoints()))
    witness = None
    equal = True
    for x in xs:
        du = upper(x)
        dl = lower(x)
        if du < dl and witness is None:
            witness = x
        if du != dl:
            equal = False
    return DominanceResult(witness is None, witness, equal and witness is None)


def expected_polygon(e: ExponentVector, profile: DegreeProfile, p: int, a: int) -> NewtonPolygon:
    """Predicted lower-bound polygon: for each orbit member e^(i) take the
    polygon with slope-j multiplicity equal to entry j of its Hodge vector,
    then average over the orbit.  Total horizontal length is H_e(1)."""
    orbit = frobenius_orbit(e, p, a)
    polys = []
    for ei in orbit:
        k = hodge_numbers(ei, profile)
        polys.append(from_slope_multiplicities(
            [(Fraction(j), k[j]) for j in range(len(k))]))
    return average(polys)


def decimal_str(x: Fraction, places: int = 6) -> str:
    """Exact fixed-point decimal rendering (round half away from zero),
    trailing zeros trimmed; deterministic across platforms."""
    sign = "-" if x < 0 else ""
    num, den = abs(x.numerator), x.denominator
    scaled, rem = divmod(num * 10 ** places, den)
    if 2 * rem >= den:
        scaled += 1
    digits = str(scaled).rjust(places + 1, "0")
    head, tail = digits[:-places], digits[-places:]
    tail = tail.rstrip("0")
    return f"{sign}{head}.{tail}" if tail else f"{sign}{head}"


def render_polygon(poly: NewtonPolygon) -> dict:
    """Report-ready form: exact vertex quadruples plus decimal rendering."""
    return {
        "vertices": poly.to_quads(),
        "decimal": [[decimal_str(x), decimal_str(y)] for x, y in poly.vertices],
        "slopes": [[decimal_str(s), decimal_str(w)] for s, w in poly.slope_segments()],
    }
