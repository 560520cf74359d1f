import random
from fractions import Fraction

import pytest

from charsums.hodge import DegreeProfile, ExponentVector
from charsums.polygon import (NewtonPolygon, average, decimal_str, dominates,
                              expected_polygon, from_slope_multiplicities,
                              from_valuation_points, render_polygon)

F = Fraction


def test_constructor_enforces_invariants():
    with pytest.raises(ValueError):
        NewtonPolygon([(1, 0)])  # must start at origin
    with pytest.raises(ValueError):
        NewtonPolygon([(0, 0), (1, 0), (1, 1)])  # x not increasing
    with pytest.raises(ValueError):
        NewtonPolygon([(0, 0), (1, 1), (2, 2)])  # slopes not strictly increasing
    NewtonPolygon([(0, 0)])  # single vertex allowed


def test_from_slope_multiplicities_examples():
    p = from_slope_multiplicities([(0, 1), (1, 10), (2, 1)])
    assert p.vertices == ((0, 0), (1, 0), (11, 10), (12, 12))
    p2 = from_slope_multiplicities([(1, 1)])
    assert p2.vertices == ((0, 0), (1, 1))
    assert from_slope_multiplicities([]).vertices == ((0, 0),)


def test_from_slope_multiplicities_merges_and_drops():
    p = from_slope_multiplicities([(1, 2), (0, 0), (1, 3), (F(1, 2), 1)])
    assert p.vertices == ((0, 0), (1, F(1, 2)), (6, F(11, 2)))
    with pytest.raises(ValueError):
        from_slope_multiplicities([(0, -1)])


def test_from_valuation_points_examples():
    assert from_valuation_points([(0, 0), (1, 1)]).vertices == ((0, 0), (1, 1))
    p = from_valuation_points([(0, 0), (1, 5), (2, 1)])
    assert p.vertices == ((0, 0), (2, 1))
    # polygon of (1-t)(1-qt): valuations 0, 0, 1
    p2 = from_valuation_points([(0, 0), (1, 0), (2, 1)])
    assert [s for s, _ in p2.slope_segments()] == [0, 1]


def test_from_valuation_points_requires_origin():
    with pytest.raises(ValueError):
        from_valuation_points([(1, 0), (2, 1)])
    with pytest.raises(ValueError):
        from_valuation_points([(0, 1), (1, 0)])


def test_from_valuation_points_skips_infinite():
    p = from_valuation_points([(0, 0), (1, None), (2, 1)])
    assert p.vertices == ((0, 0), (2, 1))


def test_average_identity_and_example():
    p = from_slope_multiplicities([(0, 1), (1, 1)])
    assert average([p]) == p
    a = NewtonPolygon([(0, 0), (1, 0), (2, 1)])
    b = NewtonPolygon([(0, 0), (2, 2)])
    avg = average([a, b])
    assert avg.vertices == ((0, 0), (1, F(1, 2)), (2, F(3, 2)))


def _mirror(poly, n):
    """Polygon with slope multiset {n - s}, segment lengths preserved."""
    return from_slope_multiplicities(
        [(n - s, length) for s, length in poly.slope_segments()])


def test_average_of_mirror_pair_is_mirror_symmetric():
    # averaging a polygon with its slope-mirrored partner yields a fixed
    # point of the mirror map (the polygon-level functional equation)
    rng = random.Random(79)
    for _ in range(30):
        n = rng.randint(1, 4)
        ks = [rng.randint(0, 3) for _ in range(n + 1)]
        if not any(ks):
            continue
        a = from_slope_multiplicities([(j, k) for j, k in enumerate(ks)])
        b = _mirror(a, n)
        avg = average([a, b])
        assert _mirror(avg, n) == avg


def test_average_rejects_mismatched_domains():
    with pytest.raises(ValueError):
        average([NewtonPolygon([(0, 0), (1, 1)]), NewtonPolygon([(0, 0), (2, 2)])])


def test_dominates_examples():
    p = from_slope_multiplicities([(0, 1), (1, 1)])
    assert dominates(p, p).holds
    assert dominates(p, p).equal
    up = NewtonPolygon([(0, 0), (1, 1)])
    lo = NewtonPolygon([(0, 0), (1, 0)])
    assert dominates(up, lo).holds
    assert not dominates(up, lo).equal
    # failure with witness at x = 1
    upper = NewtonPolygon([(0, 0), (2, 1)])
    lower = NewtonPolygon([(0, 0), (1, 1), (2, 3)])
    res = dominates(upper, lower)
    assert not res.holds
    assert res.witness_x == 1


def test_dominance_needs_both_breakpoint_sets():
    # equal at the lower polygon's breakpoints but dipping between them
    upper = NewtonPolygon([(0, 0), (1, -1), (2, 0)])
    lower = NewtonPolygon([(0, 0), (2, 0)])
    res = dominates(upper, lower)
    assert not res.holds
    assert res.witness_x == 1


def _random_convex(rng, width):
    slopes = sorted(rng.sample(range(-5, 15), rng.randint(1, 4)))
    parts = [rng.randint(1, 3) for _ in slopes]
    scale = sum(parts)
    pairs = [(F(s), F(m * width, scale)) for s, m in zip(slopes, parts)]
    # fractional multiplicities: build manually
    x, y = F(0), F(0)
    verts = [(x, y)]
    for s, m in pairs:
        x, y = x + m, y + m * s
        verts.append((x, y))
    return NewtonPolygon(verts)


def test_dominates_reflexive_transitive_randomized():
    rng = random.Random(71)
    for _ in range(60):
        w = rng.randint(2, 6)
        a, b, c = (_random_convex(rng, w) for _ in range(3))
        assert dominates(a, a).holds
        if dominates(a, b).holds and dominates(b, c).holds:
            assert dominates(a, c).holds


def test_average_commutes_with_scaling():
    rng = random.Random(73)
    for _ in range(20):
        w = rng.randint(2, 5)
        polys = [_random_convex(rng, w) for _ in range(3)]
        avg = average(polys)
        scaled = average([NewtonPolygon([(x, 3 * y) for x, y in p.vertices])
                          for p in polys])
        assert scaled == NewtonPolygon([(x, 3 * y) for x, y in avg.vertices])


def test_expected_polygon_jacobi_q7():
    prof = DegreeProfile(1, (1, 1, 1))
    e = ExponentVector(7, (1, 2, 3), prof)
    assert expected_polygon(e, prof, 7, 1).vertices == ((0, 0), (1, 1))


def test_expected_polygon_two_cubics():
    prof = DegreeProfile(2, (3, 3))
    e = ExponentVector(7, (3, 3), prof)
    assert expected_polygon(e, prof, 7, 1).vertices == (
        (0, 0), (1, 0), (11, 10), (12, 12))


def test_expected_polygon_orbit_average_q9():
    # orbit {(1,2,5), (3,6,7)}: weights 1 and 2, polygons (0,0)-(1,1) and
    # (0,0)-(1,0); average has a denominator-2 vertex
    prof = DegreeProfile(1, (1, 1, 1))
    e = ExponentVector(9, (1, 2, 5), prof)
    poly = expected_polygon(e, prof, 3, 2)
    assert poly.vertices == ((0, 0), (1, F(1, 2)))


def test_polygon_level_bar_reflection():
    # reversing the multiplicity vector (slope j gets k_{n-j}) reflects the
    # polygon: B(x) = n*x - h + A(w - x)
    rng = random.Random(77)
    for _ in range(30):
        ks = [rng.randint(0, 4) for _ in range(rng.randint(1, 4))]
        if not any(ks):
            continue
        n = len(ks) - 1
        a = from_slope_multiplicities([(j, k) for j, k in enumerate(ks)])
        b = from_slope_multiplicities([(j, ks[n - j]) for j in range(n + 1)])
        w, h = a.width, a.height
        for x in [F(i, 2) for i in range(0, 2 * int(w) + 1)]:
            assert b(x) == n * x - h + a(w - x)


def test_serialization_round_trip():
    p = NewtonPolygon([(0, 0), (1, F(1, 2)), (3, F(7, 2))])
    quads = p.to_quads()
    assert NewtonPolygon.from_quads(quads) == p
    rendered = render_polygon(p)
    assert rendered["vertices"] == [[0, 1, 0, 1], [1, 1, 1, 2], [3, 1, 7, 2]]
    assert rendered["decimal"][1] == ["1", "0.5"]


def test_decimal_str():
    assert decimal_str(F(1, 2)) == "0.5"
    assert decimal_str(F(-1, 3)) == "-0.333333"
    assert decimal_str(F(7)) == "7"
    assert decimal_str(F(1, 7), places=3) == "0.143"
