import random
from fractions import Fraction

import pytest
import sympy

from charsums.errors import AdmissibilityError
from charsums.exact import RatPoly
from charsums.hodge import (DegreeProfile, ExponentVector, HodgeVector,
                            coeff_a, d_of, elementary_symmetric,
                            frobenius_orbit, frobenius_step, hodge_numbers,
                            hodge_numbers_of_weight, poly_A, poly_H, poly_Q)

F = Fraction


# --- d_of -------------------------------------------------------------------

def test_d_of_examples():
    prof = DegreeProfile(1, (1, 1, 1))
    assert d_of(ExponentVector(7, (1, 2, 3), prof), prof) == 1
    prof33 = DegreeProfile(2, (3, 3))
    assert d_of(ExponentVector(7, (3, 3), prof33), prof33) == 3
    prof5 = DegreeProfile(1, (1, 1, 1))
    assert d_of(ExponentVector(5, (1, 1, 2), prof5), prof5) == 1


def test_inadmissible_rejected():
    prof = DegreeProfile(1, (1, 1))
    with pytest.raises(AdmissibilityError):
        ExponentVector(7, (1, 2), prof)  # 1+2 = 3 not divisible by 6
    with pytest.raises(AdmissibilityError):
        ExponentVector(7, (0, 6), prof)  # trivial character
    with pytest.raises(AdmissibilityError):
        ExponentVector(7, (6, 6), prof)  # out of 1..q-2


def test_d_of_strictly_between_0_and_total():
    rng = random.Random(11)
    for _ in range(50):
        r = rng.randint(1, 4)
        degrees = tuple(rng.randint(1, 5) for _ in range(r))
        prof = DegreeProfile(rng.randint(1, 3), degrees)
        q = rng.choice([5, 7, 9, 11, 13])
        e = _random_admissible(rng, q, prof)
        if e is None:
            continue
        d = d_of(e, prof)
        assert 0 < d < sum(degrees)


def _random_admissible(rng, q, prof, tries=200):
    q1 = q - 1
    for _ in range(tries):
        cs = [rng.randint(1, q - 2) for _ in range(prof.r - 1)]
        partial = sum(c * d for c, d in zip(cs, prof.degrees))
        d_r = prof.degrees[-1]
        for last in range(1, q - 1):
            if (partial + last * d_r) % q1 == 0:
                return ExponentVector(q, tuple(cs + [last]), prof)
    return None


# --- elementary symmetric ---------------------------------------------------

def test_elementary_symmetric_examples():
    assert elementary_symmetric([5, 9, 2], 0) == 1
    assert elementary_symmetric([1, 2, 3], 2) == 11
    with pytest.raises(ValueError):
        elementary_symmetric([1, 2], 3)


def test_symmetric_full_product_oracle():
    # S_n(1-l, ..., n-l) = prod_{s=1..n} (s - l)
    for n in range(1, 7):
        for l in range(-3, 9):
            vals = [s - l for s in range(1, n + 1)]
            prod = 1
            for v in vals:
                prod *= v
            assert elementary_symmetric(vals, n) == prod


# --- coeff_a ----------------------------------------------------------------

def test_coeff_a_n1_zero_b():
    prof = DegreeProfile(1, (1, 1))
    for l in range(0, 4):
        assert coeff_a(l, (0, 0), prof) == l - 1


def test_coeff_a_B_equals_n_is_multinomial():
    # B = n: value is multinomial(b) * prod d_i^{b_i} / ... independent of l
    from math import factorial
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(1, 4)
        r = rng.randint(1, 3)
        degrees = tuple(rng.randint(1, 4) for _ in range(r))
        prof = DegreeProfile(n, degrees)
        b = _random_b(rng, r, n, exact=True)
        vals = {coeff_a(l, b, prof) for l in range(n + 2)}
        assert len(vals) == 1  # independent of l
        num = factorial(n)
        for bi in b:
            num //= factorial(bi)
        for bi, di in zip(b, degrees):
            num *= di ** bi
        assert vals.pop() == F(num, factorial(n))
    # explicit numeric check for one case: 2!/(2! 1! 1!) * 2 * 3
    prof = DegreeProfile(2, (2, 3))
    assert coeff_a(0, (1, 1), prof) == 6


def _random_b(rng, r, n, exact=False):
    while True:
        b = tuple(rng.randint(0, n) for _ in range(r))
        if exact and sum(b) == n:
            return b
        if not exact and sum(b) <= n:
            return b


def test_coeff_a_symmetry_paper_identity():
    # a^{(n+1-l)} = (-1)^{n-B} a^{(l)}
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(1, 5)
        r = rng.randint(1, 3)
        prof = DegreeProfile(n, tuple(rng.randint(1, 5) for _ in range(r)))
        b = _random_b(rng, r, n)
        B = sum(b)
        for l in range(0, n + 2):
            assert coeff_a(n + 1 - l, b, prof) == (-1) ** (n - B) * coeff_a(l, b, prof)


# --- poly_A ------------------------------------------------------------------

def test_poly_A_n1_examples():
    prof = DegreeProfile(1, (4, 9))
    assert poly_A((0, 0), prof) == RatPoly([-1, 0, 1])  # -(1-t)(1+t)
    assert poly_A((1, 0), prof) == RatPoly([4, -8, 4])  # d_1 (1-t)^2
    assert poly_A((0, 1), prof) == RatPoly([9, -18, 9])


def test_poly_A_B_equals_n_binomial():
    from math import factorial
    rng = random.Random(9)
    for _ in range(25):
        n = rng.randint(1, 4)
        r = rng.randint(1, 3)
        degrees = tuple(rng.randint(1, 4) for _ in range(r))
        prof = DegreeProfile(n, degrees)
        b = _random_b(rng, r, n, exact=True)
        num = factorial(n)
        for bi in b:
            num //= factorial(bi)
        for bi, di in zip(b, degrees):
            num *= di ** bi
        one_minus_t = RatPoly([1, -1])
        expect = RatPoly([F(num, factorial(n))])
        for _ in range(n + 1):
            expect = expect * one_minus_t
        assert poly_A(b, prof) == expect


def test_poly_A_divisibility_randomized():
    rng = random.Random(17)
    for _ in range(200):
        n = rng.randint(1, 6)
        r = rng.randint(1, 4)
        prof = DegreeProfile(n, tuple(rng.randint(1, 6) for _ in range(r)))
        b = _random_b(rng, r, n)
        B = sum(b)
        divisor = RatPoly([1])
        for _ in range(B + 1):
            divisor = divisor * RatPoly([1, -1])
        poly_A(b, prof).divexact(divisor)  # raises if inexact


# --- poly_Q ------------------------------------------------------------------

def test_poly_Q_closed_forms():
    a = F(2, 7)
    assert poly_Q(a, 0) == RatPoly([1])
    assert poly_Q(a, 1) == RatPoly([a, 1 - a])
    assert poly_Q(a, 2) == RatPoly([a * a, 1 + 2 * a - 2 * a * a, (1 - a) ** 2])


def test_poly_Q_matches_symbolic_differentiation():
    # the defining identity t^(-alpha) (t d/dt)^b t^alpha/(1-t)
    #   = Q_b / (1-t)^(b+1), validated for b <= 5 by symbolic
    # differentiation (sympy) and exact evaluation at rational points
    t = sympy.Symbol("t", positive=True)
    for av in (F(1, 2), F(2, 5), F(3, 7)):
        alpha = sympy.Rational(av.numerator, av.denominator)
        expr = t ** alpha / (1 - t)
        for b in range(0, 6):
            lhs = t ** (-alpha) * expr
            Q = poly_Q(av, b)
            for tv in (F(1, 3), F(2, 7), F(5, 11)):
                tr = sympy.Rational(tv.numerator, tv.denominator)
                left = sympy.radsimp(lhs.subs(t, tr))
                right = sympy.Rational(Q(tv).numerator, Q(tv).denominator) / \
                    (1 - tr) ** (b + 1)
                assert sympy.simplify(left - right) == 0, f"b={b}, alpha={av}, t={tv}"
            expr = t * sympy.diff(expr, t)


def test_poly_Q_reversal_property():
    rng = random.Random(23)
    for b in range(0, 11):
        for _ in range(4):
            a = F(rng.randint(1, 9), rng.randint(10, 13))
            lhs = poly_Q(a, b).reverse(b)
            assert lhs == poly_Q(1 - a, b)


# --- poly_H ------------------------------------------------------------------

def test_poly_H_n1_closed_form():
    rng = random.Random(31)
    for _ in range(40):
        r = rng.randint(1, 4)
        degrees = tuple(rng.randint(1, 5) for _ in range(r))
        prof = DegreeProfile(1, degrees)
        alpha = _random_alpha(rng, degrees)
        if alpha is None:
            continue
        d_a = int(sum(x * d for x, d in zip(alpha, degrees)))
        H = poly_H(alpha, prof)
        assert H[0] == d_a - 1
        assert H[1] == sum(degrees) - d_a - 1


def _random_alpha(rng, degrees, tries=300):
    q1 = rng.choice([6, 8, 10, 12])
    r = len(degrees)
    for _ in range(tries):
        ks = [rng.randint(1, q1 - 1) for _ in range(r - 1)]
        partial = sum(k * d for k, d in zip(ks, degrees))
        for last in range(1, q1):
            if (partial + last * degrees[-1]) % q1 == 0:
                return [F(k, q1) for k in ks + [last]]
    return None


def test_poly_H_printed_example_two_cubics():
    prof = DegreeProfile(2, (3, 3))
    H = poly_H([F(1, 2), F(1, 2)], prof)
    assert list(H.coeffs) == [1, 10, 1]


def test_poly_H_n2_line_conic():
    prof = DegreeProfile(2, (1, 2))
    # d_alpha = 1
    H = poly_H([F(1, 3), F(1, 3)], prof)
    assert [H[0], H[1], H[2]] == [0, 1, 0]
    # d_alpha = 2 gives the same by the functional equation
    H2 = poly_H([F(2, 3), F(2, 3)], prof)
    assert [H2[0], H2[1], H2[2]] == [0, 1, 0]


def _n2_closed_forms(d_e, degrees):
    sd = sum(degrees)
    half = sum(d * (d - 3) for d in degrees)
    assert half % 2 == 0
    pair = sum(degrees[i] * degrees[j] for i in range(len(degrees))
               for j in range(i + 1, len(degrees)))
    k0 = (d_e - 1) * (d_e - 2) // 2
    k1 = 1 - d_e * d_e + d_e * sd + half // 2
    k2 = (d_e + 1) * (d_e + 2) // 2 - d_e * sd + half // 2 + pair
    return [k0, k1, k2]


def test_poly_H_n2_closed_forms_randomized():
    rng = random.Random(37)
    checked = 0
    while checked < 50:
        r = rng.randint(1, 3)
        degrees = tuple(rng.randint(1, 5) for _ in range(r))
        prof = DegreeProfile(2, degrees)
        alpha = _random_alpha(rng, degrees)
        if alpha is None:
            continue
        d_a = int(sum(x * d for x, d in zip(alpha, degrees)))
        H = poly_H(alpha, prof)
        assert [int(H[j]) for j in range(3)] == _n2_closed_forms(d_a, degrees)
        checked += 1


def test_poly_H_functional_equation():
    rng = random.Random(41)
    for _ in range(60):
        n = rng.randint(1, 6)
        r = rng.randint(1, 3)
        degrees = tuple(rng.randint(1, 6) for _ in range(r))
        prof = DegreeProfile(n, degrees)
        alpha = _random_alpha(rng, degrees)
        if alpha is None:
            continue
        H = poly_H(alpha, prof)
        Hbar = poly_H([1 - x for x in alpha], prof)
        assert Hbar == H.reverse(n)


def test_poly_H_depends_only_on_weight():
    prof = DegreeProfile(3, (2, 3))
    a1 = [F(1, 2), F(1, 3)]   # weight 2
    a2 = [F(1, 4), F(1, 2)]   # weight 2
    assert sum(x * d for x, d in zip(a1, prof.degrees)) == 2
    assert sum(x * d for x, d in zip(a2, prof.degrees)) == 2
    assert poly_H(a1, prof) == poly_H(a2, prof)


def test_degree_sum_invariance_and_euler_characteristic():
    rng = random.Random(43)
    profiles = 0
    while profiles < 20:
        n = rng.randint(1, 2)
        r = rng.randint(1, 3)
        degrees = tuple(rng.randint(1, 4) for _ in range(r))
        prof = DegreeProfile(n, degrees)
        if sum(degrees) < 2:
            continue
        totals = set()
        for w in range(1, sum(degrees)):
            totals.add(hodge_numbers_of_weight(w, prof).total())
        if not totals:
            continue
        assert len(totals) == 1
        total = totals.pop()
        if n == 1:
            assert total == abs(2 - sum(degrees))
        else:
            chi = 3 - sum(3 * d - d * d for d in degrees) + sum(
                degrees[i] * degrees[j] for i in range(r) for j in range(i + 1, r))
            assert total == abs(chi)
        profiles += 1


def test_two_transversal_cubics_euler_characteristic_is_12():
    prof = DegreeProfile(2, (3, 3))
    assert hodge_numbers_of_weight(3, prof).total() == 12


# --- hodge_numbers / frobenius ------------------------------------------------

def test_hodge_numbers_examples():
    prof33 = DegreeProfile(2, (3, 3))
    e = ExponentVector(7, (3, 3), prof33)
    assert hodge_numbers(e, prof33).entries == (1, 10, 1)

    prof111 = DegreeProfile(1, (1, 1, 1))
    e1 = ExponentVector(7, (1, 2, 3), prof111)
    assert hodge_numbers(e1, prof111).entries == (0, 1)

    prof12 = DegreeProfile(2, (1, 2))
    assert hodge_numbers_of_weight(2, prof12).entries == (0, 1, 0)


def test_hodge_vector_reversal_under_bar():
    rng = random.Random(47)
    for _ in range(25):
        r = rng.randint(1, 3)
        degrees = tuple(rng.randint(1, 4) for _ in range(r))
        n = rng.randint(1, 3)
        prof = DegreeProfile(n, degrees)
        q = rng.choice([5, 7, 9, 13])
        e = _random_admissible(rng, q, prof)
        if e is None:
            continue
        k = hodge_numbers(e, prof)
        kbar = hodge_numbers(e.bar(), prof)
        assert kbar.entries == tuple(reversed(k.entries))


def test_frobenius_step_examples():
    prof = DegreeProfile(1, (1, 1, 1))
    e = ExponentVector(7, (1, 2, 3), prof)
    assert frobenius_step(e, 7).numerators == (1, 2, 3)

    prof9 = DegreeProfile(1, (1, 1))
    e9 = ExponentVector(9, (1, 7), prof9)
    assert frobenius_step(e9, 3).numerators == (3, 5)


def test_frobenius_orbit_examples():
    prof = DegreeProfile(1, (1, 1, 1))
    e = ExponentVector(7, (1, 2, 3), prof)
    assert len(frobenius_orbit(e, 7, 1)) == 1

    prof9 = DegreeProfile(1, (1, 1))
    e9 = ExponentVector(9, (1, 7), prof9)
    orbit = frobenius_orbit(e9, 3, 2)
    assert [o.numerators for o in orbit] == [(1, 7), (3, 5)]
    assert frobenius_step(orbit[-1], 3).numerators == (1, 7)


def test_orbit_of_bar_is_bar_of_orbit():
    rng = random.Random(53)
    for _ in range(30):
        q, p, a = rng.choice([(9, 3, 2), (25, 5, 2), (27, 3, 3)])
        r = rng.randint(1, 3)
        prof = DegreeProfile(1, tuple(rng.randint(1, 3) for _ in range(r)))
        e = _random_admissible(rng, q, prof)
        if e is None:
            continue
        orbit = frobenius_orbit(e, p, a)
        orbit_bar = frobenius_orbit(e.bar(), p, a)
        assert [o.bar().numerators for o in orbit] == [o.numerators for o in orbit_bar]


def test_hodge_vector_validation():
    with pytest.raises(ValueError):
        HodgeVector((1, -1))
