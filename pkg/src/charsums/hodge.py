"""Closed-form Hodge numbers for character sums on P^n, plus exponent
vectors and their Frobenius orbits.

The generating polynomial H_alpha(t) is assembled from three ingredient
families: rational coefficients a^(l) built from elementary symmetric
functions, degree-(n+1) polynomials A_b(t) divisible by (1-t)^(B+1), and
the operator polynomials Q_b^(alpha)(t) defined by

    t^(-alpha) (t d/dt)^b  t^alpha/(1-t)  =  Q_b^(alpha)(t) / (1-t)^(b+1).

H_alpha(t) = sum over b with B = |b| <= n of A_b(t) * prod_i Q_{b_i}^{(alpha_i)}(t)
divided exactly by (1-t)^(B+1); its coefficients are the Hodge numbers
k^0..k^n attached to the integer d_alpha = sum(alpha_i d_i).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial

from .errors import AdmissibilityError, InexactDivisionError
from .exact import RatPoly, binomial


@dataclass(frozen=True)
class DegreeProfile:
    """Ambient dimension n and the form degrees d_1..d_r."""

    n: int
    degrees: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"ambient dimension must be nonnegative, got {self.n}")
        if len(self.degrees) < 1 or any(d < 1 for d in self.degrees):
            raise ValueError(f"need at least one positive degree, got {self.degrees}")
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))

    @property
    def r(self) -> int:
        return len(self.degrees)

    @property
    def total_degree(self) -> int:
        return sum(self.degrees)


@dataclass(frozen=True)
class ExponentVector:
    """Character data: numerators c_i with 1 <= c_i <= q-2, encoding the
    exponents e_i = c_i/(q-1).  Validates at construction that
    sum(c_i * d_i) is divisible by q-1 (the product of the characters
    raised to the form degrees must be trivial) and that every character
    is nontrivial (c_i != 0)."""

    q: int
    numerators: tuple[int, ...]
    profile: DegreeProfile

    def __post_init__(self):
        cs = tuple(int(c) for c in self.numerators)
        object.__setattr__(self, "numerators", cs)
        if self.q < 3:
            raise ValueError(f"prime power q must be at least 3, got {self.q}")
        if len(cs) != self.profile.r:
            raise AdmissibilityError(
                f"{len(cs)} numerators for {self.profile.r} form degrees")
        if any(c < 1 or c > self.q - 2 for c in cs):
            raise AdmissibilityError(
                f"numerators must lie in 1..q-2 (all characters nontrivial), got {cs}")
        weighted = sum(c * d for c, d in zip(cs, self.profile.degrees))
        if weighted % (self.q - 1) != 0:
            raise AdmissibilityError(
                f"weighted numerator sum {weighted} not divisible by q-1={self.q - 1}; "
                "the product of the characters raised to the form degrees must be trivial")

    @property
    def exponents(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.q - 1) for c in self.numerators)

    def bar(self) -> "ExponentVector":
        """Complementary vector with numerators q-1-c_i."""
        return ExponentVector(self.q, tuple(self.q - 1 - c for c in self.numerators),
                              self.profile)


@dataclass(frozen=True)
class HodgeVector:
    """Coefficients k^0..k^n of H_e(t); all nonnegative integers."""

    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(k) for k in self.entries))
        if any(k < 0 for k in self.entries):
            raise ValueError(f"negative Hodge number in {self.entries}")

    def reversed(self) -> "HodgeVector":
        return HodgeVector(tuple(reversed(self.entries)))

    def total(self) -> int:
        return sum(self.entries)

    def __getitem__(self, j: int) -> int:
        return self.entries[j]

    def __len__(self) -> int:
        return len(self.entries)


def d_of(e: ExponentVector, profile: DegreeProfile) -> int:
    """The integer d_e = sum(e_i * d_i), strictly between 0 and sum(d_i)."""
    weighted = sum(c * d for c, d in zip(e.numerators, profile.degrees))
    if weighted % (e.q - 1) != 0:
        raise AdmissibilityError(
            f"weighted numerator sum {weighted} not divisible by q-1={e.q - 1}")
    return weighted // (e.q - 1)


def elementary_symmetric(values, i: int) -> int:
    """i-th elementary symmetric function of the given integers."""
    values = list(values)
    if i < 0 or i > len(values):
        raise ValueError(f"symmetric function index {i} out of range 0..{len(values)}")
    # DP over prod (1 + v*x) truncated at degree i
    coeffs = [1] + [0] * i
    for v in values:
        for k in range(i, 0, -1):
            coeffs[k] += v * coeffs[k - 1]
    return coeffs[i]


def coeff_a(l: int, b: tuple[int, ...], profile: DegreeProfile) -> Fraction:
    """The rational a^(l)_b for a multi-index b with B = |b| <= n."""
    n = profile.n
    B = sum(b)
    if B > n:
        raise ValueError(f"|b| = {B} exceeds ambient dimension {n}")
    sym = elementary_symmetric([s - l for s in range(1, n + 1)], n - B)
    num = (-1) ** (n - B) * factorial(B) * sym
    den = factorial(n)
    for bi in b:
        den *= factorial(bi)
    val = Fraction(num, den)
    for bi, di in zip(b, profile.degrees):
        val *= di ** bi
    return val


def poly_A(b: tuple[int, ...], profile: DegreeProfile) -> RatPoly:
    """A_b(t) = sum_l (-1)^l C(n+1, l) a^(l)_b t^l, divisible by (1-t)^(B+1)."""
    n = profile.n
    if sum(b) > n:
        raise ValueError(f"|b| = {sum(b)} exceeds ambient dimension {n}")
    return RatPoly([(-1) ** l * binomial(n + 1, l) * coeff_a(l, b, profile)
                    for l in range(n + 2)])


def poly_Q(alpha: Fraction, b: int) -> RatPoly:
    """Q_b^(alpha)(t), via the first-order recurrence
    Q_{b+1} = (1-t)(alpha*Q_b + t*Q_b') + (b+1)*t*Q_b
    (cross-validated against symbolic differentiation in the test suite)."""
    if b < 0:
        raise ValueError(f"order must be nonnegative, got {b}")
    alpha = Fraction(alpha)
    one_minus_t = RatPoly([1, -1])
    t = RatPoly([0, 1])
    Q = RatPoly([1])
    for k in range(b):
        Q = one_minus_t * (Q * alpha + t * Q.derivative()) + (k + 1) * t * Q
    return Q


def poly_H(alpha, profile: DegreeProfile) -> RatPoly:
    """H_alpha(t): degree-n polynomial with nonnegative integer coefficients.

    alpha is a list of Fractions in (0,1) with sum(alpha_i d_i) integral.
    Each summand A_b * prod Q is divided exactly by (1-t)^(B+1); any
    remainder aborts loudly since divisibility is guaranteed.
    """
    alpha = [Fraction(x) for x in alpha]
    if len(alpha) != profile.r:
        raise ValueError(f"{len(alpha)} exponents for {profile.r} degrees")
    if any(not (0 < x < 1) for x in alpha):
        raise AdmissibilityError(f"exponents must lie strictly in (0,1), got {alpha}")
    d_alpha = sum(x * d for x, d in zip(alpha, profile.degrees))
    if d_alpha.denominator != 1:
        raise AdmissibilityError(
            f"sum(alpha_i * d_i) = {d_alpha} is not an integer")
    n = profile.n
    total = RatPoly()
    for b in _multi_indices(profile.r, n):
        B = sum(b)
        summand = poly_A(b, profile)
        for bi, ai in zip(b, alpha):
            summand = summand * poly_Q(ai, bi)
        divisor = RatPoly([1])
        for _ in range(B + 1):
            divisor = divisor * RatPoly([1, -1])
        total = total + summand.divexact(divisor)
    for c in total.coeffs:
        if c.denominator != 1 or c < 0:
            raise InexactDivisionError(
                f"H coefficients must be nonnegative integers, got {list(total.coeffs)}")
    if total.degree is not None and total.degree > n:
        raise InexactDivisionError(f"H has degree {total.degree} > n = {n}")
    return total


@lru_cache(maxsize=None)
def _multi_indices(r: int, n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(b for b in product(range(n + 1), repeat=r) if sum(b) <= n)


def hodge_numbers(e: ExponentVector, profile: DegreeProfile) -> HodgeVector:
    """Hodge vector (k^0..k^n) attached to e: the coefficients of H_e(t)."""
    H = poly_H(list(e.exponents), profile)
    return HodgeVector(tuple(int(H[j]) for j in range(profile.n + 1)))


@lru_cache(maxsize=None)
def hodge_numbers_of_weight(d_value: int, profile: DegreeProfile) -> HodgeVector:
    """Hodge vector as a function of the integer weight d alone (H depends
    only on d_alpha).  Evaluates H at the uniform exponent vector
    alpha_i = d_value / sum(d_j), which has weighted sum d_value and all
    components in (0,1) whenever 0 < d_value < sum(d_i)."""
    if not 0 < d_value < profile.total_degree:
        raise ValueError(
            f"weight {d_value} outside (0, {profile.total_degree})")
    alpha = [Fraction(d_value, profile.total_degree)] * profile.r
    H = poly_H(alpha, profile)
    return HodgeVector(tuple(int(H[j]) for j in range(profile.n + 1)))


def frobenius_step(e: ExponentVector, p: int) -> ExponentVector:
    """e -> e' with numerators p*c_i mod (q-1), representatives in 1..q-2."""
    q1 = e.q - 1
    new = tuple((p * c) % q1 for c in e.numerators)
    return ExponentVector(e.q, new, e.profile)


def frobenius_orbit(e: ExponentVector, p: int, a: int) -> list[ExponentVector]:
    """The orbit e = e^(0), e^(1), ..., e^(a-1); stepping the last element
    returns to e^(0)."""
    if p ** a != e.q:
        raise ValueError(f"q = {e.q} is not {p}^{a}")
    orbit = [e]
    for _ in range(a - 1):
        orbit.append(frobenius_step(orbit[-1], p))
    return orbit
