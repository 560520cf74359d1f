"""Exact arithmetic substrate: rationals, dense polynomials, truncated
power series, and cyclotomic integers.

Rationals are `fractions.Fraction` throughout (always reduced, positive
denominator).  Polynomials are dense coefficient lists over Fraction with
no trailing zeros; the degree of the zero polynomial is the sentinel
`None`, never an integer.  Cyclotomic elements live in Q(zeta_N)
represented modulo the N-th cyclotomic polynomial Phi_N; character-sum
values are always integral (see `CycloElem.is_integral`).

No floating point enters any computation here except
`complex_embeddings`, which is explicitly approximate (mpmath at a caller
chosen working precision).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import mpmath

from .errors import InexactDivisionError, ModulusMismatchError

_PHI_CACHE: dict[int, tuple[int, ...]] = {}


def _intpoly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den monic; plain long division over Z
    num = list(num)
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return [], num
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c == 0:
            continue
        quot[i - dn] = c
        for j, d in enumerate(den):
            num[i - dn + j] -= c * d
    while num and num[-1] == 0:
        num.pop()
    return quot, num


def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Coefficients of Phi_N (ascending), by iterated exact division of
    x^N - 1 by Phi_d for every proper divisor d of N."""
    if N < 1:
        raise ValueError(f"cyclotomic index must be positive, got {N}")
    cached = _PHI_CACHE.get(N)
    if cached is not None:
        return cached
    poly = [-1] + [0] * (N - 1) + [1]  # x^N - 1
    for d in range(1, N):
        if N % d == 0:
            quot, rem = _intpoly_divmod(poly, list(cyclotomic_polynomial(d)))
            if rem:
                raise InexactDivisionError(f"Phi_{d} does not divide intermediate for N={N}")
            poly = quot
    result = tuple(poly)
    _PHI_CACHE[N] = result
    return result


def euler_phi(N: int) -> int:
    return sum(1 for k in range(1, N + 1) if gcd(k, N) == 1)


class CycloElem:
    """Element of Q(zeta_N), reduced modulo Phi_N.

    Coefficients are Fractions in the power basis 1, z, ..., z^(phi(N)-1).
    Values coming from character sums are integral; `is_integral` and
    `int_coeffs` expose that invariant where callers rely on it.
    Instances are immutable.
    """

    __slots__ = ("modulus", "coeffs")

    def __init__(self, modulus: int, coeffs) -> None:
        phi = len(cyclotomic_polynomial(modulus)) - 1
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > phi:
            cs = _reduce_mod_phi(cs, modulus)
        cs.extend([Fraction(0)] * (phi - len(cs)))
        self.modulus = modulus
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, modulus: int) -> "CycloElem":
        return cls(modulus, [])

    @classmethod
    def one(cls, modulus: int) -> "CycloElem":
        return cls(modulus, [1])

    @classmethod
    def from_int(cls, modulus: int, n) -> "CycloElem":
        return cls(modulus, [n])

    @classmethod
    def root_power(cls, modulus: int, k: int) -> "CycloElem":
        """zeta_N^k, k taken mod N."""
        k %= modulus
        coeffs = [0] * (k + 1)
        coeffs[k] = 1
        return cls(modulus, coeffs)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> tuple[int, ...]:
        if not self.is_integral:
            raise InexactDivisionError(f"non-integral cyclotomic element: {self!r}")
        return tuple(c.numerator for c in self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def _check(self, other: "CycloElem") -> None:
        if self.modulus != other.modulus:
            raise ModulusMismatchError(
                f"cyclotomic moduli differ: {self.modulus} vs {other.modulus}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloElem.from_int(self.modulus, other)
        if not isinstance(other, CycloElem):
            return NotImplemented
        self._check(other)
        return CycloElem(self.modulus, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.modulus, [-a for a in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloElem.from_int(self.modulus, other)
        if not isinstance(other, CycloElem):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElem(self.modulus, [a * other for a in self.coeffs])
        if not isinstance(other, CycloElem):
            return NotImplemented
        self._check(other)
        return cyclo_mul(self, other)

    __rmul__ = __mul__

    def divexact(self, k: int) -> "CycloElem":
        """Divide by a nonzero integer, requiring every coefficient to stay
        integral when self is integral (used by Newton-identity assembly)."""
        if k == 0:
            raise ZeroDivisionError("division of cyclotomic element by zero")
        out = [c / k for c in self.coeffs]
        if self.is_integral and any(c.denominator != 1 for c in out):
            raise InexactDivisionError(
                f"coefficient not divisible by {k} in {self!r}")
        return CycloElem(self.modulus, out)

    def conjugate_map(self, k: int) -> "CycloElem":
        """Image under the ring map zeta_N -> zeta_N^k (gcd(k, N) = 1)."""
        if gcd(k, self.modulus) != 1:
            raise ValueError(f"map exponent {k} not invertible mod {self.modulus}")
        acc = [Fraction(0)] * len(self.coeffs)
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            term = CycloElem.root_power(self.modulus, j * k)
            acc = [a + c * b for a, b in zip(acc, term.coeffs)]
        return CycloElem(self.modulus, acc)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloElem.from_int(self.modulus, other)
        if not isinstance(other, CycloElem):
            return NotImplemented
        return self.modulus == other.modulus and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.modulus, self.coeffs))

    def __repr__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                terms.append(str(c))
            elif j == 1:
                terms.append(f"{c}*z")
            else:
                terms.append(f"{c}*z^{j}")
        body = " + ".join(terms) if terms else "0"
        return f"Cyclo({self.modulus}; {body})"


def _reduce_mod_phi(coeffs: list[Fraction], N: int) -> list[Fraction]:
    phi = cyclotomic_polynomial(N)
    deg = len(phi) - 1
    cs = list(coeffs)
    for i in range(len(cs) - 1, deg - 1, -1):
        c = cs[i]
        if c == 0:
            continue
        for j in range(deg + 1):
            cs[i - deg + j] -= c * phi[j]
    del cs[deg:]
    return cs


def cyclo_mul(x: CycloElem, y: CycloElem) -> CycloElem:
    """Exact product in Q(zeta_N), reduced mod Phi_N."""
    if x.modulus != y.modulus:
        raise ModulusMismatchError(
            f"cyclotomic moduli differ: {x.modulus} vs {y.modulus}")
    n, m = len(x.coeffs), len(y.coeffs)
    conv = [Fraction(0)] * (n + m - 1)
    for i, a in enumerate(x.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(y.coeffs):
            if b != 0:
                conv[i + j] += a * b
    return CycloElem(x.modulus, conv)


def complex_embeddings(x: CycloElem, precision: int = 30) -> list[complex]:
    """All complex embeddings of x: substitute zeta_N -> exp(2*pi*i*k/N)
    for every primitive residue k mod N.  Computed with mpmath at the
    stated number of decimal digits, returned as machine complex."""
    N = x.modulus
    values = []
    with mpmath.workdps(precision):
        for k in range(1, N + 1):
            if gcd(k, N) != 1:
                continue
            z = mpmath.expjpi(mpmath.mpf(2 * k) / N)
            acc = mpmath.mpc(0)
            for c in reversed(x.coeffs):
                acc = acc * z + mpmath.mpf(c.numerator) / c.denominator
            values.append(complex(acc))
    return values


# ---------------------------------------------------------------------------
# dense univariate polynomials over Fraction


class RatPoly:
    """Dense polynomial over Q; coefficient index = power of t.

    Canonical form: no trailing zero coefficient.  The zero polynomial has
    empty coefficients and degree `None` (a sentinel, never an integer).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()) -> None:
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return RatPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatPoly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatPoly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def derivative(self) -> "RatPoly":
        return RatPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def shift(self, k: int) -> "RatPoly":
        """Multiply by t^k."""
        if self.is_zero():
            return self
        return RatPoly([Fraction(0)] * k + list(self.coeffs))

    def reverse(self, n: int) -> "RatPoly":
        """t^n * P(1/t); requires deg P <= n."""
        if self.degree is not None and self.degree > n:
            raise ValueError(f"cannot reverse degree-{self.degree} polynomial at n={n}")
        return RatPoly([self[n - i] for i in range(n + 1)])

    def divexact(self, other: "RatPoly") -> "RatPoly":
        """Exact division; raises InexactDivisionError on any remainder."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return RatPoly()
        num = list(self.coeffs)
        den = other.coeffs
        dn = len(den) - 1
        lead = den[-1]
        if len(num) - 1 < dn:
            raise InexactDivisionError("divisor degree exceeds dividend degree")
        quot = [Fraction(0)] * (len(num) - dn)
        for i in range(len(num) - 1, dn - 1, -1):
            c = num[i]
            if c == 0:
                continue
            c /= lead
            quot[i - dn] = c
            for j, d in enumerate(den):
                num[i - dn + j] -= c * d
        if any(c != 0 for c in num):
            raise InexactDivisionError("polynomial division left a remainder")
        return RatPoly(quot)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatPoly([other])
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RatPoly({list(self.coeffs)})"


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


# ---------------------------------------------------------------------------
# truncated power series


class TruncSeries:
    """Power series truncated at a fixed order (number of retained
    coefficients).  Coefficients are Fractions or CycloElems; arithmetic
    never consults dropped terms."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order: int) -> None:
        if order < 1:
            raise ValueError(f"truncation order must be positive, got {order}")
        cs = list(coeffs)[:order]
        zero = self._zero_like(cs)
        cs.extend([zero] * (order - len(cs)))
        self.coeffs = tuple(cs)
        self.order = order

    @staticmethod
    def _zero_like(cs):
        for c in cs:
            if isinstance(c, CycloElem):
                return CycloElem.zero(c.modulus)
        return Fraction(0)

    def _one(self):
        c0 = self.coeffs[0]
        if isinstance(c0, CycloElem):
            return CycloElem.one(c0.modulus)
        return Fraction(1)

    def _is_zero_coeff(self, c) -> bool:
        return c.is_zero() if isinstance(c, CycloElem) else c == 0

    def __add__(self, other):
        order = min(self.order, other.order)
        return TruncSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], order)

    def __sub__(self, other):
        order = min(self.order, other.order)
        return TruncSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], order)

    def __mul__(self, other):
        order = min(self.order, other.order)
        zero = self._zero_like(list(self.coeffs))
        out = [zero] * order
        for i, a in enumerate(self.coeffs[:order]):
            if self._is_zero_coeff(a):
                continue
            for j in range(order - i):
                b = other.coeffs[j]
                out[i + j] = out[i + j] + a * b
        return TruncSeries(out, order)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def __repr__(self):
        return f"TruncSeries({list(self.coeffs)}, order={self.order})"


def series_exp(s: TruncSeries) -> TruncSeries:
    """exp(s) for a series with zero constant term, exactly, to the same
    truncation order.  Uses E' = s'E: m*E_m = sum_{j=1..m} j*s_j*E_{m-j}."""
    if not s._is_zero_coeff(s.coeffs[0]):
        raise ValueError("series_exp requires zero constant term")
    n = s.order
    out = [s._one()]
    for m in range(1, n):
        acc = None
        for j in range(1, m + 1):
            term = (s.coeffs[j] * j) * out[m - j]
            acc = term if acc is None else acc + term
        out.append(acc * Fraction(1, m))
    return TruncSeries(out, n)


def series_log(s: TruncSeries) -> TruncSeries:
    """log(s) for a series with constant term one; inverse of series_exp
    within truncation.  Uses L' = s'/s: m*L_m = m*s_m - sum j*L_j*s_{m-j}."""
    if s.coeffs[0] != s._one():
        raise ValueError("series_log requires constant term one")
    n = s.order
    zero = s.coeffs[0] - s.coeffs[0]
    out = [zero]
    for m in range(1, n):
        acc = s.coeffs[m] * m
        for j in range(1, m):
            acc = acc - (out[j] * j) * s.coeffs[m - j]
        out.append(acc * Fraction(1, m))
    return TruncSeries(out, n)
