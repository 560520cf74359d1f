"""Truncated p-adic arithmetic: the unramified ring Z_q mod p^N with
Teichmueller lifts, and the Eisenstein extension Z_q[pi] with
pi^(p-1) = -p housing Gauss sums.

Precision is data carried by each element, never ambient state.  The
valuation ord is normalized so that ord(q) = 1; an element that is zero
at working precision yields an unreliable valuation (in-band flag), and
consumers escalate precision rather than guess.

The single embedding of the exact cyclotomic world into Z_q substitutes
zeta_(q-1) -> Teichmueller(g) for the fixed field generator g; every
Newton polygon in the package is taken along this embedding.  (Its
inverse-power variant exists only as a deliberately wrong convention for
the sentinel test.)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Union

from .errors import PrecisionExhaustedError
from .exact import CycloElem
from .ffield import FieldDesc, _code_to_digits

_INF = None


@dataclass(frozen=True)
class ValuationResult:
    """Valuation in ord_q units; reliable is False iff the element is
    indistinguishable from zero at working precision."""

    value: Optional[Fraction]
    reliable: bool


class ZqRing:
    """Unramified Z_q mod p^N in the power basis of the integer lift of
    the residue field's defining polynomial."""

    def __init__(self, field: FieldDesc, N: int) -> None:
        if N < 1:
            raise ValueError(f"precision must be positive, got {N}")
        self.field = field
        self.p = field.p
        self.a = field.a
        self.N = N
        self.pN = field.p ** N
        self.defpoly = tuple(int(c) for c in field.defpoly)

    def elem(self, coeffs) -> "ZqElem":
        cs = [int(c) % self.pN for c in coeffs]
        if len(cs) > self.a:
            raise ValueError(f"{len(cs)} coefficients for degree {self.a}")
        cs += [0] * (self.a - len(cs))
        return ZqElem(self, tuple(cs))

    def zero(self) -> "ZqElem":
        return self.elem([])

    def one(self) -> "ZqElem":
        return self.elem([1])

    def from_int(self, n: int) -> "ZqElem":
        return self.elem([n])

    def from_field_code(self, code: int) -> "ZqElem":
        return self.elem(_code_to_digits(code, self.p, self.a))

    def with_precision(self, N: int) -> "ZqRing":
        return default_zq_ring(self.field, N)


class ZqElem:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: ZqRing, coeffs: tuple[int, ...]) -> None:
        self.ring = ring
        self.coeffs = coeffs

    @property
    def precision(self) -> int:
        return self.ring.N

    def _coerce(self, other) -> "ZqElem":
        if isinstance(other, int):
            return self.ring.from_int(other)
        if isinstance(other, ZqElem):
            if other.ring is self.ring:
                return other
            # propagate the minimum precision
            N = min(self.ring.N, other.ring.N)
            ring = self.ring.with_precision(N)
            return ring.elem(other.coeffs)
        raise TypeError(f"cannot combine ZqElem with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        N = min(self.ring.N, other.ring.N)
        ring = self.ring.with_precision(N)
        return ring.elem([x + y for x, y in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return self.ring.elem([-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        N = min(self.ring.N, other.ring.N)
        ring = self.ring.with_precision(N)
        a = ring.a
        conv = [0] * (2 * a - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(other.coeffs):
                conv[i + j] += x * y
        # fold x^a = -(f_0 + f_1 x + ... + f_{a-1} x^{a-1})
        f = ring.defpoly
        for i in range(len(conv) - 1, a - 1, -1):
            c = conv[i]
            if c == 0:
                continue
            conv[i] = 0
            for j in range(a):
                conv[i - a + j] -= c * f[j]
        return ring.elem(conv[:a])

    __rmul__ = __mul__

    def pow(self, e: int) -> "ZqElem":
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def vp(self) -> Optional[int]:
        """Minimum p-adic digit valuation, or None if zero at precision."""
        if self.is_zero():
            return None
        p, best = self.ring.p, None
        for c in self.coeffs:
            if c == 0:
                continue
            v = 0
            while c % p == 0:
                c //= p
                v += 1
            best = v if best is None else min(best, v)
        return best

    def reduce_mod_p(self) -> int:
        """Residue-field code of the reduction mod p."""
        p = self.ring.p
        code, mult = 0, 1
        for c in self.coeffs:
            code += (c % p) * mult
            mult *= p
        return code

    def inverse(self) -> "ZqElem":
        """Inverse of a unit (nonzero mod p) by lifting the residue-field
        inverse and Newton iteration y <- y(2 - xy)."""
        code = self.reduce_mod_p()
        if code == 0:
            raise ZeroDivisionError("inverse of a non-unit in Z_q")
        y = self.ring.from_field_code(self.ring.field.inv(code))
        steps = self.ring.N.bit_length() + 1
        two = self.ring.from_int(2)
        for _ in range(steps):
            y = y * (two - self * y)
        if not (self * y - self.ring.one()).is_zero():
            raise RuntimeError("unit inversion failed to converge")
        return y

    def __eq__(self, other):
        if not isinstance(other, ZqElem):
            return NotImplemented
        N = min(self.ring.N, other.ring.N)
        pN = self.ring.p ** N
        return self.ring.field is other.ring.field and all(
            (x - y) % pN == 0 for x, y in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.ring.field.p, self.ring.field.a, self.ring.N, self.coeffs))

    def __repr__(self):
        return f"Zq({list(self.coeffs)} mod {self.ring.p}^{self.ring.N})"


_ZQ_CACHE: dict[tuple[int, int, int], ZqRing] = {}


def default_zq_ring(field: FieldDesc, N: int) -> ZqRing:
    key = (field.p, field.a, N)
    ring = _ZQ_CACHE.get(key)
    if ring is None:
        ring = ZqRing(field, N)
        _ZQ_CACHE[key] = ring
    return ring


def teichmuller(field: FieldDesc, x: int, N: int) -> ZqElem:
    """The Teichmueller lift of a nonzero x in F_q: the unique (q-1)-st
    root of unity congruent to x mod p, found by iterating z -> z^q."""
    if x == 0:
        raise ZeroDivisionError("Teichmueller lift of zero")
    ring = default_zq_ring(field, N)
    z = ring.from_field_code(x)
    for _ in range(N + 2):
        nz = z.pow(field.q)
        if nz == z:
            return nz
        z = nz
    raise RuntimeError(f"Teichmueller iteration failed to stabilize mod {field.p}^{N}")


_TEICH_CACHE: dict[tuple[int, int, int, int], tuple[ZqElem, ...]] = {}


def _teichmuller_generator_powers(field: FieldDesc, N: int) -> tuple[ZqElem, ...]:
    """Powers Teichmueller(g)^0..^(q-2) of the fixed generator, cached."""
    key = (field.p, field.a, field.generator, N)
    pows = _TEICH_CACHE.get(key)
    if pows is None:
        tg = teichmuller(field, field.generator, N)
        out = [default_zq_ring(field, N).one()]
        for _ in range(field.q - 2):
            out.append(out[-1] * tg)
        pows = tuple(out)
        _TEICH_CACHE[key] = pows
    return pows


def cyclo_to_zq(x: CycloElem, ring: ZqRing, *, embedding_power: int = 1) -> ZqElem:
    """THE fixed embedding: substitute zeta_(q-1) -> Teichmueller(g) for
    the generator g of ring.field.  embedding_power=-1 is the deliberately
    opposite convention, used only by the sentinel test."""
    field = ring.field
    q1 = field.q - 1
    if x.modulus != q1:
        raise ValueError(f"cyclotomic modulus {x.modulus} does not match q-1={q1}")
    pows = _teichmuller_generator_powers(field, ring.N)
    acc = ring.zero()
    for k, c in enumerate(x.int_coeffs()):
        if c == 0:
            continue
        acc = acc + pows[(k * embedding_power) % q1] * c
    return acc


def ord_of(x: Union[ZqElem, "EisensteinElem"]) -> ValuationResult:
    """Valuation in ord_q units (ord q = 1), with in-band reliability."""
    if isinstance(x, ZqElem):
        v = x.vp()
        if v is None:
            return ValuationResult(_INF, False)
        return ValuationResult(Fraction(v, x.ring.a), True)
    if isinstance(x, EisensteinElem):
        vpi = x.vpi()
        if vpi is None:
            return ValuationResult(_INF, False)
        p = x.ring.zq.p
        return ValuationResult(Fraction(vpi, (p - 1) * x.ring.zq.a), True)
    raise TypeError(f"no valuation for {type(x).__name__}")


class EisensteinRing:
    """Z_q[pi] with pi^(p-1) = -p, truncated at pi-adic precision
    (p-1) * N for the coefficient precision N."""

    def __init__(self, zq: ZqRing) -> None:
        if zq.p == 2:
            raise ValueError("the Eisenstein extension degenerates at p = 2")
        self.zq = zq
        self.deg = zq.p - 1

    @property
    def pi_precision(self) -> int:
        return self.deg * self.zq.N

    def elem(self, coeffs) -> "EisensteinElem":
        cs = list(coeffs)
        if len(cs) > self.deg:
            raise ValueError(f"{len(cs)} coefficients for pi-degree {self.deg}")
        cs += [self.zq.zero()] * (self.deg - len(cs))
        return EisensteinElem(self, tuple(cs))

    def zero(self) -> "EisensteinElem":
        return self.elem([])

    def one(self) -> "EisensteinElem":
        return self.elem([self.zq.one()])

    def pi(self) -> "EisensteinElem":
        return self.elem([self.zq.zero(), self.zq.one()])

    def from_zq(self, x: ZqElem) -> "EisensteinElem":
        return self.elem([x])


class EisensteinElem:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: EisensteinRing, coeffs: tuple[ZqElem, ...]) -> None:
        self.ring = ring
        self.coeffs = coeffs

    def _coerce(self, other) -> "EisensteinElem":
        if isinstance(other, int):
            return self.ring.from_zq(self.ring.zq.from_int(other))
        if isinstance(other, ZqElem):
            return self.ring.from_zq(other)
        if isinstance(other, EisensteinElem):
            return other
        raise TypeError(f"cannot combine EisensteinElem with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        return self.ring.elem([x + y for x, y in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return self.ring.elem([-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        d = self.ring.deg
        zq = self.ring.zq
        conv = [zq.zero() for _ in range(2 * d - 1)]
        for i, x in enumerate(self.coeffs):
            if x.is_zero():
                continue
            for j, y in enumerate(other.coeffs):
                conv[i + j] = conv[i + j] + x * y
        # fold pi^(p-1) = -p
        for i in range(len(conv) - 1, d - 1, -1):
            c = conv[i]
            if not c.is_zero():
                conv[i - d] = conv[i - d] + c * (-zq.p)
        return self.ring.elem(conv[:d])

    __rmul__ = __mul__

    def pow(self, e: int) -> "EisensteinElem":
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def vpi(self) -> Optional[int]:
        """pi-adic valuation: min over basis slots of i + (p-1)*vp(c_i);
        exact because distinct slots have distinct valuations mod p-1."""
        best = None
        d = self.ring.deg
        for i, c in enumerate(self.coeffs):
            v = c.vp()
            if v is None:
                continue
            val = i + d * v
            best = val if best is None else min(best, val)
        return best

    def inverse(self) -> "EisensteinElem":
        c0 = self.coeffs[0]
        if c0.vp() != 0:
            raise ZeroDivisionError("inverse of a non-unit in Z_q[pi]")
        y = self.ring.from_zq(c0.inverse())
        steps = self.ring.pi_precision.bit_length() + 2
        two = self.ring.from_zq(self.ring.zq.from_int(2))
        for _ in range(steps):
            y = y * (two - self * y)
        if not (self * y - self.ring.one()).is_zero():
            raise RuntimeError("Eisenstein unit inversion failed to converge")
        return y

    def __eq__(self, other):
        if not isinstance(other, EisensteinElem):
            return NotImplemented
        return all(x == y for x, y in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __repr__(self):
        return f"Eis({list(self.coeffs)})"


_ZETA_CACHE: dict[tuple[int, int, int], "EisensteinElem"] = {}


def zeta_p(field: FieldDesc, M: int | None = None) -> EisensteinElem:
    """A primitive p-th root of unity with zeta_p = 1 + pi mod pi^2.

    Solves u^(p-1) = 1 + sum_{k=2..p-1} (C(p,k)/p) pi^(k-1) u^(k-1) for the
    unit u by Newton iteration from u = 1 (the derivative is a unit, so
    plain Hensel lifting converges); then zeta_p = 1 + pi*u.
    """
    p = field.p
    if p == 2:
        raise ValueError("p = 2 is outside the Eisenstein/Gauss-sum path")
    if M is None:
        M = 2 * (p - 1) + 4
    key = (field.p, field.a, M)
    cached = _ZETA_CACHE.get(key)
    if cached is not None:
        return cached
    N = -(-M // (p - 1)) + field.a + 1
    ring = EisensteinRing(default_zq_ring(field, N))
    pi = ring.pi()
    one = ring.one()

    # G(u) = u^(p-1) - 1 - sum_{k=2..p-1} (C(p,k)/p) pi^(k-1) u^(k-1)
    extra = []  # (integer coefficient, pi power, u power)
    for k in range(2, p):
        extra.append((comb(p, k) // p, k - 1, k - 1))

    def evalG(u):
        acc = u.pow(p - 1) - one
        for c, piw, uw in extra:
            acc = acc - pi.pow(piw) * u.pow(uw) * c
        return acc

    def evalGprime(u):
        acc = u.pow(p - 2) * (p - 1)
        for c, piw, uw in extra:
            if uw >= 1:
                acc = acc - pi.pow(piw) * u.pow(uw - 1) * (c * uw)
        return acc

    u = one
    for _ in range(ring.pi_precision.bit_length() + 4):
        g = evalG(u)
        if g.is_zero():
            break
        u = u - g * evalGprime(u).inverse()
    else:
        if not evalG(u).is_zero():
            raise PrecisionExhaustedError("Hensel iteration for zeta_p did not converge")
    result = one + pi * u
    _ZETA_CACHE[key] = result
    return result


def gauss_sum(c: int, field: FieldDesc, M: int | None = None) -> EisensteinElem:
    """g(chi, psi) = sum over x in F_q^x of omega(x)^(-c) * zeta_p^Trace(x),
    for the nontrivial character chi = omega^(-c), 1 <= c <= q-2."""
    q = field.q
    if not 1 <= c <= q - 2:
        raise ValueError(f"character numerator must lie in 1..q-2, got {c}")
    zp = zeta_p(field, M)
    ring = zp.ring
    pows_t = _teichmuller_generator_powers(field, ring.zq.N)
    zp_pows = [ring.one()]
    for _ in range(field.p - 1):
        zp_pows.append(zp_pows[-1] * zp)
    acc = ring.zero()
    x = 1
    for k in range(q - 1):
        tr = field.trace(x)
        acc = acc + zp_pows[tr] * pows_t[(-c * k) % (q - 1)]
        x = field.mul(x, field.generator)
    return acc


def stickelberger_ord(c: int, p: int, a: int) -> Fraction:
    """Predicted ord_q of the Gauss sum: the orbit average of the exponent
    c/(q-1) under multiplication by p mod q-1."""
    q = p ** a
    if not 1 <= c <= q - 2:
        raise ValueError(f"character numerator must lie in 1..q-2, got {c}")
    total = 0
    cur = c
    for _ in range(a):
        total += cur
        cur = (cur * p) % (q - 1)
    if cur != c:
        raise RuntimeError("Frobenius orbit failed to close")
    return Fraction(total, a * (q - 1))
