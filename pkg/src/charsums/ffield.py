"""Finite-field towers, projective enumeration, and exact character sums.

Elements of F_q = F_p[x]/(f) are integer codes: the base-p digit packing
of the power-basis coordinates, so codes run 0..q-1 and the prime field
occupies codes 0..p-1.  Each field carries exp/log tables for a verified
generator of the multiplicative group; addition is digitwise.

Character sums are reduced to integer histograms: for a point x the
summand is zeta^(sum_i w_i * dlog(f_i(x))) or zero, so a full sum is a
tally of exponents followed by one exact cyclotomic assembly.  The
exponent weights w_i realize the characters' exact cyclotomic avatar
chi_i(g^t) = zeta_(q-1)^(c_i*t); the p-adic reading of every value is
then fixed by the single embedding zeta_(q-1) -> Teichmueller(g) (see
the padic module).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterator, Optional

import numpy as np

from .errors import (AdmissibilityError, BudgetExceededError, NotPrimeError,
                     OversizedFieldError)
from .exact import CycloElem
from .hodge import ExponentVector

MAX_TABLE = 1 << 22  # largest q^m with exp/log tables


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def split_prime_power(q: int) -> tuple[int, int]:
    """q = p^a with p prime; errors otherwise."""
    fac = factorize(q)
    if len(fac) != 1:
        raise NotPrimeError(f"{q} is not a prime power")
    (p, a), = fac.items()
    return p, a


# --- polynomial helpers over F_p (coefficient lists, ascending) ----------


def _ptrim(u: list[int]) -> list[int]:
    while u and u[-1] == 0:
        u.pop()
    return u


def _pmulmod(u: list[int], v: list[int], f: list[int], p: int) -> list[int]:
    if not u or not v:
        return []
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a == 0:
            continue
        for j, b in enumerate(v):
            out[i + j] = (out[i + j] + a * b) % p
    d = len(f) - 1
    for i in range(len(out) - 1, d - 1, -1):
        c = out[i]
        if c == 0:
            continue
        out[i] = 0
        for j in range(d):
            out[i - d + j] = (out[i - d + j] - c * f[j]) % p
    return _ptrim(out[:d])


def _ppowmod(u: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = list(u)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _psub(u: list[int], v: list[int], p: int) -> list[int]:
    out = [0] * max(len(u), len(v))
    for i, c in enumerate(u):
        out[i] = c
    for i, c in enumerate(v):
        out[i] = (out[i] - c) % p
    return _ptrim(out)


def _pdivmod_rem(u: list[int], v: list[int], p: int) -> list[int]:
    u = list(u)
    dn = len(v) - 1
    inv_lead = pow(v[-1], -1, p)
    for i in range(len(u) - 1, dn - 1, -1):
        c = u[i] * inv_lead % p
        if c == 0:
            continue
        for j in range(dn + 1):
            u[i - dn + j] = (u[i - dn + j] - c * v[j]) % p
    return _ptrim(u)


def _pgcd(u: list[int], v: list[int], p: int) -> list[int]:
    u, v = _ptrim(list(u)), _ptrim(list(v))
    while v:
        u, v = v, _pdivmod_rem(u, v, p)
    return u


def _is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's criterion: x^(p^d) == x mod f and, for every prime divisor
    l of d, gcd(x^(p^(d/l)) - x, f) = 1.  (The weaker inequality
    x^(p^(d/l)) != x admits products of factors of mixed degrees.)"""
    d = len(f) - 1
    x = [0, 1] if d > 1 else _pmulmod([0, 1], [1], f, p)
    t = x
    powers = {}
    for i in range(1, d + 1):
        t = _ppowmod(t, p, f, p)
        powers[i] = t
    if powers[d] != x:
        return False
    for l in factorize(d):
        g = _pgcd(_psub(powers[d // l], x, p), f, p)
        if len(g) - 1 != 0:
            return False
    return True


def _code_to_digits(code: int, p: int, ndigits: int) -> list[int]:
    out = []
    for _ in range(ndigits):
        out.append(code % p)
        code //= p
    return out


def _digits_to_code(digits, p: int) -> int:
    code = 0
    for d in reversed(list(digits)):
        code = code * p + d
    return code


class FieldDesc:
    """A concrete F_q: prime p, degree a, deterministic defining polynomial
    (first irreducible in code order) and generator (smallest code of
    multiplicative order q-1, verified against the factorization of q-1).
    Carries exp/log tables; immutable and shareable after construction."""

    def __init__(self, p: int, a: int) -> None:
        if not is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        if a < 1:
            raise ValueError(f"extension degree must be positive, got {a}")
        q = p ** a
        if q > MAX_TABLE:
            raise OversizedFieldError(
                f"q = {q} exceeds table limit {MAX_TABLE}; discrete-log table unavailable")
        self.p = p
        self.a = a
        self.q = q
        self.defpoly = self._find_defpoly()
        self.generator = self._find_generator()
        self._build_tables()

    def _find_defpoly(self) -> tuple[int, ...]:
        p, a = self.p, self.a
        if a == 1:
            return (0, 1)  # x itself; prime field
        for low_code in range(p ** a):
            f = _code_to_digits(low_code, p, a) + [1]
            if _is_irreducible(f, p):
                return tuple(f)
        raise RuntimeError(f"no irreducible polynomial of degree {a} over F_{p}")

    def _mul_codes_raw(self, x: int, y: int) -> int:
        u = _ptrim(_code_to_digits(x, self.p, self.a))
        v = _ptrim(_code_to_digits(y, self.p, self.a))
        w = _pmulmod(u, v, list(self.defpoly), self.p)
        return _digits_to_code(w + [0] * (self.a - len(w)), self.p)

    def _pow_code_raw(self, x: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul_codes_raw(result, x)
            x = self._mul_codes_raw(x, x)
            e >>= 1
        return result

    def _find_generator(self) -> int:
        q1 = self.q - 1
        if q1 == 1:
            return 1  # F_2: trivial multiplicative group
        primes = list(factorize(q1))
        for code in range(2, self.q):
            if all(self._pow_code_raw(code, q1 // l) != 1 for l in primes):
                return code
        raise RuntimeError(f"no generator found for F_{self.q}")

    def _build_tables(self) -> None:
        q1 = self.q - 1
        exp = np.empty(q1, dtype=np.int64)
        log = np.full(self.q, -1, dtype=np.int64)
        cur = 1
        for k in range(q1):
            exp[k] = cur
            log[cur] = k
            cur = self._mul_codes_raw(cur, self.generator)
        if cur != 1:
            raise RuntimeError(f"generator {self.generator} has wrong order in F_{self.q}")
        self.exp = exp
        self.log = log

    # --- element operations on codes (ints or numpy arrays) -----------

    def add(self, x, y):
        p = self.p
        res, mult = 0, 1
        for _ in range(self.a):
            res = res + ((x % p + y % p) % p) * mult
            mult *= p
            x = x // p
            y = y // p
        return res

    def neg(self, x):
        return self.mul_scalar(x, self.p - 1)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return int(self.exp[(int(self.log[x]) + int(self.log[y])) % (self.q - 1)])

    def mul_scalar(self, x, s: int):
        """Multiply by a prime-field scalar s in 0..p-1 (elementwise ok)."""
        s %= self.p
        if s == 0:
            return x * 0
        p = self.p
        res, mult = 0, 1
        for _ in range(self.a):
            res = res + ((x % p) * s % p) * mult
            mult *= p
            x = x // p
        return res

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return int(self.exp[(-int(self.log[x])) % (self.q - 1)])

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return int(self.exp[(int(self.log[x]) * e) % (self.q - 1)])

    def trace(self, x: int) -> int:
        """Trace to the prime field, returned as an integer in 0..p-1."""
        acc, t = 0, x
        for _ in range(self.a):
            acc = self.add(acc, t)
            t = self.pow(t, self.p)
        if acc >= self.p:
            raise RuntimeError(f"trace {acc} left the prime field in F_{self.q}")
        return acc

    def dlog(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("discrete log of zero")
        return int(self.log[x])

    def codes(self) -> range:
        return range(self.q)

    def __repr__(self):
        return f"FieldDesc(p={self.p}, a={self.a}, defpoly={self.defpoly}, g={self.generator})"


@lru_cache(maxsize=None)
def build_field(p: int, a: int) -> FieldDesc:
    """Deterministic F_{p^a}; errors if p fails trial division."""
    return FieldDesc(p, a)


class ExtFieldDesc:
    """F_{q^m} over a base F_q, with a verified compatible embedding.

    The extension is itself a FieldDesc of degree a*m over the prime
    field; the embedding sends the base power basis to powers of a root
    of the base defining polynomial found inside the extension.  The
    constructor asserts the embedding is a ring homomorphism and that the
    norm surjects onto the base multiplicative group.
    """

    def __init__(self, base: FieldDesc, m: int) -> None:
        if m < 1:
            raise ValueError(f"extension step must be positive, got {m}")
        self.base = base
        self.m = m
        self.field = build_field(base.p, base.a * m)
        self.s = (self.field.q - 1) // (base.q - 1)  # norm exponent
        self._build_embedding()
        self._verify()

    def _build_embedding(self) -> None:
        base, ext = self.base, self.field
        # root of the base defining polynomial inside the extension,
        # searched over the order-(q-1) subgroup (plus 0), smallest code
        candidates = sorted({0} | {int(ext.exp[(k * self.s) % (ext.q - 1)])
                                   for k in range(base.q - 1)})
        root = None
        for c in candidates:
            acc = 0
            for i, coeff in enumerate(base.defpoly):
                if coeff:
                    acc = ext.add(acc, ext.mul_scalar(ext.pow(c, i), coeff))
            if acc == 0:
                root = c
                break
        if root is None:
            raise RuntimeError(
                f"no root of base defining polynomial in F_{ext.q}: inconsistent tower")
        emb = np.empty(base.q, dtype=np.int64)
        for code in range(base.q):
            digits = _code_to_digits(code, base.p, base.a)
            acc = 0
            for i, d in enumerate(digits):
                if d:
                    acc = ext.add(acc, ext.mul_scalar(ext.pow(root, i), d))
            emb[code] = acc
        self.root = root
        self.emb = emb
        # dlog bridge: emb(g) = (G^s)^tau, so base dlogs of pushed-down norms
        # are extension dlogs times tau^{-1} mod q-1
        lg = int(ext.log[emb[base.generator]])
        if lg % self.s != 0:
            raise RuntimeError("embedded base generator outside norm-image subgroup")
        self.tau = (lg // self.s) % (base.q - 1)
        self.tau_inv = pow(self.tau, -1, base.q - 1)

    def _verify(self) -> None:
        base, ext, emb = self.base, self.field, self.emb
        # ring homomorphism spot-check
        probe = [0, 1, base.generator, base.q - 1, base.q // 2]
        for x in probe:
            for y in probe:
                if emb[base.add(x, y)] != ext.add(int(emb[x]), int(emb[y])):
                    raise RuntimeError("embedding fails additivity")
                if emb[base.mul(x, y)] != ext.mul(int(emb[x]), int(emb[y])):
                    raise RuntimeError("embedding fails multiplicativity")
        # norm of the extension generator must generate the base group
        ng = self.norm_to_base(ext.generator)
        order = 1
        acc = ng
        while acc != 1:
            acc = base.mul(acc, ng)
            order += 1
        if order != base.q - 1:
            raise RuntimeError("norm does not surject onto base multiplicative group")

    def embed(self, x: int) -> int:
        return int(self.emb[x])

    def norm_to_base(self, x: int) -> int:
        """x^((q^m-1)/(q-1)) pulled back through the embedding."""
        if x == 0:
            return 0
        ext = self.field
        j = (int(ext.log[x]) % (self.base.q - 1))
        t = (j * self.tau_inv) % (self.base.q - 1)
        val = self.base.pow(self.base.generator, t)
        # membership check: the pushdown really is the norm
        if self.emb[val] != ext.pow(x, self.s):
            raise RuntimeError("norm pushdown inconsistent with embedding")
        return val


_EXT_CACHE: dict[tuple[int, int, int], ExtFieldDesc] = {}


def extension_field(base: FieldDesc, m: int) -> ExtFieldDesc:
    key = (base.p, base.a, m)
    ext = _EXT_CACHE.get(key)
    if ext is None:
        ext = ExtFieldDesc(base, m)
        _EXT_CACHE[key] = ext
    return ext


# --- homogeneous forms ------------------------------------------------


@dataclass(frozen=True)
class HomogPoly:
    """Homogeneous form in x_0..x_n over F_q; coefficients are codes."""

    n: int
    degree: int
    monomials: tuple[tuple[tuple[int, ...], int], ...]  # ((exponents), coeff code)

    def __post_init__(self):
        seen = set()
        for exps, coeff in self.monomials:
            if len(exps) != self.n + 1:
                raise ValueError(f"exponent vector {exps} has wrong length")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if sum(exps) != self.degree:
                raise ValueError(
                    f"monomial {exps} has degree {sum(exps)}, form declares {self.degree}")
            if exps in seen:
                raise ValueError(f"duplicate exponent vector {exps}")
            if coeff == 0:
                raise ValueError("zero coefficient monomial must be omitted")
            seen.add(exps)
        if not self.monomials:
            raise ValueError("form must be nonconstant (no monomials given)")

    @classmethod
    def from_terms(cls, n: int, terms) -> "HomogPoly":
        terms = [(tuple(e), int(c)) for e, c in terms]
        degree = sum(terms[0][0])
        return cls(n, degree, tuple(terms))

    def scaled(self, field: FieldDesc, lam: int) -> "HomogPoly":
        if lam == 0:
            raise ValueError("scaling by zero")
        return HomogPoly(self.n, self.degree, tuple(
            (e, field.mul(c, lam)) for e, c in self.monomials))

    def eval_base(self, field: FieldDesc, point) -> int:
        acc = 0
        for exps, coeff in self.monomials:
            val = coeff
            for xv, u in zip(point, exps):
                if u == 0:
                    continue
                if xv == 0:
                    val = 0
                    break
                val = field.mul(val, field.pow(xv, u))
            acc = field.add(acc, val)
        return acc

    def eval_ext(self, ext: ExtFieldDesc, point) -> int:
        acc = 0
        for exps, coeff in self.monomials:
            val = ext.embed(coeff)
            for xv, u in zip(point, exps):
                if u == 0:
                    continue
                if xv == 0:
                    val = 0
                    break
                val = ext.field.mul(val, ext.field.pow(xv, u))
            acc = ext.field.add(acc, val)
        return acc

    def partial(self, field: FieldDesc, j: int) -> Optional["HomogPoly"]:
        """d/dx_j, or None when it vanishes identically."""
        monos = []
        for exps, coeff in self.monomials:
            u = exps[j]
            c = field.mul_scalar(coeff, u % field.p)
            if c == 0:
                continue
            new = list(exps)
            new[j] -= 1
            monos.append((tuple(new), c))
        if not monos:
            return None
        return HomogPoly(self.n, self.degree - 1, tuple(monos))


# --- projective enumeration -------------------------------------------


def projective_count(n: int, q: int, m: int = 1) -> int:
    Q = q ** m
    return (Q ** (n + 1) - 1) // (Q - 1)


def enumerate_projective(n: int, field: FieldDesc) -> Iterator[tuple[int, ...]]:
    """Normalized representatives (leftmost nonzero coordinate = 1),
    streamed in lexicographic block order."""
    for lead in range(n + 1):
        prefix = (0,) * lead + (1,)
        for tail in itertools.product(field.codes(), repeat=n - lead):
            yield prefix + tail


# --- character sums ----------------------------------------------------


@dataclass(frozen=True)
class CharSumValue:
    """One S_m: exact cyclotomic value plus its p-adic reading (attached
    lazily by callers holding a p-adic context)."""

    exact: CycloElem
    padic: object = None

    def __post_init__(self):
        if not self.exact.is_integral:
            raise ValueError("character-sum values must be integral cyclotomic elements")


@dataclass
class FormPack:
    """Forms compiled to flat arrays for the kernels."""

    mono_exps: np.ndarray
    mono_logs: np.ndarray
    form_starts: np.ndarray
    weights: np.ndarray
    require_zero: np.ndarray


def pack_forms(ext: ExtFieldDesc, fs, weights, require_zero) -> FormPack:
    exps_rows = []
    logs = []
    starts = [0]
    for f in fs:
        for exps, coeff in f.monomials:
            exps_rows.append(exps)
            logs.append(int(ext.field.log[ext.embed(coeff)]))
        starts.append(len(exps_rows))
    return FormPack(
        mono_exps=np.array(exps_rows, dtype=np.int64),
        mono_logs=np.array(logs, dtype=np.int64),
        form_starts=np.array(starts, dtype=np.int64),
        weights=np.array(list(weights), dtype=np.int64),
        require_zero=np.array(list(require_zero), dtype=np.uint8),
    )


def exponent_histogram(ext: ExtFieldDesc, n: int, fs, weights, require_zero,
                       *, affine: bool = False, backend: str | None = None,
                       traversal: str = "lex", chunk: int = 1 << 20) -> np.ndarray:
    """Histogram over k mod q-1 of points with all character forms nonzero
    (and all constrained forms zero), tallying sum_i w_i*dlog(f_i(x))."""
    from .kernels import get_histogram_fn
    kernel = get_histogram_fn(backend)
    pack = pack_forms(ext, fs, weights, require_zero)
    Q = ext.field.q
    qm1 = ext.base.q - 1
    hist = np.zeros(qm1, dtype=np.int64)
    blocks = []
    if affine:
        blocks.append((np.empty(0, dtype=np.int64), Q ** (n + 1)))
    else:
        for lead in range(n + 1):
            prefix = np.array([0] * lead + [1], dtype=np.int64)
            blocks.append((prefix, Q ** (n - lead)))
    for prefix, total in blocks:
        ranges = [(s, min(s + chunk, total)) for s in range(0, total, chunk)]
        if traversal == "chunked":
            ranges = list(reversed(ranges))
        elif traversal != "lex":
            raise ValueError(f"unknown traversal {traversal!r}")
        for start, stop in ranges:
            kernel(prefix, start, stop, Q, ext.field.p, ext.field.a, qm1,
                   ext.field.exp, ext.field.log,
                   pack.mono_exps, pack.mono_logs, pack.form_starts,
                   pack.weights, pack.require_zero, hist)
    return hist


def _hist_to_cyclo(hist: np.ndarray, qm1: int) -> CycloElem:
    return CycloElem(qm1, [int(c) for c in hist])


def char_sum(fs, e: ExponentVector, m: int, *, precision: int | None = None,
             backend: str | None = None, traversal: str = "lex",
             affine: bool = False, budget: int | None = None) -> CharSumValue:
    """S_m over P^n(F_{q^m}) (or A^(n+1) when affine=True): the exact sum
    of products of character values of the forms at each point.

    Characters are nontrivial by construction of e; their exact avatar is
    chi_i(g^t) = zeta^(c_i t).  The p-adic rendering is attached at the
    requested precision (a heuristic default otherwise).
    """
    p, a = split_prime_power(e.q)
    base = build_field(p, a)
    degrees = tuple(f.degree for f in fs)
    if degrees != e.profile.degrees:
        raise AdmissibilityError(
            f"form degrees {degrees} do not match profile {e.profile.degrees}")
    n = fs[0].n
    if any(f.n != n for f in fs):
        raise ValueError("forms live in different ambient spaces")
    npoints = (p ** (a * m)) ** (n + 1) if affine else projective_count(n, base.q, m)
    if budget is not None and npoints > budget:
        raise BudgetExceededError(
            f"{npoints} point evaluations exceed budget {budget}")
    ext = extension_field(base, m)
    qm1 = base.q - 1
    weights = [(c * ext.tau_inv) % qm1 for c in e.numerators]
    hist = exponent_histogram(ext, n, fs, weights, [0] * len(fs),
                              affine=affine, backend=backend, traversal=traversal)
    exact = _hist_to_cyclo(hist, qm1)
    from .padic import cyclo_to_zq, default_zq_ring
    if precision is None:
        precision = a * (n * m + 2) + 8
    ring = default_zq_ring(base, precision)
    return CharSumValue(exact=exact, padic=cyclo_to_zq(exact, ring))


def char_sum_reference(fs, e: ExponentVector, m: int) -> CycloElem:
    """Independent point-at-a-time oracle for S_m (no histogram, no
    kernels); only for small instances and tests."""
    p, a = split_prime_power(e.q)
    base = build_field(p, a)
    ext = extension_field(base, m)
    qm1 = base.q - 1
    n = fs[0].n
    total = CycloElem.zero(qm1)
    for point in enumerate_projective(n, ext.field):
        term_exp = 0
        dead = False
        for f, c in zip(fs, e.numerators):
            v = f.eval_ext(ext, point)
            if v == 0:
                dead = True
                break
            t = base.dlog(ext.norm_to_base(v))
            term_exp += c * t
        if not dead:
            total = total + CycloElem.root_power(qm1, term_exp % qm1)
    return total


def norm_to_base(ext: ExtFieldDesc, x: int) -> int:
    return ext.norm_to_base(x)


def trivial_character_reduction_check(field: FieldDesc, fs, numerators, m: int, *,
                                      backend: str | None = None) -> bool:
    """With exactly one trivial character (numerator 0), the full sum over
    P^n equals (sum without that form) - (sum restricted to its zero locus).
    Both reduced systems inherit the triviality condition because the
    dropped form contributes nothing to the weighted numerator sum.
    The trivial character is still extended by chi(0) = 0, so its form
    kills the points where it vanishes."""
    numerators = list(numerators)
    q = field.q
    if len(numerators) != len(fs):
        raise AdmissibilityError(f"{len(numerators)} numerators for {len(fs)} forms")
    if any(c < 0 or c > q - 2 for c in numerators):
        raise AdmissibilityError(f"numerators must lie in 0..q-2, got {numerators}")
    weighted = sum(c * f.degree for c, f in zip(numerators, fs))
    if weighted % (q - 1) != 0:
        raise AdmissibilityError(
            f"weighted numerator sum {weighted} not divisible by q-1={q - 1}")
    zero_pos = [i for i, c in enumerate(numerators) if c == 0]
    if len(zero_pos) != 1:
        raise AdmissibilityError(
            f"exactly one trivial character required, got numerators {numerators}")
    i0 = zero_pos[0]
    if len({f.n for f in fs}) != 1:
        raise ValueError("forms live in different ambient spaces")
    n = fs[0].n
    ext = extension_field(field, m)
    qm1 = q - 1
    w = [(c * ext.tau_inv) % qm1 for c in numerators]

    def run(forms, weights, rzero):
        hist = exponent_histogram(ext, n, forms, weights, rzero, backend=backend)
        return _hist_to_cyclo(hist, qm1)

    full = run(fs, w, [0] * len(fs))
    rest_forms = [f for i, f in enumerate(fs) if i != i0]
    rest_w = [x for i, x in enumerate(w) if i != i0]
    without = run(rest_forms, rest_w, [0] * len(rest_forms))
    restricted = run(fs, w, [1 if i == i0 else 0 for i in range(len(fs))])
    return full == without - restricted


# --- smoothness / transversality checks ---------------------------------


@dataclass
class SmoothnessReport:
    passed: bool
    complete: bool  # True only for the exact n=1 resultant/squarefree check
    m_checked: int
    witness: Optional[dict] = None
    notes: list[str] = dc_field(default_factory=list)


def _univ_trim(u: list[int]) -> list[int]:
    while u and u[-1] == 0:
        u.pop()
    return u


def _univ_derivative(field: FieldDesc, u: list[int]) -> list[int]:
    return _univ_trim([field.mul_scalar(c, i % field.p) for i, c in enumerate(u)][1:])


def _univ_divmod(field: FieldDesc, num: list[int], den: list[int]):
    num = list(num)
    dn = len(den) - 1
    inv_lead = field.inv(den[-1])
    for i in range(len(num) - 1, dn - 1, -1):
        c = field.mul(num[i], inv_lead)
        if c == 0:
            continue
        for j in range(dn + 1):
            num[i - dn + j] = field.sub(num[i - dn + j], field.mul(c, den[j]))
    return _univ_trim(num)


def _univ_gcd(field: FieldDesc, u: list[int], v: list[int]) -> list[int]:
    u, v = _univ_trim(list(u)), _univ_trim(list(v))
    while v:
        u, v = v, _univ_divmod(field, u, v)
    return u


def _binary_form_coeffs(field: FieldDesc, f: HomogPoly) -> list[int]:
    """Coefficient list by x_0-degree for a binary form (n = 1)."""
    out = [0] * (f.degree + 1)
    for (u0, _u1), c in f.monomials:
        out[u0] = field.add(out[u0], c)
    return out


def _binary_squarefree(field: FieldDesc, f: HomogPoly) -> bool:
    coeffs = _binary_form_coeffs(field, f)
    u = _univ_trim(list(coeffs))  # dehomogenize at x_1 = 1
    inf_mult = f.degree - (len(u) - 1) if u else f.degree
    if inf_mult > 1:
        return False
    if len(u) - 1 <= 0:
        return True
    du = _univ_derivative(field, u)
    if not du:
        return False  # p-th power
    return len(_univ_gcd(field, u, du)) == 1


def _matrix_rank(field: FieldDesc, rows: list[list[int]]) -> int:
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = field.inv(rows[rank][col])
        rows[rank] = [field.mul(inv, v) for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                c = rows[i][col]
                rows[i] = [field.sub(a, field.mul(c, b))
                           for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _sylvester_resultant(field: FieldDesc, f: HomogPoly, g: HomogPoly) -> int:
    """Resultant of two binary forms via the Sylvester determinant."""
    fc = _binary_form_coeffs(field, f)
    gc = _binary_form_coeffs(field, g)
    df, dg = len(fc) - 1, len(gc) - 1
    size = df + dg
    rows = []
    for i in range(dg):
        rows.append([0] * i + list(reversed(fc)) + [0] * (size - i - df - 1))
    for i in range(df):
        rows.append([0] * i + list(reversed(gc)) + [0] * (size - i - dg - 1))
    # determinant by elimination
    det = 1
    mat = [list(r) for r in rows]
    for col in range(size):
        piv = next((i for i in range(col, size) if mat[i][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = field.mul_scalar(det, field.p - 1)
        det = field.mul(det, mat[col][col])
        inv = field.inv(mat[col][col])
        for i in range(col + 1, size):
            if mat[i][col] != 0:
                c = field.mul(mat[i][col], inv)
                mat[i] = [field.sub(a, field.mul(c, b))
                          for a, b in zip(mat[i], mat[col])]
    return det


def smoothness_check_partial(field: FieldDesc, fs, m_max: int = 2) -> SmoothnessReport:
    """Necessary transversality conditions by rational-point scan.

    For every subset I of the forms and every point of the common zero
    locus over F_{q^m} (m <= m_max), the |I| x (n+1) Jacobian must have
    rank |I|.  For n = 1 an exact complete check is run instead: every
    binary form squarefree and all pairwise resultants nonzero, which
    certifies transversality over the algebraic closure.
    """
    n = fs[0].n
    if any(f.n != n for f in fs):
        raise ValueError("forms live in different ambient spaces")
    report = SmoothnessReport(passed=True, complete=(n == 1), m_checked=0)
    if n == 1:
        for i, f in enumerate(fs):
            if not _binary_squarefree(field, f):
                report.passed = False
                report.witness = {"kind": "non-squarefree form", "form_index": i}
                report.notes.append(f"form {i} has a repeated projective zero")
                return report
        for i in range(len(fs)):
            for j in range(i + 1, len(fs)):
                if _sylvester_resultant(field, fs[i], fs[j]) == 0:
                    report.passed = False
                    report.witness = {"kind": "common zero", "form_indices": [i, j]}
                    report.notes.append(f"forms {i} and {j} share a projective zero")
                    return report
        report.notes.append("exact check: squarefree forms, nonzero pairwise resultants")
        return report

    # n >= 2: point scan up to m_max; necessary conditions only
    partials = [[f.partial(field, j) for j in range(n + 1)] for f in fs]
    for m in range(1, m_max + 1):
        ext = extension_field(field, m)
        for point in enumerate_projective(n, ext.field):
            vanishing = [i for i, f in enumerate(fs) if f.eval_ext(ext, point) == 0]
            if not vanishing:
                continue
            rows = []
            for i in vanishing:
                rows.append([0 if partials[i][j] is None
                             else partials[i][j].eval_ext(ext, point)
                             for j in range(n + 1)])
            if _matrix_rank(ext.field, rows) == len(vanishing):
                continue  # every subset of independent rows is independent
            for size in range(1, len(vanishing) + 1):
                for subset in itertools.combinations(range(len(vanishing)), size):
                    sub = [rows[i] for i in subset]
                    if _matrix_rank(ext.field, sub) < size:
                        report.passed = False
                        report.witness = {
                            "kind": "rank deficiency",
                            "form_indices": [vanishing[i] for i in subset],
                            "point": list(point),
                            "extension": m,
                        }
                        report.m_checked = m
                        report.notes.append(
                            f"Jacobian rank < {size} at a point over step-{m} extension")
                        return report
        report.m_checked = m
    report.notes.append(
        f"point scan up to extension step {m_max}: necessary conditions only")
    return report
