"""Problem-instance ingestion: one structured description of a field, a
set of forms, and character numerators, plus run options.

The config format is JSON whose numbers are decimal strings (safe for
arbitrary precision and diff-able); coefficients of forms are digit
vectors of length a in the power basis of the field's defining
polynomial.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .errors import AdmissibilityError, CharsumsError
from .ffield import FieldDesc, HomogPoly, build_field, is_prime, _digits_to_code
from .hodge import DegreeProfile, ExponentVector

DEFAULT_BUDGET = 2 * 10 ** 8
DEFAULT_M_MAX = 2


@dataclass
class InstanceOptions:
    precision: int | None = None
    m_max: int = DEFAULT_M_MAX
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    backend: str | None = None
    allow_trivial: bool = False  # permit exactly-one-zero numerators (reduction mode)

    def as_dict(self) -> dict:
        return {
            "precision": None if self.precision is None else str(self.precision),
            "m_max": str(self.m_max),
            "budget": str(self.budget),
            "seed": str(self.seed),
            "backend": self.backend,
            "allow_trivial": self.allow_trivial,
        }


@dataclass
class InstanceSpec:
    p: int
    a: int
    n: int
    forms: list[HomogPoly]
    char_numerators: list[int]
    options: InstanceOptions = dc_field(default_factory=InstanceOptions)

    def __post_init__(self):
        if not is_prime(self.p):
            raise CharsumsError(f"{self.p} is not prime")
        if self.a < 1 or self.n < 0:
            raise CharsumsError(f"bad field/ambient parameters a={self.a}, n={self.n}")
        if len(self.forms) != len(self.char_numerators):
            raise AdmissibilityError(
                f"{len(self.forms)} forms but {len(self.char_numerators)} numerators")
        q = self.q
        zeros = [c for c in self.char_numerators if c == 0]
        if any(c < 0 or c > q - 2 for c in self.char_numerators):
            raise AdmissibilityError(
                f"numerators must lie in 0..q-2, got {self.char_numerators}")
        if zeros and not (self.options.allow_trivial and len(zeros) == 1):
            raise AdmissibilityError(
                "trivial character (numerator 0) requires the explicit reduction mode")
        weighted = sum(c * f.degree for c, f in zip(self.char_numerators, self.forms))
        if weighted % (q - 1) != 0:
            raise AdmissibilityError(
                f"weighted numerator sum {weighted} not divisible by q-1={q - 1}; "
                "the product of the characters raised to the form degrees must be trivial")
        for f in self.forms:
            if f.n != self.n:
                raise CharsumsError(f"form in P^{f.n} inside an n={self.n} instance")

    @property
    def q(self) -> int:
        return self.p ** self.a

    @property
    def profile(self) -> DegreeProfile:
        return DegreeProfile(self.n, tuple(f.degree for f in self.forms))

    @property
    def field(self) -> FieldDesc:
        return build_field(self.p, self.a)

    def exponent_vector(self) -> ExponentVector:
        return ExponentVector(self.q, tuple(self.char_numerators), self.profile)

    def instance_key(self) -> str:
        return (f"q{self.q}n{self.n}d" + "-".join(str(f.degree) for f in self.forms)
                + "c" + "-".join(str(c) for c in self.char_numerators))

    def as_dict(self) -> dict:
        return {
            "p": str(self.p),
            "a": str(self.a),
            "n": str(self.n),
            "q": str(self.q),
            "degrees": [str(f.degree) for f in self.forms],
            "forms": [_form_to_dict(f, self.p, self.a) for f in self.forms],
            "char_numerators": [str(c) for c in self.char_numerators],
            "options": self.options.as_dict(),
        }


def _form_to_dict(f: HomogPoly, p: int, a: int) -> dict:
    monos = []
    for exps, coeff in f.monomials:
        digits = []
        c = coeff
        for _ in range(a):
            digits.append(str(c % p))
            c //= p
        monos.append({"exponents": [str(e) for e in exps], "coefficient": digits})
    return {"degree": str(f.degree), "monomials": monos}


def _form_from_dict(d: dict, n: int, p: int, a: int) -> HomogPoly:
    monos = []
    for mono in d["monomials"]:
        exps = tuple(int(e) for e in mono["exponents"])
        digits = [int(x) for x in mono["coefficient"]]
        if len(digits) != a:
            raise CharsumsError(
                f"coefficient digit vector {digits} must have length a={a}")
        if any(not 0 <= x < p for x in digits):
            raise CharsumsError(f"coefficient digits {digits} must lie in 0..p-1")
        monos.append((exps, _digits_to_code(digits, p)))
    return HomogPoly(n, int(d["degree"]), tuple(monos))


def _opt_int(d: dict, key: str, default):
    v = d.get(key)
    if v is None:
        return default
    return int(v)


def spec_from_dict(data: dict) -> InstanceSpec:
    try:
        p = int(data["p"])
        a = int(data["a"])
        n = int(data["n"])
        opts_d = data.get("options", {})
        options = InstanceOptions(
            precision=_opt_int(opts_d, "precision", None),
            m_max=_opt_int(opts_d, "m_max", DEFAULT_M_MAX),
            budget=_opt_int(opts_d, "budget", DEFAULT_BUDGET),
            seed=_opt_int(opts_d, "seed", 0),
            backend=opts_d.get("backend"),
            allow_trivial=bool(opts_d.get("allow_trivial", False)),
        )
        forms = [_form_from_dict(fd, n, p, a) for fd in data["forms"]]
        numerators = [int(c) for c in data["char_numerators"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise CharsumsError(f"malformed instance config: {exc}") from exc
    return InstanceSpec(p=p, a=a, n=n, forms=forms, char_numerators=numerators,
                        options=options)


def load_spec(path: str) -> InstanceSpec:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return spec_from_dict(data)


@dataclass
class SweepTemplate:
    """A sweep config: everything an InstanceSpec has except the character
    numerators (the sweep enumerates those)."""

    p: int
    a: int
    n: int
    forms: list[HomogPoly]
    options: InstanceOptions

    @property
    def q(self) -> int:
        return self.p ** self.a


def load_sweep_template(path: str) -> SweepTemplate:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        p = int(data["p"])
        a = int(data["a"])
        n = int(data["n"])
        opts_d = data.get("options", {})
        options = InstanceOptions(
            precision=_opt_int(opts_d, "precision", None),
            m_max=_opt_int(opts_d, "m_max", DEFAULT_M_MAX),
            budget=_opt_int(opts_d, "budget", DEFAULT_BUDGET),
            seed=_opt_int(opts_d, "seed", 0),
            backend=opts_d.get("backend"),
        )
        forms = [_form_from_dict(fd, n, p, a) for fd in data["forms"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise CharsumsError(f"malformed sweep config: {exc}") from exc
    if not is_prime(p):
        raise CharsumsError(f"{p} is not prime")
    return SweepTemplate(p=p, a=a, n=n, forms=forms, options=options)
