"""Independent oracle for the Hodge numbers: the bigraded complex of
logarithmic forms over F_q[x, y] with boundary dF wedge, where
F = sum_i y_i f_i(x).

Basis forms are x^u y^v dx_I (dy/y)_J with bidegree
deg_1 = |u| - sum_j v_j d_j + |I| and deg_2 = |v|; the boundary has
bidegree (0, 1).  The top cohomology in a fixed deg_1 slice is a
cokernel, so its stratum dimensions are dim - rank computations over
F_q; these must reproduce the closed-form Hodge numbers.

The contraction operator theta lowers form degree by 1 and preserves the
bidegree; the sign conventions (canonical order dx_0 < ... < dx_n <
dy_1/y_1 < ... < dy_r/y_r) are fixed here once and gated by the
theta^2 = 0 / dF^2 = 0 tests.  The weight of the first theta sum is the
omitted variable x_{i_s}: that reading is the one under which theta
squares to zero and the descending theta sequence is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import NamedTuple, Optional

import numpy as np

from .ffield import FieldDesc, HomogPoly
from .hodge import DegreeProfile


class FormBasisIndex(NamedTuple):
    """Monomial form x^u y^v dx_I (dy/y)_J; I, J sorted tuples."""

    u: tuple[int, ...]
    v: tuple[int, ...]
    I: tuple[int, ...]
    J: tuple[int, ...]

    def form_degree(self) -> int:
        return len(self.I) + len(self.J)

    def deg1(self, degrees: tuple[int, ...]) -> int:
        return sum(self.u) - sum(vj * dj for vj, dj in zip(self.v, degrees)) + len(self.I)

    def deg2(self) -> int:
        return sum(self.v)


@dataclass
class GradedMap:
    """Matrix of a graded map between monomial bases; entries are F_q codes,
    shape (len(target), len(source))."""

    source: list[FormBasisIndex]
    target: list[FormBasisIndex]
    matrix: np.ndarray

    def rank(self, field: FieldDesc) -> int:
        return matrix_rank(field, self.matrix)


def _compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative integers summing to `total`,
    lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def basis(k: int, i1: int, i2: int, profile: DegreeProfile) -> list[FormBasisIndex]:
    """All monomial basis forms of form degree k and bidegree (i1, i2)."""
    n, r = profile.n, profile.r
    degrees = profile.degrees
    if i2 < 0 or k < 0 or k > n + 1 + r:
        return []
    out: list[FormBasisIndex] = []
    for jsize in range(max(0, k - (n + 1)), min(k, r) + 1):
        isize = k - jsize
        for I in combinations(range(n + 1), isize):
            for J in combinations(range(1, r + 1), jsize):
                for v in _compositions(i2, r):
                    udeg = i1 + sum(vj * dj for vj, dj in zip(v, degrees)) - isize
                    if udeg < 0:
                        continue
                    for u in _compositions(udeg, n + 1):
                        out.append(FormBasisIndex(u, v, I, J))
    return out


# --- vectorized F_q linear algebra on code arrays -----------------------


def _mul_codes_array(field: FieldDesc, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    nz = (X != 0) & (Y != 0)
    lx = field.log[np.where(X == 0, 1, X)]
    ly = field.log[np.where(Y == 0, 1, Y)]
    return np.where(nz, field.exp[(lx + ly) % (field.q - 1)], 0)


def _add_codes_array(field: FieldDesc, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    p = field.p
    res = np.zeros_like(X)
    mult = 1
    X = X.copy()
    Y = Y.copy()
    for _ in range(field.a):
        res += ((X % p + Y % p) % p) * mult
        mult *= p
        X //= p
        Y //= p
    return res


def _neg_codes_array(field: FieldDesc, X: np.ndarray) -> np.ndarray:
    return _mul_codes_array(field, X, np.full_like(X, field.p - 1)) if field.p != 2 \
        else X.copy()


def _rank_prime(p: int, M: np.ndarray) -> int:
    """Elimination over a prime field: plain integer arithmetic mod p."""
    M = M % p
    rows, cols = M.shape
    rank = 0
    for c in range(cols):
        nz = np.nonzero(M[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        M[rank] = (M[rank] * pow(int(M[rank, c]), -1, p)) % p
        col = M[rank + 1:, c]
        nzr = np.nonzero(col)[0]
        if nzr.size:
            M[rank + 1 + nzr] = (M[rank + 1 + nzr]
                                 - np.outer(col[nzr], M[rank])) % p
        rank += 1
        if rank == rows:
            break
    return rank


def matrix_rank(field: FieldDesc, M: np.ndarray) -> int:
    """Gaussian elimination over F_q on an int64 code matrix."""
    if M.size == 0:
        return 0
    if field.a == 1:
        return _rank_prime(field.p, M)
    M = M.copy()
    rows, cols = M.shape
    rank = 0
    log, exp, order = field.log, field.exp, field.q - 1
    for c in range(cols):
        nzcol = np.nonzero(M[rank:, c])[0]
        if nzcol.size == 0:
            continue
        piv = rank + int(nzcol[0])
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        inv = field.inv(int(M[rank, c]))
        M[rank] = _mul_codes_array(field, M[rank], np.full(cols, inv, dtype=np.int64))
        below = M[rank + 1:, c]
        nz = np.nonzero(below)[0]
        if nz.size:
            factors = below[nz]
            pivrow = M[rank]
            live = pivrow != 0
            upd = np.zeros((nz.size, cols), dtype=np.int64)
            lp = log[np.where(live, pivrow, 1)]
            upd[:, live] = exp[(log[factors][:, None] + lp[live][None, :]) % order]
            M[rank + 1 + nz] = _add_codes_array(
                field, M[rank + 1 + nz], _neg_codes_array(field, upd))
        rank += 1
        if rank == rows:
            break
    return rank


# --- the boundary dF wedge ----------------------------------------------


def _index_map(items: list[FormBasisIndex]) -> dict[FormBasisIndex, int]:
    return {b: i for i, b in enumerate(items)}


def dF_matrix(k: int, i1: int, i2: int, fs: list[HomogPoly],
              field: FieldDesc, profile: DegreeProfile) -> GradedMap:
    """Matrix of wedging with dF = sum_i (y_i df_i + f_i y_i (dy_i/y_i)),
    from bidegree (i1, i2) of form degree k to (i1, i2+1) of degree k+1."""
    if tuple(f.degree for f in fs) != profile.degrees:
        raise ValueError(
            f"form degrees {[f.degree for f in fs]} do not match {profile.degrees}")
    n, r = profile.n, profile.r
    src = basis(k, i1, i2, profile)
    tgt = basis(k + 1, i1, i2 + 1, profile)
    tgt_pos = _index_map(tgt)
    M = np.zeros((len(tgt), len(src)), dtype=np.int64)
    p = field.p
    for col, b in enumerate(src):
        for i in range(1, r + 1):
            f = fs[i - 1]
            vnew = list(b.v)
            vnew[i - 1] += 1
            vnew_t = tuple(vnew)
            # y_i df_i wedge: dx_j joins I with the sign of its insertion
            for j in range(n + 1):
                if j in b.I:
                    continue
                pos = sum(1 for x in b.I if x < j)
                sign = 1 if pos % 2 == 0 else p - 1
                Inew = tuple(sorted(b.I + (j,)))
                for exps, coeff in f.monomials:
                    if exps[j] == 0:
                        continue
                    c = field.mul_scalar(coeff, exps[j] % p)
                    if c == 0:
                        continue
                    unew = tuple(a + e for a, e in zip(b.u, exps))
                    unew = unew[:j] + (unew[j] - 1,) + unew[j + 1:]
                    key = FormBasisIndex(unew, vnew_t, Inew, b.J)
                    row = tgt_pos.get(key)
                    if row is None:
                        raise RuntimeError(f"boundary image {key} missing from target basis")
                    M[row, col] = field.add(int(M[row, col]), field.mul_scalar(c, sign))
            # f_i y_i (dy_i/y_i) wedge: dy_i/y_i joins J past all of I and
            # the earlier dy's
            if i not in b.J:
                pos = len(b.I) + sum(1 for x in b.J if x < i)
                sign = 1 if pos % 2 == 0 else p - 1
                Jnew = tuple(sorted(b.J + (i,)))
                for exps, coeff in f.monomials:
                    unew = tuple(a + e for a, e in zip(b.u, exps))
                    key = FormBasisIndex(unew, vnew_t, b.I, Jnew)
                    row = tgt_pos.get(key)
                    if row is None:
                        raise RuntimeError(f"boundary image {key} missing from target basis")
                    M[row, col] = field.add(int(M[row, col]), field.mul_scalar(coeff, sign))
    return GradedMap(src, tgt, M)


def theta_matrix(k: int, i1: int, i2: int, profile: DegreeProfile,
                 field: FieldDesc) -> GradedMap:
    """Matrix of the contraction theta from (k, i1, i2) to (k-1, i1, i2):
    theta(dx_I (dy/y)_J) = sum_s (-1)^(s-1) x_{i_s} dx_{I minus i_s} (dy/y)_J
    + (-1)^|I| sum_t (-1)^t d_{j_t} dx_I (dy/y)_{J minus j_t}."""
    src = basis(k, i1, i2, profile)
    tgt = basis(k - 1, i1, i2, profile)
    tgt_pos = _index_map(tgt)
    M = np.zeros((len(tgt), len(src)), dtype=np.int64)
    p = field.p
    for col, b in enumerate(src):
        for s, ivar in enumerate(b.I, start=1):
            sign = 1 if (s - 1) % 2 == 0 else p - 1
            unew = list(b.u)
            unew[ivar] += 1
            key = FormBasisIndex(tuple(unew), b.v, tuple(x for x in b.I if x != ivar), b.J)
            row = tgt_pos.get(key)
            if row is None:
                raise RuntimeError(f"theta image {key} missing from target basis")
            M[row, col] = field.add(int(M[row, col]), sign)
        l = len(b.I)
        for t, jvar in enumerate(b.J, start=1):
            signexp = l + t
            weight = profile.degrees[jvar - 1] % p
            if weight == 0:
                continue
            coeff = weight if signexp % 2 == 0 else (p - weight) % p
            key = FormBasisIndex(b.u, b.v, b.I, tuple(x for x in b.J if x != jvar))
            row = tgt_pos.get(key)
            if row is None:
                raise RuntimeError(f"theta image {key} missing from target basis")
            M[row, col] = field.add(int(M[row, col]), coeff)
    return GradedMap(src, tgt, M)


def k_via_cokernel(j: int, d_bar_e: int, fs: list[HomogPoly],
                   field: FieldDesc, profile: DegreeProfile) -> int:
    """dim of the top cohomology stratum: dim of the top forms at
    (d_bar_e, j) minus the rank of the boundary arriving from
    (d_bar_e, j-1)."""
    top = profile.n + 1 + profile.r
    dim_top = len(basis(top, d_bar_e, j, profile))
    if dim_top == 0:
        return 0
    arriving = dF_matrix(top - 1, d_bar_e, j - 1, fs, field, profile)
    return dim_top - arriving.rank(field)


@dataclass
class ExactnessReport:
    exact: bool
    failures: list[dict] = dc_field(default_factory=list)
    strata_checked: list[tuple] = dc_field(default_factory=list)


def verify_theta_exactness(deg1: int, profile: DegreeProfile, field: FieldDesc,
                           deg2_max: int = 3) -> ExactnessReport:
    """Rank bookkeeping for the descending theta sequence in the given
    positive deg_1 slice, stratum by stratum in deg_2: exact iff at every
    form degree k, dim = rank(theta_k) + rank(theta_{k+1})."""
    if deg1 <= 0:
        raise ValueError("theta-sequence exactness is only asserted for deg_1 > 0")
    top = profile.n + 1 + profile.r
    report = ExactnessReport(exact=True)
    for i2 in range(deg2_max + 1):
        ranks = {}
        dims = {}
        for k in range(top + 1):
            dims[k] = len(basis(k, deg1, i2, profile))
            ranks[k] = theta_matrix(k, deg1, i2, profile, field).rank(field) if k >= 1 else 0
        ranks[top + 1] = 0
        for k in range(top + 1):
            if dims[k] != ranks[k] + ranks[k + 1]:
                report.exact = False
                report.failures.append({
                    "deg2": i2, "form_degree": k,
                    "dim": dims[k], "rank_out": ranks[k], "rank_in": ranks[k + 1]})
        report.strata_checked.append((deg1, i2))
    return report


@dataclass
class AcyclicityReport:
    acyclic: bool
    failures: list[dict] = dc_field(default_factory=list)
    top_isomorphism: bool = True
    strata_checked: list[tuple] = dc_field(default_factory=list)


def verify_acyclicity(d_bar_e: int, fs: list[HomogPoly], field: FieldDesc,
                      profile: DegreeProfile, k_range=None,
                      deg2_max: int | None = None) -> AcyclicityReport:
    """Checks H^k = 0 stratum by stratum for k below n+r, and the
    dimension equality of the two top cohomology groups."""
    n, r = profile.n, profile.r
    top = n + 1 + r
    if k_range is None:
        k_range = range(0, n + r)
    if deg2_max is None:
        deg2_max = n + 1
    report = AcyclicityReport(acyclic=True)
    dims: dict[tuple[int, int], int] = {}
    ranks: dict[tuple[int, int], int] = {}

    def dim(k, i2):
        if (k, i2) not in dims:
            dims[(k, i2)] = len(basis(k, d_bar_e, i2, profile))
        return dims[(k, i2)]

    def rank(k, i2):
        # rank of dF from (k, i2) to (k+1, i2+1)
        if (k, i2) not in ranks:
            if i2 < 0 or dim(k, i2) == 0:
                ranks[(k, i2)] = 0
            else:
                ranks[(k, i2)] = dF_matrix(k, d_bar_e, i2, fs, field, profile).rank(field)
        return ranks[(k, i2)]

    for k in k_range:
        if k >= n + r:
            raise ValueError(f"acyclicity is only asserted below form degree {n + r}")
        for i2 in range(deg2_max + 1):
            kernel = dim(k, i2) - rank(k, i2)
            image = rank(k - 1, i2 - 1) if k >= 1 else 0
            if kernel != image:
                report.acyclic = False
                report.failures.append({
                    "form_degree": k, "deg2": i2,
                    "kernel_dim": kernel, "image_dim": image})
            report.strata_checked.append((k, i2))
    # dim H^(n+r) == dim H^(n+r+1) per stratum
    for i2 in range(deg2_max + 1):
        h_top = dim(top, i2) - rank(top - 1, i2 - 1)
        h_below = dim(top - 1, i2) - rank(top - 1, i2) - rank(top - 2, i2 - 1)
        if h_top != h_below:
            report.top_isomorphism = False
            report.failures.append({
                "form_degree": "top pair", "deg2": i2,
                "top_dim": h_top, "below_dim": h_below})
    return report
