"""Numba implementation of the exponent-histogram kernel.

One flat index per point: the free coordinates of the block are the
base-Q digits of the index (leftmost most significant), prepended with
the fixed prefix codes.  Element codes are base-p digit packings of
power-basis coordinates; multiplication goes through exp/log tables,
addition through digitwise base-p arithmetic.
"""

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _add_codes(x, y, p, ndigits):
    res = np.int64(0)
    mult = np.int64(1)
    for _ in range(ndigits):
        s = (x % p + y % p) % p
        res += s * mult
        mult *= p
        x //= p
        y //= p
    return res


@njit(cache=True)
def histogram_block(prefix, start, stop, Q, p, ndigits, qm1,
                    exp_table, log_table,
                    mono_exps, mono_logs, form_starts, weights, require_zero,
                    hist):
    nvars = mono_exps.shape[1]
    nprefix = prefix.shape[0]
    nfree = nvars - nprefix
    nforms = form_starts.shape[0] - 1
    coords = np.empty(nvars, dtype=np.int64)
    for j in range(nprefix):
        coords[j] = prefix[j]
    order = Q - 1
    for idx in range(start, stop):
        rem = idx
        for j in range(nfree - 1, -1, -1):
            coords[nprefix + j] = rem % Q
            rem //= Q
        k = np.int64(0)
        dead = False
        for fi in range(nforms):
            acc = np.int64(0)
            for mi in range(form_starts[fi], form_starts[fi + 1]):
                L = mono_logs[mi]
                alive = True
                for j in range(nvars):
                    u = mono_exps[mi, j]
                    if u == 0:
                        continue
                    xv = coords[j]
                    if xv == 0:
                        alive = False
                        break
                    L += u * log_table[xv]
                if alive:
                    acc = _add_codes(acc, exp_table[L % order], p, ndigits)
            if require_zero[fi] != 0:
                if acc != 0:
                    dead = True
                    break
            else:
                if acc == 0:
                    dead = True
                    break
                k += weights[fi] * log_table[acc]
        if not dead:
            hist[k % qm1] += 1
