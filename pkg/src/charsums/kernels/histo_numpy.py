"""Pure-numpy implementation of the exponent-histogram kernel; exact
same contract and results as the numba twin, vectorized over the flat
point index."""

import numpy as np

_CHUNK = 1 << 16


def _add_codes(x, y, p, ndigits):
    res = np.zeros_like(x)
    mult = 1
    x = x.copy()
    y = y.copy()
    for _ in range(ndigits):
        res += ((x % p + y % p) % p) * mult
        mult *= p
        x //= p
        y //= p
    return res


def histogram_block(prefix, start, stop, Q, p, ndigits, qm1,
                    exp_table, log_table,
                    mono_exps, mono_logs, form_starts, weights, require_zero,
                    hist):
    nvars = mono_exps.shape[1]
    nprefix = prefix.shape[0]
    nfree = nvars - nprefix
    nforms = form_starts.shape[0] - 1
    order = Q - 1
    pos = start
    while pos < stop:
        hi = min(pos + _CHUNK, stop)
        idx = np.arange(pos, hi, dtype=np.int64)
        coords = np.empty((nvars, idx.shape[0]), dtype=np.int64)
        for j in range(nprefix):
            coords[j] = prefix[j]
        rem = idx
        for j in range(nfree - 1, -1, -1):
            coords[nprefix + j] = rem % Q
            rem = rem // Q
        k = np.zeros(idx.shape[0], dtype=np.int64)
        live = np.ones(idx.shape[0], dtype=bool)
        for fi in range(nforms):
            acc = np.zeros(idx.shape[0], dtype=np.int64)
            for mi in range(form_starts[fi], form_starts[fi + 1]):
                L = np.full(idx.shape[0], mono_logs[mi], dtype=np.int64)
                alive = np.ones(idx.shape[0], dtype=bool)
                for j in range(nvars):
                    u = mono_exps[mi, j]
                    if u == 0:
                        continue
                    xv = coords[j]
                    alive &= xv != 0
                    L += u * log_table[np.where(xv == 0, 1, xv)]
                val = np.where(alive, exp_table[L % order], 0)
                acc = _add_codes(acc, val, p, ndigits)
            if require_zero[fi] != 0:
                live &= acc == 0
            else:
                nz = acc != 0
                live &= nz
                k += weights[fi] * log_table[np.where(nz, acc, 1)]
        ks = k[live] % qm1
        if ks.size:
            hist += np.bincount(ks, minlength=qm1).astype(np.int64)
        pos = hi
