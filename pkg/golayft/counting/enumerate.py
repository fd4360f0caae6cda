"""
Copyright © 2026 The golayft developers.

Fault-set enumeration kernels. A configuration picks k distinct items and one choice per item; its
fields are the XOR of the choice fields and its weight the product of the choice weights.
"""
from math import factorial
from typing import Optional, Tuple

import numpy as np
from numba import njit, prange

from .tables import lift, primes_for
from ..circuits.propagate import FaultItems

ALL, ACCEPTED, REJECTED = 0, 1, 2
INT64_MAX = np.iinfo(np.int64).max


@njit(cache=True)
def _advance(d, k, idx, ch, start, n):
    """ next configuration at depth <= d; returns the new depth or -1 when exhausted """
    while True:
        ch[d] += 1
        if ch[d] < start[idx[d] + 1]:
            return d
        if d == 0:
            return -1
        idx[d] += 1
        if idx[d] <= n - (k - d):
            ch[d] = start[idx[d]]
            return d
        d -= 1


@njit(cache=True)
def hist_first(i0, k, start, fields, weight, accept_mask, mode, out_mask, out_shift, row, p):
    """ histogram of output keys over configurations whose first item is i0, modulo p when p > 0 """
    n = start.shape[0] - 1
    nf = fields.shape[1]
    idx = np.zeros(k, np.int64)
    ch = np.zeros(k, np.int64)
    pf = np.zeros((k + 1, nf), np.int64)
    pw = np.ones(k + 1, np.int64)
    idx[0] = i0
    ch[0] = start[i0]
    d = 0
    while d >= 0:
        c = ch[d]
        for f in range(nf):
            pf[d + 1, f] = pf[d, f] ^ fields[c, f]
        pw[d + 1] = pw[d] * weight[c] if p == 0 else pw[d] * weight[c] % p
        if d < k - 1:
            d += 1
            idx[d] = idx[d - 1] + 1
            ch[d] = start[idx[d]]
            continue
        ok = True
        for f in range(nf):
            if pf[k, f] & accept_mask[f]:
                ok = False
                break
        if mode == 0 or (mode == 1 and ok) or (mode == 2 and not ok):
            key = 0
            for f in range(nf):
                key |= (pf[k, f] & out_mask[f]) << out_shift[f]
            row[key] += pw[k]
            if p > 0:
                row[key] %= p
        d = _advance(d, k, idx, ch, start, n)


@njit(parallel=True, cache=True)
def hist_matrix(k, start, fields, weight, accept_mask, mode, out_mask, out_shift, rows, p):
    """ one histogram row per first item, filled in parallel """
    for i0 in prange(rows.shape[0]):
        hist_first(i0, k, start, fields, weight, accept_mask, mode, out_mask, out_shift, rows[i0], p)


@njit(cache=True)
def pairs_first(i0, k, start, fields, weight, accept_mask, mode, out_mask, out_shift, keys, wts, pos):
    """ write (key, weight) of every selected configuration whose first item is i0 from pos on """
    n = start.shape[0] - 1
    nf = fields.shape[1]
    idx = np.zeros(k, np.int64)
    ch = np.zeros(k, np.int64)
    pf = np.zeros((k + 1, nf), np.int64)
    pw = np.ones(k + 1, np.int64)
    idx[0] = i0
    ch[0] = start[i0]
    d = 0
    m = pos
    while d >= 0:
        c = ch[d]
        for f in range(nf):
            pf[d + 1, f] = pf[d, f] ^ fields[c, f]
        pw[d + 1] = pw[d] * weight[c]
        if d < k - 1:
            d += 1
            idx[d] = idx[d - 1] + 1
            ch[d] = start[idx[d]]
            continue
        ok = True
        for f in range(nf):
            if pf[k, f] & accept_mask[f]:
                ok = False
                break
        key = -1
        if mode == 0 or (mode == 1 and ok) or (mode == 2 and not ok):
            key = 0
            for f in range(nf):
                key |= (pf[k, f] & out_mask[f]) << out_shift[f]
        keys[m] = key
        wts[m] = pw[k]
        m += 1
        d = _advance(d, k, idx, ch, start, n)


@njit(parallel=True, cache=True)
def pairs_matrix(k, start, fields, weight, accept_mask, mode, out_mask, out_shift, offsets, keys, wts):
    for i0 in prange(offsets.shape[0] - 1):
        if offsets[i0 + 1] > offsets[i0]:
            pairs_first(i0, k, start, fields, weight, accept_mask, mode, out_mask, out_shift, keys, wts,
                        offsets[i0])


@njit(cache=True)
def ft_first(i0, k, start, fields, accept_mask, out_field, out_mask, wtable):
    """ (largest accepted output weight, number of accepted configurations with weight > k) """
    n = start.shape[0] - 1
    nf = fields.shape[1]
    idx = np.zeros(k, np.int64)
    ch = np.zeros(k, np.int64)
    pf = np.zeros((k + 1, nf), np.int64)
    idx[0] = i0
    ch[0] = start[i0]
    d = 0
    wmax = 0
    nbad = 0
    while d >= 0:
        c = ch[d]
        for f in range(nf):
            pf[d + 1, f] = pf[d, f] ^ fields[c, f]
        if d < k - 1:
            d += 1
            idx[d] = idx[d - 1] + 1
            ch[d] = start[idx[d]]
            continue
        ok = True
        for f in range(nf):
            if pf[k, f] & accept_mask[f]:
                ok = False
                break
        if ok:
            w = wtable[pf[k, out_field] & out_mask]
            if w > wmax:
                wmax = w
            if w > k:
                nbad += 1
        d = _advance(d, k, idx, ch, start, n)
    return wmax, nbad


@njit(parallel=True, cache=True)
def ft_matrix(k, start, fields, accept_mask, out_field, out_mask, wtable, wmax, nbad):
    for i0 in prange(wmax.shape[0]):
        wmax[i0], nbad[i0] = ft_first(i0, k, start, fields, accept_mask, out_field, out_mask, wtable)


@njit(cache=True)
def witnesses_first(i0, k, start, fields, accept_mask, out_field, out_mask, wtable, limit, found_items,
                    found_choices, found_weight):
    """ first `limit` accepted configurations starting at i0 whose output weight exceeds k """
    n = start.shape[0] - 1
    nf = fields.shape[1]
    idx = np.zeros(k, np.int64)
    ch = np.zeros(k, np.int64)
    pf = np.zeros((k + 1, nf), np.int64)
    idx[0] = i0
    ch[0] = start[i0]
    d = 0
    m = 0
    while d >= 0 and m < limit:
        c = ch[d]
        for f in range(nf):
            pf[d + 1, f] = pf[d, f] ^ fields[c, f]
        if d < k - 1:
            d += 1
            idx[d] = idx[d - 1] + 1
            ch[d] = start[idx[d]]
            continue
        ok = True
        for f in range(nf):
            if pf[k, f] & accept_mask[f]:
                ok = False
                break
        if ok:
            w = wtable[pf[k, out_field] & out_mask]
            if w > k:
                found_items[m, :] = idx
                found_choices[m, :] = ch
                found_weight[m] = w
                m += 1
        d = _advance(d, k, idx, ch, start, n)
    return m


def n_configurations(items: FaultItems, k: int) -> np.ndarray:
    """ number of configurations per first item, from elementary symmetric sums of choice counts """
    counts = np.diff(items.start).astype(object)
    n = len(counts)
    out = np.zeros(n, dtype=object)
    if k == 0:
        return out
    # e[j] = elementary symmetric sum of order j over items i+1..n-1
    e = [1] + [0] * (k - 1)
    for i in range(n - 1, -1, -1):
        out[i] = counts[i] * e[k - 1]
        for j in range(k - 1, 0, -1):
            e[j] = e[j] + counts[i] * e[j - 1]
    return out


def weight_bound(items: FaultItems, k: int) -> int:
    """ upper bound on the total weight of all order-k configurations """
    s = int(items.weight.sum())
    return s ** k // factorial(k) + 1


def _masks(items: FaultItems, out_fields, out_bits) -> Tuple[np.ndarray, np.ndarray, int]:
    nf = len(items.layout)
    out_mask = np.zeros(nf, dtype=np.int64)
    out_shift = np.zeros(nf, dtype=np.int64)
    shift = 0
    for j, bits in zip(out_fields, out_bits):
        out_mask[j] = (1 << bits) - 1
        out_shift[j] = shift
        shift += bits
    return out_mask, out_shift, shift


def histogram(items: FaultItems, k: int, out_fields=(), out_bits=(), mode: int = ALL,
              accept_mask: Optional[np.ndarray] = None) -> np.ndarray:
    """total weight of order-k configurations per packed output key

    out_fields/out_bits select the fields packed into the key (first field lowest). The result is
    int64 when the total weight fits, otherwise an object array lifted from residues modulo primes.
    """
    out_mask, out_shift, nbits = _masks(items, out_fields, out_bits)
    accept_mask = items.accept_mask() if accept_mask is None else np.asarray(accept_mask, dtype=np.int64)
    if k == 0:
        out = np.zeros(1 << nbits, dtype=np.int64)
        if mode != REJECTED:
            out[0] = 1
        return out
    if items.n_items < k:
        return np.zeros(1 << nbits, dtype=np.int64)
    bound = weight_bound(items, k)
    shape = (items.n_items - k + 1, 1 << nbits)
    if bound < INT64_MAX:
        rows = np.zeros(shape, dtype=np.int64)
        hist_matrix(k, items.start, items.fields, items.weight, accept_mask, mode, out_mask, out_shift, rows, 0)
        return rows.sum(axis=0)
    primes = primes_for(bound)
    res = np.empty((len(primes), 1 << nbits), dtype=np.int64)
    for i, p in enumerate(primes):
        rows = np.zeros(shape, dtype=np.int64)
        hist_matrix(k, items.start, items.fields, items.weight % p, accept_mask, mode, out_mask, out_shift, rows,
                    int(p))
        res[i] = rows.sum(axis=0) % p
    return lift(res, primes)


def sparse_histogram(items: FaultItems, k: int, out_fields=(), out_bits=(), mode: int = ALL,
                     accept_mask: Optional[np.ndarray] = None) -> Tuple[np.ndarray, np.ndarray]:
    """ like histogram, returning (sorted keys, weights) without a dense key space """
    out_mask, out_shift, nbits = _masks(items, out_fields, out_bits)
    accept_mask = items.accept_mask() if accept_mask is None else np.asarray(accept_mask, dtype=np.int64)
    if k == 0:
        if mode == REJECTED:
            return np.zeros(0, np.int64), np.zeros(0, np.int64)
        return np.zeros(1, np.int64), np.ones(1, np.int64)
    if items.n_items < k:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    if int(items.weight.max()) ** k >= INT64_MAX:
        raise ValueError(f"order-{k} products of weights up to {int(items.weight.max())} overflow int64")
    counts = n_configurations(items, k)
    offsets = np.zeros(items.n_items + 1, dtype=np.int64)
    offsets[1:] = np.cumsum(counts.astype(np.int64))
    keys = np.empty(offsets[-1], dtype=np.int64)
    wts = np.empty(offsets[-1], dtype=np.int64)
    pairs_matrix(k, items.start, items.fields, items.weight, accept_mask, mode, out_mask, out_shift,
                 offsets, keys, wts)
    sel = keys >= 0
    keys, wts = keys[sel], wts[sel]
    if len(keys) == 0:
        return keys, wts
    srt = np.argsort(keys, kind="stable")
    keys = keys[srt]
    starts = np.flatnonzero(np.r_[True, np.diff(keys) != 0])
    wts = wts[srt] if weight_bound(items, k) < INT64_MAX else wts[srt].astype(object)
    return keys[starts], np.add.reduceat(wts, starts)


def ft_scan(items: FaultItems, k: int, out_field: int, out_mask: int,
            wtable: np.ndarray) -> Tuple[int, int, np.ndarray]:
    """ (largest accepted weight, number of violations, violations per first item) at order k """
    if k == 0 or items.n_items < k:
        return 0, 0, np.zeros(max(items.n_items, 0), dtype=np.int64)
    m = items.n_items - k + 1
    wmax = np.zeros(m, dtype=np.int64)
    nbad = np.zeros(m, dtype=np.int64)
    ft_matrix(k, items.start, items.fields, items.accept_mask(), out_field, out_mask,
              np.asarray(wtable, dtype=np.int64), wmax, nbad)
    return int(wmax.max()), int(nbad.sum()), nbad


def find_witnesses(items: FaultItems, k: int, out_field: int, out_mask: int, wtable: np.ndarray,
                   per_first: np.ndarray, limit: int):
    """ (item indices, choice rows, weight) of up to limit violating configurations """
    out = []
    wtable = np.asarray(wtable, dtype=np.int64)
    accept_mask = items.accept_mask()
    for i0 in np.flatnonzero(per_first):
        if len(out) >= limit:
            break
        want = limit - len(out)
        fi = np.zeros((want, k), dtype=np.int64)
        fc = np.zeros((want, k), dtype=np.int64)
        fw = np.zeros(want, dtype=np.int64)
        m = witnesses_first(int(i0), k, items.start, items.fields, accept_mask, out_field, out_mask, wtable,
                            want, fi, fc, fw)
        out.extend((tuple(fi[j]), tuple(fc[j]), int(fw[j])) for j in range(m))
    return out


