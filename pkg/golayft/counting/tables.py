"""
Copyright © 2026 The golayft developers.

Order tables: exact weighted counts w[k, key] of good fault configurations of order k leaving the
class key. XOR convolutions over the key space are Walsh-Hadamard products computed modulo primes
just below 2^31 and lifted back by Chinese remaindering; the number of primes follows from a bound
on the magnitude of the result.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from numba import njit, prange

from ..polynomials.countpoly import CountPoly

_CEILING = 1 << 31
_SEGMENT = 1 << 20
# tables with at most this many nonzero keys are convolved by direct shifting
DIRECT_KEYS = 24


@lru_cache(maxsize=None)
def large_primes() -> np.ndarray:
    """ primes in [2^31 - 2^20, 2^31), largest first """
    lo = _CEILING - _SEGMENT
    root = int(np.sqrt(_CEILING)) + 1
    small = np.ones(root + 1, dtype=bool)
    small[:2] = False
    for i in range(2, int(np.sqrt(root)) + 1):
        if small[i]:
            small[i * i::i] = False
    seg = np.ones(_SEGMENT, dtype=bool)
    for p in np.flatnonzero(small):
        p = int(p)
        first = max(p * p, -(-lo // p) * p)
        seg[first - lo::p] = False
    return (lo + np.flatnonzero(seg))[::-1].astype(np.int64)


def primes_for(bound: int) -> np.ndarray:
    """ enough primes for the symmetric residue range to hold every integer of magnitude <= bound """
    ps = large_primes()
    m, n = 1, 0
    while m <= 2 * int(bound) or n == 0:
        if n == len(ps):
            raise ValueError(f"magnitude bound of {int(bound).bit_length()} bits exceeds the prime pool")
        m *= int(ps[n])
        n += 1
    return ps[:n]


def residues(w: np.ndarray, primes: np.ndarray) -> np.ndarray:
    out = np.empty((len(primes),) + w.shape, dtype=np.int64)
    for i, p in enumerate(primes):
        out[i] = np.mod(w, int(p)).astype(np.int64)
    return out


def lift(res: np.ndarray, primes: np.ndarray) -> np.ndarray:
    """ the integers of smallest magnitude with the given residues (Garner's scheme) """
    x = res[0].astype(object)
    m = int(primes[0])
    for i in range(1, len(primes)):
        p = int(primes[i])
        inv = pow(m % p, -1, p)
        t = np.mod((res[i].astype(object) - x) * inv, p)
        x = x + t * m
        m *= p
    return np.where(x > m // 2, x - m, x)


@njit(cache=True)
def _wht(a, p):
    """ in-place Walsh-Hadamard transform of every row modulo p """
    m, size = a.shape
    h = 1
    while h < size:
        for r in range(m):
            for i in range(0, size, 2 * h):
                for j in range(i, i + h):
                    x = a[r, j]
                    y = a[r, j + h]
                    a[r, j] = (x + y) % p
                    a[r, j + h] = (x - y + p) % p
        h *= 2


@njit(cache=True)
def _inv_mod(a, p):
    result = 1
    base = a % p
    e = p - 2
    while e > 0:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


@njit(cache=True)
def _series_mac(acc, a, b, kmax, p):
    """ acc[k] += sum_{i+j=k} a[i] * b[j] elementwise, modulo p """
    for i in range(a.shape[0]):
        for j in range(b.shape[0]):
            k = i + j
            if k > kmax:
                break
            for x in range(a.shape[1]):
                acc[k, x] = (acc[k, x] + a[i, x] * b[j, x]) % p


@njit(cache=True)
def _finish(acc, p):
    _wht(acc, p)
    s = _inv_mod(acc.shape[1] % p, p)
    for k in range(acc.shape[0]):
        for x in range(acc.shape[1]):
            acc[k, x] = acc[k, x] * s % p


@njit(parallel=True, cache=True)
def _convolve_kernel(a, b, kmax, primes, out):
    for pi in prange(primes.shape[0]):
        p = primes[pi]
        fa = a[pi].copy()
        fb = b[pi].copy()
        _wht(fa, p)
        _wht(fb, p)
        acc = np.zeros((kmax + 1, fa.shape[1]), np.int64)
        _series_mac(acc, fa, fb, kmax, p)
        _finish(acc, p)
        out[pi] = acc


@njit(parallel=True, cache=True)
def _grouped_kernel(a, b, shifts, gstart, ekey, eorder, ew, ns, kmax, primes, out):
    """sum over groups g of (a * b[x ^ shifts[g]]) convolved with the stage slice of group g

    The slice of group g holds entries gstart[g]..gstart[g+1]-1 at (eorder, ekey).
    """
    size = a.shape[2]
    for pi in prange(primes.shape[0]):
        p = primes[pi]
        acc = np.zeros((kmax + 1, size), np.int64)
        r = np.zeros((kmax + 1, size), np.int64)
        s = np.zeros((ns, size), np.int64)
        for g in range(shifts.shape[0]):
            sh = shifts[g]
            r[:, :] = 0
            for i in range(a.shape[1]):
                for j in range(b.shape[1]):
                    if i + j > kmax:
                        break
                    for x in range(size):
                        r[i + j, x] = (r[i + j, x] + a[pi, i, x] * b[pi, j, x ^ sh]) % p
            s[:, :] = 0
            for e in range(gstart[g], gstart[g + 1]):
                s[eorder[e], ekey[e]] = (s[eorder[e], ekey[e]] + ew[pi, e]) % p
            _wht(r, p)
            _wht(s, p)
            _series_mac(acc, r, s, kmax, p)
        _finish(acc, p)
        out[pi] = acc


@njit(parallel=True, cache=True)
def _spread_kernel(a, b, shifts, gstart, ekey, eorder, ew, ns, kmax, primes, out):
    """ sum over groups g of (a convolved with the stage slice of group g) * b[x ^ shifts[g]] """
    size = a.shape[2]
    for pi in prange(primes.shape[0]):
        p = primes[pi]
        fa = a[pi].copy()
        _wht(fa, p)
        acc = np.zeros((kmax + 1, size), np.int64)
        c = np.zeros((kmax + 1, size), np.int64)
        s = np.zeros((ns, size), np.int64)
        for g in range(shifts.shape[0]):
            sh = shifts[g]
            s[:, :] = 0
            for e in range(gstart[g], gstart[g + 1]):
                s[eorder[e], ekey[e]] = (s[eorder[e], ekey[e]] + ew[pi, e]) % p
            _wht(s, p)
            c[:, :] = 0
            _series_mac(c, fa, s, kmax, p)
            _finish(c, p)
            for i in range(kmax + 1):
                for j in range(b.shape[1]):
                    if i + j > kmax:
                        break
                    for x in range(size):
                        acc[i + j, x] = (acc[i + j, x] + c[i, x] * b[pi, j, x ^ sh]) % p
        out[pi] = acc


def _add_census(*cs) -> Tuple[int, int, int]:
    return tuple(int(sum(c[i] for c in cs)) for i in range(3))


@dataclass(frozen=True, eq=False)
class OrderTable:
    """w[k, key] for k = 0..K over a key space of size 2^bits

    Every entry shares the prefactor described by census and kind, so entry (k, key) stands for
    the bound A(gamma) w[k, key] t^k (level one) or w[k, key] Gamma^k (level two).
    """
    w: np.ndarray
    census: Tuple[int, int, int] = (0, 0, 0)
    kind: str = "level1"

    def __post_init__(self):
        w = np.asarray(self.w)
        if w.dtype != object:
            w = w.astype(object)
        if w.ndim != 2 or w.shape[0] == 0:
            raise ValueError(f"order table needs shape (orders, keys), got {w.shape}")
        if w.shape[1] & (w.shape[1] - 1):
            raise ValueError(f"key space of size {w.shape[1]} is not a power of two")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "census", tuple(int(c) for c in self.census))

    @classmethod
    def zeros(cls, K: int, size: int, census=(0, 0, 0), kind: str = "level1") -> "OrderTable":
        return cls(np.zeros((K + 1, size), dtype=object), census, kind)

    @classmethod
    def delta(cls, size: int, key: int = 0, census=(0, 0, 0), kind: str = "level1") -> "OrderTable":
        """ certainty of the class key at order zero """
        t = cls.zeros(0, size, census, kind)
        t.w[0, key] = 1
        return t

    @classmethod
    def from_rows(cls, rows: Sequence[np.ndarray], census=(0, 0, 0), kind: str = "level1") -> "OrderTable":
        return cls(np.stack([np.asarray(r).astype(object) for r in rows]), census, kind)

    @property
    def K(self) -> int:
        return self.w.shape[0] - 1

    @property
    def size(self) -> int:
        return self.w.shape[1]

    def poly(self, key: int) -> CountPoly:
        return CountPoly(self.census, tuple(int(v) for v in self.w[:, key]), self.kind)

    def totals(self) -> CountPoly:
        """ per-order sums over every key """
        return CountPoly(self.census, tuple(int(v) for v in self.w.sum(axis=1)), self.kind)

    def mass(self) -> int:
        return int(np.abs(self.w).sum())

    def nonzero_keys(self, k: Optional[int] = None) -> np.ndarray:
        rows = self.w if k is None else self.w[k:k + 1]
        return np.flatnonzero((rows != 0).any(axis=0))

    def truncated(self, K: int) -> "OrderTable":
        return OrderTable(self.w[:K + 1], self.census, self.kind)

    def orders(self, lo: int, hi: int) -> "OrderTable":
        """ only the rows lo <= k <= hi """
        w = self.w.copy()
        w[:max(lo, 0)] = 0
        w[hi + 1:] = 0
        return OrderTable(w, self.census, self.kind)

    def padded(self, K: int) -> "OrderTable":
        if K <= self.K:
            return self
        extra = np.zeros((K - self.K, self.size), dtype=object)
        return OrderTable(np.concatenate([self.w, extra]), self.census, self.kind)

    def shifted(self, g: int) -> "OrderTable":
        """ entry at key x moves to x ^ g """
        return OrderTable(self.w[:, np.arange(self.size) ^ g], self.census, self.kind)

    def signed(self, flags: np.ndarray) -> "OrderTable":
        """ entries at keys with a set flag change sign """
        sign = np.where(np.asarray(flags) & 1, -1, 1).astype(object)
        return OrderTable(self.w * sign[None, :], self.census, self.kind)

    def scaled(self, factor: int) -> "OrderTable":
        return OrderTable(self.w * int(factor), self.census, self.kind)

    def with_census(self, census) -> "OrderTable":
        return OrderTable(self.w, census, self.kind)

    def _check(self, other: "OrderTable"):
        if self.kind != other.kind:
            raise ValueError(f"cannot combine {self.kind} and {other.kind} tables")
        if self.size != other.size:
            raise ValueError(f"key spaces of size {self.size} and {other.size}")

    def __add__(self, other: "OrderTable") -> "OrderTable":
        self._check(other)
        if self.census != other.census:
            raise ValueError(f"cannot add tables with censuses {self.census} and {other.census}")
        K = max(self.K, other.K)
        return OrderTable(self.padded(K).w + other.padded(K).w, self.census, self.kind)

    def __sub__(self, other: "OrderTable") -> "OrderTable":
        return self + other.scaled(-1)

    def split_logical(self, r: int) -> Tuple["OrderTable", "OrderTable"]:
        """ (logical 0, logical 1) halves indexed by syndrome """
        half = 1 << r
        if self.size != 2 * half:
            raise ValueError(f"key space of size {self.size} does not carry a logical bit above {r} bits")
        return (OrderTable(self.w[:, :half], self.census, self.kind),
                OrderTable(self.w[:, half:], self.census, self.kind))

    def syndromes(self, r: int) -> "OrderTable":
        """ the logical bit summed out """
        t0, t1 = self.split_logical(r)
        return OrderTable(t0.w + t1.w, self.census, self.kind)

    def expanded(self, r: int) -> "OrderTable":
        """ a syndrome table read on the full key space: entry (s, l) = entry s """
        return OrderTable(np.concatenate([self.w, self.w], axis=1), self.census, self.kind)

    def entries(self) -> Dict[Tuple[int, int], int]:
        ks, xs = np.nonzero(self.w != 0)
        return {(int(k), int(x)): int(self.w[k, x]) for k, x in zip(ks, xs)}

    def text(self) -> str:
        """ one line per nonzero key: the key and its count polynomial """
        return "\n".join(f"{int(x)} {self.poly(int(x)).text()}" for x in self.nonzero_keys())


def join_logical(t0: OrderTable, t1: OrderTable) -> OrderTable:
    t0._check(t1)
    K = max(t0.K, t1.K)
    return OrderTable(np.concatenate([t0.padded(K).w, t1.padded(K).w], axis=1), t0.census, t0.kind)


def indicator(values: np.ndarray, kind: str = "level1") -> OrderTable:
    """ order-zero table with entry 1 where values is nonzero """
    return OrderTable((np.asarray(values) != 0).astype(np.int64)[None, :], (0, 0, 0), kind)


def _max_order(a: OrderTable, b: OrderTable, max_order: int) -> int:
    K = a.K + b.K
    return K if max_order < 0 else min(K, max_order)


def series_product(a: OrderTable, b: OrderTable, max_order: int = -1) -> OrderTable:
    """ keywise product of the order series: censuses add """
    a._check(b)
    K = _max_order(a, b, max_order)
    out = np.zeros((K + 1, a.size), dtype=object)
    for i in range(min(a.K, K) + 1):
        for j in range(min(b.K, K - i) + 1):
            out[i + j] += a.w[i] * b.w[j]
    return OrderTable(out, _add_census(a.census, b.census), a.kind)


def series_dot(a: OrderTable, b: OrderTable, max_order: int = -1) -> CountPoly:
    """ sum over keys of the keywise product """
    return series_product(a, b, max_order).totals()


def _direct(a: OrderTable, b: OrderTable, keys: np.ndarray, K: int) -> np.ndarray:
    out = np.zeros((K + 1, a.size), dtype=object)
    idx = np.arange(a.size)
    for c in keys:
        sh = a.w[:, idx ^ int(c)]
        for j in range(min(b.K, K) + 1):
            v = b.w[j, c]
            if v == 0:
                continue
            for i in range(min(a.K, K - j) + 1):
                out[i + j] += sh[i] * v
    return out


def xor_convolve(a: OrderTable, b: OrderTable, max_order: int = -1) -> OrderTable:
    """distribution of the XOR of two independent classes, orders adding

    (a * b)[k, x] = sum_{i+j=k} sum_y a[i, y] b[j, x ^ y]
    """
    a._check(b)
    K = _max_order(a, b, max_order)
    census = _add_census(a.census, b.census)
    ka, kb = a.nonzero_keys(), b.nonzero_keys()
    if min(len(ka), len(kb)) <= DIRECT_KEYS:
        if len(ka) < len(kb):
            a, b, kb = b, a, ka
        return OrderTable(_direct(a, b, kb, K), census, a.kind)
    primes = primes_for(a.mass() * b.mass())
    out = np.zeros((len(primes), K + 1, a.size), dtype=np.int64)
    _convolve_kernel(residues(a.w, primes), residues(b.w, primes), K, primes, out)
    return OrderTable(lift(out, primes), census, a.kind)


def convolve_all(tables: Sequence[OrderTable], max_order: int = -1) -> OrderTable:
    if not tables:
        raise ValueError("nothing to convolve")
    out = tables[0]
    for t in tables[1:]:
        out = xor_convolve(out, t, max_order)
    return out


@dataclass(frozen=True, eq=False)
class StageTable:
    """sparse weighted counts of a transversal stage

    Entry e says that configurations of order order[e] leave the packed key key[e] with total
    weight weight[e]; field j of a key is bits wide and starts at bit j * bits.
    """
    order: np.ndarray
    key: np.ndarray
    weight: np.ndarray
    bits: int
    n_fields: int
    census: Tuple[int, int, int] = (0, 0, 0)
    kind: str = "level1"
    rates: Tuple[Tuple[int, int], ...] = ()

    @property
    def K(self) -> int:
        return int(self.order.max()) if len(self.order) else 0

    @property
    def n_entries(self) -> int:
        return len(self.key)

    def field(self, j: int) -> np.ndarray:
        if not 0 <= j < self.n_fields:
            raise ValueError(f"stage table has {self.n_fields} fields, asked for field {j}")
        return (self.key >> (j * self.bits)) & ((1 << self.bits) - 1)

    def mass(self) -> int:
        return int(np.abs(self.weight.astype(object)).sum())

    def restricted(self, max_order: int) -> "StageTable":
        sel = self.order <= max_order
        return StageTable(self.order[sel], self.key[sel], self.weight[sel], self.bits, self.n_fields,
                          self.census, self.kind, self.rates)

    def dense(self, j: int, size: Optional[int] = None) -> OrderTable:
        """ marginal table of field j """
        size = size or (1 << self.bits)
        out = np.zeros((self.K + 1, size), dtype=object)
        keys = self.field(j)
        for k, x, v in zip(self.order, keys, self.weight):
            out[int(k), int(x)] += int(v)
        return OrderTable(out, self.census, self.kind)

    def distinct(self, j: int) -> int:
        return len(np.unique(self.field(j)))


def _stage_groups(a: OrderTable, stage: StageTable, group_field: int, value_field: int, K: int,
                  group_keys: Optional[np.ndarray]):
    """ stage entries up to order K sorted by (group, order, value) with the group boundaries """
    if stage.kind != a.kind:
        raise ValueError(f"cannot combine {stage.kind} stage counts with {a.kind} tables")
    g = stage.field(group_field) if group_keys is None else np.asarray(group_keys, dtype=np.int64)
    v = stage.field(value_field)
    sel = stage.order <= K
    g, v, order, weight = g[sel], v[sel], stage.order[sel], stage.weight[sel]
    if len(g) and int(max(g.max(), v.max())) >= a.size:
        raise ValueError(f"stage keys do not fit a key space of size {a.size}")
    perm = np.lexsort((v, order, g))
    g, v, order, weight = g[perm], v[perm], order[perm], weight[perm].astype(object)
    shifts, first = np.unique(g, return_index=True)
    gstart = np.append(first, len(g)).astype(np.int64)
    return shifts.astype(np.int64), gstart, v.astype(np.int64), order.astype(np.int64), weight


def grouped_convolve(a: OrderTable, b: OrderTable, stage: StageTable, shift_field: int, value_field: int,
                     max_order: int = -1, shift_keys: Optional[np.ndarray] = None) -> OrderTable:
    """sum over stage groups g of (a[x] b[x ^ g]) convolved with the stage counts of group g

    g is field shift_field of a stage key (or shift_keys per entry when given) and the group's
    counts are indexed by field value_field.
    """
    a._check(b)
    K = a.K + b.K + stage.K
    K = K if max_order < 0 else min(K, max_order)
    census = _add_census(a.census, b.census, stage.census)
    shifts, gstart, v, order, weight = _stage_groups(a, stage, shift_field, value_field, K, shift_keys)
    if len(v) == 0:
        return OrderTable.zeros(K, a.size, census, a.kind)
    primes = primes_for(a.mass() * b.mass() * int(np.abs(weight).sum()))
    out = np.zeros((len(primes), K + 1, a.size), dtype=np.int64)
    _grouped_kernel(residues(a.w[:K + 1], primes), residues(b.w[:K + 1], primes), shifts, gstart, v, order,
                    residues(weight, primes), int(order.max()) + 1, K, primes, out)
    return OrderTable(lift(out, primes), census, a.kind)


def spread_convolve(a: OrderTable, b: OrderTable, stage: StageTable, group_field: int, value_field: int,
                    max_order: int = -1) -> OrderTable:
    """sum over stage groups g of (a convolved with the counts of group g)[x] b[x ^ g]

    The counterpart of grouped_convolve with the product taken after the convolution.
    """
    a._check(b)
    K = a.K + b.K + stage.K
    K = K if max_order < 0 else min(K, max_order)
    census = _add_census(a.census, b.census, stage.census)
    shifts, gstart, v, order, weight = _stage_groups(a, stage, group_field, value_field, K, None)
    if len(v) == 0:
        return OrderTable.zeros(K, a.size, census, a.kind)
    primes = primes_for(a.mass() * b.mass() * int(np.abs(weight).sum()))
    out = np.zeros((len(primes), K + 1, a.size), dtype=np.int64)
    _spread_kernel(residues(a.w[:K + 1], primes), residues(b.w[:K + 1], primes), shifts, gstart, v, order,
                   residues(weight, primes), int(order.max()) + 1, K, primes, out)
    return OrderTable(lift(out, primes), census, a.kind)
