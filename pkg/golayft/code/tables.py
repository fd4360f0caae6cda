"""
Copyright © 2026 The golayft developers.

Dense class-key tables of a code: key = syndrome | logical << r.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .css import CssCode, logical_bit, syndrome
from .pauli import parity


@dataclass(frozen=True, eq=False)
class ClassTables:
    """
    key_col[q] : key of a single error on qubit q
    leader[s] : coset leader mask for syndrome s
    lam[s] : logical bit of leader[s]
    weight : reduced weight of every key (logical bit kept)
    sizes : number of n-qubit errors per key
    """
    code: CssCode
    key_col: np.ndarray
    leader: np.ndarray
    lam: np.ndarray
    weight: np.ndarray
    sizes: np.ndarray

    @property
    def r(self) -> int:
        return self.code.r

    @property
    def syn_mask(self) -> int:
        return (1 << self.code.r) - 1

    def key(self, error: int) -> int:
        return syndrome(self.code, error) | (logical_bit(self.code, error) << self.code.r)

    def keys(self, masks: np.ndarray) -> np.ndarray:
        """ keys of an array of error masks """
        masks = np.asarray(masks, dtype=np.int64)
        out = np.zeros(masks.shape, dtype=np.int64)
        for q in range(self.code.n):
            out ^= ((masks >> q) & 1) * self.key_col[q]
        return out

    def project(self, keys, keep_logical: bool):
        return keys if keep_logical else keys & self.syn_mask

    def leader_keys(self) -> np.ndarray:
        """ key of every coset leader, indexed by syndrome """
        return np.arange(1 << self.r, dtype=np.int64) | (self.lam << self.r)

    def decode_flag(self, keys):
        """ D(key) = logical(key) XOR lam[syndrome(key)] """
        keys = np.asarray(keys, dtype=np.int64)
        return ((keys >> self.r) & 1) ^ self.lam[keys & self.syn_mask]

    def weight_table(self, keep_logical: bool = True) -> np.ndarray:
        """ reduced weights indexed by key; without the logical bit both cosets share the minimum """
        if keep_logical:
            return self.weight
        half = 1 << self.r
        w = np.minimum(self.weight[:half], self.weight[half:])
        return np.concatenate([w, w])

    def histogram(self, keep_logical: bool = True) -> np.ndarray:
        """ number of classes per reduced weight """
        w = self.weight_table(keep_logical)
        if not keep_logical:
            w = w[:1 << self.r]
        return np.bincount(w, minlength=self.code.n + 1)


@lru_cache(maxsize=None)
def class_tables(code: CssCode) -> ClassTables:
    n, r = code.n, code.r
    key_col = np.array([syndrome(code, 1 << q) | (logical_bit(code, 1 << q) << r) for q in range(n)],
                       dtype=np.int64)
    leader = np.array(code.decoder_table, dtype=np.int64)
    lam = np.array([parity(int(m) & code.logical_row) for m in leader], dtype=np.int64)

    # every error of the whole space, by linear key propagation over the qubits
    keys = np.zeros(1 << n, dtype=np.int32)
    wts = np.zeros(1 << n, dtype=np.int8)
    for b in range(n):
        keys[1 << b:1 << (b + 1)] = keys[:1 << b] ^ key_col[b]
        wts[1 << b:1 << (b + 1)] = wts[:1 << b] + 1
    sizes = np.bincount(keys, minlength=code.n_keys)
    if np.any(sizes != 1 << (n - r - 1)):
        raise ValueError(f"class sizes of {code.name} are not uniform: transcription error")
    weight = np.full(code.n_keys, n + 1, dtype=np.int64)
    # descending so the lightest member wins
    for w in range(n, -1, -1):
        weight[keys[wts == w]] = w
    del keys, wts
    return ClassTables(code, key_col, leader, lam, weight, sizes)
