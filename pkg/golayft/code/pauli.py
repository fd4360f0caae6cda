"""
Copyright © 2026 The golayft developers.

Binary-symplectic Pauli operators and GF(2) row algebra on integer bitmasks.
Bit i of a mask is qubit i.
"""
from __future__ import annotations

from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np


def popcount(v: int) -> int:
    return bin(v).count("1")


def parity(v: int) -> int:
    return bin(v).count("1") & 1


def bits_of(v: int) -> List[int]:
    """ indices of the set bits of v, lowest first """
    out = []
    i = 0
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return out


def mask_of(qubits: Iterable[int]) -> int:
    m = 0
    for q in qubits:
        m |= 1 << int(q)
    return m


def popcount_array(a: np.ndarray) -> np.ndarray:
    """ popcount of every entry of a nonnegative int64 array """
    a = np.asarray(a, dtype=np.int64)
    counts = np.zeros(a.shape, dtype=np.int64)
    while np.any(a):
        counts += a & 1
        a = a >> 1
    return counts


class PauliVec(NamedTuple):
    """ n-qubit Pauli operator up to phase: (X part, Z part) bitmasks """
    x_mask: int
    z_mask: int
    n: int

    @classmethod
    def identity(cls, n: int) -> "PauliVec":
        return cls(0, 0, n)

    @classmethod
    def from_label(cls, label: str) -> "PauliVec":
        """ e.g. "IXZY" with qubit 0 first """
        x = z = 0
        for i, c in enumerate(label.upper()):
            if c in "XY":
                x |= 1 << i
            if c in "ZY":
                z |= 1 << i
            if c not in "IXYZ":
                raise ValueError(f"invalid Pauli letter {c!r} in {label!r}")
        return cls(x, z, len(label))

    def __mul__(self, other: "PauliVec") -> "PauliVec":
        if other.n != self.n:
            raise ValueError(f"cannot multiply Paulis on {self.n} and {other.n} qubits")
        return PauliVec(self.x_mask ^ other.x_mask, self.z_mask ^ other.z_mask, self.n)

    @property
    def weight(self) -> int:
        return popcount(self.x_mask | self.z_mask)

    @property
    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0

    def commutes(self, other: "PauliVec") -> bool:
        return (popcount(self.x_mask & other.z_mask) + popcount(self.z_mask & other.x_mask)) % 2 == 0

    def label(self) -> str:
        out = []
        for i in range(self.n):
            x, z = (self.x_mask >> i) & 1, (self.z_mask >> i) & 1
            out.append("IXZY"[x + 2 * z])
        return "".join(out)

    def check(self):
        full = (1 << self.n) - 1
        if (self.x_mask | self.z_mask) & ~full:
            raise ValueError(f"Pauli masks have bits beyond qubit {self.n - 1}")


def rref(rows: Sequence[int], n: int,
         pivot_order: Optional[Sequence[int]] = None) -> Tuple[List[int], List[int]]:
    """reduced row echelon form over GF(2)

    Parameters
    ----------
    rows : row bitmasks
    n : number of columns
    pivot_order : columns in the order they are tried as pivots, default n-1 down to 0

    Returns
    -------
    rows, pivots : rows[i] is the only row with a 1 in column pivots[i]; zero rows are dropped
    """
    order = list(range(n - 1, -1, -1)) if pivot_order is None else [int(c) for c in pivot_order]
    remaining = [int(r) for r in rows]
    out, pivots = [], []
    for col in order:
        bit = 1 << col
        sel = next((i for i, r in enumerate(remaining) if r & bit), None)
        if sel is None:
            continue
        prow = remaining.pop(sel)
        remaining = [r ^ prow if r & bit else r for r in remaining]
        out = [r ^ prow if r & bit else r for r in out]
        out.append(prow)
        pivots.append(col)
    return out, pivots


def rank(rows: Sequence[int], n: int) -> int:
    return len(rref(rows, n)[1])


def reduce_mod(v: int, rows: Sequence[int], pivots: Sequence[int]) -> int:
    """ reduce v by a reduced presentation (rows, pivots) """
    for r, p in zip(rows, pivots):
        if (v >> p) & 1:
            v ^= r
    return v


def in_span(v: int, rows: Sequence[int], n: int) -> bool:
    red, piv = rref(rows, n)
    return reduce_mod(v, red, piv) == 0


def same_rowspace(a: Sequence[int], b: Sequence[int], n: int) -> bool:
    ra = rank(a, n)
    return ra == rank(b, n) and ra == rank(list(a) + list(b), n)


def span(rows: Sequence[int]) -> np.ndarray:
    """ all 2^len(rows) elements of the row span, element i = XOR of rows selected by bits of i """
    out = np.zeros(1 << len(rows), dtype=np.int64)
    for b, r in enumerate(rows):
        out[1 << b:1 << (b + 1)] = out[:1 << b] ^ int(r)
    return out
