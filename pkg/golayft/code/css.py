"""
Copyright © 2026 The golayft developers.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .pauli import mask_of, parity, popcount, popcount_array, rank, rref, span
from ..io import formats

SECTORS = ("X", "Z")
STATES = ("zero", "plus", "data")


def keeps_logical(sector: str, state: str = "zero") -> bool:
    """whether the logical bit distinguishes errors of this sector on a block in this state

    Logical Z acts trivially on |0> and logical X on |+>; data blocks keep both.
    """
    if sector not in SECTORS:
        raise ValueError(f"sector must be one of {SECTORS}, got {sector!r}")
    if state not in STATES:
        raise ValueError(f"state must be one of {STATES}, got {state!r}")
    if state == "data":
        return True
    return (sector == "X") == (state == "zero")


class ErrorClassKey(NamedTuple):
    sector: str
    syndrome: int
    logical: int

    def packed(self, r: int) -> int:
        return self.syndrome | (self.logical << r)


@dataclass(frozen=True)
class CssCode:
    """ self-dual CSS code with one logical qubit; rows are shared X/Z generator supports """
    name: str
    n: int
    stab_rows: Tuple[int, ...]
    logical_row: int
    decoder_table: Tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.stab_rows)

    @property
    def distance(self) -> int:
        return popcount(self.logical_row)

    @property
    def t(self) -> int:
        return (self.distance - 1) // 2

    @property
    def n_keys(self) -> int:
        return 1 << (self.r + 1)

    def row_strings(self) -> List[str]:
        return [formats.mask_to_row(m, self.n) for m in self.stab_rows]

    def presentation_hash(self) -> str:
        text = self.name + "\n" + "\n".join(self.row_strings())
        return hashlib.sha256(text.encode()).hexdigest()

    def presentation(self, pivot_order: Optional[Sequence[int]] = None) -> Tuple[List[int], List[int]]:
        """ reduced presentation (rows, pivots) for a column priority order """
        return rref(self.stab_rows, self.n, pivot_order)


def _build_decoder(n: int, rows: Sequence[int]) -> Tuple[int, ...]:
    r = len(rows)
    cols = [sum(((rows[j] >> q) & 1) << j for j in range(r)) for q in range(n)]
    table = [-1] * (1 << r)
    table[0] = 0
    filled = 1
    w = 0
    while filled < (1 << r) and w < n:
        w += 1
        for qs in combinations(range(n), w):
            s = 0
            for q in qs:
                s ^= cols[q]
            if table[s] < 0:
                table[s] = mask_of(qs)
                filled += 1
    if filled < (1 << r):
        raise ValueError("decoder table incomplete: transcription error in the code rows")
    return tuple(table)


def code_from_rows(name: str, rows: Sequence[Union[int, str]], n: Optional[int] = None,
                   row_weight: Optional[int] = None) -> CssCode:
    """build a self-dual CSS code from generator supports

    Parameters
    ----------
    rows : bitmasks or '.1' strings with qubit 0 first
    n : number of qubits (taken from the strings when omitted)
    row_weight : required weight of every row, checked when given
    """
    if len(rows) == 0:
        raise ValueError("a code needs at least one stabilizer row")
    if isinstance(rows[0], str):
        n = len(rows[0]) if n is None else n
        masks = [formats.row_to_mask(s) for s in rows]
    else:
        masks = [int(m) for m in rows]
    if n is None:
        raise ValueError("n is required for integer rows")
    full = (1 << n) - 1
    for j, m in enumerate(masks):
        if m & ~full:
            raise ValueError(f"row {j} has bits beyond qubit {n - 1}: transcription error")
        if row_weight is not None and popcount(m) != row_weight:
            raise ValueError(f"row {j} has weight {popcount(m)}, expected {row_weight}: transcription error")
    for i, j in combinations(range(len(masks)), 2):
        if popcount(masks[i] & masks[j]) % 2:
            raise ValueError(f"rows {i} and {j} overlap on an odd number of qubits: transcription error")
    if rank(masks, n) != len(masks):
        raise ValueError("stabilizer rows are linearly dependent: transcription error")
    if n - len(masks) != len(masks) + 1:
        raise ValueError(f"{n} qubits and {len(masks)} rows do not encode exactly one logical qubit")
    coset = span(masks) ^ full
    weights = popcount_array(coset)
    best = coset[weights == weights.min()]
    logical_row = int(best.min())
    if any(parity(logical_row & m) for m in masks):
        raise ValueError("all-ones operator does not commute with the rows: transcription error")
    return CssCode(name, n, tuple(masks), logical_row, _build_decoder(n, masks))


@lru_cache(maxsize=None)
def golay_code() -> CssCode:
    """ the [[23,1,7]] Golay code in the bundled presentation """
    return code_from_rows("golay", formats.read_code_matrix(formats.DATA_DIR / "golay.txt"), row_weight=8)


@lru_cache(maxsize=None)
def steane_code() -> CssCode:
    return code_from_rows("steane", formats.read_code_matrix(formats.DATA_DIR / "steane.txt"), row_weight=4)


def load_code(name: str) -> CssCode:
    """ bundled code by name, or a code matrix file """
    if name == "golay":
        return golay_code()
    if name == "steane":
        return steane_code()
    path = Path(name)
    if path.is_file():
        return code_from_rows(path.stem, formats.read_code_matrix(path))
    raise ValueError(f"unknown code {name!r}; use golay, steane or a code matrix file")


def syndrome(code: CssCode, error: int) -> int:
    s = 0
    for j, row in enumerate(code.stab_rows):
        s |= parity(row & error) << j
    return s


def logical_bit(code: CssCode, error: int) -> int:
    """ parity of overlap with the logical row: 1 for the nontrivial coset of a zero-syndrome error """
    return parity(error & code.logical_row)


def classify(code: CssCode, sector: str, error: int, state: str = "zero") -> ErrorClassKey:
    s = syndrome(code, error)
    lg = logical_bit(code, error) if keeps_logical(sector, state) else 0
    return ErrorClassKey(sector, s, lg)


def is_uncorrectable(code: CssCode, sector: str, error: int) -> int:
    """ D(e): 1 iff e times its decoder correction is a nontrivial logical """
    if sector not in SECTORS:
        raise ValueError(f"sector must be one of {SECTORS}, got {sector!r}")
    corrected = error ^ code.decoder_table[syndrome(code, error)]
    return logical_bit(code, corrected)


def reduced_weight(code: CssCode, sector: str, error: int, state: str = "zero") -> int:
    """ minimum Hamming weight over the error's class """
    from .tables import class_tables
    ct = class_tables(code)
    key = classify(code, sector, error, state).packed(code.r)
    return int(ct.weight_table(keeps_logical(sector, state))[key])


def random_presentation(code: CssCode, rng: np.random.Generator) -> Tuple[List[int], List[int]]:
    """ reduced presentation for a random column priority order """
    return code.presentation(rng.permutation(code.n))
