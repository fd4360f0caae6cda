"""
Copyright © 2026 The golayft developers.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Dict, List, NamedTuple, Sequence, Tuple

from ..code.css import CssCode
from ..code.pauli import same_rowspace
from ..code.symmetry import QubitPermutation


class Kind(IntEnum):
    PREP_ZERO = 0
    PREP_PLUS = 1
    CNOT = 2
    REST = 3
    MEAS_Z = 4
    MEAS_X = 5


PREPS = (Kind.PREP_ZERO, Kind.PREP_PLUS)
MEASUREMENTS = (Kind.MEAS_Z, Kind.MEAS_X)


class Location(NamedTuple):
    """ one operation; for a CNOT (block, qubit) is the control """
    kind: int
    step: int
    block: int
    qubit: int
    target_block: int = -1
    target_qubit: int = -1


class Census(NamedTuple):
    cnot: int
    rest: int
    prep: int
    meas: int

    @property
    def total(self) -> int:
        return self.cnot + self.rest + self.prep + self.meas

    def __add__(self, other: "Census") -> "Census":
        return Census(*(a + b for a, b in zip(self, other)))

    def row(self) -> Tuple[int, int, int, int, int]:
        """ (CNOT, prep, meas, rest, total) """
        return (self.cnot, self.prep, self.meas, self.rest, self.total)


def census_of(locations: Sequence[Location]) -> Census:
    counts = [0] * 6
    for loc in locations:
        counts[loc.kind] += 1
    return Census(counts[Kind.CNOT], counts[Kind.REST], counts[Kind.PREP_ZERO] + counts[Kind.PREP_PLUS],
                  counts[Kind.MEAS_Z] + counts[Kind.MEAS_X])


def sector_census(locations: Sequence[Location], sector: str) -> Tuple[int, int, int]:
    """(n_c, n_r, n_pm) of the locations that can fail in one sector

    X errors come from |0> preparations and precede Z measurements; Z errors the other way round.
    """
    pm_kinds = (Kind.PREP_ZERO, Kind.MEAS_Z) if sector == "X" else (Kind.PREP_PLUS, Kind.MEAS_X)
    nc = sum(1 for loc in locations if loc.kind == Kind.CNOT)
    nr = sum(1 for loc in locations if loc.kind == Kind.REST)
    npm = sum(1 for loc in locations if loc.kind in pm_kinds)
    return nc, nr, npm


@dataclass(frozen=True)
class Circuit:
    """encoded-state preparation on one block

    plus/zero are the qubits initialized in |+> and |0>; rounds[j] holds the (control, target)
    CNOTs applied in round j+1. Qubits are prepared one step before their first CNOT and rest on
    every idle step until the last round.
    """
    n: int
    plus: Tuple[int, ...]
    zero: Tuple[int, ...]
    rounds: Tuple[Tuple[Tuple[int, int], ...], ...]
    name: str = ""

    def __post_init__(self):
        if sorted(self.plus + self.zero) != list(range(self.n)):
            raise ValueError(f"{self.name or 'circuit'}: every qubit must be prepared exactly once")
        for j, pairs in enumerate(self.rounds):
            used = [q for pair in pairs for q in pair]
            if len(used) != len(set(used)):
                raise ValueError(f"{self.name or 'circuit'}: round {j + 1} uses a qubit twice")
            for c, t in pairs:
                if not (0 <= c < self.n and 0 <= t < self.n) or c == t:
                    raise ValueError(f"{self.name or 'circuit'}: invalid CNOT {c}>{t} in round {j + 1}")

    @property
    def depth(self) -> int:
        return len(self.rounds)

    @property
    def duration(self) -> int:
        """ number of time steps, preparation step included """
        return self.depth + 1

    @property
    def cnot_count(self) -> int:
        return sum(len(r) for r in self.rounds)

    def prep_steps(self) -> Dict[int, int]:
        first = {}
        for j, pairs in enumerate(self.rounds, start=1):
            for c, t in pairs:
                first.setdefault(c, j)
                first.setdefault(t, j)
        return {q: first.get(q, self.depth + 1) - 1 for q in range(self.n)}

    def locations(self, block: int = 0, start: int = 0) -> List[Location]:
        prep = self.prep_steps()
        plus = set(self.plus)
        busy = set()
        out = []
        for q in range(self.n):
            kind = Kind.PREP_PLUS if q in plus else Kind.PREP_ZERO
            out.append(Location(kind, start + prep[q], block, q))
        for j, pairs in enumerate(self.rounds, start=1):
            for c, t in pairs:
                out.append(Location(Kind.CNOT, start + j, block, c, block, t))
                busy.add((c, j))
                busy.add((t, j))
        for q in range(self.n):
            for j in range(prep[q] + 1, self.depth + 1):
                if (q, j) not in busy:
                    out.append(Location(Kind.REST, start + j, block, q))
        out.sort(key=lambda loc: (loc.step, loc.kind != Kind.CNOT, loc.qubit))
        return out

    def census(self) -> Census:
        return census_of(self.locations())

    def dual(self) -> "Circuit":
        """ the |+> preparation: preparations swapped and every CNOT reversed """
        rounds = tuple(tuple((t, c) for c, t in pairs) for pairs in self.rounds)
        return Circuit(self.n, self.zero, self.plus, rounds, self.name + "+")

    def permuted(self, perm: QubitPermutation) -> "Circuit":
        if perm.n != self.n:
            raise ValueError(f"permutation on {perm.n} qubits applied to a {self.n}-qubit circuit")
        rounds = tuple(tuple((perm(c), perm(t)) for c, t in pairs) for pairs in self.rounds)
        return Circuit(self.n, tuple(sorted(perm(q) for q in self.plus)),
                       tuple(sorted(perm(q) for q in self.zero)), rounds, self.name)

    def with_rounds_permuted(self, order: Sequence[int]) -> "Circuit":
        if sorted(order) != list(range(self.depth)):
            raise ValueError(f"not a permutation of the {self.depth} rounds: {list(order)}")
        return Circuit(self.n, self.plus, self.zero, tuple(self.rounds[j] for j in order), self.name)

    def stabilizers(self) -> Tuple[List[int], List[int]]:
        """ X-type and Z-type stabilizer supports of the fault-free output """
        xs = {q: 1 << q for q in self.plus}
        zs = {q: 1 << q for q in self.zero}
        for pairs in self.rounds:
            for c, t in pairs:
                cb, tb = 1 << c, 1 << t
                for q in xs:
                    if xs[q] & cb:
                        xs[q] ^= tb
                for q in zs:
                    if zs[q] & tb:
                        zs[q] ^= cb
        return list(xs.values()), list(zs.values())

    def prepares(self, code: CssCode, state: str = "zero") -> bool:
        """ whether the fault-free output is the encoded |0> (or |+>) of code """
        if code.n != self.n:
            return False
        xs, zs = self.stabilizers()
        rows = list(code.stab_rows)
        with_logical = rows + [code.logical_row]
        if state == "zero":
            return same_rowspace(xs, rows, self.n) and same_rowspace(zs, with_logical, self.n)
        return same_rowspace(xs, with_logical, self.n) and same_rowspace(zs, rows, self.n)


def permute_circuit(circuit: Circuit, perm: QubitPermutation) -> Circuit:
    return circuit.permuted(perm)
