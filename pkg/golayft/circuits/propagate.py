"""
Copyright © 2026 The golayft developers.

Pauli-frame propagation of faults through networks.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .circuit import Kind, Location
from .network import Network
from ..code.css import CssCode, keeps_logical
from ..code.pauli import PauliVec
from ..code.tables import class_tables


class Propagation(NamedTuple):
    """ outputs[b] is the error left on output block b; measured[b] the flipped outcomes of block b """
    outputs: Dict[int, PauliVec]
    measured: Dict[int, int]


def _cnot(x: List[int], z: List[int], cb: int, cq: int, tb: int, tq: int):
    if (x[cb] >> cq) & 1:
        x[tb] ^= 1 << tq
    if (z[tb] >> tq) & 1:
        z[cb] ^= 1 << cq


def propagate(network: Network, faults: Optional[Mapping[int, PauliVec]] = None,
              inputs: Optional[Mapping[int, PauliVec]] = None) -> Propagation:
    """push faults forward through the network

    faults maps a location index to a Pauli on its qubits (control first for a CNOT), applied after
    the operation for preparations, CNOTs and rests and before it for measurements. inputs maps input
    blocks to their incoming errors.
    """
    faults = faults or {}
    nb = network.n_blocks
    x, z = [0] * nb, [0] * nb
    for b, p in (inputs or {}).items():
        x[b], z[b] = p.x_mask, p.z_mask
    measured = {c.block: 0 for c in network.checks}
    for i, loc in enumerate(network.locations):
        f = faults.get(i)
        b, q = loc.block, loc.qubit
        if loc.kind in (Kind.MEAS_Z, Kind.MEAS_X):
            if f is not None:
                x[b] ^= (f.x_mask & 1) << q
                z[b] ^= (f.z_mask & 1) << q
            src = x if loc.kind == Kind.MEAS_Z else z
            measured[b] |= ((src[b] >> q) & 1) << q
            continue
        if loc.kind in (Kind.PREP_ZERO, Kind.PREP_PLUS):
            x[b] &= ~(1 << q)
            z[b] &= ~(1 << q)
        elif loc.kind == Kind.CNOT:
            _cnot(x, z, b, q, loc.target_block, loc.target_qubit)
        if f is not None:
            x[b] ^= (f.x_mask & 1) << q
            z[b] ^= (f.z_mask & 1) << q
            if loc.kind == Kind.CNOT:
                x[loc.target_block] ^= ((f.x_mask >> 1) & 1) << loc.target_qubit
                z[loc.target_block] ^= ((f.z_mask >> 1) & 1) << loc.target_qubit
    outputs = {b: PauliVec(x[b], z[b], network.n) for b in network.outputs}
    return Propagation(outputs, measured)


def accepted(network: Network, code: CssCode, result: Propagation) -> bool:
    """ every acceptance check sees a trivial key (or trivial syndrome) """
    ct = class_tables(code)
    for c in network.checks:
        if not c.accept:
            continue
        key = ct.key(result.measured[c.block])
        if c.accept == "syndrome":
            key &= ct.syn_mask
        if key:
            return False
    return True


def sector_of_measurement(kind: int) -> str:
    return "X" if kind == Kind.MEAS_Z else "Z"


class Field(NamedTuple):
    """ one packed output of a fault configuration: a check outcome or an output block error """
    name: str
    block: int
    role: str
    keep: int
    accept: int


@dataclass(frozen=True, eq=False)
class Effects:
    """linear effect of every elementary fault of one sector

    rows[(location, slot)] indexes fields; slot 0 is the single qubit or CNOT control, slot 1 the
    CNOT target; input rows (-1 - block, qubit) carry errors entering on input blocks.
    """
    sector: str
    fields: np.ndarray
    layout: Tuple[Field, ...]
    rows: Dict[Tuple[int, int], int]


def _sector_slots(loc: Location, sector: str) -> Tuple[int, ...]:
    if loc.kind == Kind.CNOT:
        return (0, 1)
    if loc.kind == Kind.REST:
        return (0,)
    if sector == "X":
        return (0,) if loc.kind in (Kind.PREP_ZERO, Kind.MEAS_Z) else ()
    return (0,) if loc.kind in (Kind.PREP_PLUS, Kind.MEAS_X) else ()


def _unpack(v: int, nbits: int) -> np.ndarray:
    nbytes = max(1, (nbits + 7) // 8)
    raw = np.frombuffer(v.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:nbits].astype(np.int64)


def fault_effects(network: Network, code: CssCode, sector: str, with_inputs: bool = False) -> Effects:
    """propagate every elementary fault of a sector at once

    Each wire holds one Python integer whose bit e records whether elementary fault e has reached
    it. Keys are formed from the wires of measured and output blocks.
    """
    if sector not in ("X", "Z"):
        raise ValueError(f"sector must be X or Z, got {sector!r}")
    ct = class_tables(code)
    n, r = network.n, code.r
    full, syn = (1 << (r + 1)) - 1, ct.syn_mask
    wire = [[0] * n for _ in range(network.n_blocks)]
    rows: Dict[Tuple[int, int], int] = {}
    e = 0
    if with_inputs:
        for b in network.inputs:
            for q in range(n):
                rows[(-1 - b, q)] = e
                wire[b][q] = 1 << e
                e += 1
    meas_kind = Kind.MEAS_Z if sector == "X" else Kind.MEAS_X
    measured = {c.block: [0] * n for c in network.checks if c.kind == meas_kind}
    for i, loc in enumerate(network.locations):
        b, q = loc.block, loc.qubit
        slots = _sector_slots(loc, sector)
        if loc.kind in (Kind.MEAS_Z, Kind.MEAS_X):
            if slots:
                rows[(i, 0)] = e
                wire[b][q] ^= 1 << e
                e += 1
            if loc.kind == meas_kind and b in measured:
                measured[b][q] = wire[b][q]
            wire[b][q] = 0
            continue
        if loc.kind in (Kind.PREP_ZERO, Kind.PREP_PLUS):
            wire[b][q] = 0
        elif loc.kind == Kind.CNOT:
            tb, tq = loc.target_block, loc.target_qubit
            if sector == "X":
                wire[tb][tq] ^= wire[b][q]
            else:
                wire[b][q] ^= wire[tb][tq]
        for s in slots:
            rows[(i, s)] = e
            if s == 0:
                wire[b][q] ^= 1 << e
            else:
                wire[loc.target_block][loc.target_qubit] ^= 1 << e
            e += 1

    layout = []
    sources = []
    for c in network.checks:
        if c.kind != meas_kind:
            continue
        keep = full if c.accept == "key" else syn
        acc = {"key": full, "syndrome": syn, "": 0}[c.accept]
        layout.append(Field(network.names[c.block], c.block, "check", keep, acc))
        sources.append(measured[c.block])
    for b in network.outputs:
        keep = full if keeps_logical(sector, network.states[b]) else syn
        layout.append(Field(network.names[b], b, "output", keep, 0))
        sources.append(wire[b])

    fields = np.zeros((e, len(layout)), dtype=np.int64)
    for j, src in enumerate(sources):
        for bit in range(r + 1):
            v = 0
            for q in range(n):
                if (ct.key_col[q] >> bit) & 1:
                    v ^= src[q]
            if v:
                fields[:, j] |= _unpack(v, e) << bit
        fields[:, j] &= layout[j].keep
    return Effects(sector, fields, tuple(layout), rows)


# Pauli choices per location kind; a choice lists (slot, letter) pairs
CNOT_X = (("XI", ((0, "X"),)), ("IX", ((1, "X"),)), ("XX", ((0, "X"), (1, "X"))))
CNOT_Z = (("ZI", ((0, "Z"),)), ("IZ", ((1, "Z"),)), ("ZZ", ((0, "Z"), (1, "Z"))))
LEVEL1_X = {Kind.CNOT: 4, Kind.REST: 8, Kind.PREP_ZERO: 4, Kind.MEAS_Z: 4}
LEVEL1_Z = {Kind.CNOT: 4, Kind.REST: 8, Kind.PREP_PLUS: 4, Kind.MEAS_X: 4}
LEVEL1_XZ = {Kind.CNOT: 1, Kind.REST: 4, Kind.PREP_ZERO: 4, Kind.PREP_PLUS: 4, Kind.MEAS_Z: 4, Kind.MEAS_X: 4}


def _choices(kind: int, mode: str) -> Tuple[Tuple[str, Tuple[Tuple[int, str], ...]], ...]:
    if mode in ("X", "Z"):
        if kind == Kind.CNOT:
            return CNOT_X if mode == "X" else CNOT_Z
        if kind == Kind.REST:
            return ((mode, ((0, mode),)),)
        ok = (Kind.PREP_ZERO, Kind.MEAS_Z) if mode == "X" else (Kind.PREP_PLUS, Kind.MEAS_X)
        return ((mode, ((0, mode),)),) if kind in ok else ()
    if kind == Kind.CNOT:
        out = []
        for a in "IXYZ":
            for b in "IXYZ":
                if a + b != "II":
                    out.append((a + b, tuple((s, p) for s, p in ((0, a), (1, b)) if p != "I")))
        return tuple(out)
    if kind == Kind.REST:
        return tuple((p, ((0, p),)) for p in "XYZ")
    p = "X" if kind in (Kind.PREP_ZERO, Kind.MEAS_Z) else "Z"
    return ((p, ((0, p),)),)


@dataclass(frozen=True, eq=False)
class FaultItems:
    """flattened fault choices for enumeration

    The choices of item i are rows start[i]..start[i+1]-1 of fields/weight; locations[i] is the
    network location of item i.
    """
    mode: str
    locations: np.ndarray
    start: np.ndarray
    fields: np.ndarray
    weight: np.ndarray
    labels: Tuple[str, ...]
    layout: Tuple[Field, ...]

    @property
    def n_items(self) -> int:
        return len(self.locations)

    @property
    def total_weight(self) -> int:
        return int(self.weight.sum())

    def field(self, name: str, role: Optional[str] = None) -> int:
        for j, f in enumerate(self.layout):
            if f.name == name and (role is None or f.role == role):
                return j
        raise ValueError(f"no field {name!r} in {[f.name for f in self.layout]}")

    def accept_mask(self) -> np.ndarray:
        return np.array([f.accept for f in self.layout], dtype=np.int64)

    def subset(self, keep: Sequence[bool]) -> "FaultItems":
        """ the items whose flag is set """
        keep = np.asarray(keep, dtype=bool)
        rows, start = [], [0]
        for i in np.flatnonzero(keep):
            rows.extend(range(self.start[i], self.start[i + 1]))
            start.append(len(rows))
        rows = np.array(rows, dtype=np.int64)
        return FaultItems(self.mode, self.locations[keep], np.array(start, dtype=np.int64),
                          self.fields[rows] if len(rows) else self.fields[:0], self.weight[rows],
                          tuple(self.labels[j] for j in rows), self.layout)


def fault_items(network: Network, code: CssCode, mode: str,
                weights: Optional[Mapping] = None, effects: Optional[Dict[str, Effects]] = None) -> FaultItems:
    """fault choices of every location with their linear effects

    mode "X" or "Z" uses the sector marginals; "XZ" the full depolarizing choices with fields of both
    sectors concatenated (X first). weights maps a location kind, or a (kind, label) pair, to the
    integer weight of a choice; the level-one weights are the default.
    """
    if mode not in ("X", "Z", "XZ"):
        raise ValueError(f"mode must be X, Z or XZ, got {mode!r}")
    sectors = ("X", "Z") if mode == "XZ" else (mode,)
    effects = dict(effects or {})
    for s in sectors:
        if s not in effects:
            effects[s] = fault_effects(network, code, s)
    default = {"X": LEVEL1_X, "Z": LEVEL1_Z, "XZ": LEVEL1_XZ}[mode]
    weights = default if weights is None else weights
    layout = tuple(f for s in sectors for f in effects[s].layout)
    widths = [len(effects[s].layout) for s in sectors]
    locs, start, rows, wts, labels = [], [0], [], [], []
    for i, loc in enumerate(network.locations):
        choices = _choices(loc.kind, mode)
        if not choices:
            continue
        for label, parts in choices:
            vec = np.zeros(sum(widths), dtype=np.int64)
            for slot, p in parts:
                off = 0
                for s, wd in zip(sectors, widths):
                    if (s == "X" and p in "XY") or (s == "Z" and p in "ZY"):
                        vec[off:off + wd] ^= effects[s].fields[effects[s].rows[(i, slot)]]
                    off += wd
            w = weights.get((loc.kind, label), weights.get(loc.kind, 0))
            if w <= 0:
                continue
            rows.append(vec)
            wts.append(int(w))
            labels.append(label)
        if len(rows) > start[-1]:
            locs.append(i)
            start.append(len(rows))
    fields = np.array(rows, dtype=np.int64).reshape(len(rows), sum(widths))
    return FaultItems(mode, np.array(locs, dtype=np.int64), np.array(start, dtype=np.int64), fields,
                      np.array(wts, dtype=np.int64), tuple(labels), layout)


def item_pauli(items: FaultItems, row: int) -> PauliVec:
    """ the Pauli of a choice row on its location's qubits """
    return PauliVec.from_label(items.labels[row])
