"""
Copyright © 2026 The golayft developers.

Multi-block networks: verification of encoded ancillas, error correction and extended rectangles.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .circuit import Census, Circuit, Kind, Location, census_of, sector_census

BLOCK_NAMES = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"

# (sector, survivor, checked) for the four- and twelve-ancilla verification trees
FOUR_ANCILLA_TESTS = (("X", 0, 1), ("X", 2, 3), ("Z", 0, 2))
TWELVE_ANCILLA_TESTS = (("X", 0, 1), ("X", 2, 3), ("X", 4, 5), ("X", 6, 7), ("X", 8, 9),
                        ("X", 0, 2), ("X", 4, 6), ("X", 8, 10),
                        ("Z", 0, 4), ("X", 8, 11),
                        ("Z", 0, 8))


class Test(NamedTuple):
    """X test: CNOT survivor -> checked, then MeasZ on checked. Z test: CNOT checked -> survivor, MeasX."""
    sector: str
    survivor: int
    checked: int
    step: int


class Check(NamedTuple):
    """ a transversal measurement; accept is "key", "syndrome" or "" for pure syndrome extraction """
    block: int
    kind: int
    step: int
    accept: str


@dataclass(frozen=True, eq=False)
class Network:
    n: int
    names: Tuple[str, ...]
    states: Tuple[str, ...]
    locations: Tuple[Location, ...]
    checks: Tuple[Check, ...]
    outputs: Tuple[int, ...]
    tests: Tuple[Test, ...] = ()
    preps: Tuple[Optional[Circuit], ...] = ()
    name: str = ""
    tags: Dict[str, Tuple[int, ...]] = field(default_factory=dict)

    @property
    def n_blocks(self) -> int:
        return len(self.names)

    @property
    def duration(self) -> int:
        return 1 + max((loc.step for loc in self.locations), default=-1)

    @property
    def cnot_count(self) -> int:
        return sum(1 for loc in self.locations if loc.kind == Kind.CNOT)

    @property
    def inputs(self) -> Tuple[int, ...]:
        """ blocks entering with an external error: never prepared inside the network """
        prepared = {loc.block for loc in self.locations if loc.kind in (Kind.PREP_ZERO, Kind.PREP_PLUS)}
        return tuple(b for b in range(self.n_blocks) if b not in prepared)

    def fingerprint(self) -> str:
        """ sha256 of the location list and checks; equal for networks counted identically """
        text = repr((self.n, [tuple(loc) for loc in self.locations], [tuple(c) for c in self.checks], self.outputs))
        return hashlib.sha256(text.encode()).hexdigest()

    def census(self) -> Census:
        return census_of(self.locations)

    def sector_census(self, sector: str) -> Tuple[int, int, int]:
        return sector_census(self.locations, sector)

    def block(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"network {self.name!r} has no block {name!r}")

    def check_of(self, block: int) -> Optional[Check]:
        return next((c for c in self.checks if c.block == block), None)

    def prep_location_mask(self) -> List[bool]:
        """ locations belonging to a preparation circuit: before the first test of their block """
        first = {}
        for t in self.tests:
            for b in (t.survivor, t.checked):
                first.setdefault(b, t.step)
        return [loc.step < first.get(loc.block, self.duration + 1) for loc in self.locations]

    def restricted(self, locations: Sequence[int], blocks: Sequence[int], outputs: Sequence[int],
                   checks: Sequence[Check] = (), name: str = "") -> "Network":
        """the sub-network of the given locations on the given blocks

        Blocks are renumbered in the order given; blocks without a preparation inside the sub-network
        become inputs.
        """
        index = {b: i for i, b in enumerate(blocks)}
        locs = []
        for i in sorted(locations):
            loc = self.locations[i]
            if loc.block not in index or (loc.target_block >= 0 and loc.target_block not in index):
                raise ValueError(f"location {i} acts outside blocks {[self.names[b] for b in blocks]}")
            locs.append(loc._replace(block=index[loc.block],
                                     target_block=index[loc.target_block] if loc.target_block >= 0 else -1))
        return Network(self.n, tuple(self.names[b] for b in blocks), tuple(self.states[b] for b in blocks),
                       tuple(locs), tuple(c._replace(block=index[c.block]) for c in checks),
                       tuple(index[b] for b in outputs), name=name or self.name)

    def dual(self) -> "Network":
        """ the same network for the conjugate basis: preparations, measurements and CNOTs reversed """
        swap_kind = {Kind.PREP_ZERO: Kind.PREP_PLUS, Kind.PREP_PLUS: Kind.PREP_ZERO,
                     Kind.MEAS_Z: Kind.MEAS_X, Kind.MEAS_X: Kind.MEAS_Z}
        locs = []
        for loc in self.locations:
            if loc.kind == Kind.CNOT:
                locs.append(Location(Kind.CNOT, loc.step, loc.target_block, loc.target_qubit, loc.block, loc.qubit))
            else:
                locs.append(loc._replace(kind=swap_kind.get(loc.kind, loc.kind)))
        swap_state = {"zero": "plus", "plus": "zero", "data": "data"}
        checks = tuple(c._replace(kind=swap_kind[c.kind]) for c in self.checks)
        tests = tuple(t._replace(sector="Z" if t.sector == "X" else "X") for t in self.tests)
        preps = tuple(p.dual() if p is not None else None for p in self.preps)
        return Network(self.n, self.names, tuple(swap_state[s] for s in self.states), tuple(locs), checks,
                       self.outputs, tests, preps, self.name + "+", dict(self.tags))

    def shifted(self, offset: int, block_offset: int = 0, prefix: str = "") -> "Network":
        locs = tuple(loc._replace(step=loc.step + offset, block=loc.block + block_offset,
                                  target_block=loc.target_block + block_offset if loc.target_block >= 0 else -1)
                     for loc in self.locations)
        checks = tuple(c._replace(block=c.block + block_offset, step=c.step + offset) for c in self.checks)
        tests = tuple(Test(t.sector, t.survivor + block_offset, t.checked + block_offset, t.step + offset)
                      for t in self.tests)
        tags = {k: tuple(b + block_offset for b in v) for k, v in self.tags.items()}
        return Network(self.n, tuple(prefix + s for s in self.names), self.states, locs, checks,
                       tuple(b + block_offset for b in self.outputs), tests, self.preps, self.name, tags)


def _transversal(kind: int, step: int, block: int, n: int, target: int = -1) -> List[Location]:
    if kind == Kind.CNOT:
        return [Location(Kind.CNOT, step, block, q, target, q) for q in range(n)]
    return [Location(kind, step, block, q) for q in range(n)]


def assemble(preps: Sequence[Circuit], tests: Sequence[Tuple[str, int, int]],
             names: Optional[Sequence[str]] = None, name: str = "") -> Network:
    """verification network from preparation circuits and a list of tests

    Blocks are prepared just in time for their first test; a block waiting for its partner rests;
    the survivor of a test rests during the measurement step when a later test uses it.
    """
    if len(preps) == 0:
        raise ValueError("a network needs at least one block")
    n = preps[0].n
    if any(p.n != n for p in preps):
        raise ValueError("all preparation circuits must act on the same number of qubits")
    nb = len(preps)
    names = tuple(names) if names is not None else tuple(BLOCK_NAMES[i] for i in range(nb))
    ready: List[Optional[int]] = [None] * nb
    measured = set()
    locs: List[Location] = []
    checks, placed = [], []

    def place(b, t):
        locs.extend(preps[b].locations(b, t - preps[b].duration))
        ready[b] = t

    for i, (sector, s, c) in enumerate(tests):
        if sector not in ("X", "Z"):
            raise ValueError(f"test sector must be X or Z, got {sector!r}")
        if not (0 <= s < nb and 0 <= c < nb) or s == c:
            raise ValueError(f"invalid test {sector}({s};{c}) on {nb} blocks")
        if s in measured or c in measured:
            raise ValueError(f"test {sector}({names[s]};{names[c]}) uses a measured block")
        t = max(ready[b] if ready[b] is not None else preps[b].duration for b in (s, c))
        for b in (s, c):
            if ready[b] is None:
                place(b, t)
            else:
                for step in range(ready[b], t):
                    locs.extend(_transversal(Kind.REST, step, b, n))
        if sector == "X":
            locs.extend(_transversal(Kind.CNOT, t, s, n, c))
            locs.extend(_transversal(Kind.MEAS_Z, t + 1, c, n))
            checks.append(Check(c, Kind.MEAS_Z, t + 1, "key"))
        else:
            locs.extend(_transversal(Kind.CNOT, t, c, n, s))
            locs.extend(_transversal(Kind.MEAS_X, t + 1, c, n))
            checks.append(Check(c, Kind.MEAS_X, t + 1, "syndrome"))
        measured.add(c)
        placed.append(Test(sector, s, c, t))
        if any(s in (u, v) for _, u, v in tests[i + 1:]):
            locs.extend(_transversal(Kind.REST, t + 1, s, n))
            ready[s] = t + 2
        else:
            ready[s] = t + 1
    for b in range(nb):
        if ready[b] is None:
            place(b, preps[b].duration)
    outputs = tuple(b for b in range(nb) if b not in measured)
    if len(outputs) != 1:
        raise ValueError(f"exactly one block must survive unmeasured, got {[names[b] for b in outputs]}")
    locs.sort(key=lambda loc: (loc.step, loc.kind != Kind.CNOT, loc.block, loc.qubit))
    return Network(n, names, ("zero",) * nb, tuple(locs), tuple(checks), outputs, tuple(placed),
                   tuple(preps), name)


def single_block_network(prep: Circuit, name: str = "") -> Network:
    return assemble([prep], [], name=name or prep.name)


def two_ancilla_network(prep1: Circuit, prep2: Circuit, name: str = "pair") -> Network:
    """ one X check: block B verifies block A """
    return assemble([prep1, prep2], [("X", 0, 1)], name=name)


def four_ancilla_network(*preps: Circuit, name: str = "four") -> Network:
    """two X checks on pairs (A;B), (C;D) followed by a Z check of A against C

    The output block A carries x1 x2 x3' in the X sector and z1 z3' in the Z sector.
    """
    if len(preps) == 1 and isinstance(preps[0], (list, tuple)):
        preps = tuple(preps[0])
    if len(preps) != 4:
        raise ValueError(f"the four-ancilla network needs four preparation circuits, got {len(preps)}")
    return assemble(preps, FOUR_ANCILLA_TESTS, name=name)


def twelve_ancilla_network(prep: Circuit, name: str = "twelve") -> Network:
    """ twelve identical preparations verified by a recursive tree of eleven tests """
    return assemble([prep] * 12, TWELVE_ANCILLA_TESTS, name=name)


def input_block(n: int, state: str, name: str) -> Network:
    """ a block with an externally supplied error and no locations """
    return Network(n, (name,), (state,), (), (), (0,), name=name)


class _Builder:
    """ accumulates blocks, locations and checks of a composite network """

    def __init__(self, n: int):
        self.n = n
        self.names: List[str] = []
        self.states: List[str] = []
        self.locs: List[Location] = []
        self.checks: List[Check] = []
        self.tags: Dict[str, List[int]] = {}

    def block(self, name: str, state: str) -> int:
        self.names.append(name)
        self.states.append(state)
        return len(self.names) - 1

    def embed(self, net: Network, step: int, prefix: str) -> int:
        """ copy net starting at step; returns the index of its output block """
        moved = net.shifted(step, len(self.names), prefix)
        self.names.extend(moved.names)
        self.states.extend(moved.states)
        self.locs.extend(moved.locations)
        self.checks.extend(moved.checks)
        return moved.outputs[0]

    def transversal(self, kind: int, step: int, block: int, target: int = -1):
        self.locs.extend(_transversal(kind, step, block, self.n, target))

    def tag(self, key: str, *blocks: int):
        self.tags.setdefault(key, []).extend(blocks)

    def ec(self, data: int, step: int, v0: Optional[Network], vp: Optional[Network], prefix: str) -> int:
        """ error correction of data starting at step; returns the first step after it """
        v0 = v0 if v0 is not None else input_block(self.n, "zero", "a0")
        vp = vp if vp is not None else input_block(self.n, "plus", "a+")
        t0 = step + v0.duration
        a0 = self.embed(v0, step, prefix + "z:")
        ap = self.embed(vp, t0 + 1 - vp.duration, prefix + "p:")
        self.transversal(Kind.REST, t0, a0)
        self.transversal(Kind.CNOT, t0 + 1, a0, data)
        self.transversal(Kind.MEAS_X, t0 + 2, a0)
        self.transversal(Kind.REST, t0 + 1, ap)
        self.transversal(Kind.CNOT, t0 + 2, data, ap)
        self.transversal(Kind.MEAS_Z, t0 + 3, ap)
        self.checks += [Check(a0, Kind.MEAS_X, t0 + 2, ""), Check(ap, Kind.MEAS_Z, t0 + 3, "")]
        self.tag(prefix + "syndrome_z", a0)
        self.tag(prefix + "syndrome_x", ap)
        return t0 + 4

    def build(self, outputs: Sequence[int], name: str) -> Network:
        self.locs.sort(key=lambda loc: (loc.step, loc.kind != Kind.CNOT, loc.block, loc.qubit))
        return Network(self.n, tuple(self.names), tuple(self.states), tuple(self.locs), tuple(self.checks),
                       tuple(outputs), name=name, tags={k: tuple(v) for k, v in self.tags.items()})


def ec_network(n: int, v0: Optional[Network] = None, vp: Optional[Network] = None, name: str = "ec") -> Network:
    """error correction of one data block (block 0)

    The verified |0> ancilla rests, controls a transversal CNOT into the data and is measured in the
    X basis (Z syndrome); the verified |+> ancilla rests, is the target of a transversal CNOT from the
    data and is measured in the Z basis (X syndrome). Without networks the ancillas are input blocks.
    """
    b = _Builder(n)
    data = b.block("data", "data")
    b.ec(data, 0, v0, vp, "")
    return b.build([data], name)


def exrec_network(n: int, v0: Optional[Network] = None, vp: Optional[Network] = None, leading: bool = True,
                  trailing: Tuple[bool, bool] = (True, True), name: str = "exrec") -> Network:
    """CNOT extended rectangle on data blocks A (control) and B (target)

    trailing selects which trailing error corrections are present, giving the partial rectangles.
    """
    b = _Builder(n)
    da, db = b.block("A", "data"), b.block("B", "data")
    step = 0
    if leading:
        b.ec(da, 0, v0, vp, "LA:")
        step = b.ec(db, 0, v0, vp, "LB:")
    b.transversal(Kind.CNOT, step, da, db)
    for flag, data, prefix in zip(trailing, (da, db), ("TA:", "TB:")):
        if flag:
            b.ec(data, step + 1, v0, vp, prefix)
    return b.build([da, db], name)


GATE_RECTANGLES = ("rest", "meas_z", "meas_x", "prep_zero", "prep_plus")


def gate_exrec_network(n: int, kind: str, v0: Optional[Network] = None, vp: Optional[Network] = None,
                       name: str = "") -> Network:
    """single-block rectangles: rest (EC, rest, EC), meas_z/meas_x (EC, measurement) and
    prep_zero/prep_plus (verified preparation, EC)"""
    if kind not in GATE_RECTANGLES:
        raise ValueError(f"unknown gate rectangle {kind!r}, expected one of {GATE_RECTANGLES}")
    b = _Builder(n)
    if kind == "rest":
        data = b.block("data", "data")
        step = b.ec(data, 0, v0, vp, "L:")
        b.transversal(Kind.REST, step, data)
        b.ec(data, step + 1, v0, vp, "T:")
        return b.build([data], name or kind)
    if kind.startswith("meas"):
        data = b.block("data", "data")
        step = b.ec(data, 0, v0, vp, "L:")
        basis = Kind.MEAS_Z if kind == "meas_z" else Kind.MEAS_X
        b.transversal(basis, step, data)
        b.checks.append(Check(data, basis, step, ""))
        b.tag("measured", data)
        return b.build([], name or kind)
    state = "zero" if kind == "prep_zero" else "plus"
    src = v0 if state == "zero" else vp
    src = src if src is not None else input_block(n, state, "prep")
    data = b.embed(src, 0, "P:")
    b.ec(data, src.duration, v0, vp, "T:")
    return b.build([data], name or kind)


STAGES = ("cnot", "rest", "meas_z", "meas_x")


def stage_network(n: int, kind: str) -> Network:
    """the transversal gate of a rectangle on bare data blocks

    cnot acts from A onto B; a measurement stage reads its outcome as a check with the full key.
    """
    if kind not in STAGES:
        raise ValueError(f"unknown stage {kind!r}, expected one of {STAGES}")
    b = _Builder(n)
    if kind == "cnot":
        da, db = b.block("A", "data"), b.block("B", "data")
        b.transversal(Kind.CNOT, 0, da, db)
        return b.build([da, db], kind)
    data = b.block("data", "data")
    if kind == "rest":
        b.transversal(Kind.REST, 0, data)
        return b.build([data], kind)
    basis = Kind.MEAS_Z if kind == "meas_z" else Kind.MEAS_X
    b.transversal(basis, 0, data)
    b.checks.append(Check(data, basis, 0, "key"))
    return b.build([], kind)
