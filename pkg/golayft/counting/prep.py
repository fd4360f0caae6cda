"""
Copyright © 2026 The golayft developers.

Counting inputs of a verification tree: preparation counts per block, the transversal stage of every
test, and joint X/Z counts over whole sub-networks for the acceptance corrections.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .bad import census_rates, item_rates
from .enumerate import ACCEPTED, ALL, histogram, sparse_histogram
from .tables import OrderTable, StageTable
from ..circuits.circuit import Circuit, Kind
from ..circuits.network import Network, Test, single_block_network
from ..circuits.propagate import FaultItems, Field, fault_effects, fault_items
from ..code.css import CssCode
from ..noise.model import GAMMA_MAX, TransformedNoise


def counting_kind(noise: Optional[TransformedNoise]) -> str:
    return "level1" if noise is None else "level2"


def sector_items(network: Network, code: CssCode, sector: str,
                 noise: Optional[TransformedNoise] = None) -> FaultItems:
    """ sector fault items with level-one weights, or the transformed weights at level two """
    return fault_items(network, code, sector, None if noise is None else noise.location_weights(sector))


def census_and_rates(network: Network, items: FaultItems, sector: str, noise: Optional[TransformedNoise]):
    if noise is None:
        census = network.sector_census(sector)
        return census, census_rates(census)
    return (0, 0, 0), item_rates(items)


def field_index(layout: Sequence[Field], block: int, role: str, offset: int = 0) -> Optional[int]:
    for j, f in enumerate(layout):
        if f.block == block and f.role == role:
            return j + offset
    return None


@dataclass(frozen=True, eq=False)
class ErrorCounts:
    """ weighted counts of the output class of a single-output network in one sector """
    sector: str
    table: OrderTable
    rates: Tuple[Tuple[int, int], ...]

    @property
    def census(self) -> Tuple[int, int, int]:
        return self.table.census

    def n_classes(self, k: int, nonzero: bool = True) -> int:
        keys = self.table.nonzero_keys(k)
        return int(np.count_nonzero(keys)) if nonzero else len(keys)


def count_network(network: Network, code: CssCode, sector: str, k_max: int,
                  noise: Optional[TransformedNoise] = None) -> ErrorCounts:
    """ output-class counts of every configuration of order k <= k_max, accepted or not """
    if len(network.outputs) != 1:
        raise ValueError(f"network {network.name!r} has {len(network.outputs)} outputs, expected one")
    items = sector_items(network, code, sector, noise)
    out = field_index(items.layout, network.outputs[0], "output")
    rows = [histogram(items, k, (out,), (code.r + 1,), ALL) for k in range(k_max + 1)]
    census, rates = census_and_rates(network, items, sector, noise)
    return ErrorCounts(sector, OrderTable.from_rows(rows, census, counting_kind(noise)), rates)


def count_prep(circuit: Circuit, code: CssCode, sector: str, k_good: int,
               noise: Optional[TransformedNoise] = None) -> ErrorCounts:
    return count_network(single_block_network(circuit), code, sector, k_good, noise)


def count_stage(network: Network, code: CssCode, sector: str, k_max: int, fields: Sequence[Tuple[int, str]],
                noise: Optional[TransformedNoise] = None) -> StageTable:
    """sparse counts of a transversal stage with the given (block, role) fields packed in order

    A field without a counterpart in this sector stays zero.
    """
    items = sector_items(network, code, sector, noise)
    bits = code.r + 1
    cols = [field_index(items.layout, b, role) for b, role in fields]
    present = [(j, c) for j, c in enumerate(cols) if c is not None]
    orders, keys, weights = [], [], []
    for k in range(k_max + 1):
        raw, w = sparse_histogram(items, k, [c for _, c in present], [bits] * len(present), ALL)
        packed = np.zeros(len(raw), dtype=np.int64)
        for pos, (j, _) in enumerate(present):
            packed |= ((raw >> (pos * bits)) & ((1 << bits) - 1)) << (j * bits)
        orders.append(np.full(len(raw), k, dtype=np.int64))
        keys.append(packed)
        weights.append(np.asarray(w).astype(object))
    census, rates = census_and_rates(network, items, sector, noise)
    return StageTable(np.concatenate(orders), np.concatenate(keys), np.concatenate(weights), bits, len(fields),
                      census, counting_kind(noise), rates)


def stage_pair(network: Network, code: CssCode, k_max: int, fields: Dict[str, Sequence[Tuple[int, str]]],
               noise: Optional[TransformedNoise] = None) -> Dict[str, StageTable]:
    return {s: count_stage(network, code, s, k_max, fields[s], noise) for s in ("X", "Z")}


@dataclass(frozen=True, eq=False)
class VerificationLayout:
    """a verification network cut into its parts

    preps[b] are the locations of the preparation of block b; stages[j] the transversal locations of
    test j, rests included.
    """
    network: Network
    preps: Tuple[Tuple[int, ...], ...]
    stages: Tuple[Tuple[int, ...], ...]

    @property
    def tests(self) -> Tuple[Test, ...]:
        return self.network.tests

    def prep_network(self, b: int) -> Network:
        return self.network.restricted(self.preps[b], [b], [b], name=f"prep {self.network.names[b]}")

    def stage_network(self, j: int) -> Network:
        """ the stage of test j on (survivor, checked) with the checked block's outcome """
        t = self.tests[j]
        return self.network.restricted(self.stages[j], [t.survivor, t.checked], [t.survivor],
                                       [self.network.checks[j]], name=f"stage {j}")

    def subtree(self, j: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """ (blocks, tests) whose results flow into the survivor of test j, survivor first """
        members = {b: [b] for b in range(self.network.n_blocks)}
        tests: Dict[int, List[int]] = {b: [] for b in members}
        for i, t in enumerate(self.tests[:j + 1]):
            members[t.survivor] += members[t.checked]
            tests[t.survivor] += tests[t.checked] + [i]
        s = self.tests[j].survivor
        return tuple(members[s]), tuple(sorted(tests[s]))

    def subtree_network(self, j: int) -> Network:
        blocks, tests = self.subtree(j)
        locs = [i for b in blocks for i in self.preps[b]] + [i for t in tests for i in self.stages[t]]
        return self.network.restricted(locs, blocks, [blocks[0]], [self.network.checks[t] for t in tests],
                                       name=f"subtree {j}")


def split_verification(network: Network) -> VerificationLayout:
    """assign every location of an assembled network to a preparation or to one test

    A rest belongs to the first later test of its block, or to the block's last test when none
    follows; every other location to the first test of its block(s) no earlier than one step before.
    """
    if len(network.checks) != len(network.tests):
        raise ValueError("every test must own exactly one check")
    prep = network.prep_location_mask()
    preps: List[List[int]] = [[] for _ in range(network.n_blocks)]
    stages: List[List[int]] = [[] for _ in network.tests]
    for i, loc in enumerate(network.locations):
        if prep[i]:
            preps[loc.block].append(i)
            continue
        blocks = {loc.block, loc.target_block} - {-1}
        using = [j for j, t in enumerate(network.tests) if blocks & {t.survivor, t.checked}]
        if not using:
            raise ValueError(f"location {i} of {network.name!r} belongs to no preparation and no test")
        if loc.kind == Kind.REST:
            owner = next((j for j in using if loc.step < network.tests[j].step), using[-1])
        else:
            owner = next((j for j in using if loc.step <= network.tests[j].step + 1), using[-1])
        stages[owner].append(i)
    return VerificationLayout(network, tuple(tuple(p) for p in preps), tuple(tuple(s) for s in stages))


def xz_scale(census, sector_census, k: int, gamma_max: Fraction = GAMMA_MAX) -> Fraction:
    """factor turning the weight of an order-k configuration counted with the full distribution into
    a lower bound in the prefactor form of one sector, at every gamma <= gamma_max

    census is the full (cnot, rest, prep, meas) census and sector_census the (n_c, n_r, n_pm) census
    of the sector table.
    """
    g = Fraction(gamma_max)
    nc, nr, npm = census[0], census[1], census[2] + census[3]
    full = (1 - 4 * g) ** npm * (1 - 12 * g) ** nr * (1 - 15 * g) ** nc
    sc, sr, spm = sector_census
    marginal = (1 - 12 * g) ** sc * (1 - 8 * g) ** sr * (1 - 4 * g) ** spm
    return full / marginal * ((1 - 12 * g) / (1 - 4 * g)) ** k


def _floor_scaled(w: np.ndarray, s: Fraction) -> np.ndarray:
    return np.array([(int(v) * s.numerator) // s.denominator for v in w], dtype=object)


@dataclass(frozen=True, eq=False)
class JointCounts:
    """joint output classes (x_key, z_key) of configurations of order k <= K counted with every Pauli
    choice

    Weights are scaled into lower bounds in the prefactor form of the sector table with the given
    census.
    """
    order: np.ndarray
    x_key: np.ndarray
    z_key: np.ndarray
    weight: np.ndarray
    sector: str
    census: Tuple[int, int, int]

    @property
    def K(self) -> int:
        return int(self.order.max()) if len(self.order) else 0

    def marginal(self, size: int) -> OrderTable:
        """ the other sector summed out; entry-wise below the counts of the scaled sector alone """
        keys = self.x_key if self.sector == "X" else self.z_key
        w = np.zeros((self.K + 1, size), dtype=object)
        for k, x, v in zip(self.order, keys, self.weight):
            w[int(k), int(x)] += int(v)
        return OrderTable(w, self.census)


def joint_counts(network: Network, code: CssCode, k_max: int, sector: str = "X",
                 gamma_max: Fraction = GAMMA_MAX) -> JointCounts:
    """joint counts of a single-output network with weights scaled for the given sector's table"""
    effects = {s: fault_effects(network, code, s) for s in ("X", "Z")}
    items = fault_items(network, code, "XZ", effects=effects)
    out = network.outputs[0]
    nx = len(effects["X"].layout)
    fx = field_index(effects["X"].layout, out, "output")
    fz = field_index(effects["Z"].layout, out, "output", nx)
    bits = code.r + 1
    sc = network.sector_census(sector)
    orders, xs, zs, ws = [], [], [], []
    for k in range(k_max + 1):
        keys, w = sparse_histogram(items, k, (fx, fz), (bits, bits), ALL)
        orders.append(np.full(len(keys), k, dtype=np.int64))
        xs.append(keys & ((1 << bits) - 1))
        zs.append(keys >> bits)
        ws.append(_floor_scaled(w, xz_scale(network.census(), sc, k, gamma_max)))
    return JointCounts(np.concatenate(orders), np.concatenate(xs), np.concatenate(zs), np.concatenate(ws),
                       sector, sc)


def rejection_correction(network: Network, code: CssCode, check: int, out_sector: str, k_max: int,
                         gamma_max: Fraction = GAMMA_MAX) -> OrderTable:
    """lower bounds on the weight of configurations with at most k_max failures of any kind that pass
    every check except the given one, fail that one, and leave class z in out_sector

    The result is in the prefactor form of the out_sector table of the network.
    """
    effects = {s: fault_effects(network, code, s) for s in ("X", "Z")}
    items = fault_items(network, code, "XZ", effects=effects)
    nx = len(effects["X"].layout)
    c = network.checks[check]
    check_sector = "X" if c.kind == Kind.MEAS_Z else "Z"
    cf = field_index(effects[check_sector].layout, c.block, "check", 0 if check_sector == "X" else nx)
    out = field_index(effects[out_sector].layout, network.outputs[0], "output", 0 if out_sector == "X" else nx)
    if cf is None or out is None:
        raise ValueError(f"network {network.name!r} lacks the check or output needed for a correction")
    every = items.accept_mask()
    earlier = every.copy()
    earlier[cf] = 0
    bits = code.r + 1
    census = network.sector_census(out_sector)
    rows = []
    for k in range(k_max + 1):
        passed = histogram(items, k, (out,), (bits,), ACCEPTED, earlier)
        kept = histogram(items, k, (out,), (bits,), ACCEPTED, every)
        diff = np.asarray(passed).astype(object) - np.asarray(kept).astype(object)
        rows.append(_floor_scaled(diff, xz_scale(network.census(), census, k, gamma_max)))
    return OrderTable.from_rows(rows, census)
