"""
Copyright © 2026 The golayft developers.
"""
from dataclasses import dataclass
from typing import Dict

import numpy as np

from ..circuits.circuit import Circuit
from ..circuits.network import single_block_network
from ..circuits.propagate import fault_items
from ..code.css import CssCode, keeps_logical
from ..code.tables import class_tables
from ..counting.enumerate import histogram


@dataclass
class CorrelatedErrorTable:
    """output classes of a preparation circuit by fault order

    reachable[k] holds the class keys reached by exactly k faults; new[k] those not reachable with
    fewer faults. weights maps a key to its reduced weight.
    """
    sector: str
    reachable: Dict[int, np.ndarray]
    new: Dict[int, np.ndarray]
    weights: np.ndarray

    @property
    def max_order(self) -> int:
        return max(self.reachable)

    def n_classes(self, k: int, nonzero: bool = True) -> int:
        keys = self.reachable[k]
        return int(np.count_nonzero(keys)) if nonzero else len(keys)

    def n_reachable(self, k: int) -> int:
        """ classes reached by at most k faults, the trivial class included """
        return sum(len(self.new[j]) for j in range(k + 1))

    def histogram(self, k: int, correlated_only: bool = True) -> Dict[int, int]:
        """ number of new order-k classes per reduced weight (weight > k only when correlated_only) """
        w = self.weights[self.new[k]]
        if correlated_only:
            w = w[w > k]
        vals, counts = np.unique(w, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}


def correlated_errors(circuit: Circuit, code: CssCode, sector: str = "X", max_order: int = 2) -> CorrelatedErrorTable:
    """ inequivalent output errors reachable by k faults of one sector, k <= max_order """
    if max_order > 3:
        raise ValueError(f"max_order {max_order} exceeds the supported order 3")
    network = single_block_network(circuit)
    items = fault_items(network, code, sector)
    out = items.field(network.names[network.outputs[0]], "output")
    bits = code.r + 1
    keep = keeps_logical(sector, network.states[network.outputs[0]])
    wtable = class_tables(code).weight_table(keep)
    reachable, new = {}, {}
    seen = np.zeros(1 << bits, dtype=bool)
    for k in range(max_order + 1):
        hist = histogram(items, k, (out,), (bits,))
        keys = np.flatnonzero(hist)
        reachable[k] = keys
        new[k] = keys[~seen[keys]]
        seen[keys] = True
    return CorrelatedErrorTable(sector, reachable, new, wtable)
