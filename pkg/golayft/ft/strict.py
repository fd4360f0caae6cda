"""
Copyright © 2026 The golayft developers.

Strict fault tolerance: every accepted set of k faults leaves an output error of reduced weight at
most k.
"""
import json
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..circuits.network import Network
from ..circuits.propagate import FaultItems, fault_items
from ..code.css import CssCode, keeps_logical
from ..code.tables import class_tables
from ..counting.enumerate import find_witnesses, ft_scan


@dataclass
class Witness:
    sector: str
    order: int
    faults: List[Tuple[int, str]]
    weight: int


@dataclass
class FtReport:
    """ passed iff no accepted fault set violates the bound; max_weight[sector][k] is the largest accepted
    reduced weight at order k """
    network: str
    max_order: int
    witnesses: List[Witness] = field(default_factory=list)
    max_weight: Dict[str, Dict[int, int]] = field(default_factory=dict)
    prep_max_weight: Dict[str, Dict[int, int]] = field(default_factory=dict)
    n_violations: int = 0

    @property
    def passed(self) -> bool:
        return self.n_violations == 0

    def strictly_better(self, k: int) -> bool:
        """faults inside the preparation circuits need order j+1 to leave an accepted weight-j error,
        for every j <= k"""
        for per in self.prep_max_weight.values():
            for j in range(1, k + 1):
                if j in per and per[j] > j - 1:
                    return False
        return True

    def to_dict(self) -> Dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d

    def save(self, path):
        with open(path, "w") as f:
            json.dump(self.to_dict(), f, indent=1)


def _scan(items: FaultItems, k: int, out: int, out_mask: int, wtable: np.ndarray, max_witnesses: int,
          sector: str, report: FtReport) -> int:
    wmax, nbad, per = ft_scan(items, k, out, out_mask, wtable)
    room = max_witnesses - len(report.witnesses)
    if nbad and room > 0:
        for idx, rows, w in find_witnesses(items, k, out, out_mask, wtable, per, room):
            faults = [(int(items.locations[i]), items.labels[c]) for i, c in zip(idx, rows)]
            report.witnesses.append(Witness(sector, k, faults, w))
    report.n_violations += nbad
    return wmax


def strict_ft_check(network: Network, code: CssCode, max_order: Optional[int] = None,
                    sectors: Sequence[str] = ("X", "Z"), max_witnesses: int = 20,
                    prep_orders: int = 2) -> FtReport:
    """enumerate every fault set of size k <= max_order in each sector

    Accepted sets must leave an output error of reduced weight at most k. The accepted weights of
    fault sets inside the preparation circuits are recorded up to prep_orders.
    """
    if len(network.outputs) != 1:
        raise ValueError(f"network {network.name!r} must have exactly one output block")
    max_order = code.t if max_order is None else max_order
    report = FtReport(network.name, max_order)
    b = network.outputs[0]
    prep_mask = np.array(network.prep_location_mask())
    for sector in sectors:
        items = fault_items(network, code, sector)
        out = items.field(network.names[b], "output")
        keep = keeps_logical(sector, network.states[b])
        wtable = class_tables(code).weight_table(keep)
        out_mask = items.layout[out].keep
        report.max_weight[sector] = {}
        for k in range(1, max_order + 1):
            report.max_weight[sector][k] = _scan(items, k, out, out_mask, wtable, max_witnesses, sector, report)
        prep_items = items.subset(prep_mask[items.locations])
        report.prep_max_weight[sector] = {}
        for k in range(1, min(prep_orders, max_order) + 1):
            report.prep_max_weight[sector][k] = ft_scan(prep_items, k, out, out_mask, wtable)[0]
    return report
