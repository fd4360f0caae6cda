"""
Copyright © 2026 The golayft developers.

Error-correction counting. The verified |0> ancilla extracts the Z syndrome (stage "z") and the
verified |+> ancilla the X syndrome (stage "x"). In each sector the data leaves as

    out = y + leader(syn(y) + sigma) + u

where y is the incoming error with everything that reaches the data before the syndrome is read,
sigma the error on the measured syndrome and u what reaches the data afterwards.

A leading EC (LEC) table holds the counts of out given a trivial input. A trailing EC (TEC) table
pair holds, for every input class, the counts with D(out) = 0 and D(out) = 1 where D is ideal
decoding.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import partial
from typing import Dict, Optional, Tuple

import numpy as np

from .bad import bad_expr
from .config import KGoodConfig
from .prep import count_stage
from .tables import OrderTable, StageTable, grouped_convolve, indicator, join_logical, spread_convolve, \
    xor_convolve
from .verify import SECTORS, STAGE_FIELDS, ComponentResult, over, times
from ..circuits.network import ec_network
from ..code.css import CssCode
from ..code.tables import class_tables
from ..noise.model import TransformedNoise
from ..polynomials.expr import BoundExpr, Leaf

print = partial(print, flush=True)

MODES = ("LEC", "TEC", "both")


def ec_stages(code: CssCode, k_stage: int, noise: Optional[TransformedNoise] = None) -> Dict[str, Dict[str, StageTable]]:
    """counts of the two syndrome-extraction stages of an EC on (data, ancilla)

    "z" is the |0> ancilla stage (Z syndrome), "x" the |+> ancilla stage (X syndrome); each packs the
    data output then the ancilla outcome.
    """
    net = ec_network(code.n)
    data = net.outputs[0]
    out = {}
    for tag, label in (("syndrome_z", "z"), ("syndrome_x", "x")):
        anc = net.tags[tag][0]
        locs = [i for i, loc in enumerate(net.locations) if anc in (loc.block, loc.target_block)]
        sub = net.restricted(locs, [data, anc], [data], [net.check_of(anc)], name=f"ec stage {label}")
        out[label] = {s: count_stage(sub, code, s, k_stage, STAGE_FIELDS, noise) for s in SECTORS}
    return out


@dataclass(frozen=True, eq=False)
class ECCounts:
    """
    lec[s] : numerator counts of the output class given a trivial input
    tec[s] : (D = 0, D = 1) numerator counts indexed by the input class
    bad[s] : upper bound on Pr[bad in sector s | both ancillas accepted]
    denominator : lower bound on the acceptance of both ancillas
    """
    lec: Dict[str, OrderTable]
    tec: Dict[str, Tuple[OrderTable, OrderTable]]
    bad: Dict[str, BoundExpr]
    denominator: BoundExpr
    rates: Dict[str, Tuple[Tuple[int, int], ...]]
    k_good: Dict[str, int] = field(default_factory=dict)

    def census(self, sector: str) -> Tuple[int, int, int]:
        return (self.lec.get(sector) or self.tec[sector][0]).census

    def high_orders(self, sector: str, lo: int) -> BoundExpr:
        """ upper bound on Pr[at least lo failures | accepted] in one sector """
        table = self.lec[sector]
        return over(Leaf(table.totals().orders(lo, table.K)), self.denominator) + self.bad[sector]


def _syndrome_split(code: CssCode, kind: str):
    lam = class_tables(code).lam
    return indicator(lam == 0, kind), indicator(lam == 1, kind)


def _lec(y: OrderTable, syn_err: OrderTable, stage: StageTable, post: Optional[OrderTable], lam_tables,
         r: int, k_max: int) -> OrderTable:
    """ leader-corrected output counts for syndrome-error counts syn_err (a syndrome table) """
    y0, y1 = y.split_logical(r)
    l0, l1 = lam_tables
    v0 = xor_convolve(y0, l0, k_max) + xor_convolve(y1, l1, k_max)
    v1 = xor_convolve(y0, l1, k_max) + xor_convolve(y1, l0, k_max)
    v = join_logical(v0, v1)
    out = grouped_convolve(v, syn_err.expanded(r), stage, shift_field=1, value_field=0, max_order=k_max)
    return out if post is None else xor_convolve(out, post, k_max)


def _tec(y: OrderTable, syn_err: OrderTable, stage: StageTable, post: OrderTable, lam_tables,
         r: int, k_max: int) -> Tuple[OrderTable, OrderTable]:
    l0, l1 = lam_tables
    p0, p1 = post.split_logical(r)
    h = [xor_convolve(l0, p0, k_max) + xor_convolve(l1, p1, k_max),
         xor_convolve(l1, p0, k_max) + xor_convolve(l0, p1, k_max)]
    # w[(sigma, b)]: syndrome error sigma with the later part flipping the decoded bit by b
    w = spread_convolve(syn_err.expanded(r), join_logical(h[0], h[1]), stage, group_field=0, value_field=1,
                        max_order=k_max)
    wb = w.split_logical(r)
    c = [[xor_convolve(wb[b], lt, k_max) for lt in (l0, l1)] for b in (0, 1)]
    out = []
    for d in (0, 1):
        psi = join_logical(c[d][0] + c[1 - d][1], c[1 - d][0] + c[d][1])
        out.append(xor_convolve(y, psi, k_max))
    return out[0], out[1]


def ec_component(verified_zero: ComponentResult, verified_plus: ComponentResult,
                 stages: Dict[str, Dict[str, StageTable]], cfg: KGoodConfig, code: CssCode,
                 mode: str = "both") -> ECCounts:
    """LEC and/or TEC counts of one error correction

    verified_plus is the dual of verified_zero (sectors exchanged); stages come from ec_stages.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    t0 = time.time()
    r = code.r
    k = cfg.ec
    z_stage = {s: t.restricted(cfg.ec_stage) for s, t in stages["z"].items()}
    x_stage = {s: t.restricted(cfg.ec_stage) for s, t in stages["x"].items()}
    v0, vp = verified_zero.good, verified_plus.good
    size = v0["X"].size
    kind = v0["X"].kind
    lam_tables = _syndrome_split(code, kind)
    delta = OrderTable.delta(size, kind=kind)
    # X: the |0> ancilla and the Z-syndrome stage precede the X syndrome, nothing follows it
    # Z: the Z syndrome comes first; the |+> ancilla and the X-syndrome stage follow it
    parts = {
        "X": (xor_convolve(v0["X"], z_stage["X"].dense(0), k), vp["X"].syndromes(r), x_stage["X"], None),
        "Z": (delta, v0["Z"].syndromes(r), z_stage["Z"], xor_convolve(vp["Z"], x_stage["Z"].dense(0), k)),
    }
    lec, tec = {}, {}
    for s, (y, syn_err, stage, post) in parts.items():
        if mode in ("LEC", "both"):
            lec[s] = _lec(y, syn_err, stage, post, lam_tables, r, k)
        if mode in ("TEC", "both"):
            tec[s] = _tec(y, syn_err, stage, post if post is not None else delta, lam_tables, r, k)
    den = times(verified_zero.denominator, verified_plus.denominator)
    rates, bad = {}, {}
    for s in SECTORS:
        rates[s] = verified_zero.rates[s] + verified_plus.rates[s] + z_stage[s].rates + x_stage[s].rates
        census = (lec.get(s) or tec[s][0]).census
        tail = (bad_expr(z_stage[s].census, cfg.ec_stage, cfg.bad_terms, kind, z_stage[s].rates)
                + bad_expr(x_stage[s].census, cfg.ec_stage, cfg.bad_terms, kind, x_stage[s].rates)
                + bad_expr(census, k, cfg.bad_terms, kind, rates[s]))
        bad[s] = verified_zero.bad[s] + verified_plus.bad[s] + over(tail, den)
    print("error correction %s counts, %0.2f sec" % (mode, time.time() - t0))
    return ECCounts(lec, tec, bad, den, rates, {"total": k, "stage": cfg.ec_stage})


def lec_syndrome_classes(ec: ECCounts, sector: str, k: int, r: int) -> int:
    """ distinct output syndromes reached with exactly k failures """
    return len(ec.lec[sector].syndromes(r).nonzero_keys(k))


def decoded_flags(code: CssCode) -> np.ndarray:
    return class_tables(code).decode_flag(np.arange(code.n_keys))
