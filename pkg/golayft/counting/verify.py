"""
Copyright © 2026 The golayft developers.

Verification counting. A component result holds, per sector, the weighted counts of good
configurations that leave each output class and pass every test of the component. Counts are
numerators: dividing by the component's denominator gives bounds conditioned on acceptance.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import partial
from typing import Dict, Optional, Tuple

from .bad import bad_expr
from .config import KGoodConfig
from .prep import ErrorCounts, count_network, count_stage, rejection_correction, split_verification
from .tables import OrderTable, StageTable, convolve_all, grouped_convolve
from ..circuits.network import Network
from ..code.css import CssCode
from ..noise.model import GAMMA_MAX, TransformedNoise
from ..polynomials.countpoly import CountPoly
from ..polynomials.expr import BoundExpr, Const, Leaf

print = partial(print, flush=True)

SECTORS = ("X", "Z")
# (survivor output, checked block outcome) packed in this order
STAGE_FIELDS = ((0, "output"), (1, "check"))


def other(sector: str) -> str:
    return "Z" if sector == "X" else "X"


def over(num: BoundExpr, den: BoundExpr) -> BoundExpr:
    if isinstance(den, Const) and den.c == 1:
        return num
    return num / den


def times(a: BoundExpr, b: BoundExpr) -> BoundExpr:
    if isinstance(a, Const) and a.c == 1:
        return b
    if isinstance(b, Const) and b.c == 1:
        return a
    return a * b


def syndrome_bits(table: OrderTable) -> int:
    return table.size.bit_length() - 2


@dataclass(frozen=True, eq=False)
class ComponentResult:
    """counts and bounds of a verified (or bare) encoded ancilla

    good[s] : numerator counts Pr[class, good, accepted] of sector s
    rates[s] : (locations, weight) groups of every location counted in sector s
    accept_lb : lower bound on acceptance given that every input component was accepted
    bad[s] : upper bound on Pr[bad in sector s | accepted]
    denominator : lower bound on the acceptance of the whole component
    """
    name: str
    good: Dict[str, OrderTable]
    rates: Dict[str, Tuple[Tuple[int, int], ...]]
    accept_lb: BoundExpr
    bad: Dict[str, BoundExpr]
    denominator: BoundExpr
    k_good: Dict[str, int] = field(default_factory=dict)
    corrections: Dict[str, OrderTable] = field(default_factory=dict)
    rejected: Optional[CountPoly] = None

    @property
    def good_x(self) -> OrderTable:
        return self.good["X"]

    @property
    def good_z(self) -> OrderTable:
        return self.good["Z"]

    @property
    def bad_x_ub(self) -> BoundExpr:
        return self.bad["X"]

    @property
    def bad_z_ub(self) -> BoundExpr:
        return self.bad["Z"]

    @property
    def kind(self) -> str:
        return self.good["X"].kind

    def swapped(self, name: str = "") -> "ComponentResult":
        """ the dual component: sector roles exchanged (|0> results read as |+> results) """
        sw = lambda d: {other(s): v for s, v in d.items()}
        return replace(self, name=name or self.name + "+", good=sw(self.good), rates=sw(self.rates),
                       bad=sw(self.bad), corrections=sw(self.corrections))

    def probability(self, sector: str, key: int) -> BoundExpr:
        """ upper bound on Pr[class key, good | accepted] """
        return over(Leaf(self.good[sector].poly(key)), self.denominator)

    def normalization(self, sector: str) -> BoundExpr:
        """ good mass plus the bad tail, conditioned on acceptance """
        return over(Leaf(self.good[sector].totals()), self.denominator) + self.bad[sector]


def prep_result(counts: Dict[str, ErrorCounts], k_good: int, bad_terms: int = 4, name: str = "") -> ComponentResult:
    """ an unverified preparation: nothing rejected, the tail beyond k_good failures is bad """
    bad = {s: bad_expr(c.census, k_good, bad_terms, c.table.kind, c.rates) for s, c in counts.items()}
    return ComponentResult(name, {s: c.table for s, c in counts.items()}, {s: c.rates for s, c in counts.items()},
                           Const(1), bad, Const(1), {"prep": k_good})


def verify(test_sector: str, survivor: ComponentResult, checked: ComponentResult, stage: Dict[str, StageTable],
           k_total: int, k_stage: int, correction: Optional[OrderTable] = None, accept: str = "",
           bad_terms: int = 4, name: str = "") -> ComponentResult:
    """one test: the checked block is measured after a transversal CNOT with the survivor

    The test sector's counts keep configurations whose outcome on the checked block is trivial on the
    accepted bits (the full key for accept "key", the syndrome for "syndrome"; X tests default to the
    key and Z tests to the syndrome). The other sector's counts are convolved and reduced by the
    optional correction.
    """
    s, o = test_sector, other(test_sector)
    accept = accept or ("key" if s == "X" else "syndrome")
    if accept not in ("key", "syndrome"):
        raise ValueError(f"accept must be key or syndrome, got {accept!r}")
    r = syndrome_bits(survivor.good[s])
    stage = {t: stage[t].restricted(k_stage) for t in SECTORS}
    chk = checked.good[s] if accept == "key" else checked.good[s].syndromes(r).expanded(r)

    good_s = grouped_convolve(survivor.good[s], chk, stage[s], shift_field=1, value_field=0, max_order=k_total)
    tot = survivor.good[s].totals().convolve(checked.good[s].totals(), k_total)
    tot = tot.convolve(stage[s].dense(0).totals(), k_total)
    rejected = tot - good_s.totals()

    good_o = convolve_all([survivor.good[o], checked.good[o], stage[o].dense(0)], k_total)
    corrections = {}
    if correction is not None:
        if correction.census != good_o.census:
            raise ValueError(f"correction census {correction.census} does not match counts {good_o.census}")
        corrections[o] = correction
        good_o = good_o - correction.truncated(min(correction.K, good_o.K))

    den_in = times(survivor.denominator, checked.denominator)
    rates = {t: survivor.rates[t] + checked.rates[t] + stage[t].rates for t in SECTORS}
    good = {s: good_s, o: good_o}
    raw = {}
    for t in SECTORS:
        tail = bad_expr(stage[t].census, k_stage, bad_terms, stage[t].kind, stage[t].rates)
        tail = tail + bad_expr(good[t].census, k_total, bad_terms, good[t].kind, rates[t])
        raw[t] = survivor.bad[t] + checked.bad[t] + over(tail, den_in)
    accept_lb = 1 - over(Leaf(rejected), den_in) - raw[s]
    bad = {t: over(raw[t], accept_lb) for t in SECTORS}
    k_good = {"total": k_total, "stage": k_stage}
    if correction is not None:
        k_good["correction"] = correction.K
    return ComponentResult(name, good, rates, accept_lb, bad, times(den_in, accept_lb), k_good, corrections,
                           rejected)


def verify_x(survivor: ComponentResult, checked: ComponentResult, stage: Dict[str, StageTable], cfg: KGoodConfig,
             correction: Optional[OrderTable] = None, name: str = "") -> ComponentResult:
    return verify("X", survivor, checked, stage, cfg.xver, cfg.xver_stage, correction, "key", cfg.bad_terms, name)


def verify_z(survivor: ComponentResult, checked: ComponentResult, stage: Dict[str, StageTable], cfg: KGoodConfig,
             correction: Optional[OrderTable] = None, name: str = "") -> ComponentResult:
    return verify("Z", survivor, checked, stage, cfg.zver, cfg.zver_stage, correction, "syndrome", cfg.bad_terms,
                  name)


@dataclass(frozen=True, eq=False)
class TreeResult:
    """ every intermediate result of a verification network; output is the surviving block's """
    network: Network
    preps: Tuple[ComponentResult, ...]
    tests: Tuple[ComponentResult, ...]

    @property
    def output(self) -> ComponentResult:
        return self.tests[-1] if self.tests else self.preps[self.network.outputs[0]]


def verify_network(network: Network, code: CssCode, cfg: KGoodConfig, noise: Optional[TransformedNoise] = None,
                   corrections: bool = True, gamma_max: Fraction = GAMMA_MAX) -> TreeResult:
    """count an assembled verification network test by test

    Level-one runs subtract the joint X/Z rejection corrections from the other sector of every test
    (up to k_best failures for X tests and zver_xz for Z tests); level-two runs never do.
    """
    layout = split_verification(network)
    t0 = time.time()
    preps = []
    for b in range(network.n_blocks):
        net = layout.prep_network(b)
        counts = {s: count_network(net, code, s, cfg.prep, noise) for s in SECTORS}
        preps.append(prep_result(counts, cfg.prep, cfg.bad_terms, net.name))
    print("preparation counts, %0.2f sec" % (time.time() - t0))
    current = dict(enumerate(preps))
    results = []
    for j, t in enumerate(layout.tests):
        t1 = time.time()
        k_stage = cfg.xver_stage if t.sector == "X" else cfg.zver_stage
        stage_net = layout.stage_network(j)
        stage = {s: count_stage(stage_net, code, s, k_stage, STAGE_FIELDS, noise) for s in SECTORS}
        k_corr = cfg.k_best if t.sector == "X" else cfg.zver_xz
        correction = None
        if noise is None and corrections and k_corr > 0:
            sub = layout.subtree_network(j)
            correction = rejection_correction(sub, code, len(sub.checks) - 1, other(t.sector), k_corr, gamma_max)
        name = f"{t.sector}({network.names[t.survivor]};{network.names[t.checked]})"
        k_total = cfg.xver if t.sector == "X" else cfg.zver
        res = verify(t.sector, current[t.survivor], current[t.checked], stage, k_total, k_stage, correction,
                     network.checks[j].accept, cfg.bad_terms, name)
        current[t.survivor] = res
        results.append(res)
        print("test %s, %0.2f sec" % (name, time.time() - t1))
    return TreeResult(network, tuple(preps), tuple(results))
