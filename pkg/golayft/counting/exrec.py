"""
Copyright © 2026 The golayft developers.

Malignant-event counting for extended rectangles.

For the CNOT rectangle in one sector the error of the first block (the one whose error spreads)
propagates into the second. With leading outputs x_f, x_s, stage outputs u_f, u_s and trailing
decoded bits, the logical events are

    e_f = D(x_f) + d_f(x_f + u_f)
    e_s = D(x_f) + D(x_s) + d_s(x_f + x_s + u_s)

The joint distribution of (e_f, e_s) comes from four signed sums F(chi_f, chi_s), each one grouped
convolution over the stage followed by a dot product, and an inverse transform over {0,1}^2.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import partial
from typing import Dict, Optional, Tuple

import numpy as np

from .bad import bad_expr
from .config import KGoodConfig
from .ec import ECCounts, decoded_flags
from .prep import count_stage
from .tables import OrderTable, StageTable, grouped_convolve, indicator, series_dot, xor_convolve
from .verify import SECTORS, ComponentResult, other, over, times
from ..circuits.network import stage_network
from ..code.css import CssCode
from ..noise.model import TransformedNoise
from ..polynomials.countpoly import CountPoly
from ..polynomials.expr import BoundExpr, Const, Leaf

print = partial(print, flush=True)

# (event, sector, (e_first, e_second)); X errors spread from A to B, Z errors from B to A
CNOT_EVENTS = (("IX", "X", (0, 1)), ("XI", "X", (1, 0)), ("XX", "X", (1, 1)),
               ("IZ", "Z", (1, 0)), ("ZI", "Z", (0, 1)), ("ZZ", "Z", (1, 1)))
GATE_EVENTS = {"rest": ("rest_X", "rest_Z"), "meas_z": ("meas_X",), "meas_x": ("meas_Z",),
               "prep_zero": ("prep_X",), "prep_plus": ("prep_Z",)}
EVENTS = tuple(e for e, _, _ in CNOT_EVENTS) + tuple(e for v in GATE_EVENTS.values() for e in v)
VARIANTS = {"AB": (True, True), "A-": (True, False), "-B": (False, True), "--": (False, False)}
# first block, second block per sector
CNOT_FIELDS = {"X": ((0, "output"), (1, "output")), "Z": ((1, "output"), (0, "output"))}


@dataclass(frozen=True, eq=False)
class RectangleBounds:
    """
    counts[e] : numerator of the malignant event e
    malignant[e] : upper bound on Pr[e, good | every ancilla accepted]
    bad[s] : upper bound on Pr[bad in sector s | every ancilla accepted]
    """
    name: str
    counts: Dict[str, CountPoly]
    malignant: Dict[str, BoundExpr]
    bad: Dict[str, BoundExpr]
    denominator: BoundExpr
    k_good: Dict[str, int] = field(default_factory=dict)

    @property
    def bad_total(self) -> BoundExpr:
        return self.bad["X"] + self.bad["Z"]

    def event_bound(self, event: str) -> BoundExpr:
        """ Pr[event] <= Pr[event, good] + Pr[bad] """
        if event not in self.malignant:
            raise ValueError(f"rectangle {self.name!r} has no event {event!r}; events {sorted(self.malignant)}")
        return self.malignant[event] + self.bad_total

    def failure_bound(self) -> BoundExpr:
        """ bad plus every malignant event: the rectangle's incorrectness bound """
        out = self.bad_total
        for e in sorted(self.malignant):
            out = out + self.malignant[e]
        return out


def cnot_stages(code: CssCode, k_stage: int, noise: Optional[TransformedNoise] = None) -> Dict[str, StageTable]:
    net = stage_network(code.n, "cnot")
    return {s: count_stage(net, code, s, k_stage, CNOT_FIELDS[s], noise) for s in SECTORS}


def gate_stage(code: CssCode, kind: str, sector: str, k_stage: int,
               noise: Optional[TransformedNoise] = None) -> StageTable:
    net = stage_network(code.n, kind)
    role = "output" if kind == "rest" else "check"
    return count_stage(net, code, sector, k_stage, ((0, role),), noise)


def _absent(flags: np.ndarray, kind: str) -> Tuple[OrderTable, OrderTable]:
    """ an ideal decoder in place of a trailing EC """
    return indicator(flags == 0, kind), indicator(flags == 1, kind)


def _signed_pair(t: Tuple[OrderTable, OrderTable]) -> Tuple[OrderTable, OrderTable]:
    return t[0] + t[1], t[0] - t[1]


def _quarter(p: CountPoly) -> CountPoly:
    if any(c % 4 for c in p.coeffs):
        raise ValueError("signed sums are inconsistent: a joint count is not an integer")
    return CountPoly(p.census, tuple(c // 4 for c in p.coeffs), p.kind)


def _split(lead_f: OrderTable, lead_s: OrderTable, stage: StageTable, cfg: KGoodConfig):
    """ the restriction set as three disjoint pieces of (first, second, stage) order ranges """
    g = cfg.g_split
    hi_f, hi_s = lead_f.orders(g, lead_f.K), lead_s.orders(g, lead_s.K)
    return ((lead_f.orders(0, g - 1), lead_s, stage),
            (hi_f, lead_s.orders(0, g - 1), stage),
            (hi_f, hi_s, stage.restricted(cfg.g_stage)))


def joint_events(lec: OrderTable, stage: StageTable, tec_f: Tuple[OrderTable, OrderTable],
                 tec_s: Tuple[OrderTable, OrderTable], flags: np.ndarray, cfg: KGoodConfig) -> Dict[Tuple[int, int], CountPoly]:
    """numerators of every (e_first, e_second) within the restriction set"""
    k = cfg.exrec
    tf, ts = _signed_pair(tec_f), _signed_pair(tec_s)
    f = {}
    for cf in (0, 1):
        for cs in (0, 1):
            lf = lec.signed(flags * (cf ^ cs))
            ls = lec.signed(flags * cs)
            total = None
            for a, b, st in _split(lf, ls, stage, cfg):
                q = xor_convolve(b, ts[cs], k)
                z = grouped_convolve(a, tf[cf], st, shift_field=0, value_field=1, max_order=k)
                part = series_dot(z, q, k)
                total = part if total is None else total + part
            f[(cf, cs)] = total
    out = {}
    for ef in (0, 1):
        for es in (0, 1):
            acc = None
            for (cf, cs), v in f.items():
                term = v if (cf * ef + cs * es) % 2 == 0 else v.scaled(-1)
                acc = term if acc is None else acc + term
            out[(ef, es)] = _quarter(acc)
    return out


def _power(den: BoundExpr, n: int) -> BoundExpr:
    out: BoundExpr = Const(1)
    for _ in range(n):
        out = times(out, den)
    return out


def exrec_count(ec: ECCounts, stages: Dict[str, StageTable], cfg: KGoodConfig, code: CssCode,
                tec_a: bool = True, tec_b: bool = True, name: str = "") -> RectangleBounds:
    """malignant-event bounds of the CNOT rectangle with both leading ECs and the chosen trailing ECs

    The restriction set drops configurations with at least g_split failures in both leading ECs and
    more than g_stage in the gate stage; they are charged to the bad bound.
    """
    t0 = time.time()
    name = name or ("A" if tec_a else "-") + ("B" if tec_b else "-")
    flags = decoded_flags(code)
    n_ec = 2 + int(tec_a) + int(tec_b)
    den = _power(ec.denominator, n_ec)
    counts, malignant, bad = {}, {}, {}
    for s in SECTORS:
        stage = stages[s].restricted(cfg.cnot_stage)
        lec = ec.lec[s]
        present = (tec_a, tec_b) if s == "X" else (tec_b, tec_a)
        tecs = [ec.tec[s] if p else _absent(flags, lec.kind) for p in present]
        joint = joint_events(lec, stage, tecs[0], tecs[1], flags, cfg)
        for e, sector, bits in CNOT_EVENTS:
            if sector == s:
                counts[e] = joint[bits]
                malignant[e] = over(Leaf(joint[bits]), den)
        census = joint[(0, 0)].census
        rates = ec.rates[s] * n_ec + stage.rates
        kind = lec.kind
        tail = bad_expr(census, cfg.exrec, cfg.bad_terms, kind, rates)
        stage_tail = bad_expr(stage.census, cfg.cnot_stage, cfg.bad_terms, kind, stage.rates)
        hard = bad_expr(stage.census, cfg.g_stage, cfg.bad_terms, kind, stage.rates)
        hard = hard * ec.high_orders(s, cfg.g_split) * ec.high_orders(s, cfg.g_split)
        bad[s] = ec.bad[s] * n_ec + stage_tail + over(tail, den) + hard
    print("exRec %s, %0.2f sec" % (name, time.time() - t0))
    return RectangleBounds(name, counts, malignant, bad, den, cfg.to_dict())


def exrec_variants(ec: ECCounts, stages: Dict[str, StageTable], cfg: KGoodConfig,
                   code: CssCode) -> Dict[str, RectangleBounds]:
    """ the full rectangle and the three partial ones missing trailing ECs """
    return {v: exrec_count(ec, stages, cfg, code, a, b, v) for v, (a, b) in VARIANTS.items()}


def _pick(flags: np.ndarray, if_zero: OrderTable, if_one: OrderTable) -> OrderTable:
    """ column x of if_zero where flags[x] == 0, of if_one elsewhere """
    K = max(if_zero.K, if_one.K)
    a, b = if_zero.padded(K).w, if_one.padded(K).w
    return OrderTable(np.where(np.asarray(flags)[None, :] == 0, a, b), if_zero.census, if_zero.kind)


def _gate_bad(ec: ECCounts, n_ec: int, extra_bad: BoundExpr, stage: Optional[StageTable], census, rates,
              den: BoundExpr, cfg: KGoodConfig, kind: str, s: str) -> BoundExpr:
    out = ec.bad[s] * n_ec + extra_bad
    if stage is not None:
        out = out + bad_expr(stage.census, cfg.cnot_stage, cfg.bad_terms, kind, stage.rates)
    return out + over(bad_expr(census, cfg.exrec, cfg.bad_terms, kind, rates), den)


def gate_exrecs(kind: str, ec: ECCounts, verified_zero: ComponentResult, cfg: KGoodConfig, code: CssCode,
                noise: Optional[TransformedNoise] = None) -> RectangleBounds:
    """bounds of a single-block rectangle

    rest: LEC, transversal rest, TEC. meas_z / meas_x: LEC then a transversal measurement that is
    wrong when the decoded outcome flips. prep_zero / prep_plus: verified preparation then TEC.
    """
    if kind not in GATE_EVENTS:
        raise ValueError(f"unknown gate rectangle {kind!r}, expected one of {tuple(GATE_EVENTS)}")
    t0 = time.time()
    flags = decoded_flags(code)
    k = cfg.exrec
    counts, malignant, bad = {}, {}, {}
    zero = Const(0)
    if kind == "rest":
        den = _power(ec.denominator, 2)
        for s, e in zip(SECTORS, GATE_EVENTS[kind]):
            stage = gate_stage(code, kind, s, cfg.cnot_stage, noise)
            table = stage.dense(0)
            c0, c1 = (xor_convolve(table, t, k) for t in ec.tec[s])
            counts[e] = series_dot(ec.lec[s], _pick(flags, c1, c0), k)
            malignant[e] = over(Leaf(counts[e]), den)
            bad[s] = _gate_bad(ec, 2, zero, stage, counts[e].census, ec.rates[s] * 2 + stage.rates, den, cfg,
                               counts[e].kind, s)
    elif kind.startswith("meas"):
        den = ec.denominator
        s = "X" if kind == "meas_z" else "Z"
        e = GATE_EVENTS[kind][0]
        stage = gate_stage(code, kind, s, cfg.cnot_stage, noise)
        table = stage.dense(0)
        flipped = xor_convolve(table, indicator(flags == 1, table.kind), k)
        whole = OrderTable(np.repeat(table.w.sum(axis=1)[:, None], table.size, axis=1), table.census, table.kind)
        counts[e] = series_dot(ec.lec[s], _pick(flags, flipped, whole - flipped), k)
        malignant[e] = over(Leaf(counts[e]), den)
        bad[s] = _gate_bad(ec, 1, zero, stage, counts[e].census, ec.rates[s] + stage.rates, den, cfg,
                           counts[e].kind, s)
        bad[other(s)] = zero
    else:
        s = "X" if kind == "prep_zero" else "Z"
        prep = verified_zero if s == "X" else verified_zero.swapped()
        e = GATE_EVENTS[kind][0]
        den = times(prep.denominator, ec.denominator)
        counts[e] = series_dot(prep.good[s], ec.tec[s][1], k)
        malignant[e] = over(Leaf(counts[e]), den)
        bad[s] = _gate_bad(ec, 1, prep.bad[s], None, counts[e].census, prep.rates[s] + ec.rates[s], den, cfg,
                           counts[e].kind, s)
        bad[other(s)] = zero
    print("%s rectangle, %0.2f sec" % (kind, time.time() - t0))
    return RectangleBounds(kind, counts, malignant, bad, den, cfg.to_dict())