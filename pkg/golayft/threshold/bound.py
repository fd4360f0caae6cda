"""
Copyright © 2026 The golayft developers.

Transformed noise and the asymptotic threshold lower bound.

Gamma = P_j / r + eps, where P_j is the event envelope with the steepest slope at gamma_max and
eps the largest value of the other envelopes at gamma_min. Each event weight alpha_E is the
smallest value making alpha_E * Gamma dominate the event's bounds on the grid. The threshold
lower bound is the largest gamma at which every level-two bound satisfies

    P2_E(Gamma(gamma)) <= alpha_E * Gamma(gamma).
"""
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Dict, List, Optional, Tuple

from .envelope import Envelope, EventBounds, Grid, enclose, lower_values, upper_values
from ..noise.model import GAMMA_MAX, TransformedNoise
from ..polynomials.expr import BoundExpr, Compose, Const, Scale
from ..polynomials.jet import Interval, Jet


def slope(expr: BoundExpr, x: Fraction) -> Fraction:
    """ lower enclosure of the first derivative at x """
    d = expr.value(Jet.variable(Interval(Fraction(x)), 1)).derivative(1)
    return d.lo if isinstance(d, Interval) else Fraction(d)


def build_transformed(bounds: EventBounds, grid: Grid, ratio: int = 2,
                      envelopes: Optional[Dict[str, Envelope]] = None) -> Tuple[TransformedNoise, Dict]:
    """ Gamma and the event weights; the transcript records every choice """
    if ratio < 1:
        raise ValueError(f"Gamma ratio must be at least 1, got {ratio}")
    env = bounds.envelopes(grid) if envelopes is None else envelopes
    slopes = {e: slope(v.bound, grid.gamma_max) for e, v in env.items()}
    steep = max(slopes, key=lambda e: slopes[e])
    eps = max([enclose(v.bound, grid.gamma_min).hi for e, v in env.items() if e != steep] + [Fraction(0)])
    gamma = Scale(Fraction(1, ratio), env[steep].bound) + Const(eps)
    g_low = lower_values(gamma, grid)
    g0 = enclose(gamma, 0).lo
    if g0 <= 0:
        raise ValueError("Gamma vanishes at zero strength; the offset eps must be positive")
    alpha_exact, alpha = {}, {}
    for e in bounds.events:
        members = list(bounds.members(e).values())
        top = upper_values(members, grid)
        need = [top[0] / g0] + [top[i + 1] / g_low[i] for i in range(grid.n)]
        a = max(need + [Fraction(1)])
        alpha_exact[e] = a
        alpha[e] = ceil(a)
    transcript = {
        "grid": grid.to_dict(),
        "ratio": ratio,
        "steepest_event": steep,
        "slopes": {e: str(s) for e, s in slopes.items()},
        "epsilon": str(eps),
        "envelopes": {e: v.to_dict() for e, v in env.items()},
        "alpha_exact": {e: str(a) for e, a in alpha_exact.items()},
        "alpha": alpha,
    }
    return TransformedNoise(gamma, alpha, alpha_exact), transcript


def level1_replay(bounds: EventBounds, transformed: TransformedNoise, grid: Grid) -> Dict[str, bool]:
    """ P1_E <= alpha_E Gamma on the grid for every event """
    g_low = lower_values(transformed.Gamma, grid)
    g0 = enclose(transformed.Gamma, 0).lo
    out = {}
    for e in bounds.events:
        a = transformed.alpha_exact.get(e, transformed.weight(e))
        top = upper_values(list(bounds.members(e).values()), grid)
        out[e] = top[0] <= a * g0 and all(top[i + 1] <= a * g_low[i] for i in range(grid.n))
    return out


def _upper(v) -> Fraction:
    return v.hi if isinstance(v, Interval) else Fraction(v)


def _margins(level2: EventBounds, transformed: TransformedNoise, gamma: Fraction) -> Dict[str, Fraction]:
    """ alpha_E Gamma(gamma) - max_member P2_E(Gamma(gamma)), lower enclosures """
    g = enclose(transformed.Gamma, gamma)
    out = {}
    for e in level2.events:
        top = max(_upper(m.value(g)) for m in level2.members(e).values())
        out[e] = transformed.weight(e) * g.lo - top
    return out


def _holds(level2: EventBounds, transformed: TransformedNoise, gamma: Fraction) -> bool:
    return all(m >= 0 for m in _margins(level2, transformed, gamma).values())


@dataclass
class ThresholdResult:
    gamma_th: Fraction
    status: str
    binding_event: str = ""
    margins: Dict[str, Fraction] = field(default_factory=dict)
    transcript: Dict = field(default_factory=dict)

    @property
    def p_th(self) -> Fraction:
        return 15 * self.gamma_th

    @property
    def certified(self) -> bool:
        return self.status == "ok" and self.gamma_th > 0

    def to_dict(self) -> Dict:
        return {"gamma_th": str(self.gamma_th), "p_th": str(self.p_th), "p_th_float": float(self.p_th),
                "status": self.status, "binding_event": self.binding_event,
                "margins": {e: str(m) for e, m in self.margins.items()}, "transcript": self.transcript}


def threshold_lower_bound(transformed: TransformedNoise, level2: EventBounds, gamma_max: Fraction = GAMMA_MAX,
                          rel_width: Fraction = Fraction(1, 10 ** 4), check_points: int = 100,
                          max_halvings: int = 60) -> ThresholdResult:
    """largest gamma on (0, gamma_max] where every level-two condition holds

    Bisection on the margins; the conditions are then replayed on check_points points of
    (0, gamma_th] and the binding event is the one with the smallest relative margin there.
    """
    gamma_max = Fraction(gamma_max)
    steps = 0
    if _holds(level2, transformed, gamma_max):
        lo, status = gamma_max, "ok"
    else:
        hi, lo = gamma_max, gamma_max / 2
        while not _holds(level2, transformed, lo):
            hi, lo = lo, lo / 2
            steps += 1
            if steps > max_halvings:
                return ThresholdResult(Fraction(0), "no threshold certified",
                                       transcript={"steps": steps, "note": "conditions fail on the whole range"})
        while hi - lo > rel_width * lo:
            mid = (lo + hi) / 2
            if _holds(level2, transformed, mid):
                lo = mid
            else:
                hi = mid
            steps += 1
        status = "ok"
    replay = []
    for i in range(1, check_points + 1):
        g = lo * i / check_points
        m = _margins(level2, transformed, g)
        replay.append({"gamma": str(g), "ok": all(v >= 0 for v in m.values())})
    if not all(r["ok"] for r in replay):
        warnings.warn("threshold conditions fail below the bisection point; reporting the largest replayed point")
        good = [Fraction(r["gamma"]) for r in replay]
        first_bad = next(i for i, r in enumerate(replay) if not r["ok"])
        lo = good[first_bad - 1] if first_bad else Fraction(0)
        status = "ok" if lo > 0 else "no threshold certified"
    margins = _margins(level2, transformed, lo) if lo > 0 else {}
    g = enclose(transformed.Gamma, lo).lo if lo > 0 else Fraction(0)
    rel = {e: m / (transformed.weight(e) * g) for e, m in margins.items()} if g > 0 else {}
    binding = min(rel, key=lambda e: rel[e]) if rel else ""
    transcript = {"steps": steps, "rel_width": str(rel_width), "replay": replay,
                  "alpha": dict(transformed.alpha)}
    return ThresholdResult(lo, status, binding, margins, transcript)


def iterate_levels(transformed: TransformedNoise, level2: EventBounds, gamma: Fraction, levels: int = 3) -> Dict:
    """the fixed-point iteration of concatenation at one strength

    Gamma_1 = Gamma(gamma), eps = max_E P2_E(Gamma_1) / (alpha_E Gamma_1). At each level the event
    bounds P2_E(Gamma_k) must stay below eps^(4k-3) alpha_E Gamma_1, and Gamma_{k+1} is the largest
    P2_E(Gamma_k) / alpha_E.
    """
    g1 = enclose(transformed.Gamma, gamma).hi

    def worst(gk: Fraction) -> Dict[str, Fraction]:
        return {e: max(enclose(m, gk).hi for m in level2.members(e).values()) for e in level2.events}

    first = worst(g1)
    eps = max(v / (transformed.weight(e) * g1) for e, v in first.items()) if g1 > 0 else Fraction(0)
    rows: List[Dict] = []
    gk = g1
    ok = eps < 1
    for k in range(1, levels + 1):
        vals = first if k == 1 else worst(gk)
        limit = eps ** (4 * k - 3)
        level_ok = all(v <= limit * transformed.weight(e) * g1 for e, v in vals.items())
        ok = ok and level_ok
        nxt = max(v / transformed.weight(e) for e, v in vals.items())
        rows.append({"level": k + 1, "Gamma_in": str(gk), "max_event_bound": str(max(vals.values())),
                     "limit_factor": str(limit), "ok": level_ok})
        gk = nxt
    return {"gamma": str(gamma), "Gamma_1": str(g1), "epsilon": str(eps), "ok": ok, "levels": rows}


def compose_bounds(level2: EventBounds, transformed: TransformedNoise) -> Dict[str, Dict[str, BoundExpr]]:
    """ P2_E(Gamma(gamma)) as level-one expressions """
    return {e: {v: Compose(m, transformed.Gamma) for v, m in d.items()} for e, d in level2.events.items()}
