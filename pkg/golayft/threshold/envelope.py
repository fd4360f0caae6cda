"""
Copyright © 2026 The golayft developers.

Per-event bounds and grid envelopes.

A bound P* dominates a set of nondecreasing bounds on [gamma_min, gamma_max] when, on the grid
x_n = gamma_min + n * delta,

    P*(x_n) >= P_E(x_{n+1})   for every member E and every n,

and on [0, gamma_min] when P* >= max_E P_E(gamma_min) everywhere.
"""
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from ..counting.exrec import CNOT_EVENTS, EVENTS, GATE_EVENTS, VARIANTS
from ..noise.model import GAMMA_MAX
from ..polynomials.expr import BoundExpr, Const, _lift
from ..polynomials.jet import Interval
from ..polynomials.monotone import MonotonicityCertificate, certify_monotone

CNOT_EVENT_NAMES = tuple(e for e, _, _ in CNOT_EVENTS)


def enclose(expr, x) -> Interval:
    """ rigorous enclosure of expr at x with outward-rounded interval arithmetic """
    v = _lift(expr).value(Interval(Fraction(x)))
    return v if isinstance(v, Interval) else Interval(v)


@dataclass(frozen=True)
class Grid:
    gamma_min: Fraction
    gamma_max: Fraction
    n: int = 1000

    def __post_init__(self):
        if not 0 < self.gamma_min < self.gamma_max:
            raise ValueError(f"grid needs 0 < gamma_min < gamma_max, got {self.gamma_min}, {self.gamma_max}")
        if self.n < 1:
            raise ValueError(f"grid needs at least one step, got n={self.n}")

    @classmethod
    def from_ops(cls, ops: Dict, gamma_max: Optional[Fraction] = None) -> "Grid":
        gmax = Fraction(ops.get("gamma_max", GAMMA_MAX)) if gamma_max is None else Fraction(gamma_max)
        return cls(gmax / int(ops.get("gamma_min_ratio", 10)), gmax, int(ops.get("grid_points", 1000)))

    @property
    def delta(self) -> Fraction:
        return (self.gamma_max - self.gamma_min) / self.n

    @property
    def points(self) -> List[Fraction]:
        return [self.gamma_min + i * self.delta for i in range(self.n + 1)]

    def refined(self) -> "Grid":
        return Grid(self.gamma_min, self.gamma_max, 2 * self.n)

    def to_dict(self) -> Dict:
        return {"gamma_min": str(self.gamma_min), "gamma_max": str(self.gamma_max), "n": self.n}


def upper_values(exprs: Sequence[BoundExpr], grid: Grid, progress: bool = False) -> List[Fraction]:
    """ max over exprs of the upper enclosure at every grid point """
    out = []
    for x in tqdm(grid.points, disable=not progress, desc="grid"):
        out.append(max(enclose(e, x).hi for e in exprs))
    return out


def lower_values(expr: BoundExpr, grid: Grid, progress: bool = False) -> List[Fraction]:
    return [enclose(expr, x).lo for x in tqdm(grid.points, disable=not progress, desc="grid")]


def dominates(bound: BoundExpr, members: Sequence[BoundExpr], grid: Grid) -> bool:
    """ the grid condition and the [0, gamma_min] condition for bound against members """
    top = upper_values(members, grid)
    low = lower_values(bound, grid)
    if enclose(bound, 0).lo < top[0]:
        return False
    return all(low[i] >= top[i + 1] for i in range(grid.n))


@dataclass(eq=False)
class Envelope:
    event: str
    bound: BoundExpr
    base: str
    offset: Fraction

    def to_dict(self) -> Dict:
        return {"event": self.event, "base": self.base, "offset": str(self.offset)}


def envelope(polys: Dict[str, BoundExpr], grid: Grid, event: str = "") -> Envelope:
    """the member largest at gamma_max plus the smallest offset meeting the grid condition

    The offset is at least max_E P_E(gamma_min), which covers [0, gamma_min].
    """
    if not polys:
        raise ValueError("envelope of an empty set")
    names = list(polys)
    at_max = {k: enclose(polys[k], grid.gamma_max).hi for k in names}
    base = max(names, key=lambda k: at_max[k])
    top = upper_values(list(polys.values()), grid)
    low = lower_values(polys[base], grid)
    offset = max([top[0]] + [top[i + 1] - low[i] for i in range(grid.n)] + [Fraction(0)])
    bound = polys[base] if offset == 0 else polys[base] + Const(offset)
    return Envelope(event, bound, base, offset)


@dataclass(eq=False)
class EventBounds:
    """bounds of the twelve malignant events

    events[E] maps the CNOT exRec variants AB, A-, -B, -- to a bound for CNOT events and the single
    key "" to the bound of a gate rectangle event.
    """
    events: Dict[str, Dict[str, BoundExpr]]
    level: int = 1
    certificates: Dict[str, Dict[str, MonotonicityCertificate]] = field(default_factory=dict)

    def __post_init__(self):
        missing = [e for e in EVENTS if e not in self.events]
        if missing:
            raise ValueError(f"event bounds are missing {missing}")

    @classmethod
    def from_level(cls, counts) -> "EventBounds":
        """ per-event bounds from counting.pipeline.LevelCounts """
        events = {e: {v: counts.event_bound(e, v) for v in VARIANTS} for e in CNOT_EVENT_NAMES}
        for kind, names in GATE_EVENTS.items():
            for e in names:
                events[e] = {"": counts.event_bound(e)}
        return cls(events, counts.level)

    def members(self, event: str) -> Dict[str, BoundExpr]:
        try:
            return self.events[event]
        except KeyError:
            raise ValueError(f"unknown event {event!r}; known events {list(self.events)}")

    def all_members(self):
        for e, d in self.events.items():
            for v, expr in d.items():
                yield e, v, expr

    def certify(self, interval: Tuple = (Fraction(0), None), progress: bool = False,
                max_pieces: int = 2048) -> bool:
        """ monotonicity certificates of every member; soft failures are warned about """
        ok = True
        for e, v, expr in tqdm(list(self.all_members()), disable=not progress, desc="certify"):
            cert = certify_monotone(expr, interval, "nondecreasing", max_pieces=max_pieces)
            if not cert.ok:
                cert = certify_monotone(expr, interval, "nondecreasing", max_pieces=4 * max_pieces)
            if not cert.ok:
                warnings.warn(f"monotonicity of {e} {v or 'bound'} not certified: {cert.note}")
                ok = False
            self.certificates.setdefault(e, {})[v] = cert
        return ok

    def envelopes(self, grid: Grid) -> Dict[str, Envelope]:
        """ one dominating bound per event; gate events are their own envelope """
        out = {}
        for e, d in self.events.items():
            if len(d) == 1:
                (v, expr), = d.items()
                out[e] = Envelope(e, expr, v, Fraction(0))
            else:
                out[e] = envelope(d, grid, e)
        return out

    def values(self, gammas: Sequence[Fraction]) -> List[List]:
        """ rows (gamma, p, event, variant, upper value) for CSV output """
        rows = []
        for g in gammas:
            for e, v, expr in self.all_members():
                rows.append([Fraction(g), 15 * Fraction(g), e, v or "-", enclose(expr, g).hi])
        return rows
