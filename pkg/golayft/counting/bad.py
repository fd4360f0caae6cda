"""
Copyright © 2026 The golayft developers.

Tail bounds on the probability that a component has more failures than its counted limit.
"""
from __future__ import annotations

from collections import Counter
from typing import List, Optional, Sequence, Tuple

from scipy.special import comb

from ..circuits.propagate import FaultItems
from ..polynomials.countpoly import CountPoly
from ..polynomials.expr import BoundExpr, Const, Leaf

# failure probability of a CNOT, rest and preparation/measurement in units of gamma
LEVEL1_RATES = (12, 8, 4)

Rates = Sequence[Tuple[int, int]]


def census_rates(census) -> Tuple[Tuple[int, int], ...]:
    """ (number of locations, failure weight) groups of a level-one census """
    return tuple((int(n), w) for n, w in zip(census, LEVEL1_RATES))


def item_rates(items: FaultItems) -> Tuple[Tuple[int, int], ...]:
    """ (number of locations, total choice weight) groups of enumerated fault items """
    totals = [int(items.weight[items.start[i]:items.start[i + 1]].sum()) for i in range(items.n_items)]
    return tuple(sorted((n, w) for w, n in Counter(totals).items()))


def elementary(rates: Rates, m: int) -> List[int]:
    """ e_0..e_m of the location weights: coefficients of prod (1 + w x)^n """
    e = [1] + [0] * m
    for n, w in rates:
        if n == 0:
            continue
        f = [comb(n, j, exact=True) * w ** j for j in range(min(n, m) + 1)]
        out = [0] * (m + 1)
        for i, a in enumerate(e):
            if a:
                for j, b in enumerate(f[:m + 1 - i]):
                    out[i + j] += a * b
        e = out
    return e


def _n_locations(rates: Rates) -> int:
    return sum(n for n, _ in rates)


def bad_bound(census=(0, 0, 0), k_good: int = 0, k_max: int = -1, kind: str = "level1",
              rates: Optional[Rates] = None) -> CountPoly:
    """probability bound on more than k_good failures

    With k_max >= 0 the orders k_good < k < k_max are counted term by term under the census
    prefactor. Without it the single union term sum_{|k| = k_good + 1} prod (w gamma)^k bounds the
    whole tail; it is carried as the order-(k_good + 1) coefficient of a census with k_good + 1
    CNOTs, whose prefactor turns t^k back into gamma^k.
    """
    rates = census_rates(census) if rates is None else tuple(rates)
    n = _n_locations(rates)
    level1 = kind == "level1"
    if k_good >= n:
        return CountPoly.zero(census if level1 else (0, 0, 0), kind)
    if k_max < 0:
        m = k_good + 1
        c = elementary(rates, m)[m]
        return CountPoly.from_dict({m: c}, (m, 0, 0) if level1 else (0, 0, 0), kind)
    hi = min(k_max - 1, n)
    e = elementary(rates, max(hi, 0))
    coeffs = {k: e[k] for k in range(k_good + 1, hi + 1)}
    return CountPoly.from_dict(coeffs, census if level1 else (0, 0, 0), kind)


def bad_expr(census=(0, 0, 0), k_good: int = 0, terms: int = 4, kind: str = "level1",
             rates: Optional[Rates] = None) -> BoundExpr:
    """ explicit terms up to k_good + terms under the prefactor, then the union tail """
    rates = census_rates(census) if rates is None else tuple(rates)
    if k_good >= _n_locations(rates):
        return Const(0)
    tail = Leaf(bad_bound(census, k_good + terms if kind == "level1" else k_good, -1, kind, rates))
    if kind != "level1" or terms == 0:
        return tail
    return Leaf(bad_bound(census, k_good, k_good + terms + 1, kind, rates)) + tail
