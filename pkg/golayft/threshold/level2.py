"""
Copyright © 2026 The golayft developers.

Level-two counting. Every location of the level-two circuits is a level-one rectangle; a fault is
one of its malignant events, weighted by the event's integer weight, and the variable is the
transformed strength Gamma. The structure of the resulting bounds is checked directly on the
expression trees.
"""
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .envelope import EventBounds, enclose
from ..circuits.network import Network
from ..code.css import CssCode
from ..counting.config import KGoodConfig
from ..counting.pipeline import LevelCounts, count_level
from ..io.save import Checkpoints
from ..noise.model import TransformedNoise
from ..polynomials.expr import BoundExpr, Const, Leaf, Min1, Product, Ratio, Scale, Sum, min_degree

MIN_ORDER = 4


def level2_count(transformed: TransformedNoise, network: Network, code: CssCode, cfg: KGoodConfig,
                 checkpoints: Optional[Checkpoints] = None) -> Tuple[EventBounds, LevelCounts]:
    """bounds P2_E(Gamma) of the twelve events with the level-one failures as weighted faults

    XZ corrections are never applied at this level.
    """
    counts = count_level(network, code, cfg, noise=transformed, checkpoints=checkpoints, corrections=False)
    return EventBounds.from_level(counts), counts


def _nonnegative(expr: BoundExpr) -> bool:
    if isinstance(expr, Leaf):
        return expr.poly.nonnegative
    if isinstance(expr, Const):
        return expr.c >= 0
    if isinstance(expr, Scale):
        return expr.factor >= 0 and _nonnegative(expr.term)
    if isinstance(expr, (Sum, Product)):
        return all(_nonnegative(t) for t in expr.terms)
    if isinstance(expr, Min1):
        return _nonnegative(expr.term)
    if isinstance(expr, Ratio):
        return _nonnegative(expr.num) and _one_minus_series(expr.den)
    return False


def _one_minus_series(expr: BoundExpr) -> bool:
    """ a positive constant minus nonnegative terms, or a product of such factors """
    if isinstance(expr, Const):
        return expr.c > 0
    if isinstance(expr, Product):
        return all(_one_minus_series(t) for t in expr.terms)
    if isinstance(expr, Sum):
        consts = [t for t in expr.terms if isinstance(t, Const)]
        rest = [t for t in expr.terms if not isinstance(t, Const)]
        if len(consts) != 1 or consts[0].c <= 0:
            return False
        return all(isinstance(t, Scale) and t.factor < 0 and _nonnegative(t.term) for t in rest)
    return False


def structure_check(expr: BoundExpr, min_order: int = MIN_ORDER) -> Dict:
    """ numerator order at least min_order, nonnegative numerators and 1 - series denominators """
    degree = min_degree(expr)
    shape = _nonnegative(expr)
    return {"min_degree": degree, "nonnegative_shape": shape, "ok": bool(shape and degree >= min_order)}


def scaling_check(expr: BoundExpr, gammas: Sequence[Fraction], epsilons=(Fraction(1, 2), Fraction(1, 10)),
                  order: int = MIN_ORDER) -> Dict:
    """ P(eps Gamma) <= eps^order P(Gamma) at every sample Gamma and eps """
    worst = None
    for eps in epsilons:
        for g in gammas:
            lhs = enclose(expr, eps * g).hi
            rhs = eps ** order * enclose(expr, g).lo
            slack = rhs - lhs
            if worst is None or slack < worst[0]:
                worst = (slack, eps, g)
    ok = worst is None or worst[0] >= 0
    return {"ok": ok, "worst_slack": str(worst[0]) if worst else "0",
            "worst_at": [str(worst[1]), str(worst[2])] if worst else []}


def level2_checks(bounds: EventBounds, gammas: Sequence[Fraction]) -> Dict[str, Dict]:
    """ the structure and scaling checks for every member of every event """
    out = {}
    for e, v, expr in bounds.all_members():
        out[f"{e} {v}".strip()] = {"structure": structure_check(expr), "scaling": scaling_check(expr, gammas)}
    return out


def failed_checks(checks: Dict[str, Dict]) -> List[str]:
    return [k for k, c in checks.items() if not (c["structure"]["ok"] and c["scaling"]["ok"])]
