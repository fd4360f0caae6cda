"""
Copyright © 2026 The golayft developers.
"""
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional

from .envelope import enclose
from ..noise.model import GAMMA_MAX
from ..polynomials.expr import BoundExpr, _lift
from ..polynomials.monotone import MonotonicityCertificate, certify_monotone

STATUSES = ("ok", "below range", "at boundary")


@dataclass
class PseudoThreshold:
    """ gamma is the largest strength found with p1(gamma) <= 15 gamma; p = 15 gamma """
    gamma: Fraction
    status: str
    certificate: Optional[MonotonicityCertificate] = None
    steps: int = 0
    note: str = ""

    @property
    def p(self) -> Fraction:
        return 15 * self.gamma

    def to_dict(self) -> Dict:
        d = {"gamma": str(self.gamma), "p": str(self.p), "p_float": float(self.p), "status": self.status,
             "steps": self.steps, "note": self.note}
        if self.certificate is not None:
            d["certificate"] = self.certificate.to_dict()
        return d


def _below(expr: BoundExpr, gamma: Fraction) -> bool:
    """ p1(gamma) <= 15 gamma, decided on the upper enclosure """
    return enclose(expr, gamma).hi <= 15 * gamma


def pseudo_threshold(incorrectness: BoundExpr, gamma_max: Fraction = GAMMA_MAX,
                     rel_width: Fraction = Fraction(1, 10 ** 4), certify: bool = True,
                     max_halvings: int = 60) -> PseudoThreshold:
    """largest gamma in (0, gamma_max] with p1(gamma) <= 15 gamma, by exact bisection

    The returned gamma always satisfies the inequality; the bracket is narrowed until its width
    relative to gamma is below rel_width.
    """
    expr = _lift(incorrectness)
    gamma_max = Fraction(gamma_max)
    cert = None
    if certify:
        cert = certify_monotone(expr, (Fraction(0), gamma_max))
        if not cert.ok:
            warnings.warn(f"pseudo-threshold bound is not certified monotone: {cert.note}")
    if _below(expr, gamma_max):
        note = "bound vanishes" if enclose(expr, gamma_max).hi == 0 else "crossing beyond gamma_max"
        return PseudoThreshold(gamma_max, "at boundary", cert, 0, note)
    hi = gamma_max
    lo = gamma_max / 2
    steps = 0
    while not _below(expr, lo):
        hi, lo = lo, lo / 2
        steps += 1
        if steps > max_halvings:
            return PseudoThreshold(Fraction(0), "below range", cert, steps, "no crossing found")
    while (hi - lo) > rel_width * lo:
        mid = (lo + hi) / 2
        if _below(expr, mid):
            lo = mid
        else:
            hi = mid
        steps += 1
    return PseudoThreshold(lo, "ok", cert, steps)
