"""
Copyright © 2026 The golayft developers.

Monotonicity certificates for bound expressions on an interval of the noise strength.

Methods, tried in order:
  constant      the expression does not depend on the variable
  closed-form   nonnegative level-one series whose lowest order k satisfies k / x_max >= 12 n_c + 8 n_r + 4 n_pm
                (every term then increases), or nonnegative level-two series
  composite     sums, products, ratios, clamps and compositions of certified parts
  subdivision   f'(u) against a bound on f'' over [u, v] from interval jets or the Markov inequality,
                with a Taylor test at the origin when the low derivatives vanish there
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .expr import (BoundExpr, Compose, Const, Inconclusive, Leaf, Min1, Product, Ratio, Scale, Sum, _lift)
from .jet import Interval, Jet, lower

DIRECTIONS = ("nondecreasing", "nonincreasing")


@dataclass
class Piece:
    lo: Fraction
    hi: Fraction
    method: str
    margin: Fraction

    def to_dict(self) -> Dict:
        return {"lo": str(self.lo), "hi": str(self.hi), "method": self.method, "margin": str(self.margin)}


@dataclass
class MonotonicityCertificate:
    """ ok is False when the bounds were inconclusive; pieces record the subdivision """
    interval: Tuple[Fraction, Fraction]
    direction: str
    method: str
    ok: bool
    pieces: List[Piece] = field(default_factory=list)
    parts: List["MonotonicityCertificate"] = field(default_factory=list)
    note: str = ""

    def to_dict(self) -> Dict:
        return {"interval": [str(self.interval[0]), str(self.interval[1])], "direction": self.direction,
                "method": self.method, "ok": self.ok, "note": self.note,
                "pieces": [p.to_dict() for p in self.pieces], "parts": [p.to_dict() for p in self.parts]}

    def replay(self, expr: BoundExpr) -> bool:
        """ recompute the recorded sign conditions """
        expr = _lift(expr)
        if not self.ok:
            return False
        if self.method == "subdivision":
            sign = 1 if self.direction == "nondecreasing" else -1
            for p in self.pieces:
                m = _piece_margin(expr, p.lo, p.hi, sign, p.method)
                if m is None or m < 0:
                    return False
            return True
        redo = certify_monotone(expr, self.interval, self.direction)
        return redo.ok and redo.method == self.method


def _sign(direction: str) -> int:
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}, got {direction!r}")
    return 1 if direction == "nondecreasing" else -1


def _is_constant(expr: BoundExpr) -> bool:
    if isinstance(expr, Const):
        return True
    if isinstance(expr, Leaf):
        p = expr.poly
        return p.is_zero or (p.degree == 0 and (p.kind == "level2" or p.n_locations == 0))
    if isinstance(expr, Compose):
        return _is_constant(expr.outer) or _is_constant(expr.inner)
    return all(_is_constant(c) for c in expr.children)


def _closed_form(expr: BoundExpr, hi: Fraction) -> Optional[str]:
    """ None when every leaf term is provably nondecreasing, otherwise the reason it is not """
    if isinstance(expr, Const):
        return None
    if isinstance(expr, Leaf):
        p = expr.poly
        if not p.nonnegative:
            return "negative coefficients"
        if p.is_zero or p.kind == "level2":
            return None
        k = p.lowest_order
        if k == 0 and p.rate > 0:
            return "constant term under a decreasing prefactor"
        if k * 1 < hi * p.rate:
            return f"lowest order {k} below {float(hi * p.rate):.4g}"
        return None
    if isinstance(expr, Sum):
        for t in expr.terms:
            why = _closed_form(t, hi)
            if why:
                return why
        return None
    if isinstance(expr, Scale):
        return "negative scale" if expr.factor < 0 else _closed_form(expr.term, hi)
    return f"{type(expr).__name__} node"


def _value(expr: BoundExpr, x) -> Fraction:
    return Fraction(expr.value(Fraction(x)))


def _markov_bound(poly, u: Fraction, v: Fraction) -> Optional[Fraction]:
    """bound on max |f''| over [u, v] for a level-one polynomial of degree n

    max |f^(m)| <= 2^m prod_{j<m}(n^2 - j^2) / ((v - u)^m (2m - 1)!!) * max |f|, with max |f| bounded by
    sum |c(k)| t(v)^k since the prefactor lies in (0, 1].
    """
    nc, nr, npm = poly.census
    if poly.kind != "level1" or poly.degree > nc or v <= u:
        return None
    n = poly.n_locations
    t = v / (1 - 12 * v)
    fmax = sum(abs(c) * t ** k for k, c in enumerate(poly.coeffs))
    m = 2
    num = 2 ** m
    for j in range(m):
        num *= max(n * n - j * j, 0)
    return Fraction(num, 3) / (v - u) ** m * fmax


def _piece_margin(expr: BoundExpr, u: Fraction, v: Fraction, sign: int, method: str) -> Optional[Fraction]:
    """lower bound of sign * f' over [u, v] for one method, or None when it cannot be evaluated"""
    try:
        if method == "taylor-origin":
            return _taylor_origin(expr, v, sign)
        g = expr.value(Jet.variable(Interval(u), 1))
        g1 = lower(g.c[1] * sign)
        if method == "markov":
            if not isinstance(expr, Leaf):
                return None
            bound = _markov_bound(expr.poly, u, v)
            if bound is None:
                return None
            return g1 - bound * (v - u)
        h = expr.value(Jet.variable(Interval(u, v), 2))
        lo2 = lower(h.c[2] * (2 * sign))
        return g1 + min(Fraction(0), lo2) * (v - u)
    except (Inconclusive, ValueError, ZeroDivisionError):
        return None


def _taylor_origin(expr: BoundExpr, v: Fraction, sign: int, max_order: int = 8) -> Optional[Fraction]:
    """sign * f' >= 0 on [0, v] from the first nonvanishing derivative of f' at the origin

    f'(x) = j d_j x^(j-1) + (j+1) D x^j with d_j the first nonzero Taylor coefficient (j >= 1) at 0
    and D an enclosure of the next coefficient over [0, v].
    """
    at0 = expr.value(Jet.variable(Fraction(0), max_order))
    j = next((i for i in range(1, max_order + 1) if at0.c[i] != 0), None)
    if j is None or j == max_order:
        return None
    lead = sign * j * Fraction(at0.c[j])
    if lead <= 0:
        return None
    over = expr.value(Jet.variable(Interval(0, v), j + 1))
    rest = lower(over.c[j + 1] * ((j + 1) * sign))
    return lead + min(Fraction(0), rest) * v


def _subdivide(expr: BoundExpr, a: Fraction, b: Fraction, direction: str, max_pieces: int,
               min_width: Fraction) -> MonotonicityCertificate:
    sign = _sign(direction)
    stack = [(a, b)]
    pieces: List[Piece] = []
    tried = 0
    while stack:
        u, v = stack.pop()
        tried += 1
        best = None
        methods = (("taylor-origin",) if u == 0 else ()) + ("markov", "interval")
        for method in methods:
            m = _piece_margin(expr, u, v, sign, method)
            if m is not None and m >= 0:
                best = Piece(u, v, method, m)
                break
        if best is not None:
            pieces.append(best)
            continue
        if tried >= max_pieces or v - u <= min_width:
            return MonotonicityCertificate((a, b), direction, "subdivision", False, pieces,
                                           note=f"inconclusive on [{float(u):.6g}, {float(v):.6g}]")
        mid = (u + v) / 2
        stack.append((mid, v))
        stack.append((u, mid))
    pieces.sort(key=lambda p: p.lo)
    return MonotonicityCertificate((a, b), direction, "subdivision", True, pieces)


def _composite(expr: BoundExpr, a: Fraction, b: Fraction, direction: str,
               **kw) -> Optional[MonotonicityCertificate]:
    sign = _sign(direction)
    flip = DIRECTIONS[1] if sign > 0 else DIRECTIONS[0]
    parts: List[MonotonicityCertificate] = []

    def done(ok: bool, note: str = "") -> MonotonicityCertificate:
        return MonotonicityCertificate((a, b), direction, "composite", ok, parts=parts, note=note)

    if isinstance(expr, Min1):
        parts.append(certify_monotone(expr.term, (a, b), direction, **kw))
        return done(parts[0].ok)
    if isinstance(expr, Scale):
        parts.append(certify_monotone(expr.term, (a, b), direction if expr.factor >= 0 else flip, **kw))
        return done(parts[0].ok)
    if isinstance(expr, Sum):
        for t in expr.terms:
            parts.append(certify_monotone(t, (a, b), direction, **kw))
            if not parts[-1].ok:
                return done(False, "a summand is not certified")
        return done(True)
    if isinstance(expr, Product) and sign > 0:
        for t in expr.terms:
            if _value(t, a) < 0:
                return None
            parts.append(certify_monotone(t, (a, b), direction, **kw))
            if not parts[-1].ok:
                return done(False, "a factor is not certified")
        return done(True, "nonnegative nondecreasing factors")
    if isinstance(expr, Ratio) and sign > 0:
        if _value(expr.num, a) < 0 or _value(expr.den, b) <= 0:
            return None
        parts.append(certify_monotone(expr.num, (a, b), "nondecreasing", **kw))
        parts.append(certify_monotone(expr.den, (a, b), "nonincreasing", **kw))
        return done(parts[0].ok and parts[1].ok, "nonnegative nondecreasing over positive nonincreasing")
    if isinstance(expr, Compose):
        inner = certify_monotone(expr.inner, (a, b), "nondecreasing", **kw)
        parts.append(inner)
        if not inner.ok:
            return done(False, "inner expression is not certified")
        lo, hi = _value(expr.inner, a), _value(expr.inner, b)
        parts.append(certify_monotone(expr.outer, (max(lo, Fraction(0)), hi), direction, **kw))
        return done(parts[1].ok)
    return None


def certify_monotone(expr, interval: Tuple = (Fraction(0), None), direction: str = "nondecreasing",
                     max_pieces: int = 2048, min_width: Optional[Fraction] = None) -> MonotonicityCertificate:
    """certificate that expr is monotone in the given direction on [lo, hi]

    Never raises on inconclusive bounds: the certificate then has ok=False and the caller may retry
    with more pieces.
    """
    from ..noise.model import GAMMA_MAX
    expr = _lift(expr)
    a = Fraction(interval[0])
    b = Fraction(interval[1]) if interval[1] is not None else GAMMA_MAX
    if a < 0 or b < a:
        raise ValueError(f"invalid certification interval [{a}, {b}]")
    sign = _sign(direction)
    min_width = (b - a) / (1 << 24) if min_width is None else Fraction(min_width)
    if _is_constant(expr) or a == b:
        return MonotonicityCertificate((a, b), direction, "constant", True)
    if sign > 0 and _closed_form(expr, b) is None:
        return MonotonicityCertificate((a, b), direction, "closed-form", True)
    kw = dict(max_pieces=max_pieces, min_width=min_width)
    comp = _composite(expr, a, b, direction, **kw)
    if comp is not None and comp.ok:
        return comp
    cert = _subdivide(expr, a, b, direction, max_pieces, min_width)
    if not cert.ok and comp is not None:
        cert.note += "; composite rule: " + (comp.note or "a part is not certified")
    return cert
