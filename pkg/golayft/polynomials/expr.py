"""
Copyright © 2026 The golayft developers.

Bound expressions: trees of count polynomials under sums, products, ratios, constants and
clamping at one, evaluated exactly at rational noise strengths.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterator, Sequence, Tuple, Union

from .countpoly import CountPoly
from .jet import Interval, Jet, lower, upper


class Inconclusive(ValueError):
    """ a jet evaluation could not decide a non-smooth node on its interval """


def _lift(v) -> "BoundExpr":
    if isinstance(v, BoundExpr):
        return v
    if isinstance(v, CountPoly):
        return Leaf(v)
    if isinstance(v, (int, Fraction)):
        return Const(Fraction(v))
    raise ValueError(f"cannot use {type(v).__name__} in a bound expression")


def _positive(v) -> bool:
    c0 = v.c[0] if isinstance(v, Jet) else v
    return lower(c0) > 0


class BoundExpr:
    """base node; subclasses define value() for Fractions, jets and intervals"""

    def value(self, x):
        raise NotImplementedError

    @property
    def children(self) -> Tuple["BoundExpr", ...]:
        return ()

    @property
    def kind(self) -> str:
        """ "level1", "level2" or "const" """
        kinds = {c.kind for c in self.children} - {"const"}
        if len(kinds) > 1:
            raise ValueError(f"expression mixes {sorted(kinds)} terms")
        return kinds.pop() if kinds else "const"

    def leaves(self) -> Iterator["Leaf"]:
        for c in self.children:
            yield from c.leaves()

    def __add__(self, other):
        return Sum((self, _lift(other)))

    __radd__ = __add__

    def __neg__(self):
        return Scale(Fraction(-1), self)

    def __sub__(self, other):
        return Sum((self, -_lift(other)))

    def __rsub__(self, other):
        return Sum((_lift(other), -self))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scale(Fraction(other), self)
        return Product((self, _lift(other)))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ValueError("division of a bound expression by zero")
            return Scale(1 / Fraction(other), self)
        return Ratio(self, _lift(other))

    def __rtruediv__(self, other):
        return Ratio(_lift(other), self)

    def min1(self) -> "BoundExpr":
        return Min1(self)

    def to_dict(self) -> Dict:
        raise NotImplementedError


class Leaf(BoundExpr):
    def __init__(self, poly: CountPoly):
        self.poly = poly

    @property
    def kind(self) -> str:
        return self.poly.kind

    def leaves(self):
        yield self

    def value(self, x):
        return self.poly.value(x)

    def to_dict(self):
        return {"op": "leaf", "poly": self.poly.text()}

    def __repr__(self):
        return f"Leaf({self.poly.kind}, census={self.poly.census}, degree={self.poly.degree})"


class Const(BoundExpr):
    def __init__(self, c):
        self.c = Fraction(c)

    @property
    def kind(self) -> str:
        return "const"

    def value(self, x):
        return self.c

    def to_dict(self):
        return {"op": "const", "value": str(self.c)}

    def __repr__(self):
        return f"Const({self.c})"


class Sum(BoundExpr):
    def __init__(self, terms: Sequence[BoundExpr]):
        flat = []
        for t in terms:
            flat.extend(t.terms if isinstance(t, Sum) else (_lift(t),))
        if not flat:
            raise ValueError("empty sum")
        self.terms = tuple(flat)

    @property
    def children(self):
        return self.terms

    def value(self, x):
        total = 0
        for t in self.terms:
            total = total + t.value(x)
        return total

    def to_dict(self):
        return {"op": "sum", "terms": [t.to_dict() for t in self.terms]}


class Scale(BoundExpr):
    def __init__(self, factor, term: BoundExpr):
        self.factor = Fraction(factor)
        self.term = _lift(term)

    @property
    def children(self):
        return (self.term,)

    def value(self, x):
        return self.term.value(x) * self.factor

    def to_dict(self):
        return {"op": "scale", "factor": str(self.factor), "term": self.term.to_dict()}


class Product(BoundExpr):
    def __init__(self, terms: Sequence[BoundExpr]):
        flat = []
        for t in terms:
            flat.extend(t.terms if isinstance(t, Product) else (_lift(t),))
        if not flat:
            raise ValueError("empty product")
        self.terms = tuple(flat)

    @property
    def children(self):
        return self.terms

    def value(self, x):
        total = 1
        for t in self.terms:
            total = t.value(x) * total
        return total

    def to_dict(self):
        return {"op": "product", "terms": [t.to_dict() for t in self.terms]}


class Ratio(BoundExpr):
    """ num / den; evaluation is refused where den is not positive """

    def __init__(self, num: BoundExpr, den: BoundExpr):
        self.num = _lift(num)
        self.den = _lift(den)

    @property
    def children(self):
        return (self.num, self.den)

    def value(self, x):
        d = self.den.value(x)
        if not _positive(d):
            raise ValueError(f"ratio denominator is not positive at {_describe(x)}")
        return self.num.value(x) / d

    def to_dict(self):
        return {"op": "ratio", "num": self.num.to_dict(), "den": self.den.to_dict()}


class Min1(BoundExpr):
    """ min(1, term) """

    def __init__(self, term: BoundExpr):
        self.term = _lift(term)

    @property
    def children(self):
        return (self.term,)

    def value(self, x):
        v = self.term.value(x)
        if isinstance(v, Jet):
            c0 = v.c[0]
            if lower(c0) > 1:
                return Jet.constant(Fraction(1), v.order)
            if upper(c0) < 1:
                return v
            raise Inconclusive(f"clamp at one undecided at {_describe(x)}")
        if isinstance(v, Interval):
            return Interval(min(v.lo, 1), min(v.hi, 1))
        return min(Fraction(1), v)

    def to_dict(self):
        return {"op": "min1", "term": self.term.to_dict()}


class Compose(BoundExpr):
    """ a level-two expression evaluated at Gamma = inner(gamma) """

    def __init__(self, outer: BoundExpr, inner: BoundExpr):
        if outer.kind not in ("level2", "const"):
            raise ValueError(f"outer expression must be level two, got {outer.kind}")
        if inner.kind not in ("level1", "const"):
            raise ValueError(f"inner expression must be level one, got {inner.kind}")
        self.outer = outer
        self.inner = inner

    @property
    def kind(self) -> str:
        return "level1"

    @property
    def children(self):
        return (self.outer, self.inner)

    def value(self, x):
        return self.outer.value(self.inner.value(x))

    def to_dict(self):
        return {"op": "compose", "outer": self.outer.to_dict(), "inner": self.inner.to_dict()}


def _describe(x) -> str:
    if isinstance(x, Jet):
        x = x.c[0]
    if isinstance(x, Interval):
        return f"[{float(x.lo):.6g}, {float(x.hi):.6g}]"
    return f"{float(x):.6g}"


def from_dict(d: Dict) -> BoundExpr:
    op = d["op"]
    if op == "leaf":
        return Leaf(CountPoly.from_text(d["poly"]))
    if op == "const":
        return Const(Fraction(d["value"]))
    if op == "sum":
        return Sum([from_dict(t) for t in d["terms"]])
    if op == "scale":
        return Scale(Fraction(d["factor"]), from_dict(d["term"]))
    if op == "product":
        return Product([from_dict(t) for t in d["terms"]])
    if op == "ratio":
        return Ratio(from_dict(d["num"]), from_dict(d["den"]))
    if op == "min1":
        return Min1(from_dict(d["term"]))
    if op == "compose":
        return Compose(from_dict(d["outer"]), from_dict(d["inner"]))
    raise ValueError(f"unknown expression node {op!r}")


def leaf(poly: CountPoly) -> BoundExpr:
    return Leaf(poly)


def const(c: Union[int, Fraction]) -> BoundExpr:
    return Const(c)


def eval_exact(expr: Union[BoundExpr, CountPoly], gamma) -> Fraction:
    """exact value at a rational gamma (or Gamma for level-two expressions)

    Raises ValueError where a ratio denominator is not positive.
    """
    gamma = Fraction(gamma) if not isinstance(gamma, float) else Fraction(repr(gamma))
    if gamma < 0:
        raise ValueError(f"noise strength must be nonnegative, got {gamma}")
    return Fraction(_lift(expr).value(gamma))


def min_degree(expr: BoundExpr) -> float:
    """ lowest power of the variable that can appear in the expanded numerator """
    if isinstance(expr, Leaf):
        k = expr.poly.lowest_order
        return float("inf") if k < 0 else k
    if isinstance(expr, Const):
        return 0 if expr.c else float("inf")
    if isinstance(expr, (Scale, Min1)):
        return min_degree(expr.children[0]) if not (isinstance(expr, Scale) and expr.factor == 0) else float("inf")
    if isinstance(expr, Sum):
        return min(min_degree(t) for t in expr.terms)
    if isinstance(expr, Product):
        return sum(min_degree(t) for t in expr.terms)
    if isinstance(expr, Ratio):
        return min_degree(expr.num) - min_degree(expr.den)
    if isinstance(expr, Compose):
        return min_degree(expr.outer) * max(min_degree(expr.inner), 0)
    raise ValueError(f"unknown node {type(expr).__name__}")
