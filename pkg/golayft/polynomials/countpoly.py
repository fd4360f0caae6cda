"""
Copyright © 2026 The golayft developers.

Count polynomials: exact integer coefficients of a probability bound.

A level-one polynomial with census (n_c, n_r, n_pm) represents

    A(gamma) * sum_k c(k) t^k,   t = gamma / (1 - 12 gamma),
    A(gamma) = (1 - 12 gamma)^n_c (1 - 8 gamma)^n_r (1 - 4 gamma)^n_pm

and a level-two polynomial is the plain series sum_k c(k) Gamma^k.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from ..io import formats

KINDS = ("level1", "level2")


def _trim(coeffs: Sequence[int]) -> Tuple[int, ...]:
    out = [int(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class CountPoly:
    census: Tuple[int, int, int] = (0, 0, 0)
    coeffs: Tuple[int, ...] = (1,)
    kind: str = "level1"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        census = tuple(int(c) for c in self.census)
        if len(census) != 3 or min(census) < 0:
            raise ValueError(f"census must be three nonnegative counts, got {self.census}")
        if self.kind == "level2" and any(census):
            raise ValueError("level-two polynomials carry no prefactor census")
        object.__setattr__(self, "census", census)
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, int], census=(0, 0, 0), kind: str = "level1") -> "CountPoly":
        if any(k < 0 for k in coeffs):
            raise ValueError(f"negative order in {dict(coeffs)}")
        dense = [0] * (max(coeffs, default=-1) + 1)
        for k, c in coeffs.items():
            dense[k] += int(c)
        return cls(census, tuple(dense), kind)

    @classmethod
    def unit(cls, kind: str = "level1") -> "CountPoly":
        return cls((0, 0, 0), (1,), kind)

    @classmethod
    def zero(cls, census=(0, 0, 0), kind: str = "level1") -> "CountPoly":
        return cls(census, (), kind)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lowest_order(self) -> int:
        """ smallest k with c(k) != 0; -1 for the zero polynomial """
        return next((k for k, c in enumerate(self.coeffs) if c), -1)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    @property
    def n_locations(self) -> int:
        return sum(self.census)

    @property
    def rate(self) -> int:
        """ 12 n_c + 8 n_r + 4 n_pm: the prefactor's slope at gamma = 0 """
        nc, nr, npm = self.census
        return 12 * nc + 8 * nr + 4 * npm

    def to_dict(self) -> Dict[int, int]:
        return {k: c for k, c in enumerate(self.coeffs) if c}

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def _check(self, other: "CountPoly"):
        if self.kind != other.kind:
            raise ValueError(f"cannot combine {self.kind} and {other.kind} polynomials")

    def convolve(self, other: "CountPoly", max_order: int = -1) -> "CountPoly":
        """ product of independent components: censuses add, coefficients multiply as series """
        self._check(other)
        n = len(self.coeffs) + len(other.coeffs) - 1
        if max_order >= 0:
            n = min(n, max_order + 1)
        out = [0] * max(n, 0)
        for i, a in enumerate(self.coeffs):
            if not a or i >= n:
                continue
            for j, b in enumerate(other.coeffs[:n - i]):
                out[i + j] += a * b
        census = tuple(x + y for x, y in zip(self.census, other.census))
        return CountPoly(census, tuple(out), self.kind)

    def __add__(self, other: "CountPoly") -> "CountPoly":
        self._check(other)
        if self.census != other.census:
            raise ValueError(f"cannot add polynomials with censuses {self.census} and {other.census}")
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return CountPoly(self.census, tuple(x + y for x, y in zip(a, b)), self.kind)

    def __sub__(self, other: "CountPoly") -> "CountPoly":
        return self + other.scaled(-1)

    def scaled(self, factor: int) -> "CountPoly":
        return CountPoly(self.census, tuple(int(factor) * c for c in self.coeffs), self.kind)

    def truncated(self, max_order: int) -> "CountPoly":
        return CountPoly(self.census, self.coeffs[:max_order + 1], self.kind)

    def orders(self, lo: int, hi: int) -> "CountPoly":
        """ only the coefficients with lo <= k <= hi """
        return CountPoly(self.census, tuple(c if lo <= k <= hi else 0 for k, c in enumerate(self.coeffs)),
                         self.kind)

    def with_census(self, census: Iterable[int]) -> "CountPoly":
        return CountPoly(tuple(census), self.coeffs, self.kind)

    def value(self, x):
        """value at gamma (level one) or at Gamma (level two)

        x may be a Fraction or any number-like object supporting ring operations with integers
        (Taylor jets, intervals).
        """
        if self.kind == "level2":
            series_var, prefactor = x, 1
        else:
            nc, nr, npm = self.census
            one = 1 - 12 * x
            series_var = x / one
            prefactor = one ** nc * (1 - 8 * x) ** nr * (1 - 4 * x) ** npm
        total = 0
        for c in reversed(self.coeffs):
            total = total * series_var + c
        return prefactor * total

    def text(self) -> str:
        return formats.format_countpoly(self.kind, self.census, self.to_dict())

    @classmethod
    def from_text(cls, text: str) -> "CountPoly":
        kind, census, coeffs = formats.parse_countpoly(text)
        return cls.from_dict(coeffs, census, kind)


def convolve(a: CountPoly, b: CountPoly, max_order: int = -1) -> CountPoly:
    return a.convolve(b, max_order)


def poly_sum(polys: Sequence[CountPoly]) -> CountPoly:
    if not polys:
        raise ValueError("empty polynomial sum")
    out = polys[0]
    for p in polys[1:]:
        out = out + p
    return out
