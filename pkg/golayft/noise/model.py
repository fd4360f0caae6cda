"""
Copyright © 2026 The golayft developers.

Depolarizing location noise with strength gamma (CNOT failure probability p = 15 gamma) and its
single-sector marginals.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from ..circuits.circuit import Kind
from ..code.pauli import PauliVec

GAMMA_MAX = Fraction(2, 1000) / 15

Rational = Union[int, float, str, Fraction]

# full error choices per kind with their probability in units of gamma
CNOT_CHOICES = tuple(a + b for a in "IXYZ" for b in "IXYZ" if a + b != "II")
FULL_CHOICES = {
    Kind.CNOT: tuple((c, 1) for c in CNOT_CHOICES),
    Kind.REST: (("X", 4), ("Y", 4), ("Z", 4)),
    Kind.PREP_ZERO: (("X", 4),),
    Kind.PREP_PLUS: (("Z", 4),),
    Kind.MEAS_Z: (("X", 4),),
    Kind.MEAS_X: (("Z", 4),),
}


def as_fraction(v: Rational) -> Fraction:
    """ exact value of a number; floats go through their shortest decimal text """
    if isinstance(v, float):
        return Fraction(repr(v))
    return Fraction(v)


def _hits(label: str, sector: str) -> bool:
    letters = "XY" if sector == "X" else "ZY"
    return any(c in letters for c in label)


@dataclass(frozen=True)
class LocationFailureSpec:
    """failure distribution of one location kind

    choices pairs every nontrivial Pauli with its probability in units of gamma; the sector
    marginal groups them by their X (or Z) part.
    """
    kind: int
    choices: Tuple[Tuple[str, int], ...]

    @property
    def total(self) -> int:
        return sum(w for _, w in self.choices)

    def marginal(self, sector: str) -> Dict[str, int]:
        """ probability (units of gamma) of every nontrivial sector part """
        out: Dict[str, int] = {}
        for label, w in self.choices:
            if not _hits(label, sector):
                continue
            part = "".join(("X" if sector == "X" else "Z") if c in ("XY" if sector == "X" else "ZY") else "I"
                           for c in label)
            out[part] = out.get(part, 0) + w
        return out


def failure_spec(kind: int) -> LocationFailureSpec:
    if kind not in FULL_CHOICES:
        raise ValueError(f"unknown location kind {kind!r}")
    return LocationFailureSpec(int(kind), FULL_CHOICES[kind])


def marginal_weight(kind: int, sector: str) -> Tuple[int, Tuple[str, ...]]:
    """(total marginal probability in units of gamma, nontrivial sector errors)

    A CNOT fails in the X sector with 12 gamma spread over XI, IX and XX; a rest with 8 gamma; a
    preparation or measurement with 4 gamma when the sector can occur there and not at all otherwise.
    """
    if sector not in ("X", "Z"):
        raise ValueError(f"sector must be X or Z, got {sector!r}")
    m = failure_spec(kind).marginal(sector)
    return sum(m.values()), tuple(sorted(m))


@dataclass(frozen=True)
class NoiseModel:
    """ depolarizing noise of strength gamma; rest_scale 0 switches rest noise off """
    gamma: Fraction
    rest_scale: int = 1

    def __post_init__(self):
        object.__setattr__(self, "gamma", as_fraction(self.gamma))
        if self.gamma < 0 or 15 * self.gamma > 1:
            raise ValueError(f"gamma {self.gamma} outside [0, 1/15]")
        if self.rest_scale not in (0, 1):
            raise ValueError(f"rest_scale must be 0 or 1, got {self.rest_scale}")

    @classmethod
    def from_p(cls, p: Rational, rest_scale: int = 1) -> "NoiseModel":
        return cls(as_fraction(p) / 15, rest_scale)

    @property
    def p(self) -> Fraction:
        return 15 * self.gamma

    def in_bound_range(self, gamma_max: Fraction = GAMMA_MAX) -> bool:
        return 0 <= self.gamma <= gamma_max

    def failure_probability(self, kind: int) -> Fraction:
        scale = self.rest_scale if kind == Kind.REST else 1
        return failure_spec(kind).total * self.gamma * scale

    def choice_probabilities(self, kind: int) -> List[Tuple[str, Fraction]]:
        scale = self.rest_scale if kind == Kind.REST else 1
        return [(label, w * self.gamma * scale) for label, w in failure_spec(kind).choices]

    def sample_location_fault(self, kind: int, rng: np.random.Generator) -> Optional[PauliVec]:
        """ a nontrivial Pauli on the location's qubits (control first), or None """
        probs = self.choice_probabilities(kind)
        u = rng.random()
        acc = 0.0
        for label, pr in probs:
            acc += float(pr)
            if u < acc:
                return PauliVec.from_label(label)
        return None


@dataclass(frozen=True)
class TransformedNoise:
    """level-one bounds recast as a reference strength Gamma and integer event weights

    Gamma is a bound expression in gamma; alpha maps each malignant event label to the integer
    ceiling of its weight, so every event bound satisfies P_E(gamma) <= alpha[E] * Gamma(gamma)
    on the certified interval.
    """
    Gamma: object
    alpha: Dict[str, int] = field(default_factory=dict)
    alpha_exact: Dict[str, Fraction] = field(default_factory=dict)

    def weight(self, event: str) -> int:
        try:
            return self.alpha[event]
        except KeyError:
            raise ValueError(f"no weight for event {event!r}; known events {sorted(self.alpha)}")

    def location_weights(self, sector: str) -> Dict:
        """level-two fault weights per location kind (and CNOT label) for one sector

        A failed 1-Rec acts as its malignant Pauli; CNOT labels are the events themselves.
        """
        if sector == "X":
            w = {(Kind.CNOT, e): self.weight(e) for e in ("XI", "IX", "XX")}
            w.update({Kind.REST: self.weight("rest_X"), Kind.PREP_ZERO: self.weight("prep_X"),
                      Kind.MEAS_Z: self.weight("meas_X")})
        else:
            w = {(Kind.CNOT, e): self.weight(e) for e in ("ZI", "IZ", "ZZ")}
            w.update({Kind.REST: self.weight("rest_Z"), Kind.PREP_PLUS: self.weight("prep_Z"),
                      Kind.MEAS_X: self.weight("meas_Z")})
        return w
