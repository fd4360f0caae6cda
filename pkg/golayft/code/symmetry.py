"""
Copyright © 2026 The golayft developers.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

from .css import CssCode
from .pauli import same_rowspace

# published with qubit q at column 22-q of the code matrix
M23_CYCLES = ((2, 16, 9, 6, 8), (3, 12, 13, 18, 4), (7, 17, 10, 11, 22), (14, 19, 21, 20, 15))


@dataclass(frozen=True)
class QubitPermutation:
    """ image[i] is the destination of qubit i """
    image: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.image) != list(range(len(self.image))):
            raise ValueError(f"not a permutation of 0..{len(self.image) - 1}: {self.image}")

    @classmethod
    def identity(cls, n: int) -> "QubitPermutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "QubitPermutation":
        image = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                image[a] = b
        return cls(tuple(image))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, q: int) -> int:
        return self.image[q]

    def apply(self, mask: int) -> int:
        out = 0
        for i, j in enumerate(self.image):
            if (mask >> i) & 1:
                out |= 1 << j
        return out

    def then(self, other: "QubitPermutation") -> "QubitPermutation":
        """ self first, then other """
        return QubitPermutation(tuple(other.image[j] for j in self.image))

    def inverse(self) -> "QubitPermutation":
        inv = [0] * self.n
        for i, j in enumerate(self.image):
            inv[j] = i
        return QubitPermutation(tuple(inv))

    def __pow__(self, k: int) -> "QubitPermutation":
        out = QubitPermutation.identity(self.n)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            out = out.then(base)
        return out

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.image))


def mirror(n: int) -> QubitPermutation:
    """ q -> n-1-q, between published labels and matrix columns """
    return QubitPermutation(tuple(n - 1 - i for i in range(n)))


def from_published(perm: QubitPermutation) -> QubitPermutation:
    m = mirror(perm.n)
    return m.then(perm).then(m)


def m23_generators() -> Tuple[QubitPermutation, QubitPermutation]:
    """ cyclic shift i -> i+1 and the product of four 5-cycles """
    shift = QubitPermutation(tuple((i + 1) % 23 for i in range(23)))
    return shift, from_published(QubitPermutation.from_cycles(23, M23_CYCLES))


def preserves_rowspace(code: CssCode, perm: QubitPermutation) -> bool:
    if perm.n != code.n:
        raise ValueError(f"permutation on {perm.n} qubits applied to a {code.n}-qubit code")
    return same_rowspace(code.stab_rows, [perm.apply(r) for r in code.stab_rows], code.n)


def random_m23(rng: np.random.Generator, n_letters: int = 40) -> QubitPermutation:
    """ pseudo-random element of M23 as a random word in the two generators """
    gens = m23_generators()
    powers = [[g ** k for k in range(1, 23 if i == 0 else 5)] for i, g in enumerate(gens)]
    out = QubitPermutation.identity(23)
    for i in range(n_letters):
        choices = powers[i % 2]
        out = out.then(choices[int(rng.integers(len(choices)))])
    return out
