"""
Copyright © 2026 The golayft developers.

Randomized search for strictly fault-tolerant four-ancilla preparation sets.
"""
import warnings
from functools import partial
from typing import Callable, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from .strict import FtReport, strict_ft_check
from ..circuits.circuit import Circuit
from ..circuits.network import four_ancilla_network, two_ancilla_network
from ..circuits.prep import (latin_prep_from_presentation, overlap4_preps, overlap_prep_golay)
from ..code.css import CssCode, golay_code, random_presentation
from ..code.symmetry import random_m23

print = partial(print, flush=True)

STRATEGIES = ("latin-round-permute", "latin-random-presentation", "overlap-m23-permute")


def candidate_generator(strategy: str, code: CssCode,
                        base: Optional[Circuit] = None) -> Callable[[np.random.Generator], Circuit]:
    """ a function drawing one preparation circuit from the strategy's distribution """
    if strategy == "latin-round-permute":
        base = base if base is not None else latin_prep_from_presentation(code, *code.presentation())
        return lambda rng: base.with_rounds_permuted(rng.permutation(base.depth))
    if strategy == "latin-random-presentation":
        return lambda rng: latin_prep_from_presentation(code, *random_presentation(code, rng), rng=rng)
    if strategy == "overlap-m23-permute":
        if code.n != 23:
            raise ValueError("overlap-m23-permute needs the 23-qubit Golay code")
        base = base if base is not None else overlap_prep_golay()
        return lambda rng: base.permuted(random_m23(rng))
    raise ValueError(f"unknown search strategy {strategy!r}, expected one of {STRATEGIES}")


def x_ft_pairs(strategy: str, code: CssCode, trials: int, seed: int, max_order: Optional[int] = None,
               base: Optional[Circuit] = None, progress: bool = True) -> List[Tuple[Circuit, Circuit]]:
    """ pairs whose single X check is strictly fault tolerant against X errors """
    draw = candidate_generator(strategy, code, base)
    rng = np.random.default_rng(seed)
    fixed = base if strategy == "overlap-m23-permute" else None
    found = []
    for _ in tqdm(range(trials), disable=not progress):
        first = fixed if fixed is not None else draw(rng)
        second = draw(rng)
        report = strict_ft_check(two_ancilla_network(first, second), code, max_order, sectors=("X",),
                                 max_witnesses=0, prep_orders=0)
        if report.passed:
            found.append((first, second))
    return found


def random_search(strategy: str, trials: int, seed: int, code: Optional[CssCode] = None,
                  max_order: Optional[int] = None, base: Optional[Circuit] = None,
                  max_results: int = 1, progress: bool = True) -> List[Tuple[Circuit, ...]]:
    """candidate preparation quadruples passing the strict fault-tolerance check

    X-fault-tolerant pairs are found first; pairs of pairs are then checked as four-ancilla
    networks in both sectors. Deterministic for a fixed seed.
    """
    code = code if code is not None else golay_code()
    pairs = x_ft_pairs(strategy, code, trials, seed, max_order, base, progress)
    print(f"NOTE: {len(pairs)} of {trials} candidate pairs pass the X check")
    out = []
    for i in range(len(pairs)):
        for j in range(len(pairs)):
            if i == j or len(out) >= max_results:
                continue
            quad = pairs[i] + pairs[j]
            if strict_ft_check(four_ancilla_network(*quad), code, max_order, max_witnesses=0,
                               prep_orders=0).passed:
                out.append(quad)
    if not out:
        warnings.warn(f"no fault-tolerant quadruple among {len(pairs)} passing pairs")
    return out


def resolve_overlap_convention(base: Optional[Circuit] = None, max_order: Optional[int] = None,
                               search_trials: int = 200, seed: int = 0,
                               progress: bool = True) -> Tuple[str, List[Circuit], FtReport]:
    """Overlap-4 preparations under the first permutation convention that passes the strict check

    Falls back to a random search over code symmetries when neither reading of the permutation
    list passes.
    """
    code = golay_code()
    base = base if base is not None else overlap_prep_golay()
    report = None
    for convention in ("image", "preimage"):
        preps = overlap4_preps(base, convention)
        report = strict_ft_check(four_ancilla_network(*preps, name=f"overlap4-{convention}"), code, max_order)
        if report.passed:
            return convention, preps, report
    print("WARNING: neither permutation convention passes; searching code symmetries instead")
    found = random_search("overlap-m23-permute", search_trials, seed, code, max_order, base, 1, progress)
    if not found:
        return "none", overlap4_preps(base, "image"), report
    preps = list(found[0])
    report = strict_ft_check(four_ancilla_network(*preps, name="overlap4-search"), code, max_order)
    return "search", preps, report
