"""
Copyright © 2026 The golayft developers.

Empirical malignant-event frequencies of the CNOT exRec, a soundness check of the counted bounds.

Each trial runs two leading error corrections on clean data blocks and feeds their corrected
outputs into the rectangle (the transversal CNOT and the trailing corrections of the variant).
Trials in which any verification test rejects are discarded. Events use the ideal decoder D on
the leading outputs and on the rectangle outputs.
"""
import math
import time
from dataclasses import dataclass, field
from functools import partial
from multiprocessing import Pool
from typing import Dict, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from .sampling import FaultSampler, Trials, corrected_keys
from ..circuits.network import Network, ec_network, exrec_network
from ..code.css import CssCode
from ..code.tables import class_tables
from ..counting.exrec import CNOT_EVENTS, VARIANTS
from ..noise.model import NoiseModel

print = partial(print, flush=True)

CSV_HEADER = ["p", "variant", "event", "frequency", "stderr", "accepted", "trials"]


@dataclass
class MalignantEstimate:
    variant: str
    trials: int
    accepted: int
    counts: Dict[str, int] = field(default_factory=dict)

    def frequency(self, event: str) -> float:
        if event not in self.counts:
            raise ValueError(f"unknown event {event!r}; simulated {sorted(self.counts)}")
        return self.counts[event] / self.accepted if self.accepted else 0.0

    def stderr(self, event: str) -> float:
        f = self.frequency(event)
        return math.sqrt(f * (1 - f) / self.accepted) if self.accepted else math.nan

    def rows(self, p: float) -> List[List]:
        return [[p, self.variant, e, self.frequency(e), self.stderr(e), self.accepted, self.trials]
                for e in self.counts]

    def to_dict(self) -> Dict:
        return {"variant": self.variant, "trials": self.trials, "accepted": self.accepted,
                "frequency": {e: self.frequency(e) for e in self.counts},
                "stderr": {e: self.stderr(e) for e in self.counts}}


def _syndrome_block(network: Network, sector: str, prefix: str = "") -> int:
    return network.tags[prefix + ("syndrome_x" if sector == "X" else "syndrome_z")][0]


def _corrected(code: CssCode, trials: Trials, network: Network, sector: str, block: int, prefix: str) -> np.ndarray:
    """ output key of block after the correction decoded from its EC syndrome """
    out = trials.field(sector, block, "output")
    syn = trials.field(sector, _syndrome_block(network, sector, prefix), "check")
    return corrected_keys(code, out, syn)


class MalignantSampler:
    """ leading EC samplers for A and B and the rectangle of one variant """

    def __init__(self, code: CssCode, v0: Optional[Network], vp: Optional[Network], noise: NoiseModel,
                 variant: str = "AB"):
        if variant not in VARIANTS:
            raise ValueError(f"variant must be one of {list(VARIANTS)}, got {variant!r}")
        self.code = code
        self.variant = variant
        self.trailing = VARIANTS[variant]
        self.ec = ec_network(code.n, v0, vp)
        self.rect = exrec_network(code.n, v0, vp, leading=False, trailing=self.trailing)
        self.lec = FaultSampler(self.ec, code, noise)
        self.body = FaultSampler(self.rect, code, noise, with_inputs=True)

    def run(self, trials: int, seed: int, stream: int) -> Tuple[int, Dict[str, int]]:
        ct = class_tables(self.code)
        lec_a = self.lec.sample(trials, seed, 3 * stream)
        lec_b = self.lec.sample(trials, seed, 3 * stream + 1)
        body = self.body.sample(trials, seed, 3 * stream + 2)
        ok = lec_a.accepted() & lec_b.accepted() & body.accepted()
        ia, ib = self.rect.block("A"), self.rect.block("B")
        lead = {s: (_corrected(self.code, lec_a, self.ec, s, 0, ""), _corrected(self.code, lec_b, self.ec, s, 0, ""))
                for s in ("X", "Z")}
        shifted = {s: keys ^ self.body.input_effect(s, ia, lead[s][0]) ^ self.body.input_effect(s, ib, lead[s][1])
                   for s, keys in (("X", body.x), ("Z", body.z))}
        view = Trials(shifted["X"], shifted["Z"], body.layout_x, body.layout_z)
        counts = {}
        for sector in ("X", "Z"):
            xa, xb = lead[sector]
            outs = {}
            for name, block, flag in (("TA:", ia, self.trailing[0]), ("TB:", ib, self.trailing[1])):
                if flag:
                    outs[block] = _corrected(self.code, view, self.rect, sector, block, name)
                else:
                    outs[block] = view.field(sector, block, "output")
            da, db = ct.decode_flag(xa), ct.decode_flag(xb)
            oa, ob = ct.decode_flag(outs[ia]), ct.decode_flag(outs[ib])
            # X flips spread from A into B, Z flips from B into A
            if sector == "X":
                first, second = oa ^ da, ob ^ da ^ db
            else:
                first, second = ob ^ db, oa ^ da ^ db
            for event, s, (f0, f1) in CNOT_EVENTS:
                if s == sector:
                    counts[event] = int((ok & (first == f0) & (second == f1)).sum())
        return int(ok.sum()), counts


def malignant_worker(inputs):
    sampler, trials, seed, stream = inputs
    return sampler.run(trials, seed, stream)


def simulate_malignant(code: CssCode, v0: Optional[Network], vp: Optional[Network], noise: NoiseModel, trials: int,
                       seed: int = 0, variant: str = "AB", batches: int = 10, workers: int = 1,
                       progress: bool = True) -> MalignantEstimate:
    """frequencies of the six CNOT malignant events given acceptance

    v0 and vp are the |0> and |+> verification networks; None gives ideal ancillas.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    t0 = time.time()
    sampler = MalignantSampler(code, v0, vp, noise, variant)
    batches = max(1, min(int(batches), trials))
    base, extra = divmod(trials, batches)
    inputs = [(sampler, base + (1 if b < extra else 0), seed, b) for b in range(batches)]
    if workers > 1:
        with Pool(workers) as p:
            results = list(tqdm(p.imap(malignant_worker, inputs), total=len(inputs), disable=not progress,
                                desc="malignant"))
    else:
        results = [malignant_worker(x) for x in tqdm(inputs, disable=not progress, desc="malignant")]
    est = MalignantEstimate(variant, trials, sum(r[0] for r in results),
                            {e: sum(r[1][e] for r in results) for e, _, _ in CNOT_EVENTS})
    print(f"NOTE: malignant events of exRec {variant}, {est.accepted}/{trials} accepted, "
          f"{time.time() - t0:0.2f} sec")
    return est
