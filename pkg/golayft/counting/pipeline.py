"""
Copyright © 2026 The golayft developers.

The whole counting hierarchy for one level: verified ancillas, error correction, the four CNOT
exRec variants and the gate rectangles, each stored as a checkpoint when a directory is given.
"""
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Dict, Optional

from .config import KGoodConfig
from .ec import ECCounts, ec_component, ec_stages, lec_syndrome_classes
from .exrec import GATE_EVENTS, VARIANTS, RectangleBounds, cnot_stages, exrec_count, gate_exrecs
from .verify import TreeResult, verify_network
from ..circuits.network import Network, four_ancilla_network, twelve_ancilla_network, two_ancilla_network
from ..circuits.prep import load_circuit, overlap4_preps, steane4_preps, steane_latin_prep
from ..code.css import CssCode
from ..io.save import Checkpoints
from ..noise.model import GAMMA_MAX, TransformedNoise
from ..polynomials.expr import BoundExpr

print = partial(print, flush=True)

METHODS = ("overlap4", "steane4", "steane12", "pair")


def verification_network(ops: Dict, code: CssCode) -> Network:
    """the |0> verification network named by ops["prep_method"]

    overlap4 and steane4 are the Golay four-ancilla networks, steane12 the twelve-ancilla tree of one
    Latin preparation, pair a single X test between two copies of ops["prep_circuit"] (or of the
    code's Latin preparation when no circuit file is given).
    """
    method = ops.get("prep_method", "overlap4")
    if method not in METHODS:
        raise ValueError(f"prep_method must be one of {METHODS}, got {method!r}")
    if method == "pair":
        path = ops.get("prep_circuit")
        if path:
            prep = load_circuit(path, code)
        elif code.n == 7:
            prep = steane_latin_prep()
        elif code.n == 23:
            prep = steane4_preps()[0]
        else:
            raise ValueError(f"prep_method pair needs a prep_circuit file for {code.name}")
        return two_ancilla_network(prep, prep)
    if code.n != 23:
        raise ValueError(f"prep_method {method} needs the golay code, got {code.name}")
    if method == "overlap4":
        if ops.get("overlap_convention") == "auto":
            raise ValueError("overlap_convention auto is resolved by run_golay.build_network; pass image or preimage")
        base = load_circuit(ops["overlap_circuit"], code) if ops.get("overlap_circuit") else None
        return four_ancilla_network(overlap4_preps(base, ops.get("overlap_convention", "image")), name="overlap4")
    if method == "steane4":
        return four_ancilla_network(steane4_preps(), name="steane4")
    return twelve_ancilla_network(steane4_preps()[0], name="steane12")


@dataclass(frozen=True, eq=False)
class LevelCounts:
    """ every counted component of one level """
    level: int
    verified: TreeResult
    ec: ECCounts
    exrecs: Dict[str, RectangleBounds]
    gates: Dict[str, RectangleBounds]
    k_good: Dict[str, int] = field(default_factory=dict)

    def rectangle(self, name: str) -> RectangleBounds:
        if name in self.exrecs:
            return self.exrecs[name]
        if name in self.gates:
            return self.gates[name]
        raise ValueError(f"no rectangle {name!r}; counted {sorted(self.exrecs) + sorted(self.gates)}")

    def event_bound(self, event: str, variant: str = "AB") -> BoundExpr:
        """ Pr[event] on the named CNOT variant, or on the gate rectangle owning the event """
        for kind, events in GATE_EVENTS.items():
            if event in events:
                return self.gates[kind].event_bound(event)
        return self.exrecs[variant].event_bound(event)

    def incorrectness(self) -> BoundExpr:
        """ bad plus every malignant event of the full CNOT exRec """
        return self.exrecs["AB"].failure_bound()


def count_level(network: Network, code: CssCode, cfg: KGoodConfig, noise: Optional[TransformedNoise] = None,
                checkpoints: Optional[Checkpoints] = None, gamma_max: Fraction = GAMMA_MAX,
                corrections: bool = True) -> LevelCounts:
    """count the verified ancilla, EC, exRecs and gate rectangles

    noise None counts level one under the depolarizing marginals; a TransformedNoise counts level
    two with integer event weights and no XZ corrections.
    """
    ckpt = checkpoints if checkpoints is not None else Checkpoints("")
    level = 1 if noise is None else 2
    tag = "L%d" % level
    t0 = time.time()

    t1 = time.time()
    print("----------- %s VERIFIED ANCILLA (%s)" % (tag, network.name))
    tree = ckpt.cached(f"{tag}_verified", verify_network, network, code, cfg, noise, corrections, gamma_max)
    v0 = tree.output
    vp = v0.swapped()
    print("----------- Total %0.2f sec" % (time.time() - t1))

    t1 = time.time()
    print("----------- %s ERROR CORRECTION" % tag)
    stages = ckpt.cached(f"{tag}_ec_stages", ec_stages, code, cfg.ec_stage, noise)
    ec = ckpt.cached(f"{tag}_ec", ec_component, v0, vp, stages, cfg, code)
    print("LEC syndromes reached per order: %s" % [lec_syndrome_classes(ec, "X", k, code.r)
                                                   for k in range(ec.lec["X"].K + 1)])
    print("----------- Total %0.2f sec" % (time.time() - t1))

    t1 = time.time()
    print("----------- %s CNOT EXRECS" % tag)
    cnot = ckpt.cached(f"{tag}_cnot_stages", cnot_stages, code, cfg.cnot_stage, noise)
    exrecs = {}
    for v, (a, b) in VARIANTS.items():
        exrecs[v] = ckpt.cached(f"{tag}_exrec_{v}", exrec_count, ec, cnot, cfg, code, a, b, v)
    print("----------- Total %0.2f sec" % (time.time() - t1))

    t1 = time.time()
    print("----------- %s GATE RECTANGLES" % tag)
    gates = {kind: ckpt.cached(f"{tag}_gate_{kind}", gate_exrecs, kind, ec, v0, cfg, code, noise)
             for kind in GATE_EVENTS}
    print("----------- Total %0.2f sec" % (time.time() - t1))
    print("NOTE: level %d counting finished, %0.2f sec" % (level, time.time() - t0))
    return LevelCounts(level, tree, ec, exrecs, gates, cfg.to_dict())