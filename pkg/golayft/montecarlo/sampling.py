"""
Copyright © 2026 The golayft developers.

Pauli-frame sampling of a network. Every full Pauli choice of every location has a precomputed
linear effect on the packed X-sector and Z-sector fields (check outcomes and output blocks), so a
trial is the XOR of the effects of its faults. Faulty locations are drawn by geometric skipping
within groups of equal failure probability.
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from numba import njit

from ..circuits.network import Network
from ..circuits.propagate import Effects, Field, fault_effects
from ..code.css import CssCode
from ..code.tables import class_tables
from ..noise.model import NoiseModel, failure_spec


@njit(cache=True)
def _sample_kernel(n_trials, seed, gstart, gprob, order, cstart, ex, ez, kx, kz):
    np.random.seed(seed)
    nfx = ex.shape[1]
    nfz = ez.shape[1]
    for t in range(n_trials):
        for g in range(gprob.shape[0]):
            q = gprob[g]
            if q <= 0.0:
                continue
            n = gstart[g + 1] - gstart[g]
            pos = -1
            while True:
                pos += np.random.geometric(q) if q < 1.0 else 1
                if pos >= n:
                    break
                i = order[gstart[g] + pos]
                c = cstart[i] + np.random.randint(0, cstart[i + 1] - cstart[i])
                for f in range(nfx):
                    kx[t, f] ^= ex[c, f]
                for f in range(nfz):
                    kz[t, f] ^= ez[c, f]


def stream_seed(seed: int, stream: int) -> int:
    """ the numba seed of one independent stream """
    return int(np.random.SeedSequence([int(seed), int(stream)]).generate_state(1)[0])


def key_basis(code: CssCode) -> np.ndarray:
    """ an error mask for every key bit: key(basis[j]) = 1 << j """
    ct = class_tables(code)
    rows = [(int(ct.key_col[q]), 1 << q) for q in range(code.n)]
    basis = {}
    for key, mask in rows:
        for bit, (bkey, bmask) in basis.items():
            if (key >> bit) & 1:
                key, mask = key ^ bkey, mask ^ bmask
        if key:
            bit = key.bit_length() - 1
            for b2 in list(basis):
                if (basis[b2][0] >> bit) & 1:
                    basis[b2] = (basis[b2][0] ^ key, basis[b2][1] ^ mask)
            basis[bit] = (key, mask)
    if len(basis) != code.r + 1:
        raise ValueError(f"single-qubit errors of {code.name} do not span every key bit")
    return np.array([basis[j][1] for j in range(code.r + 1)], dtype=np.int64)


@dataclass(frozen=True, eq=False)
class Trials:
    """ sampled field keys: x[t, f] over layout_x, z[t, f] over layout_z """
    x: np.ndarray
    z: np.ndarray
    layout_x: Tuple[Field, ...]
    layout_z: Tuple[Field, ...]

    @property
    def n(self) -> int:
        return self.x.shape[0]

    def accepted(self, checks: Optional[List[int]] = None) -> np.ndarray:
        """ trials passing every test (or the listed check blocks) """
        ok = np.ones(self.n, dtype=bool)
        for keys, layout in ((self.x, self.layout_x), (self.z, self.layout_z)):
            for j, f in enumerate(layout):
                if f.role == "check" and f.accept and (checks is None or f.block in checks):
                    ok &= (keys[:, j] & f.accept) == 0
        return ok

    def field(self, sector: str, block: int, role: str) -> np.ndarray:
        layout = self.layout_x if sector == "X" else self.layout_z
        keys = self.x if sector == "X" else self.z
        for j, f in enumerate(layout):
            if f.block == block and f.role == role:
                return keys[:, j]
        raise ValueError(f"no {role} field for block {block} in sector {sector}")


class FaultSampler:
    """samples trials of a network under full depolarizing noise

    With inputs, input blocks receive externally supplied keys through input_effect.
    """

    def __init__(self, network: Network, code: CssCode, noise: NoiseModel, with_inputs: bool = False):
        self.network = network
        self.code = code
        self.noise = noise
        self.effects: Dict[str, Effects] = {s: fault_effects(network, code, s, with_inputs) for s in ("X", "Z")}
        ex, ez, cstart, probs = [], [], [0], []
        fx = self.effects["X"].fields.shape[1]
        fz = self.effects["Z"].fields.shape[1]
        for i, loc in enumerate(network.locations):
            spec = failure_spec(loc.kind)
            for label, _ in spec.choices:
                ex.append(self._effect("X", i, label, fx))
                ez.append(self._effect("Z", i, label, fz))
            cstart.append(len(ex))
            probs.append(float(noise.failure_probability(loc.kind)))
        self.ex = np.array(ex, dtype=np.int64).reshape(-1, fx)
        self.ez = np.array(ez, dtype=np.int64).reshape(-1, fz)
        self.cstart = np.array(cstart, dtype=np.int64)
        probs = np.array(probs)
        self.order = np.argsort(probs, kind="stable").astype(np.int64)
        values, first = np.unique(probs[self.order], return_index=True)
        self.gprob = values.astype(np.float64)
        self.gstart = np.append(first, len(probs)).astype(np.int64)
        self._basis = key_basis(code) if with_inputs else None

    def _effect(self, sector: str, i: int, label: str, nf: int) -> np.ndarray:
        eff = self.effects[sector]
        letters = "XY" if sector == "X" else "ZY"
        out = np.zeros(nf, dtype=np.int64)
        for slot, c in enumerate(label):
            if c in letters and (i, slot) in eff.rows:
                out ^= eff.fields[eff.rows[(i, slot)]]
        return out

    @property
    def layout(self) -> Dict[str, Tuple[Field, ...]]:
        return {s: e.layout for s, e in self.effects.items()}

    def sample(self, n_trials: int, seed: int = 0, stream: int = 0) -> Trials:
        if n_trials < 1:
            raise ValueError(f"trials must be at least 1, got {n_trials}")
        kx = np.zeros((n_trials, self.ex.shape[1]), dtype=np.int64)
        kz = np.zeros((n_trials, self.ez.shape[1]), dtype=np.int64)
        _sample_kernel(n_trials, stream_seed(seed, stream), self.gstart, self.gprob, self.order, self.cstart,
                       self.ex, self.ez, kx, kz)
        return Trials(kx, kz, self.effects["X"].layout, self.effects["Z"].layout)

    def input_effect(self, sector: str, block: int, keys: np.ndarray) -> np.ndarray:
        """ field keys produced by the class keys entering on an input block, one row per trial """
        if self._basis is None:
            raise ValueError("sampler was built without inputs")
        eff = self.effects[sector]
        keys = np.asarray(keys, dtype=np.int64)
        out = np.zeros((len(keys), eff.fields.shape[1]), dtype=np.int64)
        for bit, mask in enumerate(self._basis):
            row = np.zeros(eff.fields.shape[1], dtype=np.int64)
            for q in range(self.code.n):
                if (int(mask) >> q) & 1:
                    row ^= eff.fields[eff.rows[(-1 - block, q)]]
            out ^= ((keys >> bit) & 1)[:, None] * row[None, :]
        return out


def corrected_keys(code: CssCode, data: np.ndarray, syndrome_source: np.ndarray) -> np.ndarray:
    """ data keys after the leader correction of the syndrome read from syndrome_source """
    ct = class_tables(code)
    return data ^ ct.leader_keys()[syndrome_source & ct.syn_mask]
