"""
Copyright © 2026 The golayft developers.

Fault-order limits of every counted component. A component is good when each of its
sub-components has at most its own number of failures and the total stays within the
component limit; everything else is bounded by a tail.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, fields, replace
from typing import Dict, Optional


@dataclass(frozen=True)
class KGoodConfig:
    """
    prep : failures in one preparation circuit
    xver, xver_stage : X-error verification total and its transversal stage
    k_best : total failures counted jointly in X and Z for the X-verification correction
    zver, zver_stage : Z-error verification total and its transversal stage
    zver_xz : total order of the joint correction applied to Z-verification X counts
    ec, ec_stage : error correction total and each transversal syndrome-extraction stage
    cnot_stage : the transversal gate of an exRec (also the rest and measurement stages)
    exrec : exRec total
    g_split : when both leading corrections have at least this many failures the
        gate stage is limited to g_stage
    bad_terms : explicit terms of a tail bound before the single-term remainder
    """
    prep: int = 4
    xver: int = 6
    xver_stage: int = 4
    k_best: int = 3
    zver: int = 7
    zver_stage: int = 4
    zver_xz: int = 1
    ec: int = 11
    ec_stage: int = 4
    cnot_stage: int = 2
    exrec: int = 25
    g_split: int = 4
    g_stage: int = 1
    bad_terms: int = 4

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"k_good {f.name} must be a nonnegative integer, got {v!r}")
        if self.k_best > self.xver:
            raise ValueError(f"k_best {self.k_best} exceeds the X-verification total {self.xver}")
        if self.zver_xz > self.zver:
            raise ValueError(f"zver_xz {self.zver_xz} exceeds the Z-verification total {self.zver}")

    @classmethod
    def profile(cls, name: str = "full") -> "KGoodConfig":
        if name == "full":
            return cls()
        if name == "desk":
            return cls(prep=3, xver=5, xver_stage=3, k_best=2, zver=5, zver_stage=3, ec=6, ec_stage=3,
                       exrec=10)
        raise ValueError(f"unknown k_good profile {name!r}; use full or desk")

    @classmethod
    def from_ops(cls, ops: Dict) -> "KGoodConfig":
        """ profile ops["k_good_profile"] with the overrides of ops["k_good"] """
        cfg = cls.profile(ops.get("k_good_profile", "full"))
        return cfg.updated(ops.get("k_good") or {})

    def updated(self, overrides: Optional[Dict] = None, **kw) -> "KGoodConfig":
        changes = dict(overrides or {}, **kw)
        known = {f.name for f in fields(self)}
        unknown = sorted(set(changes) - known)
        if unknown:
            raise ValueError(f"unknown k_good keys {unknown}; known keys {sorted(known)}")
        return replace(self, **{k: int(v) for k, v in changes.items()})

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)

    def in_g(self, k1: int, k2: int, k3: int) -> bool:
        """ whether the leading/gate-stage orders lie in the exRec restriction set """
        if k1 + k2 + k3 > self.exrec:
            return False
        return not (k1 >= self.g_split and k2 >= self.g_split and k3 > self.g_stage)
