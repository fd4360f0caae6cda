"""
Copyright © 2026 The golayft developers.

Encoded |0> preparation circuits: Latin-rectangle schedules and the overlap construction.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, minimum_spanning_tree

from .circuit import Circuit
from ..code.css import CssCode, golay_code, steane_code
from ..code.pauli import bits_of
from ..code.symmetry import QubitPermutation, from_published, mirror
from ..io import formats

IDLE = -1


@dataclass(frozen=True)
class Schedule:
    """ control_rows[c][j] is the target of control c in round j+1 (IDLE for none) """
    control_rows: Dict[int, Tuple[int, ...]]

    @property
    def controls(self) -> List[int]:
        return sorted(self.control_rows)

    @property
    def depth(self) -> int:
        return max(len(v) for v in self.control_rows.values())

    def validate(self):
        controls = set(self.control_rows)
        for j in range(self.depth):
            targets = [row[j] for row in self.control_rows.values() if j < len(row) and row[j] != IDLE]
            if len(targets) != len(set(targets)):
                raise ValueError(f"round {j + 1} targets a qubit twice: Latin property violated")
            if controls & set(targets):
                raise ValueError(f"round {j + 1} targets a control qubit")
        for c, row in self.control_rows.items():
            used = [t for t in row if t != IDLE]
            if len(used) != len(set(used)):
                raise ValueError(f"control {c} targets a qubit twice")

    def rounds(self) -> List[List[Tuple[int, int]]]:
        out = []
        for j in range(self.depth):
            out.append([(c, row[j]) for c, row in sorted(self.control_rows.items())
                        if j < len(row) and row[j] != IDLE])
        return out

    def mirrored(self, n: int) -> "Schedule":
        m = mirror(n)
        return Schedule({m(c): tuple(m(t) if t != IDLE else IDLE for t in row)
                         for c, row in self.control_rows.items()})


def latin_rectangle_prep(code: CssCode, schedule: Schedule, name: str = "latin") -> Circuit:
    """ controls in |+>, targets in |0>, one CNOT per schedule entry """
    schedule.validate()
    plus = tuple(schedule.controls)
    zero = tuple(q for q in range(code.n) if q not in schedule.control_rows)
    circuit = Circuit(code.n, plus, zero, tuple(tuple(r) for r in schedule.rounds()), name)
    if not circuit.prepares(code, "zero"):
        raise ValueError(f"schedule {name!r} does not prepare encoded |0> of {code.name}")
    return circuit


def load_schedule(path, published: bool = False, n: int = 23) -> Schedule:
    rows = formats.read_schedule(path)
    sched = Schedule({c: tuple(row) for c, row in rows.items()})
    return sched.mirrored(n) if published else sched


@lru_cache(maxsize=None)
def published_schedules() -> Tuple[Schedule, ...]:
    """ the four randomized Latin schedules of the Steane-4 network """
    return tuple(load_schedule(formats.DATA_DIR / f"latin_A{i}.txt", published=True) for i in range(1, 5))


def steane4_preps() -> List[Circuit]:
    return [latin_rectangle_prep(golay_code(), s, f"latin-A{i}") for i, s in enumerate(published_schedules(), 1)]


def steane_latin_prep() -> Circuit:
    return latin_rectangle_prep(steane_code(), load_schedule(formats.DATA_DIR / "steane_latin.txt"), "steane-latin")


def latin_schedule(rows: Sequence[int], pivots: Sequence[int], rng: Optional[np.random.Generator] = None) -> Schedule:
    """Latin schedule for a reduced presentation by bipartite edge colouring

    Edges join each pivot (control) to the other qubits of its row; colours are rounds. The
    number of rounds equals the maximum degree.
    """
    edges = [(p, t) for r, p in zip(rows, pivots) for t in bits_of(r) if t != p]
    if rng is not None:
        edges = [edges[i] for i in rng.permutation(len(edges))]
    degree = defaultdict(int)
    for p, t in edges:
        degree[("c", p)] += 1
        degree[("t", t)] += 1
    ncol = max(degree.values()) if degree else 0
    at = defaultdict(dict)

    def free(v):
        return next(c for c in range(ncol) if c not in at[v])

    for p, t in edges:
        u, v = ("c", p), ("t", t)
        a, b = free(u), free(v)
        if a in at[v]:
            # swap colours a and b along the alternating path leaving v
            path, x, c = [v], v, a
            while c in at[x]:
                x = at[x][c]
                path.append(x)
                c = b if c == a else a
            cols = [a if i % 2 == 0 else b for i in range(len(path) - 1)]
            for (x, y), c in zip(zip(path[:-1], path[1:]), cols):
                del at[x][c], at[y][c]
            for (x, y), c in zip(zip(path[:-1], path[1:]), cols):
                c2 = b if c == a else a
                at[x][c2], at[y][c2] = y, x
        at[u][a], at[v][a] = v, u
    control_rows = {}
    for p in pivots:
        row = [IDLE] * ncol
        for c, v in at[("c", p)].items():
            row[c] = v[1]
        control_rows[p] = tuple(row)
    return Schedule(control_rows)


def latin_prep_from_presentation(code: CssCode, rows: Sequence[int], pivots: Sequence[int],
                                 rng: Optional[np.random.Generator] = None, name: str = "latin") -> Circuit:
    return latin_rectangle_prep(code, latin_schedule(rows, pivots, rng), name)


def _overlap_tree(requirements: Dict[int, frozenset]) -> Dict[int, int]:
    """ parent of every target (-1 for the root) from a minimum spanning tree """
    targets = sorted(requirements)
    m = len(targets)
    w = np.zeros((m + 1, m + 1))
    for i, t in enumerate(targets):
        # root edges: |R_t| control CNOTs
        w[0, i + 1] = 1000 * len(requirements[t]) - 500
        for j in range(i + 1, m):
            s = targets[j]
            cost = 1 + len(requirements[t] ^ requirements[s])
            w[i + 1, j + 1] = 1000 * cost - (i + 1) - (j + 1)
    tree = minimum_spanning_tree(csr_matrix(w))
    _, pred = breadth_first_order(tree, 0, directed=False, return_predecessors=True)
    return {t: (targets[pred[i + 1] - 1] if pred[i + 1] > 0 else -1) for i, t in enumerate(targets)}


def _list_schedule(ops: List[Tuple[int, int]], after: Dict[Tuple[int, int], int],
                   target_ops: Dict[int, List[Tuple[int, int]]], rng: np.random.Generator) -> List[List[Tuple[int, int]]]:
    """greedy rounds; an op listed in `after` waits until every op into that source qubit is done

    Priority is the larger of the remaining load on either qubit and the chain length below the
    target, ties broken at random.
    """
    done_round = {}
    remaining = list(ops)
    children = defaultdict(list)
    for op, s in after.items():
        children[s].append(op[1])

    def tail(t):
        return max((len(target_ops[u]) + tail(u) for u in children[t]), default=0)

    tails = {t: tail(t) for t in target_ops}
    rounds = []
    while remaining:
        load = defaultdict(int)
        for c, t in remaining:
            load[c] += 1
            load[t] += 1
        keys = rng.random(len(remaining))
        order = sorted(range(len(remaining)),
                       key=lambda i: (-max(load[remaining[i][0]], load[remaining[i][1]] + tails[remaining[i][1]]),
                                      keys[i]))
        busy, this = set(), []
        j = len(rounds) + 1
        for i in order:
            c, t = remaining[i]
            if c in busy or t in busy:
                continue
            src = after.get((c, t))
            if src is not None and not all(done_round.get(op, j) < j for op in target_ops[src]):
                continue
            this.append((c, t))
            busy.update((c, t))
        if not this:
            raise ValueError("overlap schedule is stuck: cyclic copy dependencies")
        for op in this:
            done_round[op] = j
        rounds.append(this)
        remaining = [op for op in remaining if op not in done_round]
    return rounds


def overlap_synthesize(code: CssCode, presentation: Optional[Tuple[Sequence[int], Sequence[int]]] = None,
                       tries: int = 200, seed: int = 0, name: str = "overlap") -> Circuit:
    """encoded |0> where targets copy the parity of an already finished target

    Every target t needs the parity of the controls R_t. It either receives one CNOT per control
    or copies a finished target s and receives the controls in R_t ^ R_s. Parents come from a
    minimum spanning tree; rounds from randomized list scheduling, keeping the shallowest result.
    """
    rows, pivots = presentation if presentation is not None else code.presentation()
    requirements = defaultdict(set)
    for r, p in zip(rows, pivots):
        for t in bits_of(r):
            if t != p:
                requirements[t].add(p)
    requirements = {t: frozenset(v) for t, v in requirements.items()}
    parent = _overlap_tree(requirements)
    target_ops, after = {}, {}
    for t, s in parent.items():
        if s < 0:
            target_ops[t] = [(c, t) for c in sorted(requirements[t])]
        else:
            target_ops[t] = [(s, t)] + [(c, t) for c in sorted(requirements[t] ^ requirements[s])]
            after[(s, t)] = s
    ops = [op for t in sorted(target_ops) for op in target_ops[t]]
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(tries):
        rounds = _list_schedule(ops, after, target_ops, rng)
        if best is None or len(rounds) < len(best):
            best = rounds
    plus = tuple(sorted(pivots))
    zero = tuple(q for q in range(code.n) if q not in set(pivots))
    circuit = Circuit(code.n, plus, zero, tuple(tuple(sorted(r)) for r in best), name)
    if not circuit.prepares(code, "zero"):
        raise ValueError(f"overlap synthesis failed to prepare encoded |0> of {code.name}")
    return circuit


@lru_cache(maxsize=None)
def overlap_prep_golay() -> Circuit:
    """the stored overlap circuit on the bundled Golay presentation

    57 CNOTs in 7 rounds; overlap_synthesize builds overlap circuits for other presentations.
    """
    return load_circuit(formats.DATA_DIR / "overlap_golay.txt", golay_code(), "overlap")


def load_circuit(path, code: Optional[CssCode] = None, name: str = "") -> Circuit:
    d = formats.read_circuit(path)
    circuit = Circuit(d["n"], tuple(d["plus"]), tuple(d["zero"]), tuple(tuple(r) for r in d["rounds"]),
                      name or str(path))
    if code is not None and not circuit.prepares(code, "zero"):
        raise ValueError(f"{path}: circuit does not prepare encoded |0> of {code.name}")
    return circuit


def save_circuit(path, circuit: Circuit, comment: str = ""):
    formats.write_circuit(path, circuit.n, circuit.plus, circuit.zero, circuit.rounds, comment)


def overlap_permutations(convention: str = "image") -> List[QubitPermutation]:
    """rearrangements for ancillas 2-4 of the Overlap-4 network

    The published tuples are read either as images (qubit i goes to a[i]) or as preimages.
    """
    if convention not in ("image", "preimage"):
        raise ValueError(f"convention must be 'image' or 'preimage', got {convention!r}")
    perms = formats.read_permutations(formats.DATA_DIR / "overlap_permutations.txt")
    out = []
    for key in ("A2", "A3", "A4"):
        p = from_published(QubitPermutation(tuple(perms[key])))
        out.append(p if convention == "image" else p.inverse())
    return out


def overlap4_preps(base: Optional[Circuit] = None, convention: str = "image") -> List[Circuit]:
    base = overlap_prep_golay() if base is None else base
    return [base] + [base.permuted(p) for p in overlap_permutations(convention)]
