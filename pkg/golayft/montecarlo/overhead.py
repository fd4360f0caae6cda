"""
Copyright © 2026 The golayft developers.

Acceptance probability and expected resources of a verification network.

Test j consumes the outputs of its two inputs (a preparation or an earlier test) and accepts with
conditional probability a_j given that every earlier test of its subtree accepted. A rejection
aborts the subtree at once, so

    E_cnot(j)  = (E_cnot(in1) + E_cnot(in2) + n) / a_j
    E_qubit(j) = (E_qubit(in1) + E_qubit(in2) + 4 n + waiting rests) / a_j

with a preparation costing its own CNOTs and 8 n qubits.
"""
import math
import time
import warnings
from dataclasses import dataclass, field
from functools import partial
from multiprocessing import Pool
from typing import Dict, List, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from .sampling import FaultSampler
from ..circuits.circuit import Kind
from ..circuits.network import Network
from ..code.css import CssCode
from ..counting.prep import VerificationLayout, split_verification
from ..noise.model import NoiseModel

print = partial(print, flush=True)

PREP_QUBITS = 8

CSV_HEADER = ["p", "circuit", "pr_accept", "pr_accept_stderr", "e_cnots", "e_cnots_stderr", "e_qubits",
              "e_qubits_stderr"]


@dataclass
class OverheadEstimate:
    """ estimates with standard errors from batch means; flagged when some test never accepted """
    pr_accept: float
    pr_accept_stderr: float
    expected_cnots: float
    expected_cnots_stderr: float
    expected_qubits: float
    expected_qubits_stderr: float
    min_cnots: int
    trials: int
    batches: int
    flagged: bool = False
    test_acceptance: List[float] = field(default_factory=list)

    def row(self, p: float, circuit: str) -> List:
        return [p, circuit, self.pr_accept, self.pr_accept_stderr, self.expected_cnots,
                self.expected_cnots_stderr, self.expected_qubits, self.expected_qubits_stderr]

    def to_dict(self) -> Dict:
        return dict(self.__dict__)


def _inputs(layout: VerificationLayout, j: int) -> Tuple[Tuple[str, int], Tuple[str, int]]:
    """ ("prep", block) or ("test", i) for the survivor and checked inputs of test j """
    tests = layout.tests

    def source(b):
        last = [i for i in range(j) if tests[i].survivor == b]
        return ("test", last[-1]) if last else ("prep", b)

    return source(tests[j].survivor), source(tests[j].checked)


def waiting_rests(layout: VerificationLayout, j: int) -> int:
    """ rests of test j spent waiting for the partner block, measurement pauses excluded """
    net, tests = layout.network, layout.tests
    pauses = {(tests[i].survivor, tests[i].step + 1) for i in range(j)}
    return sum(1 for i in layout.stages[j]
               if net.locations[i].kind == Kind.REST and net.locations[i].step < tests[j].step
               and (net.locations[i].block, net.locations[i].step) not in pauses)


@dataclass(frozen=True)
class _Costs:
    prep_cnots: Tuple[int, ...]
    n: int
    waiting: Tuple[int, ...]
    inputs: Tuple
    subtrees: Tuple[Tuple[int, ...], ...]


def _costs(layout: VerificationLayout) -> _Costs:
    net = layout.network
    prep_cnots = tuple(sum(1 for i in layout.preps[b] if net.locations[i].kind == Kind.CNOT)
                       for b in range(net.n_blocks))
    return _Costs(prep_cnots, net.n, tuple(waiting_rests(layout, j) for j in range(len(layout.tests))),
                  tuple(_inputs(layout, j) for j in range(len(layout.tests))),
                  tuple(layout.subtree(j)[1] for j in range(len(layout.tests))))


def _recursion(costs: _Costs, accept: Sequence[float]) -> Tuple[float, float]:
    """ (E_cnot, E_qubit) of the last test from the conditional acceptances """
    if not costs.inputs:
        return float(costs.prep_cnots[0]), float(PREP_QUBITS * costs.n)
    ec: Dict[int, float] = {}
    eq: Dict[int, float] = {}

    def value(src, table, prep):
        kind, i = src
        return table[i] if kind == "test" else prep(i)

    for j, (a, b) in enumerate(costs.inputs):
        c_in = sum(value(s, ec, lambda i: float(costs.prep_cnots[i])) for s in (a, b))
        q_in = sum(value(s, eq, lambda i: float(PREP_QUBITS * costs.n)) for s in (a, b))
        aj = accept[j]
        ec[j] = (c_in + costs.n) / aj if aj > 0 else math.inf
        eq[j] = (q_in + 4 * costs.n + costs.waiting[j]) / aj if aj > 0 else math.inf
    last = len(costs.inputs) - 1
    return ec[last], eq[last]


def overhead_worker(inputs):
    """ counts of one batch: (all tests accept, per test subtree accept, per test subtree-but-j accept) """
    sampler, checks, subtrees, trials, seed, stream = inputs
    t = sampler.sample(trials, seed, stream)
    ok = np.stack([t.accepted([c]) for c in checks]) if checks else np.ones((0, trials), dtype=bool)
    n_all = int(ok.all(axis=0).sum()) if checks else trials
    n_tree, n_prior = [], []
    for j, tests in enumerate(subtrees):
        prior = [i for i in tests if i != j]
        before = ok[prior].all(axis=0) if prior else np.ones(trials, dtype=bool)
        n_prior.append(int(before.sum()))
        n_tree.append(int((before & ok[j]).sum()))
    return n_all, np.array(n_tree), np.array(n_prior)


def _estimate(costs: _Costs, trials: int, n_all: int, n_tree, n_prior) -> Tuple[float, float, float, List[float]]:
    accept = [nt / npr if npr > 0 else 0.0 for nt, npr in zip(n_tree, n_prior)]
    e_cnot, e_qubit = _recursion(costs, accept)
    return n_all / trials, e_cnot, e_qubit, accept


def _batch_sizes(trials: int, batches: int) -> List[int]:
    base, extra = divmod(trials, batches)
    return [base + (1 if b < extra else 0) for b in range(batches)]


def simulate_overhead(network: Network, code: CssCode, noise: NoiseModel, trials: int, seed: int = 0,
                      batches: int = 10, workers: int = 1, progress: bool = True) -> OverheadEstimate:
    """Monte Carlo estimate of Pr[accept], E[CNOTs] and E[qubits]

    Batch b draws from the stream (seed, b) whatever the worker count, so the estimate depends only
    on (seed, trials, batches).
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    batches = max(1, min(int(batches), trials))
    t0 = time.time()
    layout = split_verification(network)
    costs = _costs(layout)
    checks = [t.checked for t in layout.tests]
    sampler = FaultSampler(network, code, noise)
    inputs = [(sampler, checks, costs.subtrees, m, seed, b) for b, m in enumerate(_batch_sizes(trials, batches))]
    if workers > 1:
        with Pool(workers) as p:
            results = list(tqdm(p.imap(overhead_worker, inputs), total=len(inputs), disable=not progress,
                                desc="overhead"))
    else:
        results = [overhead_worker(x) for x in tqdm(inputs, disable=not progress, desc="overhead")]

    n_all = sum(r[0] for r in results)
    n_tree = sum(r[1] for r in results)
    n_prior = sum(r[2] for r in results)
    pr, e_cnot, e_qubit, accept = _estimate(costs, trials, n_all, n_tree, n_prior)
    flagged = any(a == 0 for a in accept)
    if flagged:
        warnings.warn(f"a test of {network.name!r} never accepted in {trials} trials; overhead is infinite")

    pr_err = math.sqrt(pr * (1 - pr) / trials)
    if len(results) > 1 and not flagged:
        per = np.array([_estimate(costs, m, r[0], r[1], r[2])[:3]
                        for (_, _, _, m, _, _), r in zip(inputs, results)])
        finite = np.isfinite(per).all(axis=1)
        per = per[finite]
        err = per.std(axis=0, ddof=1) / math.sqrt(len(per)) if len(per) > 1 else np.full(3, math.nan)
        c_err, q_err = float(err[1]), float(err[2])
    else:
        c_err = q_err = math.nan
    print(f"NOTE: overhead of {network.name or 'network'} from {trials} trials, {time.time() - t0:0.2f} sec")
    return OverheadEstimate(pr, pr_err, e_cnot, c_err, e_qubit, q_err, network.cnot_count, trials, len(results),
                            flagged, accept)


def overhead_curve(network: Network, code: CssCode, ps: Sequence, trials: int, seed: int = 0, batches: int = 10,
                   workers: int = 1, rest_scale: int = 1, name: str = "",
                   progress: bool = True) -> Tuple[List[List], List[OverheadEstimate]]:
    """ CSV rows (CSV_HEADER) of the overhead at every p """
    rows, estimates = [], []
    for p in ps:
        est = simulate_overhead(network, code, NoiseModel.from_p(p, rest_scale), trials, seed, batches, workers,
                                progress)
        rows.append(est.row(float(p), name or network.name))
        estimates.append(est)
    return rows, estimates
