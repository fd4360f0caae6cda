"""
Copyright © 2026 The golayft developers.
"""
import json
import os
import time
from fractions import Fraction
from functools import partial
from typing import Dict, List, Optional, Tuple

import numpy as np

from .default_ops import default_ops
from .circuits.network import Network, four_ancilla_network
from .circuits.prep import load_circuit, save_circuit
from .code.css import CssCode, load_code
from .code.pauli import popcount_array
from .code.tables import class_tables
from .counting.config import KGoodConfig
from .counting.pipeline import LevelCounts, count_level, verification_network
from .ft.correlated import correlated_errors
from .ft.search import random_search, resolve_overlap_convention
from .ft.strict import FtReport, strict_ft_check
from .io import save
from .montecarlo.malignant import CSV_HEADER as MALIGNANT_HEADER, simulate_malignant
from .montecarlo.overhead import CSV_HEADER as OVERHEAD_HEADER, OverheadEstimate, overhead_curve
from .noise.model import NoiseModel
from .threshold.bound import ThresholdResult, build_transformed, iterate_levels, level1_replay, threshold_lower_bound
from .threshold.envelope import EventBounds, Grid, enclose
from .threshold.level2 import failed_checks, level2_checks, level2_count
from .threshold.pseudo import PseudoThreshold, pseudo_threshold

print = partial(print, flush=True)

COMMANDS = ("code", "prep", "ft", "overhead", "count", "threshold")

# ops that change counted bounds; checkpoints of a run are tied to their hash
COUNTING_KEYS = ("code", "prep_method", "prep_circuit", "overlap_circuit", "overlap_convention", "k_good_profile",
                 "k_good", "corrections", "gamma_max", "gamma_min_ratio", "grid_points", "gamma_ratio", "seed")


def save_path(ops: Dict) -> str:
    path = ops.get("save_path0") or os.path.join(os.getcwd(), "golayft_out")
    os.makedirs(path, exist_ok=True)
    return path


def checkpoints(ops: Dict, network: Optional[Network] = None) -> save.Checkpoints:
    """the checkpoint directory of ops, GOLAYFT_CHECKPOINT_DIR taking precedence

    The settings hash covers the counting ops and, when given, the resolved network.
    """
    root = os.environ.get("GOLAYFT_CHECKPOINT_DIR") or ops.get("checkpoint_dir", "")
    key = {k: ops.get(k) for k in COUNTING_KEYS}
    if network is not None:
        key["network"] = network.fingerprint()
    return save.Checkpoints(root, save.sha256_text(json.dumps(save._jsonable(key), sort_keys=True)))


def build_network(ops: Dict, code: CssCode) -> Network:
    """ the verification network of ops, resolving the overlap permutation convention when asked """
    if ops.get("prep_method") == "overlap4" and ops.get("overlap_convention") == "auto" and code.n == 23:
        base = load_circuit(ops["overlap_circuit"], code) if ops.get("overlap_circuit") else None
        order = min(ops.get("require_ft_order") or code.t, code.t)
        convention, preps, report = resolve_overlap_convention(base, max_order=order,
                                                               seed=ops.get("seed", 0),
                                                               progress=ops.get("progress", True))
        print(f"NOTE: overlap permutations read as {convention} (strict check passed: {report.passed})")
        if convention in ("image", "preimage"):
            ops["overlap_convention"] = convention
        else:
            return four_ancilla_network(*preps, name="overlap4")
    return verification_network(ops, code)


def run_code(ops: Dict) -> Dict:
    """ stabilizers, decoder statistics and reduced-weight histograms of the selected code """
    code = load_code(ops["code"])
    ct = class_tables(code)
    leader_weights = np.bincount(popcount_array(ct.leader), minlength=code.n + 1)
    info = {
        "name": code.name,
        "n": code.n,
        "generators": code.r,
        "distance": code.distance,
        "t": code.t,
        "row_weights": sorted(set(int(w) for w in popcount_array(np.array(code.stab_rows, dtype=np.int64)))),
        "rows": code.row_strings(),
        "syndromes": 1 << code.r,
        "leader_weights": [int(c) for c in np.trim_zeros(leader_weights, "b")],
        "x_classes": [int(c) for c in np.trim_zeros(ct.histogram(True), "b")],
        "z_classes": [int(c) for c in np.trim_zeros(ct.histogram(False), "b")],
        "presentation_sha256": code.presentation_hash(),
    }
    for row in info["rows"]:
        print(row)
    print(f"{code.name}: n={code.n}, {code.r} generators of weight {info['row_weights']}, distance {code.distance}")
    print(f"reduced weights of X classes {info['x_classes']}, of Z classes {info['z_classes']}")
    return info


def run_prep(ops: Dict) -> Dict:
    """ preparation circuits of the selected network and, when asked, a randomized search """
    code = load_code(ops["code"])
    network = build_network(ops, code)
    out = os.path.join(save_path(ops), "circuits")
    os.makedirs(out, exist_ok=True)
    info = {"network": network.name, "census": list(network.census().row()), "preps": {}}
    seen = {}
    for b, prep in enumerate(network.preps):
        if prep is None:
            continue
        key = (prep.plus, prep.zero, prep.rounds)
        stem = os.path.splitext(os.path.basename(prep.name))[0] or "prep"
        fresh = key not in seen
        name = seen.setdefault(key, f"{network.names[b]}_{stem}")
        info["preps"][network.names[b]] = {"file": name + ".txt", "census": list(prep.census().row()),
                                           "depth": prep.depth}
        if fresh:
            table = correlated_errors(prep, code, "X", 2)
            hists = {k: table.histogram(k) for k in (1, 2)}
            classes = [table.n_reachable(k) for k in range(3)]
            info["preps"][network.names[b]].update({"correlated_x": hists, "x_classes": classes})
            print(f"{network.names[b]}: correlated X classes {hists}, reachable with <= 0, 1, 2 faults {classes}")
        save_circuit(os.path.join(out, name + ".txt"), prep, f"{network.name} block {network.names[b]}")
        print("%s: %d CNOTs, depth %d, census %s" % (network.names[b], prep.cnot_count, prep.depth,
                                                     list(prep.census().row())))
    print(f"{network.name}: {network.cnot_count} CNOTs, census {info['census']}")
    if ops.get("search_trials", 0) > 0:
        found = random_search(ops["search_strategy"], ops["search_trials"], ops["seed"], code,
                              ops.get("max_order") or None, max_results=ops.get("search_results", 1),
                              progress=ops.get("progress", True))
        info["search"] = []
        for i, quad in enumerate(found):
            files = []
            for j, c in enumerate(quad):
                path = os.path.join(out, f"search{i}_{j}.txt")
                save_circuit(path, c, f"{ops['search_strategy']} seed {ops['seed']}")
                files.append(os.path.basename(path))
            info["search"].append(files)
    save.save_json(os.path.join(save_path(ops), "prep.json"), info)
    return info


def run_ft(ops: Dict) -> FtReport:
    code = load_code(ops["code"])
    network = build_network(ops, code)
    report = strict_ft_check(network, code, ops.get("max_order") or None, max_witnesses=ops["max_witnesses"],
                             prep_orders=ops["prep_orders"])
    for sector, per in report.max_weight.items():
        print(f"{sector}: largest accepted reduced weight per order {per}")
    if report.passed:
        print(f"NOTE: {network.name} is strictly fault tolerant up to order {report.max_order}")
    else:
        print(f"WARNING: {network.name} fails with {report.n_violations} violating fault sets")
        for w in report.witnesses[:5]:
            print(f"  {w.sector} order {w.order} weight {w.weight}: {w.faults}")
    report.save(os.path.join(save_path(ops), "ft_report.json"))
    return report


def run_overhead(ops: Dict) -> List[OverheadEstimate]:
    code = load_code(ops["code"])
    network = build_network(ops, code)
    rows, estimates = overhead_curve(network, code, ops["p_values"], ops["trials"], ops["seed"], ops["batches"],
                                     ops["workers"], ops["rest_scale"], network.name, ops.get("progress", True))
    for r in rows:
        print("p=%g  Pr[accept]=%0.4f (%0.4f)  E[CNOTs]=%0.1f (%0.1f)  E[qubits]=%0.1f (%0.1f)" % tuple(
            [r[0]] + r[2:]))
    save.save_csv(os.path.join(save_path(ops), "overhead.csv"), OVERHEAD_HEADER, rows)
    return estimates


def curve_gammas(ops: Dict) -> List[Fraction]:
    gmax = Fraction(ops["gamma_max"])
    n = int(ops.get("curve_points", 50))
    return [gmax * i / n for i in range(1, n + 1)]


def malignant_check(ops: Dict, code: CssCode, network: Network, bounds: EventBounds) -> List[List]:
    """ simulated CNOT event frequencies against the counted bounds (frequency + 3 stderr <= bound) """
    rows = []
    gmax = Fraction(ops["gamma_max"])
    for p in ops["p_values"]:
        noise = NoiseModel.from_p(p, ops["rest_scale"])
        if not noise.in_bound_range(gmax):
            continue
        for variant in ("AB", "A-", "-B", "--"):
            est = simulate_malignant(code, network, network.dual(), noise, ops["malignant_trials"], ops["seed"],
                                     variant, ops["batches"], ops["workers"], ops.get("progress", True))
            for row in est.rows(float(p)):
                event = row[2]
                bound = enclose(bounds.members(event)[variant], noise.gamma).hi
                ok = row[3] + 3 * row[4] <= bound
                if not ok:
                    print(f"WARNING: simulated {event} on {variant} exceeds its bound at p={p}")
                rows.append(row + [bound, ok])
    return rows


def require_ft(ops: Dict, network: Network, code: CssCode):
    """ raise when ops["require_ft"] is set and the network fails the strict check

    The check runs at ops["require_ft_order"], capped at the code's t. A weight-4 failure in a checked
    Golay block can be masked by two failures in its checker, so four-ancilla networks pass at order 2.
    """
    if not ops.get("require_ft", True):
        return
    order = min(ops.get("require_ft_order") or code.t, code.t)
    report = strict_ft_check(network, code, order, max_witnesses=1, prep_orders=ops["prep_orders"])
    if not report.passed:
        raise ValueError(f"{network.name} is not strictly fault tolerant up to order {report.max_order} "
                         f"({report.n_violations} violating fault sets); run the ft stage for witnesses "
                         "or set require_ft 0 to count it anyway")
    print(f"NOTE: {network.name} is strictly fault tolerant up to order {report.max_order}")


def run_count(ops: Dict) -> Tuple[EventBounds, LevelCounts, PseudoThreshold]:
    """ level-one counting, per-event bounds and the pseudo-threshold """
    code = load_code(ops["code"])
    network = build_network(ops, code)
    require_ft(ops, network, code)
    cfg = KGoodConfig.from_ops(ops)
    gmax = Fraction(ops["gamma_max"])
    counts = count_level(network, code, cfg, checkpoints=checkpoints(ops, network), gamma_max=gmax,
                         corrections=ops.get("corrections", True))
    bounds = EventBounds.from_level(counts)
    if ops.get("certify", True):
        if bounds.certify((Fraction(0), gmax), ops.get("progress", True)):
            print("NOTE: every level-one bound is certified nondecreasing")
        else:
            print("WARNING: some level-one bounds are not certified nondecreasing")
    pt = pseudo_threshold(counts.incorrectness(), gmax, Fraction(ops["rel_width"]), ops.get("certify", True))
    print("pseudo-threshold p = %0.4e (%s)" % (float(pt.p), pt.status))
    path = save_path(ops)
    save.save_csv(os.path.join(path, "level1_curves.csv"), ["gamma", "p", "event", "variant", "bound"],
                  bounds.values(curve_gammas(ops)))
    save.save_json(os.path.join(path, "pseudo_threshold.json"), pt)
    save.save_json(os.path.join(path, "level1_bounds.json"),
                   {"k_good": cfg.to_dict(), "events": {e: {v: x.to_dict() for v, x in d.items()}
                                                        for e, d in bounds.events.items()}})
    if ops.get("malignant_check"):
        rows = malignant_check(ops, code, network, bounds)
        save.save_csv(os.path.join(path, "malignant.csv"), MALIGNANT_HEADER + ["bound", "ok"], rows)
    save.save_manifest(path, ops, code, [c for c in network.preps if c is not None], name="count_manifest.json")
    return bounds, counts, pt


def run_threshold(ops: Dict) -> ThresholdResult:
    """ level-one counts, the transformed noise, level-two counts and the asymptotic bound """
    code = load_code(ops["code"])
    network = build_network(ops, code)
    cfg = KGoodConfig.from_ops(ops)
    gmax = Fraction(ops["gamma_max"])
    bounds, counts, pt = run_count(ops)

    t1 = time.time()
    print("----------- TRANSFORMED NOISE")
    grid = Grid.from_ops(ops, gmax)
    envelopes = bounds.envelopes(grid)
    transformed, transcript = build_transformed(bounds, grid, int(ops["gamma_ratio"]), envelopes)
    replay = level1_replay(bounds, transformed, grid)
    if not all(replay.values()):
        print(f"WARNING: level-one replay fails for {[e for e, ok in replay.items() if not ok]}")
    print("event weights %s" % transformed.alpha)
    print("----------- Total %0.2f sec" % (time.time() - t1))

    level2, _ = level2_count(transformed, network, code, cfg, checkpoints(ops, network))

    t1 = time.time()
    print("----------- LEVEL-TWO CHECKS")
    g_top = enclose(transformed.Gamma, gmax).hi
    if ops.get("certify", True) and not level2.certify((Fraction(0), g_top), ops.get("progress", True)):
        print("WARNING: some level-two bounds are not certified nondecreasing")
    samples = [enclose(transformed.Gamma, g).hi for g in grid.points[::max(1, grid.n // 10)]]
    checks = level2_checks(level2, samples)
    failed = failed_checks(checks)
    if failed:
        print(f"WARNING: level-two structure or scaling checks fail for {failed}")
    print("----------- Total %0.2f sec" % (time.time() - t1))

    t1 = time.time()
    print("----------- THRESHOLD")
    result = threshold_lower_bound(transformed, level2, gmax, Fraction(ops["rel_width"]), int(ops["check_points"]))
    iteration = iterate_levels(transformed, level2, result.gamma_th, int(ops["levels"])) if result.gamma_th > 0 else {}
    result.transcript.update({"transformed": transcript, "level1_replay": replay, "level2_checks": checks,
                              "iteration": iteration, "pseudo_threshold": pt.to_dict()})
    if failed:
        result.status = "checks failed"
    print("threshold p >= %0.4e (%s), binding event %s" % (float(result.p_th), result.status, result.binding_event))
    print("----------- Total %0.2f sec" % (time.time() - t1))

    path = save_path(ops)
    save.save_json(os.path.join(path, "threshold.json"), result)
    gammas = curve_gammas(ops)
    save.save_csv(os.path.join(path, "envelopes.csv"), ["gamma", "p", "event", "envelope"],
                  [[g, 15 * g, e, enclose(v.bound, g).hi] for g in gammas for e, v in envelopes.items()])
    save.save_manifest(path, ops, code, [c for c in network.preps if c is not None],
                       name="threshold_manifest.json")
    return result


STAGES = {"code": run_code, "prep": run_prep, "ft": run_ft, "overhead": run_overhead, "count": run_count,
          "threshold": run_threshold}


def run_golay(ops: Optional[Dict] = None, command: str = "threshold"):
    """ run one stage of the pipeline with timing banners; returns the stage result """
    ops0 = default_ops()
    ops = {**ops0, **(ops or {})}
    if command not in STAGES:
        raise ValueError(f"unknown command {command!r}, expected one of {COMMANDS}")
    t0 = time.time()
    print("----------- %s" % command.upper())
    result = STAGES[command](ops)
    save.save_manifest(save_path(ops), ops, load_code(ops["code"]), name=f"{command}_run.json")
    print("----------- Total %0.2f sec" % (time.time() - t0))
    return result
