"""
Copyright © 2026 The golayft developers.

CSV, JSON, manifests and resumable checkpoints.
"""
import csv
import glob
import hashlib
import json
import os
import pathlib
from datetime import datetime
from fractions import Fraction
from functools import partial

import numpy as np
from natsort import natsorted

print = partial(print, flush=True)


def _jsonable(v):
    if isinstance(v, (pathlib.PurePath,)):
        return os.fspath(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "to_dict"):
        return _jsonable(v.to_dict())
    return v


def save_json(path, d):
    with open(path, "w") as f:
        json.dump(_jsonable(d), f, indent=1)


def load_json(path):
    with open(path, "r") as f:
        return json.load(f)


def save_csv(path, header, rows):
    """ one row per entry; Fractions are written as decimals with 17 significant digits """
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(header)
        for row in rows:
            w.writerow(["%0.17g" % float(v) if isinstance(v, Fraction) else v for v in row])


def load_csv(path):
    with open(path, "r", newline="") as f:
        return list(csv.DictReader(f))


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def manifest(ops, code=None, circuits=(), seed=None):
    """ everything needed to reproduce an output file """
    m = {
        "date_proc": datetime.now().strftime("%Y-%m-%d %H:%M:%S"),
        "ops": ops,
        "ops_sha256": sha256_text(json.dumps(_jsonable(ops), sort_keys=True)),
        "seed": ops.get("seed") if seed is None else seed,
    }
    if code is not None:
        m["code"] = code.name
        m["code_sha256"] = code.presentation_hash()
    m["circuits"] = {c.name: sha256_text(repr((c.n, c.plus, c.zero, c.rounds))) for c in circuits}
    for key in ("overlap_circuit", "prep_circuit", "code"):
        paths = ops.get(key)
        if not paths:
            continue
        for p in ([paths] if isinstance(paths, (str, pathlib.PurePath)) else paths):
            if os.path.isfile(p):
                m["circuits"][os.fspath(p)] = sha256_file(p)
    return m


def save_manifest(save_path, ops, code=None, circuits=(), seed=None, name="manifest.json"):
    os.makedirs(save_path, exist_ok=True)
    path = os.path.join(save_path, name)
    save_json(path, manifest(ops, code, circuits, seed))
    return path


class Checkpoints:
    """completed pieces of a long run, one .npy file each

    Files are named "<index>_<name>.npy"; an ops hash guards against resuming a run with different
    settings.
    """

    def __init__(self, root, ops_hash: str = ""):
        self.root = os.fspath(root) if root else ""
        self.ops_hash = ops_hash
        if self.root:
            os.makedirs(self.root, exist_ok=True)
            stamp = os.path.join(self.root, "ops_hash.txt")
            if os.path.isfile(stamp):
                with open(stamp, "r") as f:
                    old = f.read().strip()
                if ops_hash and old != ops_hash:
                    raise ValueError(f"checkpoint directory {self.root} belongs to a run with different ops; "
                                     "use a new checkpoint_dir")
            elif ops_hash:
                with open(stamp, "w") as f:
                    f.write(ops_hash)

    @property
    def enabled(self) -> bool:
        return bool(self.root)

    def files(self):
        return natsorted(glob.glob(os.path.join(self.root, "*.npy"))) if self.root else []

    def completed(self):
        return [os.path.basename(f)[:-4].split("_", 1)[1] for f in self.files()]

    def _path(self, name: str) -> str:
        for f in self.files():
            if os.path.basename(f)[:-4].split("_", 1)[1] == name:
                return f
        return os.path.join(self.root, "%d_%s.npy" % (len(self.files()), name))

    def has(self, name: str) -> bool:
        return self.enabled and name in self.completed()

    def load(self, name: str):
        return np.load(self._path(name), allow_pickle=True).item()

    def save(self, name: str, obj):
        if self.enabled:
            box = np.empty((), dtype=object)
            box[()] = obj
            np.save(self._path(name), box, allow_pickle=True)

    def cached(self, name: str, compute, *args, **kwargs):
        """ the stored piece if present, otherwise compute and store it """
        if self.has(name):
            print("NOTE: resuming %s from %s" % (name, self.root))
            return self.load(name)
        obj = compute(*args, **kwargs)
        self.save(name, obj)
        return obj
