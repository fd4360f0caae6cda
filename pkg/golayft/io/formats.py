"""
Copyright © 2026 The golayft developers.

Plain-text formats: code matrices ('.'/'1' rows), preparation circuits (one line per round of
"c>t" CNOTs), Latin schedules (one line per control, one target per round), permutation lists and
count polynomials.
"""
from pathlib import Path
from typing import Dict, List, Sequence, Tuple, Union

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

PathLike = Union[str, Path]


def row_to_mask(row: str) -> int:
    m = 0
    for i, c in enumerate(row.strip()):
        if c == "1":
            m |= 1 << i
        elif c not in ".0":
            raise ValueError(f"invalid character {c!r} in code row {row!r}")
    return m


def mask_to_row(mask: int, n: int) -> str:
    return "".join("1" if (mask >> i) & 1 else "." for i in range(n))


def _lines(path: PathLike):
    """ (line number, stripped content) for non-empty, non-comment lines """
    with open(path, "r") as f:
        for i, line in enumerate(f, start=1):
            line = line.split("#", 1)[0].strip()
            if line:
                yield i, line


def read_code_matrix(path: PathLike) -> List[str]:
    rows = []
    for i, line in _lines(path):
        if set(line) - set(".01"):
            raise ValueError(f"{path}:{i}: code rows may only contain '.', '0' and '1'")
        if rows and len(line) != len(rows[0]):
            raise ValueError(f"{path}:{i}: row length {len(line)} differs from {len(rows[0])}")
        rows.append(line)
    if not rows:
        raise ValueError(f"{path}: no code rows found")
    return rows


def read_circuit(path: PathLike) -> Dict:
    """parse a preparation circuit file

    Returns
    -------
    dict with keys n, plus (qubits prepared in |+>), zero (qubits prepared in |0>) and rounds
    (list of lists of (control, target) pairs)
    """
    out = {"n": None, "plus": [], "zero": [], "rounds": []}
    for i, line in _lines(path):
        if line.split()[0] in ("n", "plus", "zero"):
            head, _, rest = line.partition(" ")
        else:
            head, _, rest = line.partition(":")
        head = head.strip()
        try:
            if head == "n":
                out["n"] = int(rest)
            elif head in ("plus", "zero"):
                out[head] = [int(q) for q in rest.split()]
            else:
                pairs = []
                for tok in rest.split():
                    c, t = tok.split(">")
                    pairs.append((int(c), int(t)))
                if int(head) != len(out["rounds"]) + 1:
                    raise ValueError(f"round {head} out of order")
                out["rounds"].append(pairs)
        except ValueError as e:
            raise ValueError(f"{path}:{i}: {e}")
    if out["n"] is None:
        raise ValueError(f"{path}: missing 'n' line")
    return out


def write_circuit(path: PathLike, n: int, plus: Sequence[int], zero: Sequence[int],
                  rounds: Sequence[Sequence[Tuple[int, int]]], comment: str = ""):
    with open(path, "w") as f:
        if comment:
            f.write(f"# {comment}\n")
        f.write(f"n {n}\n")
        f.write("plus " + " ".join(str(q) for q in plus) + "\n")
        f.write("zero " + " ".join(str(q) for q in zero) + "\n")
        for j, pairs in enumerate(rounds, start=1):
            f.write(f"{j}: " + " ".join(f"{c}>{t}" for c, t in pairs) + "\n")


def read_schedule(path: PathLike) -> Dict[int, List[int]]:
    """ Latin schedule, lines 'control: target_round1 target_round2 ...' """
    rows = {}
    for i, line in _lines(path):
        head, sep, rest = line.partition(":")
        if not sep:
            raise ValueError(f"{path}:{i}: expected 'control: targets'")
        try:
            rows[int(head)] = [int(t) for t in rest.split()]
        except ValueError:
            raise ValueError(f"{path}:{i}: non-integer entry in {line!r}")
    if not rows:
        raise ValueError(f"{path}: empty schedule")
    widths = {len(v) for v in rows.values()}
    if len(widths) != 1:
        raise ValueError(f"{path}: schedule rows have different lengths {sorted(widths)}")
    return rows


def write_schedule(path: PathLike, rows: Dict[int, Sequence[int]]):
    with open(path, "w") as f:
        for c in sorted(rows):
            f.write(f"{c}: " + " ".join(str(t) for t in rows[c]) + "\n")


def read_permutations(path: PathLike) -> Dict[str, List[int]]:
    """ named permutations, lines 'name: i0 i1 ...' """
    perms = {}
    for i, line in _lines(path):
        head, sep, rest = line.partition(":")
        if not sep:
            raise ValueError(f"{path}:{i}: expected 'name: images'")
        perms[head.strip()] = [int(v) for v in rest.replace(",", " ").split()]
    return perms


def format_countpoly(kind: str, census: Tuple[int, int, int], coeffs: Dict[int, int]) -> str:
    lines = [f"countpoly {kind} {census[0]} {census[1]} {census[2]}"]
    lines += [f"{k} {coeffs[k]}" for k in sorted(coeffs)]
    return "\n".join(lines) + "\n"


def parse_countpoly(text: str) -> Tuple[str, Tuple[int, int, int], Dict[int, int]]:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    head = lines[0].split()
    if len(head) != 5 or head[0] != "countpoly":
        raise ValueError(f"not a countpoly header: {lines[0]!r}")
    census = (int(head[2]), int(head[3]), int(head[4]))
    coeffs = {}
    for ln in lines[1:]:
        k, c = ln.split()
        coeffs[int(k)] = int(c)
    return head[1], census, coeffs
