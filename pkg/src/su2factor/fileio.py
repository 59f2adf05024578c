"""Problem and schedule files.

Problem file (JSON)::

    {
      "target": [[[re, im], [re, im]], [[re, im], [re, im]]],
      "generator_a": [x, y, z]   or a 2x2 matrix of [re, im] pairs,
      "generator_b": ...,
      "bound_c": 0.1,
      "tolerance": 1e-9          (optional)
    }

Schedule file: JSON (default) or CSV with ``# key=value`` header lines
followed by ``k,a_k,b_k`` rows. Floats are written so that reading them back
gives the same doubles bit for bit.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .canonicalizer import GeneratorPair
from .core import check_unitary, matrix_to_vec
from .errors import InvalidBound, NotInAlgebra, NotUnitary
from .factorizer import Factor

SCHEDULE_FORMAT = "su2factor-schedule/1"
DEFAULT_TOLERANCE = 1e-9


class FileFormatError(ValueError):
    """Input file is unreadable or does not match the expected layout."""


@dataclass(frozen=True)
class Problem:
    target: np.ndarray
    pair: GeneratorPair
    bound_c: float
    tolerance: float = DEFAULT_TOLERANCE


@dataclass(frozen=True)
class Schedule:
    factors: tuple
    meta: dict


def _is_number(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _complex(x, where):
    if _is_number(x):
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(_is_number(p) for p in x):
        return complex(x[0], x[1])
    raise FileFormatError(f"{where}: expected a [re, im] pair, got {x!r}")


def _matrix(obj, where):
    if not (isinstance(obj, list) and len(obj) == 2 and all(isinstance(r, list) and len(r) == 2 for r in obj)):
        raise FileFormatError(f"{where}: expected a 2x2 matrix of [re, im] pairs")
    return np.array([[_complex(x, where) for x in row] for row in obj], dtype=complex)


def _generator(obj, where):
    if isinstance(obj, list) and len(obj) == 3 and all(_is_number(x) for x in obj):
        v = np.array(obj, dtype=float)
        if not np.all(np.isfinite(v)):
            raise FileFormatError(f"{where}: non-finite component")
        return v
    try:
        return matrix_to_vec(_matrix(obj, where))
    except NotInAlgebra as exc:
        raise FileFormatError(f"{where}: {exc}") from None


def encode_matrix(U):
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(U)]


def _load_json(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def parse_problem(obj) -> Problem:
    if not isinstance(obj, dict):
        raise FileFormatError("problem must be a JSON object")
    for key in ("target", "generator_a", "generator_b", "bound_c"):
        if key not in obj:
            raise FileFormatError(f"problem is missing '{key}'")
    try:
        target = check_unitary(_matrix(obj["target"], "target"))
    except NotUnitary as exc:
        raise FileFormatError(f"target: {exc}") from None
    alpha = _generator(obj["generator_a"], "generator_a")
    beta = _generator(obj["generator_b"], "generator_b")
    bound = obj["bound_c"]
    if not _is_number(bound) or not math.isfinite(bound) or bound <= 0:
        raise InvalidBound(f"bound_c must be a positive number, got {bound!r}")
    tol = obj.get("tolerance", DEFAULT_TOLERANCE)
    if not _is_number(tol) or not tol > 0:
        raise FileFormatError(f"tolerance must be a positive number, got {tol!r}")
    return Problem(target, GeneratorPair(alpha, beta), float(bound), float(tol))


def load_problem(path) -> Problem:
    return parse_problem(_load_json(path))


def problem_to_json(S, alpha, beta, bound_c, tolerance=DEFAULT_TOLERANCE) -> dict:
    return {
        "target": encode_matrix(S),
        "generator_a": [float(x) for x in alpha],
        "generator_b": [float(x) for x in beta],
        "bound_c": float(bound_c),
        "tolerance": float(tolerance),
    }


def atomic_write(path, text: str):
    """Write ``text`` to ``path`` via a temporary file and rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def schedule_meta(seq, report) -> dict:
    return {
        "Q": report.Q,
        "Q_raw": report.Q_raw,
        "residual": float(report.residual),
        "bound_c": float(seq.bound_C),
        "frame_angle": float(report.frame_angle),
        "conjugator": encode_matrix(report.conjugator),
    }


def schedule_to_json(factors, meta) -> str:
    doc = {"format": SCHEDULE_FORMAT, **meta}
    doc["factors"] = [{"k": k, "a": f.a, "b": f.b} for k, f in enumerate(factors, 1)]
    # json writes floats with repr(), the shortest string that round-trips
    return json.dumps(doc, indent=2) + "\n"


def schedule_to_csv(factors, meta) -> str:
    buf = io.StringIO()
    for key in ("Q", "Q_raw", "residual", "bound_c", "frame_angle"):
        v = meta[key]
        buf.write(f"# {key}={v:.17g}\n" if isinstance(v, float) else f"# {key}={v}\n")
    flat = [f"{x:.17g}" for row in meta["conjugator"] for z in row for x in z]
    buf.write(f"# conjugator={' '.join(flat)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "a_k", "b_k"])
    for k, f in enumerate(factors, 1):
        writer.writerow([k, f"{f.a:.17g}", f"{f.b:.17g}"])
    return buf.getvalue()


def _check_indices(ks):
    if list(ks) != list(range(1, len(ks) + 1)):
        raise FileFormatError("schedule indices k must be 1, 2, ..., Q")


def _parse_json_schedule(doc) -> Schedule:
    if not isinstance(doc, dict) or not isinstance(doc.get("factors"), list):
        raise FileFormatError("schedule must be an object with a 'factors' list")
    ks, factors = [], []
    for rec in doc["factors"]:
        if not isinstance(rec, dict) or not all(k in rec for k in ("k", "a", "b")):
            raise FileFormatError(f"bad schedule record {rec!r}")
        if not (_is_number(rec["a"]) and _is_number(rec["b"])):
            raise FileFormatError(f"non-numeric coefficient in record {rec!r}")
        ks.append(rec["k"])
        factors.append(Factor(float(rec["a"]), float(rec["b"])))
    _check_indices(ks)
    meta = {k: v for k, v in doc.items() if k != "factors"}
    return Schedule(tuple(factors), meta)


def _parse_csv_schedule(text) -> Schedule:
    meta, rows = {}, []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            meta[key.strip()] = value.strip()
        elif line.strip():
            rows.append(line)
    records = list(csv.reader(rows))
    if not records or [c.strip() for c in records[0]] != ["k", "a_k", "b_k"]:
        raise FileFormatError("CSV schedule must start with a 'k,a_k,b_k' header")
    ks, factors = [], []
    for rec in records[1:]:
        try:
            k, a, b = rec
            ks.append(int(k))
            factors.append(Factor(float(a), float(b)))
        except ValueError:
            raise FileFormatError(f"bad CSV schedule row {rec!r}") from None
    _check_indices(ks)
    return Schedule(tuple(factors), meta)


def load_schedule(path) -> Schedule:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc.strerror}") from None
    if text.lstrip().startswith("{"):
        try:
            return _parse_json_schedule(json.loads(text))
        except json.JSONDecodeError as exc:
            raise FileFormatError(f"{path}: invalid JSON ({exc.msg})") from None
    return _parse_csv_schedule(text)
