"""JSON wire formats for period matrices, bitangent sets, fingerprints and reports.

Complex numbers are always ``[re, im]`` pairs of doubles.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .bitangents import BitangentSet
from .characteristics import Characteristic
from .errors import FormatError, InvalidCharacteristic, WeberQuarticError
from .fingerprint import Fingerprint
from .siegel import SiegelPoint, validate_siegel


def complex_to_json(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(obj) -> complex:
    if (not isinstance(obj, (list, tuple)) or len(obj) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in obj)):
        raise FormatError(f"expected a [re, im] pair, got {obj!r}")
    return complex(float(obj[0]), float(obj[1]))


def _char(text) -> Characteristic:
    if not isinstance(text, str):
        raise FormatError(f"characteristic must be a string, got {text!r}")
    try:
        return Characteristic.parse(text)
    except InvalidCharacteristic as exc:
        raise FormatError(str(exc)) from None


def _require(obj, key, kind):
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"missing field {key!r}")
    if not isinstance(obj[key], kind):
        raise FormatError(f"field {key!r} has the wrong type")
    return obj[key]


def dump_tau(point: SiegelPoint) -> dict:
    return {"genus": point.genus,
            "tau": [[complex_to_json(x) for x in row] for row in point.tau]}


def load_tau(obj) -> SiegelPoint:
    """Parse and validate a period matrix; symmetry and positivity errors propagate."""
    genus = _require(obj, "genus", int)
    rows = _require(obj, "tau", list)
    if len(rows) != genus or any(not isinstance(r, list) or len(r) != genus for r in rows):
        raise FormatError(f"tau must be a {genus} x {genus} matrix")
    tau = np.array([[complex_from_json(x) for x in row] for row in rows])
    return validate_siegel(tau)


def dump_bitangents(b: BitangentSet) -> dict:
    lines = sorted(b, key=lambda line: str(line.char))
    return {"genus": 3,
            "bitangents": [{"char": str(line.char), "coords": [complex_to_json(x) for x in line.coords]}
                           for line in lines]}


def load_bitangents(obj) -> BitangentSet:
    if _require(obj, "genus", int) != 3:
        raise FormatError("bitangent sets are defined in genus 3")
    entries = _require(obj, "bitangents", list)
    coords = {}
    for entry in entries:
        char = _char(_require(entry, "char", str))
        if char in coords:
            raise FormatError(f"duplicate bitangent label {char}")
        vec = _require(entry, "coords", list)
        if len(vec) != 3:
            raise FormatError(f"bitangent {char} must have 3 coordinates")
        coords[char] = np.array([complex_from_json(x) for x in vec])
    try:
        return BitangentSet.from_coords(coords)
    except WeberQuarticError as exc:
        raise FormatError(str(exc)) from None


def dump_fingerprint(f: Fingerprint) -> dict:
    return {"reference": str(f.reference),
            "quotients": [{"char": str(m), "value": complex_to_json(f.quotients[m])}
                          for m in f.characteristics]}


def load_fingerprint(obj) -> Fingerprint:
    ref = _char(_require(obj, "reference", str))
    quotients = {}
    for entry in _require(obj, "quotients", list):
        quotients[_char(_require(entry, "char", str))] = complex_from_json(_require(entry, "value", list))
    try:
        return Fingerprint(ref, quotients)
    except (ValueError, KeyError) as exc:
        raise FormatError(str(exc)) from None


def dump_report(report) -> dict:
    return {"verdict": report.verdict.value,
            "max_deviation": report.max_deviation,
            "tol": report.tol,
            "deviations": [{"char": str(m), "deviation": d}
                           for m, d in sorted(report.deviations.items())]}


def read_json(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from None


def to_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"
