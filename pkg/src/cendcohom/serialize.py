"""JSON file formats.

Rationals are strings ("-3/7", "2"); polynomials in D are lists of
[degree, "p/q"] pairs; module elements are lists of {"key", "poly"} records.
Keys are JSON ints or strings; direct-sum keys (tuples) are written as lists.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .algebra import AlgElem
from .bimodule import BimoduleSpec, ModElem, TableBimodule, builtin_bimodule
from .cochain import Cochain1, SeedData
from .elements import key_order
from .exact import DPoly


class FormatError(ValueError):
    """A file did not match the expected schema."""


def key_to_json(key):
    if isinstance(key, tuple):
        return [key_to_json(k) for k in key]
    return key


def key_from_json(data):
    if isinstance(data, list):
        return tuple(key_from_json(k) for k in data)
    if isinstance(data, (int, str)) and not isinstance(data, bool):
        return data
    raise FormatError(f"bad basis key {data!r}")


def modelem_to_json(v: ModElem) -> list:
    return [{"key": key_to_json(k), "poly": p.to_json()} for k, p in v.sorted_items()]


def modelem_from_json(data) -> ModElem:
    if not isinstance(data, list):
        raise FormatError(f"module element must be a list, got {type(data).__name__}")
    out = ModElem()
    for rec in data:
        try:
            out = out + ModElem({key_from_json(rec["key"]): DPoly.from_json(rec["poly"])})
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad module term {rec!r}: {exc}") from None
    return out


def algelem_to_json(a: AlgElem) -> list:
    return [{"k": k, "poly": p.to_json()} for k, p in a.sorted_items()]


def algelem_from_json(data) -> AlgElem:
    out = AlgElem()
    for rec in data:
        try:
            out = out + AlgElem({rec["k"]: DPoly.from_json(rec["poly"])})
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad algebra term {rec!r}: {exc}") from None
    return out


def cochain1_to_json(tau: Cochain1, upto: int | None = None) -> list:
    vals = tau.materialize(upto)
    return [{"l": l, "value": modelem_to_json(v)} for l, v in sorted(vals.items())]


def cochain1_from_json(data, spec: BimoduleSpec) -> Cochain1:
    if not isinstance(data, list):
        raise FormatError("1-cochain file must be a list of {l, value} records")
    values = {}
    for rec in data:
        try:
            l = rec["l"]
            v = modelem_from_json(rec["value"])
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad 1-cochain record {rec!r}: {exc}") from None
        if not isinstance(l, int) or l < 1:
            raise FormatError(f"1-cochain index must be an int >= 1, got {l!r}")
        _check_keys(v, spec)
        values[l] = values.get(l, ModElem()) + v
    return Cochain1(spec, values)


def seeds_to_json(seeds: SeedData, row0_upto: int | None = None) -> dict:
    upto = row0_upto or seeds.row0_cutoff or max(seeds.row0, default=0)
    row0 = {l: seeds.row0_value(l) for l in range(1, upto + 1)}
    return {
        "diag": [[t, modelem_to_json(v)] for t, v in sorted(seeds.diag.items())],
        "row0": [[l, modelem_to_json(v)] for l, v in row0.items() if v],
        "row0_cutoff": upto,
    }


def seeds_from_json(data, spec: BimoduleSpec | None = None) -> SeedData:
    if not isinstance(data, dict):
        raise FormatError("seed file must be an object with diag and row0")
    try:
        diag = {int(t): modelem_from_json(v) for t, v in data.get("diag", [])}
        row0 = {int(l): modelem_from_json(v) for l, v in data.get("row0", [])}
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad seed entry: {exc}") from None
    if spec is not None:
        for v in list(diag.values()) + list(row0.values()):
            _check_keys(v, spec)
    try:
        return SeedData(diag, row0, row0_cutoff=data.get("row0_cutoff"))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def _check_keys(v: ModElem, spec: BimoduleSpec) -> None:
    for k in v.keys():
        if not spec.has_key(k):
            raise FormatError(f"key {k!r} is not in the basis of {spec.name}")


def bimodule_to_json(spec: BimoduleSpec) -> dict:
    if not spec.finite:
        raise FormatError(f"{spec.name} has an infinite basis and cannot be tabulated")
    keys = sorted(spec.basis_keys(), key=key_order)
    left, right = [], []
    for e in keys:
        for n in range(spec.n_left(e)):
            left.append({"key": key_to_json(e), "n": n, "value": modelem_to_json(spec.left_x(e, n))})
        for n in range(spec.n_right(e)):
            right.append({"key": key_to_json(e), "n": n, "value": modelem_to_json(spec.right_x(e, n))})
    return {
        "name": spec.name,
        "basis": [key_to_json(e) for e in keys],
        "n_left": [[key_to_json(e), spec.n_left(e)] for e in keys],
        "n_right": [[key_to_json(e), spec.n_right(e)] for e in keys],
        "left": left,
        "right": right,
    }


def bimodule_from_json(data) -> TableBimodule:
    if not isinstance(data, dict):
        raise FormatError("bimodule file must be a JSON object")
    try:
        keys = [key_from_json(k) for k in data["basis"]]
        n_left = {key_from_json(k): int(n) for k, n in data.get("n_left", [])}
        n_right = {key_from_json(k): int(n) for k, n in data.get("n_right", [])}
        left = {(key_from_json(r["key"]), int(r["n"])): modelem_from_json(r["value"]) for r in data.get("left", [])}
        right = {(key_from_json(r["key"]), int(r["n"])): modelem_from_json(r["value"]) for r in data.get("right", [])}
        return TableBimodule(data.get("name", "file"), keys, n_left, n_right, left, right)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bimodule file missing or malformed field: {exc}") from None
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def load_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def resolve_bimodule(name_or_path: str) -> BimoduleSpec:
    """A builtin name (``regular``, ``a+b``, ...) or a path to a bimodule file."""
    p = Path(name_or_path)
    if p.suffix == ".json" or p.exists():
        data = load_json(p)
        try:
            return bimodule_from_json(data)
        except FormatError as exc:
            raise FormatError(f"{p}: {exc}") from None
    return builtin_bimodule(name_or_path)
