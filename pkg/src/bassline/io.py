"""JSON interchange formats for posets, functions, profiles and sequences.

Poset::

    {"name": "C3", "elements": ["a", "b", "c"], "covers": [["a", "b"], ["b", "c"]]}

Function (``"role": "profile"`` marks a depth profile)::

    {"poset": "C3", "values": {"a": 0, "b": 1, "c": "inf"}}

Sequence::

    {"poset": "C3", "phi": [["a"], ["a", "b"]]}

``"inf"`` is the only spelling of infinity.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .depth import format_depth, parse_depth
from .functions import SpecFunction
from .poset import PosetError, SpectralPoset, load_poset
from .profiles import DepthProfile
from .sequences import BassSequence

__all__ = [
    "FormatError",
    "read_json",
    "read_poset",
    "poset_to_json",
    "load_function",
    "function_to_json",
    "load_sequence",
    "sequence_to_json",
    "dumps",
]


class FormatError(ValueError):
    """Input file is unreadable or does not match its schema."""


def read_json(path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON: {exc}") from exc


def read_poset(path) -> SpectralPoset:
    data = read_json(path)
    P = load_poset(data)
    if not P.name:
        P = SpectralPoset(P.elements, P.covers, name=Path(path).stem)
    return P


def poset_to_json(P: SpectralPoset) -> dict:
    return {"name": P.name, "elements": list(P.elements), "covers": [list(c) for c in P.covers]}


def _check_poset_name(data: Mapping, P: SpectralPoset):
    name = data.get("poset")
    if name is not None and P.name and name != P.name:
        raise PosetError(f"file refers to poset {name!r}, not {P.name!r}")


def load_function(data: Mapping, P: SpectralPoset) -> SpecFunction:
    """Read a function file; a ``"role": "profile"`` entry yields a :class:`DepthProfile`."""
    if not isinstance(data, Mapping) or not isinstance(data.get("values"), Mapping):
        raise FormatError("function file needs a 'values' object")
    _check_poset_name(data, P)
    try:
        values = {e: parse_depth(v) for e, v in data["values"].items()}
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    role = data.get("role", "function")
    if role == "profile":
        return DepthProfile(P, values)
    if role != "function":
        raise FormatError(f"unknown role {role!r}")
    return SpecFunction(P, values)


def function_to_json(f: SpecFunction, role: str | None = None) -> dict:
    out = {"poset": f.poset.name, "values": {e: format_depth(v) for e, v in f.items()}}
    if role is None and isinstance(f, DepthProfile):
        role = "profile"
    if role is not None:
        out["role"] = role
    return out


def load_sequence(data: Mapping, P: SpectralPoset) -> BassSequence:
    if not isinstance(data, Mapping) or not isinstance(data.get("phi"), list):
        raise FormatError("sequence file needs a 'phi' list of element lists")
    _check_poset_name(data, P)
    for term in data["phi"]:
        if not isinstance(term, list) or not all(isinstance(e, str) for e in term):
            raise FormatError("each sequence term must be a list of element names")
    return BassSequence(P, data["phi"])


def sequence_to_json(s: BassSequence) -> dict:
    return {"poset": s.poset.name, "phi": s.as_lists()}


def dumps(obj) -> str:
    """Deterministic JSON text: fixed indentation, key order as built, trailing newline."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
