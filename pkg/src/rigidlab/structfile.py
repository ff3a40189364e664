"""Read and write the JSON structure document.

Layout::

    {"name": str,
     "ring": {"size": n, "add": [[int]], "mul": [[int]], "zero": int, "one": int},
     "endomorphism": [int],                        # optional, default identity
     "module": {"size": m, "add": [[int]], "zero": int, "action": [[int]]},
                                                   # optional, default R_R
     "submodules": {name: [int]}}                  # optional
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .core import (
    FiniteModule,
    FiniteRing,
    RingEndo,
    Submodule,
    identity_endo,
    regular_module,
    validate_endo,
    validate_module,
    validate_ring,
    validate_submodule,
)
from .errors import ShapeError


@dataclass
class Structure:
    name: str
    ring: FiniteRing
    endo: RingEndo
    module: FiniteModule
    submodules: dict = field(default_factory=dict)
    module_is_regular: bool = False


def from_dict(doc: dict) -> Structure:
    try:
        r = doc["ring"]
        ring = validate_ring(r["size"], r["add"], r["mul"], r["zero"], r["one"],
                             name=doc.get("name", ""))
        if doc.get("endomorphism") is not None:
            endo = validate_endo(ring, doc["endomorphism"], name="file")
        else:
            endo = identity_endo(ring)
        m = doc.get("module")
        if m is None:
            module, regular = regular_module(ring), True
        else:
            module = validate_module(ring, m["size"], m["add"], m["zero"], m["action"],
                                     name=doc.get("name", ""))
            regular = False
        subs = {k: validate_submodule(module, v)
                for k, v in (doc.get("submodules") or {}).items()}
    except (KeyError, TypeError) as exc:
        raise ShapeError(f"malformed structure document: {exc}") from exc
    return Structure(doc.get("name", ""), ring, endo, module, subs, regular)


def to_dict(name: str, module: FiniteModule, endo: RingEndo | None = None,
            submodules: dict | None = None, regular: bool = False) -> dict:
    doc = {"name": name, "ring": module.ring.to_json()}
    if endo is not None and not endo.is_identity:
        doc["endomorphism"] = endo.image.tolist()
    if not regular:
        doc["module"] = module.to_json()
    if submodules:
        doc["submodules"] = {k: list(v.elements if isinstance(v, Submodule) else v)
                             for k, v in submodules.items()}
    return doc


def load(path) -> Structure:
    with open(Path(path)) as fh:
        return from_dict(json.load(fh))


def dump(doc: dict, path=None) -> str:
    text = json.dumps(doc, separators=(",", ":"))
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
