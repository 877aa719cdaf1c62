"""JSON interchange for spaces, maps, complexes, and verdict records.

All emitters produce plain dict/list/int/str trees; ``canonical_dumps``
fixes key order and spacing so equal objects serialize to identical bytes.
Parsers validate through the normal constructors, so malformed input fails
with the package's own error types rather than raw KeyErrors.
"""

from __future__ import annotations

import json

from .chain import ChainComplex
from .errors import ValidationError
from .groups import HomologyGroup
from .intmat import IntMat
from .nerve import Preorder
from .quasicat import QcatVerdict
from .sset import FiniteSSet, Simplex, SSetMap

__all__ = [
    "canonical_dumps",
    "sset_to_record",
    "sset_from_record",
    "map_to_record",
    "map_from_record",
    "chain_to_record",
    "chain_from_record",
    "group_to_record",
    "preorder_from_record",
    "verdict_to_record",
]


def canonical_dumps(obj) -> str:
    """Deterministic serialization: sorted keys, fixed spacing."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _as_record(data, what: str) -> dict:
    if not isinstance(data, dict):
        raise ValidationError(f"{what} record must be a JSON object")
    return data


def _simplex_pair(sx: Simplex) -> list:
    return [list(sx.degeneracies), sx.base]


def _simplex_from_pair(pair, dim: int, what: str) -> Simplex:
    if (
        not isinstance(pair, (list, tuple))
        or len(pair) != 2
        or not isinstance(pair[1], str)
    ):
        raise ValidationError(f"{what}: expected a [degeneracy-word, base] pair")
    word, base = pair
    return Simplex(tuple(int(i) for i in word), base, dim)


# -- simplicial sets -------------------------------------------------------


def sset_to_record(X: FiniteSSet) -> dict:
    rec = {
        "cells": [list(level) for level in X.cells],
        "faces": {
            name: [_simplex_pair(sx) for sx in X.faces[name]]
            for name in sorted(X.faces)
        },
    }
    if X.basepoint is not None:
        rec["basepoint"] = X.basepoint
    return rec


def sset_from_record(data) -> FiniteSSet:
    data = _as_record(data, "simplicial set")
    cells = data.get("cells")
    if not isinstance(cells, list):
        raise ValidationError("simplicial set record needs a 'cells' list")
    cells = tuple(tuple(level) for level in cells)
    dim_of = {}
    for k, level in enumerate(cells):
        for name in level:
            if not isinstance(name, str):
                raise ValidationError("simplex names must be strings")
            dim_of[name] = k
    faces = {}
    for name, lst in data.get("faces", {}).items():
        if name not in dim_of:
            raise ValidationError(f"faces listed for unknown simplex {name!r}")
        k = dim_of[name]
        faces[name] = tuple(
            _simplex_from_pair(p, k - 1, f"face of {name!r}") for p in lst
        )
    return FiniteSSet(cells, faces, data.get("basepoint"))


# -- simplicial maps -------------------------------------------------------


def map_to_record(f: SSetMap) -> dict:
    return {
        "images": {
            name: _simplex_pair(f.images[name]) for name in sorted(f.images)
        }
    }


def map_from_record(source: FiniteSSet, target: FiniteSSet, data) -> SSetMap:
    data = _as_record(data, "simplicial map")
    images = {}
    for name, pair in _as_record(data.get("images"), "map images").items():
        if name not in source.names:
            raise ValidationError(f"image listed for unknown simplex {name!r}")
        images[name] = _simplex_from_pair(
            pair, source.dim_of(name), f"image of {name!r}"
        )
    return SSetMap(source, target, images)


# -- chain complexes and groups --------------------------------------------


def chain_to_record(c: ChainComplex) -> dict:
    return {
        "low": c.low,
        "high": c.high,
        "ranks": list(c.ranks),
        "boundaries": {
            str(n): c.boundary(n).to_lists() for n in range(c.low + 1, c.high + 1)
        },
    }


def chain_from_record(data) -> ChainComplex:
    data = _as_record(data, "chain complex")
    try:
        low = int(data["low"])
        high = int(data["high"])
        ranks = tuple(int(r) for r in data["ranks"])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"chain complex record incomplete: {exc}")
    if len(ranks) != high - low + 1:
        raise ValidationError("ranks length disagrees with the degree window")
    raw = data.get("boundaries", {})
    boundaries = []
    for n in range(low + 1, high + 1):
        rows = raw.get(str(n))
        if rows is None:
            m = IntMat.zero(ranks[n - 1 - low], ranks[n - low])
        else:
            m = IntMat.from_rows(rows) if rows else IntMat.zero(0, ranks[n - low])
            if m.rows != ranks[n - 1 - low] or m.cols != ranks[n - low]:
                raise ValidationError(f"boundary {n} shape disagrees with ranks")
        boundaries.append(m)
    return ChainComplex(low, high, ranks, tuple(boundaries))


def group_to_record(g: HomologyGroup) -> dict:
    return {"rank": g.rank, "torsion": list(g.torsion)}


# -- preorders -------------------------------------------------------------


def preorder_from_record(data) -> Preorder:
    """Preorder from elements and generating pairs.

    The relation is closed reflexively and transitively, so input files
    only list the covering pairs they care about.
    """
    data = _as_record(data, "preorder")
    elements = data.get("elements")
    if not isinstance(elements, list) or not all(
        isinstance(e, str) for e in elements
    ):
        raise ValidationError("preorder record needs a list of string elements")
    pairs = {(a, b) for a, b in (tuple(p) for p in data.get("pairs", []))}
    for a, b in pairs:
        if a not in elements or b not in elements:
            raise ValidationError(f"pair ({a!r}, {b!r}) uses unknown elements")
    rel = {(e, e) for e in elements} | pairs
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c, d in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return Preorder(tuple(elements), frozenset(rel))


# -- verdicts --------------------------------------------------------------


def verdict_to_record(v: QcatVerdict) -> dict:
    rec: dict = {"ok": v.ok, "checked_dim": v.checked_dim}
    if v.witness is not None:
        h = v.witness
        rec["witness"] = {
            "n": h.n,
            "i": h.i,
            "assignment": {
                name: _simplex_pair(h.assignment.images[name])
                for name in sorted(h.assignment.images)
            },
        }
    return rec
