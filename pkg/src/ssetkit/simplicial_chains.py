"""Normalized chains of finite simplicial sets.

The degree-n basis is the sorted list of nondegenerate n-simplex names;
the boundary is the alternating face sum with degenerate faces discarded.
The reduced variant divides out the basepoint generator in degree 0, which
keeps every level free and drops exactly one rank.
"""

from __future__ import annotations

from .chain import ChainComplex, ChainMap, chain_map_from_blocks, zero_complex
from .errors import ValidationError
from .intmat import IntMat
from .sset import FiniteSSet, SSetMap, Simplex

__all__ = [
    "chain_basis",
    "normalized_chains",
    "reduced_normalized_chains",
    "chain_map_of",
    "reduced_chain_map_of",
]


def chain_basis(X: FiniteSSet, n: int, reduced: bool = False) -> tuple[str, ...]:
    """The ordered basis of the (reduced) normalized chains in degree n."""
    names = X.nondeg(n)
    if reduced and n == 0:
        if X.basepoint is None:
            raise ValidationError("reduced chains need a basepoint")
        names = tuple(name for name in names if name != X.basepoint)
    return names


def _boundary_matrix(X: FiniteSSet, n: int, reduced: bool) -> IntMat:
    rows = chain_basis(X, n - 1, reduced)
    cols = chain_basis(X, n, reduced)
    index = {name: i for i, name in enumerate(rows)}
    entries = [[0] * len(cols) for _ in rows]
    for j, name in enumerate(cols):
        sx = Simplex((), name, n)
        for i in range(n + 1):
            face = X.face(sx, i)
            if face.is_degenerate:
                continue
            row = index.get(face.base)
            if row is None:  # the basepoint generator in the reduced case
                continue
            entries[row][j] += -1 if i % 2 else 1
    return IntMat.from_rows(entries) if rows else IntMat(0, len(cols), ())


def _chains(X: FiniteSSet, reduced: bool) -> ChainComplex:
    top = X.top_dim
    if top < 0:
        return zero_complex()
    ranks = tuple(len(chain_basis(X, n, reduced)) for n in range(top + 1))
    bounds = tuple(_boundary_matrix(X, n, reduced) for n in range(1, top + 1))
    return ChainComplex(0, top, ranks, bounds)


def normalized_chains(X: FiniteSSet) -> ChainComplex:
    return _chains(X, reduced=False)


def reduced_normalized_chains(X: FiniteSSet) -> ChainComplex:
    if X.basepoint is None:
        raise ValidationError("reduced chains need a basepoint")
    return _chains(X, reduced=True)


def _map_blocks(f: SSetMap, reduced: bool) -> dict[int, IntMat]:
    blocks = {}
    for n in range(f.source.top_dim + 1):
        rows = chain_basis(f.target, n, reduced)
        cols = chain_basis(f.source, n, reduced)
        index = {name: i for i, name in enumerate(rows)}
        entries = [[0] * len(cols) for _ in rows]
        for j, name in enumerate(cols):
            img = f.images[name]
            if img.is_degenerate:
                continue
            row = index.get(img.base)
            if row is None:
                continue
            entries[row][j] = 1
        blocks[n] = (
            IntMat.from_rows(entries) if rows else IntMat(0, len(cols), ())
        )
    return blocks


def chain_map_of(f: SSetMap) -> ChainMap:
    """The induced map on normalized chains.

    Nondegenerate simplices with degenerate image are sent to zero; this is
    what makes the normalized complex functorial.
    """
    return chain_map_from_blocks(
        normalized_chains(f.source), normalized_chains(f.target), _map_blocks(f, False)
    )


def reduced_chain_map_of(f: SSetMap) -> ChainMap:
    """The induced map on reduced chains of pointed simplicial sets."""
    if f.source.basepoint is None or f.target.basepoint is None:
        raise ValidationError("reduced chain maps need pointed source and target")
    if f.images[f.source.basepoint] != Simplex((), f.target.basepoint, 0):
        raise ValidationError("map does not preserve the basepoint")
    return chain_map_from_blocks(
        reduced_normalized_chains(f.source),
        reduced_normalized_chains(f.target),
        _map_blocks(f, True),
    )
