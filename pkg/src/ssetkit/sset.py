"""Finite simplicial sets presented by their nondegenerate simplices.

A ``FiniteSSet`` stores, per dimension, the names of the nondegenerate
simplices; the face of a nondegenerate simplex is a ``Simplex`` value, a
degeneracy word applied to a named base.  Every simplex of the underlying
presheaf is such a pair, and the action of an arbitrary monotone map is
computed by composing the simplex's collapse surjection with the map,
refactoring, and looking up stored faces for the injective part.

Degeneracy words are strictly decreasing, so each simplex has exactly one
normal form and equality of ``Simplex`` values is equality of simplices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .delta import (
    MonotoneMap,
    compose_monotone,
    epi_mono_factor,
    epi_of_word,
    face_map,
    surjective_maps,
    word_of_epi,
)
from .errors import ValidationError

__all__ = [
    "Simplex",
    "FiniteSSet",
    "SSetMap",
    "standard_simplex",
    "boundary",
    "horn",
    "face_closure",
    "subcomplex",
    "is_name_subcomplex",
    "subset_intersection",
    "subset_union",
    "pointed",
    "without_basepoint",
    "constant_map",
    "simplex_as_map",
    "isomorphism",
    "are_isomorphic",
]


@dataclass(frozen=True)
class Simplex:
    """A simplex in normal form: a degeneracy word applied to a named base.

    ``degeneracies`` is strictly decreasing; ``dim`` is the dimension of the
    simplex itself (base dimension plus word length).
    """

    degeneracies: tuple[int, ...]
    base: str
    dim: int

    def __post_init__(self) -> None:
        if any(a <= b for a, b in zip(self.degeneracies, self.degeneracies[1:])):
            raise ValidationError(
                f"degeneracy word {self.degeneracies} is not strictly decreasing"
            )
        if self.degeneracies and self.degeneracies[0] >= self.dim:
            raise ValidationError(
                f"degeneracy index {self.degeneracies[0]} out of range in dim {self.dim}"
            )
        if self.dim < len(self.degeneracies):
            raise ValidationError("degeneracy word longer than the dimension")

    @property
    def is_degenerate(self) -> bool:
        return bool(self.degeneracies)

    @property
    def base_dim(self) -> int:
        return self.dim - len(self.degeneracies)

    def collapse(self) -> MonotoneMap:
        """The surjection ``[dim] ->> [base_dim]`` encoded by the word."""
        return epi_of_word(self.degeneracies, self.dim)


def _push_epi(sx: Simplex, epi: MonotoneMap) -> Simplex:
    """Precompose the collapse of ``sx`` with a further surjection."""
    if epi.is_identity:
        return sx
    eta = compose_monotone(sx.collapse(), epi)
    return Simplex(word_of_epi(eta), sx.base, epi.dom)


class FiniteSSet:
    """A finite simplicial set with named nondegenerate simplices.

    Parameters
    ----------
    cells:
        Per dimension, the nondegenerate simplex names.  Stored sorted; names
        must be globally unique.  May be empty (the empty simplicial set).
    faces:
        For each name of dimension ``k >= 1``, the tuple of its ``k+1`` faces
        as ``Simplex`` values.
    basepoint:
        Optional distinguished vertex name.
    """

    __slots__ = (
        "cells",
        "faces",
        "basepoint",
        "_dim_of",
        "_all_cache",
        "_face_cache",
        "_deg_cache",
        "_hash",
    )

    def __init__(
        self,
        cells,
        faces,
        basepoint: str | None = None,
        check: bool = True,
    ) -> None:
        cells = tuple(tuple(sorted(level)) for level in cells)
        while cells and not cells[-1]:
            cells = cells[:-1]
        self.cells: tuple[tuple[str, ...], ...] = cells
        self.faces: dict[str, tuple[Simplex, ...]] = dict(faces)
        self.basepoint = basepoint
        self._dim_of: dict[str, int] = {}
        for k, level in enumerate(cells):
            for name in level:
                if name in self._dim_of:
                    raise ValidationError(f"duplicate simplex name {name!r}")
                self._dim_of[name] = k
        self._all_cache: dict[int, tuple[Simplex, ...]] = {}
        self._face_cache: dict[tuple[Simplex, int], Simplex] = {}
        self._deg_cache: dict[tuple[Simplex, int], Simplex] = {}
        self._hash: int | None = None
        if check:
            self._validate()

    # -- basic structure ---------------------------------------------------

    @property
    def top_dim(self) -> int:
        """Dimension of the highest nondegenerate simplex (-1 if empty)."""
        return len(self.cells) - 1

    def counts(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.cells)

    def nondeg(self, k: int) -> tuple[str, ...]:
        if 0 <= k <= self.top_dim:
            return self.cells[k]
        return ()

    def dim_of(self, name: str) -> int:
        return self._dim_of[name]

    def __contains__(self, name: str) -> bool:
        return name in self._dim_of

    @property
    def names(self):
        return self._dim_of.keys()

    def simplex(self, name: str) -> Simplex:
        """The nondegenerate simplex with the given name."""
        return Simplex((), name, self._dim_of[name])

    @property
    def is_pointed(self) -> bool:
        return self.basepoint is not None

    def basepoint_simplex(self, k: int) -> Simplex:
        """The k-fold degenerate simplex on the basepoint."""
        if self.basepoint is None:
            raise ValidationError("simplicial set has no basepoint")
        return Simplex(tuple(range(k - 1, -1, -1)), self.basepoint, k)

    # -- operator action ---------------------------------------------------

    def face(self, sx: Simplex, i: int) -> Simplex:
        """The i-th face of an arbitrary simplex."""
        if sx.dim == 0:
            raise ValidationError("a vertex has no faces")
        if not sx.degeneracies:
            return self.faces[sx.base][i]
        cached = self._face_cache.get((sx, i))
        if cached is not None:
            return cached
        beta = compose_monotone(sx.collapse(), face_map(sx.dim, i))
        dword, fword = epi_mono_factor(beta)
        if fword:
            # The face either dies in the word or hits one stored face.
            (j,) = fword
            hit = self.faces[sx.base][j]
        else:
            hit = Simplex((), sx.base, sx.base_dim)
        out = _push_epi(hit, epi_of_word(dword, sx.dim - 1))
        self._face_cache[(sx, i)] = out
        return out

    def degeneracy(self, sx: Simplex, i: int) -> Simplex:
        """The i-th degeneracy of an arbitrary simplex."""
        if not 0 <= i <= sx.dim:
            raise ValidationError(f"degeneracy index {i} out of range")
        cached = self._deg_cache.get((sx, i))
        if cached is not None:
            return cached
        eta = compose_monotone(sx.collapse(), _sigma(sx.dim, i))
        out = Simplex(word_of_epi(eta), sx.base, sx.dim + 1)
        self._deg_cache[(sx, i)] = out
        return out

    def act(self, sx: Simplex, alpha: MonotoneMap) -> Simplex:
        """Apply the contravariant action of ``alpha: [k] -> [dim sx]``."""
        if alpha.cod != sx.dim:
            raise ValidationError(
                f"map into [{alpha.cod}] cannot act on a {sx.dim}-simplex"
            )
        beta = compose_monotone(sx.collapse(), alpha)
        dword, fword = epi_mono_factor(beta)
        cur = Simplex((), sx.base, sx.base_dim)
        # Injective part: apply stored faces, largest missed index first.
        for i in reversed(fword):
            cur = self.face(cur, i)
        return _push_epi(cur, epi_of_word(dword, alpha.dom))

    def all_simplices(self, k: int) -> tuple[Simplex, ...]:
        """Every simplex of dimension ``k``, degenerate ones included."""
        if k < 0:
            return ()
        if k not in self._all_cache:
            out = []
            for m in range(min(k, self.top_dim) + 1):
                words = [word_of_epi(eta) for eta in surjective_maps(k, m)]
                for name in self.cells[m]:
                    for w in words:
                        out.append(Simplex(w, name, k))
            self._all_cache[k] = tuple(out)
        return self._all_cache[k]

    def is_degenerate_value(self, sx: Simplex) -> bool:
        return sx.is_degenerate

    # -- validation, equality ----------------------------------------------

    def _validate(self) -> None:
        for name, fs in self.faces.items():
            if name not in self._dim_of:
                raise ValidationError(f"face table mentions unknown simplex {name!r}")
            k = self._dim_of[name]
            if k == 0:
                raise ValidationError(f"vertex {name!r} cannot have faces")
            if len(fs) != k + 1:
                raise ValidationError(f"{name!r} needs {k + 1} faces, got {len(fs)}")
            for sx in fs:
                if sx.dim != k - 1:
                    raise ValidationError(f"face of {name!r} has wrong dimension")
                if sx.base not in self._dim_of:
                    raise ValidationError(f"face of {name!r} has unknown base")
                if self._dim_of[sx.base] != sx.base_dim:
                    raise ValidationError(f"face of {name!r} has inconsistent base dim")
        for k, level in enumerate(self.cells):
            if k == 0:
                continue
            for name in level:
                if name not in self.faces:
                    raise ValidationError(f"missing face table for {name!r}")
        if self.basepoint is not None:
            if self._dim_of.get(self.basepoint) != 0:
                raise ValidationError(f"basepoint {self.basepoint!r} is not a vertex")
        self._check_identities()

    def _check_identities(self) -> None:
        # d_i d_j = d_{j-1} d_i for i < j, on every nondegenerate simplex.
        for k in range(2, self.top_dim + 1):
            for name in self.cells[k]:
                sx = self.simplex(name)
                for j in range(1, k + 1):
                    for i in range(j):
                        left = self.face(self.face(sx, j), i)
                        right = self.face(self.face(sx, i), j - 1)
                        if left != right:
                            raise ValidationError(
                                f"simplicial identity fails on {name!r}: "
                                f"d_{i} d_{j} != d_{j - 1} d_{i}"
                            )

    def _key(self):
        return (
            self.cells,
            tuple(sorted(self.faces.items())),
            self.basepoint,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteSSet):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self) -> str:
        bp = f", basepoint={self.basepoint!r}" if self.basepoint else ""
        return f"FiniteSSet(counts={self.counts()}{bp})"


def _sigma(n: int, i: int) -> MonotoneMap:
    from .delta import degeneracy_map

    return degeneracy_map(n, i)


# -- standard constructions ------------------------------------------------


def _subset_name(vertices: tuple[int, ...]) -> str:
    return "".join(str(v) for v in vertices)


def standard_simplex(n: int) -> FiniteSSet:
    """The standard n-simplex; k-cells are the (k+1)-subsets of {0..n}.

    Cells are named by their vertex strings ("02" for the edge from 0 to
    2), which keeps names unambiguous only for single-digit vertices.
    """
    if n < 0:
        raise ValidationError("dimension must be nonnegative")
    if n > 9:
        raise ValidationError("vertex-string naming supports n <= 9 only")
    from itertools import combinations

    cells = [
        [_subset_name(c) for c in combinations(range(n + 1), k + 1)]
        for k in range(n + 1)
    ]
    faces = {}
    for k in range(1, n + 1):
        for c in combinations(range(n + 1), k + 1):
            faces[_subset_name(c)] = tuple(
                Simplex((), _subset_name(c[:i] + c[i + 1 :]), k - 1)
                for i in range(k + 1)
            )
    return FiniteSSet(cells, faces)


def face_closure(X: FiniteSSet, names) -> set[str]:
    """Smallest face-closed set of nondegenerate names containing ``names``."""
    todo = list(names)
    seen = set()
    while todo:
        name = todo.pop()
        if name in seen:
            continue
        if name not in X:
            raise ValidationError(f"unknown simplex {name!r}")
        seen.add(name)
        for sx in X.faces.get(name, ()):
            todo.append(sx.base)
    return seen


def subcomplex(X: FiniteSSet, names, check_closed: bool = True) -> FiniteSSet:
    """The simplicial subset of ``X`` spanned by face-closed ``names``."""
    names = set(names)
    if check_closed:
        if face_closure(X, names) != names:
            raise ValidationError("name set is not face-closed")
    cells = [
        [n for n in level if n in names] for level in X.cells
    ]
    faces = {n: X.faces[n] for n in names if X.dim_of(n) > 0}
    bp = X.basepoint if X.basepoint in names else None
    return FiniteSSet(cells, faces, basepoint=bp)


def boundary(n: int) -> FiniteSSet:
    """The union of the proper faces of the standard n-simplex.

    For ``n >= 1`` this is a sphere of dimension ``n - 1``; ``boundary(0)``
    is the empty simplicial set.
    """
    X = standard_simplex(n)
    top = _subset_name(tuple(range(n + 1)))
    gens = [sx.base for sx in X.faces[top]] if n >= 1 else []
    return subcomplex(X, face_closure(X, gens))


def horn(n: int, i: int) -> FiniteSSet:
    """All proper faces of the standard n-simplex except the one missing ``i``."""
    if n < 1:
        raise ValidationError("horns need n >= 1")
    if not 0 <= i <= n:
        raise ValidationError(f"horn index {i} outside [0, {n}]")
    X = standard_simplex(n)
    top = _subset_name(tuple(range(n + 1)))
    gens = [sx.base for j, sx in enumerate(X.faces[top]) if j != i]
    return subcomplex(X, face_closure(X, gens))


def is_name_subcomplex(X: FiniteSSet, A: FiniteSSet) -> bool:
    """True when ``A`` is a subcomplex of ``X`` sharing names and faces."""
    for name in A.names:
        if name not in X or X.dim_of(name) != A.dim_of(name):
            return False
        if A.dim_of(name) > 0 and X.faces[name] != A.faces[name]:
            return False
    return True


def _require_subcomplexes(X: FiniteSSet, U: FiniteSSet, V: FiniteSSet) -> None:
    if not (is_name_subcomplex(X, U) and is_name_subcomplex(X, V)):
        raise ValidationError("arguments are not subcomplexes of the ambient set")


def subset_intersection(X: FiniteSSet, U: FiniteSSet, V: FiniteSSet) -> FiniteSSet:
    """Dimensionwise intersection of two subcomplexes of ``X``."""
    _require_subcomplexes(X, U, V)
    return subcomplex(X, set(U.names) & set(V.names), check_closed=False)


def subset_union(X: FiniteSSet, U: FiniteSSet, V: FiniteSSet) -> FiniteSSet:
    """Dimensionwise union of two subcomplexes of ``X``."""
    _require_subcomplexes(X, U, V)
    return subcomplex(X, set(U.names) | set(V.names), check_closed=False)


def pointed(X: FiniteSSet, vertex: str) -> FiniteSSet:
    """A copy of ``X`` with the given vertex as basepoint."""
    if vertex not in X or X.dim_of(vertex) != 0:
        raise ValidationError(f"basepoint {vertex!r} is not a vertex")
    return FiniteSSet(X.cells, X.faces, basepoint=vertex, check=False)


def without_basepoint(X: FiniteSSet) -> FiniteSSet:
    if X.basepoint is None:
        return X
    return FiniteSSet(X.cells, X.faces, basepoint=None, check=False)


# -- simplicial maps -------------------------------------------------------


class SSetMap:
    """A simplicial map, stored by the images of nondegenerate simplices.

    The image of a degenerate simplex is forced by naturality.  Validation
    checks face compatibility in every dimension and basepoint preservation
    when both endpoints are pointed.
    """

    __slots__ = ("source", "target", "images")

    def __init__(self, source: FiniteSSet, target: FiniteSSet, images, check=True):
        self.source = source
        self.target = target
        self.images: dict[str, Simplex] = dict(images)
        if check:
            self._validate()

    def _validate(self) -> None:
        src = self.source
        tgt = self.target
        if set(self.images) != set(src.names):
            raise ValidationError("images must be given for every nondegenerate simplex")
        for name, sx in self.images.items():
            if sx.dim != src.dim_of(name):
                raise ValidationError(f"image of {name!r} has wrong dimension")
            if sx.base not in tgt or tgt.dim_of(sx.base) != sx.base_dim:
                raise ValidationError(f"image of {name!r} is not a simplex of the target")
        for k in range(1, src.top_dim + 1):
            for name in src.cells[k]:
                img = self.images[name]
                for i in range(k + 1):
                    if tgt.face(img, i) != self.apply(src.face(src.simplex(name), i)):
                        raise ValidationError(
                            f"map does not commute with face {i} of {name!r}"
                        )
        if src.basepoint is not None and tgt.basepoint is not None:
            if self.images[src.basepoint] != tgt.simplex(tgt.basepoint):
                raise ValidationError("map does not preserve the basepoint")

    def apply(self, sx: Simplex) -> Simplex:
        img = self.images[sx.base]
        return _push_epi(img, epi_of_word(sx.degeneracies, sx.dim))

    def __call__(self, sx: Simplex) -> Simplex:
        return self.apply(sx)

    def compose(self, other: "SSetMap") -> "SSetMap":
        """``self of other`` (apply ``other`` first)."""
        if other.target != self.source:
            raise ValidationError("maps are not composable")
        images = {
            name: self.apply(sx) for name, sx in other.images.items()
        }
        return SSetMap(other.source, self.target, images, check=False)

    @classmethod
    def identity_map(cls, X: FiniteSSet) -> "SSetMap":
        return cls(X, X, {name: X.simplex(name) for name in X.names}, check=False)

    @classmethod
    def inclusion(cls, A: FiniteSSet, X: FiniteSSet) -> "SSetMap":
        if not is_name_subcomplex(X, A):
            raise ValidationError("not a subcomplex inclusion")
        return cls(A, X, {name: X.simplex(name) for name in A.names}, check=False)

    def is_dimensionwise_injective(self, top: int | None = None) -> bool:
        """Injective on all simplices in each dimension up to ``top``."""
        if top is None:
            top = self.source.top_dim
        for k in range(top + 1):
            seen = set()
            for sx in self.source.all_simplices(k):
                img = self.apply(sx)
                if img in seen:
                    return False
                seen.add(img)
        return True

    def key(self):
        return tuple(sorted(self.images.items()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SSetMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"SSetMap({self.source!r} -> {self.target!r})"


def constant_map(X: FiniteSSet, Y: FiniteSSet, vertex: str) -> SSetMap:
    """The map collapsing ``X`` to a vertex of ``Y``."""
    images = {
        name: Simplex(tuple(range(X.dim_of(name) - 1, -1, -1)), vertex, X.dim_of(name))
        for name in X.names
    }
    return SSetMap(X, Y, images, check=False)


def simplex_as_map(Y: FiniteSSet, sx: Simplex) -> SSetMap:
    """The map from the standard simplex classifying ``sx``.

    Sends the nondegenerate k-cell with vertex set ``S`` of the standard
    ``dim(sx)``-simplex to the action of the corresponding injection.
    """
    n = sx.dim
    X = standard_simplex(n)
    images = {}
    for name in X.names:
        verts = tuple(int(ch) for ch in name)
        alpha = MonotoneMap(len(verts) - 1, n, verts)
        images[name] = Y.act(sx, alpha)
    return SSetMap(X, Y, images, check=False)


def isomorphism(X: FiniteSSet, Y: FiniteSSet) -> SSetMap | None:
    """An isomorphism ``X -> Y`` if one exists, else ``None``.

    A simplicial map that restricts to a dimensionwise bijection between
    nondegenerate simplices is an isomorphism, so the search runs over
    nondegenerate images only.
    """
    if X.counts() != Y.counts():
        return None
    from .function_complex import enumerate_maps

    for f in enumerate_maps(X, Y):
        hit: dict[int, set[str]] = {}
        ok = True
        for name, sx in f.images.items():
            if sx.is_degenerate:
                ok = False
                break
            hit.setdefault(X.dim_of(name), set()).add(sx.base)
        if ok and all(
            len(hit.get(k, ())) == len(X.cells[k]) for k in range(X.top_dim + 1)
        ):
            return f
    return None


def are_isomorphic(X: FiniteSSet, Y: FiniteSSet) -> bool:
    return isomorphism(X, Y) is not None
