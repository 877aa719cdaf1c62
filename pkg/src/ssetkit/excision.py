"""Cylinders, suspensions, homotopy pushouts, and Mayer-Vietoris.

The homotopy pushout of a span is modeled by the double mapping cylinder:
both feet glued to a cylinder on the shared source.  A square of simplicial
sets is a homology pushout when the canonical map from that cylinder to
its corner induces an isomorphism on integral homology.

For covers by two subcomplexes, every simplex lies in one of the pieces,
so the inclusion-induced short sequence of normalized chain complexes is
exact on the nose and the long exact homology sequence comes out of the
usual snake construction, with every slot re-verified independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .build import (
    ProductResult,
    PushoutResult,
    QuotientResult,
    disjoint_union,
    product,
    pushout,
    quotient,
    sset_pullback,
)
from .chain import (
    ChainMap,
    ChainSquare,
    check_exact_sequence,
    direct_sum,
    homology,
    homology_presentation,
    is_homotopy_bicartesian,
    quasi_iso,
    zero_complex,
    zero_map,
)
from .errors import ValidationError
from .groups import HomologyGroup, PresentedGroup, exact_at
from .intmat import IntMat, solve
from .simplicial_chains import (
    chain_map_of,
    normalized_chains,
    reduced_chain_map_of,
    reduced_normalized_chains,
)
from .sset import (
    FiniteSSet,
    SSetMap,
    Simplex,
    boundary,
    constant_map,
    face_closure,
    is_name_subcomplex,
    pointed,
    standard_simplex,
    subcomplex,
    subset_intersection,
)

__all__ = [
    "cylinder",
    "cone",
    "unreduced_suspension",
    "reduced_suspension",
    "SuspensionData",
    "reduced_suspension_data",
    "SSetSquare",
    "identity_square",
    "pushout_square",
    "chain_square_of",
    "DoubleMappingCylinder",
    "double_mapping_cylinder",
    "is_homology_pushout",
    "ExcisionReport",
    "excision_check",
    "CoverData",
    "cover_from_names",
    "CoverSES",
    "cover_short_exact_sequence",
    "LESEntry",
    "LongExactSequence",
    "mayer_vietoris",
    "CounterexampleReport",
    "identity_counterexample_report",
]


# -- cylinders and suspensions ---------------------------------------------


def _vertex_prism(j: str, k: int) -> Simplex:
    """The k-fold degenerate interval vertex ``j``."""
    return Simplex(tuple(range(k - 1, -1, -1)), j, k)


def cylinder(X: FiniteSSet) -> ProductResult:
    return product(X, standard_simplex(1))


def _end_inclusion(pr: ProductResult, j: str) -> SSetMap:
    X = pr.left
    images = {
        name: pr.pair_simplex(
            Simplex((), name, X.dim_of(name)), _vertex_prism(j, X.dim_of(name))
        )
        for name in X.names
    }
    return SSetMap(X, pr.space, images)


def _end_names(pr: ProductResult, j: str) -> set[str]:
    return {
        name for name in pr.space.names if pr.components(name)[1].base == j
    }


def cone(X: FiniteSSet) -> FiniteSSet:
    """The cone: the cylinder with its far end collapsed to the apex."""
    if X.top_dim < 0:
        raise ValidationError("cone of the empty simplicial set is not supported")
    pr = cylinder(X)
    far = subcomplex(pr.space, _end_names(pr, "1"))
    return quotient(pr.space, far).space


def unreduced_suspension(X: FiniteSSet) -> FiniteSSet:
    """Both cylinder ends collapsed, each to its own cone point."""
    if X.top_dim < 0:
        raise ValidationError("suspension of the empty simplicial set is not supported")
    pr = cylinder(X)
    bottom = subcomplex(pr.space, _end_names(pr, "0"))
    q1 = quotient(pr.space, bottom)
    top_images = set()
    for name in _end_names(pr, "1"):
        img = q1.projection.apply(
            Simplex((), name, pr.space.dim_of(name))
        )
        top_images.add(img.base)
    q2 = quotient(q1.space, subcomplex(q1.space, top_images))
    return q2.space


@dataclass
class SuspensionData:
    """Reduced suspension together with its cylinder bookkeeping."""

    space: FiniteSSet  # pointed
    cylinder: ProductResult
    collapse: QuotientResult

    def pair_class(self, sx: Simplex, t: Simplex) -> Simplex:
        """Image in the suspension of a cylinder point (sx, t)."""
        return self.collapse.projection.apply(self.cylinder.pair_simplex(sx, t))


def reduced_suspension_data(X: FiniteSSet) -> SuspensionData:
    if X.basepoint is None:
        raise ValidationError("reduced suspension needs a basepoint")
    pr = cylinder(X)
    collapse_names = _end_names(pr, "0") | _end_names(pr, "1")
    collapse_names |= {
        name for name in pr.space.names
        if pr.components(name)[0].base == X.basepoint
    }
    A = subcomplex(pr.space, collapse_names)
    q = quotient(pr.space, A)
    return SuspensionData(q.space, pr, q)


def reduced_suspension(X: FiniteSSet) -> FiniteSSet:
    """Cylinder modulo both ends and the basepoint line, in one collapse."""
    return reduced_suspension_data(X).space


# -- squares of simplicial sets --------------------------------------------


@dataclass(frozen=True)
class SSetSquare:
    """A strictly commuting square of simplicial sets."""

    w_to_u: SSetMap
    w_to_v: SSetMap
    u_to_x: SSetMap
    v_to_x: SSetMap

    def __post_init__(self):
        if self.w_to_u.source != self.w_to_v.source:
            raise ValidationError("square legs must share their source corner")
        if self.u_to_x.source != self.w_to_u.target:
            raise ValidationError("upper-right corner mismatch")
        if self.v_to_x.source != self.w_to_v.target:
            raise ValidationError("lower-left corner mismatch")
        if self.u_to_x.target != self.v_to_x.target:
            raise ValidationError("square has two different final corners")
        if self.u_to_x.compose(self.w_to_u) != self.v_to_x.compose(self.w_to_v):
            raise ValidationError("square does not commute")

    @property
    def w(self) -> FiniteSSet:
        return self.w_to_u.source

    @property
    def u(self) -> FiniteSSet:
        return self.w_to_u.target

    @property
    def v(self) -> FiniteSSet:
        return self.w_to_v.target

    @property
    def x(self) -> FiniteSSet:
        return self.u_to_x.target


def identity_square(X: FiniteSSet) -> SSetSquare:
    i = SSetMap.identity_map(X)
    return SSetSquare(i, i, i, i)


def pushout_square(f: SSetMap, g: SSetMap) -> SSetSquare:
    """The strict pushout of a span, packaged as a square."""
    po = pushout(f, g)
    return SSetSquare(f, g, po.from_left, po.from_right)


def chain_square_of(sq: SSetSquare) -> ChainSquare:
    return ChainSquare(
        chain_map_of(sq.w_to_u),
        chain_map_of(sq.w_to_v),
        chain_map_of(sq.u_to_x),
        chain_map_of(sq.v_to_x),
    )


# -- double mapping cylinder -----------------------------------------------


@dataclass
class DoubleMappingCylinder:
    """Homotopy pushout model of a span, with its comparison maps."""

    space: FiniteSSet
    from_u: SSetMap
    from_v: SSetMap
    cylinder: ProductResult
    coproduct: PushoutResult  # U disjoint-union V
    gluing: PushoutResult
    strict: PushoutResult
    comparison: SSetMap  # to the strict pushout, collapsing the cylinder

    def corner_comparison(self, to_u: SSetMap, to_v: SSetMap, w_composite: SSetMap) -> SSetMap:
        """The induced map to any cocone corner.

        ``w_composite`` must be the common composite from the span source.
        """
        collapse = w_composite.compose(self.cylinder.proj_left)
        feet = self.coproduct.induced(to_u, to_v)
        return self.gluing.induced(collapse, feet)


def double_mapping_cylinder(f: SSetMap, g: SSetMap) -> DoubleMappingCylinder:
    if f.source != g.source:
        raise ValidationError("double mapping cylinder needs a shared source")
    W = f.source
    pr = cylinder(W)
    ends = disjoint_union(W, W)
    into_cyl = ends.induced(_end_inclusion(pr, "0"), _end_inclusion(pr, "1"))
    feet = disjoint_union(f.target, g.target)
    into_feet = ends.induced(
        feet.from_left.compose(f), feet.from_right.compose(g)
    )
    glue = pushout(into_cyl, into_feet)
    strict = pushout(f, g)
    collapse = strict.from_left.compose(f).compose(pr.proj_left)
    onto_feet = feet.induced(strict.from_left, strict.from_right)
    comparison = glue.induced(collapse, onto_feet)
    return DoubleMappingCylinder(
        glue.space,
        glue.from_right.compose(feet.from_left),
        glue.from_right.compose(feet.from_right),
        pr,
        feet,
        glue,
        strict,
        comparison,
    )


def is_homology_pushout(sq: SSetSquare) -> bool:
    """Is the comparison from the cylinder model to the corner a homology
    isomorphism?"""
    dmc = double_mapping_cylinder(sq.w_to_u, sq.w_to_v)
    comp = dmc.corner_comparison(
        sq.u_to_x, sq.v_to_x, sq.u_to_x.compose(sq.w_to_u)
    )
    return quasi_iso(chain_map_of(comp))


@dataclass(frozen=True)
class ExcisionReport:
    square_is_pushout: bool
    chain_bicartesian: bool

    @property
    def consistent(self) -> bool:
        """Pushout squares must have bicartesian chain images."""
        return (not self.square_is_pushout) or self.chain_bicartesian

    def to_record(self) -> dict:
        return {
            "square_is_pushout": self.square_is_pushout,
            "chain_bicartesian": self.chain_bicartesian,
            "consistent": self.consistent,
        }


def excision_check(sq: SSetSquare) -> ExcisionReport:
    return ExcisionReport(
        is_homology_pushout(sq),
        is_homotopy_bicartesian(chain_square_of(sq)),
    )


# -- covers ----------------------------------------------------------------


@dataclass
class CoverData:
    """A cover of a simplicial set by two subcomplexes."""

    X: FiniteSSet
    U: FiniteSSet
    V: FiniteSSet
    W: FiniteSSet = field(init=False)

    def __post_init__(self):
        if not is_name_subcomplex(self.X, self.U):
            raise ValidationError("first cover piece is not a subcomplex")
        if not is_name_subcomplex(self.X, self.V):
            raise ValidationError("second cover piece is not a subcomplex")
        covered = set(self.U.names) | set(self.V.names)
        if covered != set(self.X.names):
            missing = sorted(set(self.X.names) - covered)
            raise ValidationError(f"cover misses simplices: {missing}")
        self.W = subset_intersection(self.X, self.U, self.V)


def cover_from_names(X: FiniteSSet, u_names, v_names) -> CoverData:
    """Build a cover from generator names, closing each piece under faces."""
    U = subcomplex(X, face_closure(X, u_names))
    V = subcomplex(X, face_closure(X, v_names))
    return CoverData(X, U, V)


@dataclass
class CoverSES:
    """The inclusion sequence 0 -> N(W) -> N(U) + N(V) -> N(X) -> 0."""

    cover: CoverData
    reduced: bool
    into: ChainMap  # 0 -> N(W)
    left: ChainMap  # (i_WU, i_WV)
    right: ChainMap  # i_UX - i_VX
    out: ChainMap  # N(X) -> 0

    @property
    def maps(self) -> tuple[ChainMap, ...]:
        return (self.into, self.left, self.right, self.out)

    def verify(self) -> dict:
        lows = [m.source.low for m in self.maps[1:]]
        highs = [m.source.high for m in self.maps[1:]]
        return check_exact_sequence(self.maps, min(lows) - 1, max(highs) + 1)

    def is_exact(self) -> bool:
        return all(self.verify().values())


def _pointed_copy(cd: CoverData) -> tuple[FiniteSSet, FiniteSSet, FiniteSSet, FiniteSSet]:
    vertices = cd.W.nondeg(0)
    if not vertices:
        raise ValidationError("reduced cover sequence needs a vertex in the overlap")
    bp = cd.X.basepoint if cd.X.basepoint in vertices else vertices[0]
    return (
        pointed(cd.X, bp),
        pointed(cd.U, bp),
        pointed(cd.V, bp),
        pointed(cd.W, bp),
    )


def cover_short_exact_sequence(cd: CoverData, reduced: bool = False) -> CoverSES:
    if reduced:
        X, U, V, W = _pointed_copy(cd)
        chains = reduced_normalized_chains
        cmap = reduced_chain_map_of
    else:
        X, U, V, W = cd.X, cd.U, cd.V, cd.W
        chains = normalized_chains
        cmap = chain_map_of
    i_wu = cmap(SSetMap.inclusion(W, U))
    i_wv = cmap(SSetMap.inclusion(W, V))
    i_ux = cmap(SSetMap.inclusion(U, X))
    i_vx = cmap(SSetMap.inclusion(V, X))
    cW = chains(W)
    cUV = direct_sum(chains(U), chains(V))
    cX = chains(X)
    lo, hi = cUV.low, cUV.high
    alpha = ChainMap(
        cW,
        cUV,
        tuple(
            i_wu.block(n).vstack(i_wv.block(n))
            for n in range(min(cW.low, lo), max(cW.high, hi) + 1)
        ),
    )
    beta = ChainMap(
        cUV,
        cX,
        tuple(
            i_ux.block(n).hstack(i_vx.block(n).scale(-1))
            for n in range(min(lo, cX.low), max(hi, cX.high) + 1)
        ),
    )
    return CoverSES(
        cd,
        reduced,
        zero_map(zero_complex(), cW),
        alpha,
        beta,
        zero_map(cX, zero_complex()),
    )


# -- Mayer-Vietoris --------------------------------------------------------


@dataclass(frozen=True)
class LESEntry:
    degree: int
    tag: str  # "X_shifted" | "W" | "U_plus_V" | "X"
    group: HomologyGroup


@dataclass
class LongExactSequence:
    entries: tuple[LESEntry, ...]
    maps: tuple[IntMat, ...]  # matrices on the chosen homology generators
    exact: tuple[bool, ...]  # exactness at entries[1:], tail included
    reduced: bool

    def group(self, degree: int, tag: str) -> HomologyGroup:
        for e in self.entries:
            if e.degree == degree and e.tag == tag:
                return e.group
        raise KeyError((degree, tag))

    @property
    def all_exact(self) -> bool:
        return all(self.exact)

    def to_record(self) -> dict:
        return {
            "reduced": self.reduced,
            "entries": [
                {
                    "degree": e.degree,
                    "position": e.tag,
                    "rank": e.group.rank,
                    "torsion": list(e.group.torsion),
                }
                for e in self.entries
            ],
            "maps": [m.to_lists() for m in self.maps],
            "exact": list(self.exact),
        }


def _connecting(
    beta: ChainMap,
    alpha: ChainMap,
    n: int,
    pres_x: tuple[IntMat, PresentedGroup],
    pres_w: tuple[IntMat, PresentedGroup],
) -> IntMat:
    """Snake construction of the boundary map H_{n+1}(X) -> H_n(W)."""
    ZX = pres_x[0]
    ZW = pres_w[0]
    if ZX.cols == 0 or ZW.cols == 0:
        return IntMat.zero(ZW.cols, ZX.cols)
    lift = solve(beta.block(n + 1), ZX)
    if lift is None:
        raise ValidationError("cover sequence is not levelwise surjective")
    bdry = beta.source.boundary(n + 1) @ lift
    back = solve(alpha.block(n), bdry)
    if back is None:
        raise ValidationError("snake boundary does not come from the overlap")
    coords = solve(ZW, back)
    if coords is None:
        raise ValidationError("snake boundary is not a cycle")
    return coords


def mayer_vietoris(
    cd: CoverData, top_degree: int, reduced: bool = False
) -> LongExactSequence:
    from .chain import induced_map

    ses = cover_short_exact_sequence(cd, reduced=reduced)
    alpha, beta = ses.left, ses.right
    cW, cUV, cX = alpha.source, beta.source, beta.target
    pres_w = {n: homology_presentation(cW, n) for n in range(top_degree + 1)}
    pres_uv = {n: homology_presentation(cUV, n) for n in range(top_degree + 1)}
    pres_x = {n: homology_presentation(cX, n) for n in range(top_degree + 2)}

    entries = [
        LESEntry(top_degree, "X_shifted", pres_x[top_degree + 1][1].normal_form())
    ]
    maps: list[IntMat] = []
    pres_flat = [pres_x[top_degree + 1][1]]
    for n in range(top_degree, -1, -1):
        maps.append(_connecting(beta, alpha, n, pres_x[n + 1], pres_w[n]))
        entries.append(LESEntry(n, "W", pres_w[n][1].normal_form()))
        pres_flat.append(pres_w[n][1])
        maps.append(induced_map(alpha, n, src=pres_w[n], tgt=pres_uv[n]))
        entries.append(LESEntry(n, "U_plus_V", pres_uv[n][1].normal_form()))
        pres_flat.append(pres_uv[n][1])
        maps.append(induced_map(beta, n, src=pres_uv[n], tgt=pres_x[n]))
        entries.append(LESEntry(n, "X", pres_x[n][1].normal_form()))
        pres_flat.append(pres_x[n][1])

    trivial = PresentedGroup(0, IntMat.zero(0, 0))
    exact = []
    for i in range(1, len(entries)):
        left = maps[i - 1]
        middle = pres_flat[i]
        if i < len(maps):
            right = maps[i]
            target = pres_flat[i + 1]
        else:
            right = IntMat.zero(0, middle.gens)
            target = trivial
        exact.append(exact_at(left, middle, right, target))
    return LongExactSequence(tuple(entries), tuple(maps), tuple(exact), reduced)


# -- the identity-functor counterexample -----------------------------------


@dataclass(frozen=True)
class CounterexampleReport:
    """Numerical ingredients showing the identity functor is not excisive.

    The interval collapsing to the circle is a homology pushout, but the
    strict pullback of the collapsed square has a disconnected corner: its
    rank-2 degree-0 homology against the circle's infinite H_1 is the size
    mismatch at the heart of the argument.
    """

    pullback_H0_rank: int
    corner_H1: HomologyGroup
    square_is_pushout: bool
    pullback_counts: tuple[int, ...]

    def to_record(self) -> dict:
        return {
            "pullback_H0_rank": self.pullback_H0_rank,
            "corner_H1": {
                "rank": self.corner_H1.rank,
                "torsion": list(self.corner_H1.torsion),
            },
            "square_is_pushout": self.square_is_pushout,
            "pullback_counts": list(self.pullback_counts),
        }


def identity_counterexample_report() -> CounterexampleReport:
    seg = standard_simplex(1)
    ends = boundary(1)
    pt = standard_simplex(0)
    circle_q = quotient(seg, ends)
    circle = circle_q.space

    square = pushout_square(
        constant_map(ends, pt, "0"), SSetMap.inclusion(ends, seg)
    )
    pushout_ok = is_homology_pushout(square)

    vertex_in = constant_map(pt, circle, circle.basepoint)
    pb = sset_pullback(vertex_in, circle_q.projection)
    h0 = homology(normalized_chains(pb.space), 0)
    h1 = homology(normalized_chains(circle), 1)
    return CounterexampleReport(
        h0.rank, h1, pushout_ok, pb.space.counts()
    )
