"""Bounded complexes of finitely generated free abelian groups.

A ``ChainComplex`` stores a support window ``[low, high]``, one rank per
degree and one boundary matrix per internal degree; composites of
consecutive boundaries must vanish.  Homology is computed from a saturated
cycle basis and a Smith normal form of the boundary relations, entirely
over the integers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import StabilizationError, ValidationError
from .groups import HomologyGroup, PresentedGroup, group_from_relations
from .intmat import IntMat, kernel_basis, smith_normal_form, solve

__all__ = [
    "ChainComplex",
    "ChainMap",
    "ChainSquare",
    "Tower",
    "RealChain",
    "zero_complex",
    "single_complex",
    "homology",
    "homology_table",
    "homology_presentation",
    "induced_map",
    "is_acyclic",
    "l1_norm",
    "boundary_operator_norm",
    "loop_shift",
    "direct_sum",
    "mapping_cone",
    "total_complex_of_square",
    "is_homotopy_bicartesian",
    "check_exact_sequence",
    "sequential_colimit",
    "quasi_iso",
    "zero_map",
]


@dataclass(frozen=True)
class ChainComplex:
    """Free complex supported in degrees ``low..high``.

    ``ranks[i]`` is the rank in degree ``low + i``; ``boundaries[i]`` is the
    boundary out of degree ``low + 1 + i`` (a ``ranks[i] x ranks[i+1]``
    matrix).  Degrees outside the window are zero.
    """

    low: int
    high: int
    ranks: tuple[int, ...]
    boundaries: tuple[IntMat, ...]

    def __post_init__(self) -> None:
        if self.high < self.low:
            raise ValidationError("empty support window")
        n = self.high - self.low + 1
        if len(self.ranks) != n or len(self.boundaries) != n - 1:
            raise ValidationError("rank or boundary count does not match the window")
        if any(r < 0 for r in self.ranks):
            raise ValidationError("ranks must be nonnegative")
        for i, b in enumerate(self.boundaries):
            if (b.rows, b.cols) != (self.ranks[i], self.ranks[i + 1]):
                raise ValidationError(
                    f"boundary out of degree {self.low + 1 + i} has shape "
                    f"{b.rows}x{b.cols}, expected {self.ranks[i]}x{self.ranks[i + 1]}"
                )
        for i in range(len(self.boundaries) - 1):
            if not (self.boundaries[i] @ self.boundaries[i + 1]).is_zero():
                raise ValidationError(
                    f"boundary composite in degree {self.low + 2 + i} is nonzero"
                )

    def rank(self, n: int) -> int:
        if self.low <= n <= self.high:
            return self.ranks[n - self.low]
        return 0

    def boundary(self, n: int) -> IntMat:
        """The boundary map out of degree ``n`` (zero outside the window)."""
        if self.low + 1 <= n <= self.high:
            return self.boundaries[n - self.low - 1]
        return IntMat.zero(self.rank(n - 1), self.rank(n))

    @property
    def total_rank(self) -> int:
        return sum(self.ranks)

    def degrees(self):
        return range(self.low, self.high + 1)

    def is_zero_complex(self) -> bool:
        return all(r == 0 for r in self.ranks)


def zero_complex(low: int = 0, high: int = 0) -> ChainComplex:
    n = high - low + 1
    return ChainComplex(low, high, (0,) * n, tuple(
        IntMat.zero(0, 0) for _ in range(n - 1)
    ))


def single_complex(degree: int, rank: int = 1) -> ChainComplex:
    """A single free group placed in one degree."""
    return ChainComplex(degree, degree, (rank,), ())


@dataclass(frozen=True)
class ChainMap:
    """A degreewise map commuting with the boundaries."""

    source: ChainComplex
    target: ChainComplex
    blocks: tuple[IntMat, ...]  # indexed from min(source.low, target.low)

    def __post_init__(self) -> None:
        lo, hi = self._window()
        if len(self.blocks) != hi - lo + 1:
            raise ValidationError("block count does not match the combined window")
        for n in range(lo, hi + 1):
            b = self.blocks[n - lo]
            if (b.rows, b.cols) != (self.target.rank(n), self.source.rank(n)):
                raise ValidationError(f"block in degree {n} has the wrong shape")
        for n in range(lo + 1, hi + 1):
            left = self.target.boundary(n) @ self.block(n)
            right = self.block(n - 1) @ self.source.boundary(n)
            if left != right:
                raise ValidationError(f"chain map law fails in degree {n}")

    def _window(self) -> tuple[int, int]:
        return (
            min(self.source.low, self.target.low),
            max(self.source.high, self.target.high),
        )

    def block(self, n: int) -> IntMat:
        lo, hi = self._window()
        if lo <= n <= hi:
            return self.blocks[n - lo]
        return IntMat.zero(self.target.rank(n), self.source.rank(n))

    def compose(self, other: "ChainMap") -> "ChainMap":
        """``self of other``."""
        if other.target != self.source:
            raise ValidationError("chain maps are not composable")
        lo = min(other.source.low, self.target.low)
        hi = max(other.source.high, self.target.high)
        blocks = tuple(
            self.block(n) @ other.block(n) for n in range(lo, hi + 1)
        )
        return ChainMap(other.source, self.target, blocks)

    def is_degreewise_iso(self) -> bool:
        lo, hi = self._window()
        for n in range(lo, hi + 1):
            b = self.block(n)
            if b.rows != b.cols:
                return False
            if b.rows and not b.is_unimodular():
                return False
        return True

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)


def chain_map_from_blocks(source, target, blocks_by_degree) -> ChainMap:
    lo = min(source.low, target.low)
    hi = max(source.high, target.high)
    blocks = []
    for n in range(lo, hi + 1):
        b = blocks_by_degree.get(n)
        if b is None:
            b = IntMat.zero(target.rank(n), source.rank(n))
        blocks.append(b)
    return ChainMap(source, target, tuple(blocks))


def zero_map(source: ChainComplex, target: ChainComplex) -> ChainMap:
    return chain_map_from_blocks(source, target, {})


def identity_chain_map(c: ChainComplex) -> ChainMap:
    return chain_map_from_blocks(
        c, c, {n: IntMat.identity(c.rank(n)) for n in c.degrees()}
    )


# -- homology --------------------------------------------------------------


def homology_presentation(c: ChainComplex, n: int) -> tuple[IntMat, PresentedGroup]:
    """Cycle basis and presentation of the degree-n homology.

    Returns ``(Z, P)``: the columns of ``Z`` are a saturated basis of the
    cycles in degree ``n`` and ``P`` presents the homology on those
    generators, with one relation per boundary from degree ``n + 1``.
    """
    Z = kernel_basis(c.boundary(n))
    B = c.boundary(n + 1)
    W = solve(Z, B)
    if W is None:
        raise ValidationError("boundaries are not cycles; complex is corrupt")
    return Z, PresentedGroup(Z.cols, W)


def homology(c: ChainComplex, n: int) -> HomologyGroup:
    """Integral homology in degree ``n`` in invariant-factor normal form."""
    _, pres = homology_presentation(c, n)
    return pres.normal_form()


def homology_table(c: ChainComplex, low: int, high: int):
    return {n: homology(c, n) for n in range(low, high + 1)}


def is_acyclic(c: ChainComplex, margin: int = 1) -> bool:
    """All homology groups vanish across the support window."""
    return all(
        homology(c, n).is_zero
        for n in range(c.low - margin, c.high + margin + 1)
    )


def induced_map(
    f: ChainMap,
    n: int,
    src: tuple[IntMat, PresentedGroup] | None = None,
    tgt: tuple[IntMat, PresentedGroup] | None = None,
) -> IntMat:
    """Matrix of ``H_n(f)`` between the chosen homology presentations."""
    Zs, _ = src if src is not None else homology_presentation(f.source, n)
    Zt, _ = tgt if tgt is not None else homology_presentation(f.target, n)
    M = solve(Zt, f.block(n) @ Zs)
    if M is None:
        raise ValidationError("cycles do not map to cycles; not a chain map")
    return M


def quasi_iso(f: ChainMap) -> bool:
    """Does ``f`` induce an isomorphism on all homology groups?"""
    return is_acyclic(mapping_cone(f))


# -- norms -----------------------------------------------------------------


@dataclass(frozen=True)
class RealChain:
    """A finitely supported real chain in one degree of a complex."""

    degree: int
    coefficients: tuple[tuple[int, float], ...]  # (basis index, coefficient)


def l1_norm(chain: RealChain) -> float:
    """Sum of absolute values of the coefficients."""
    return float(sum(abs(a) for _, a in chain.coefficients))


def boundary_operator_norm(c: ChainComplex, n: int) -> float:
    """Operator norm of the boundary out of degree ``n`` for the l1 norms.

    Equals the maximal column sum of absolute values; in particular it is
    finite, witnessing boundedness of the boundary operator.
    """
    b = c.boundary(n)
    if b.cols == 0:
        return 0.0
    return float(max(
        sum(abs(b.entries[i][j]) for i in range(b.rows)) for j in range(b.cols)
    ))


# -- elementary constructions ---------------------------------------------


def loop_shift(c: ChainComplex, times: int = 1) -> ChainComplex:
    """Reindex so that degree ``n`` holds what was degree ``n + times``."""
    if times < 0:
        raise ValidationError("shift count must be nonnegative")
    return ChainComplex(c.low - times, c.high - times, c.ranks, c.boundaries)


def loop_shift_map(f: ChainMap, times: int = 1) -> ChainMap:
    return ChainMap(
        loop_shift(f.source, times), loop_shift(f.target, times), f.blocks
    )


def _common_window(a: ChainComplex, b: ChainComplex) -> tuple[int, int]:
    return min(a.low, b.low), max(a.high, b.high)


def direct_sum(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """Degreewise sum with block-diagonal boundaries (``a`` block first)."""
    lo, hi = _common_window(a, b)
    ranks = tuple(a.rank(n) + b.rank(n) for n in range(lo, hi + 1))
    boundaries = tuple(
        IntMat.block_diag([a.boundary(n), b.boundary(n)])
        for n in range(lo + 1, hi + 1)
    )
    return ChainComplex(lo, hi, ranks, boundaries)


def mapping_cone(f: ChainMap) -> ChainComplex:
    """Cone of ``f``: degree ``n`` is ``target_n + source_{n-1}``.

    Boundary ``(y, x) -> (dy + f x, -dx)``; acyclic exactly when ``f`` is a
    quasi-isomorphism.
    """
    s, t = f.source, f.target
    lo = min(t.low, s.low + 1)
    hi = max(t.high, s.high + 1)
    ranks = tuple(t.rank(n) + s.rank(n - 1) for n in range(lo, hi + 1))
    boundaries = []
    for n in range(lo + 1, hi + 1):
        top = t.boundary(n).hstack(f.block(n - 1))
        bottom = IntMat.zero(s.rank(n - 2), t.rank(n)).hstack(
            s.boundary(n - 1).scale(-1)
        )
        boundaries.append(top.vstack(bottom))
    return ChainComplex(lo, hi, ranks, tuple(boundaries))


def cone_inclusion(f: ChainMap) -> ChainMap:
    """The canonical inclusion of the target into the cone."""
    cone = mapping_cone(f)
    t = f.target
    blocks = {}
    for n in cone.degrees():
        m = IntMat.identity(t.rank(n)).vstack(
            IntMat.zero(f.source.rank(n - 1), t.rank(n))
        )
        blocks[n] = m
    return chain_map_from_blocks(t, cone, blocks)


# -- squares ---------------------------------------------------------------


@dataclass(frozen=True)
class ChainSquare:
    """A strictly commuting square of chain maps.

    ``w_to_u``, ``w_to_v`` out of the initial corner; ``u_to_x``, ``v_to_x``
    into the final corner.
    """

    w_to_u: ChainMap
    w_to_v: ChainMap
    u_to_x: ChainMap
    v_to_x: ChainMap

    def __post_init__(self) -> None:
        if self.w_to_u.source != self.w_to_v.source:
            raise ValidationError("square legs start at different corners")
        if self.u_to_x.target != self.v_to_x.target:
            raise ValidationError("square legs end at different corners")
        if self.w_to_u.target != self.u_to_x.source:
            raise ValidationError("square does not paste along U")
        if self.w_to_v.target != self.v_to_x.source:
            raise ValidationError("square does not paste along V")
        left = self.u_to_x.compose(self.w_to_u)
        right = self.v_to_x.compose(self.w_to_v)
        if left.blocks != right.blocks:
            raise ValidationError("square does not commute strictly")

    @property
    def w(self) -> ChainComplex:
        return self.w_to_u.source

    @property
    def u(self) -> ChainComplex:
        return self.w_to_u.target

    @property
    def v(self) -> ChainComplex:
        return self.w_to_v.target

    @property
    def x(self) -> ChainComplex:
        return self.u_to_x.target


def total_complex_of_square(sq: ChainSquare) -> ChainComplex:
    """Iterated mapping cone of ``W -> U + V -> X``.

    Degree ``n`` is ``X_n + U_{n-1} + V_{n-1} + W_{n-2}`` with the standard
    cone signs; acyclicity of this complex is the homotopy-bicartesian test.
    """
    w, u, v, x = sq.w, sq.u, sq.v, sq.x
    # First cone: over (w_to_u, w_to_v) : W -> U + V.
    uv = direct_sum(u, v)
    into_sum = chain_map_from_blocks(w, uv, {
        n: sq.w_to_u.block(n).vstack(sq.w_to_v.block(n))
        for n in range(w.low, w.high + 1)
    })
    cone1 = mapping_cone(into_sum)
    # Collapse map (u, v, w) -> p(u) - q(v), a chain map by commutativity.
    collapse = chain_map_from_blocks(cone1, x, {
        n: sq.u_to_x.block(n)
        .hstack(sq.v_to_x.block(n).scale(-1))
        .hstack(IntMat.zero(x.rank(n), w.rank(n - 1)))
        for n in cone1.degrees()
    })
    return mapping_cone(collapse)


def is_homotopy_bicartesian(sq: ChainSquare, margin: int = 1) -> bool:
    """True when the total complex of the square is acyclic."""
    return is_acyclic(total_complex_of_square(sq), margin=margin)


# -- exact sequences -------------------------------------------------------


def check_exact_sequence(maps, low: int, high: int):
    """Exactness of a composable run of chain maps, slot by slot.

    ``maps[j]`` and ``maps[j+1]`` meet at slot ``j+1`` (the shared complex).
    Returns a dict ``(slot, degree) -> bool``; raises when consecutive
    composites are nonzero, since then exactness is not even well posed.
    """
    maps = list(maps)
    for f, g in zip(maps, maps[1:]):
        if f.target != g.source:
            raise ValidationError("sequence is not composable")
        if not g.compose(f).is_zero():
            raise ValidationError("consecutive composite is nonzero")
    report: dict[tuple[int, int], bool] = {}
    for j in range(len(maps) - 1):
        f, g = maps[j], maps[j + 1]
        middle = f.target
        for n in range(low, high + 1):
            # im(f_n) = ker(g_n) as subgroups of the free middle term.
            ker = kernel_basis(g.block(n))
            report[(j + 1, n)] = solve(f.block(n), ker) is not None
    return report


# -- towers ----------------------------------------------------------------


@dataclass(frozen=True)
class Tower:
    """A finite sequence of complexes with structure maps stage to stage."""

    stages: tuple[ChainComplex, ...]
    maps: tuple[ChainMap, ...]

    def __post_init__(self) -> None:
        if len(self.maps) != len(self.stages) - 1:
            raise ValidationError("a tower needs one map between consecutive stages")
        for i, f in enumerate(self.maps):
            if f.source != self.stages[i] or f.target != self.stages[i + 1]:
                raise ValidationError(f"tower map {i} has the wrong endpoints")

    def __len__(self) -> int:
        return len(self.stages)


def sequential_colimit(t: Tower, probe: int | None = None) -> ChainComplex:
    """Value of a tower that stabilizes within the probed range.

    Scans for the first stage from which every later structure map is a
    degreewise isomorphism and returns that stage.  Raises
    :class:`StabilizationError` otherwise; no extrapolation is attempted.
    """
    last = len(t.maps) if probe is None else min(probe, len(t.maps))
    iso = [f.is_degreewise_iso() for f in t.maps[:last]]
    # Stabilization needs a nonempty certified tail; a bare final stage is
    # no evidence, so the scan stops one short of the probe horizon.
    for k in range(last):
        if all(iso[k:]):
            return t.stages[k]
    raise StabilizationError(
        f"tower does not stabilize within {last} structure maps"
    )
