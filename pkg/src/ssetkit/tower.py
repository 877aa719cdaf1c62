"""Finite stages of the best excisive approximation.

A stage evaluator packages a chains-level functor F together with the
comparison maps of the sequential diagram whose n-th entry is the n-fold
desuspension of F on the n-fold reduced suspension.  The colimit of that
diagram is the excisive approximation; here it is probed through finitely
many stages and certified stable or reported as undecided.

The built-in ``reduced_chains_evaluator`` realizes the comparison
Ñ(Y) -> ΩÑ(ΣY) by the simplicial prism: a k-simplex y of Y sweeps out the
(k+1)-chain sum of its degenerate lifts paired with the staircase simplices
of the interval, with alternating signs and a degree twist that makes the
assignment commute with the boundaries once both cylinder ends die in the
suspension quotient.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .chain import (
    ChainComplex,
    ChainMap,
    Tower,
    chain_map_from_blocks,
    homology_table,
    loop_shift,
    loop_shift_map,
    sequential_colimit,
    zero_complex,
    zero_map,
)
from .delta import MonotoneMap, word_of_epi
from .errors import ValidationError
from .excision import SuspensionData, reduced_suspension_data
from .intmat import IntMat
from .simplicial_chains import chain_basis, reduced_normalized_chains
from .sset import FiniteSSet, Simplex, pointed, standard_simplex

__all__ = [
    "StageEvaluator",
    "ReducednessCertificate",
    "stage",
    "tower",
    "p1_approximation",
    "check_reduced",
    "reduced_chains_evaluator",
    "l1_mock_evaluator",
]


@dataclass(frozen=True)
class StageEvaluator:
    """A named tower generator.

    ``eval(X, n)`` is the full n-th stage (desuspensions already applied);
    ``structure_map(X, n)`` is the comparison from stage n to stage n+1.
    """

    name: str
    eval: Callable[[FiniteSSet, int], ChainComplex]
    structure_map: Callable[[FiniteSSet, int], ChainMap]


@dataclass(frozen=True)
class ReducednessCertificate:
    """Homology of the evaluator on the one-point space, stage by stage."""

    evaluator: str
    witness: tuple[tuple[int, tuple], ...]  # (stage, homology table)
    ok: bool


def _require_pointed(X: FiniteSSet) -> None:
    if X.basepoint is None:
        raise ValidationError("tower stages need a pointed simplicial set")


def stage(F: StageEvaluator, X: FiniteSSet, n: int) -> ChainComplex:
    _require_pointed(X)
    if n < 0:
        raise ValidationError("stage index must be a natural number")
    return F.eval(X, n)


def tower(F: StageEvaluator, X: FiniteSSet, N: int) -> Tower:
    _require_pointed(X)
    if N < 1:
        raise ValidationError("a tower needs at least two stages")
    stages = tuple(F.eval(X, n) for n in range(N + 1))
    maps = tuple(F.structure_map(X, n) for n in range(N))
    for n, u in enumerate(maps):
        if u.source != stages[n] or u.target != stages[n + 1]:
            raise ValidationError(f"structure map {n} does not match its stages")
    return Tower(stages, maps)


def p1_approximation(F: StageEvaluator, X: FiniteSSet, N: int) -> ChainComplex:
    return sequential_colimit(tower(F, X, N))


def check_reduced(F: StageEvaluator, N: int) -> ReducednessCertificate:
    pt = pointed(standard_simplex(0), "0")
    witness = []
    ok = True
    for n in range(N + 1):
        c = F.eval(pt, n)
        table = homology_table(c, c.low, c.high)
        witness.append((n, tuple(sorted(table.items()))))
        if any(not g.is_zero for g in table.values()):
            ok = False
    return ReducednessCertificate(F.name, tuple(witness), ok)


# -- the reduced-chains evaluator ------------------------------------------


def _staircase(i: int, k: int) -> Simplex:
    """The (k+1)-simplex of the interval sending 0..i to 0 and the rest to 1."""
    values = (0,) * (i + 1) + (1,) * (k + 1 - i)
    return Simplex(word_of_epi(MonotoneMap(k + 1, 1, values)), "01", k + 1)


class _ReducedChainsStages:
    """Caches iterated suspensions and their reduced chains per base space."""

    def __init__(self) -> None:
        self._susp: dict[FiniteSSet, SuspensionData] = {}
        self._chains: dict[FiniteSSet, ChainComplex] = {}

    def _suspension(self, Y: FiniteSSet) -> SuspensionData:
        if Y not in self._susp:
            self._susp[Y] = reduced_suspension_data(Y)
        return self._susp[Y]

    def space(self, X: FiniteSSet, n: int) -> FiniteSSet:
        Y = X
        for _ in range(n):
            Y = self._suspension(Y).space
        return Y

    def chains(self, Y: FiniteSSet) -> ChainComplex:
        if Y not in self._chains:
            self._chains[Y] = reduced_normalized_chains(Y)
        return self._chains[Y]

    def eval(self, X: FiniteSSet, n: int) -> ChainComplex:
        _require_pointed(X)
        return loop_shift(self.chains(self.space(X, n)), n)

    def _prism_map(self, Y: FiniteSSet) -> ChainMap:
        """The comparison from the chains of Y into the desuspended chains
        of its suspension."""
        sd = self._suspension(Y)
        source = self.chains(Y)
        target = loop_shift(self.chains(sd.space), 1)
        blocks: dict[int, IntMat] = {}
        for k in range(source.low, source.high + 1):
            basis = chain_basis(Y, k, reduced=True)
            out_basis = chain_basis(sd.space, k + 1, reduced=True)
            index = {name: r for r, name in enumerate(out_basis)}
            m = [[0] * len(basis) for _ in range(len(out_basis))]
            for col, name in enumerate(basis):
                for i in range(k + 1):
                    lift = Simplex((i,), name, k + 1)
                    img = sd.pair_class(lift, _staircase(i, k))
                    if img.is_degenerate or img.base not in index:
                        continue
                    sign = -1 if (k + i) % 2 else 1
                    m[index[img.base]][col] += sign
            blocks[k] = IntMat(len(out_basis), len(basis), tuple(tuple(r) for r in m))
        return chain_map_from_blocks(source, target, blocks)

    def structure_map(self, X: FiniteSSet, n: int) -> ChainMap:
        _require_pointed(X)
        return loop_shift_map(self._prism_map(self.space(X, n)), n)


def reduced_chains_evaluator() -> StageEvaluator:
    st = _ReducedChainsStages()
    return StageEvaluator("reduced_chains", st.eval, st.structure_map)


# -- the hard-coded vanishing evaluator ------------------------------------


def l1_mock_evaluator() -> StageEvaluator:
    """Reduced chains below stage 2, identically zero from stage 2 on.

    Stand-in for a functor that vanishes on all simply connected spaces:
    double suspensions are simply connected, so every stage from 2 up is
    zero and the tower's colimit collapses.
    """
    st = _ReducedChainsStages()

    def eval(X: FiniteSSet, n: int) -> ChainComplex:
        _require_pointed(X)
        if n >= 2:
            return zero_complex()
        return st.eval(X, n)

    def structure_map(X: FiniteSSet, n: int) -> ChainMap:
        _require_pointed(X)
        if n == 0:
            return st.structure_map(X, 0)
        return zero_map(eval(X, n), eval(X, n + 1))

    return StageEvaluator("l1_mock", eval, structure_map)
