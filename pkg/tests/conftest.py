"""Shared corpus builders and exhaustive oracles for the test suite."""

from hypothesis import HealthCheck, settings

from ssetkit.build import product, quotient
from ssetkit.nerve import Preorder
from ssetkit.sset import FiniteSSet, boundary, pointed, standard_simplex

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def check_simplicial_identities(X: FiniteSSet, extra: int = 2) -> int:
    """Assert every simplicial identity on all simplices, degenerate ones
    included, up to ``extra`` dimensions above the top cell.  Returns the
    number of identities checked."""
    checked = 0
    top = X.top_dim + extra
    for k in range(top + 1):
        for sx in X.all_simplices(k):
            if k >= 2:
                for j in range(k + 1):
                    for i in range(j):
                        lhs = X.face(X.face(sx, j), i)
                        rhs = X.face(X.face(sx, i), j - 1)
                        assert lhs == rhs, (X, sx, i, j)
                        checked += 1
            for j in range(k + 1):
                sj = X.degeneracy(sx, j)
                for i in range(j + 1):
                    lhs = X.degeneracy(sj, i)
                    rhs = X.degeneracy(X.degeneracy(sx, i), j + 1)
                    assert lhs == rhs, (X, sx, i, j)
                    checked += 1
                if k >= 1:
                    for i in range(k + 2):
                        out = X.face(sj, i)
                        if i in (j, j + 1):
                            assert out == sx, (X, sx, i, j)
                        elif i < j:
                            assert out == X.degeneracy(X.face(sx, i), j - 1)
                        else:
                            assert out == X.degeneracy(X.face(sx, i - 1), j)
                        checked += 1
                else:
                    for i in (j, j + 1):
                        assert X.face(sj, i) == sx, (X, sx, i, j)
                        checked += 1
    return checked


def all_posets(max_elements: int = 4):
    """Every labeled poset on 0..max_elements elements, as Preorder values."""
    out = []
    for n in range(max_elements + 1):
        elems = tuple(str(i) for i in range(n))
        offdiag = [(a, b) for a in elems for b in elems if a != b]
        diag = frozenset((e, e) for e in elems)
        for mask in range(1 << len(offdiag)):
            rel = {offdiag[i] for i in range(len(offdiag)) if mask >> i & 1}
            ok = True
            for a, b in rel:
                if (b, a) in rel:
                    ok = False
                    break
            if not ok:
                continue
            full = rel | set(diag)
            for a, b in rel:
                for c, d in rel:
                    if b == c and (a, d) not in full:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            out.append(Preorder(elems, frozenset(full)))
    return out


def circle() -> FiniteSSet:
    return quotient(standard_simplex(1), boundary(1)).space


def two_sphere() -> FiniteSSet:
    return quotient(standard_simplex(2), boundary(2)).space


def four_test_spaces() -> dict[str, FiniteSSet]:
    """The pointed spaces every tower and suspension criterion runs over."""
    return {
        "S0": pointed(boundary(1), "0"),
        "S1": circle(),
        "bd2": pointed(boundary(2), "0"),
        "S2": two_sphere(),
    }
