"""Horn fillers, inner-horn certification, composition witnesses."""

import pytest

from conftest import all_posets
from ssetkit.errors import ValidationError
from ssetkit.nerve import nerve_category, nerve_preorder, square_category
from ssetkit.quasicat import (
    CompositionWitness,
    HornMap,
    SquareDiagram,
    compositions,
    horn_fillers,
    is_quasicategory_up_to,
)
from ssetkit.sset import SSetMap, Simplex, boundary, horn, standard_simplex


def _horn_map(n, i, target, images):
    L = horn(n, i)
    return HornMap(n, i, target, SSetMap(L, target, images))


def test_inner_horn_into_triangle_has_unique_filler():
    d2 = standard_simplex(2)
    hm = _horn_map(2, 1, d2, {
        "0": Simplex((), "0", 0),
        "1": Simplex((), "1", 0),
        "2": Simplex((), "2", 0),
        "01": Simplex((), "01", 1),
        "12": Simplex((), "12", 1),
    })
    fillers = horn_fillers(hm)
    assert fillers == [Simplex((), "012", 2)]


def test_inner_horn_into_circle_boundary_has_no_filler():
    b2 = boundary(2)
    hm = _horn_map(2, 1, b2, {
        "0": Simplex((), "0", 0),
        "1": Simplex((), "1", 0),
        "2": Simplex((), "2", 0),
        "01": Simplex((), "01", 1),
        "12": Simplex((), "12", 1),
    })
    assert horn_fillers(hm) == []


def test_degenerate_fillers_count():
    # a horn lying on a single edge fills by a degenerate triangle
    d1 = standard_simplex(1)
    hm = _horn_map(2, 1, d1, {
        "0": Simplex((), "0", 0),
        "1": Simplex((), "1", 0),
        "2": Simplex((), "1", 0),
        "01": Simplex((), "01", 1),
        "12": Simplex((0,), "1", 1),
    })
    assert horn_fillers(hm) == [Simplex((1,), "01", 2)]


def test_simplices_pass_up_to_three():
    for n in range(4):
        v = is_quasicategory_up_to(standard_simplex(n), 3)
        assert v.ok and bool(v) and v.checked_dim == 3


def test_boundary_two_fails_with_witness():
    v = is_quasicategory_up_to(boundary(2), 2)
    assert not v.ok
    w = v.witness
    assert (w.n, w.i) == (2, 1)
    assert w.is_inner
    assert horn_fillers(w) == []


def test_poset_nerves_pass():
    for P in all_posets(3):
        v = is_quasicategory_up_to(nerve_preorder(P, 4), 3)
        assert v.ok


def test_poset_nerve_inner_fillers_unique():
    for P in all_posets(3):
        N = nerve_preorder(P, 4)
        for n in (2, 3):
            for i in range(1, n):
                L = horn(n, i)
                from ssetkit.function_complex import enumerate_maps

                for assignment in enumerate_maps(L, N):
                    assert len(horn_fillers(HornMap(n, i, N, assignment))) == 1


def test_low_dimension_cap_rejected():
    with pytest.raises(ValidationError):
        is_quasicategory_up_to(standard_simplex(1), 1)


def test_composition_in_triangle():
    d2 = standard_simplex(2)
    f = Simplex((), "01", 1)
    g = Simplex((), "12", 1)
    out = compositions(d2, f, g)
    assert len(out) == 1
    w = out[0]
    assert w.h == Simplex((), "02", 1)
    assert w.sigma == Simplex((), "012", 2)


def test_composition_with_identity_edge():
    d1 = standard_simplex(1)
    e = Simplex((), "01", 1)
    idv = Simplex((0,), "1", 1)
    out = compositions(d1, e, idv)
    assert any(w.h == e and w.sigma == Simplex((1,), "01", 2) for w in out)


def test_composition_rejects_noncomposable():
    d2 = standard_simplex(2)
    with pytest.raises(ValidationError):
        compositions(d2, Simplex((), "01", 1), Simplex((), "01", 1))
    with pytest.raises(ValidationError):
        compositions(d2, Simplex((), "012", 2), Simplex((), "01", 1))


def test_composition_in_poset_nerve_unique():
    N = nerve_category(square_category())
    out = compositions(N, Simplex((), "f", 1), Simplex((), "g", 1))
    assert len(out) == 1
    assert out[0].h == Simplex((), "h", 1)


def test_witness_face_layout_enforced():
    d2 = standard_simplex(2)
    with pytest.raises(ValidationError):
        CompositionWitness(
            f=Simplex((), "12", 1),
            g=Simplex((), "01", 1),
            h=Simplex((), "02", 1),
            sigma=Simplex((), "012", 2),
            space=d2,
        )


def test_square_diagram_from_triangles():
    N = nerve_category(square_category())
    sq = SquareDiagram.from_triangles(
        N, Simplex((), "f|g", 2), Simplex((), "fp|gp", 2)
    )
    assert sq.corner("00") == Simplex((), "00", 0)
    assert sq.corner("11") == Simplex((), "11", 0)
    assert sq.edge("h") == Simplex((), "h", 1)
    with pytest.raises(ValidationError):
        sq.corner("22")


def test_square_diagram_needs_matching_triangles():
    d2 = standard_simplex(2)
    with pytest.raises(ValidationError):
        SquareDiagram.from_triangles(
            d2, Simplex((), "012", 2), Simplex((0,), "01", 2)
        )
