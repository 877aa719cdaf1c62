"""Suspensions, homotopy pushouts, cover sequences, Mayer-Vietoris."""

import pytest

from conftest import check_simplicial_identities, circle, four_test_spaces, two_sphere
from ssetkit.chain import homology, homology_table
from ssetkit.errors import ValidationError
from ssetkit.excision import (
    CoverData,
    SSetSquare,
    chain_square_of,
    cone,
    cover_from_names,
    cover_short_exact_sequence,
    cylinder,
    double_mapping_cylinder,
    excision_check,
    identity_counterexample_report,
    identity_square,
    is_homology_pushout,
    mayer_vietoris,
    pushout_square,
    reduced_suspension,
    reduced_suspension_data,
    unreduced_suspension,
)
from ssetkit.simplicial_chains import (
    normalized_chains,
    reduced_normalized_chains,
)
from ssetkit.sset import (
    SSetMap,
    boundary,
    constant_map,
    face_closure,
    pointed,
    standard_simplex,
    subcomplex,
)


def _reduced_table(X, top):
    return homology_table(reduced_normalized_chains(X), 0, top)


# -- cylinders, cones, suspensions -----------------------------------------


def test_cylinder_counts_and_identities():
    cyl = cylinder(boundary(1))
    assert cyl.space.counts() == (4, 2)
    cyl2 = cylinder(standard_simplex(1))
    assert cyl2.space.counts() == (4, 5, 2)
    assert check_simplicial_identities(cyl2.space) > 0


def test_cone_is_contractible():
    for X in [boundary(1), boundary(2), circle()]:
        c = cone(X)
        t = homology_table(normalized_chains(c), 0, 3)
        assert t[0].rank == 1
        assert all(t[n].rank == 0 and t[n].torsion == () for n in (1, 2, 3))


def test_cone_of_empty_rejected():
    from ssetkit.sset import FiniteSSet

    with pytest.raises(ValidationError):
        cone(FiniteSSet((), {}))


def test_unreduced_suspension_of_circle_boundary():
    S = unreduced_suspension(boundary(2))
    t = homology_table(normalized_chains(S), 0, 3)
    assert (t[0].rank, t[1].rank, t[2].rank, t[3].rank) == (1, 0, 1, 0)
    assert check_simplicial_identities(S) > 0


def test_unreduced_suspension_of_two_points():
    S = unreduced_suspension(boundary(1))
    t = homology_table(normalized_chains(S), 0, 2)
    assert (t[0].rank, t[1].rank) == (1, 1)


def test_reduced_suspension_shifts_homology():
    for name, X in four_test_spaces().items():
        SX = reduced_suspension(X)
        assert SX.basepoint is not None
        before = _reduced_table(X, 2)
        after = _reduced_table(SX, 3)
        for k in range(0, 3):
            assert (after[k + 1].rank, after[k + 1].torsion) == (
                before[k].rank, before[k].torsion), name
        assert after[0].rank == 0


def test_reduced_suspension_iterated():
    S0 = four_test_spaces()["S0"]
    SS = reduced_suspension(reduced_suspension(S0))
    t = _reduced_table(SS, 2)
    assert (t[0].rank, t[1].rank, t[2].rank) == (0, 0, 1)


def test_suspension_data_exposes_the_collapse():
    sd = reduced_suspension_data(four_test_spaces()["S0"])
    assert sd.space == reduced_suspension(four_test_spaces()["S0"])
    assert sd.collapse.projection.target == sd.space


def test_reduced_suspension_needs_basepoint():
    with pytest.raises(ValidationError):
        reduced_suspension(boundary(1))


# -- squares and homotopy pushout detection --------------------------------


def test_square_must_commute():
    from ssetkit.sset import Simplex

    d1 = standard_simplex(1)
    pt = standard_simplex(0)
    b1 = boundary(1)
    to_pt = constant_map(b1, pt, "0")
    incl = SSetMap.inclusion(b1, d1)
    at0 = SSetMap(pt, d1, {"0": Simplex((), "0", 0)})
    # one composite lands at the vertex, the other is the identity: rejected
    with pytest.raises(ValidationError):
        SSetSquare(to_pt, incl, at0, SSetMap.identity_map(d1))


def test_double_mapping_cylinder_of_circle_span():
    b1 = boundary(1)
    pt = standard_simplex(0)
    f = constant_map(b1, pt, "0")
    g = SSetMap.inclusion(b1, standard_simplex(1))
    dmc = double_mapping_cylinder(f, g)
    t = homology_table(normalized_chains(dmc.space), 0, 2)
    assert (t[0].rank, t[1].rank, t[2].rank) == (1, 1, 0)
    # comparison to the strict pushout is a homology isomorphism here
    from ssetkit.chain import quasi_iso
    from ssetkit.simplicial_chains import chain_map_of

    assert quasi_iso(chain_map_of(dmc.comparison))


def test_homology_pushout_verdicts():
    b1 = boundary(1)
    d1 = standard_simplex(1)
    pt = standard_simplex(0)
    collapse_sq = pushout_square(constant_map(b1, pt, "0"),
                                 SSetMap.inclusion(b1, d1))
    assert is_homology_pushout(collapse_sq)
    assert identity_square(boundary(2)).w_to_u.source == boundary(2)
    assert is_homology_pushout(identity_square(boundary(2)))

    # collapsed square claiming the circle as its corner: not a pushout
    S1 = circle()
    const = constant_map(pt, S1, S1.nondeg(0)[0])
    ident = SSetMap.identity_map(pt)
    bad = SSetSquare(ident, ident, const, const)
    assert not is_homology_pushout(bad)


def test_excision_reports():
    b1 = boundary(1)
    d1 = standard_simplex(1)
    pt = standard_simplex(0)
    good = excision_check(pushout_square(constant_map(b1, pt, "0"),
                                         SSetMap.inclusion(b1, d1)))
    assert good.square_is_pushout and good.chain_bicartesian
    assert good.consistent
    assert good.to_record() == {"square_is_pushout": True,
                                "chain_bicartesian": True,
                                "consistent": True}

    S1 = circle()
    const = constant_map(pt, S1, S1.nondeg(0)[0])
    ident = SSetMap.identity_map(pt)
    bad = excision_check(SSetSquare(ident, ident, const, const))
    assert not bad.square_is_pushout and not bad.chain_bicartesian
    assert bad.consistent  # not-a-pushout makes no bicartesian prediction


# -- covers and the inclusion short exact sequence -------------------------


def _two_arc_cover():
    return cover_from_names(boundary(2), ["01", "12"], ["02"])


def _cover_battery():
    b2 = boundary(2)
    d2 = standard_simplex(2)
    d1 = standard_simplex(1)
    covers = [
        _two_arc_cover(),
        # both pieces the whole space
        cover_from_names(b2, list(b2.names), list(b2.names)),
        # one piece everything, the other a point
        cover_from_names(d2, ["012"], ["0"]),
        # solid triangle split into the face and an edge
        cover_from_names(d2, ["012"], ["12"]),
        # disjoint pieces, empty overlap
        cover_from_names(boundary(1), ["0"], ["1"]),
        # interval covered by itself and an endpoint
        cover_from_names(d1, ["01"], ["1"]),
    ]
    return covers


def test_cover_data_validation():
    b2 = boundary(2)
    with pytest.raises(ValidationError):
        cover_from_names(b2, ["01"], ["02"])  # does not cover 12
    d2 = standard_simplex(2)
    U = subcomplex(d2, face_closure(d2, ["01"]))
    with pytest.raises(ValidationError):
        CoverData(d2, U, boundary(2))  # V not a named subcomplex of X


def test_cover_ses_exact_for_battery():
    covers = _cover_battery()
    assert len(covers) >= 5
    for cd in covers:
        ses = cover_short_exact_sequence(cd)
        assert ses.is_exact()
        report = ses.verify()
        assert report and all(report.values())


def test_cover_ses_reduced_two_arcs():
    ses = cover_short_exact_sequence(_two_arc_cover(), reduced=True)
    assert ses.reduced
    assert ses.is_exact()


def test_cover_ses_reduced_needs_overlap_vertex():
    disjoint = cover_from_names(boundary(1), ["0"], ["1"])
    with pytest.raises(ValidationError):
        cover_short_exact_sequence(disjoint, reduced=True)


# -- Mayer-Vietoris --------------------------------------------------------


def test_mv_two_arcs_unreduced():
    les = mayer_vietoris(_two_arc_cover(), 2)
    assert les.all_exact
    assert les.group(1, "X").rank == 1
    assert les.group(0, "W").rank == 2
    assert les.group(0, "U_plus_V").rank == 2
    assert les.group(0, "X").rank == 1
    # connecting map out of the circle class hits the vertex difference
    idx = next(i for i, e in enumerate(les.entries)
               if (e.degree, e.tag) == (1, "X"))
    assert les.maps[idx].to_lists() == [[-1], [1]]


def test_mv_two_arcs_reduced():
    les = mayer_vietoris(_two_arc_cover(), 2, reduced=True)
    assert les.all_exact
    assert les.group(1, "X").rank == 1
    assert les.group(0, "W").rank == 1
    assert les.group(0, "U_plus_V").rank == 0
    idx = next(i for i, e in enumerate(les.entries)
               if (e.degree, e.tag) == (1, "X"))
    assert les.maps[idx].to_lists() == [[1]]


def test_mv_contractible_cover_reduced_vanishes():
    d2 = standard_simplex(2)
    for cd in [cover_from_names(d2, ["012"], ["12"]),
               cover_from_names(d2, ["012"], ["0"])]:
        les = mayer_vietoris(cd, 2, reduced=True)
        assert les.all_exact
        for e in les.entries:
            assert e.group.rank == 0 and e.group.torsion == ()


def test_mv_exactness_for_battery():
    for cd in _cover_battery():
        assert mayer_vietoris(cd, 2).all_exact
        if cd.W.nondeg(0):  # the reduced form needs a vertex in the overlap
            assert mayer_vietoris(cd, 2, reduced=True).all_exact


def test_mv_sphere_cover():
    # the 2-sphere as two half-shells meeting in a square equator
    S = boundary(3)
    cd = cover_from_names(S, ["123", "023"], ["013", "012"])
    assert cd.W.counts() == (4, 4)  # the 4-gon equator
    les = mayer_vietoris(cd, 3)
    assert les.all_exact
    assert les.group(2, "X").rank == 1
    assert les.group(1, "W").rank == 1
    # the connecting map carries the sphere class onto the equator circle
    idx = next(i for i, e in enumerate(les.entries)
               if (e.degree, e.tag) == (2, "X"))
    mat = les.maps[idx]
    assert mat.cols == 1 and not mat.is_zero()


def test_mv_record_shape():
    les = mayer_vietoris(_two_arc_cover(), 1)
    rec = les.to_record()
    assert all(rec["exact"]) and isinstance(rec["entries"], list)
    assert {e["position"] for e in rec["entries"]} >= {"W", "U_plus_V", "X"}


# -- the identity-functor counterexample -----------------------------------


def test_identity_counterexample_report():
    rep = identity_counterexample_report()
    assert rep.pullback_H0_rank == 2
    assert rep.corner_H1.rank == 1 and rep.corner_H1.torsion == ()
    assert rep.square_is_pushout
    assert rep.pullback_counts == (2,)
    rec = rep.to_record()
    assert rec["pullback_H0_rank"] == 2
    assert rec["square_is_pushout"] is True
