from fractions import Fraction

import pytest

from epcheck.apartment import Apartment, make_facet
from epcheck.engine import (
    DplusScan,
    canonical_sector,
    depth_r_shell_vanishing,
    depth_zero_shell_vanishing,
    dplus_certificate,
    dplus_scan,
    exceptional_enumeration,
    instantiate_residue,
    peter_weyl_partition,
    principal_class_index,
    residue_datum,
    truncated_sum_stabilization,
)
from epcheck.groups import build_group
from epcheck.roots import build_root_system


def ap_for(label):
    return Apartment(build_root_system(label[0], int(label[1:])))


def origin(ap):
    return make_facet([tuple(Fraction(0) for _ in range(ap.rs.rank))])


# -- residue data -------------------------------------------------------------

def test_residue_at_chamber_is_trivial():
    ap = ap_for("A2")
    c0 = ap.fundamental_chamber()
    rd = residue_datum(ap, c0.facet(), c0)
    assert rd.type_label == "point"
    assert rd.rank() == 0


def test_residue_at_face_is_rank_one():
    ap = ap_for("A2")
    c0 = ap.fundamental_chamber()
    fr = ap.faces_of(c0)[0]
    rd = residue_datum(ap, fr.facet, c0)
    assert rd.type_label == "A1"
    # two parabolic subsets: the face itself and the chamber
    assert rd.parabolic_subset(fr.facet) == frozenset({0})
    assert rd.parabolic_subset(c0.facet()) == frozenset()


def test_residue_at_a2_vertex():
    ap = ap_for("A2")
    c0 = ap.fundamental_chamber()
    for v in c0.vertices:
        rd = residue_datum(ap, make_facet([v]), c0)
        assert rd.type_label == "A2"  # every vertex of the A2 alcove is special
    rd = residue_datum(ap, origin(ap), c0)
    # facets between the vertex and the chamber map onto the 4 standard
    # parabolic subsets, order-reversing
    star = [f for f in ap.all_facets_of(c0) if f.contains(origin(ap))]
    subsets = {rd.parabolic_subset(k) for k in star}
    assert len(star) == 4 and len(subsets) == 4
    for k1 in star:
        for k2 in star:
            if k2.contains(k1):
                assert rd.parabolic_subset(k1) >= rd.parabolic_subset(k2)


def test_residue_types_c2():
    ap = ap_for("C2")
    c0 = ap.fundamental_chamber()
    labels = sorted(residue_datum(ap, make_facet([v]), c0).type_label
                    for v in c0.vertices)
    assert labels == ["A1xA1", "C2", "C2"]


def test_instantiate_residues():
    ap = ap_for("C2")
    c0 = ap.fundamental_chamber()
    rd = residue_datum(ap, origin(ap), c0)
    model = instantiate_residue(rd, 2)
    assert model.group.name == "SP4(F2)"
    # order-reversing bijection onto standard parabolics after instantiation
    from epcheck.groups import standard_parabolic

    star = [f for f in ap.all_facets_of(c0) if f.contains(origin(ap))]
    sets = {}
    for k in star:
        sub = model.model_subset(rd.parabolic_subset(k))
        sets[k] = standard_parabolic(model.group, sub).elements
    for k1 in star:
        for k2 in star:
            if k2.contains(k1):
                assert sets[k1] >= sets[k2]

    fr = ap.faces_of(c0)[0]
    rd1 = residue_datum(ap, fr.facet, c0)
    m1 = instantiate_residue(rd1, 2)
    assert m1.group.name == "SL2(F2)"

    ap2 = ap_for("A2")
    c02 = ap2.fundamental_chamber()
    rd2 = residue_datum(ap2, origin(ap2), c02)
    assert instantiate_residue(rd2, 2).group.name == "SL3(F2)"

    av = next(v for v in c0.vertices
              if residue_datum(ap, make_facet([v]), c0).type_label == "A1xA1")
    with pytest.raises(ValueError):
        instantiate_residue(residue_datum(ap, make_facet([av]), c0), 2)


def test_g2_vertex_residue_skipped():
    ap = ap_for("G2")
    c0 = ap.fundamental_chamber()
    labels = {residue_datum(ap, make_facet([v]), c0).type_label for v in c0.vertices}
    assert "G2" in labels
    rd = next(residue_datum(ap, make_facet([v]), c0) for v in c0.vertices
              if residue_datum(ap, make_facet([v]), c0).type_label == "G2")
    assert not rd.supported()


# -- certificates ---------------------------------------------------------------

def test_certificate_adjacent_chamber_exceptional():
    ap = ap_for("C2")
    c0 = ap.fundamental_chamber()
    for d in ap.shells(c0, 1)[1]:
        c = dplus_certificate(ap, c0, d, rho=1)
        assert c.tall_simples == frozenset()
        assert c.exceptional
    with pytest.raises(ValueError):
        dplus_certificate(ap, c0, c0, rho=1)


def test_certificate_deep_chamber_has_witness():
    ap = ap_for("C2")
    c0 = ap.fundamental_chamber()
    shells = ap.shells(c0, 20)
    deep = [d for d in shells[20]
            if all(ap.separation_count(c0, d, g) >= 3 for g in ap.rs.positive)]
    assert deep
    for d in deep[:5]:
        c = dplus_certificate(ap, c0, d, rho=1)
        assert not c.exceptional
        # witness soundness: the witness has a positive coefficient at a tall root
        simples = ap.simple_roots_of(c.pos_system)
        coeffs = ap.expand_in(c.witness.gradient, simples)
        hit = [a for a, x in zip(simples, coeffs) if a in c.tall_simples and x > 0]
        assert c.witness_coefficient_root in hit


def test_exceptional_enumeration_a1():
    ap = ap_for("A1")
    c0 = ap.fundamental_chamber()
    ps = ap.positive_systems()[0]
    census_r = exceptional_enumeration(ap, c0, ps, rho=1, rmax=8)
    census_2r = exceptional_enumeration(ap, c0, ps, rho=1, rmax=16)
    assert sum(census_r.exceptional_per_shell) == sum(census_2r.exceptional_per_shell)
    assert census_2r.exceptional_per_shell[9:] == [0] * 8


def test_exceptional_enumeration_c2_symmetry():
    # The symmetries of the apartment fixing C0 are the affine diagram
    # automorphisms; for C2 the flip pairs the eight positive systems into
    # four orbits, so the censuses agree two by two.
    ap = ap_for("C2")
    c0 = ap.fundamental_chamber()
    totals = []
    for ps in ap.positive_systems():
        census = exceptional_enumeration(ap, c0, ps, rho=1, rmax=10)
        shells = ap.shells(c0, 10)
        for depth, shell in enumerate(shells):
            in_sector = sum(1 for d in shell
                            if d != c0 and ap.sector_membership(c0, ps, d))
            assert census.certified_per_shell[depth] + \
                census.exceptional_per_shell[depth] == in_sector
        totals.append(census.totals())
    from collections import Counter

    assert all(n % 2 == 0 for n in Counter(totals).values())


# -- depth-zero shell vanishing ---------------------------------------------------

def test_shell_vanishing_rank_one_reduction():
    ap = ap_for("C2")
    c0 = ap.fundamental_chamber()
    found = 0
    for d in ap.shells(c0, 12)[12]:
        children, _ = ap.classify_faces(c0, d)
        if len(children) != 1:
            continue
        rep = depth_zero_shell_vanishing(ap, c0, d, q=2, rho=1)
        if rep.skipped:
            continue
        assert rep.residue_type == "A1"
        assert rep.exact_zero
        found += 1
    assert found > 0


def test_shell_vanishing_c2_vertex():
    ap = ap_for("C2")
    c0 = ap.fundamental_chamber()
    found = 0
    for d in ap.shells(c0, 12)[12]:
        rep = depth_zero_shell_vanishing(ap, c0, d, q=2, rho=1)
        if not rep.skipped and rep.residue_type == "C2":
            assert rep.exact_zero
            found += 1
    assert found > 0


def test_shell_vanishing_levi_misses_class():
    # a class whose Levi is the whole residue group: every proper-parabolic term
    # is the zero function, and the sum still vanishes
    ap = ap_for("C2")
    c0 = ap.fundamental_chamber()
    from epcheck.algebra import cuspidal_classes

    g = build_group("SP4", 2)
    cuspidal_of_g = next(i for i, c in enumerate(cuspidal_classes(g))
                         if c.rep[0] == frozenset(g.simples))
    for d in ap.shells(c0, 10)[10]:
        rep = depth_zero_shell_vanishing(ap, c0, d, q=2, cls_index=cuspidal_of_g, rho=1)
        if not rep.skipped and rep.residue_type == "C2":
            assert rep.exact_zero
            break
    else:
        pytest.skip("no supported C2 residue found at this radius")


def test_dplus_scan_partition_and_soundness():
    ap = ap_for("C2")
    c0 = ap.fundamental_chamber()
    scan = dplus_scan(ap, c0, rho=1, rmax=10, q=2)
    shells = ap.shells(c0, 10)
    for depth in range(1, 11):
        assert scan.certified_per_shell[depth] + scan.exceptional_per_shell[depth] \
            == len(shells[depth])
    assert scan.ok()


def test_dplus_scan_g2_supported_faces_only():
    # G2 vertices are not instantiated; rank-1 minimal facets still verify
    ap = ap_for("G2")
    c0 = ap.fundamental_chamber()
    scan = dplus_scan(ap, c0, rho=1, rmax=12, q=2)
    assert scan.ok()
    assert scan.verified_zero > 0
    assert scan.skipped_unsupported > 0


# -- depth-r model -----------------------------------------------------------------

def test_depth_r_two_term_cancellation():
    ap = ap_for("A2")
    c0 = ap.fundamental_chamber()
    for d in ap.shells(c0, 6)[6]:
        children, _ = ap.classify_faces(c0, d)
        if len(children) == 1:
            d_plus, star = ap.d_plus_and_star(c0, d)
            v = next(f for f in star if f != d_plus)
            rep = depth_r_shell_vanishing(ap, c0, d, 1, v)
            assert rep["exact-zero"] and rep["terms"] == 2
            return
    pytest.skip("no single-child chamber found")


def test_depth_r_rejections():
    ap = ap_for("A2")
    c0 = ap.fundamental_chamber()
    d = ap.shells(c0, 3)[3][0]
    d_plus, star = ap.d_plus_and_star(c0, d)
    with pytest.raises(ValueError):
        depth_r_shell_vanishing(ap, c0, d, 1, d_plus)
    with pytest.raises(ValueError):
        depth_r_shell_vanishing(ap, c0, d, 0, next(f for f in star if f != d_plus))
    with pytest.raises(ValueError):
        depth_r_shell_vanishing(ap, c0, c0, 1, d_plus or c0.facet())


@pytest.mark.parametrize("label", ["A2", "C2"])
def test_depth_r_ball8_all_admissible(label):
    ap = ap_for(label)
    c0 = ap.fundamental_chamber()
    shells = ap.shells(c0, 8)
    checked = 0
    for depth in range(1, 9):
        for d in shells[depth]:
            d_plus, star = ap.d_plus_and_star(c0, d)
            for v in star:
                if v == d_plus:
                    continue
                rep = depth_r_shell_vanishing(ap, c0, d, 1, v)
                assert rep["exact-zero"]
                checked += 1
    assert checked > 0


# -- stabilization -----------------------------------------------------------------

def test_stabilization_depth_r_a1():
    ap = ap_for("A1")
    c0 = ap.fundamental_chamber()
    tr = truncated_sum_stabilization(ap, c0, "depth-r", 10, rho=2, r=1)
    assert tr.stabilized()
    assert tr.stabilization_radius <= 4
    # shell increments beyond the radius are exactly zero
    assert all(tr.increments_zero[tr.stabilization_radius + 1:])


def test_stabilization_radius_monotone_in_probe_depth():
    ap = ap_for("C2")
    c0 = ap.fundamental_chamber()
    radii = []
    for rho in (1, 2, 3):
        tr = truncated_sum_stabilization(ap, c0, "depth-r", 10, rho=rho, r=1)
        assert tr.stabilized()
        radii.append(tr.stabilization_radius)
    assert radii == sorted(radii)


def test_stabilization_depth_zero():
    ap = ap_for("C2")
    c0 = ap.fundamental_chamber()
    tr = truncated_sum_stabilization(ap, c0, "depth-zero", 6, q=2)
    assert tr.stabilized()
    assert tr.detail["base_value"].startswith("block idempotent")
    tr2 = truncated_sum_stabilization(ap, c0, "depth-zero", 8, q=2)
    assert tr2.detail["exceptional_chambers"] == tr.detail["exceptional_chambers"]

    bad = make_facet([tuple(Fraction(5) for _ in range(2))])
    with pytest.raises(ValueError):
        truncated_sum_stabilization(ap, c0, "depth-zero", 4, q=2, probe=bad)
    with pytest.raises(ValueError):
        truncated_sum_stabilization(ap, c0, "bogus", 4)


def test_stabilization_depth_zero_rank_one_and_face_probes():
    ap1 = ap_for("A1")
    c01 = ap1.fundamental_chamber()
    tr = truncated_sum_stabilization(ap1, c01, "depth-zero", 8, q=2)
    assert tr.stabilized() and tr.detail["skipped_chambers"] == 0
    assert tr.detail["exceptional_chambers"] == []

    ap = ap_for("C2")
    c0 = ap.fundamental_chamber()
    for fr in ap.faces_of(c0):
        tr = truncated_sum_stabilization(ap, c0, "depth-zero", 6, q=2,
                                         probe=fr.facet)
        assert tr.stabilized()
        assert tr.detail["exceptional_chambers"] == []


def test_a2_census_stable():
    ap = ap_for("A2")
    c0 = ap.fundamental_chamber()
    s20 = dplus_scan(ap, c0, rho=1, rmax=20, q=2)
    s40 = dplus_scan(ap, c0, rho=1, rmax=40, q=2, verify=False)
    assert s20.ok()
    assert s20.exceptional_keys == s40.exceptional_keys
    assert sum(s20.exceptional_per_shell) == 71


# -- residue partition ---------------------------------------------------------------

def test_peter_weyl_partition_residue():
    ap = ap_for("C2")
    c0 = ap.fundamental_chamber()
    rd = residue_datum(ap, origin(ap), c0)
    for rec in peter_weyl_partition(rd, 2):
        assert rec.ok(), rec.name


def test_peter_weyl_single_class_degenerate():
    g = build_group("SL1", 3)
    for rec in peter_weyl_partition(g):
        assert rec.ok(), rec.name


def test_principal_class_index():
    for kind, q in [("GL2", 2), ("SL2", 2), ("SP4", 2), ("SL3", 2)]:
        g = build_group(kind, q)
        i = principal_class_index(g)
        from epcheck.algebra import cuspidal_classes

        assert cuspidal_classes(g)[i].rep[0] == frozenset()
