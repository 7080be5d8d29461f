"""Double description, membership, and the semi-standard exponent cone."""
import pytest

from krontoric.cones import (Cone, double_description, grassmannian_cone_views,
                             intersect, kronecker_halfspaces, membership)
from krontoric.lattice import lattice_points_at_height, standard_height
from krontoric.quiver import QuiverSpec


def test_orthant_rays():
    c = Cone(2, inequalities=[(1, 0), (0, 1)])
    assert c.rays == ((0, 1), (1, 0))
    assert c.pointed


def test_interior_ray_absorbed():
    c = Cone(2, rays=[(1, 0), (1, 1), (1, 2)])
    assert sorted(c.facets()) == sorted(((0, 1), (2, -1)))
    # hull keeps only the two extreme generators
    outer = Cone(2, rays=[(1, 0), (1, 2)])
    assert sorted(outer.facets()) == sorted(c.facets())


def test_halfspace_counts_for_3_arrows():
    spec = QuiverSpec(3, 2, 3)
    cone = kronecker_halfspaces(spec)
    assert len(cone.equations) == 3
    nonneg = [a for a in cone.inequalities
              if sum(a) == 1 and all(x >= 0 for x in a)]
    assert len(nonneg) == 18
    assert len(cone.inequalities) == 18 + 12 + 9


def test_cone_dimension_formula():
    spec = QuiverSpec(3, 2, 3)
    cone = kronecker_halfspaces(spec)
    assert cone.dim == 7  # six-dimensional moduli space plus the grading


def test_trivial_quiver_cone():
    cone = kronecker_halfspaces(QuiverSpec(1, 1, 1))
    assert cone.equations == ()
    assert cone.rays == ((1,),)


def test_membership_origin_and_generators():
    spec = QuiverSpec(3, 2, 3)
    cone = kronecker_halfspaces(spec)
    assert membership((0,) * spec.dim, cone)
    minus_view, plus_view = grassmannian_cone_views(spec)
    for v in lattice_points_at_height(cone, 1, standard_height(spec)):
        assert membership(v, minus_view) and membership(v, plus_view)


def test_membership_point_outside_intersection():
    """A height-one point of one matching-field cone missing from the other."""
    from krontoric.matching import (GrassmannianSpec, grading_c2,
                                    induced_matching_field, mf_cone)

    spec = QuiverSpec(3, 2, 3)
    g = grading_c2(spec)
    cm = mf_cone(induced_matching_field(g, GrassmannianSpec(spec, "minus")))
    cp = mf_cone(induced_matching_field(g, GrassmannianSpec(spec, "plus")))
    double_description(cm)
    pts = lattice_points_at_height(cm, 1, standard_height(spec))
    outside = [v for v in pts if not membership(v, cp)]
    assert outside, "expected the cones to differ at height one"
    inter = intersect(cm, cp)
    assert all(not membership(v, inter) for v in outside)


def test_round_trip_certification():
    spec = QuiverSpec(3, 2, 3)
    cone = double_description(kronecker_halfspaces(spec))
    # H -> V -> H: facets regenerate an equivalent cone
    back = Cone(cone.ambient_dim, equations=cone.span_equations(),
                inequalities=cone.facets())
    assert back.rays == cone.rays
    assert double_description(back)


def test_lp_membership_from_rays_only():
    c = Cone(3, rays=[(1, 0, 0), (1, 1, 0), (1, 1, 1)])
    assert membership((3, 2, 1), c)
    assert not membership((0, 1, 0), c)
    assert membership((0, 0, 0), c)


def test_intersection_equals_halfspace_model():
    spec = QuiverSpec(3, 2, 3)
    kron = kronecker_halfspaces(spec)
    minus_view, plus_view = grassmannian_cone_views(spec)
    inter = intersect(minus_view, plus_view)
    assert set(inter.rays) == set(kron.rays)
    for r in inter.rays:
        assert membership(r, kron)
    for r in kron.rays:
        assert membership(r, inter)


def test_lineality_flagged_not_fatal():
    c = Cone(2, inequalities=[(1, 0)])
    assert not c.pointed
    assert c.lineality == ((0, 1),)
    assert c.rays == ((1, 0),)
