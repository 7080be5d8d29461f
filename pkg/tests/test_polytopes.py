"""Slices, normal fans, classification, and volumes."""
import pytest

from krontoric.cones import kronecker_halfspaces
from krontoric.errors import EmptyInputError
from krontoric.polytopes import (FanRays, classify_toric,
                                 lattice_points_of_hull, normal_fan_rays,
                                 normalized_volume, polar_dual_vertices,
                                 polytope_from_points, slice_polytope)
from krontoric.quiver import QuiverSpec


def test_unit_square_fan():
    square = polytope_from_points([(0, 0), (1, 0), (0, 1), (1, 1)])
    fan = normal_fan_rays(square)
    assert sorted(fan.rays) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    assert all(len(c) == 2 for c in fan.maximal_cones)


def test_vertices_are_irredundant():
    poly = polytope_from_points([(0, 0), (2, 0), (0, 2), (1, 1), (2, 2)])
    assert len(poly.vertices) == 4  # (1,1) lies inside


def test_projective_plane_classification():
    fan = FanRays(((1, 0), (0, 1), (-1, -1)), ((0, 1), (0, 2), (1, 2)))
    rep = classify_toric(fan)
    assert rep.complete and rep.fano and rep.gorenstein and rep.terminal
    assert rep.fano_index == 3
    assert rep.class_group_free_rank == 1
    assert rep.class_group_torsion == ()


def test_weighted_plane_not_terminal():
    fan = FanRays(((1, 0), (0, 1), (-1, -2)), ((0, 1), (0, 2), (1, 2)))
    rep = classify_toric(fan)
    assert rep.complete and rep.fano and not rep.terminal


def test_incomplete_fan_reported():
    fan = FanRays(((1, 0), (0, 1)), ((0, 1),))
    rep = classify_toric(fan)
    assert not rep.complete and not rep.fano


def test_slice_reference_counts():
    spec = QuiverSpec(3, 2, 3)
    cone = kronecker_halfspaces(spec)
    poly = slice_polytope(cone, 1)
    assert len(poly.vertices) == 18
    assert poly.dim == 6
    fan = normal_fan_rays(poly)
    assert len(fan.rays) == 13
    rep = classify_toric(fan)
    assert rep.gorenstein and rep.fano and rep.terminal
    assert rep.spanning_lattice_point_count == 14  # vertices plus origin


def test_double_polar_round_trip():
    rays = ((1, 0), (0, 1), (-1, -1))
    assert sorted(polar_dual_vertices(polar_dual_vertices(rays))) == \
        sorted(rays)


def test_point_polytope_fan_is_empty():
    point = polytope_from_points([(2, 3)])
    assert point.dim == 0
    fan = normal_fan_rays(point)
    assert fan.rays == ()


def test_empty_polytope_fan_raises():
    empty = polytope_from_points([])
    with pytest.raises(EmptyInputError):
        normal_fan_rays(empty)


def test_lattice_points_of_simplex():
    pts = lattice_points_of_hull([(0, 0), (2, 0), (0, 2)])
    assert len(pts) == 6


def test_normalized_volumes():
    assert normalized_volume([(0, 0), (1, 0), (0, 1)]) == 1
    assert normalized_volume([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1),
                              (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)]) == 6
    assert normalized_volume([(0,), (5,)]) == 5


def test_intrinsic_coordinates_of_shifted_segment():
    poly = polytope_from_points([(2, 2), (4, 4)])
    assert poly.dim == 1
    intr = poly.intrinsic_vertices()
    assert sorted(x[0] for x in intr) == [0, 2]
