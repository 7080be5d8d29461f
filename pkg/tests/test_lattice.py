"""Lattice point enumeration and Hilbert bases, with the exact oracle."""
import pytest

from krontoric.cones import Cone, kronecker_halfspaces
from krontoric.errors import ResourceCapError
from krontoric.lattice import (hilbert_basis, hilbert_basis_exact,
                               lattice_points_at_height, quiver_budget_rows,
                               standard_height)
from krontoric.quiver import QuiverSpec


def test_height_zero_is_origin():
    cone = kronecker_halfspaces(QuiverSpec(2, 1, 2))
    pts = lattice_points_at_height(cone, 0)
    assert pts == [tuple([0] * cone.ambient_dim)]


def test_reference_counts_three_arrows():
    cone = kronecker_halfspaces(QuiverSpec(3, 2, 3))
    assert len(lattice_points_at_height(cone, 1)) == 20


def test_reference_counts_four_arrows_height_one():
    cone = kronecker_halfspaces(QuiverSpec(4, 2, 3))
    assert len(lattice_points_at_height(cone, 1)) == 126


def test_points_sorted_lex():
    cone = kronecker_halfspaces(QuiverSpec(3, 2, 3))
    pts = lattice_points_at_height(cone, 1)
    assert pts == sorted(pts)


def test_point_cap_raises():
    cone = kronecker_halfspaces(QuiverSpec(3, 2, 3))
    with pytest.raises(ResourceCapError):
        lattice_points_at_height(cone, 1, cap=5)


def test_hilbert_three_arrows_all_height_one():
    spec = QuiverSpec(3, 2, 3)
    cone = kronecker_halfspaces(spec)
    res = hilbert_basis(cone, standard_height(spec), max_degree=2,
                        certify_window=1,
                        budgets_for=lambda h: quiver_budget_rows(spec, h))
    assert res.counts() == {1: 20}
    assert res.certified_up_to == 3
    assert res.window_violations == ()


def test_hilbert_degree_slice_matches_exact_oracle_2d():
    cone = Cone(2, rays=[(0, 1), (3, 1)])
    height = ((0, 1), 1)
    expected = [(0, 1), (1, 1), (2, 1), (3, 1)]
    assert hilbert_basis_exact(cone, height) == expected
    res = hilbert_basis(cone, height, max_degree=2, certify_window=1)
    assert sorted(g for _h, g in res.generators) == expected


@pytest.mark.parametrize("rays", [
    [(1, 0), (1, 4)],
    [(2, 1), (1, 3)],
    [(1, 0, 0), (0, 1, 0), (1, 1, 2)],
    [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)],
])
def test_oracle_agrees_with_degree_slices(rays):
    cone = Cone(len(rays[0]), rays=rays)
    height = (tuple([1] * len(rays[0])), 1)
    for r in cone.rays:
        if sum(r) <= 0:
            pytest.skip("grading not positive on this cone")
    exact = set(hilbert_basis_exact(cone, height))
    sliced = hilbert_basis(cone, height, max_degree=6, certify_window=2)
    assert set(g for _h, g in sliced.generators) == exact


def test_generators_pairwise_irreducible():
    cone = Cone(2, rays=[(0, 1), (3, 1)])
    height = ((0, 1), 1)
    gens = hilbert_basis_exact(cone, height)
    for v in gens:
        for g in gens:
            w = tuple(a - b for a, b in zip(v, g))
            if any(w) and all(x >= 0 for x in w):
                assert not cone.contains(w)


def test_graded_pieces_agree_between_descriptions():
    """The two halfspace models of the same cone enumerate identically."""
    from krontoric.cones import grassmannian_cone_views, intersect

    spec = QuiverSpec(2, 2, 2)
    kron = kronecker_halfspaces(spec)
    inter = intersect(*grassmannian_cone_views(spec))
    for h in (1, 2, 3):
        a = lattice_points_at_height(kron, h)
        b = lattice_points_at_height(inter, h)
        assert a == b


def test_unbounded_region_rejected():
    from krontoric.errors import KrontoricError

    cone = Cone(2, inequalities=[(1, 0), (0, 1)])
    with pytest.raises(KrontoricError):
        lattice_points_at_height(cone, 1, height=((1, 0), 1))
