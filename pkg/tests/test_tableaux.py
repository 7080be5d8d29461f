"""Tableaux, linked pairs, and exponent reconstruction."""
import pytest

from krontoric.errors import ShapeError
from krontoric.quiver import QuiverSpec
from krontoric.refdata import K423_DEGREE3_PLUS
from krontoric.tableaux import (Tableau, build_linked_pair,
                                enumerate_pairs_at_height,
                                enumerate_pairs_backtracking,
                                is_semistandard, mon_minus, mon_plus,
                                pair_from_exponent)

S323 = QuiverSpec(3, 2, 3)

# first canonical pair of the 2-block matching field on the 3-arrow space
MF_PLUS = Tableau((((2, 1), (2, 1)), ((2, 2), (3, 1)), ((3, 2), (3, 2))))
MF_MINUS = Tableau((((2, 1), (2, 1), (3, 2)), ((2, 2), (3, 3), (3, 3))))


def test_single_cell_semistandard():
    assert is_semistandard(Tableau((((1, 1),),)))


def test_reference_degree3_tableau_semistandard():
    assert is_semistandard(K423_DEGREE3_PLUS[0])


def test_repeated_label_in_column_not_semistandard():
    t = Tableau((((2, 1),), ((2, 1),)))
    assert not is_semistandard(t)


def test_ragged_tableau_rejected():
    with pytest.raises(ShapeError):
        Tableau((((1, 1), (1, 2)), ((1, 1),)))


def test_mon_plus_reference_pair():
    v = mon_plus(MF_PLUS, S323)
    expected = {S323.flat(2, 1, 1): 2, S323.flat(2, 2, 2): 1,
                S323.flat(3, 2, 1): 1, S323.flat(3, 3, 2): 2}
    assert {c: x for c, x in enumerate(v) if x} == expected
    assert mon_minus(MF_MINUS, S323) == v


def test_mon_empty_tableau_is_zero():
    assert mon_plus(Tableau(()), S323) == tuple([0] * S323.dim)


def test_mon_minus_single_cell_row():
    spec = QuiverSpec(1, 1, 2)
    v = mon_minus(Tableau((((1, 2),),)), spec)
    assert v[spec.flat(1, 2, 1)] == 1 and sum(v) == 1


def test_build_linked_pair_atom_count():
    pair = build_linked_pair(MF_PLUS, MF_MINUS, S323)
    assert pair is not None
    assert len(pair.atoms) == 6
    for atom in pair.atoms:
        i, (j, cp), (k, cm) = atom.arrow, atom.plus_pos, atom.minus_pos
        assert pair.plus.rows[j - 1][cp - 1] == (i, k)
        assert pair.minus.rows[k - 1][cm - 1] == (i, j)


def test_build_linked_pair_mismatch_is_none():
    other = Tableau((((1, 1), (1, 1), (1, 2)), ((2, 2), (3, 3), (3, 3))))
    assert build_linked_pair(MF_PLUS, other, S323) is None


def test_every_height_one_point_links():
    for pair in enumerate_pairs_at_height(S323, 1):
        rebuilt = build_linked_pair(pair.plus, pair.minus, S323)
        assert rebuilt is not None


def test_pair_from_exponent_reference():
    v = mon_plus(MF_PLUS, S323)
    pair = pair_from_exponent(v, S323)
    assert pair.plus == MF_PLUS
    # rows are sorted on reconstruction; recover the same multiset
    assert mon_minus(pair.minus, S323) == v
    assert pair.semistandard  # this particular pair happens to be


def test_pair_from_exponent_zero_vector():
    pair = pair_from_exponent(tuple([0] * S323.dim), S323)
    assert pair.plus.is_empty and pair.minus.is_empty and pair.semistandard


def test_pair_from_exponent_unequal_row_sums():
    v = [0] * S323.dim
    v[S323.flat(1, 1, 1)] = 1
    assert pair_from_exponent(tuple(v), S323) is None


def test_enumerate_height_one_reference_count():
    assert len(enumerate_pairs_at_height(S323, 1)) == 20


def test_enumerate_grassmannian_columns():
    spec = QuiverSpec(3, 1, 2)
    pairs = enumerate_pairs_at_height(spec, 1)
    assert len(pairs) == 3


def test_enumerate_degree_zero():
    pairs = enumerate_pairs_at_height(S323, 0)
    assert len(pairs) == 1 and pairs[0].plus.is_empty


@pytest.mark.parametrize("n,r1,r2", [(2, 1, 2), (1, 2, 2), (2, 2, 2),
                                     (4, 1, 2), (2, 1, 3), (1, 2, 3)])
def test_dual_route_enumerators_agree(n, r1, r2):
    spec = QuiverSpec(n, r1, r2)
    for a in (1, 2):
        via_cone = enumerate_pairs_at_height(spec, a)
        via_tabs = enumerate_pairs_backtracking(spec, a)
        key = lambda p: (p.plus.rows, p.minus.rows)
        assert sorted(map(key, via_cone)) == sorted(map(key, via_tabs))
        for pair in via_cone:
            assert mon_plus(pair.plus, spec) == mon_minus(pair.minus, spec)


def test_reconstruction_round_trip():
    for pair in enumerate_pairs_at_height(S323, 2):
        v = mon_plus(pair.plus, S323)
        again = pair_from_exponent(v, S323)
        assert again.plus == pair.plus and again.minus == pair.minus


def test_semistandard_flag_matches_cone_membership():
    """Reconstructed-pair semistandardness == the counting inequalities."""
    from krontoric.cones import kronecker_halfspaces
    from itertools import product

    spec = QuiverSpec(2, 1, 2)
    cone = kronecker_halfspaces(spec)
    # all vectors with the right budgets at degree 1: rows sums 1 and 2
    for v in product(range(3), repeat=spec.dim):
        pair = pair_from_exponent(v, spec)
        if pair is None or pair.plus.is_empty:
            continue
        assert pair.semistandard == cone.contains(v)
