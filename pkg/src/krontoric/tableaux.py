"""Linked tableaux pairs and their exponent vectors.

A plus-side tableau has r2 rows and labels (i, k) with k in [1, r1]; a
minus-side tableau has r1 rows and labels (i, j) with j in [1, r2].  Labels
compare lexicographically.  A label (i, k) in row j of a plus tableau
contributes the variable x^i_{jk}; a label (i, j) in row k of a minus
tableau contributes the same variable.  A linked pair is a plus/minus pair
with equal exponent vectors, together with a cell-level bijection (the
atoms) matching up the contributions variable by variable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .errors import LabelError, ShapeError
from .quiver import QuiverSpec

Label = tuple[int, int]


@dataclass(frozen=True)
class Tableau:
    """A rectangular tableau of double labels; rows is a tuple of row tuples."""

    rows: tuple[tuple[Label, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(tuple(lab) for lab in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if rows and any(len(row) != len(rows[0]) for row in rows):
            raise ShapeError(f"ragged tableau: row lengths {[len(r) for r in rows]}")

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    @property
    def is_empty(self) -> bool:
        return not self.rows or not self.rows[0]

    def column(self, c: int) -> tuple[Label, ...]:
        return tuple(row[c] for row in self.rows)


class Atom(NamedTuple):
    """One matched cell pair of a linked pair; its variable is x^arrow_{jk}.

    Positions are 1-based: plus_pos = (row j, column), minus_pos = (row k,
    column).
    """

    arrow: int
    plus_pos: tuple[int, int]
    minus_pos: tuple[int, int]


@dataclass(frozen=True)
class LinkedPair:
    """A linked plus/minus tableau pair with its atom bijection."""

    plus: Tableau
    minus: Tableau
    atoms: tuple[Atom, ...]

    @property
    def n_columns(self) -> tuple[int, int]:
        """(alpha1, alpha2) = (minus column count, plus column count)."""
        return (self.minus.shape[1], self.plus.shape[1])

    @property
    def semistandard(self) -> bool:
        return is_semistandard(self.plus) and is_semistandard(self.minus)


def is_semistandard(t: Tableau) -> bool:
    """Rows weakly increasing, columns strictly increasing, in lex label order."""
    rows = t.rows
    for row in rows:
        for a, b in zip(row, row[1:]):
            if a > b:
                return False
    for r0, r1 in zip(rows, rows[1:]):
        for a, b in zip(r0, r1):
            if a >= b:
                return False
    return True


def _check_labels(t: Tableau, first_max: int, second_max: int, side: str):
    for row in t.rows:
        for (i, p) in row:
            if not (1 <= i <= first_max and 1 <= p <= second_max):
                raise LabelError(f"label ({i},{p}) out of range on {side} side")


def mon_plus(t: Tableau, spec: QuiverSpec) -> tuple[int, ...]:
    """Exponent vector of a plus-side tableau: (i,k) in row j -> x^i_{jk}."""
    _check_labels(t, spec.n, spec.r1, "plus")
    v = [0] * spec.dim
    for j, row in enumerate(t.rows, start=1):
        for (i, k) in row:
            v[spec.flat(i, j, k)] += 1
    return tuple(v)


def mon_minus(t: Tableau, spec: QuiverSpec) -> tuple[int, ...]:
    """Exponent vector of a minus-side tableau: (i,j) in row k -> x^i_{jk}."""
    _check_labels(t, spec.n, spec.r2, "minus")
    v = [0] * spec.dim
    for k, row in enumerate(t.rows, start=1):
        for (i, j) in row:
            v[spec.flat(i, j, k)] += 1
    return tuple(v)


def _canonical_atoms(plus: Tableau, minus: Tableau) -> Optional[tuple[Atom, ...]]:
    """Reading-order matching of equal-variable cells, or None on mismatch."""
    plus_cells: dict[tuple[int, int, int], list[tuple[int, int]]] = {}
    minus_cells: dict[tuple[int, int, int], list[tuple[int, int]]] = {}
    for j, row in enumerate(plus.rows, start=1):
        for c, (i, k) in enumerate(row, start=1):
            plus_cells.setdefault((i, j, k), []).append((j, c))
    for k, row in enumerate(minus.rows, start=1):
        for c, (i, j) in enumerate(row, start=1):
            minus_cells.setdefault((i, j, k), []).append((k, c))
    if plus_cells.keys() != minus_cells.keys():
        return None
    atoms = []
    for key in sorted(plus_cells):
        pc, mc = plus_cells[key], minus_cells[key]
        if len(pc) != len(mc):
            return None
        for ppos, mpos in zip(pc, mc):
            atoms.append(Atom(key[0], ppos, mpos))
    return tuple(atoms)


def build_linked_pair(plus: Tableau, minus: Tableau,
                      spec: QuiverSpec) -> Optional[LinkedPair]:
    """Link two tableaux if their exponent vectors agree, else None.

    The link is canonical: within each class of cells carrying the same
    variable, plus cells are matched to minus cells in reading order.
    """
    pr, pc = plus.shape
    mr, mc = minus.shape
    if not plus.is_empty or not minus.is_empty:
        if pr != spec.r2 or mr != spec.r1:
            raise ShapeError(
                f"expected {spec.r2} plus rows and {spec.r1} minus rows, "
                f"got {pr} and {mr}")
        if pc * spec.r2 != mc * spec.r1:
            raise ShapeError(f"column counts {pc}/{mc} admit no common degree")
    if mon_plus(plus, spec) != mon_minus(minus, spec):
        return None
    atoms = _canonical_atoms(plus, minus)
    if atoms is None:
        return None
    return LinkedPair(plus, minus, atoms)


def empty_pair(spec: QuiverSpec) -> LinkedPair:
    return LinkedPair(Tableau(()), Tableau(()), ())


def pair_from_exponent(v, spec: QuiverSpec) -> Optional[LinkedPair]:
    """Reconstruct the unique row-sorted linked pair with exponent v.

    Requires v >= 0 with all plus-side row sums equal and all minus-side
    row sums equal; returns None otherwise.  The result need not be
    semi-standard; check `pair.semistandard`.
    """
    v = tuple(v)
    if len(v) != spec.dim:
        raise ShapeError(f"expected {spec.dim} entries, got {len(v)}")
    if any(x < 0 for x in v):
        return None
    if not any(v):
        return empty_pair(spec)
    plus_rows = []
    for j in range(1, spec.r2 + 1):
        row = []
        for i in range(1, spec.n + 1):
            for k in range(1, spec.r1 + 1):
                row.extend([(i, k)] * v[spec.flat(i, j, k)])
        plus_rows.append(tuple(sorted(row)))
    minus_rows = []
    for k in range(1, spec.r1 + 1):
        row = []
        for i in range(1, spec.n + 1):
            for j in range(1, spec.r2 + 1):
                row.extend([(i, j)] * v[spec.flat(i, j, k)])
        minus_rows.append(tuple(sorted(row)))
    if len({len(r) for r in plus_rows}) != 1 or len({len(r) for r in minus_rows}) != 1:
        return None
    plus = Tableau(tuple(plus_rows))
    minus = Tableau(tuple(minus_rows))
    atoms = _canonical_atoms(plus, minus)
    assert atoms is not None  # multisets agree by construction
    return LinkedPair(plus, minus, atoms)


def enumerate_pairs_backtracking(spec: QuiverSpec, a: int,
                                 cap: int = 10_000_000) -> list[LinkedPair]:
    """All semi-standard pairs of degree a by direct tableau backtracking.

    Fills the plus tableau cell by cell (weakly increasing rows, strictly
    increasing columns), then keeps fillings whose induced minus tableau is
    also semi-standard.  Independent of the cone machinery; intended as an
    oracle at small scale.
    """
    from .errors import ResourceCapError

    if a == 0:
        return [empty_pair(spec)]
    nrow, ncol = spec.r2, a * spec.r1
    labels = spec.plus_labels()
    grid = [[None] * ncol for _ in range(nrow)]
    out = []
    nodes = 0

    def rec(pos):
        nonlocal nodes
        nodes += 1
        if nodes > cap:
            raise ResourceCapError(
                f"backtracking enumerator exceeded {cap} nodes",
                cap=cap, partial=True)
        if pos == nrow * ncol:
            plus = Tableau(tuple(tuple(row) for row in grid))
            pair = pair_from_exponent(mon_plus(plus, spec), spec)
            if pair is not None and pair.semistandard:
                out.append(pair)
            return
        r, c = divmod(pos, ncol)
        lo = grid[r][c - 1] if c > 0 else labels[0]
        for lab in labels:
            if lab < lo:
                continue
            if r > 0 and lab <= grid[r - 1][c]:
                continue
            grid[r][c] = lab
            rec(pos + 1)
        grid[r][c] = None

    rec(0)
    # distinct plus fillings give distinct exponents only when semistandard;
    # the reconstruction above sorts rows, so dedupe on exponent
    seen = {}
    for pair in out:
        seen[mon_plus(pair.plus, spec)] = pair
    return [seen[k] for k in sorted(seen)]


def enumerate_pairs_at_height(spec: QuiverSpec, a: int,
                              cap: int = 50_000_000) -> list[LinkedPair]:
    """All semi-standard pairs of degree a, via cone lattice points.

    Enumerates the degree-a lattice points of the semi-standard exponent
    cone and reconstructs each pair; returned in lex order on exponents.
    """
    from .cones import kronecker_halfspaces
    from .lattice import lattice_points_at_degree

    if a == 0:
        return [empty_pair(spec)]
    cone = kronecker_halfspaces(spec)
    pts = lattice_points_at_degree(cone, spec, a, cap=cap)
    pairs = []
    for v in pts:
        pair = pair_from_exponent(tuple(v), spec)
        assert pair is not None and pair.semistandard, \
            f"cone lattice point {v} is not a semistandard pair exponent"
        pairs.append(pair)
    return pairs
