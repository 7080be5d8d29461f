"""Candidate mirror Laurent polynomials and classical periods.

A complete fan whose spanning polytope is terminal determines a Laurent
polynomial with coefficient one on each vertex.  Its classical period is
the integer sequence of constant terms of powers, computed exactly by
pairing the exponents of two half powers.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptyInputError, KrontoricError, ResourceCapError
from .polytopes import (FanRays, ToricReport, classify_toric,
                        lattice_points_of_hull, polytope_from_points,
                        normalized_volume, _facets_of_points)
from .intlinalg import content, dot, int_rank


@dataclass(frozen=True)
class LaurentPolynomial:
    """Sparse integer Laurent polynomial on Z^dim."""

    dim: int
    terms: dict  # exponent tuple -> nonzero int coefficient

    def __post_init__(self):
        object.__setattr__(self, "terms",
                           {tuple(e): int(c) for e, c in self.terms.items() if c})

    def __len__(self):
        return len(self.terms)

    def support(self):
        return sorted(self.terms)


@dataclass(frozen=True)
class PeriodSequence:
    """Constant terms of powers; coefficients[k] is the k-th term."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        if self.coefficients and self.coefficients[0] != 1:
            raise KrontoricError("a classical period starts with 1")


def laurent_from_rays(fan: FanRays, report: ToricReport | None = None):
    """Vertex polynomial of the spanning polytope, when it is terminal.

    Returns a LaurentPolynomial, or the ToricReport itself when the
    spanning polytope is not terminal (coefficient choices beyond the
    all-ones terminal case are out of scope).
    """
    if report is None:
        report = classify_toric(fan)
    if not report.complete:
        raise KrontoricError("fan is not complete")
    if not report.terminal:
        return report
    return LaurentPolynomial(fan.dim, {tuple(r): 1 for r in fan.rays})


def _half_power_tables(f: LaurentPolynomial, upto: int, term_cap):
    powers = [{tuple([0] * f.dim): 1}]
    current = powers[0]
    base = f.terms
    for _ in range(upto):
        nxt: dict = {}
        for ea, ca in current.items():
            for eb, cb in base.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                val = nxt.get(key, 0) + ca * cb
                if val:
                    nxt[key] = val
                elif key in nxt:
                    del nxt[key]
        if term_cap is not None and len(nxt) > term_cap:
            raise ResourceCapError(
                f"power support exceeded {term_cap} terms", cap=term_cap)
        powers.append(nxt)
        current = nxt
    return powers


def classical_period(f: LaurentPolynomial, nterms: int,
                     term_cap: int | None = 5_000_000) -> PeriodSequence:
    """First nterms constant terms of powers of f, exactly.

    c_k pairs the supports of f^ceil(k/2) and f^floor(k/2): each exponent
    of one half is looked up with the opposite sign in the other, so only
    powers up to ceil((nterms-1)/2) are expanded.
    """
    if nterms < 1:
        raise KrontoricError("need at least one term")
    if not f.terms:
        raise EmptyInputError("period of the zero polynomial")
    kmax = nterms - 1
    powers = _half_power_tables(f, (kmax + 1) // 2, term_cap)
    out = []
    for k in range(nterms):
        a, b = (k + 1) // 2, k // 2
        small, large = powers[a], powers[b]
        if len(small) > len(large):
            small, large = large, small
        ck = 0
        for e, c in small.items():
            opp = large.get(tuple(-x for x in e))
            if opp:
                ck += c * opp
        out.append(ck)
    return PeriodSequence(tuple(out))


@dataclass(frozen=True)
class NewtonReport:
    """Lattice-isomorphism invariants of the Newton polytope of a Laurent
    polynomial; used for basis-independent comparison."""

    vertex_count: int
    lattice_point_count: int
    contains_origin_interior: bool
    reflexive: bool
    terminal: bool
    normalized_volume: int | None
    degenerate: bool = False


def newton_invariants(f: LaurentPolynomial,
                      volume_max_dim: int = 9) -> NewtonReport:
    """Vertex/lattice-point counts, reflexivity, terminality, volume."""
    support = f.support()
    if not support:
        raise EmptyInputError("Newton polytope of the zero polynomial")
    poly = polytope_from_points(support)
    if poly.dim < len(support[0]) or poly.dim == 0:
        # not full-dimensional: report the degenerate shell only
        return NewtonReport(
            vertex_count=len(poly.vertices),
            lattice_point_count=len(poly.vertices) if poly.dim == 0 else -1,
            contains_origin_interior=False, reflexive=False, terminal=False,
            normalized_volume=0 if poly.dim == 0 else None, degenerate=True)
    verts = [tuple(int(x) for x in v) if all(y.denominator == 1 for y in v)
             else v for v in poly.vertices]
    if any(not isinstance(v[0], int) for v in verts):
        raise KrontoricError("Newton polytope must have integer vertices")
    facets = _facets_of_points(verts)
    interior = all(c > 0 for _, c in facets)
    from fractions import Fraction
    reflexive = interior and all(Fraction(c, content(y)) == 1
                                 for y, c in facets)
    pts = lattice_points_of_hull(verts)
    d = len(verts[0])
    origin = tuple([0] * d)
    terminal = interior and set(pts) == set(verts) | {origin}
    vol = normalized_volume(verts, max_dim=volume_max_dim)
    return NewtonReport(
        vertex_count=len(verts), lattice_point_count=len(pts),
        contains_origin_interior=interior, reflexive=reflexive,
        terminal=terminal, normalized_volume=vol)


def transform_exponents(f: LaurentPolynomial, matrix) -> LaurentPolynomial:
    """Apply an integer change of basis to every exponent."""
    d = f.dim
    if int_rank([list(r) for r in matrix]) != d:
        raise KrontoricError("basis change must be invertible")
    terms = {}
    for e, c in f.terms.items():
        new = tuple(sum(matrix[i][j] * e[j] for j in range(d)) for i in range(d))
        terms[new] = c
    return LaurentPolynomial(d, terms)
