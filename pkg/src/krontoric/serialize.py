"""JSON encoding of the package's data types.

Integers inside cone/polytope/fan data and all polynomial coefficients are
written as base-10 strings so downstream consumers never overflow; small
structural integers (indices, shapes) stay native.  Every artifact dict
carries a `schema` tag.
"""
from __future__ import annotations

from fractions import Fraction

from .cones import Cone
from .mirror import LaurentPolynomial, PeriodSequence
from .polytopes import FanRays, Polytope, ToricReport
from .quiver import QuiverSpec
from .semiinvariants import Grading, SemiInvariant
from .tableaux import Atom, LinkedPair, Tableau

SCHEMA_VERSION = 1


def _tag(name, payload):
    payload["schema"] = f"{name}@{SCHEMA_VERSION}"
    return payload


def _s(x) -> str:
    return str(int(x))


def _frac(x) -> str:
    f = Fraction(x)
    return _s(f.numerator) if f.denominator == 1 else \
        f"{f.numerator}/{f.denominator}"


def _parse_frac(s) -> Fraction:
    if "/" in s:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def quiver_to_json(spec: QuiverSpec):
    return _tag("quiver", {"n": spec.n, "r1": spec.r1, "r2": spec.r2})


def quiver_from_json(data) -> QuiverSpec:
    return QuiverSpec(data["n"], data["r1"], data["r2"])


def tableau_to_json(t: Tableau):
    return [[[i, p] for (i, p) in row] for row in t.rows]


def tableau_from_json(data) -> Tableau:
    return Tableau(tuple(tuple((i, p) for i, p in row) for row in data))


def exponent_to_json(v, spec: QuiverSpec):
    return _tag("exponent", {"header": [spec.n, spec.r1, spec.r2],
                             "entries": [int(x) for x in v]})


def pair_to_json(pair: LinkedPair):
    return _tag("linked_pair", {
        "plus": tableau_to_json(pair.plus),
        "minus": tableau_to_json(pair.minus),
        "atoms": [[a.arrow, list(a.plus_pos), list(a.minus_pos)]
                  for a in pair.atoms]})


def pair_from_json(data) -> LinkedPair:
    atoms = tuple(Atom(a, (jp[0], jp[1]), (km[0], km[1]))
                  for a, jp, km in data["atoms"])
    return LinkedPair(tableau_from_json(data["plus"]),
                      tableau_from_json(data["minus"]), atoms)


def semiinvariant_to_json(f: SemiInvariant):
    terms = [[list(map(int, e)), _s(c)] for e, c in sorted(f.terms.items())]
    return _tag("semiinvariant", {
        "quiver": quiver_to_json(f.spec),
        "alpha": list(f.alpha),
        "terms": terms})


def grading_to_json(g: Grading):
    return _tag("grading", {"quiver": quiver_to_json(g.spec),
                            "entries": [_s(x) for x in g.entries]})


def grading_from_json(data) -> Grading:
    spec = quiver_from_json(data["quiver"])
    return Grading(spec, tuple(int(x) for x in data["entries"]))


def cone_to_json(c: Cone):
    return _tag("cone", {
        "ambient_dim": c.ambient_dim,
        "equations": [[_s(x) for x in e] for e in c.equations],
        "inequalities": [[_s(x) for x in a] for a in c.inequalities],
        "facets": [[_s(x) for x in a] for a in c.facets()],
        "span_equations": [[_s(x) for x in e] for e in c.span_equations()],
        "rays": [[_s(x) for x in r] for r in c.rays],
        "lineality": [[_s(x) for x in l] for l in c.lineality],
        "pointed": c.pointed})


def cone_from_json(data, quiver=None) -> Cone:
    c = Cone(data["ambient_dim"],
             equations=[tuple(int(x) for x in e) for e in data["equations"]],
             inequalities=[tuple(int(x) for x in a)
                           for a in data["inequalities"]],
             quiver=quiver)
    if data.get("rays"):
        c._rays = tuple(sorted(tuple(int(x) for x in r) for r in data["rays"]))
        c._lineality = tuple(sorted(tuple(int(x) for x in l)
                                    for l in data["lineality"]))
    return c


def polytope_to_json(p: Polytope):
    return _tag("polytope", {
        "ambient_dim": p.ambient_dim,
        "vertices": [[_frac(x) for x in v] for v in p.vertices],
        "base_point": [_frac(x) for x in p.base_point],
        "lattice_basis": [[_s(x) for x in b] for b in p.lattice_basis]})


def polytope_from_json(data) -> Polytope:
    return Polytope(
        data["ambient_dim"],
        tuple(tuple(_parse_frac(x) for x in v) for v in data["vertices"]),
        tuple(_parse_frac(x) for x in data["base_point"]),
        tuple(tuple(int(x) for x in b) for b in data["lattice_basis"]))


def fan_to_json(f: FanRays):
    return _tag("fan", {
        "rays": [[_s(x) for x in r] for r in f.rays],
        "maximal_cones": [list(c) for c in f.maximal_cones]})


def fan_from_json(data) -> FanRays:
    return FanRays(tuple(tuple(int(x) for x in r) for r in data["rays"]),
                   tuple(tuple(c) for c in data["maximal_cones"]))


def toric_to_json(t: ToricReport):
    return _tag("toric_report", {
        "complete": t.complete, "fano": t.fano, "gorenstein": t.gorenstein,
        "terminal": t.terminal, "reflexive": t.reflexive,
        "fano_index": t.fano_index,
        "class_group_free_rank": t.class_group_free_rank,
        "class_group_torsion": [_s(x) for x in t.class_group_torsion],
        "spanning_vertex_count": t.spanning_vertex_count,
        "spanning_lattice_point_count": t.spanning_lattice_point_count})


def laurent_to_json(f: LaurentPolynomial):
    return _tag("laurent", {
        "dim": f.dim,
        "terms": [[list(map(int, e)), _s(c)]
                  for e, c in sorted(f.terms.items())]})


def laurent_from_json(data) -> LaurentPolynomial:
    return LaurentPolynomial(
        data["dim"],
        {tuple(e): int(c) for e, c in data["terms"]})


def period_to_json(p: PeriodSequence):
    return _tag("period", {"coefficients": [_s(c) for c in p.coefficients]})


def period_from_json(data) -> PeriodSequence:
    return PeriodSequence(tuple(int(c) for c in data["coefficients"]))
