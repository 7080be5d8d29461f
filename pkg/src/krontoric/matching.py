"""Matching fields, canonical tableaux, and the SAGBI verification pipeline.

A grading on the quiver coordinates induces gradings on the two
Grassmannians whose tableau cones cut out the semi-standard exponent cone.
When each graded Pluecker coordinate has a unique maximal monomial, the
argmax permutations form matching fields; the pipeline intersects the two
matching-field cones, computes generators of the intersection monoid,
builds a canonical linked pair for each generator, and verifies that the
expanded semi-invariant has that generator as its unique leading monomial.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Optional

from .cones import Cone, intersect
from .errors import (IncoherentGradingError, KrontoricError, ShapeError,
                     UnsupportedError)
from .lattice import hilbert_basis, quiver_budget_rows, standard_height
from .polytopes import (FanRays, Polytope, classify_toric, normal_fan_rays,
                        polytope_from_points, slice_polytope, ToricReport)
from .quiver import QuiverSpec
from .semiinvariants import (Grading, expand, grading_value, leading_monomial)
from .tableaux import LinkedPair, Tableau, build_linked_pair, mon_plus


@dataclass(frozen=True)
class GrassmannianSpec:
    """One of the two Grassmannian views of the quiver coordinate lattice.

    side 'plus' is Gr(r2, n*r1) via horizontal stacking of the arrow
    matrices; side 'minus' is Gr(r1, n*r2) via vertical stacking followed
    by transposition.
    """

    quiver: QuiverSpec
    side: str

    def __post_init__(self):
        if self.side not in ("plus", "minus"):
            raise ShapeError("side must be 'plus' or 'minus'")

    @property
    def r(self) -> int:
        return self.quiver.r2 if self.side == "plus" else self.quiver.r1

    @property
    def ground_size(self) -> int:
        q = self.quiver
        return q.n * q.r1 if self.side == "plus" else q.n * q.r2

    def cell(self, p: int, q: int) -> tuple[int, int, int]:
        """Quiver coordinate (i, j, k) of matrix entry (row p, column q)."""
        quiver = self.quiver
        if self.side == "plus":
            i, k0 = divmod(q - 1, quiver.r1)
            return (i + 1, p, k0 + 1)
        i, j0 = divmod(q - 1, quiver.r2)
        return (i + 1, j0 + 1, p)

    def ground_label(self, q: int) -> tuple[int, int]:
        """Tableau label of ground-set element q."""
        quiver = self.quiver
        if self.side == "plus":
            i, k0 = divmod(q - 1, quiver.r1)
            return (i + 1, k0 + 1)
        i, j0 = divmod(q - 1, quiver.r2)
        return (i + 1, j0 + 1)


@dataclass(frozen=True)
class MatchingField:
    """One permutation per size-r subset of the ground set.

    assignment maps each subset (increasing tuple) to a tuple sigma with
    sigma[t] = the matrix row (1-based) receiving the t-th smallest subset
    element.
    """

    r: int
    ground_size: int
    assignment: dict
    grassmannian: Optional[GrassmannianSpec] = None

    def __post_init__(self):
        expected = len(list(combinations(range(self.ground_size), self.r)))
        if len(self.assignment) != expected:
            raise ShapeError("matching field must be total on all subsets")

    def is_identity(self) -> bool:
        ident = tuple(range(1, self.r + 1))
        return all(s == ident for s in self.assignment.values())


def block_diagonal_mf(b: int, r: int, n: int,
                      grassmannian: Optional[GrassmannianSpec] = None
                      ) -> MatchingField:
    """The 2-block matching field: swap the first two rows exactly when the
    subset meets {1..b} in one element."""
    if not 0 <= b <= n:
        raise ShapeError("block size out of range")
    ident = tuple(range(1, r + 1))
    swapped = (2, 1) + tuple(range(3, r + 1)) if r >= 2 else ident
    assignment = {}
    for j_set in combinations(range(1, n + 1), r):
        inter = sum(1 for q in j_set if q <= b)
        assignment[j_set] = swapped if inter == 1 else ident
    return MatchingField(r, n, assignment, grassmannian)


def grading_c0(spec: QuiverSpec) -> Grading:
    """The diagonal-selecting grading: entry (i, j, k) -> k*j*(r2+1)^(i-1)."""
    entries = [0] * spec.dim
    for i in range(1, spec.n + 1):
        for j in range(1, spec.r2 + 1):
            for k in range(1, spec.r1 + 1):
                entries[spec.flat(i, j, k)] = k * j * (spec.r2 + 1) ** (i - 1)
    return Grading(spec, tuple(entries))


def grading_c2(spec: QuiverSpec) -> Grading:
    """The 2-block grading: as grading_c0 with the first two rows of the
    first arrow block replaced by dominant weights (r2+1)^n and 2(r2+1)^n.

    Only defined when r1 == 2; applying the replacement twice is idempotent.
    """
    if spec.r1 != 2:
        raise UnsupportedError("the 2-block grading requires r1 == 2")
    entries = list(grading_c0(spec).entries)
    big = (spec.r2 + 1) ** spec.n
    for k in range(1, spec.r1 + 1):
        entries[spec.flat(1, 1, k)] = k * big
        entries[spec.flat(1, 2, k)] = 2 * k * big
    return Grading(spec, tuple(entries))


def induced_matching_field(grading: Grading,
                           gspec: GrassmannianSpec) -> MatchingField:
    """Argmax permutation per subset; raises IncoherentGradingError on a tie."""
    r = gspec.r
    weights = {}
    for p in range(1, r + 1):
        for q in range(1, gspec.ground_size + 1):
            weights[(p, q)] = grading.entries[
                grading.spec.flat(*gspec.cell(p, q))]
    assignment = {}
    offenders = []
    perms = list(permutations(range(1, r + 1)))
    for j_set in combinations(range(1, gspec.ground_size + 1), r):
        best, arg, tie = None, None, False
        for sigma in perms:
            w = sum(weights[(sigma[t], j_set[t])] for t in range(r))
            if best is None or w > best:
                best, arg, tie = w, sigma, False
            elif w == best:
                tie = True
        if tie:
            offenders.append(j_set)
        assignment[j_set] = arg
    if offenders:
        raise IncoherentGradingError(
            f"grading has tied maxima on {len(offenders)} subsets",
            offenders=offenders)
    return MatchingField(r, gspec.ground_size, assignment, gspec)


@dataclass(frozen=True)
class CatalogColumn:
    """One chosen Pluecker monomial: its word, subset, exponent, and column."""

    word: tuple[tuple[int, int], ...]   # labels read down the rows
    subset: tuple[int, ...]
    exponent: tuple[int, ...]           # flat quiver-lattice exponent
    column: Tableau                     # single-column tableau


class ColumnCatalog:
    """Catalog of chosen column monomials, lex-sorted by label word."""

    def __init__(self, mf: MatchingField):
        if mf.grassmannian is None:
            raise ShapeError("catalog needs a Grassmannian-attached matching field")
        gspec = mf.grassmannian
        quiver = gspec.quiver
        cols = []
        for j_set, sigma in mf.assignment.items():
            by_row = {}
            expo = [0] * quiver.dim
            for t, q in enumerate(j_set):
                i, jj, kk = gspec.cell(sigma[t], q)
                expo[quiver.flat(i, jj, kk)] += 1
                by_row[sigma[t]] = gspec.ground_label(q)
            word = tuple(by_row[p] for p in range(1, gspec.r + 1))
            column = Tableau(tuple((lab,) for lab in word))
            cols.append(CatalogColumn(word, tuple(j_set), tuple(expo), column))
        cols.sort(key=lambda c: c.word)
        self.columns = tuple(cols)
        self.grassmannian = gspec

    def __len__(self):
        return len(self.columns)

    def exponents(self):
        return [c.exponent for c in self.columns]


def mf_cone(mf: MatchingField) -> Cone:
    """Cone over the chosen monomial exponents, in quiver coordinates."""
    cat = ColumnCatalog(mf)
    cone = Cone(mf.grassmannian.quiver.dim, rays=cat.exponents(),
                quiver=mf.grassmannian.quiver)
    return cone


def mf_polytope(mf: MatchingField) -> Polytope:
    """Convex hull of the chosen monomial exponents."""
    cat = ColumnCatalog(mf)
    return polytope_from_points(cat.exponents())


class ColumnFactorizer:
    """Decides whether an exponent is a sum of catalog column exponents.

    Exact-cover search: always branch on a column covering the first
    nonzero coordinate; memoized on the remaining vector.
    """

    def __init__(self, catalog: ColumnCatalog):
        self.cols = [c.exponent for c in catalog.columns]
        dim = len(self.cols[0]) if self.cols else 0
        self.cover = [[col for col in self.cols if col[t]] for t in range(dim)]
        self.r = catalog.grassmannian.r
        self._cache: dict[tuple, bool] = {}

    def feasible(self, v) -> bool:
        v = tuple(v)
        if any(x < 0 for x in v):
            return False
        if sum(v) % self.r:
            return False
        return self._rec(v)

    def _rec(self, v) -> bool:
        hit = self._cache.get(v)
        if hit is not None:
            return hit
        t = next((c for c, x in enumerate(v) if x), None)
        if t is None:
            self._cache[v] = True
            return True
        ok = False
        for col in self.cover[t]:
            w = tuple(a - b for a, b in zip(v, col))
            if all(x >= 0 for x in w) and self._rec(w):
                ok = True
                break
        self._cache[v] = ok
        return ok


@dataclass(frozen=True)
class CanonicalFactorization:
    """Column multiplicities of the lex-maximal factorization of a monomial."""

    multiplicities: tuple[int, ...]

    def tableau(self, catalog: ColumnCatalog) -> Tableau:
        r = catalog.grassmannian.r
        rows = [[] for _ in range(r)]
        for mult, col in zip(self.multiplicities, catalog.columns):
            for _ in range(mult):
                for p in range(r):
                    rows[p].append(col.word[p])
        return Tableau(tuple(tuple(row) for row in rows))


def canonical_factorization(m, catalog: ColumnCatalog,
                            node_cap: int = 2_000_000
                            ) -> Optional[CanonicalFactorization]:
    """Lex-maximal multiplicity vector over the catalog with given product.

    Depth-first over catalog order trying the largest multiplicity first;
    the first complete factorization found is the lex maximum.
    """
    from .errors import ResourceCapError

    cols = [c.exponent for c in catalog.columns]
    ncol = len(cols)
    dim = len(m)
    suffix_support = [0] * (ncol + 1)
    for idx in range(ncol - 1, -1, -1):
        mask = suffix_support[idx + 1]
        for t in range(dim):
            if cols[idx][t]:
                mask |= 1 << t
        suffix_support[idx] = mask
    best = None
    nodes = 0

    def rec(idx, rem, acc):
        nonlocal best, nodes
        if best is not None:
            return
        nodes += 1
        if nodes > node_cap:
            raise ResourceCapError(
                f"canonical factorization search exceeded {node_cap} nodes",
                cap=node_cap)
        rem_mask = 0
        for t in range(dim):
            if rem[t]:
                rem_mask |= 1 << t
        if rem_mask == 0:
            best = tuple(acc) + (0,) * (ncol - idx)
            return
        if idx == ncol or rem_mask & ~suffix_support[idx]:
            return
        col = cols[idx]
        mm = None
        for t in range(dim):
            if col[t]:
                q = rem[t] // col[t]
                mm = q if mm is None else min(mm, q)
        for mult in range(mm, -1, -1):
            acc.append(mult)
            nxt = tuple(a - mult * b for a, b in zip(rem, col)) if mult else rem
            rec(idx + 1, nxt, acc)
            acc.pop()
            if best is not None:
                return

    rec(0, tuple(m), [])
    return None if best is None else CanonicalFactorization(best)


def canonical_tableau(m, catalog: ColumnCatalog) -> Optional[Tableau]:
    """The tableau of the lex-maximal factorization of m, or None."""
    fac = canonical_factorization(m, catalog)
    return None if fac is None else fac.tableau(catalog)


def canonical_linked_pair(v, cat_plus: ColumnCatalog, cat_minus: ColumnCatalog,
                          spec: QuiverSpec) -> Optional[LinkedPair]:
    """Canonical plus and minus tableaux for v, linked; None if either fails."""
    tp = canonical_tableau(v, cat_plus)
    tm = canonical_tableau(v, cat_minus)
    if tp is None or tm is None:
        return None
    pair = build_linked_pair(tp, tm, spec)
    assert pair is not None, "canonical tableaux with equal product must link"
    return pair


def _row_permuted_pair(pair: LinkedPair, sigma, tau,
                       spec: QuiverSpec) -> LinkedPair:
    """Relink after permuting plus rows by sigma and minus rows by tau.

    sigma and tau are 1-based images; labels referencing the permuted rows
    are remapped so the result is again a linked pair.
    """
    plus_rows = [None] * len(pair.plus.rows)
    for j, row in enumerate(pair.plus.rows, start=1):
        plus_rows[sigma[j - 1] - 1] = tuple(
            sorted((i, tau[k - 1]) for (i, k) in row))
    minus_rows = [None] * len(pair.minus.rows)
    for k, row in enumerate(pair.minus.rows, start=1):
        minus_rows[tau[k - 1] - 1] = tuple(
            sorted((i, sigma[j - 1]) for (i, j) in row))
    new = build_linked_pair(Tableau(tuple(plus_rows)),
                            Tableau(tuple(minus_rows)), spec)
    assert new is not None
    return new


@dataclass
class GeneratorRecord:
    exponent: tuple[int, ...]
    height: int
    pair: Optional[LinkedPair]
    lm_verified: bool
    fallback_used: bool
    fallback_found: bool = False


@dataclass
class PipelineReport:
    """Everything the matching-field SAGBI verification produced."""

    spec: QuiverSpec
    coherent: bool
    incoherent_subsets: tuple = ()
    grassmannian_sagbi_assumed: bool = True
    degree2_closure_checked: tuple[bool, bool] | None = None
    generators: list[GeneratorRecord] = field(default_factory=list)
    certified_up_to: int = 0
    points_per_height: dict = field(default_factory=dict)
    nonfactorizable_points: int = 0
    cone: Optional[Cone] = None
    polytope: Optional[Polytope] = None
    fan: Optional[FanRays] = None
    toric: Optional[ToricReport] = None

    @property
    def all_verified(self) -> bool:
        return bool(self.generators) and all(g.lm_verified or g.fallback_found
                                             for g in self.generators)

    @property
    def any_fallback(self) -> bool:
        return any(g.fallback_used for g in self.generators)

    def generator_counts(self):
        out = {}
        for g in self.generators:
            out[g.height] = out.get(g.height, 0) + 1
        return dict(sorted(out.items()))


def degree2_closure_evidence(catalog: ColumnCatalog) -> bool:
    """Do all degree-2 lattice points of the column cone factor into columns?

    Supporting desk-scale evidence for the imported statement that the
    chosen column monomials generate the initial algebra; not a proof.
    """
    from .lattice import lattice_points_at_height

    gspec = catalog.grassmannian
    quiver = gspec.quiver
    cone = Cone(quiver.dim, rays=catalog.exponents(), quiver=quiver)
    r = gspec.r
    height = (tuple([1] * quiver.dim), r)  # column count as the grading
    pts = lattice_points_at_height(cone, 2, height, budgets=())
    fac = ColumnFactorizer(catalog)
    return all(fac.feasible(p) for p in pts)


def sagbi_pipeline(spec: QuiverSpec, grading: Grading,
                   max_degree: int = 4, certify_window: int = 2,
                   orbit_cap: int = 50_000_000,
                   check_degree2_closure: bool = True) -> PipelineReport:
    """Run the full matching-field verification for one grading.

    Stages: induce matching fields on both Grassmannian views (coherence
    required); compute generators of the intersection monoid by degree
    slices with column-factorization membership; build the canonical
    linked pair of each generator; verify its unique leading monomial;
    on failure search row permutations; finally compute the degree-one
    slice polytope, its normal fan, and the toric classification.
    """
    report = PipelineReport(spec=spec, coherent=True)
    try:
        mf_minus = induced_matching_field(
            grading, GrassmannianSpec(spec, "minus"))
        mf_plus = induced_matching_field(
            grading, GrassmannianSpec(spec, "plus"))
    except IncoherentGradingError as exc:
        report.coherent = False
        report.incoherent_subsets = exc.offenders
        return report
    cat_minus = ColumnCatalog(mf_minus)
    cat_plus = ColumnCatalog(mf_plus)
    if check_degree2_closure:
        report.degree2_closure_checked = (
            degree2_closure_evidence(cat_minus),
            degree2_closure_evidence(cat_plus))
    cone = intersect(mf_cone(mf_minus), mf_cone(mf_plus))
    report.cone = cone
    fac_minus = ColumnFactorizer(cat_minus)
    fac_plus = ColumnFactorizer(cat_plus)

    def in_monoid(v):
        return fac_plus.feasible(v) and fac_minus.feasible(v)

    hres = hilbert_basis(cone, standard_height(spec),
                         max_degree=max_degree,
                         certify_window=certify_window,
                         monoid_membership=in_monoid,
                         budgets_for=lambda h: quiver_budget_rows(spec, h))
    report.certified_up_to = hres.certified_up_to
    report.points_per_height = hres.points_per_height
    for h, v in hres.generators:
        pair = canonical_linked_pair(v, cat_plus, cat_minus, spec)
        rec = GeneratorRecord(v, h, pair, False, False)
        if pair is not None:
            f = expand(pair, spec, cap=orbit_cap)
            arg, unique = leading_monomial(f, grading)
            rec.lm_verified = unique and arg == v
            if not rec.lm_verified:
                rec.fallback_used = True
                rec.fallback_found = _fallback_search(
                    pair, v, grading, spec, orbit_cap)
        report.generators.append(rec)
    report.polytope = slice_polytope(cone, 1, standard_height(spec))
    report.fan = normal_fan_rays(report.polytope)
    report.toric = classify_toric(report.fan)
    return report


def _fallback_search(pair: LinkedPair, target, grading: Grading,
                     spec: QuiverSpec, orbit_cap: int) -> bool:
    """Row-permutation search: plus permutations outer, minus inner, lex order."""
    for sigma in permutations(range(1, spec.r2 + 1)):
        for tau in permutations(range(1, spec.r1 + 1)):
            if sigma == tuple(range(1, spec.r2 + 1)) and \
                    tau == tuple(range(1, spec.r1 + 1)):
                continue
            candidate = _row_permuted_pair(pair, sigma, tau, spec)
            f = expand(candidate, spec, cap=orbit_cap)
            arg, unique = leading_monomial(f, grading)
            if unique and arg == target:
                return True
    return False
