"""Exact rational polyhedral cones: double description, membership, intersection.

Cones are stored over the integers: halfspace normals and ray generators
are content-reduced integer vectors.  The double description method runs
entirely in exact arithmetic; adjacency of rays is decided by the
combinatorial zero-set test with a sound rank-based prefilter.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import ShapeError
from .intlinalg import content, dot, int_rank, primitive
from .quiver import QuiverSpec


@dataclass(frozen=True)
class Halfspace:
    """normal . x >= 0, or normal . x == 0 when is_equation."""

    normal: tuple[int, ...]
    is_equation: bool = False

    def __post_init__(self):
        norm = primitive(self.normal)
        if not any(norm):
            raise ShapeError("halfspace normal must be nonzero")
        object.__setattr__(self, "normal", norm)


def _dd(dim, eqs, ineqs):
    """Core incremental double description.

    Returns (lineality basis, [(ray, zeroset)]) for the cone
    {x : e.x == 0, a.x >= 0}; zerosets are bitmasks over the inequality
    list in input order.
    """
    lin = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays = []
    constraints = [(True, tuple(e)) for e in eqs] + [(False, tuple(a)) for a in ineqs]
    nbit = 0
    for is_eq, y in constraints:
        vals_lin = [dot(y, l) for l in lin]
        piv = next((i for i, v in enumerate(vals_lin) if v), None)
        if piv is not None:
            # y is nonzero on the lineality space: split off a pivot direction
            l0, v0 = lin[piv], vals_lin[piv]
            if v0 < 0:
                l0, v0 = tuple(-x for x in l0), -v0
            newlin = [l for i, l in enumerate(lin) if i != piv and not vals_lin[i]]
            newlin += [primitive(tuple(v0 * a - vals_lin[i] * b
                                       for a, b in zip(lin[i], l0)))
                       for i in range(len(lin)) if i != piv and vals_lin[i]]
            adjusted = []
            for r, z in rays:
                val = dot(y, r)
                if val:
                    r = primitive(tuple(v0 * a - val * b for a, b in zip(r, l0)))
                adjusted.append((r, z))
            lin = newlin
            if is_eq:
                rays = adjusted
            else:
                bit = 1 << nbit
                rays = [(r, z | bit) for r, z in adjusted]
                rays.append((l0, bit - 1))
                nbit += 1
            continue
        vals = [(dot(y, r), r, z) for r, z in rays]
        pos = [(v, r, z) for v, r, z in vals if v > 0]
        zero = [(v, r, z) for v, r, z in vals if v == 0]
        neg = [(v, r, z) for v, r, z in vals if v < 0]
        combos = {}
        if pos and neg:
            span = int_rank([list(l) for l in lin] + [list(r) for _, r, _ in vals])
            need = span - len(lin) - 2
            zsets = [z for _, _, z in vals]
            for vp, rp, zp in pos:
                for vn, rn, zn in neg:
                    zc = zp & zn
                    if need > 0 and bin(zc).count("1") < need:
                        continue
                    blocked = False
                    for z2 in zsets:
                        if z2 is zp or z2 is zn:
                            continue
                        if zc & z2 == zc:
                            blocked = True
                            break
                    if blocked:
                        continue
                    rnew = primitive(tuple(vp * a - vn * b for a, b in zip(rn, rp)))
                    combos.setdefault(rnew, zc)
        if is_eq:
            rays = [(r, z) for _, r, z in zero] + list(combos.items())
        else:
            bit = 1 << nbit
            rays = [(r, z) for _, r, z in pos]
            rays += [(r, z | bit) for _, r, z in zero]
            rays += [(r, zc | bit) for r, zc in combos.items()]
            nbit += 1
    deduped = {}
    for r, z in rays:
        deduped[r] = z
    return lin, sorted(deduped.items())


def _canonical_sign(vec):
    for x in vec:
        if x > 0:
            return tuple(vec)
        if x < 0:
            return tuple(-v for v in vec)
    return tuple(vec)


class Cone:
    """A rational polyhedral cone with lazily completed dual representations."""

    def __init__(self, ambient_dim: int,
                 equations=None, inequalities=None, rays=None,
                 quiver: Optional[QuiverSpec] = None):
        if equations is None and inequalities is None and rays is None:
            raise ShapeError("a cone needs halfspaces or rays")
        self.ambient_dim = ambient_dim
        self._eqs = None if equations is None and inequalities is None else \
            tuple(_canonical_sign(primitive(e)) for e in (equations or ()))
        self._ineqs = None if equations is None and inequalities is None else \
            tuple(primitive(a) for a in (inequalities or ()))
        self._rays = None if rays is None else \
            tuple(sorted(primitive(r) for r in rays))
        self._lineality = () if rays is not None else None
        self._facets = None        # irredundant inequality normals
        self._facet_eqs = None     # equations of the span
        self.quiver = quiver

    # -- representations -------------------------------------------------
    @property
    def has_hrep(self) -> bool:
        return self._eqs is not None

    @property
    def has_vrep(self) -> bool:
        return self._rays is not None

    @property
    def equations(self):
        if self._eqs is None:
            self._complete_hrep()
        return self._eqs

    @property
    def inequalities(self):
        if self._ineqs is None:
            self._complete_hrep()
        return self._ineqs

    @property
    def rays(self):
        if self._rays is None:
            self._complete_vrep()
        return self._rays

    @property
    def lineality(self):
        if self._lineality is None:
            self._complete_vrep()
        return self._lineality

    @property
    def pointed(self) -> bool:
        return not self.lineality

    @property
    def dim(self) -> int:
        """Dimension of the linear span of the cone."""
        return int_rank([list(r) for r in self.rays]
                        + [list(l) for l in self.lineality])

    def facets(self):
        """Irredundant inequality normals (facet normals of the cone)."""
        if self._facets is None:
            self._dualize()
        return self._facets

    def span_equations(self):
        """Equations cutting out the linear span of the cone."""
        if self._facet_eqs is None:
            self._dualize()
        return self._facet_eqs

    def _complete_vrep(self):
        lin, rays = _dd(self.ambient_dim, self._eqs, self._ineqs)
        self._lineality = tuple(sorted(_canonical_sign(l) for l in lin))
        self._rays = tuple(sorted(r for r, _ in rays))

    def _dualize(self):
        eqs = [list(l) for l in self.lineality]
        ineqs = [list(r) for r in self.rays]
        lin, rays = _dd(self.ambient_dim, eqs, ineqs)
        self._facet_eqs = tuple(sorted(_canonical_sign(l) for l in lin))
        self._facets = tuple(sorted(r for r, _ in rays))

    def _complete_hrep(self):
        self._dualize()
        self._eqs = self._facet_eqs
        self._ineqs = self._facets

    # -- queries -----------------------------------------------------------
    def contains(self, point) -> bool:
        """Exact membership for a rational point."""
        if self.has_hrep:
            return (all(_fdot(e, point) == 0 for e in self.equations)
                    and all(_fdot(a, point) >= 0 for a in self.inequalities))
        return (all(_fdot(e, point) == 0 for e in self.span_equations())
                and all(_fdot(a, point) >= 0 for a in self.facets()))

    def certify(self):
        """Cross-check the two representations; raises AssertionError on failure."""
        d = self.dim
        nlin = len(self.lineality)
        for r in self.rays:
            for e in self.equations:
                assert dot(e, r) == 0, f"ray {r} violates equation {e}"
            for a in self.inequalities:
                assert dot(a, r) >= 0, f"ray {r} violates inequality {a}"
        for a in self.facets():
            tight = [list(r) for r in self.rays if dot(a, r) == 0]
            tight += [list(l) for l in self.lineality]
            assert int_rank(tight) >= d - 1, \
                f"facet {a} not tight on a spanning set"
        for l in self.lineality:
            assert all(dot(a, l) == 0 for a in self.inequalities)
            assert all(dot(e, l) == 0 for e in self.equations)
        assert nlin + int_rank([list(r) for r in self.rays]) >= d
        return True

    def __eq__(self, other):
        if not isinstance(other, Cone):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim
                and self.rays == other.rays
                and self.lineality == other.lineality)

    def __repr__(self):
        reps = []
        if self._eqs is not None:
            reps.append(f"{len(self._eqs)} eqs, {len(self._ineqs)} ineqs")
        if self._rays is not None:
            reps.append(f"{len(self._rays)} rays")
        return f"Cone(dim={self.ambient_dim}; {'; '.join(reps)})"


def _fdot(a, b):
    return sum(Fraction(x) * Fraction(y) for x, y in zip(a, b))


def double_description(cone: Cone) -> Cone:
    """Complete both representations of `cone` in place and certify them."""
    cone.rays
    cone.inequalities
    cone.facets()
    cone.certify()
    return cone


def membership(point, cone: Cone) -> bool:
    """Exact test that a rational point lies in the cone.

    Uses the halfspace representation when available, otherwise decides
    nonnegative-combination feasibility by exact LP over the rays.
    """
    if cone.has_hrep or cone._facets is not None:
        return cone.contains(point)
    return ray_combination_feasible(cone.rays, point)


def ray_combination_feasible(rays, point) -> bool:
    """Is `point` a nonnegative rational combination of `rays`?  Exact simplex.

    Phase-1 simplex with Bland's rule on {lam >= 0 : R^T lam = point}.
    """
    m = len(point)
    n = len(rays)
    target = [Fraction(x) for x in point]
    # rows: equations sum_j rays[j][i] lam_j = target_i, artificial basis
    rows = []
    for i in range(m):
        row = [Fraction(rays[j][i]) for j in range(n)]
        rhs = target[i]
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        rows.append(row + [rhs])
    nvar = n + m  # structural + artificial
    basis = list(range(n, n + m))
    table = []
    for i, row in enumerate(rows):
        art = [Fraction(int(j == i)) for j in range(m)]
        table.append(row[:n] + art + [row[n]])
    cost = [Fraction(0)] * n + [Fraction(1)] * m + [Fraction(0)]
    # reduced cost row = cost - sum of basic rows (artificials are basic)
    z = [Fraction(0)] * (nvar + 1)
    for j in range(nvar + 1):
        z[j] = cost[j] - sum(table[i][j] for i in range(m))
    while True:
        enter = next((j for j in range(nvar) if z[j] < 0), None)
        if enter is None:
            break
        ratios = [(table[i][nvar] / table[i][enter], basis[i], i)
                  for i in range(m) if table[i][enter] > 0]
        if not ratios:
            break  # unbounded; cannot happen in phase 1
        _, _, leave = min(ratios)
        piv = table[leave][enter]
        table[leave] = [x / piv for x in table[leave]]
        for i in range(m):
            if i != leave and table[i][enter]:
                f = table[i][enter]
                table[i] = [a - f * b for a, b in zip(table[i], table[leave])]
        if z[enter]:
            f = z[enter]
            z = [a - f * b for a, b in zip(z, table[leave])]
        basis[leave] = enter
    objective = -z[nvar]
    return objective == 0


def intersect(c1: Cone, c2: Cone) -> Cone:
    """Intersection by halfspace concatenation, re-certified."""
    if c1.ambient_dim != c2.ambient_dim:
        raise ShapeError("ambient dimensions differ")
    cone = Cone(c1.ambient_dim,
                equations=list(c1.equations) + list(c2.equations),
                inequalities=list(c1.inequalities) + list(c2.inequalities),
                quiver=c1.quiver or c2.quiver)
    return cone


# -- the semi-standard exponent cone ---------------------------------------

def kronecker_halfspaces(spec: QuiverSpec) -> Cone:
    """Halfspace model of the cone of semi-standard pair exponents.

    Nonnegativity on every slot; equal row sums across plus rows and across
    minus rows; and, for each consecutive row pair and each label, the
    counting inequality that forces the entry above a cell to be strictly
    smaller (stated for both sides).
    """
    d = spec.dim
    eqs = []
    for j in range(1, spec.r2):
        v = [0] * d
        for i in range(1, spec.n + 1):
            for k in range(1, spec.r1 + 1):
                v[spec.flat(i, j, k)] += 1
                v[spec.flat(i, j + 1, k)] -= 1
        eqs.append(tuple(v))
    for k in range(1, spec.r1):
        v = [0] * d
        for i in range(1, spec.n + 1):
            for j in range(1, spec.r2 + 1):
                v[spec.flat(i, j, k)] += 1
                v[spec.flat(i, j, k + 1)] -= 1
        eqs.append(tuple(v))
    ineqs = []
    for c in range(d):
        v = [0] * d
        v[c] = 1
        ineqs.append(tuple(v))
    plus = spec.plus_labels()
    for j in range(1, spec.r2):
        for t in range(len(plus)):
            v = [0] * d
            for (s, l) in plus[:t]:
                v[spec.flat(s, j, l)] += 1
            for (s, l) in plus[:t + 1]:
                v[spec.flat(s, j + 1, l)] -= 1
            ineqs.append(tuple(v))
    minus = spec.minus_labels()
    for k in range(1, spec.r1):
        for t in range(len(minus)):
            v = [0] * d
            for (s, m) in minus[:t]:
                v[spec.flat(s, m, k)] += 1
            for (s, m) in minus[:t + 1]:
                v[spec.flat(s, m, k + 1)] -= 1
            ineqs.append(tuple(v))
    return Cone(d, equations=eqs, inequalities=ineqs, quiver=spec)


def _relabeled_kronecker_cone(spec: QuiverSpec, small: QuiverSpec,
                              index_map) -> Cone:
    """Pull the halfspaces of `small`'s cone back along an index bijection."""
    base = kronecker_halfspaces(small)
    d = spec.dim

    def pull(vec):
        out = [0] * d
        for c_small, x in enumerate(vec):
            if x:
                out[index_map(c_small)] = x
        return tuple(out)

    return Cone(d,
                equations=[pull(e) for e in base.equations],
                inequalities=[pull(a) for a in base.inequalities],
                quiver=spec)


def grassmannian_cone_views(spec: QuiverSpec) -> tuple[Cone, Cone]:
    """The two Grassmannian tableau cones identified inside spec's lattice.

    Returns (minus_view, plus_view): the cone of Gr(r1, n*r2) pulled back
    via the vertical-stack-transpose identification, and the cone of
    Gr(r2, n*r1) via the horizontal-stack identification.  Their
    intersection equals the semi-standard exponent cone.
    """
    n, r1, r2 = spec.n, spec.r1, spec.r2
    minus_small = QuiverSpec(n * r2, 1, r1)

    def minus_map(c_small):
        i_prime, k0 = divmod(c_small, r1)
        i, j = divmod(i_prime, r2)
        return spec.flat(i + 1, j + 1, k0 + 1)

    plus_small = QuiverSpec(n * r1, 1, r2)

    def plus_map(c_small):
        i_prime, j0 = divmod(c_small, r2)
        i, k = divmod(i_prime, r1)
        return spec.flat(i + 1, j0 + 1, k + 1)

    return (_relabeled_kronecker_cone(spec, minus_small, minus_map),
            _relabeled_kronecker_cone(spec, plus_small, plus_map))
