"""Lattice point enumeration in graded cones and Hilbert bases.

Enumeration is a depth-first descent over coordinates in the fixed flat
order, pruned exactly: the equality system is put in reduced row echelon
form with pivots on the *last* coordinate of each row's support (so each
equality forces one coordinate), and all constraints prune via suffix
interval bounds.  All-nonnegative "budget" equalities (equal row and
column sums, supplied by callers that know the quiver structure, or
derived by shifting equalities along the grading) give the dynamic
per-coordinate caps that make the search fast.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

from .cones import Cone
from .errors import KrontoricError, ResourceCapError
from .intlinalg import (primitive, rational_matrix_inverse,
                        saturated_span_basis, smith_normal_form,
                        solve_rational)
from .quiver import QuiverSpec


def standard_height(spec: QuiverSpec):
    """The grading functional: coordinate sum divided by lcm(r1, r2)."""
    return (tuple([1] * spec.dim), spec.height_denominator)


def quiver_budget_rows(spec: QuiverSpec, h: int):
    """Implied equal-row-sum equalities at height h, as all-nonneg rows."""
    den = spec.height_denominator
    rows = []
    for j in range(1, spec.r2 + 1):
        vec = [0] * spec.dim
        for i in range(1, spec.n + 1):
            for k in range(1, spec.r1 + 1):
                vec[spec.flat(i, j, k)] = 1
        rows.append((tuple(vec), h * den // spec.r2))
    for k in range(1, spec.r1 + 1):
        vec = [0] * spec.dim
        for i in range(1, spec.n + 1):
            for j in range(1, spec.r2 + 1):
                vec[spec.flat(i, j, k)] = 1
        rows.append((tuple(vec), h * den // spec.r1))
    return rows


def _ceil_div(a, b):
    return -((-a) // b)


def _rref_force_last(eqs):
    """RREF with each row's pivot on its largest support column.

    Returns [(pivot, int row, int rhs)] or None when inconsistent.
    """
    if not eqs:
        return []
    d = len(eqs[0][0])
    pivots: dict[int, list[Fraction]] = {}
    for vec, rhs in eqs:
        row = [Fraction(x) for x in vec] + [Fraction(rhs)]
        for p, pr in pivots.items():
            if row[p]:
                f = row[p] / pr[p]
                row = [a - f * b for a, b in zip(row, pr)]
        p = next((c for c in range(d - 1, -1, -1) if row[c]), None)
        if p is None:
            if row[d]:
                return None
            continue
        for q, pr in list(pivots.items()):
            if pr[p]:
                f = pr[p] / row[p]
                pivots[q] = [a - f * b for a, b in zip(pr, row)]
        pivots[p] = row
    out = []
    for p in sorted(pivots):
        row = pivots[p]
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in row]
        if ints[p] < 0:
            ints = [-x for x in ints]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if g > 1:
            ints = [x // g for x in ints]
        out.append((p, tuple(ints[:d]), ints[d]))
    return out


def _shifted_budgets(eqs, height_vec, height_rhs):
    """Make mixed-sign equalities nonneg by adding multiples of the grading."""
    out = []
    for vec, rhs in eqs:
        if all(x >= 0 for x in vec) or any(w <= 0 for w in height_vec):
            continue
        lam = max(_ceil_div(-x, w) for x, w in zip(vec, height_vec))
        if lam <= 0:
            continue
        out.append((tuple(x + lam * w for x, w in zip(vec, height_vec)),
                    rhs + lam * height_rhs))
    return out


def enumerate_points(d, eqs, ineqs, budget_eqs=(), cap=None, ubs=None):
    """All v in Z^d with v >= 0, eq.v == rhs, a.v >= b, in lex order.

    eqs and ineqs are [(vec, rhs)] pairs; budget_eqs are redundant
    all-nonneg equalities used for pruning; ubs optionally seeds the
    per-coordinate upper bounds.  `cap` bounds the number of points
    produced.
    """
    rref = _rref_force_last(list(eqs))
    if rref is None:
        return []
    vecs, rhss, iseq = [], [], []
    forced = {}
    for p, vec, rhs in rref:
        forced[p] = len(vecs)
        vecs.append(vec)
        rhss.append(rhs)
        iseq.append(True)
    for vec, rhs in budget_eqs:
        vecs.append(tuple(vec))
        rhss.append(rhs)
        iseq.append(True)
    for a, b in ineqs:
        vecs.append(tuple(a))
        rhss.append(b)
        iseq.append(False)
    ncons = len(vecs)

    INF = float("inf")
    ub = [INF] * d if ubs is None else [INF if u is None else u for u in ubs]
    cons = [(vecs[i], rhss[i], iseq[i]) for i in range(ncons)]
    for _ in range(12):
        changed = False
        for vec, rhs, is_eq in cons:
            sup = [o for o in range(d) if vec[o]]
            restmin = sum(vec[o] * ub[o] for o in sup if vec[o] < 0)
            restmax = sum(vec[o] * ub[o] for o in sup if vec[o] > 0)
            for c in sup:
                ac = vec[c]
                if ac > 0:
                    # only equalities bound a positive coefficient from above
                    if not is_eq or restmin == -INF:
                        continue
                    newub = (rhs - restmin) // ac
                else:
                    if restmax == INF:
                        continue
                    newub = (restmax - rhs) // (-ac)
                if newub < ub[c]:
                    ub[c] = max(newub, 0)
                    changed = True
        if not changed:
            break
    if any(u == INF for u in ub):
        raise KrontoricError("enumeration region is unbounded; "
                             "grading not positive on the cone")
    ub = [int(u) for u in ub]

    spos = [[0] * (d + 1) for _ in range(ncons)]
    sneg = [[0] * (d + 1) for _ in range(ncons)]
    for ci in range(ncons):
        vc = vecs[ci]
        for t in range(d - 1, -1, -1):
            a = vc[t]
            spos[ci][t] = spos[ci][t + 1] + (a * ub[t] if a > 0 else 0)
            sneg[ci][t] = sneg[ci][t + 1] + (a * ub[t] if a < 0 else 0)
    bycoord = [[] for _ in range(d)]
    for ci in range(ncons):
        for t in range(d):
            if vecs[ci][t]:
                bycoord[t].append((ci, vecs[ci][t], spos[ci], sneg[ci]))

    out = []
    partial = [0] * ncons
    v = [0] * d

    def rec(t):
        if t == d:
            out.append(tuple(v))
            if cap is not None and len(out) > cap:
                raise ResourceCapError(
                    f"lattice enumeration exceeded {cap} points",
                    cap=cap, partial=True)
            return
        lo, hi = 0, ub[t]
        fci = forced.get(t)
        for ci, a, sp_arr, sn_arr in bycoord[t]:
            rem = rhss[ci] - partial[ci]
            sp = sp_arr[t + 1]
            sn = sn_arr[t + 1]
            if iseq[ci]:
                if ci == fci:
                    if rem % a:
                        return
                    val = rem // a
                    if val < lo or val > hi:
                        return
                    lo = hi = val
                    continue
                if a > 0:
                    hi = min(hi, (rem - sn) // a)
                    lo = max(lo, _ceil_div(rem - sp, a))
                else:
                    hi = min(hi, (sp - rem) // (-a))
                    lo = max(lo, _ceil_div(sn - rem, -a))
            else:
                if a > 0:
                    lo = max(lo, _ceil_div(rem - sp, a))
                else:
                    hi = min(hi, (sp - rem) // (-a))
            if lo > hi:
                return
        for val in range(lo, hi + 1):
            v[t] = val
            if val:
                for ci, a, _, _ in bycoord[t]:
                    partial[ci] += a * val
            rec(t + 1)
            if val:
                for ci, a, _, _ in bycoord[t]:
                    partial[ci] -= a * val
        v[t] = 0

    rec(0)
    return out


def _slice_box(cone: Cone, h: int, weights, den):
    """Per-coordinate floor/ceil bounds of the height-h slice, from the rays."""
    from fractions import Fraction

    d = cone.ambient_dim
    lo = [None] * d
    hi = [None] * d
    for r in cone.rays:
        val = sum(w * x for w, x in zip(weights, r))
        if val <= 0:
            raise KrontoricError(f"height not positive on ray {r}")
        scale = Fraction(h * den, val)
        for c in range(d):
            x = scale * r[c]
            if lo[c] is None or x < lo[c]:
                lo[c] = x
            if hi[c] is None or x > hi[c]:
                hi[c] = x
    lo = [x.numerator // x.denominator if x is not None else 0 for x in lo]
    hi = [-((-x.numerator) // x.denominator) if x is not None else 0
          for x in hi]
    return lo, hi


def lattice_points_at_height(cone: Cone, h: int, height=None,
                             budgets=None, cap=None):
    """All lattice points of the cone at exactly height h, in lex order.

    The cone need not lie in the nonnegative orthant: coordinates are
    shifted by the bounding box of the slice (computed from the rays)
    before the descent.
    """
    if height is None:
        if cone.quiver is None:
            raise KrontoricError("no height functional given")
        height = standard_height(cone.quiver)
    weights, den = height
    if h == 0:
        return [tuple([0] * cone.ambient_dim)]
    d = cone.ambient_dim
    if budgets is None:
        budgets = []
        if cone.quiver is not None and tuple(weights) == tuple([1] * d):
            budgets = quiver_budget_rows(cone.quiver, h)
    budgets = list(budgets) + _shifted_budgets(
        [(e, 0) for e in cone.equations], weights, h * den)
    eqs = [(e, 0) for e in cone.equations]
    eqs.append((tuple(weights), h * den))
    ineqs = [(a, 0) for a in cone.inequalities]
    orthant = cone.has_hrep and all(
        any(a[c] == 1 and sum(map(abs, a)) == 1 for a in cone.inequalities)
        for c in range(d))
    if orthant:
        pts = enumerate_points(d, eqs, ineqs, budget_eqs=budgets, cap=cap)
        return pts
    lo, hi = _slice_box(cone, h, weights, den)
    if all(x >= 0 for x in lo):
        return enumerate_points(d, eqs, ineqs, budget_eqs=budgets, cap=cap,
                                ubs=[x for x in hi])
    # substitute w = v - lo >= 0
    shifted_eqs = [(vec, rhs - sum(a * b for a, b in zip(vec, lo)))
                   for vec, rhs in eqs]
    shifted_ineqs = [(vec, rhs - sum(a * b for a, b in zip(vec, lo)))
                     for vec, rhs in ineqs]
    shifted_budgets = [(vec, rhs - sum(a * b for a, b in zip(vec, lo)))
                       for vec, rhs in budgets]
    pts = enumerate_points(d, shifted_eqs, shifted_ineqs,
                           budget_eqs=shifted_budgets, cap=cap,
                           ubs=[b - a for a, b in zip(lo, hi)])
    return [tuple(x + o for x, o in zip(p, lo)) for p in pts]


def lattice_points_at_degree(cone: Cone, spec: QuiverSpec, a: int, cap=None):
    """Degree-a lattice points (plus-side row sums a*r1) of a quiver cone."""
    h, rem = divmod(a * spec.r1 * spec.r2, spec.height_denominator)
    assert rem == 0
    return lattice_points_at_height(cone, h, standard_height(spec), cap=cap)


class HilbertResult:
    """Hilbert basis output: generators by height plus certification data."""

    def __init__(self, generators, certified_up_to, points_per_height,
                 window_violations=()):
        self.generators = generators          # list of (height, tuple)
        self.certified_up_to = certified_up_to
        self.points_per_height = points_per_height
        self.window_violations = tuple(window_violations)

    def by_height(self):
        out = {}
        for h, g in self.generators:
            out.setdefault(h, []).append(g)
        return out

    def counts(self):
        return {h: len(gs) for h, gs in sorted(self.by_height().items())}


def hilbert_basis(cone: Cone, height=None, max_degree: int = 4,
                  certify_window: int = 2, monoid_membership=None,
                  budgets_for=None, cap=None) -> HilbertResult:
    """Degree-slice Hilbert basis of the monoid of cone lattice points.

    A height-h point is a generator iff it is not (generator of height
    h' < h) + (monoid point of height h-h').  Heights max_degree+1 ..
    max_degree+certify_window are additionally verified to contain no new
    generators; `certified_up_to` reports how far that succeeded.

    monoid_membership: optional predicate refining cone membership (the
    matching-field monoid uses column factorization); when given, a point
    counts as a monoid element only if it also satisfies the predicate.
    """
    if not cone.pointed:
        raise KrontoricError("hilbert_basis requires a pointed cone")
    if height is None:
        if cone.quiver is None:
            raise KrontoricError("no height functional given")
        height = standard_height(cone.quiver)
    weights, den = height
    for r in cone.rays:
        val = sum(w * x for w, x in zip(weights, r))
        if val <= 0:
            raise KrontoricError(f"height not positive on ray {r}")
    ineq_mat = np.array(cone.inequalities, dtype=np.int64) \
        if cone.inequalities else np.zeros((0, cone.ambient_dim), dtype=np.int64)
    orthant = all(x >= 0 for r in cone.rays for x in r)

    gens: list[tuple[int, tuple[int, ...]]] = []
    gen_arrays: list[tuple[int, np.ndarray]] = []
    points_per_height = {}
    violations = []
    certified = 0

    for h in range(1, max_degree + certify_window + 1):
        budgets = budgets_for(h) if budgets_for is not None else None
        pts = lattice_points_at_height(cone, h, height, budgets=budgets, cap=cap)
        if monoid_membership is not None:
            pts = [p for p in pts if monoid_membership(p)]
        points_per_height[h] = len(pts)
        if not pts:
            certified = h
            continue
        mat = np.array(pts, dtype=np.int64)
        alive = np.ones(len(pts), dtype=bool)
        for gh, garr in gen_arrays:
            if gh >= h:
                break
            idx = np.nonzero(alive)[0]
            if idx.size == 0:
                break
            diff = mat[idx] - garr
            if orthant:
                ok = (diff >= 0).all(axis=1)
            else:
                ok = np.ones(len(diff), dtype=bool)
            if not ok.any():
                continue
            sub = idx[ok]
            dd = diff[ok]
            if ineq_mat.size:
                ok2 = (dd @ ineq_mat.T >= 0).all(axis=1)
            else:
                ok2 = np.ones(len(sub), dtype=bool)
            if monoid_membership is not None and ok2.any():
                conf = np.fromiter(
                    (monoid_membership(tuple(int(x) for x in w))
                     for w in dd[ok2]), dtype=bool, count=int(ok2.sum()))
                sel = sub[ok2][conf]
            else:
                sel = sub[ok2]
            alive[sel] = False
        new_idx = np.nonzero(alive)[0]
        if h <= max_degree:
            for i in new_idx:
                vec = tuple(int(x) for x in mat[i])
                gens.append((h, vec))
                gen_arrays.append((h, mat[i].copy()))
            certified = h
        else:
            if new_idx.size:
                violations.extend(
                    tuple(int(x) for x in mat[i]) for i in new_idx)
                break
            certified = h
    return HilbertResult(gens, certified, points_per_height, violations)


# -- independent oracle: simplicial decomposition + parallelepipeds --------

def _triangulate_rays(rays):
    """Index tuples of a simplicial decomposition of cone(rays); small cones."""
    from .intlinalg import int_rank

    rank = int_rank([list(r) for r in rays])
    idx = list(range(len(rays)))

    def rec(indices):
        sub = [rays[i] for i in indices]
        r = int_rank([list(x) for x in sub])
        if len(indices) == r:
            return [tuple(indices)]
        sub_cone = Cone(len(rays[0]), rays=sub)
        apex = indices[0]
        apex_vec = rays[apex]
        simplices = []
        for f in sub_cone.facets():
            if sum(a * b for a, b in zip(f, apex_vec)) == 0:
                continue
            on_f = [i for i in indices
                    if sum(a * b for a, b in zip(f, rays[i])) == 0]
            for s in rec(on_f):
                simplices.append(tuple(sorted((apex,) + s)))
        return simplices

    return rec(idx)


def _parallelepiped_points(simplex_rays):
    """Nonzero lattice points of {sum lam_i r_i : 0 <= lam_i < 1}."""
    basis = saturated_span_basis(simplex_rays)
    s = len(basis)
    coords = []
    for r in simplex_rays:
        x = solve_rational(basis, list(r))
        assert x is not None and all(f.denominator == 1 for f in x)
        coords.append([int(f) for f in x])
    M = [[coords[j][i] for j in range(s)] for i in range(s)]  # columns = rays
    U, D, V = smith_normal_form(M)
    diag = [D[i][i] for i in range(s)]
    assert all(diag), "simplex rays not independent"
    Uinv = rational_matrix_inverse(U)
    Minv = rational_matrix_inverse(M)
    pts = []

    def gen(idx, y):
        if idx == s:
            x0 = [sum(Uinv[i][j] * y[j] for j in range(s)) for i in range(s)]
            lam = [sum(Minv[i][j] * x0[j] for j in range(s)) for i in range(s)]
            lam = [f - (f.numerator // f.denominator) for f in lam]
            x = [sum(M[i][j] * lam[j] for j in range(s)) for i in range(s)]
            assert all(f.denominator == 1 for f in x)
            x = [int(f) for f in x]
            if any(x):
                amb = tuple(sum(x[i] * basis[i][c] for i in range(s))
                            for c in range(len(simplex_rays[0])))
                pts.append(amb)
            return
        for val in range(diag[idx]):
            gen(idx + 1, y + [val])

    gen(0, [])
    return pts


def hilbert_basis_exact(cone: Cone, height=None, max_index=200_000) -> list:
    """Hilbert basis by simplicial subdivision; exact but for small cones only.

    Candidates are the primitive rays plus the fundamental-parallelepiped
    lattice points of each simplex of a triangulation; irreducibles remain.
    """
    if not cone.pointed:
        raise KrontoricError("pointed cone required")
    rays = list(cone.rays)
    if not rays:
        return []
    candidates = set(rays)
    total = 0
    for simplex in _triangulate_rays(rays):
        pts = _parallelepiped_points([rays[i] for i in simplex])
        total += len(pts)
        if total > max_index:
            raise ResourceCapError(
                f"parallelepiped enumeration exceeded {max_index} points",
                cap=max_index)
        candidates.update(p for p in pts if cone.contains(p))
    if height is None and cone.quiver is not None:
        height = standard_height(cone.quiver)

    def hval(v):
        if height is None:
            return sum(v)
        return sum(w * x for w, x in zip(height[0], v))

    cand = sorted(candidates, key=lambda v: (hval(v), v))
    result = []
    for v in cand:
        reducible = False
        for g in cand:
            if g == v:
                continue
            w = tuple(a - b for a, b in zip(v, g))
            if not any(w):
                continue
            if all(x >= 0 for x in w) and cone.contains(w):
                reducible = True
                break
        if not reducible:
            result.append(v)
    return result
