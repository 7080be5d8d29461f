"""Rational polytopes, normal fans, and toric Fano classification.

Polytopes arise here as graded slices of pointed cones.  They are stored
with their vertex set and the saturated lattice of their affine hull, so
that fans and all toric invariants can be computed in intrinsic lattice
coordinates independent of the ambient embedding.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cones import Cone, _dd
from .errors import EmptyInputError, KrontoricError
from .intlinalg import (content, dot, int_rank, invariant_factors, primitive,
                        saturated_span_basis, smith_normal_form, solve_rational)


@dataclass(frozen=True)
class Polytope:
    """A bounded rational polytope given by its extreme points.

    base_point + span(lattice_basis) is the affine hull; lattice_basis is a
    basis of the saturated direction lattice, so intrinsic coordinates of
    lattice points are integral.
    """

    ambient_dim: int
    vertices: tuple[tuple[Fraction, ...], ...]
    base_point: tuple[Fraction, ...]
    lattice_basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.lattice_basis)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def intrinsic_vertices(self) -> tuple[tuple[Fraction, ...], ...]:
        """Vertices in coordinates of the affine-hull lattice basis."""
        out = []
        for v in self.vertices:
            diff = [a - b for a, b in zip(v, self.base_point)]
            lam = solve_rational(self.lattice_basis, diff)
            assert lam is not None, "vertex outside affine hull basis"
            out.append(tuple(lam))
        return tuple(out)

    def is_lattice_polytope(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)


def polytope_from_points(points, ambient_dim=None) -> Polytope:
    """Convex hull data of finitely many rational points (vertices extracted)."""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if not pts:
        return Polytope(ambient_dim or 0, (), (), ())
    d = len(pts[0])
    base = pts[0]
    den = 1
    for p in pts:
        for x in p:
            den = den * x.denominator // gcd(den, x.denominator)
    scaled = [tuple(int((x - b) * den) for x, b in zip(p, base)) for p in pts]
    basis = saturated_span_basis(scaled)
    if not basis:
        return Polytope(d, (pts[0],), base, ())
    intr = []
    for p in pts:
        lam = solve_rational(basis, [a - b for a, b in zip(p, base)])
        assert lam is not None
        intr.append(tuple(lam))
    verts_idx = _extreme_point_indices(intr)
    verts = tuple(sorted(pts[i] for i in verts_idx))
    return Polytope(d, verts, base, tuple(basis))


def _extreme_point_indices(points) -> list[int]:
    """Indices of the extreme points of a full-dimensional point set."""
    facets = _facets_of_points(points)
    s = len(points[0])
    out = []
    for i, p in enumerate(points):
        tight = [list(y) for (y, c) in facets
                 if sum(Fraction(a) * b for a, b in zip(y, p)) + c == 0]
        if len(tight) >= s and int_rank(tight) == s:
            out.append(i)
    return out


def _facets_of_points(points):
    """Facets [(y, c)] with y.x >= -c for the hull of full-dim rational points."""
    s = len(points[0])
    halfs = []
    for p in points:
        den = 1
        for x in p:
            f = Fraction(x)
            den = den * f.denominator // gcd(den, f.denominator)
        halfs.append(tuple(int(Fraction(x) * den) for x in p) + (den,))
    lin, rays = _dd(s + 1, [], halfs)
    if lin:
        raise KrontoricError("point set is not full-dimensional")
    facets = []
    for (yc, _z) in rays:
        y, c = yc[:s], yc[s]
        if any(y):
            facets.append((y, c))
    return facets


def slice_polytope(cone: Cone, h: int, height=None) -> Polytope:
    """Vertices and affine-hull lattice of {x in cone : height(x) = h}."""
    from .lattice import standard_height

    if height is None:
        if cone.quiver is None:
            raise KrontoricError("no height functional given")
        height = standard_height(cone.quiver)
    weights, den = height
    verts = []
    for r in cone.rays:
        val = sum(w * x for w, x in zip(weights, r))
        if val <= 0:
            raise KrontoricError(f"height not positive on ray {r}")
        scale = Fraction(h * den, val)
        verts.append(tuple(Fraction(x) * scale for x in r))
    if not verts:
        return Polytope(cone.ambient_dim, (), (), ())
    return polytope_from_points(verts, cone.ambient_dim)


@dataclass(frozen=True)
class FanRays:
    """Rays and vertex normal cones of the inner-normal fan of a polytope."""

    rays: tuple[tuple[int, ...], ...]
    maximal_cones: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.rays[0]) if self.rays else 0


def normal_fan_rays(p: Polytope) -> FanRays:
    """Inner-normal fan of the polytope in its intrinsic lattice coordinates."""
    if p.is_empty:
        raise EmptyInputError("empty polytope has no normal fan")
    if p.dim == 0:
        return FanRays((), ())
    intr = p.intrinsic_vertices()
    facets = _facets_of_points(intr)
    rays = []
    ray_index = {}
    for (y, c) in facets:
        prim = primitive(y)
        ray_index[prim] = len(rays)
        rays.append(prim)
    maximal = []
    for v in intr:
        tight = []
        for (y, c) in facets:
            if sum(Fraction(a) * b for a, b in zip(y, v)) + c == 0:
                tight.append(ray_index[primitive(y)])
        maximal.append(tuple(sorted(tight)))
    return FanRays(tuple(rays), tuple(maximal))


@dataclass(frozen=True)
class ToricReport:
    """Classification of the toric variety of a complete fan."""

    complete: bool
    fano: bool = False
    gorenstein: bool = False
    terminal: bool = False
    reflexive: bool = False
    fano_index: int | None = None
    class_group_free_rank: int | None = None
    class_group_torsion: tuple[int, ...] = ()
    spanning_vertex_count: int | None = None
    spanning_lattice_point_count: int | None = None


def lattice_points_of_hull(points) -> list[tuple[int, ...]]:
    """All integer points in conv(points); descent pruned by facet bounds."""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    s = len(pts[0])
    facets = _facets_of_points(pts)
    lo = [min(p[c] for p in pts) for c in range(s)]
    hi = [max(p[c] for p in pts) for c in range(s)]
    lo = [int(x.numerator // x.denominator) for x in lo]
    hi = [-int((-x).numerator // x.denominator) for x in hi]
    # per-facet optimistic suffix masses over the box
    fnorm = [tuple(y) for y, c in facets]
    foff = [c for y, c in facets]
    nfac = len(facets)
    smax = [[0] * (s + 1) for _ in range(nfac)]
    for fi in range(nfac):
        y = fnorm[fi]
        for t in range(s - 1, -1, -1):
            best = max(y[t] * lo[t], y[t] * hi[t])
            smax[fi][t] = smax[fi][t + 1] + best
    out = []
    point = [0] * s
    partial = [Fraction(c) for c in foff]

    def rec(t):
        if t == s:
            out.append(tuple(point))
            return
        for val in range(lo[t], hi[t] + 1):
            ok = True
            for fi in range(nfac):
                acc = partial[fi] + fnorm[fi][t] * val
                if acc + smax[fi][t + 1] < 0:
                    ok = False
                    break
            if not ok:
                continue
            point[t] = val
            for fi in range(nfac):
                partial[fi] += fnorm[fi][t] * val
            rec(t + 1)
            for fi in range(nfac):
                partial[fi] -= fnorm[fi][t] * val
        point[t] = 0

    rec(0)
    return sorted(q for q in out
                  if all(sum(a * b for a, b in zip(fnorm[fi], q)) + foff[fi] >= 0
                         for fi in range(nfac)))


def _fan_is_complete(fan: FanRays) -> bool:
    """Full-rank maximal cones, matched ridges, and interior origin."""
    if not fan.rays:
        return False
    d = fan.dim
    for cone_rays in fan.maximal_cones:
        if int_rank([list(fan.rays[i]) for i in cone_rays]) != d:
            return False
    # origin strictly inside conv(rays)
    try:
        facets = _facets_of_points([tuple(r) for r in fan.rays])
    except KrontoricError:
        return False
    if any(c <= 0 for _, c in facets):
        return False
    # ridge pairing: every facet of every maximal cone is shared exactly twice
    ridge_count: dict = {}
    for ci, cone_rays in enumerate(fan.maximal_cones):
        sub = [fan.rays[i] for i in cone_rays]
        subcone = Cone(d, rays=sub)
        for f in subcone.facets():
            ridge = frozenset(i for i in cone_rays
                              if dot(f, fan.rays[i]) == 0)
            ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
    return all(v == 2 for v in ridge_count.values())


def classify_toric(fan: FanRays, check_complete: bool = True) -> ToricReport:
    """Fano/Gorenstein/terminal/reflexive data of the fan's toric variety.

    Works with Q = conv(ray generators): Fano requires the origin interior
    and every ray generator a vertex of Q; terminal additionally forbids
    lattice points other than the origin and the vertices; reflexive means
    every facet of Q has lattice distance one from the origin.  The class
    group is the cokernel of the ray-evaluation map, via Smith normal form.
    """
    if check_complete and not _fan_is_complete(fan):
        return ToricReport(complete=False)
    rays = [tuple(r) for r in fan.rays]
    d = fan.dim
    facets = _facets_of_points(rays)
    interior = all(c > 0 for _, c in facets)
    vertex_count = 0
    all_vertices = True
    vertex_set = set()
    for r in rays:
        tight = [list(y) for (y, c) in facets if dot(y, r) + c == 0]
        if len(tight) >= d and int_rank(tight) == d:
            vertex_count += 1
            vertex_set.add(r)
        else:
            all_vertices = False
    fano = interior and all_vertices
    reflexive = all(Fraction(c, content(y)) == 1 for y, c in facets)
    pts = lattice_points_of_hull(rays)
    expected = set(vertex_set) | {tuple([0] * d)}
    terminal = fano and set(pts) == expected
    inv = invariant_factors([list(r) for r in rays])
    rank = len(inv)
    free_rank = len(rays) - rank
    torsion = tuple(x for x in inv if x != 1)
    fano_index = _anticanonical_index(rays, d) if fano else None
    return ToricReport(
        complete=True, fano=fano, gorenstein=reflexive, terminal=terminal,
        reflexive=reflexive, fano_index=fano_index,
        class_group_free_rank=free_rank, class_group_torsion=torsion,
        spanning_vertex_count=vertex_count,
        spanning_lattice_point_count=len(pts))


def _anticanonical_index(rays, d) -> int:
    """Largest m with the class of (1,...,1) m-divisible in the class group."""
    m = len(rays)
    U, D, _V = smith_normal_form([list(r) for r in rays])
    rank = sum(1 for i in range(min(m, d)) if D[i][i])
    diag = [D[i][i] for i in range(rank)]
    w = [sum(U[i][j] for j in range(m)) for i in range(m)]

    def divisible(t):
        for i in range(rank):
            if w[i] % gcd(t, diag[i]):
                return False
        for i in range(rank, m):
            if w[i] % t:
                return False
        return True

    g0 = 0
    for i in range(rank, m):
        g0 = gcd(g0, w[i])
    if g0 == 0:
        # anticanonical class is torsion; fall back to torsion orders
        bound = 1
        for di in diag:
            bound = max(bound, di)
        candidates = range(bound, 0, -1)
    else:
        candidates = sorted((t for t in range(1, abs(g0) + 1) if g0 % t == 0),
                            reverse=True)
    for t in candidates:
        if divisible(t):
            return t
    return 1


def polar_dual_vertices(rays) -> list[tuple[int, ...]]:
    """Vertices of the polar dual of conv(rays); requires reflexivity."""
    facets = _facets_of_points([tuple(r) for r in rays])
    out = []
    for y, c in facets:
        if Fraction(c, content(y)) != 1:
            raise KrontoricError("polytope is not reflexive")
        out.append(primitive(y))
    return sorted(out)


def normalized_volume(points, max_dim: int = 9):
    """Lattice-normalized volume of conv(points), by recursive pyramids.

    Exact but exponential in dimension; refuses dimensions above max_dim.
    """
    poly = polytope_from_points(points)
    if poly.dim > max_dim:
        return None
    intr = [tuple(v) for v in poly.intrinsic_vertices()]
    return _normvol_recursive(intr)


def _normvol_recursive(verts):
    s = len(verts[0]) if verts else 0
    if s == 0 or len(verts) == 1:
        return 1 if len(verts) == 1 else 0
    if s == 1:
        xs = [v[0] for v in verts]
        return int(max(xs) - min(xs))
    base = verts[0]
    shifted = [tuple(a - b for a, b in zip(v, base)) for v in verts]
    facets = _facets_of_points(shifted)
    total = 0
    for y, c in facets:
        if c == 0:
            continue  # facet through the apex
        on_f = [v for v in shifted if dot(y, v) + c == 0]
        sub = polytope_from_points(on_f)
        dist = Fraction(c, content(y))
        sub_vol = _normvol_recursive([tuple(x) for x in sub.intrinsic_vertices()])
        contribution = dist * sub_vol
        assert contribution.denominator == 1
        total += int(contribution)
    return total
