"""Semi-invariants from linked pairs: signed Weyl-orbit expansion and checks.

The semi-invariant of a linked pair is the signed sum over
Sym(r1)^{alpha1} x Sym(r2)^{alpha2} of the monomials obtained by letting
each minus column permute the second label components and each plus column
permute the row positions.  The orbit sum below is the definition of
record; it is streamed in blocks and accumulated exactly in integers.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

import numpy as np

from .errors import (EmptyInputError, InvalidGroupElementError,
                     ResourceCapError, ShapeError)
from .intlinalg import rational_det, rational_matrix_inverse
from .quiver import QuiverSpec
from .tableaux import LinkedPair

DEFAULT_ORBIT_CAP = 50_000_000
_BLOCK_ROWS = 2_000_000


@dataclass(frozen=True)
class Grading:
    """A nonnegative integer weight for every coordinate x^i_{jk}."""

    spec: QuiverSpec
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.spec.dim:
            raise ShapeError("grading length does not match the quiver")
        if any(x < 0 for x in self.entries):
            raise ShapeError("grading entries must be nonnegative")

    def entry(self, i, j, k) -> int:
        return self.entries[self.spec.flat(i, j, k)]

    def matrices(self):
        """The grading as an n-tuple of r2 x r1 integer matrices."""
        s = self.spec
        return tuple(
            tuple(tuple(self.entry(i, j, k) for k in range(1, s.r1 + 1))
                  for j in range(1, s.r2 + 1))
            for i in range(1, s.n + 1))


@dataclass(frozen=True)
class SemiInvariant:
    """Sparse integer polynomial in the x^i_{jk} with its weight data."""

    spec: QuiverSpec
    terms: dict  # exponent tuple -> nonzero int coefficient
    alpha: tuple[int, int]  # (minus column count, plus column count)

    @property
    def character(self) -> tuple[int, int]:
        return (-self.alpha[0], self.alpha[1])

    @property
    def total_degree(self) -> int:
        return self.alpha[1] * self.spec.r2

    def __len__(self):
        return len(self.terms)


def _perm_data(r):
    perms = list(permutations(range(r)))
    signs = []
    for p in perms:
        inv = sum(1 for a in range(r) for b in range(a + 1, r) if p[a] > p[b])
        signs.append(-1 if inv % 2 else 1)
    return np.array(perms, dtype=np.int64), np.array(signs, dtype=np.int64)


def expand(pair: LinkedPair, spec: QuiverSpec,
           cap: int = DEFAULT_ORBIT_CAP) -> SemiInvariant:
    """The signed Weyl-orbit expansion of a linked pair, exactly.

    Streams the orbit in blocks; within a block the monomials are built by
    vectorized index arithmetic and identical exponents are merged by an
    exact integer reduction, so the result is independent of the blocking.
    """
    alpha1, alpha2 = pair.n_columns
    if not pair.atoms:
        return SemiInvariant(spec, {tuple([0] * spec.dim): 1}, (0, 0))
    p1, s1 = _perm_data(spec.r1)
    p2, s2 = _perm_data(spec.r2)
    n1, n2 = len(p1), len(p2)
    orbit = n1 ** alpha1 * n2 ** alpha2
    if orbit > cap:
        raise ResourceCapError(
            f"orbit size {orbit} exceeds the cap of {cap}", cap=cap)

    rho_tuples = np.array(list(product(range(n2), repeat=alpha2)),
                          dtype=np.int64)
    nrho = len(rho_tuples)
    rho_sign = np.prod(s2[rho_tuples], axis=1) if alpha2 else \
        np.ones(1, dtype=np.int64)
    atoms = [(a.arrow, a.plus_pos[0], a.plus_pos[1] - 1,
              a.minus_pos[0], a.minus_pos[1] - 1) for a in pair.atoms]
    natoms = len(atoms)
    dtype = np.int16 if natoms > 120 else np.int8

    taus_per_block = max(1, _BLOCK_ROWS // max(nrho, 1))
    acc: dict[bytes, int] = {}
    block_tuples = []
    block_signs = []

    def flush():
        if not block_tuples:
            return
        tau_rows = np.array(block_tuples, dtype=np.int64)
        tau_sign = np.array(block_signs, dtype=np.int64)
        ntau = len(tau_rows)
        rows = np.zeros((ntau * nrho, spec.dim), dtype=dtype)
        sign = (tau_sign[:, None] * rho_sign[None, :]).ravel()
        ar = np.arange(ntau * nrho)
        for (i, j, cp, k, cm) in atoms:
            jj = p2[rho_tuples[:, cp], j - 1]            # 0-based row, (nrho,)
            kk = p1[tau_rows[:, cm], k - 1]              # (ntau,)
            idx = ((i - 1) * spec.r2 + jj[None, :]) * spec.r1 + kk[:, None]
            np.add.at(rows, (ar, idx.ravel()), 1)
        order = np.lexsort(rows.T[::-1])
        rows = rows[order]
        sign = sign[order]
        boundary = np.nonzero(np.any(rows[1:] != rows[:-1], axis=1))[0] + 1
        starts = np.concatenate([[0], boundary])
        coefs = np.add.reduceat(sign, starts)
        for row, coef in zip(rows[starts], coefs):
            if coef:
                key = row.astype(np.int16).tobytes()
                newc = acc.get(key, 0) + int(coef)
                if newc:
                    acc[key] = newc
                elif key in acc:
                    del acc[key]
        block_tuples.clear()
        block_signs.clear()

    for tt in product(range(n1), repeat=alpha1):
        block_tuples.append(tt)
        block_signs.append(int(np.prod(s1[list(tt)])) if alpha1 else 1)
        if len(block_tuples) >= taus_per_block:
            flush()
    flush()

    terms = {}
    for key, coef in acc.items():
        expo = tuple(int(x) for x in np.frombuffer(key, dtype=np.int16))
        terms[expo] = coef
    return SemiInvariant(spec, terms, (alpha1, alpha2))


def expand_reference(pair: LinkedPair, spec: QuiverSpec,
                     cap: int = 1_000_000) -> SemiInvariant:
    """Plain-python orbit sum; slow, used to cross-check the vectorized path."""
    alpha1, alpha2 = pair.n_columns
    if not pair.atoms:
        return SemiInvariant(spec, {tuple([0] * spec.dim): 1}, (0, 0))
    perms1 = [(p, _sign(p)) for p in permutations(range(spec.r1))]
    perms2 = [(p, _sign(p)) for p in permutations(range(spec.r2))]
    if len(perms1) ** alpha1 * len(perms2) ** alpha2 > cap:
        raise ResourceCapError(f"reference expansion over {cap} orbit elements",
                               cap=cap)
    atoms = [(a.arrow, a.plus_pos[0] - 1, a.plus_pos[1] - 1,
              a.minus_pos[0] - 1, a.minus_pos[1] - 1) for a in pair.atoms]
    terms: dict[tuple, int] = {}
    for taus in product(perms1, repeat=alpha1):
        for rhos in product(perms2, repeat=alpha2):
            sg = 1
            for _, s in taus:
                sg *= s
            for _, s in rhos:
                sg *= s
            v = [0] * spec.dim
            for (i, j0, cp, k0, cm) in atoms:
                jj = rhos[cp][0][j0]
                kk = taus[cm][0][k0]
                v[((i - 1) * spec.r2 + jj) * spec.r1 + kk] += 1
            key = tuple(v)
            terms[key] = terms.get(key, 0) + sg
    return SemiInvariant(spec, {k: c for k, c in terms.items() if c},
                         (alpha1, alpha2))


def _sign(p):
    inv = sum(1 for a in range(len(p)) for b in range(a + 1, len(p))
              if p[a] > p[b])
    return -1 if inv % 2 else 1


def grading_value(v, grading: Grading) -> int:
    if len(v) != len(grading.entries):
        raise ShapeError("exponent and grading lengths differ")
    return sum(a * b for a, b in zip(v, grading.entries))


def leading_monomial(f: SemiInvariant, grading: Grading):
    """(argmax exponent, unique flag) of the grading over the support of f."""
    if not f.terms:
        raise EmptyInputError("leading monomial of the zero polynomial")
    best, arg, unique = None, None, True
    for expo in f.terms:
        w = grading_value(expo, grading)
        if best is None or w > best:
            best, arg, unique = w, expo, True
        elif w == best:
            unique = False
    return arg, unique


def verify_lm(pair: LinkedPair, grading: Grading, spec: QuiverSpec,
              cap: int = DEFAULT_ORBIT_CAP) -> bool:
    """Does the expansion's unique leading monomial equal the pair's monomial?"""
    from .tableaux import mon_plus

    f = expand(pair, spec, cap=cap)
    arg, unique = leading_monomial(f, grading)
    return unique and arg == mon_plus(pair.plus, spec)


@dataclass(frozen=True)
class GroupElement:
    """A pair of invertible rational matrices acting by change of basis."""

    g1: tuple  # r1 x r1, rows of Fractions
    g2: tuple  # r2 x r2

    def __post_init__(self):
        g1 = tuple(tuple(Fraction(x) for x in row) for row in self.g1)
        g2 = tuple(tuple(Fraction(x) for x in row) for row in self.g2)
        object.__setattr__(self, "g1", g1)
        object.__setattr__(self, "g2", g2)
        if rational_det(g1) == 0 or rational_det(g2) == 0:
            raise InvalidGroupElementError("group element must be invertible")


def evaluate(f: SemiInvariant, matrices) -> Fraction:
    """Exact value of f at an n-tuple of r2 x r1 rational matrices."""
    spec = f.spec
    flat = [Fraction(matrices[i - 1][j - 1][k - 1])
            for i in range(1, spec.n + 1)
            for j in range(1, spec.r2 + 1)
            for k in range(1, spec.r1 + 1)]
    total = Fraction(0)
    for expo, coef in f.terms.items():
        val = Fraction(coef)
        for c, e in enumerate(expo):
            if e:
                val *= flat[c] ** e
        total += val
    return total


def act(g: GroupElement, matrices):
    """Change of basis: each arrow matrix A goes to g2 A g1^{-1}."""
    g1inv = rational_matrix_inverse(g.g1)
    out = []
    for a in matrices:
        r2, r1 = len(a), len(a[0])
        ag = [[sum(Fraction(a[j][t]) * g1inv[t][k] for t in range(r1))
               for k in range(r1)] for j in range(r2)]
        gag = [[sum(g.g2[j][t] * ag[t][k] for t in range(r2))
                for k in range(r1)] for j in range(r2)]
        out.append(tuple(tuple(row) for row in gag))
    return tuple(out)


def random_rational_matrices(spec: QuiverSpec, rng: random.Random):
    return tuple(
        tuple(tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                    for _k in range(spec.r1)) for _j in range(spec.r2))
        for _i in range(spec.n))


def semi_invariance_check(f: SemiInvariant, g: GroupElement,
                          samples: int, seed: int = 0) -> bool:
    """Exact check of f(g . A) == det(g1)^{-alpha1} det(g2)^{alpha2} f(A).

    Evaluates at `samples` pseudo-random rational matrix tuples; all
    comparisons are exact, no tolerance.
    """
    alpha1, alpha2 = f.alpha
    factor = (rational_det(g.g1) ** (-alpha1)) * (rational_det(g.g2) ** alpha2)
    rng = random.Random(seed)
    for _ in range(samples):
        mats = random_rational_matrices(f.spec, rng)
        if evaluate(f, act(g, mats)) != factor * evaluate(f, mats):
            return False
    return True


def minor_product_value(pair: LinkedPair, spec: QuiverSpec, matrices):
    """Grassmannian-side oracle (r1 == 1): product of maximal minors.

    Each plus column of the pair names r2 rows of the vertically stacked
    n x r2-shaped coordinate column; the semi-invariant equals the product
    of the corresponding determinants.  Exact rational evaluation.
    """
    if spec.r1 != 1:
        raise ShapeError("minor-product oracle requires r1 == 1")
    stacked = [[Fraction(matrices[i - 1][j - 1][0])
                for j in range(1, spec.r2 + 1)]
               for i in range(1, spec.n + 1)]  # row i <-> arrow, col j
    total = Fraction(1)
    for c in range(pair.plus.shape[1]):
        col = pair.plus.column(c)
        arrows = [lab[0] for lab in col]
        minor = [[stacked[arrows[t] - 1][j] for j in range(spec.r2)]
                 for t in range(spec.r2)]
        total *= rational_det(minor)
    return total
