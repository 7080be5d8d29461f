"""Kronecker quiver data: dimension vectors, coordinate indexing, labels.

The representation space of the n-arrow Kronecker quiver with dimension
vector (r1, r2) is an n-tuple of r2 x r1 matrices.  Its coordinates are
written x^i_{jk} with arrow i in [1,n], row j in [1,r2], column k in [1,r1].
Everything downstream (exponent vectors, gradings, cones) lives in the
lattice Z^{n*r1*r2} with the fixed flat index order (i, then j, then k).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm


@dataclass(frozen=True)
class QuiverSpec:
    """An n-arrow Kronecker quiver with dimension vector (r1, r2)."""

    n: int
    r1: int
    r2: int

    def __post_init__(self):
        if self.n < 1 or self.r1 < 1 or self.r2 < 1:
            raise ValueError("n, r1, r2 must be positive integers")

    @property
    def dim(self) -> int:
        """Ambient lattice rank n*r1*r2."""
        return self.n * self.r1 * self.r2

    @property
    def coprime(self) -> bool:
        return gcd(self.r1, self.r2) == 1

    @property
    def stability(self) -> tuple[int, int]:
        """The distinguished stability character (-r2, r1)."""
        return (-self.r2, self.r1)

    @property
    def height_denominator(self) -> int:
        """Coordinate sum of a height-1 lattice point: lcm(r1, r2)... scaled.

        The height of an exponent vector is sum(v)/lcm(r1,r2); a height-h
        lattice point of the tableau cone has coordinate sum h*lcm(r1,r2).
        """
        return lcm(self.r1, self.r2)

    def flat(self, i: int, j: int, k: int) -> int:
        """Flat index of the coordinate x^i_{jk} (1-based arguments)."""
        if not (1 <= i <= self.n and 1 <= j <= self.r2 and 1 <= k <= self.r1):
            raise IndexError(f"coordinate ({i},{j},{k}) out of range")
        return ((i - 1) * self.r2 + (j - 1)) * self.r1 + (k - 1)

    def unflat(self, c: int) -> tuple[int, int, int]:
        """Inverse of flat(): (i, j, k), all 1-based."""
        ij, k = divmod(c, self.r1)
        i, j = divmod(ij, self.r2)
        return (i + 1, j + 1, k + 1)

    def plus_labels(self) -> list[tuple[int, int]]:
        """Labels (i, k) usable in a plus-side tableau, in lex order."""
        return [(i, k) for i in range(1, self.n + 1)
                for k in range(1, self.r1 + 1)]

    def minus_labels(self) -> list[tuple[int, int]]:
        """Labels (i, j) usable in a minus-side tableau, in lex order."""
        return [(i, j) for i in range(1, self.n + 1)
                for j in range(1, self.r2 + 1)]

    def height_of_sum(self, coordinate_sum: int):
        """Height of a vector with the given coordinate sum, or None."""
        den = self.height_denominator
        if coordinate_sum % den:
            return None
        return coordinate_sum // den
