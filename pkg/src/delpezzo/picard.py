"""Picard lattices of blow-ups of the plane, in the geometric basis.

A lattice of blow-up count n has rank n+1, intersection form
diag(1, -1, ..., -1) in the basis (H, E_1, ..., E_n), canonical class
K = -3H + E_1 + ... + E_n, and degree K.K = 9 - n.  Vectors are plain integer
tuples in that basis.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError

Vec = tuple[int, ...]


def _check_vec(lat: "PicardLattice", v) -> Vec:
    v = tuple(v)
    if len(v) != lat.rank:
        raise DomainError(
            f"vector length {len(v)} does not match lattice rank {lat.rank}"
        )
    if not all(isinstance(x, int) for x in v):
        raise DomainError(f"vector {v!r} has non-integer coordinates")
    return v


@dataclass(frozen=True)
class PicardLattice:
    n: int
    rank: int = field(init=False)
    gram: tuple[tuple[int, ...], ...] = field(init=False)
    canonical: Vec = field(init=False)
    degree: int = field(init=False)

    def __post_init__(self):
        if not (0 <= self.n <= 8):
            raise DomainError(f"blow-up count n={self.n} outside 0..8")
        r = self.n + 1
        object.__setattr__(self, "rank", r)
        gram = tuple(
            tuple((1 if i == 0 else -1) if i == j else 0 for j in range(r))
            for i in range(r)
        )
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "canonical", (-3,) + (1,) * self.n)
        object.__setattr__(self, "degree", 9 - self.n)

    # convenience wrappers so call sites can use methods or module functions
    def pair(self, a, b) -> int:
        return pair(self, a, b)

    def height(self, c) -> int:
        return anticanonical_degree(self, c)

    @property
    def anticanonical(self) -> Vec:
        return tuple(-x for x in self.canonical)


def make_lattice(n: int) -> PicardLattice:
    """Lattice of the plane blown up at n points (0 <= n <= 8)."""
    return PicardLattice(n)


def pair(lat: PicardLattice, a, b) -> int:
    """Intersection pairing a.b = a0*b0 - sum_i ai*bi."""
    a = _check_vec(lat, a)
    b = _check_vec(lat, b)
    return a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))


def anticanonical_degree(lat: PicardLattice, c) -> int:
    """Degree of c against -K, i.e. pair(-K, c)."""
    c = _check_vec(lat, c)
    return pair(lat, lat.anticanonical, c)
