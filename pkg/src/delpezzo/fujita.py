"""Fujita a-invariants of polarized surfaces and the vertical-family
classification dictionary.

a(X, L) is the minimal t with K + tL pseudoeffective.  With a polyhedral
effective cone this is exact facet arithmetic: writing the facet inequalities
of the effective cone as pair(f, .) >= 0, the answer is the largest ratio
-pair(f, K) / pair(f, L).  Surfaces are caller-described (gram, canonical
class, effective generators, polarization); builders for blown-up planes and
Hirzebruch surfaces are provided.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import curves as _curves
from . import linalg
from .errors import DomainError
from .picard import PicardLattice, Vec

INFINITE_A = math.inf


class AInvariantClass(Enum):
    GREATER_THAN_ONE = "GreaterThanOne"
    EQUAL_ONE = "EqualOne"
    LESS_THAN_ONE = "LessThanOne"


@dataclass(frozen=True)
class PolarizedSurface:
    """A surface given by its intersection form and cone data.

    gram: symmetric integer matrix of the pairing in the chosen basis.
    canonical: the class K.  eff_generators: generators of the effective
    cone (must span the space).  polarization: the class L under study.
    """

    gram: tuple[tuple[int, ...], ...]
    canonical: Vec
    eff_generators: tuple[Vec, ...]
    polarization: Vec

    def __post_init__(self):
        r = len(self.gram)
        if any(len(row) != r for row in self.gram):
            raise DomainError("gram matrix must be square")
        for v in (self.canonical, self.polarization, *self.eff_generators):
            if len(v) != r:
                raise DomainError(f"vector {v} does not match rank {r}")

    def pair(self, a, b) -> int:
        return sum(
            a[i] * self.gram[i][j] * b[j]
            for i in range(len(a))
            for j in range(len(b))
        )


def polarized_del_pezzo(lat: PicardLattice, polarization=None) -> PolarizedSurface:
    """Blown-up plane with its effective cone; default polarization -K."""
    L = tuple(polarization) if polarization is not None else lat.anticanonical
    return PolarizedSurface(
        gram=lat.gram,
        canonical=lat.canonical,
        eff_generators=_curves.effective_cone_generators(lat).generators,
        polarization=L,
    )


def hirzebruch_polarized(e: int, polarization=None) -> PolarizedSurface:
    """Hirzebruch surface in the basis (C0, F): C0^2 = -e, C0.F = 1, F^2 = 0,
    K = -2 C0 - (e+2) F, effective cone spanned by C0 and F."""
    if e < 0:
        raise DomainError(f"Hirzebruch parameter must be >= 0, got {e}")
    L = tuple(polarization) if polarization is not None else (2, e + 2)
    return PolarizedSurface(
        gram=((-e, 1), (1, 0)),
        canonical=(-2, -(e + 2)),
        eff_generators=((1, 0), (0, 1)),
        polarization=L,
    )


@functools.lru_cache(maxsize=None)
def _cone_facets(gram, generators) -> list[Vec]:
    normals = [
        tuple(sum(gram[i][j] * g[j] for j in range(len(g))) for i in range(len(g)))
        for g in generators
    ]
    return linalg.dual_cone_rays(normals)


def _eff_facets(s: PolarizedSurface) -> list[Vec]:
    # facets depend on the cone alone, and the big effective cones (rank 9
    # has 241 generators) are expensive to dualize, so memoize per cone
    return _cone_facets(s.gram, s.eff_generators)


def a_invariant(s: PolarizedSurface):
    """Minimal t with K + t L effective; +inf when L is nef but not big.

    Exact: evaluates -pair(f, K) / pair(f, L) over the facet inequalities f of
    the effective cone and takes the maximum.
    """
    L = s.polarization
    for g in s.eff_generators:
        if s.pair(L, g) < 0:
            raise DomainError(
                f"polarization {L} is not nef: negative against {g}"
            )
    facets = _eff_facets(s)
    if any(s.pair(f, L) == 0 for f in facets):
        return INFINITE_A
    return max(Fraction(-s.pair(f, s.canonical), s.pair(f, L)) for f in facets)


def classify_vertical_family(
    c,
    fiber_degree: int,
    *,
    pullback_of_degree_two_anticanonical: bool = False,
) -> AInvariantClass:
    """Place a one-parameter vertical family in the a-invariant trichotomy.

    The recognized inputs are the enumerable curve kinds on the fiber lattice
    plus -K and -2K.  The keyword tags a class as the pullback of a degree-2
    anticanonical series from a birational model; it is only meaningful on
    degree-1 fibers, where that family has a-invariant exactly one.
    """
    if not (1 <= fiber_degree <= 8):
        raise DomainError(f"fiber degree {fiber_degree} outside 1..8")
    lat = PicardLattice(9 - fiber_degree)
    c = tuple(c)
    if len(c) != lat.rank:
        raise DomainError(f"class {c} does not live on a degree-{fiber_degree} fiber")
    if pullback_of_degree_two_anticanonical and fiber_degree != 1:
        raise DomainError(
            "the degree-2 anticanonical pullback tag applies to degree-1 fibers only"
        )
    minus_k = lat.anticanonical
    minus_2k = tuple(2 * x for x in minus_k)
    kind = _curves.classify_kind(lat, c)

    if kind is _curves.CurveClassKind.NEG_ONE_CURVE:
        return AInvariantClass.GREATER_THAN_ONE
    if c == minus_k and fiber_degree == 1:
        return AInvariantClass.GREATER_THAN_ONE
    if kind is _curves.CurveClassKind.CONIC:
        return AInvariantClass.EQUAL_ONE
    if c == minus_k and fiber_degree == 2:
        return AInvariantClass.EQUAL_ONE
    if fiber_degree == 1 and (
        c == minus_2k or pullback_of_degree_two_anticanonical
    ):
        return AInvariantClass.EQUAL_ONE
    if kind in (
        _curves.CurveClassKind.CUBIC_LINE_PULLBACK,
        _curves.CurveClassKind.CUBIC_ANTICANONICAL,
    ):
        return AInvariantClass.LESS_THAN_ONE
    if c == minus_k and fiber_degree >= 3:
        return AInvariantClass.LESS_THAN_ONE
    if c == minus_2k and fiber_degree >= 2:
        return AInvariantClass.LESS_THAN_ONE
    raise DomainError(f"unrecognized vertical class {c} on degree {fiber_degree}")


def larger_a_locus(lat: PicardLattice) -> list[Vec]:
    """Classes whose vertical families raise the generic a-invariant: the
    (-1)-classes, together with -K on degree-1 fibers."""
    out = list(_curves.enumerate_neg_one_curves(lat))
    if lat.degree == 1:
        out.append(lat.anticanonical)
    return sorted(out)
