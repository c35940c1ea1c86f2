"""Lattice isometries: Weyl groups, orbits, and monodromy-style subgroups.

Groups are closed under a breadth-first product search with matrices stored as
canonical int8 byte strings (row-major).  The search is budgeted: closures
that would pass the cap raise CapExceeded instead of thrashing memory, so the
blow-up-count-8 Weyl group (order 696729600) is refused by default while orbit
computations under its generators stay available.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import curves
from .errors import CapExceeded, DomainError, NotFound, ToolkitError
from .linalg import integer_kernel
from .picard import PicardLattice, Vec, pair

Matrix = tuple[tuple[int, ...], ...]

DEFAULT_CAP = 4_000_000


def mat_apply(M: Matrix, v) -> Vec:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in M)


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n = len(A)
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def identity_matrix(rank: int) -> Matrix:
    return tuple(
        tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank)
    )


@dataclass(frozen=True)
class IsometryElement:
    """An integer matrix acting on lattice vectors by left multiplication."""

    matrix: Matrix

    def apply(self, v) -> Vec:
        return mat_apply(self.matrix, v)


def validate_isometry(lat: PicardLattice, M: Matrix) -> None:
    """Check M preserves the pairing and fixes the canonical class."""
    r = lat.rank
    if len(M) != r or any(len(row) != r for row in M):
        raise DomainError(f"matrix shape does not match rank {r}")
    basis = identity_matrix(r)
    cols = [mat_apply(M, e) for e in basis]
    for i in range(r):
        for j in range(r):
            if pair(lat, cols[i], cols[j]) != lat.gram[i][j]:
                raise DomainError("matrix does not preserve the pairing")
    if mat_apply(M, lat.canonical) != lat.canonical:
        raise DomainError("matrix does not fix the canonical class")


def _reflection(lat: PicardLattice, root: Vec) -> Matrix:
    """x -> x + pair(x, root) * root for a (-2)-root."""
    r = lat.rank
    functional = (root[0],) + tuple(-x for x in root[1:])
    return tuple(
        tuple(
            (1 if i == j else 0) + root[i] * functional[j] for j in range(r)
        )
        for i in range(r)
    )


def simple_roots(lat: PicardLattice) -> list[Vec]:
    """E_i - E_{i+1} differences plus, from n = 3 on, H - E1 - E2 - E3."""
    n = lat.n
    roots: list[Vec] = []
    for i in range(1, n):
        root = [0] * lat.rank
        root[i] = 1
        root[i + 1] = -1
        roots.append(tuple(root))
    if n >= 3:
        roots.append((1, -1, -1, -1) + (0,) * (n - 3))
    return roots


def weyl_generators(lat: PicardLattice) -> list[IsometryElement]:
    """Reflections in the simple roots; empty for n <= 1."""
    out = []
    for root in simple_roots(lat):
        M = _reflection(lat, root)
        validate_isometry(lat, M)
        out.append(IsometryElement(M))
    return out


def _as_matrix(g) -> Matrix:
    if isinstance(g, IsometryElement):
        return g.matrix
    return tuple(tuple(int(x) for x in row) for row in g)


def _encode_batch(mats: np.ndarray) -> np.ndarray:
    small = mats.astype(np.int8)
    if not (small == mats).all():
        raise ToolkitError("matrix entry outside int8 range; encoding invalid")
    return small.reshape(len(mats), -1)


def _decode(key: bytes, rank: int) -> Matrix:
    flat = np.frombuffer(key, dtype=np.int8).astype(int)
    return tuple(
        tuple(int(x) for x in flat[i * rank : (i + 1) * rank])
        for i in range(rank)
    )


@dataclass(frozen=True)
class FiniteGroup:
    """A finite matrix group, stored as canonical byte keys of its elements."""

    rank: int
    element_keys: frozenset[bytes]
    generators: tuple[Matrix, ...]

    @property
    def order(self) -> int:
        return len(self.element_keys)

    def __contains__(self, g) -> bool:
        M = np.array(_as_matrix(g), dtype=np.int64)
        return _encode_batch(M[None, :, :])[0].tobytes() in self.element_keys

    def elements(self):
        """Iterate elements in canonical (byte-sorted) order."""
        for key in sorted(self.element_keys):
            yield IsometryElement(_decode(key, self.rank))

    def element_matrices(self) -> np.ndarray:
        keys = sorted(self.element_keys)
        arr = np.frombuffer(b"".join(keys), dtype=np.int8)
        return arr.reshape(len(keys), self.rank, self.rank).astype(np.int64)


def trivial_group(rank: int) -> FiniteGroup:
    I = np.eye(rank, dtype=np.int64)[None, :, :]
    return FiniteGroup(rank, frozenset({_encode_batch(I)[0].tobytes()}), ())


_CHUNK = 200_000


def generate_group(gens, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Close a generating set under products, breadth first.

    Raises CapExceeded as soon as the element count would pass `cap`.
    Products are batched through numpy in int64 and stored as int8 byte keys;
    entries must stay within int8, which holds for every Weyl group this
    package generates in full.  Deduplication runs at C speed on fixed-width
    byte rows, so the level sets never live as Python objects.
    """
    mats = []
    seen_gen = set()
    for g in gens:
        M = _as_matrix(g)
        if M not in seen_gen:
            seen_gen.add(M)
            mats.append(M)
    if not mats:
        raise DomainError("generate_group needs at least one generator")
    rank = len(mats[0])
    nb = rank * rank
    vdt = np.dtype((np.void, nb))
    gen_arr = np.array(mats, dtype=np.int64)
    ident = np.eye(rank, dtype=np.int64)[None, :, :]

    def as_void(rows_i8: np.ndarray) -> np.ndarray:
        return np.ascontiguousarray(rows_i8).view(vdt).ravel()

    seen_v = np.sort(as_void(_encode_batch(ident)))
    frontier = ident.astype(np.int8)
    while len(frontier):
        parts = []
        for g in gen_arr:
            for lo in range(0, len(frontier), _CHUNK):
                block = frontier[lo : lo + _CHUNK].astype(np.int64) @ g
                parts.append(_encode_batch(block))
        level = as_void(np.concatenate(parts, axis=0))
        del parts
        uniq = np.unique(level)
        pos = np.searchsorted(seen_v, uniq)
        pos[pos == len(seen_v)] = 0
        fresh = uniq[seen_v[pos] != uniq]
        if len(seen_v) + len(fresh) > cap:
            raise CapExceeded(
                f"group closure passed the cap of {cap} elements"
            )
        seen_v = np.sort(np.concatenate([seen_v, fresh]))
        frontier = fresh.view(np.int8).reshape(-1, rank, rank)
    blob = seen_v.view(np.int8).tobytes()
    keys = frozenset(blob[i * nb : (i + 1) * nb] for i in range(len(seen_v)))
    return FiniteGroup(rank, keys, tuple(mats))


@dataclass(frozen=True)
class OrbitPartition:
    """Orbits as sorted tuples of classes, sorted by their first element."""

    orbits: tuple[tuple[Vec, ...], ...]

    @property
    def sizes(self) -> list[int]:
        return sorted(len(o) for o in self.orbits)

    @property
    def representatives(self) -> list[Vec]:
        return [o[0] for o in self.orbits]


def orbits_under_generators(gens, classes) -> OrbitPartition:
    """Orbit partition of a class set closed under the generated action.

    Only the generators are applied (breadth first per orbit), so this works
    for groups too large to materialize.  A generator image falling outside
    the class set raises DomainError: the set was not closed.
    """
    mats = [_as_matrix(g) for g in gens]
    classes = [tuple(c) for c in classes]
    class_set = set(classes)
    if len(class_set) != len(classes):
        raise DomainError("class set contains duplicates")
    for M in mats:
        for c in classes:
            if mat_apply(M, c) not in class_set:
                raise DomainError(
                    f"class set is not closed: generator moves {c} outside"
                )
    unassigned = set(classes)
    orbs = []
    for c in classes:
        if c not in unassigned:
            continue
        orbit = {c}
        queue = [c]
        while queue:
            x = queue.pop()
            for M in mats:
                y = mat_apply(M, x)
                if y not in orbit:
                    orbit.add(y)
                    queue.append(y)
        unassigned -= orbit
        orbs.append(tuple(sorted(orbit)))
    return OrbitPartition(tuple(sorted(orbs)))


def orbits(group: FiniteGroup, classes) -> OrbitPartition:
    if not group.generators:
        classes = [tuple(c) for c in classes]
        return OrbitPartition(tuple(sorted((c,) for c in classes)))
    return orbits_under_generators(group.generators, classes)


def invariant_sublattice(group: FiniteGroup, lat: PicardLattice) -> list[Vec]:
    """Z-basis of the sublattice fixed by every group element.

    The fixed space of the group equals the joint kernel of (M - I) over the
    generators.  Kernels of integer matrices are saturated, so the basis spans
    the full invariant sublattice, not a finite-index piece.  Basis rows are
    sign-normalized (first nonzero entry positive).
    """
    r = lat.rank
    if not group.generators:
        return [tuple(row) for row in identity_matrix(r)]
    rows = []
    for M in group.generators:
        for i in range(r):
            rows.append(
                tuple(M[i][j] - (1 if i == j else 0) for j in range(r))
            )
    basis = integer_kernel(rows)
    out = []
    for v in basis:
        lead = next((x for x in v if x != 0), 1)
        out.append(tuple(-x for x in v) if lead < 0 else v)
    return sorted(out)


_LINE_CODE_BASE = 41
_LINE_CODE_SHIFT = 20


def _permutation_action(mats: np.ndarray, classes: list[Vec]) -> np.ndarray:
    """Permutations induced on a closed class set, one row per matrix.

    Classes are keyed by a positional code Sum (x_i + 20) * 41^i, injective on
    integer vectors with |entries| <= 20; every class and every image stays in
    that box for the groups handled here, and membership of each image code is
    checked exactly.
    """
    arr = np.array(classes, dtype=np.int64)
    if np.abs(arr).max() >= _LINE_CODE_SHIFT:
        raise DomainError("class entries outside the code box")
    w = _LINE_CODE_BASE ** np.arange(arr.shape[1], dtype=np.int64)
    codes = arr @ w
    order = np.argsort(codes)
    sorted_codes = codes[order]
    if len(np.unique(sorted_codes)) != len(classes):
        raise ToolkitError("class code collision; box bound violated")
    images = np.einsum("nij,kj->nki", mats, arr)
    if np.abs(images).max() >= _LINE_CODE_SHIFT:
        raise DomainError("image entries outside the code box")
    img_codes = images @ w
    pos = np.searchsorted(sorted_codes, img_codes)
    pos[pos == len(classes)] = 0
    if not (sorted_codes[pos] == img_codes).all():
        raise DomainError("class set is not closed under the matrices")
    return order[pos].astype(np.int16)


def find_diagonal_cubic_subgroup(
    group: FiniteGroup, lat: PicardLattice
) -> FiniteGroup:
    """Search a full blow-up-count-6 Weyl group for an order-27 abelian
    subgroup of exponent 3 whose line orbits and conic orbits both have sizes
    {9, 9, 9}.

    Deterministic: elements are scanned in canonical byte order, so repeated
    runs return the identical subgroup.  Raises NotFound when the scan
    exhausts (it does not for the genuine Weyl group).
    """
    if lat.n != 6:
        raise DomainError("the diagonal cubic search needs blow-up count 6")
    lines = curves.enumerate_neg_one_curves(lat)
    conics = curves.enumerate_conic_classes(lat)
    mats = group.element_matrices()
    P = _permutation_action(mats, lines)
    m = len(lines)
    ident = np.arange(m, dtype=np.int16)

    P2 = np.take_along_axis(P, P, axis=1)
    P3 = np.take_along_axis(P, P2, axis=1)
    is_id = (P == ident).all(axis=1)
    order3 = (P3 == ident).all(axis=1) & ~is_id
    cand = np.flatnonzero(order3)
    Pc = P[cand]
    Pc2 = P2[cand]

    def orbit_sizes(perms) -> list[int]:
        seen = np.zeros(m, dtype=bool)
        sizes = []
        for s in range(m):
            if seen[s]:
                continue
            comp = {s}
            queue = [s]
            while queue:
                x = queue.pop()
                for p in perms:
                    y = int(p[x])
                    if y not in comp:
                        comp.add(y)
                        queue.append(y)
            for x in comp:
                seen[x] = True
            sizes.append(len(comp))
        return sorted(sizes)

    target = [9, 9, 9]
    for i1 in range(len(cand)):
        A, A2 = Pc[i1], Pc2[i1]
        comm = (A[Pc] == Pc[:, A]).all(axis=1)
        comm_idx = np.flatnonzero(comm)
        comm_idx = comm_idx[comm_idx > i1]
        pool = [
            j
            for j in comm_idx
            if not (Pc[j] == A).all() and not (Pc[j] == A2).all()
        ]
        for pi2, i2 in enumerate(pool):
            B = Pc[i2]
            sub9 = {
                np.take_along_axis(pa, pb, axis=0).tobytes()
                for pa in (ident, A, A2)
                for pb in (ident, B, Pc2[i2])
            }
            if len(sub9) != 9:
                continue
            for i3 in pool[pi2 + 1 :]:
                C = Pc[i3]
                if not (B[C] == C[B]).all():
                    continue
                if C.tobytes() in sub9:
                    continue
                gens_p = [A, B, C]
                if orbit_sizes(gens_p) != target:
                    continue
                Ms = [
                    tuple(tuple(int(x) for x in row) for row in mats[cand[i]])
                    for i in (i1, i2, i3)
                ]
                conic_perms = _permutation_action(
                    np.array(Ms, dtype=np.int64), conics
                )
                if orbit_sizes(list(conic_perms)) != target:
                    continue
                sub = generate_group(Ms, cap=27)
                if sub.order != 27:
                    continue
                return sub
    raise NotFound(
        "no order-27 exponent-3 subgroup with 9/9/9 line and conic orbits"
    )


@dataclass(frozen=True)
class SignedPermutation:
    """Element of the signed permutation group on 4 letters.

    Acts on sign vectors v in {-1,+1}^4 by (g.v)_i = signs_i * v_{perm^-1(i)},
    where perm maps position j to perm[j].
    """

    perm: tuple[int, int, int, int]
    signs: tuple[int, int, int, int]

    def __post_init__(self):
        if sorted(self.perm) != [0, 1, 2, 3]:
            raise DomainError(f"not a permutation of 0..3: {self.perm}")
        if any(s not in (-1, 1) for s in self.signs):
            raise DomainError(f"signs must be +-1: {self.signs}")

    def inverse_perm(self) -> tuple[int, ...]:
        inv = [0] * 4
        for i, p in enumerate(self.perm):
            inv[p] = i
        return tuple(inv)

    def act(self, v) -> tuple[int, ...]:
        inv = self.inverse_perm()
        return tuple(self.signs[i] * v[inv[i]] for i in range(4))

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        """self after other: (self * other).act(v) == self.act(other.act(v))."""
        perm = tuple(self.perm[other.perm[i]] for i in range(4))
        inv = self.inverse_perm()
        signs = tuple(self.signs[i] * other.signs[inv[i]] for i in range(4))
        return SignedPermutation(perm, signs)


_SP_IDENT = SignedPermutation((0, 1, 2, 3), (1, 1, 1, 1))
_SP_SIGMA = SignedPermutation((0, 1, 2, 3), (-1, -1, -1, -1))


def _sp_closure(gens, cap: int = 400) -> frozenset[SignedPermutation]:
    seen = {_SP_IDENT}
    frontier = [_SP_IDENT]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a.compose(g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        if len(seen) > cap:
            raise CapExceeded(f"signed permutation closure passed {cap}")
        frontier = nxt
    return frozenset(seen)


def _sp_orbit_sizes(elements) -> list[int]:
    vectors = [tuple(v) for v in product((-1, 1), repeat=4)]
    remaining = set(vectors)
    sizes = []
    while remaining:
        v = min(remaining)
        orbit = {v}
        queue = [v]
        while queue:
            x = queue.pop()
            for g in elements:
                y = g.act(x)
                if y not in orbit:
                    orbit.add(y)
                    queue.append(y)
        remaining -= orbit
        sizes.append(len(orbit))
    return sorted(sizes)


def conic_bundle_extension_analysis() -> dict:
    """Classify the order-48 subgroups G of the signed permutation group on 4
    letters that contain the global sign flip, meet the diagonal in exactly
    {1, sigma}, and surject onto the full symmetric group downstairs.

    For each G the report records whether the extension splits (an order-24
    complement exists) and the orbit sizes on the 16 sign vectors, and checks
    two claims: a non-split G has a single orbit of size 16, and a split G has
    an orbit of size 2, 4, or 8.  Any counterexample raises ToolkitError.

    Every such G is generated by sigma together with one lift of each of the
    transposition (0 1) and the 4-cycle (0 1 2 3); the scan over the 16 x 16
    lifts is therefore exhaustive.
    """
    t_perm = (1, 0, 2, 3)
    c_perm = (1, 2, 3, 0)
    basis_flips = [
        SignedPermutation(
            (0, 1, 2, 3), tuple(-1 if j == i else 1 for j in range(4))
        )
        for i in range(4)
    ]
    b4 = _sp_closure(
        [
            SignedPermutation(t_perm, (1, 1, 1, 1)),
            SignedPermutation(c_perm, (1, 1, 1, 1)),
        ]
        + basis_flips
    )
    sigma_central = all(
        g.compose(_SP_SIGMA) == _SP_SIGMA.compose(g) for g in b4
    )

    sign_choices = list(product((-1, 1), repeat=4))
    ident_perm = (0, 1, 2, 3)
    found: dict[frozenset, dict] = {}
    for st in sign_choices:
        a = SignedPermutation(t_perm, st)
        for sc in sign_choices:
            b = SignedPermutation(c_perm, sc)
            group = _sp_closure([a, b, _SP_SIGMA], cap=384)
            if len(group) != 48:
                continue
            diagonal = {g for g in group if g.perm == ident_perm}
            if diagonal != {_SP_IDENT, _SP_SIGMA}:
                continue
            if frozenset(group) in found:
                continue
            lifts_t = [g for g in group if g.perm == t_perm]
            lifts_c = [g for g in group if g.perm == c_perm]
            split = False
            for at in lifts_t:
                for bc in lifts_c:
                    sub = _sp_closure([at, bc], cap=384)
                    if len(sub) == 24:
                        split = True
            sizes = _sp_orbit_sizes(group)
            if not split and sizes != [16]:
                raise ToolkitError(
                    f"claim falsified: non-split subgroup with orbits {sizes}"
                )
            if split and not any(s in (2, 4, 8) for s in sizes):
                raise ToolkitError(
                    f"claim falsified: split subgroup with orbits {sizes}"
                )
            found[frozenset(group)] = {
                "order": 48,
                "split": split,
                "orbit_sizes": sizes,
            }
    subgroups = sorted(
        found.values(),
        key=lambda d: (d["split"], d["orbit_sizes"]),
    )
    return {
        "ambient_order": len(b4),
        "sigma_central": sigma_central,
        "subgroup_count": len(subgroups),
        "subgroups": subgroups,
        "claims_verified": True,
    }
