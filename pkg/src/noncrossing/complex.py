"""The complex of non-crossing diagonals and the simplicial operations around it.

Faces are Python ints used as bitsets over vertex indices; bit ``i`` set means
vertex ``i`` is a member. The empty face ``0`` is always present.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from math import isqrt
from typing import Hashable, Iterable, Sequence

import numpy as np

from .geom import Intersection, Location, cross, point_in_ring, point_in_rings, segments_intersect
from .region import Diagonal, Region, RegionError, enumerate_diagonals, is_diagonal, validate

DEFAULT_MAX_FACES = 5_000_000


class ComplexError(RuntimeError):
    pass


class FaceLimitExceeded(ComplexError):
    pass


class InvariantViolation(ComplexError):
    pass


class NoDiagonals(ComplexError):
    pass


class NotPure(ComplexError):
    pass


class NotADiagonal(ValueError):
    pass


def members(face: int) -> list[int]:
    out = []
    while face:
        low = face & -face
        out.append(low.bit_length() - 1)
        face ^= low
    return out


def face_key(face: int):
    """Canonical order: by size, then lexicographically by sorted members."""
    return face.bit_count(), members(face)


def max_faces_default() -> int:
    return int(os.environ.get("NONCROSSING_MAX_FACES", DEFAULT_MAX_FACES))


@dataclass(frozen=True)
class FVector:
    """Face counts indexed by size: ``counts[0]`` is the empty face."""

    counts: tuple[int, ...]

    def __getitem__(self, dim: int) -> int:
        k = dim + 1
        return self.counts[k] if 0 <= k < len(self.counts) else 0

    def __iter__(self):
        return iter(self.counts)

    def __len__(self):
        return len(self.counts)

    @property
    def reduced_euler(self) -> int:
        return sum((-1) ** (k - 1) * c for k, c in enumerate(self.counts))

    @property
    def euler(self) -> int:
        return self.reduced_euler + 1

    def convolve(self, other: "FVector") -> "FVector":
        return FVector(tuple(int(c) for c in np.convolve(self.counts, other.counts)))


@dataclass(frozen=True, eq=False)
class Complex:
    """A finite simplicial complex given by its full face list.

    ``labels[i]`` names vertex ``i``; for complexes built from a region the
    labels are :class:`Diagonal` pairs. ``faces`` is closed under subsets,
    holds ``0`` for the empty face, and is kept in canonical order.
    """

    labels: tuple[Hashable, ...]
    faces: tuple[int, ...]
    crossing: np.ndarray | None = field(default=None, repr=False)
    region: Region | None = field(default=None, repr=False)

    @classmethod
    def from_faces(cls, labels, faces: Iterable[int], **kw) -> "Complex":
        return cls(tuple(labels), tuple(sorted(set(faces) | {0}, key=face_key)), **kw)

    @property
    def diagonals(self) -> tuple[Hashable, ...]:
        return self.labels

    @property
    def d(self) -> int:
        return len(self.labels)

    @cached_property
    def face_set(self) -> frozenset[int]:
        return frozenset(self.faces)

    @cached_property
    def facets(self) -> tuple[int, ...]:
        covered = {f ^ (1 << v) for f in self.faces for v in members(f)}
        return tuple(f for f in self.faces if f not in covered)

    @property
    def dim(self) -> int:
        return max(f.bit_count() for f in self.faces) - 1

    @cached_property
    def by_size(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for f in self.faces:
            out.setdefault(f.bit_count(), []).append(f)
        return {k: tuple(v) for k, v in out.items()}

    def faces_of_dim(self, k: int) -> tuple[int, ...]:
        return self.by_size.get(k + 1, ())

    @property
    def is_pure(self) -> bool:
        return len({f.bit_count() for f in self.facets}) <= 1

    def face_labels(self, face: int) -> frozenset:
        return frozenset(self.labels[i] for i in members(face))

    def label_sets(self) -> set[frozenset]:
        return {self.face_labels(f) for f in self.faces}

    def index_of(self, label) -> int:
        return self.labels.index(label)

    def __len__(self):
        return len(self.faces)

    def __repr__(self):
        return f"Complex(d={self.d}, faces={len(self.faces)}, dim={self.dim})"


def crossing(d1, d2, region: Region) -> bool:
    """True iff the open segments of two diagonals meet."""
    pts = region.points
    kind = segments_intersect((pts[d1[0]], pts[d1[1]]), (pts[d2[0]], pts[d2[1]]))
    return kind in (Intersection.PROPER_CROSSING, Intersection.TOUCHING, Intersection.OVERLAPPING)


def crossing_matrix(diagonals: Sequence[Diagonal], region: Region) -> np.ndarray:
    d = len(diagonals)
    mat = np.zeros((d, d), dtype=bool)
    for i in range(d):
        for j in range(i + 1, d):
            if crossing(diagonals[i], diagonals[j], region):
                mat[i, j] = mat[j, i] = True
    return mat


def _independent_sets(noncross: list[int], cap: int) -> list[int]:
    faces = [0]

    def extend(face, cand):
        while cand:
            low = cand & -cand
            cand ^= low
            new = face | low
            faces.append(new)
            if len(faces) > cap:
                raise FaceLimitExceeded(f"more than {cap} faces")
            extend(new, cand & noncross[low.bit_length() - 1])

    extend(0, (1 << len(noncross)) - 1)
    return faces


def build_complex(region: Region, max_faces: int | None = None, allow_empty: bool = False) -> Complex:
    """Build the complex of non-crossing diagonals of ``region``.

    Faces are the independent sets of the crossing graph. Every maximal face
    must have ``n + 3h - 3`` members; anything else raises
    :class:`InvariantViolation`.
    """
    cap = max_faces_default() if max_faces is None else max_faces
    diagonals = enumerate_diagonals(region)
    if not diagonals and not allow_empty:
        raise NoDiagonals(f"{region!r} has no diagonals")
    mat = crossing_matrix(diagonals, region)
    d = len(diagonals)
    full = (1 << d) - 1
    noncross = []
    for i in range(d):
        mask = full & ~(1 << i)
        for j in np.flatnonzero(mat[i]):
            mask &= ~(1 << int(j))
        noncross.append(mask)

    faces = _independent_sets(noncross, cap)
    cplx = Complex.from_faces(diagonals, faces, crossing=mat, region=region)

    expected = region.triangulation_size
    for f in cplx.facets:
        if f.bit_count() != expected:
            raise InvariantViolation(
                f"maximal non-crossing set {sorted(cplx.face_labels(f))} has {f.bit_count()} "
                f"diagonals, expected {expected}"
            )
    return cplx


def triangulation_is_tiling(region: Region, diagonals: Iterable) -> bool:
    """Check that ``diagonals`` together with the boundary cut ``region`` into triangles.

    Empty triangles of the segment graph whose centroid is interior are the
    tiles; there must be ``n + 2h - 2`` of them and their doubled areas must
    add up to the region's doubled area exactly.
    """
    pts = region.points
    n = region.n
    adj = [set() for _ in range(n)]
    for a, b in list(region.edges) + [tuple(dg) for dg in diagonals]:
        adj[a].add(b)
        adj[b].add(a)
    outer3 = [(3 * p[0], 3 * p[1]) for p in region.outer]
    holes3 = [[(3 * p[0], 3 * p[1]) for p in hole] for hole in region.holes]

    count = 0
    area = 0
    for a in range(n):
        for b in adj[a]:
            if b <= a:
                continue
            for c in adj[a] & adj[b]:
                if c <= b:
                    continue
                pa, pb, pc = pts[a], pts[b], pts[c]
                twice = cross(pa, pb, pc)
                if twice == 0:
                    continue
                sign = 1 if twice > 0 else -1
                if any(
                    sign * cross(pa, pb, q) > 0 and sign * cross(pb, pc, q) > 0 and sign * cross(pc, pa, q) > 0
                    for k, q in enumerate(pts)
                    if k not in (a, b, c)
                ):
                    continue
                centroid = (pa[0] + pb[0] + pc[0], pa[1] + pb[1] + pc[1])
                if point_in_rings(centroid, outer3, holes3) is not Location.INTERIOR:
                    continue
                count += 1
                area += abs(twice)
    return count == n + 2 * region.h - 2 and area == region.doubled_area


def link(cplx: Complex, v: int) -> Complex:
    """Faces ``s`` with ``v`` not in ``s`` and ``s + v`` a face, re-indexed."""
    if not 0 <= v < cplx.d:
        raise IndexError(f"vertex {v} out of range")
    bit = 1 << v
    if bit not in cplx.face_set:
        raise IndexError(f"{v} is not a vertex of the complex")
    keep = [u for u in range(cplx.d) if u != v and (bit | (1 << u)) in cplx.face_set]
    return _restrict(cplx, keep, (f for f in cplx.faces if not f & bit and (f | bit) in cplx.face_set))


def deletion(cplx: Complex, v: int) -> Complex:
    """All faces avoiding ``v``, re-indexed over the other vertices."""
    if not 0 <= v < cplx.d:
        raise IndexError(f"vertex {v} out of range")
    bit = 1 << v
    keep = [u for u in range(cplx.d) if u != v]
    return _restrict(cplx, keep, (f for f in cplx.faces if not f & bit))


def _restrict(cplx: Complex, keep: list[int], faces) -> Complex:
    new_index = {old: new for new, old in enumerate(keep)}
    out = []
    for f in faces:
        g = 0
        for m in members(f):
            g |= 1 << new_index[m]
        out.append(g)
    crossing = None
    if cplx.crossing is not None:
        crossing = cplx.crossing[np.ix_(keep, keep)]
    return Complex.from_faces([cplx.labels[u] for u in keep], out, crossing=crossing)


def join(c1: Complex, c2: Complex) -> Complex:
    shift = c1.d
    faces = [f1 | (f2 << shift) for f1 in c1.faces for f2 in c2.faces]
    return Complex.from_faces(c1.labels + c2.labels, faces)


def point_complex(label="apex") -> Complex:
    return Complex.from_faces([label], [0, 1])


def void_complex() -> Complex:
    """The complex whose only face is the empty one; the identity for joins."""
    return Complex((), (0,))


def cone(c: Complex, apex="apex") -> Complex:
    return join(c, point_complex(apex))


def suspension(c: Complex, poles=("north", "south")) -> Complex:
    two_points = Complex.from_faces(list(poles), [0, 1, 2])
    return join(c, two_points)


def f_vector(cplx: Complex) -> FVector:
    counts = Counter(f.bit_count() for f in cplx.faces)
    top = max(counts)
    return FVector(tuple(counts.get(k, 0) for k in range(top + 1)))


def euler_characteristic(cplx: Complex, reduced: bool = False) -> int:
    fv = f_vector(cplx)
    return fv.reduced_euler if reduced else fv.euler


@dataclass(frozen=True)
class BoundaryReport:
    free_ridges: tuple[int, ...]
    faces: tuple[int, ...]
    pseudomanifold: bool
    vertices: frozenset[int]

    @property
    def empty(self) -> bool:
        return not self.free_ridges


def boundary_faces(cplx: Complex) -> BoundaryReport:
    """Codimension-one faces lying in exactly one facet, with their closure.

    ``pseudomanifold`` is true when every codimension-one face lies in one or
    two facets.
    """
    if not cplx.is_pure:
        raise NotPure("complex is not pure")
    counts: Counter[int] = Counter()
    for facet in cplx.facets:
        for m in members(facet):
            counts[facet ^ (1 << m)] += 1
    free = sorted((r for r, c in counts.items() if c == 1), key=face_key)
    closure = set()
    stack = list(free)
    while stack:
        f = stack.pop()
        if f in closure:
            continue
        closure.add(f)
        stack.extend(f ^ (1 << m) for m in members(f))
    verts = frozenset(m for f in free for m in members(f))
    return BoundaryReport(
        tuple(free),
        tuple(sorted(closure, key=face_key)),
        all(c in (1, 2) for c in counts.values()),
        verts,
    )


@dataclass(frozen=True)
class Cut:
    """Result of cutting a region along one of its diagonals.

    ``vertex_maps[k][i]`` is the vertex of the original region that vertex
    ``i`` of ``pieces[k]`` stands for.
    """

    pieces: tuple[Region, ...]
    vertex_maps: tuple[tuple[int, ...], ...]
    separating: bool

    def lift(self, k: int, dg) -> Diagonal:
        a, b = self.vertex_maps[k][dg[0]], self.vertex_maps[k][dg[1]]
        return Diagonal(min(a, b), max(a, b))


def _coord_map(piece: Region, lookup: dict) -> tuple[int, ...]:
    return tuple(lookup[p] for p in piece.points)


def cut_along_diagonal(region: Region, dg) -> Cut:
    """Cut ``region`` along diagonal ``dg``.

    A diagonal with both ends on one ring splits the region in two. One that
    joins two rings instead merges them; the two copies of each endpoint are
    realised exactly by scaling the region and nudging each copy a little way
    into its own side of the diagonal.
    """
    u, v = sorted(dg)
    if not is_diagonal(region, u, v):
        raise NotADiagonal(f"{(u, v)} is not a diagonal")
    if region.ring_of[u] == region.ring_of[v]:
        return _separating_cut(region, u, v)
    return _merging_cut(region, u, v)


def _separating_cut(region: Region, u: int, v: int) -> Cut:
    r, a = region.local(u)
    _, b = region.local(v)
    ring = region.rings[r]
    m = len(ring)
    arc1 = [ring[(a + t) % m] for t in range((b - a) % m + 1)]
    arc2 = [ring[(b + t) % m] for t in range((a - b) % m + 1)]
    others = [hole for k, hole in enumerate(region.holes) if k + 1 != r]

    def inside(hole, ring_pts):
        return point_in_ring(hole[0], ring_pts) is Location.INTERIOR

    if r == 0:
        pieces = [
            validate(arc, [hole for hole in others if inside(hole, arc)]) for arc in (arc1, arc2)
        ]
    else:
        pocket, big = (arc1, arc2) if point_in_ring(arc2[1], arc1) is Location.EXTERIOR else (arc2, arc1)
        holes = []
        for k, hole in enumerate(region.holes):
            if k + 1 == r:
                holes.append(big)
            elif not inside(hole, pocket):
                holes.append(hole)
        pieces = [
            validate(pocket, [hole for hole in others if inside(hole, pocket)]),
            validate(region.outer, holes),
        ]
    lookup = {p: i for i, p in enumerate(region.points)}
    return Cut(tuple(pieces), tuple(_coord_map(p, lookup) for p in pieces), True)


def _sector_direction(c, p, q):
    """Integer vector pointing strictly into the interior angle at ``c``.

    The angle runs counterclockwise from ``q - c`` to ``p - c``, which is the
    interior side when ``p -> c -> q`` has the interior on its left.
    """
    a = (q[0] - c[0], q[1] - c[1])
    b = (p[0] - c[0], p[1] - c[1])
    turn = a[0] * b[1] - a[1] * b[0]
    if turn == 0:
        if a[0] * b[0] + a[1] * b[1] < 0:
            return (-a[1], a[0])
        return (-a[0], -a[1])
    # weighting by the other vector's length approximates the bisector
    la = isqrt(a[0] ** 2 + a[1] ** 2) + 1
    lb = isqrt(b[0] ** 2 + b[1] ** 2) + 1
    bis = (a[0] * lb + b[0] * la, a[1] * lb + b[1] * la)
    if turn < 0:
        bis = (-bis[0], -bis[1])
    return bis


def _merging_cut(region: Region, x: int, w: int) -> Cut:
    pts = region.points
    rx, rw = region.ring_of[x], region.ring_of[w]

    def cycle_from(i):
        out = [i]
        j = region.next(i)
        while j != i:
            out.append(j)
            j = region.next(j)
        return out

    ring_x, ring_w = cycle_from(x), cycle_from(w)
    # vertex ids in the merged ring; -1/-2 mark the second copies of x/w
    merged = [x] + ring_w + [-2, -1] + ring_x[1:]
    px, pw = pts[x], pts[w]
    nudge = {
        x: _sector_direction(px, pts[region.prev(x)], pw),
        w: _sector_direction(pw, px, pts[region.next(w)]),
        -2: _sector_direction(pw, pts[region.prev(w)], px),
        -1: _sector_direction(px, pw, pts[region.next(x)]),
    }
    origin = {x: x, w: w, -1: x, -2: w}

    expected = sorted(
        Diagonal(a, b)
        for a, b in enumerate_diagonals(region)
        if (a, b) != (x, w) and not crossing((a, b), (x, w), region)
    )
    extent = max(max(abs(p[0]), abs(p[1])) for p in pts)
    step = max(max(abs(c) for c in vec) for vec in nudge.values())
    s = 4
    while (k := s * step) * extent + step < 2**30:

        def place(i):
            if i in nudge:
                p, vec = pts[origin[i]], nudge[i]
                return (k * p[0] + vec[0], k * p[1] + vec[1])
            return (k * pts[i][0], k * pts[i][1])

        def scaled_ring(r):
            return [place(region.global_index(r, t)) for t in range(len(region.rings[r]))]

        ring = [place(i) for i in merged]
        lookup = {place(i): i for i in range(region.n)}
        lookup[place(-1)] = x
        lookup[place(-2)] = w
        s *= 2
        holes = []
        for r in range(1, len(region.rings)):
            if r not in (rx, rw):
                holes.append(scaled_ring(r))
            elif r == min(rx, rw) and rx and rw:
                holes.append(ring)
        try:
            piece = validate(ring if 0 in (rx, rw) else scaled_ring(0), holes)
        except RegionError:
            continue
        cut = Cut((piece,), (_coord_map(piece, lookup),), False)
        if sorted(cut.lift(0, dg) for dg in enumerate_diagonals(piece)) == expected:
            return cut
    raise InvariantViolation(f"could not realise the cut along {(x, w)} within the coordinate range")


def cut_complex(cut: Cut, max_faces: int | None = None) -> Complex:
    """Complex of the cut pieces (joined if there are two), labelled by original diagonals."""
    result = void_complex()
    for k, piece in enumerate(cut.pieces):
        part = build_complex(piece, max_faces=max_faces, allow_empty=True)
        lifted = Complex(tuple(cut.lift(k, dg) for dg in part.labels), part.faces)
        result = join(result, lifted)
    return result
