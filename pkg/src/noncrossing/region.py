"""Polygons and polygonal regions with holes: validation, diagonals, ears and mouths."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Sequence

from .geom import (
    Intersection,
    Location,
    Orientation,
    Point,
    doubled_area,
    midpoint_location,
    on_segment,
    orientation,
    point_in_ring,
    ring_edges,
    segment_interior_in_region_interior,
    segments_intersect,
)

COORD_LIMIT = 2**30


class RegionError(ValueError):
    """Base class for invalid region input."""


class NotSimple(RegionError):
    def __init__(self, edge1, edge2):
        super().__init__(f"edges {edge1} and {edge2} intersect improperly")
        self.edges = (edge1, edge2)


class DuplicateVertex(RegionError):
    pass


class HoleNotInterior(RegionError):
    pass


class HolesIntersect(RegionError):
    pass


class TooFewVertices(RegionError):
    pass


class CoordinateOverflow(RegionError):
    pass


class NoMouth(ValueError):
    """Raised by :func:`select_mouth` on a convex polygon."""


class Convexity(enum.Enum):
    CONVEX = "convex"
    REFLEX = "reflex"
    STRAIGHT = "straight"


class Diagonal(NamedTuple):
    u: int
    v: int


@dataclass(frozen=True)
class VertexClassification:
    index: int
    convexity: Convexity
    principal: bool
    ear: bool
    mouth: bool


@dataclass(frozen=True, eq=False)
class Region:
    """A validated polygonal region.

    The outer ring is counterclockwise and every hole clockwise, so the
    region's interior is always on the left of each directed edge. Vertices
    are indexed globally: outer ring first, then each hole in turn.
    Build instances through :func:`validate`.
    """

    outer: tuple[Point, ...]
    holes: tuple[tuple[Point, ...], ...] = ()
    _ring_start: tuple[int, ...] = field(default=(), repr=False)

    @property
    def rings(self) -> tuple[tuple[Point, ...], ...]:
        return (self.outer,) + self.holes

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def h(self) -> int:
        return len(self.holes)

    @cached_property
    def points(self) -> tuple[Point, ...]:
        return tuple(p for ring in self.rings for p in ring)

    @cached_property
    def ring_of(self) -> tuple[int, ...]:
        return tuple(r for r, ring in enumerate(self.rings) for _ in ring)

    def local(self, i: int) -> tuple[int, int]:
        """Return ``(ring, position)`` of global vertex ``i``."""
        r = self.ring_of[i]
        return r, i - self._ring_start[r]

    def global_index(self, ring: int, pos: int) -> int:
        size = len(self.rings[ring])
        return self._ring_start[ring] + pos % size

    def prev(self, i: int) -> int:
        r, k = self.local(i)
        return self.global_index(r, k - 1)

    def next(self, i: int) -> int:
        r, k = self.local(i)
        return self.global_index(r, k + 1)

    def adjacent(self, i: int, j: int) -> bool:
        return self.ring_of[i] == self.ring_of[j] and (self.next(i) == j or self.next(j) == i)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, self.next(i)) for i in range(self.n))

    @cached_property
    def doubled_area(self) -> int:
        return doubled_area(self.outer) + sum(doubled_area(hole) for hole in self.holes)

    @property
    def triangulation_size(self) -> int:
        """Number of diagonals in every triangulation."""
        return self.n + 3 * self.h - 3

    def to_dict(self) -> dict:
        out = {"outer": [list(p) for p in self.outer]}
        if self.holes:
            out["holes"] = [[list(p) for p in hole] for hole in self.holes]
        return out

    def __repr__(self):
        return f"Region(n={self.n}, h={self.h}, outer={list(map(tuple, self.outer))})"


def _as_points(ring) -> tuple[Point, ...]:
    pts = []
    for p in ring:
        x, y = p
        if isinstance(x, bool) or isinstance(y, bool) or not isinstance(x, int) or not isinstance(y, int):
            raise TypeError(f"coordinates must be integers, got {p!r}")
        if abs(x) >= COORD_LIMIT or abs(y) >= COORD_LIMIT:
            raise CoordinateOverflow(f"coordinate {p!r} exceeds 2**30 in magnitude")
        pts.append(Point(x, y))
    return tuple(pts)


def _check_ring(ring: tuple[Point, ...], name: str):
    if len(ring) < 3:
        raise TooFewVertices(f"{name} has {len(ring)} vertices, need at least 3")
    m = len(ring)
    edges = list(ring_edges(ring))
    for i in range(m):
        for j in range(i + 1, m):
            kind = segments_intersect(edges[i], edges[j])
            adjacent = j == i + 1 or (i == 0 and j == m - 1)
            if adjacent and m > 2:
                if kind is not Intersection.SHARED_ENDPOINT_ONLY:
                    raise NotSimple(edges[i], edges[j])
            elif kind is not Intersection.DISJOINT:
                raise NotSimple(edges[i], edges[j])
    if doubled_area(ring) == 0:
        raise NotSimple(edges[0], edges[-1])


def validate(outer: Sequence, holes: Sequence[Sequence] = ()) -> Region:
    """Check a raw polygon (with optional holes) and normalise its orientation."""
    outer_pts = _as_points(outer)
    hole_pts = [_as_points(hole) for hole in holes]

    seen = set()
    for ring in [outer_pts, *hole_pts]:
        for p in ring:
            if p in seen:
                raise DuplicateVertex(f"vertex {tuple(p)} appears twice")
            seen.add(p)

    _check_ring(outer_pts, "outer ring")
    for k, hole in enumerate(hole_pts):
        _check_ring(hole, f"hole {k}")

    outer_edges = list(ring_edges(outer_pts))
    for k, hole in enumerate(hole_pts):
        for p in hole:
            if point_in_ring(p, outer_pts) is not Location.INTERIOR:
                raise HoleNotInterior(f"hole {k} vertex {tuple(p)} is not inside the outer ring")
        for e in ring_edges(hole):
            for f in outer_edges:
                if segments_intersect(e, f) is not Intersection.DISJOINT:
                    raise HoleNotInterior(f"hole {k} edge {e} meets the outer ring")

    for a in range(len(hole_pts)):
        for b in range(a + 1, len(hole_pts)):
            ha, hb = hole_pts[a], hole_pts[b]
            for e in ring_edges(ha):
                for f in ring_edges(hb):
                    if segments_intersect(e, f) is not Intersection.DISJOINT:
                        raise HolesIntersect(f"holes {a} and {b} have touching edges")
            if point_in_ring(ha[0], hb) is not Location.EXTERIOR or point_in_ring(hb[0], ha) is not Location.EXTERIOR:
                raise HolesIntersect(f"holes {a} and {b} are nested")

    # reverse in place of the first vertex so index 0 stays put
    if doubled_area(outer_pts) < 0:
        outer_pts = outer_pts[:1] + outer_pts[:0:-1]
    hole_pts = [hole[:1] + hole[:0:-1] if doubled_area(hole) > 0 else hole for hole in hole_pts]

    starts = []
    total = 0
    for ring in [outer_pts, *hole_pts]:
        starts.append(total)
        total += len(ring)
    return Region(outer_pts, tuple(hole_pts), tuple(starts))


def is_diagonal(region: Region, u: int, v: int) -> bool:
    if u == v or region.adjacent(u, v):
        return False
    pts = region.points
    return segment_interior_in_region_interior((pts[u], pts[v]), region)


def enumerate_diagonals(region: Region) -> list[Diagonal]:
    """All diagonals of ``region`` in lexicographic ``(u, v)`` order."""
    return [Diagonal(u, v) for u in range(region.n) for v in range(u + 1, region.n) if is_diagonal(region, u, v)]


def convexity(region: Region, i: int) -> Convexity:
    """Turn direction at ``i`` as seen from the region's interior."""
    pts = region.points
    o = orientation(pts[region.prev(i)], pts[i], pts[region.next(i)])
    if o is Orientation.LEFT:
        return Convexity.CONVEX
    if o is Orientation.RIGHT:
        return Convexity.REFLEX
    return Convexity.STRAIGHT


def classify_vertex(region: Region, i: int) -> VertexClassification:
    """Principal/ear/mouth status of vertex ``i`` within its own ring.

    The ring is treated as a standalone polygon, so for a hole vertex "ear"
    means the bridging segment runs through the hole. A triangle ring has no
    bridging segment off its boundary; all three of its vertices count as ears.
    """
    if not 0 <= i < region.n:
        raise IndexError(f"vertex {i} out of range for n={region.n}")
    r, k = region.local(i)
    ring = region.rings[r]
    conv = convexity(region, i)
    if len(ring) == 3:
        return VertexClassification(i, conv, True, True, False)

    m = len(ring)
    p, q = ring[(k - 1) % m], ring[(k + 1) % m]
    bridge = (p, q)
    ends = {p, q}
    principal = True
    for e in ring_edges(ring):
        kind = segments_intersect(bridge, e)
        if kind is Intersection.DISJOINT or kind is Intersection.SHARED_ENDPOINT_ONLY:
            continue
        if kind is Intersection.TOUCHING and not any(
            c not in ends and on_segment(c, *bridge) for c in e
        ):
            continue
        principal = False
        break
    ear = mouth = False
    if principal:
        loc = midpoint_location(bridge, ring)
        ear = loc is Location.INTERIOR
        mouth = loc is Location.EXTERIOR
    return VertexClassification(i, conv, principal, ear, mouth)


def classify_all(region: Region) -> list[VertexClassification]:
    return [classify_vertex(region, i) for i in range(region.n)]


def ears(region: Region) -> list[int]:
    if region.h:
        raise ValueError("ears are defined for polygons without holes")
    return [c.index for c in classify_all(region) if c.ear]


def mouths(region: Region) -> list[int]:
    """Mouths of the outer ring, then ears of each hole ring."""
    out = []
    for c in classify_all(region):
        if region.ring_of[c.index] == 0:
            if c.mouth:
                out.append(c.index)
        elif c.ear:
            out.append(c.index)
    return out


def is_convex(region: Region) -> bool:
    """Convex polygon: no holes and no reflex vertex (straight vertices allowed)."""
    if region.h:
        return False
    return all(convexity(region, i) is not Convexity.REFLEX for i in range(region.n))


def select_mouth(region: Region) -> int:
    found = mouths(region)
    if not found:
        raise NoMouth("region has no mouth; it is a convex polygon")
    return found[0]
