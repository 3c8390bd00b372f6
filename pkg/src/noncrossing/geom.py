"""Exact geometric predicates over integer coordinates.

Nothing in here touches floating point. Python integers are unbounded, so the
cross products never overflow; the coordinate bound enforced by
:func:`noncrossing.region.validate` only exists to keep files portable.
"""

from __future__ import annotations

import enum
from typing import NamedTuple, Sequence


class Point(NamedTuple):
    x: int
    y: int


class Segment(NamedTuple):
    a: Point
    b: Point


class Orientation(enum.IntEnum):
    RIGHT = -1
    COLLINEAR = 0
    LEFT = 1


class Intersection(enum.Enum):
    DISJOINT = "disjoint"
    SHARED_ENDPOINT_ONLY = "shared-endpoint-only"
    PROPER_CROSSING = "proper-crossing"
    TOUCHING = "touching"
    OVERLAPPING = "overlapping"


class Location(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


def cross(p, q, r) -> int:
    """Twice the signed area of the triangle ``p, q, r``."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def orientation(p, q, r) -> Orientation:
    c = cross(p, q, r)
    if c > 0:
        return Orientation.LEFT
    if c < 0:
        return Orientation.RIGHT
    return Orientation.COLLINEAR


def on_segment(p, a, b) -> bool:
    """True if ``p`` lies on the closed segment ``[a, b]``."""
    if cross(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _in_open_segment(p, a, b) -> bool:
    return on_segment(p, a, b) and tuple(p) != tuple(a) and tuple(p) != tuple(b)


def segments_intersect(s1, s2) -> Intersection:
    """Classify how two closed segments meet."""
    a, b = s1
    c, d = s2
    o1 = cross(a, b, c)
    o2 = cross(a, b, d)
    o3 = cross(c, d, a)
    o4 = cross(c, d, b)

    if o1 == 0 and o2 == 0:
        # collinear: compare projections on the dominant axis
        axis = 0 if a[0] != b[0] else 1
        lo1, hi1 = sorted((a[axis], b[axis]))
        lo2, hi2 = sorted((c[axis], d[axis]))
        overlap = min(hi1, hi2) - max(lo1, lo2)
        if overlap > 0:
            return Intersection.OVERLAPPING
        if overlap == 0:
            return Intersection.SHARED_ENDPOINT_ONLY
        return Intersection.DISJOINT

    if ((o1 > 0 and o2 < 0) or (o1 < 0 and o2 > 0)) and ((o3 > 0 and o4 < 0) or (o3 < 0 and o4 > 0)):
        return Intersection.PROPER_CROSSING

    ends1 = {tuple(a), tuple(b)}
    if tuple(c) in ends1 or tuple(d) in ends1:
        return Intersection.SHARED_ENDPOINT_ONLY
    if (
        _in_open_segment(c, a, b)
        or _in_open_segment(d, a, b)
        or _in_open_segment(a, c, d)
        or _in_open_segment(b, c, d)
    ):
        return Intersection.TOUCHING
    return Intersection.DISJOINT


def point_in_ring(p, ring: Sequence) -> Location:
    """Locate ``p`` relative to a simple closed ring by exact crossing parity."""
    inside = False
    m = len(ring)
    px, py = p
    for i in range(m):
        a = ring[i]
        b = ring[(i + 1) % m]
        if on_segment(p, a, b):
            return Location.BOUNDARY
        # half-open rule on y avoids double counting at vertices
        if (a[1] > py) != (b[1] > py):
            c = cross(a, b, p)
            if (b[1] > a[1] and c > 0) or (b[1] < a[1] and c < 0):
                inside = not inside
    return Location.INTERIOR if inside else Location.EXTERIOR


def point_in_rings(p, outer: Sequence, holes: Sequence[Sequence] = ()) -> Location:
    """Locate ``p`` in the region bounded by ``outer`` minus the ``holes``."""
    loc = point_in_ring(p, outer)
    if loc is not Location.INTERIOR:
        return loc
    for hole in holes:
        loc = point_in_ring(p, hole)
        if loc is Location.BOUNDARY:
            return loc
        if loc is Location.INTERIOR:
            return Location.EXTERIOR
    return Location.INTERIOR


def _doubled(ring):
    return [(2 * q[0], 2 * q[1]) for q in ring]


def midpoint_location(s, outer: Sequence, holes: Sequence[Sequence] = ()) -> Location:
    """Locate the midpoint of ``s``, working in doubled coordinates."""
    (a, b) = s
    mid = (a[0] + b[0], a[1] + b[1])
    return point_in_rings(mid, _doubled(outer), [_doubled(h) for h in holes])


def ring_edges(ring: Sequence):
    m = len(ring)
    for i in range(m):
        yield ring[i], ring[(i + 1) % m]


def open_segment_clear(s, edges) -> bool:
    """True if the relative interior of ``s`` meets none of ``edges``.

    Contact at an endpoint of ``s`` is allowed; any contact elsewhere,
    including a boundary vertex sitting inside ``s``, is not.
    """
    a, b = s
    ends = {tuple(a), tuple(b)}
    for e in edges:
        kind = segments_intersect(s, e)
        if kind is Intersection.DISJOINT or kind is Intersection.SHARED_ENDPOINT_ONLY:
            continue
        if kind is Intersection.TOUCHING:
            c, d = e
            if _in_open_segment(c, a, b) or _in_open_segment(d, a, b):
                return False
            # only an endpoint of s rests on e
            continue
        return False
    for e in edges:
        for q in e:
            if tuple(q) not in ends and on_segment(q, a, b):
                return False
    return True


def segment_interior_in_region_interior(s, region) -> bool:
    """True iff the open segment ``s`` lies in the open interior of ``region``.

    ``region`` is anything exposing ``outer`` and ``holes`` point sequences,
    normally a validated :class:`noncrossing.region.Region`.
    """
    if tuple(s[0]) == tuple(s[1]):
        return False
    edges = list(ring_edges(region.outer))
    for hole in region.holes:
        edges.extend(ring_edges(hole))
    if not open_segment_clear(s, edges):
        return False
    return midpoint_location(s, region.outer, region.holes) is Location.INTERIOR


def doubled_area(ring: Sequence) -> int:
    """Signed doubled area (shoelace); positive for counterclockwise rings."""
    total = 0
    m = len(ring)
    for i in range(m):
        a = ring[i]
        b = ring[(i + 1) % m]
        total += a[0] * b[1] - b[0] * a[1]
    return total
