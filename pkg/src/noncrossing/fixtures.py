"""Named test regions and a seeded random simple-polygon generator."""

from __future__ import annotations

import itertools

import numpy as np

from .geom import Intersection, cross, segments_intersect
from .region import Region, is_convex, validate


def convex_polygon(n: int) -> Region:
    """Strictly convex ``n``-gon with vertices ``(i, i**2)``.

    Dropping the last vertex gives the fixture for ``n - 1``, which is what the
    cone/deletion decomposition relies on.
    """
    return validate([(i, i * i) for i in range(n)])


DART = [(0, 0), (2, 1), (4, 0), (2, 3)]

NONCONVEX = {
    "dart": DART,
    "pentagon-notch": [(0, 0), (4, 0), (4, 4), (2, 1), (0, 4)],
    "pentagon-two-reflex": [(7, 1), (6, 6), (6, 9), (5, 6), (2, 3)],
    "hexagon-notch": [(0, 0), (3, 1), (6, 0), (6, 4), (3, 5), (0, 4)],
    "hexagon-two-reflex": [(1, 2), (4, 3), (9, 3), (7, 8), (8, 5), (0, 7)],
    "l-shape": [(0, 0), (5, 0), (5, 2), (2, 3), (2, 5), (0, 5)],
    "arrow": [(0, 2), (4, 0), (3, 2), (7, 2), (7, 4), (3, 4), (4, 6)],
    "heptagon-two-notch": [(0, 0), (3, 1), (7, 0), (6, 3), (7, 6), (3, 5), (0, 6)],
    "comb": [(0, 0), (9, 0), (9, 5), (7, 5), (6, 2), (4, 5), (3, 2), (1, 5)],
    "star": [(4, 0), (5, 3), (8, 4), (5, 5), (4, 8), (3, 5), (0, 4), (3, 3)],
    "zigzag": [(0, 0), (10, 0), (10, 5), (8, 2), (7, 6), (5, 3), (3, 6), (2, 2), (0, 5)],
    "nonagon-four-reflex": [(2, 9), (3, 7), (4, 4), (0, 1), (2, 0), (4, 2), (7, 3), (6, 5), (8, 9)],
}

HOLED = {
    "triangle-in-triangle": ([(0, 0), (12, 0), (0, 12)], [[(2, 2), (5, 3), (3, 5)]]),
    "square-in-square": ([(0, 0), (9, 0), (9, 9), (0, 9)], [[(3, 3), (6, 4), (5, 7), (2, 6)]]),
    "pentagon-triangle-hole": (
        [(0, 0), (10, 1), (12, 8), (5, 12), (-2, 7)],
        [[(3, 4), (7, 4), (5, 7)]],
    ),
    "quad-triangle-hole": ([(0, 0), (10, 0), (11, 9), (-1, 8)], [[(3, 3), (7, 3), (5, 6)]]),
}


def nonconvex_fixtures() -> dict[str, Region]:
    return {name: validate(pts) for name, pts in NONCONVEX.items()}


def holed_fixtures() -> dict[str, Region]:
    return {name: validate(outer, holes) for name, (outer, holes) in HOLED.items()}


def _crossing_pair(pts, order):
    m = len(order)
    for i in range(m):
        a, b = pts[order[i]], pts[order[(i + 1) % m]]
        for j in range(i + 2, m):
            if i == 0 and j == m - 1:
                continue
            c, d = pts[order[j]], pts[order[(j + 1) % m]]
            if segments_intersect((a, b), (c, d)) is Intersection.PROPER_CROSSING:
                return i, j
    return None


def random_simple_polygon(n: int, rng: np.random.Generator, grid: int = 12) -> Region:
    """Simple polygon on an integer grid via 2-opt uncrossing.

    Point sets with three collinear points are resampled, so every crossing
    is proper and each 2-opt move strictly shortens the tour.
    """
    while True:
        pts = [tuple(map(int, p)) for p in rng.integers(0, grid, size=(n, 2))]
        if len(set(pts)) < n:
            continue
        if any(cross(a, b, c) == 0 for a, b, c in itertools.combinations(pts, 3)):
            continue
        order = list(rng.permutation(n))
        while (pair := _crossing_pair(pts, order)) is not None:
            i, j = pair
            order[i + 1 : j + 1] = order[i + 1 : j + 1][::-1]
        return validate([pts[k] for k in order])


def random_polygons(count: int, seed: int = 0, n_range=(4, 8), grid: int = 12, nonconvex: bool | None = None):
    """Yield ``count`` seeded random simple polygons.

    ``nonconvex=True`` keeps only non-convex ones, ``False`` only convex ones.
    """
    rng = np.random.default_rng(seed)
    made = 0
    while made < count:
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        region = random_simple_polygon(n, rng, grid)
        if nonconvex is not None and is_convex(region) == nonconvex:
            continue
        made += 1
        yield region
