"""
Convex polygons and their spheres
=================================

For a convex n-gon the complex of non-crossing diagonals has one facet per
triangulation, and its homology is that of a sphere of dimension n - 4.
"""

from noncrossing.complex import build_complex, f_vector
from noncrossing.fixtures import convex_polygon
from noncrossing.homology import classify, reduced_homology

# facet counts run through the Catalan numbers 2, 5, 14, 42, ...
for n in range(4, 9):
    cplx = build_complex(convex_polygon(n))
    profile = reduced_homology(cplx)
    print(f"n={n}  f-vector={list(f_vector(cplx))}")
    print(f"      betti={list(profile.reduced_betti)}  {classify(profile, cplx).value}")

# the pentagon's complex is a 5-cycle: every diagonal meets exactly two others
penta = build_complex(convex_polygon(5))
for face in penta.by_size[2]:
    print(sorted(penta.face_labels(face)))
