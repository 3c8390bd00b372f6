"""
Regions with holes, and cutting along a diagonal
================================================

With h holes every triangulation uses n + 3h - 3 diagonals. Cutting along a
diagonal either splits the region in two or, when the diagonal runs from the
outer ring to a hole, opens the hole up and leaves one fewer boundary ring.
"""

from noncrossing.complex import boundary_faces, build_complex, cut_along_diagonal, cut_complex, link
from noncrossing.fixtures import HOLED
from noncrossing.homology import classify, reduced_homology
from noncrossing.region import validate

region = validate(*HOLED["square-in-square"])
cplx = build_complex(region)
print("n, h:", region.n, region.h, " facet size:", region.triangulation_size, " dim:", cplx.dim)
print(classify(reduced_homology(cplx), cplx).value)

# every vertex of this complex sits on its boundary
print(boundary_faces(cplx).vertices == frozenset(range(cplx.d)))

# a bridging diagonal merges the hole into the outer ring
dg = next(d for d in cplx.labels if region.ring_of[d.u] != region.ring_of[d.v])
cut = cut_along_diagonal(region, dg)
(piece,) = cut.pieces
print("cut along", dg, "->", piece.n, "vertices,", piece.h, "holes")

# the cut region's complex is the link of that diagonal
print(cut_complex(cut).label_sets() == link(cplx, cplx.index_of(dg)).label_sets())
