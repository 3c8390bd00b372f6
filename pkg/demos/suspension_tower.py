"""
Cones, deletions and suspensions
================================

Fix the diagonal d that cuts the last vertex off a convex n-gon. Faces that
can take d form a cone over the (n-1)-gon's complex; faces avoiding d form the
deletion. The two meet in the (n-1)-gon's complex, and gluing them suspends it.
"""

from noncrossing.complex import build_complex, cone, suspension
from noncrossing.fixtures import convex_polygon
from noncrossing.homology import reduced_homology

for n in (5, 6, 7):
    big = build_complex(convex_polygon(n))
    small = build_complex(convex_polygon(n - 1))
    d = (0, n - 2)
    bit = 1 << big.index_of(d)
    star = {big.face_labels(f) for f in big.faces if (f | bit) in big.face_set}
    rest = {big.face_labels(f) for f in big.faces if not f & bit}
    print(f"n={n}  star is cone: {star == cone(small, d).label_sets()}"
          f"  overlap is P{n - 1}: {star & rest == small.label_sets()}")
    print("      betti", list(reduced_homology(big).reduced_betti),
          "vs suspension", list(reduced_homology(suspension(small)).reduced_betti))
