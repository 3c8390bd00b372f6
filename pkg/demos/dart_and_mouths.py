"""
Ears, mouths and the dart
=========================

A vertex is principal when the segment joining its two neighbours touches
the boundary only at its ends. Principal vertices split into ears (segment
inside) and mouths (segment outside).
"""

from noncrossing.complex import build_complex
from noncrossing.fixtures import DART, NONCONVEX
from noncrossing.region import classify_all, enumerate_diagonals, mouths, validate

dart = validate(DART)
for c in classify_all(dart):
    print(c.index, c.convexity.name, "ear" if c.ear else "", "mouth" if c.mouth else "")

# only B-D survives as a diagonal, so the complex is a single point
print(enumerate_diagonals(dart))
print(build_complex(dart).faces)

# every non-convex fixture has at least one mouth
for name, pts in NONCONVEX.items():
    print(f"{name:22s} mouths={mouths(validate(pts))}")
