"""
Collapsing a non-convex complex
===============================

Pick a mouth x, send each face to the last diagonal at x that it is
compatible with, and toggle. The resulting matching is acyclic, leaves
nothing critical, and drives a collapse down to one vertex.
"""

from noncrossing.complex import build_complex, members
from noncrossing.fixtures import NONCONVEX
from noncrossing.homology import reduced_homology
from noncrossing.morse import replay_collapse, run_morse
from noncrossing.region import validate

region = validate(NONCONVEX["zigzag"])
cplx = build_complex(region)
result = run_morse(cplx)

print("mouth:", result.order.x)
print("faces:", len(cplx.faces), " matched pairs:", len(result.matching.matched_pairs))
print("conditions checked:", result.conditions.checked)
print("acyclic:", result.acyclic)

# the log is just a list of (free face, coface) bitsets; it replays on a fresh copy
log = result.log
print("collapses:", len(log.steps), " survivor:", cplx.labels[members(log.survivor)[0]])
print("replay ok:", replay_collapse(cplx, log))
print(log.to_lines()[:5])

# homology agrees: everything vanishes
print(reduced_homology(cplx).reduced_betti)
