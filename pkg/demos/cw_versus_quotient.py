"""
A limit that leaves the CW closure
==================================

The family C(c) lies on the main stratum for c != 0, 1.  Its limits at
c = 0, 1 and infinity land in the open pyramids and in an edge.  The pyramids
are not faces of the octahedron, so the image of the closure is not closed
in the CW topology on the complex.
"""

from torus_strata.scenarios import cw_vs_cq_scenario

report = cw_vs_cq_scenario()
print(report.to_text())

for name, placement in report.placements.items():
    print(name, "cortege:", placement["cortege"])

print("order evidence (cell <= cell):")
for a, b in report.order_evidence:
    print("  ", a, "<=", b)
