"""
Orbit spaces as joins
=====================

When every boundary point of the moment polytope is simple and the fibers
over proper faces are points, the orbit space is the join of a sphere
with the compactified parameter space.
"""

from fractions import Fraction

from torus_strata.models import (
    FlagChartPoint,
    f3_classify,
    f3_family,
    f3_moment,
    lookup_parameter_space,
)
from torus_strata.scenarios import join_scenarios

for model in join_scenarios(sphere_n=4):
    checks = model.checks
    print(f"{model.base:8s} {model}   ({checks['boundary_points_tested']} boundary points checked)")

# The flag manifold F3 in its chart: orbit classes and the invariant a1 a3 / a2
for a in [(1, 1, 2), (1, 1, 1), (1, 0, 3), (0, 2, 0), (0, 0, 0)]:
    p = FlagChartPoint(*a)
    c = f3_classify(p)
    mu = f3_moment(p)
    print(a, "class", c.orbit_class, "parameter", c.parameter, "moment", [str(x) for x in mu])

print("F3 family size:", len(f3_family()))
print("universal space for F3:", lookup_parameter_space("f3").universal_space)
print("universal space for G(5,2):", lookup_parameter_space("g52").universal_space)
