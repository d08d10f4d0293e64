"""
Strata of G(4,2) over the octahedron
====================================

Every point of G(4,2) has a Plücker support.  The supports that actually
occur give 36 admissible polytopes inside the octahedron, and some of them
(pyramids, squares) are not faces of it.
"""

from fractions import Fraction

from torus_strata import cortege, g42_family, hypersimplex, is_regular_value
from torus_strata.grassmann import family_c, g42_parameter, moment, pluecker, support

octahedron = hypersimplex(4, 2)
print("f-vector of Delta(4,2):", octahedron.f_vector())

# A point on the main stratum and its cross-ratio
p = family_c(2)
print("Plücker coordinates:", [str(z) for z in pluecker(p).values()])
print("support:", support(p).label)
print("moment:", [str(x) for x in moment(p)])
print("kappa:", g42_parameter(p))

# The catalog, grouped by dimension
family = g42_family()
by_dim = {}
for label, poly in family:
    by_dim.setdefault(poly.dim, []).append(label)
for d, labels in sorted(by_dim.items()):
    print(f"dim {d}: {len(labels)} polytopes")

# The center is covered by the octahedron and the three squares, so it is singular
center = (Fraction(1, 2),) * 4
print("cortege of the center:", cortege(family, center).members)
print("regular?", is_regular_value(family, center))

x = (Fraction(7, 10), Fraction(1, 2), Fraction(2, 5), Fraction(2, 5))
print("cortege of", [str(c) for c in x], ":", cortege(family, x).members)
print("regular?", is_regular_value(family, x))
