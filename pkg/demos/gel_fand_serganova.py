"""
Boundary of a stratum in G(7,3)
===============================

The stratum W is one torus orbit.  Its boundary meets the stratum W', but
W' is strictly larger than what the boundary can reach: on the boundary
Q = a3 b1 c2 - a2 b3 c1 vanishes, and W' has points with Q != 0.
"""

from torus_strata.scenarios import gs73_matrix, gs73_q, gs73_scenario
from torus_strata.grassmann import support

report = gs73_scenario()
print(report.to_text())
print()
print("zero set of the W witness:", report.w_zero_set)
print("Q at the equality witness:", report.q_equality)
print("Q at the inequality witness:", report.q_inequality)

# The two witnesses share a support
eq = gs73_matrix(a2=1, a3=1, b1=1, b3=1, c1=1, c2=1)
ineq = gs73_matrix(a2=1, a3=1, b1=1, b3=2, c1=1, c2=1)
print("same stratum:", support(eq) == support(ineq))

# 456 stays nonzero whenever a3 b1 c2 != -a2 b3 c1
for b3 in (1, 2, -1):
    p = gs73_matrix(a2=1, a3=1, b1=1, b3=b3, c1=1, c2=1)
    print(f"b3={b3:2d}  Q={gs73_q(1, 1, 1, b3, 1, 1)}  |support|={len(support(p))}")
