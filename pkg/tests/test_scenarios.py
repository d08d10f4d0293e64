import itertools
import random
from fractions import Fraction

import sympy

from torus_strata.complex import build_complex, specialization_order
from torus_strata.grassmann import SupportSet, family_c, g42_family, pluecker, subset_label, support
from torus_strata.scenarios import (
    cw_vs_cq_scenario,
    g42_closure_oracle,
    gs73_matrix,
    gs73_q,
    gs73_scenario,
    join_scenarios,
    polynomial_limit,
    verify,
)

F = Fraction


def sympy_zero_set(a2, a3, b1, b3, c1, c2, d):
    m = sympy.Matrix([[1, 0, 0, 0, b1, c1, d[0]], [0, 1, 0, a2, 0, c2, d[1]], [0, 0, 1, a3, b3, 0, d[2]]])
    return {
        "".join(map(str, J))
        for J in itertools.combinations(range(1, 8), 3)
        if m.extract([0, 1, 2], [j - 1 for j in J]).det() == 0
    }


def test_gs73_default_run():
    rep = gs73_scenario()
    assert rep.boundary_meets and rep.not_contained and rep.ok
    assert rep.q_equality == 0 and rep.q_inequality == -1
    assert rep.failing_step is None


def test_gs73_w_zero_set_against_sympy():
    rep = gs73_scenario()
    ref = sympy_zero_set(1, 1, 2, 2, 3, 3, (1, 1, 1))
    assert set(rep.w_zero_set) == ref == {"126", "135", "234", "147", "257", "367"}
    # the listed seventh triple would need a3 b1 c2 = -a2 b3 c1, incompatible with W
    p456 = sympy.Matrix([[0, 2, 3], [1, 0, 3], [1, 2, 0]]).det()
    assert p456 == 12


def test_gs73_wprime_support():
    rep = gs73_scenario()
    ref = {
        "".join(map(str, J))
        for J in itertools.combinations(range(1, 8), 3)
    } - sympy_zero_set(1, 1, 1, 1, 1, 1, (0, 0, 0))
    assert {subset_label(J) for J in rep.support_Wprime} == ref
    assert "135" not in ref and "456" in ref


def test_gs73_q_vanishes_on_limit_family():
    par = dict(a2=1, a3=1, b1=1, b3=1, c1=1, c2=1)
    for t in (F(1, 2), F(1, 4), F(1, 8), F(3, 7)):
        p = gs73_matrix(**par, d=(t, t, t))
        assert gs73_q(**par) == 0
        assert support(p) == gs73_scenario().support_W


def test_polynomial_limit_detects_degree_violation():
    # entries quadratic in t break a degree-1 interpolation
    def fam(t):
        return gs73_matrix(a2=1, a3=1, b1=1, b3=1, c1=1, c2=1, d=(t * t + 1, 1, 1))

    _, consistent = polynomial_limit(fam, degree=1)
    assert not consistent
    _, consistent = polynomial_limit(fam, degree=2)
    assert consistent


def test_cw_vs_cq():
    rep = cw_vs_cq_scenario()
    assert rep.verdict and rep.not_cw_closed
    assert rep.limit_moments["C0"] == (F(3, 5), F(2, 5), F(2, 5), F(3, 5))
    assert rep.limit_moments["C1"] == (F(3, 5), F(3, 5), F(2, 5), F(2, 5))
    assert rep.limit_moments["Cinf"] == (0, F(1, 2), 1, F(1, 2))
    assert not rep.placements["C0"]["face_of_base"]
    assert rep.placements["Cinf"]["cell"] == "{23,34}"
    assert rep.placements["Cinf"]["face_of_base"]


def test_family_c_stays_in_one_stratum():
    main = SupportSet.full(4, 2)
    rng = random.Random(4)
    for _ in range(20):
        c = F(rng.randint(-30, 30), rng.randint(1, 9))
        if c not in (0, 1):
            assert support(family_c(c)) == main


def test_closure_oracle_gives_partial_order():
    fam = g42_family()
    cx = build_complex(fam)
    oracle = g42_closure_oracle()
    order = specialization_order(cx, oracle)
    oct_label = fam.base_label
    for sq in ("{12,14,23,34}", "{12,13,24,34}", "{13,14,23,24}"):
        assert order.leq(sq, oct_label)
    for pyr in ("{12,13,14,24,34}", "{12,13,14,23,24}"):
        assert order.leq(pyr, oct_label)
    # respects projection: a <= b only if P_a meets P_b
    for a, b in order.pairs:
        pa, pb = fam.members[a], fam.members[b]
        assert any(pb.contains(v) for v in pa.vertices)
    assert not order.leq("{12}", "{34}") and not order.leq("{34}", "{12}")


def test_join_scenarios():
    models = join_scenarios()
    assert [str(m) for m in models] == [
        "join(S^2, CP^1)",
        "join(S^2, CP^2)",
        "join(S^1, CP^1)",
        "join(S^0, CP^3)",
    ]
    assert all(m.checks["violations"] == 0 for m in models)


def test_verify_is_deterministic():
    a, _, ok_a = verify("all", seed=7)
    b, _, ok_b = verify("all", seed=7)
    assert a == b and ok_a and ok_b


def test_equality_witness_limit_matches():
    rep = gs73_scenario()
    assert pluecker(rep.equality_witness)[(1, 2, 3)] == 1
