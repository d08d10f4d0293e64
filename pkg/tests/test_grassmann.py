import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from torus_strata.exact import GaussianRational, rational_rank
from torus_strata.grassmann import (
    GrassmannPoint,
    PlueckerVector,
    SupportSet,
    admissible_polytope,
    change_basis,
    family_c,
    g42_catalog,
    g42_parameter,
    is_matroid,
    moment,
    orbit_equivalent,
    plucker_relation_check,
    pluecker,
    realizable,
    stabilizer,
    stratum,
    support,
    torus_act,
)
from torus_strata.polytope import delta, hypersimplex

F = Fraction
G = GaussianRational
PAIRS = list(itertools.combinations(range(1, 5), 2))


def sympy_minors(rows):
    m = sympy.Matrix([[sympy.Rational(z.re) + sympy.I * sympy.Rational(z.im) for z in map(GaussianRational.parse, r)] for r in rows])
    n, q = m.shape
    return {J: sympy.expand(m.extract([j - 1 for j in J], list(range(q))).det()) for J in itertools.combinations(range(1, n + 1), q)}


small = st.builds(G, st.integers(-3, 3), st.integers(-3, 3))


def matrices(n, q):
    return st.lists(st.lists(small, min_size=q, max_size=q), min_size=n, max_size=n).filter(
        lambda m: rational_rank(m) == q
    )


torus = st.lists(st.builds(G, st.integers(-4, 4), st.integers(-4, 4)).filter(bool), min_size=4, max_size=4)


# -- Plücker coordinates ----------------------------------------------------------


def test_family_c_pluecker():
    v = pluecker(family_c(2))
    assert [v[J] for J in PAIRS] == [1, 1, 1, -2, -1, 1]
    assert plucker_relation_check(v)


def test_coordinate_plane():
    p = GrassmannPoint([[1, 0], [0, 1], [0, 0], [0, 0]])
    v = pluecker(p)
    assert v["12"] == 1 and all(v[J] == 0 for J in PAIRS[1:])
    assert support(v) == SupportSet.of(4, 2, ["12"])
    assert moment(p) == delta((1, 2), 4)


def test_relation_check_examples():
    bad = PlueckerVector(4, 2, dict(zip(PAIRS, [1, 0, 0, 0, 0, 1])))
    assert not plucker_relation_check(bad)
    assert plucker_relation_check(PlueckerVector(4, 2, {(2, 4): 5}))
    with pytest.raises(ValueError, match="use matrix reconstruction"):
        plucker_relation_check(pluecker(GrassmannPoint([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])))


def test_rank_checked():
    with pytest.raises(ValueError):
        GrassmannPoint([[1, 2], [2, 4], [0, 0], [3, 6]])
    with pytest.raises(ValueError):
        PlueckerVector(4, 2, {})


@settings(max_examples=30, deadline=None)
@given(matrices(5, 2))
def test_pluecker_matches_sympy(m):
    p = GrassmannPoint(m)
    ref = sympy_minors([[str(z) for z in row] for row in p.matrix])
    v = pluecker(p)
    lead = next(ref[J] for J in ref if ref[J] != 0)
    for J, val in ref.items():
        z = v[J]
        assert sympy.simplify(sympy.Rational(z.re) + sympy.I * sympy.Rational(z.im) - val / lead) == 0


@settings(max_examples=50, deadline=None)
@given(matrices(4, 2), torus)
def test_random_g42_properties(m, t):
    p = GrassmannPoint(m)
    v = pluecker(p)
    assert plucker_relation_check(v)
    mu = moment(p)
    assert hypersimplex(4, 2).contains(mu)
    sigma = support(v)
    assert admissible_polytope(sigma).contains(mu, "interior")
    tp = torus_act(p, t)
    assert support(tp) == sigma
    assert orbit_equivalent(p, tp) and orbit_equivalent(tp, p)
    if len(sigma) == 6:
        assert g42_parameter(tp) == g42_parameter(p)
        assert g42_parameter(p) not in (0, 1)


@settings(max_examples=30, deadline=None)
@given(matrices(5, 3), st.lists(small, min_size=9, max_size=9))
def test_basis_change_keeps_canonical_vector(m, g):
    g = [g[0:3], g[3:6], g[6:9]]
    if rational_rank(g) != 3:
        return
    p = GrassmannPoint(m)
    assert pluecker(change_basis(p, g)) == pluecker(p)
    assert orbit_equivalent(p, change_basis(p, g))


def test_compact_torus_keeps_moment():
    p = family_c(3)
    unit = G(F(3, 5), F(4, 5))
    assert moment(torus_act(p, [unit, 1, unit * unit, -1])) == moment(p)


# -- moment examples ----------------------------------------------------------------


def test_moment_examples():
    c0 = GrassmannPoint([[1, 0], [0, 1], [0, 1], [1, 1]])
    assert support(c0) == SupportSet(4, 2, frozenset(set(PAIRS) - {(2, 3)}))
    assert moment(c0) == (F(3, 5), F(2, 5), F(2, 5), F(3, 5))
    cinf = GrassmannPoint([[0, 0], [1, 0], [0, 1], [1, 0]])
    assert moment(cinf) == (0, F(1, 2), 1, F(1, 2))
    assert moment(family_c(2)) == (F(1, 3), F(2, 3), F(2, 3), F(1, 3))


def test_admissible_polytope_examples():
    assert admissible_polytope(SupportSet.full(4, 2)) == hypersimplex(4, 2)
    v = admissible_polytope(SupportSet.of(4, 2, ["13"]))
    assert v.dim == 0 and v.vertices == (delta((1, 3), 4),)
    pyr = admissible_polytope(support(GrassmannPoint([[1, 0], [0, 1], [0, 1], [1, 1]])))
    assert pyr.dim == 3 and len(pyr.vertices) == 5 and delta((2, 3), 4) not in pyr.vertices


# -- stabilizers and strata --------------------------------------------------------


def test_stabilizer_examples():
    assert stabilizer(SupportSet.full(4, 2)).torus_dim == 3
    assert stabilizer(SupportSet.of(4, 2, ["12"])).torus_dim == 0
    edge = stabilizer(SupportSet.of(4, 2, ["23", "34"]))
    assert edge.torus_dim == 1
    for v in edge.kernel:
        assert v[1] == v[3]  # orthogonal to delta_34 - delta_23 = (0,-1,0,1)


def test_stabilizer_kernel_orthogonal_on_catalog():
    for sigma in g42_catalog():
        stab = stabilizer(sigma)
        J0 = sigma.sorted()[0]
        for J in sigma:
            d = [a - b for a, b in zip(delta(J, 4), delta(J0, 4))]
            for v in stab.kernel:
                assert sum(x * y for x, y in zip(v, d)) == 0
        assert stab.torus_dim == admissible_polytope(sigma).dim


def test_stratum_record():
    s = stratum(family_c(2))
    assert s.torus_dim == 3 and s.parameter_descriptor == "curve(C-{0,1})"
    d = s.to_dict()
    assert d["support"] == ["12", "13", "14", "23", "24", "34"]
    assert stratum(SupportSet.of(4, 2, ["12", "13"])).parameter_descriptor == "point"


# -- parameter and orbits ------------------------------------------------------------


def test_g42_parameter_examples():
    assert g42_parameter(family_c(2)) == 2
    assert g42_parameter(family_c(-1)) == -1
    p = GrassmannPoint([[1, 0], [0, 1], [1, 1], [1, -1]])
    minors = sympy_minors([["1", "0"], ["0", "1"], ["1", "1"], ["1", "-1"]])
    expected = minors[(2, 3)] * minors[(1, 4)] / (minors[(1, 3)] * minors[(2, 4)])
    assert g42_parameter(p) == G(F(int(sympy.numer(expected)), int(sympy.denom(expected))))
    with pytest.raises(ValueError, match="main stratum"):
        g42_parameter(GrassmannPoint([[1, 0], [0, 1], [0, 1], [1, 1]]))


def test_orbit_examples():
    assert not orbit_equivalent(family_c(2), family_c(3))
    assert not orbit_equivalent(family_c(2), GrassmannPoint([[1, 0], [0, 1], [0, 1], [1, 1]]))
    rng = random.Random(3)
    pts = [family_c(c) for c in (2, 3, -1)]
    for p in pts:
        t = [G(rng.randint(1, 5), rng.randint(-2, 2)) for _ in range(4)]
        q = torus_act(p, t)
        r = torus_act(q, [G(rng.randint(1, 5)) for _ in range(4)])
        assert orbit_equivalent(p, p)
        assert orbit_equivalent(p, q) and orbit_equivalent(q, r) and orbit_equivalent(p, r)


# -- realizability and the G(4,2) catalog ----------------------------------------------


def test_catalog_shape():
    cat = g42_catalog()
    assert len(cat) == 36
    counts = {}
    for s in cat:
        counts[len(s)] = counts.get(len(s), 0) + 1
    # vertices, edges, triangles + the three squares, pyramids, octahedron
    assert counts == {1: 6, 2: 12, 3: 8, 4: 3, 5: 6, 6: 1}
    assert all(is_matroid(s) for s in cat)


def test_realizable_examples():
    r = realizable(SupportSet.full(4, 2))
    assert r.status == "yes" and support(r.witness) == SupportSet.full(4, 2)
    # p12 p34 = p13 p24 - p14 p23 forces p12 p34 = 0 when the other four vanish
    assert realizable(SupportSet.of(4, 2, ["12", "34"])).status == "no"
    missing34 = SupportSet.of(4, 2, ["12", "13", "14", "23", "24"])
    r = realizable(missing34)
    assert r and support(r.witness) == missing34
    assert support(family_c(1)) == missing34


def test_realizable_matches_exhaustive_g42_oracle():
    # oracle: all supports hit by 0/±1 matrices in G(4,2)
    seen = set()
    for m in itertools.product([0, 1, -1], repeat=8):
        rows = [m[0:2], m[2:4], m[4:6], m[6:8]]
        if rational_rank(rows) == 2:
            seen.add(support(GrassmannPoint(rows)))
    assert seen == set(g42_catalog())
    for s in itertools.chain.from_iterable(itertools.combinations(PAIRS, r) for r in range(1, 7)):
        sigma = SupportSet.of(4, 2, s)
        assert (realizable(sigma).status == "yes") == (sigma in seen)


def test_realizable_unknown_outside_catalog():
    # G(5,2): a pair of disjoint subsets violates the exchange relation, never realized
    r = realizable(SupportSet.of(5, 2, ["12", "34"]), budget=20)
    assert r.status == "unknown" and r.attempts == 20
    sigma = support(GrassmannPoint([[1, 0], [0, 1], [1, 1], [1, 2], [0, 3]]))
    assert realizable(sigma).status == "yes"
