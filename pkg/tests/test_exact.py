from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from torus_strata.exact import (
    GaussianRational,
    abs_square,
    determinant,
    hermite_normal_form,
    integer_kernel,
    primitive,
    rational_nullspace,
    rational_rank,
    to_fraction,
    to_gaussian,
    transpose,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussians = st.builds(GaussianRational, fractions, fractions)
int_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def to_sympy(z: GaussianRational):
    return sympy.Rational(z.re.numerator, z.re.denominator) + sympy.I * sympy.Rational(
        z.im.numerator, z.im.denominator
    )


# -- scalars ------------------------------------------------------------------


def test_to_fraction_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        to_fraction(0.5)
    with pytest.raises(TypeError):
        to_fraction(True)
    assert to_fraction("3/6") == Fraction(1, 2)


@pytest.mark.parametrize(
    "z, expected",
    [(GaussianRational(1), 1), (GaussianRational(0, 1), 1), (GaussianRational(Fraction(3, 5), Fraction(4, 5)), 1)],
)
def test_abs_square_examples(z, expected):
    assert abs_square(z) == expected


@pytest.mark.parametrize(
    "text, value",
    [
        ("3/4", GaussianRational(Fraction(3, 4))),
        ("-2i", GaussianRational(0, -2)),
        ("1/2+3/5i", GaussianRational(Fraction(1, 2), Fraction(3, 5))),
        ("-1-i", GaussianRational(-1, -1)),
        ("i", GaussianRational(0, 1)),
    ],
)
def test_wire_format_parse(text, value):
    assert GaussianRational.parse(text) == value


@given(gaussians)
def test_wire_format_round_trip(z):
    assert GaussianRational.parse(str(z)) == z


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0
    if a != 0:
        assert a * a.inverse() == 1


@given(gaussians, gaussians)
def test_arithmetic_matches_sympy(a, b):
    assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))
    assert to_sympy(a + b) == to_sympy(a) + to_sympy(b)
    if b != 0:
        assert to_sympy(a / b) == sympy.nsimplify(sympy.expand_complex(to_sympy(a) / to_sympy(b)))


@given(gaussians)
def test_abs_square_is_norm(z):
    assert GaussianRational(z.abs_square()) == z * z.conjugate()


def test_hash_agrees_with_real_equality():
    assert hash(GaussianRational(Fraction(1, 2))) == hash(Fraction(1, 2))
    assert GaussianRational(2) == 2 and to_gaussian([1, 2]) == GaussianRational(1, 2)


# -- linear algebra ----------------------------------------------------------------


def test_rank_examples():
    assert rational_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rational_rank([[0, 0], [0, 0]]) == 0
    import itertools

    def d(J):
        return [int(i in J) for i in range(1, 5)]

    rows = [[a - b for a, b in zip(d(J), d((1, 2)))] for J in itertools.combinations(range(1, 5), 2)]
    assert rational_rank(rows) == 3
    with pytest.raises(ValueError):
        rational_rank([])


@given(int_matrices)
def test_rank_matches_sympy_and_transpose(m):
    assert rational_rank(m) == sympy.Matrix(m).rank()
    assert rational_rank(m) == rational_rank(transpose(m))


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_sympy(m):
    assert determinant(m) == sympy.Matrix(m).det()


@given(int_matrices)
def test_nullspace_vectors_are_in_kernel(m):
    for v in rational_nullspace(m):
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in m)


# -- integer lattices ------------------------------------------------------------


def test_integer_kernel_examples():
    assert integer_kernel([[1, 0], [0, 1]]) == []
    assert integer_kernel([[1, -1]]) == [(1, 1)]
    # sigma = {12, 34}: the single difference delta_34 - delta_12
    assert len(integer_kernel([[-1, -1, 1, 1]])) == 3


def test_hermite_normal_form_shape():
    h = hermite_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    # oracle: same row lattice as sympy's HNF (row style via transpose)
    from sympy.matrices.normalforms import hermite_normal_form as sympy_hnf

    ref = sympy_hnf(sympy.Matrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).T).T
    assert abs(sympy.Matrix(h).det()) == abs(ref.det())
    for i, row in enumerate(h):
        lead = next(j for j, x in enumerate(row) if x)
        assert row[lead] > 0
        for above in h[:i]:
            assert 0 <= above[lead] < row[lead]


@settings(max_examples=60)
@given(int_matrices)
def test_integer_kernel_properties(m):
    ncols = len(m[0])
    basis = integer_kernel(m)
    for v in basis:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in m)
        assert primitive(v) == v or primitive(v) == tuple(-x for x in v)
    assert len(basis) + rational_rank(m) == ncols
    if basis:
        # saturation: the Smith invariants of the basis are all 1
        from sympy.matrices.normalforms import smith_normal_form

        snf = smith_normal_form(sympy.Matrix(basis), domain=sympy.ZZ)
        assert all(abs(snf[i, i]) == 1 for i in range(len(basis)))
