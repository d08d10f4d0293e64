"""Exact scalars and integer-lattice linear algebra.

Real scalars are plain :class:`fractions.Fraction` values.  Complex scalars are
:class:`GaussianRational`, a pair of fractions.  Nothing in here touches
floating point.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

__all__ = [
    "GaussianRational",
    "Scalar",
    "to_fraction",
    "to_gaussian",
    "abs_square",
    "row_echelon",
    "rational_rank",
    "rational_nullspace",
    "determinant",
    "hermite_normal_form",
    "integer_kernel",
    "transpose",
]

RationalLike = Union[int, Fraction, str]


def to_fraction(x: RationalLike) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: they would silently smuggle rounding into exact code.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussianRational:
    """Complex number ``re + im*i`` with rational parts.

    Instances are immutable and hashable; equality against ints and Fractions
    works as expected.

    >>> z = GaussianRational(Fraction(3, 5), Fraction(4, 5))
    >>> abs_square(z)
    Fraction(1, 1)
    >>> str(z * z.conjugate())
    '1'
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        object.__setattr__(self, "_re", to_fraction(re))
        object.__setattr__(self, "_im", to_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self._re + o._re, self._im + o._im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self._re, -self._im)

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self._re - o._re, self._im - o._im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(
            self._re * o._re - self._im * o._im,
            self._re * o._im + self._im * o._re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.abs_square()
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self._re / n, -self._im / n)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        result = GaussianRational(1)
        for _ in range(abs(k)):
            result = result * base
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self._re, -self._im)

    def abs_square(self) -> Fraction:
        return self._re * self._re + self._im * self._im

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._re == o._re and self._im == o._im

    def __hash__(self):
        if self._im == 0:
            return hash(self._re)
        return hash((self._re, self._im))

    def __bool__(self):
        return bool(self._re) or bool(self._im)

    def is_real(self) -> bool:
        return self._im == 0

    # -- text ---------------------------------------------------------------

    def __repr__(self):
        return f"GaussianRational({self._re!s}, {self._im!s})"

    def __str__(self):
        if self._im == 0:
            return str(self._re)
        im = "" if abs(self._im) == 1 else str(abs(self._im))
        if self._re == 0:
            return f"{'-' if self._im < 0 else ''}{im}i"
        return f"{self._re}{'-' if self._im < 0 else '+'}{im}i"

    _NUM = r"\d+(?:/\d+)?"
    _PURE_IM = _re.compile(rf"^(?P<sign>[+-]?)(?P<im>{_NUM})?i$")
    _FULL = _re.compile(rf"^(?P<re>[+-]?{_NUM})(?:(?P<sign>[+-])(?P<im>{_NUM})?i)?$")

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse the wire format ``"p/q"``, ``"r/si"`` or ``"p/q+r/si"``."""
        compact = "".join(text.split())
        m = cls._PURE_IM.match(compact)
        if m:
            re_part = Fraction(0)
        else:
            m = cls._FULL.match(compact)
            if m is None:
                raise ValueError(f"not a Gaussian rational: {text!r}")
            re_part = Fraction(m.group("re"))
            if m.group("sign") is None:
                return cls(re_part)
        im_part = Fraction(m.group("im")) if m.group("im") else Fraction(1)
        if m.group("sign") == "-":
            im_part = -im_part
        return cls(re_part, im_part)


def _coerce(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return GaussianRational(x)
    return NotImplemented


Scalar = Union[int, Fraction, GaussianRational]


def to_gaussian(x) -> GaussianRational:
    """Coerce ints, Fractions, ``[re, im]`` pairs and strings."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, str):
        return GaussianRational.parse(x)
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise ValueError(f"expected [re, im], got {x!r}")
        return GaussianRational(to_fraction(x[0]), to_fraction(x[1]))
    return GaussianRational(to_fraction(x))


def abs_square(z: Scalar) -> Fraction:
    """``|z|^2`` as an exact Fraction."""
    if isinstance(z, GaussianRational):
        return z.abs_square()
    z = to_fraction(z)
    return z * z


# -- linear algebra over a field (Fraction or GaussianRational entries) -------


def _field(x):
    if isinstance(x, GaussianRational):
        return x
    return to_fraction(x)


def row_echelon(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over the rationals or Gaussian rationals.

    Returns the nonzero reduced rows and the list of pivot columns.
    """
    mat = [[_field(x) for x in row] for row in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    if any(len(r) != ncols for r in mat):
        raise ValueError("ragged matrix")
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rational_rank(m: Sequence[Sequence]) -> int:
    """Exact rank of ``m`` over the field generated by its entries.

    >>> rational_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    3
    """
    if not m:
        raise ValueError("empty matrix")
    return len(row_echelon(m)[1])


def rational_nullspace(m: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of ``{x : m x = 0}`` over the entries' field (one vector per free column)."""
    if not m:
        if ncols is None:
            raise ValueError("empty matrix needs an explicit column count")
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    reduced, pivots = row_echelon(m)
    ncols = len(m[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def determinant(m: Sequence[Sequence]):
    """Determinant of a square matrix by fraction-exact elimination."""
    mat = [[_field(x) for x in row] for row in m]
    n = len(mat)
    if any(len(r) != n for r in mat):
        raise ValueError("determinant of a non-square matrix")
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if mat[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            mat[c], mat[piv] = mat[piv], mat[c]
            det = -det
        det = det * mat[c][c]
        inv = 1 / mat[c][c]
        for i in range(c + 1, n):
            if mat[i][c] != 0:
                f = mat[i][c] * inv
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[c])]
    return det


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


# -- integer lattices --------------------------------------------------------


def _as_int_rows(rows: Iterable[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        new = []
        for x in row:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"non-integer entry {x}")
                x = x.numerator
            if not isinstance(x, int) or isinstance(x, bool):
                raise TypeError(f"non-integer entry {x!r}")
            new.append(x)
        out.append(new)
    return out


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix; zero rows dropped.

    The result spans the same lattice as ``rows``.  Pivots are positive and the
    entries above each pivot are reduced into ``[0, pivot)``.
    """
    mat = _as_int_rows(rows)
    if not mat:
        return []
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        if r == len(mat):
            break
        # gcd-reduce column c among rows r.. until one nonzero entry remains
        while True:
            nz = [i for i in range(r, len(mat)) if mat[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(mat[i][c]))
            mat[r], mat[piv] = mat[piv], mat[r]
            done = True
            for i in range(r + 1, len(mat)):
                if mat[i][c] != 0:
                    q = mat[i][c] // mat[r][c]
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
                    if mat[i][c] != 0:
                        done = False
            if done:
                break
        if mat[r][c] == 0:
            continue
        if mat[r][c] < 0:
            mat[r] = [-a for a in mat[r]]
        for i in range(r):
            q = mat[i][c] // mat[r][c]
            if q:
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
        r += 1
    return [row for row in mat[:r] if any(row)]


def integer_kernel(m: Sequence[Sequence[int]], ncols: int | None = None) -> list[tuple[int, ...]]:
    """Lattice basis of ``{x in Z^n : m x = 0}`` in Hermite normal form.

    The basis spans the full (saturated) integer kernel, so every basis vector
    is primitive.

    >>> integer_kernel([[1, -1]])
    [(1, 1)]
    """
    mat = _as_int_rows(m)
    if not mat:
        if ncols is None:
            raise ValueError("empty matrix needs an explicit column count")
        return [tuple(int(i == j) for i in range(ncols)) for j in range(ncols)]
    n = len(mat[0])
    k = len(mat)
    # [m^T | I]: unimodular row operations that kill the left block leave
    # kernel vectors in the right block.
    aug = [[mat[i][j] for i in range(k)] + [int(j == t) for t in range(n)] for j in range(n)]
    reduced = hermite_normal_form(aug)
    kernel = [row[k:] for row in reduced if not any(row[:k])]
    return [tuple(v) for v in hermite_normal_form(kernel)]


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)
