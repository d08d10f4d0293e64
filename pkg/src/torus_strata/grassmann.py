"""Points of the Grassmannian G(n, q) over the Gaussian rationals.

A point is an ``n x q`` matrix of full rank whose columns span the subspace.
Everything downstream goes through the Plücker vector: its support is the
matroid stratum, the moment map is the |P^J|^2-weighted average of the
indicator vectors delta_J, and the algebraic torus (C*)^n acts on coordinate
J by the character t^{delta_J}.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .exact import (
    GaussianRational,
    determinant,
    integer_kernel,
    rational_rank,
    to_gaussian,
)
from .polytope import LatticePolytope, QPoint, convex_hull, delta

__all__ = [
    "GrassmannPoint",
    "PlueckerVector",
    "SupportSet",
    "Stratum",
    "StabilizerSubtorus",
    "Realizability",
    "subset_label",
    "parse_subset",
    "pluecker",
    "support",
    "plucker_relation_check",
    "moment",
    "admissible_polytope",
    "stabilizer",
    "relation_lattice",
    "orbit_equivalent",
    "g42_parameter",
    "realizable",
    "is_matroid",
    "stratum",
    "torus_act",
    "change_basis",
    "g42_catalog",
    "g42_family",
    "family_c",
]


def subset_label(J: Sequence[int]) -> str:
    """``(1, 2)`` -> ``"12"``; comma-separated once indices reach 10."""
    if all(j < 10 for j in J):
        return "".join(str(j) for j in J)
    return ",".join(str(j) for j in J)


def parse_subset(text: str) -> tuple[int, ...]:
    if "," in text:
        return tuple(sorted(int(t) for t in text.split(",")))
    return tuple(sorted(int(ch) for ch in text))


@dataclass(frozen=True)
class SupportSet:
    """A nonempty set of ``q``-subsets of ``{1..n}`` (a candidate stratum label)."""

    n: int
    q: int
    members: frozenset

    def __post_init__(self):
        members = frozenset(tuple(sorted(J)) for J in self.members)
        if not members:
            raise ValueError("support set must be nonempty")
        for J in members:
            if len(J) != self.q or len(set(J)) != self.q or not all(1 <= j <= self.n for j in J):
                raise ValueError(f"{J} is not a {self.q}-subset of 1..{self.n}")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, n: int, q: int, subsets: Iterable) -> "SupportSet":
        """Build from tuples or labels such as ``"12"``."""
        return cls(n, q, frozenset(parse_subset(J) if isinstance(J, str) else tuple(J) for J in subsets))

    @classmethod
    def full(cls, n: int, q: int) -> "SupportSet":
        return cls(n, q, frozenset(itertools.combinations(range(1, n + 1), q)))

    def sorted(self) -> list[tuple[int, ...]]:
        return sorted(self.members)

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self):
        return len(self.members)

    def __contains__(self, J):
        return tuple(J) in self.members

    def __le__(self, other: "SupportSet") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "SupportSet") -> bool:
        return self.members < other.members

    @property
    def label(self) -> str:
        return "{" + ",".join(subset_label(J) for J in self.sorted()) + "}"

    def __str__(self):
        return self.label


class GrassmannPoint:
    """A ``q``-plane in ``C^n`` given by an ``n x q`` matrix of rank ``q``.

    Entries may be ints, Fractions, GaussianRationals, ``[re, im]`` pairs or
    wire-format strings.
    """

    def __init__(self, matrix: Sequence[Sequence]):
        rows = [tuple(to_gaussian(x) for x in row) for row in matrix]
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        q = len(rows[0])
        if any(len(r) != q for r in rows):
            raise ValueError("ragged matrix")
        if q > len(rows):
            raise ValueError("need q <= n")
        if rational_rank(rows) != q:
            raise ValueError(f"matrix does not have rank {q}")
        self.matrix: tuple[tuple[GaussianRational, ...], ...] = tuple(rows)
        self.n = len(rows)
        self.q = q

    @classmethod
    def from_json(cls, data: Mapping | str) -> "GrassmannPoint":
        """Read ``{n, q, entries}``; entries are rows of ``[re, im]`` pairs or strings."""
        if isinstance(data, str):
            data = json.loads(data)
        p = cls(data["entries"])
        if "n" in data and data["n"] != p.n or "q" in data and data["q"] != p.q:
            raise ValueError("declared n, q do not match the entries")
        return p

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "entries": [[[str(z.re), str(z.im)] for z in row] for row in self.matrix],
        }

    def __repr__(self):
        rows = "; ".join(" ".join(str(z) for z in row) for row in self.matrix)
        return f"GrassmannPoint([{rows}])"


@dataclass(frozen=True)
class PlueckerVector:
    """Projective Plücker coordinates, keyed by lexicographic ``q``-subsets.

    The stored representative has its first nonzero coordinate equal to 1,
    so two vectors are projectively equal iff they compare equal.
    """

    n: int
    q: int
    coords: Mapping[tuple[int, ...], GaussianRational]

    def __post_init__(self):
        keys = list(itertools.combinations(range(1, self.n + 1), self.q))
        coords = {J: to_gaussian(self.coords.get(J, 0)) for J in keys}
        lead = next((z for z in coords.values() if z != 0), None)
        if lead is None:
            raise ValueError("Plücker vector is identically zero")
        coords = {J: z / lead for J, z in coords.items()}
        object.__setattr__(self, "coords", coords)

    def __getitem__(self, J) -> GaussianRational:
        if isinstance(J, str):
            J = parse_subset(J)
        return self.coords[tuple(J)]

    def __eq__(self, other):
        if not isinstance(other, PlueckerVector):
            return NotImplemented
        return (self.n, self.q) == (other.n, other.q) and self.coords == other.coords

    def __hash__(self):
        return hash((self.n, self.q, tuple(self.coords.values())))

    def values(self) -> list[GaussianRational]:
        return list(self.coords.values())

    def to_json(self) -> dict:
        return {subset_label(J): [str(z.re), str(z.im)] for J, z in self.coords.items()}

    @classmethod
    def from_json(cls, n: int, q: int, data: Mapping) -> "PlueckerVector":
        return cls(n, q, {parse_subset(k): to_gaussian(v) for k, v in data.items()})


def _minors(p: GrassmannPoint) -> dict[tuple[int, ...], GaussianRational]:
    out = {}
    for J in itertools.combinations(range(1, p.n + 1), p.q):
        out[J] = to_gaussian(determinant([p.matrix[j - 1] for j in J]))
    return out


def pluecker(p: GrassmannPoint) -> PlueckerVector:
    """All maximal minors ``det A_J`` in lexicographic order, canonically scaled."""
    return PlueckerVector(p.n, p.q, _minors(p))


def support(v: PlueckerVector | GrassmannPoint) -> SupportSet:
    """The subsets ``J`` with ``P^J != 0``."""
    if isinstance(v, GrassmannPoint):
        v = pluecker(v)
    return SupportSet(v.n, v.q, frozenset(J for J, z in v.coords.items() if z != 0))


def plucker_relation_check(v: PlueckerVector) -> bool:
    """Three-term relations ``p_ij p_kl - p_ik p_jl + p_il p_jk = 0`` (q = 2 only)."""
    if v.q != 2:
        raise ValueError("three-term relations only cover q = 2; use matrix reconstruction")
    c = v.coords
    for i, j, k, l in itertools.combinations(range(1, v.n + 1), 4):
        if c[i, j] * c[k, l] - c[i, k] * c[j, l] + c[i, l] * c[j, k] != 0:
            return False
    return True


def moment(p: GrassmannPoint | PlueckerVector) -> QPoint:
    """``sum_J |P^J|^2 delta_J / sum_J |P^J|^2`` as an exact rational vector."""
    v = pluecker(p) if isinstance(p, GrassmannPoint) else p
    weights = {J: z.abs_square() for J, z in v.coords.items()}
    total = sum(weights.values())
    x = [Fraction(0)] * v.n
    for J, w in weights.items():
        if w:
            for j in J:
                x[j - 1] += w
    return tuple(c / total for c in x)


@lru_cache(maxsize=None)
def _admissible_polytope(sigma: SupportSet) -> LatticePolytope:
    return convex_hull(delta(J, sigma.n) for J in sigma.members)


def admissible_polytope(sigma: SupportSet) -> LatticePolytope:
    """Hull of ``delta_J`` over ``J`` in the support."""
    return _admissible_polytope(sigma)


@dataclass(frozen=True)
class StabilizerSubtorus:
    """Integer kernel of the weight differences of a support.

    ``kernel`` is a Hermite-normal basis of the cocharacters of T^n that fix
    every point of the stratum; the diagonal (1, ..., 1) always lies in it.
    ``torus_dim`` is the dimension of the torus acting freely on the stratum.
    """

    n: int
    kernel: tuple[tuple[int, ...], ...]
    torus_dim: int

    @property
    def effective_kernel_rank(self) -> int:
        """Rank of the stabilizer inside the effective torus T^n / diagonal."""
        return len(self.kernel) - 1


def _delta_differences(sigma: SupportSet) -> list[list[int]]:
    members = sigma.sorted()
    J0 = members[0]
    d0 = [int(i + 1 in J0) for i in range(sigma.n)]
    return [[int(i + 1 in J) - d0[i] for i in range(sigma.n)] for J in members[1:]]


def stabilizer(sigma: SupportSet) -> StabilizerSubtorus:
    rows = _delta_differences(sigma)
    kernel = integer_kernel(rows, ncols=sigma.n)
    return StabilizerSubtorus(sigma.n, tuple(kernel), sigma.n - len(kernel))


def relation_lattice(sigma: SupportSet) -> list[tuple[int, ...]]:
    """Integer relations ``sum_J m_J delta_J = 0`` among the support's weights.

    Coordinates of each vector follow ``sigma.sorted()``.
    """
    members = sigma.sorted()
    cols = [[int(i + 1 in J) for J in members] for i in range(sigma.n)]
    return integer_kernel(cols, ncols=len(members))


def orbit_equivalent(a: GrassmannPoint, b: GrassmannPoint) -> bool:
    """Do ``a`` and ``b`` lie on one (C*)^n-orbit?

    Writing ``r_J = P^J(b) / P^J(a)`` on the common support, ``b = t.a`` for
    some torus element iff ``prod r_J^{m_J} = 1`` for every integer relation
    ``m`` among the weights ``delta_J``.  Over an algebraically closed field
    this is decisive, so no "unknown" answer arises for Gaussian rationals.
    """
    if (a.n, a.q) != (b.n, b.q):
        return False
    pa, pb = _minors(a), _minors(b)
    sa = frozenset(J for J, z in pa.items() if z != 0)
    sb = frozenset(J for J, z in pb.items() if z != 0)
    if sa != sb:
        return False
    sigma = SupportSet(a.n, a.q, sa)
    members = sigma.sorted()
    ratios = [pb[J] / pa[J] for J in members]
    for m in relation_lattice(sigma):
        value = GaussianRational(1)
        for r, e in zip(ratios, m):
            if e:
                value = value * r**e
        if value != 1:
            return False
    return True


def g42_parameter(p: GrassmannPoint | PlueckerVector) -> GaussianRational:
    """Torus-invariant cross-ratio ``p23 p14 / (p13 p24)`` on the main stratum of G(4,2).

    Takes values in ``C - {0, 1}``; on the family C(c) it equals ``c``.
    """
    v = pluecker(p) if isinstance(p, GrassmannPoint) else p
    if (v.n, v.q) != (4, 2):
        raise ValueError("g42_parameter needs a point of G(4,2)")
    if any(z == 0 for z in v.coords.values()):
        raise ValueError("point not on main stratum")
    c = v.coords
    return c[2, 3] * c[1, 4] / (c[1, 3] * c[2, 4])


def torus_act(p: GrassmannPoint, t: Sequence) -> GrassmannPoint:
    """Row scaling by a diagonal torus element ``t`` in (C*)^n."""
    t = [to_gaussian(x) for x in t]
    if len(t) != p.n or any(x == 0 for x in t):
        raise ValueError("torus element must have n nonzero entries")
    return GrassmannPoint([[ti * z for z in row] for ti, row in zip(t, p.matrix)])


def change_basis(p: GrassmannPoint, g: Sequence[Sequence]) -> GrassmannPoint:
    """Right-multiply by an invertible ``q x q`` matrix (same subspace)."""
    g = [[to_gaussian(x) for x in row] for row in g]
    rows = [
        [sum((row[k] * g[k][c] for k in range(p.q)), GaussianRational(0)) for c in range(p.q)]
        for row in p.matrix
    ]
    return GrassmannPoint(rows)


def family_c(c) -> GrassmannPoint:
    """The one-parameter family ``rows (1,0), (0,1), (c,1), (1,1)`` in G(4,2)."""
    return GrassmannPoint([[1, 0], [0, 1], [c, 1], [1, 1]])


# -- realizability -------------------------------------------------------------


def is_matroid(sigma: SupportSet) -> bool:
    """Basis-exchange axiom for the support viewed as a set of bases."""
    bases = sigma.members
    for B1 in bases:
        for B2 in bases:
            for x in set(B1) - set(B2):
                rest = set(B1) - {x}
                if not any(tuple(sorted(rest | {y})) in bases for y in set(B2) - set(B1)):
                    return False
    return True


@lru_cache(maxsize=None)
def _g42_supports() -> tuple[SupportSet, ...]:
    # Rank-2 matroids are realizable over C, so the G(4,2) strata are exactly
    # the basis systems of rank-2 matroids on four elements.
    subsets = list(itertools.combinations(range(1, 5), 2))
    out = []
    for r in range(1, len(subsets) + 1):
        for combo in itertools.combinations(subsets, r):
            sigma = SupportSet(4, 2, frozenset(combo))
            if is_matroid(sigma):
                out.append(sigma)
    return tuple(sorted(out, key=lambda s: (-len(s), s.sorted())))


@dataclass(frozen=True)
class Realizability:
    status: str  # "yes" | "no" | "unknown"
    witness: GrassmannPoint | None = None
    attempts: int = 0

    def __bool__(self):
        return self.status == "yes"


def _random_entry(rng: random.Random) -> GaussianRational:
    while True:
        z = GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3))
        if z != 0:
            return z


def _chart_candidate(sigma: SupportSet, J0: tuple[int, ...], rng: random.Random) -> GrassmannPoint:
    # In the chart P^{J0} != 0 the entry at (row i, column c) is, up to sign,
    # P^{J0 - J0[c] + i} / P^{J0}; zero it whenever that subset is outside sigma.
    rows = []
    for i in range(1, sigma.n + 1):
        if i in J0:
            rows.append([int(J0[c] == i) for c in range(sigma.q)])
            continue
        row = []
        for c in range(sigma.q):
            nb = tuple(sorted(set(J0) - {J0[c]} | {i}))
            row.append(_random_entry(rng) if nb in sigma else 0)
        rows.append(row)
    return GrassmannPoint(rows)


def realizable(sigma: SupportSet, budget: int = 200, rng: random.Random | int | None = 0) -> Realizability:
    """Is there a point of G(n, q) whose Plücker support is exactly ``sigma``?

    ``yes`` comes with an exactly verified witness.  ``no`` is only returned
    for G(4,2), where the stratum catalog is complete.  Otherwise the answer
    is ``unknown`` after ``budget`` randomized chart-normalized attempts.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    if (sigma.n, sigma.q) == (4, 2) and sigma not in _g42_supports():
        return Realizability("no")
    charts = sigma.sorted()
    for attempt in range(budget):
        J0 = charts[attempt % len(charts)]
        cand = _chart_candidate(sigma, J0, rng)
        if support(cand) == sigma:
            return Realizability("yes", cand, attempt + 1)
    return Realizability("unknown", None, budget)


# -- strata --------------------------------------------------------------------


@dataclass(frozen=True)
class Stratum:
    support: SupportSet
    polytope: LatticePolytope
    stabilizer_kernel: tuple[tuple[int, ...], ...]
    torus_dim: int
    parameter_descriptor: str = "unknown"

    def to_dict(self) -> dict:
        return {
            "support": [subset_label(J) for J in self.support.sorted()],
            "polytope": self.polytope.to_dict(),
            "stabilizer_kernel": [list(v) for v in self.stabilizer_kernel],
            "torus_dim": self.torus_dim,
            "parameter": self.parameter_descriptor,
        }


def _parameter_descriptor(sigma: SupportSet) -> str:
    if (sigma.n, sigma.q) == (4, 2):
        return "curve(C-{0,1})" if len(sigma) == 6 else "point"
    if not relation_lattice(sigma):
        # no multiplicative relations: every point with this support is on one orbit
        return "point"
    return "unknown"


def stratum(sigma: SupportSet | GrassmannPoint) -> Stratum:
    if isinstance(sigma, GrassmannPoint):
        sigma = support(sigma)
    stab = stabilizer(sigma)
    return Stratum(
        support=sigma,
        polytope=admissible_polytope(sigma),
        stabilizer_kernel=stab.kernel,
        torus_dim=stab.torus_dim,
        parameter_descriptor=_parameter_descriptor(sigma),
    )


def g42_catalog() -> list[SupportSet]:
    """All 36 strata of G(4,2): octahedron, 6 pyramids, 3 squares, and the faces."""
    return list(_g42_supports())


def g42_family():
    """The admissible family of G(4,2) as an :class:`AdmissibleFamily`."""
    from .complex import AdmissibleFamily

    members = {s.label: admissible_polytope(s) for s in _g42_supports()}
    base = admissible_polytope(SupportSet.full(4, 2))
    return AdmissibleFamily(base, members, name="g42")
