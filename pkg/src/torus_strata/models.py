"""Concrete torus manifolds and their orbit-space models.

Covered here: even spheres with a circle action, quasitoric manifolds given
by a characteristic pair, the flag manifold F3 in its chart M_{1,12}, the
projective space CP^5 with the T^4 action through the Plücker weights, and
G(4,2) (whose strata live in :mod:`torus_strata.grassmann`).  Each produces an
:class:`~torus_strata.complex.AdmissibleFamily`; :func:`join_model_check`
certifies the hypotheses under which the orbit space is a join.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .complex import (
    AdmissibleFamily,
    StratumModel,
    random_relative_interior_point,
)
from .exact import GaussianRational, determinant, to_fraction, to_gaussian
from .grassmann import (
    GrassmannPoint,
    SupportSet,
    admissible_polytope,
    g42_family,
    g42_parameter,
    moment,
    orbit_equivalent,
    pluecker,
    subset_label,
    torus_act,
)
from .polytope import LatticePolytope, QPoint, centroid, convex_hull, cube, delta, hypersimplex, qpoint

__all__ = [
    "SphereModel",
    "SphereClass",
    "QuasitoricModel",
    "QuasitoricCheck",
    "FlagChartPoint",
    "F3Class",
    "OrbitSpaceModel",
    "ParameterCatalogEntry",
    "cp",
    "sphere_classify",
    "sphere_point",
    "sphere_family",
    "sphere_orbit_model",
    "quasitoric_validate",
    "quasitoric_family",
    "cp2_pair",
    "hirzebruch_pair",
    "cube_pair",
    "f3_classify",
    "f3_moment",
    "f3_flag_matrix",
    "f3_torus_act",
    "flag_moment",
    "flag_admissible_polytope",
    "f3_family",
    "cp5_family",
    "family_by_id",
    "join_model_check",
    "parameter_catalog",
    "lookup_parameter_space",
    "unit_gaussian",
    "g42_stratum_model",
    "vertex_stratum_model",
    "sphere_stratum_model",
]


def cp(m: int) -> str:
    """Fiber descriptor for complex projective space of dimension ``m``."""
    return f"CP^{m}"


def unit_gaussian(rng: random.Random) -> GaussianRational:
    """Random rational point on the unit circle, ``((a^2-b^2) + 2ab i)/(a^2+b^2)``."""
    while True:
        a, b = rng.randint(-6, 6), rng.randint(-6, 6)
        if a or b:
            n = a * a + b * b
            return GaussianRational(Fraction(a * a - b * b, n), Fraction(2 * a * b, n))


def _nonzero_gaussian(rng: random.Random, bound: int = 3) -> GaussianRational:
    while True:
        z = GaussianRational(rng.randint(-bound, bound), rng.randint(-bound, bound))
        if z:
            return z


# -- orbit-space descriptors ---------------------------------------------------


@dataclass(frozen=True)
class OrbitSpaceModel:
    """Homeomorphism type of an orbit space, as a symbolic descriptor.

    ``kind`` is ``"join"`` (``S^sphere_dim * fiber``), ``"quotient"``
    (base x fiber modulo the boundary identifications) or ``"polytope"``.
    """

    kind: str
    fiber: str
    sphere_dim: int | None = None
    base: str | None = None
    checks: Mapping = field(default_factory=dict, compare=False)

    def __str__(self):
        if self.kind == "join":
            return f"join(S^{self.sphere_dim}, {self.fiber})"
        if self.kind == "quotient":
            return f"quotient({self.base} x {self.fiber})"
        return f"polytope({self.base})"

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "sphere_dim": self.sphere_dim, "fiber": self.fiber, "model": str(self)}
        if self.base is not None:
            out["base"] = self.base
        if self.checks:
            out["checks"] = dict(self.checks)
        return out


# -- spheres ---------------------------------------------------------------------


@dataclass(frozen=True)
class SphereModel:
    """``S^{2n}`` in ``C^n x R`` with ``t.(z, r) = (t^{eps_1} z_1, ..., r)``."""

    n: int
    epsilon: tuple[int, ...] = ()

    def __post_init__(self):
        eps = tuple(self.epsilon) or (1,) * self.n
        if len(eps) != self.n or any(e not in (1, -1) for e in eps):
            raise ValueError("epsilon must be n weights, each +1 or -1")
        object.__setattr__(self, "epsilon", eps)


@dataclass(frozen=True)
class SphereClass:
    label: str  # "fixed+" | "fixed-" | "main"
    moment: Fraction


def sphere_classify(model: SphereModel, z: Sequence, r) -> SphereClass:
    z = [to_gaussian(x) for x in z]
    r = to_fraction(r)
    if len(z) != model.n:
        raise ValueError("wrong number of complex coordinates")
    if sum((x.abs_square() for x in z), Fraction(0)) + r * r != 1:
        raise ValueError("point not on sphere")
    if all(x == 0 for x in z):
        return SphereClass("fixed+" if r == 1 else "fixed-", r)
    return SphereClass("main", r)


def sphere_point(w: Sequence[int | Fraction], n: int) -> tuple[tuple[GaussianRational, ...], Fraction]:
    """Inverse stereographic image of a rational vector ``w`` in ``R^{2n}``.

    Gives exact rational points ``(z, r)`` with ``|z|^2 + r^2 = 1``.
    """
    w = [to_fraction(x) for x in w]
    if len(w) != 2 * n:
        raise ValueError("need 2n real coordinates")
    s = sum(x * x for x in w)
    z = tuple(GaussianRational(2 * w[2 * i] / (1 + s), 2 * w[2 * i + 1] / (1 + s)) for i in range(n))
    return z, (s - 1) / (1 + s)


def sphere_family() -> AdmissibleFamily:
    """The two fixed points and the segment ``[-1, 1]``."""
    seg = convex_hull([(-1,), (1,)])
    members = {"{-1}": convex_hull([(-1,)]), "{1}": convex_hull([(1,)]), "[-1,1]": seg}
    return AdmissibleFamily(seg, members, name="sphere")


def sphere_orbit_model(model: SphereModel) -> OrbitSpaceModel:
    return OrbitSpaceModel("join", cp(model.n - 1), sphere_dim=0)


# -- quasitoric manifolds ---------------------------------------------------------


@dataclass(frozen=True)
class QuasitoricModel:
    """Characteristic pair: a simple polytope and one integer vector per facet.

    ``facets`` lists each facet as a tuple of vertex indices into
    ``polytope.vertices``; ``lam[i]`` is the vector assigned to ``facets[i]``.
    """

    polytope: LatticePolytope
    facets: tuple[tuple[int, ...], ...]
    lam: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.facets) != len(self.lam):
            raise ValueError("need one characteristic vector per facet")
        if sorted(tuple(sorted(f)) for f in self.facets) != sorted(self.polytope.facets):
            raise ValueError("facet list does not match the polytope's facets")
        if any(len(v) != self.polytope.dim for v in self.lam):
            raise ValueError("characteristic vectors must live in Z^dim")

    @classmethod
    def from_json(cls, data: Mapping | str) -> "QuasitoricModel":
        """Read ``{"vertices": [...], "facets": [[vertex indices]], "lambda": [[ints]]}``."""
        if isinstance(data, str):
            data = json.loads(data)
        given = [qpoint(v) for v in data["vertices"]]
        poly = convex_hull(given)
        index = {v: i for i, v in enumerate(poly.vertices)}
        facets = tuple(tuple(sorted(index[given[j]] for j in f)) for f in data["facets"])
        lam = tuple(tuple(int(x) for x in v) for v in data["lambda"])
        return cls(poly, facets, lam)

    def to_json(self) -> dict:
        return {
            "vertices": [[str(c) for c in v] for v in self.polytope.vertices],
            "facets": [list(f) for f in self.facets],
            "lambda": [list(v) for v in self.lam],
        }


@dataclass(frozen=True)
class QuasitoricCheck:
    ok: bool
    vertex: QPoint | None = None
    facets: tuple[int, ...] = ()
    det: int | None = None

    def __bool__(self):
        return self.ok


def quasitoric_validate(model: QuasitoricModel) -> QuasitoricCheck:
    """At every vertex the characteristic vectors of its facets form a basis of Z^n.

    Returns the first failing vertex (ordered by its facet indices) as witness.
    """
    poly = model.polytope
    if not poly.is_simple():
        raise ValueError("polytope is not simple")
    corners = []
    for v in range(len(poly.vertices)):
        idx = tuple(i for i, f in enumerate(model.facets) if v in f)
        corners.append((idx, v))
    for idx, v in sorted(corners):
        det = determinant([model.lam[i] for i in idx])
        if abs(det) != 1:
            return QuasitoricCheck(False, poly.vertices[v], idx, int(det))
    return QuasitoricCheck(True)


def _pair(points, facet_points, lam) -> QuasitoricModel:
    poly = convex_hull(points)
    index = {v: i for i, v in enumerate(poly.vertices)}
    facets = tuple(tuple(sorted(index[qpoint(p)] for p in f)) for f in facet_points)
    return QuasitoricModel(poly, facets, tuple(tuple(v) for v in lam))


def cp2_pair(lam=((1, 0), (0, 1), (1, 1))) -> QuasitoricModel:
    """Triangle with facets x=0, y=0, x+y=1 (CP^2 for the default vectors)."""
    return _pair(
        [(0, 0), (1, 0), (0, 1)],
        [[(0, 0), (0, 1)], [(0, 0), (1, 0)], [(1, 0), (0, 1)]],
        lam,
    )


def hirzebruch_pair(k: int) -> QuasitoricModel:
    """Unit square with facets x=0, y=0, x=1, y=1 and vectors (1,0), (0,1), (-1,k), (0,-1)."""
    return _pair(
        [(0, 0), (1, 0), (1, 1), (0, 1)],
        [[(0, 0), (0, 1)], [(0, 0), (1, 0)], [(1, 0), (1, 1)], [(0, 1), (1, 1)]],
        [(1, 0), (0, 1), (-1, k), (0, -1)],
    )


def cube_pair(n: int = 3) -> QuasitoricModel:
    """``(CP^1)^n`` over the n-cube: facets x_i = 0 and x_i = 1 both get e_i."""
    poly = cube(n)
    facets, lam = [], []
    for i in range(n):
        for side in (0, 1):
            facets.append(tuple(j for j, v in enumerate(poly.vertices) if v[i] == side))
            lam.append(tuple(int(c == i) for c in range(n)))
    return QuasitoricModel(poly, tuple(facets), tuple(lam))


def _vertex_label(v: QPoint) -> str:
    return "(" + ",".join(str(c) for c in v) + ")"


def _face_family(base: LatticePolytope, name: str, labeller=None) -> AdmissibleFamily:
    labeller = labeller or (lambda verts: "{" + ";".join(_vertex_label(v) for v in verts) + "}")
    members = {}
    for f in base.all_faces():
        verts = base.face_vertices(f)
        members[labeller(verts)] = convex_hull(verts)
    return AdmissibleFamily(base, members, name=name)


def quasitoric_family(model: QuasitoricModel) -> AdmissibleFamily:
    """The polytope and all its faces: the only admissible polytopes of a quasitoric manifold."""
    check = quasitoric_validate(model)
    if not check:
        raise ValueError(f"invalid characteristic pair at vertex {check.vertex}")
    return _face_family(model.polytope, "quasitoric")


# -- the flag manifold F3 ------------------------------------------------------------


@dataclass(frozen=True)
class FlagChartPoint:
    """Chart coordinates of a flag in M_{1,12}: matrix rows (1,0), (a1,1), (a2,a3)."""

    a1: GaussianRational
    a2: GaussianRational
    a3: GaussianRational

    def __init__(self, a1, a2, a3):
        object.__setattr__(self, "a1", to_gaussian(a1))
        object.__setattr__(self, "a2", to_gaussian(a2))
        object.__setattr__(self, "a3", to_gaussian(a3))


@dataclass(frozen=True)
class F3Class:
    orbit_class: int
    parameter: GaussianRational | None


def f3_classify(p: FlagChartPoint) -> F3Class:
    """Orbit type of a chart point under ``(t1, t2).(a1, a2, a3) = (t1 a1, t2 a2, t2/t1 a3)``.

    The torus invariant on the main stratum is ``a1 a3 / a2``.
    """
    a = (p.a1, p.a2, p.a3)
    zeros = sum(1 for x in a if x == 0)
    if zeros == 0:
        kappa = p.a1 * p.a3 / p.a2
        return F3Class(2 if kappa == 1 else 1, kappa)
    return F3Class(2 + zeros, None)


def f3_flag_matrix(p: FlagChartPoint) -> list[list[GaussianRational]]:
    """Columns span L1 (first) and L2 (both)."""
    one, zero = GaussianRational(1), GaussianRational(0)
    return [[one, zero], [p.a1, one], [p.a2, p.a3]]


def flag_moment(matrix: Sequence[Sequence]) -> QPoint:
    """Sum of Grassmannian moments of ``L_i = span(first i columns)``."""
    n = len(matrix)
    cols = len(matrix[0])
    total = [Fraction(0)] * n
    for i in range(1, cols + 1):
        m = moment(GrassmannPoint([row[:i] for row in matrix]))
        total = [a + b for a, b in zip(total, m)]
    return tuple(total)


def f3_moment(p: FlagChartPoint) -> QPoint:
    return flag_moment(f3_flag_matrix(p))


def f3_torus_act(p: FlagChartPoint, t1, t2) -> FlagChartPoint:
    t1, t2 = to_gaussian(t1), to_gaussian(t2)
    return FlagChartPoint(t1 * p.a1, t2 * p.a2, t2 / t1 * p.a3)


def _flag_fixed_points(matrix: Sequence[Sequence]) -> list[tuple[int, ...]]:
    """Permutations ``w`` whose chart contains the flag: P^{w1}(L1) != 0 and P^{w1 w2..}(L_i) != 0."""
    n = len(matrix)
    cols = len(matrix[0])
    minors = []
    for i in range(1, cols + 1):
        v = pluecker(GrassmannPoint([row[:i] for row in matrix]))
        minors.append({J for J, z in v.coords.items() if z != 0})
    out = []
    for w in itertools.permutations(range(1, n + 1)):
        if all(tuple(sorted(w[:i])) in minors[i - 1] for i in range(1, cols + 1)):
            out.append(w)
    return out


def _flag_vertex(w: Sequence[int], n: int) -> QPoint:
    x = [Fraction(0)] * n
    for i in range(1, n):
        for j in w[:i]:
            x[j - 1] += 1
    return tuple(x)


def flag_admissible_polytope(matrix: Sequence[Sequence]) -> LatticePolytope:
    """Hull of the fixed-point images over the charts containing the flag."""
    n = len(matrix)
    return convex_hull(_flag_vertex(w, n) for w in _flag_fixed_points(matrix))


def _perm_label(verts) -> str:
    return "{" + ",".join("".join(str(c) for c in v) for v in sorted(verts)) + "}"


def f3_family() -> AdmissibleFamily:
    """Hexagon, its faces, the six trapezoids on four consecutive vertices, and the long diagonals."""
    hexagon = convex_hull(itertools.permutations((0, 1, 2)))
    # hexagon vertices in cyclic order
    cyc = [qpoint(v) for v in [(2, 1, 0), (2, 0, 1), (1, 0, 2), (0, 1, 2), (0, 2, 1), (1, 2, 0)]]
    members = {}
    for f in hexagon.all_faces():
        verts = hexagon.face_vertices(f)
        members[_perm_label(verts)] = convex_hull(verts)
    for i in range(6):
        quad = [cyc[(i + j) % 6] for j in range(4)]
        members[_perm_label(quad)] = convex_hull(quad)
    for i in range(3):
        diag = [cyc[i], cyc[i + 3]]
        members[_perm_label(diag)] = convex_hull(diag)
    return AdmissibleFamily(hexagon, members, name="f3")


# -- CP^5 ----------------------------------------------------------------------------


def cp5_family() -> AdmissibleFamily:
    """CP^5 with T^4 acting through the weights delta_J, |J| = 2.

    The strata of a diagonal torus action on projective space are the
    coordinate supports, so every nonempty set of octahedron vertices spans an
    admissible polytope.
    """
    subsets = list(itertools.combinations(range(1, 5), 2))
    members = {}
    for r in range(1, 7):
        for combo in itertools.combinations(subsets, r):
            members["{" + ",".join(subset_label(J) for J in combo) + "}"] = convex_hull(
                delta(J, 4) for J in combo
            )
    return AdmissibleFamily(hypersimplex(4, 2), members, name="cp5")


def family_by_id(family_id: str) -> AdmissibleFamily:
    """Resolve ``g42``, ``cp5``, ``f3``, ``sphere`` / ``sphere:n`` and ``quasitoric:FILE``."""
    if family_id == "g42":
        return g42_family()
    if family_id == "cp5":
        return cp5_family()
    if family_id == "f3":
        return f3_family()
    if family_id == "sphere" or family_id.startswith("sphere:"):
        return sphere_family()
    if family_id.startswith("quasitoric:"):
        with open(family_id.split(":", 1)[1]) as fh:
            return quasitoric_family(QuasitoricModel.from_json(fh.read()))
    raise KeyError(f"unknown family id {family_id!r}")


# -- join theorem ---------------------------------------------------------------------


def _interior_count(family: AdmissibleFamily, x: QPoint, limit: int = 2) -> int:
    count = 0
    for poly in family.members.values():
        if poly.contains(x, "interior"):
            count += 1
            if count >= limit:
                break
    return count


def join_model_check(
    family: AdmissibleFamily,
    fiber: str,
    face_fibers: Mapping[str, str] | None = None,
    samples_per_face: int = 25,
    rng: random.Random | int | None = 0,
) -> OrbitSpaceModel:
    """Verify the join hypotheses and emit the orbit-space model.

    (a) every boundary point of the base is simple, tested at the barycenter
    and ``samples_per_face`` random relative-interior points of each proper
    face; (b) the fiber over every proper face is a point.  On success the
    model is ``join(S^{k-1}, fiber)``; otherwise the quotient descriptor.
    """
    family.check()
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    base = family.base
    face_fibers = dict(face_fibers or {})
    proper = []
    for f in base.all_faces():
        if len(f) == len(base.vertices):
            continue
        label = family.label_of(base.face_vertices(f))
        proper.append((label, family.members[label]))
    tested = 0
    exceptional = []
    for label, poly in proper:
        pts = [centroid(poly.vertices)]
        pts += [random_relative_interior_point(poly, rng) for _ in range(samples_per_face)]
        for x in pts:
            tested += 1
            if _interior_count(family, x) != 1:
                exceptional.append(label)
                break
    bad_fibers = sorted(label for label, _ in proper if face_fibers.get(label, "point") != "point")
    checks = {
        "boundary_points_tested": tested,
        "proper_faces": len(proper),
        "exceptional_faces": sorted(exceptional),
        "non_point_face_fibers": bad_fibers,
        "violations": len(exceptional) + len(bad_fibers),
    }
    if not exceptional and not bad_fibers:
        return OrbitSpaceModel("join", fiber, sphere_dim=family.k - 1, base=family.name, checks=checks)
    return OrbitSpaceModel("quotient", fiber, base=family.name or "P", checks=checks)


# -- universal spaces of parameters ---------------------------------------------------


@dataclass(frozen=True)
class ParameterCatalogEntry:
    manifold: str
    universal_space: str
    note: str


_CATALOG = {
    "g42": ParameterCatalogEntry("G(4,2)", "CP^1", "compactifies the main-stratum parameter space C - {0,1}"),
    "cp5": ParameterCatalogEntry("CP^5", "CP^2", "compactifies {(c1, c2) : c1 c2 != 0}"),
    "f3": ParameterCatalogEntry("F3", "CP^1", "parameter c = a1 a3 / a2 extended by 0, 1 and infinity"),
    "g52": ParameterCatalogEntry("G(5,2)", "blow-up of CP^2 at four points", "virtual parameter spaces exceed the actual ones"),
}


def parameter_catalog() -> list[ParameterCatalogEntry]:
    return list(_CATALOG.values())


def lookup_parameter_space(manifold_id: str) -> ParameterCatalogEntry | None:
    key = manifold_id.lower().replace("_", "").replace("(", "").replace(")", "").replace(",", "")
    key = {"g42": "g42", "cp5": "cp5", "f3": "f3", "g52": "g52"}.get(key, key)
    return _CATALOG.get(key)


# -- sampling models for the local-product check ---------------------------------------


def _random_g42_main(rng: random.Random) -> GrassmannPoint:
    while True:
        m = [[_nonzero_gaussian(rng) for _ in range(2)] for _ in range(4)]
        try:
            p = GrassmannPoint(m)
        except ValueError:
            continue
        if all(z != 0 for z in pluecker(p).values()):
            return p


def _random_basis_change(p: GrassmannPoint, rng: random.Random) -> GrassmannPoint:
    from .grassmann import change_basis

    while True:
        g = [[_nonzero_gaussian(rng) for _ in range(p.q)] for _ in range(p.q)]
        if determinant(g) != 0:
            return change_basis(p, g)


def g42_stratum_model() -> StratumModel:
    """Main stratum of G(4,2) with the cross-ratio as fiber invariant."""
    return StratumModel(
        name="g42-main",
        sample=_random_g42_main,
        moment=moment,
        act=lambda p, rng: _random_basis_change(torus_act(p, [_nonzero_gaussian(rng) for _ in range(4)]), rng),
        compact_act=lambda p, rng: _random_basis_change(torus_act(p, [unit_gaussian(rng) for _ in range(4)]), rng),
        same_leaf=orbit_equivalent,
        fiber_invariant=g42_parameter,
    )


def vertex_stratum_model(J: Sequence[int] = (1, 2)) -> StratumModel:
    """A fixed point of G(4,2): the fiber is a point, so every check is vacuous."""
    rows = [[1, 0] if i == J[0] else [0, 1] if i == J[1] else [0, 0] for i in range(1, 5)]
    fixed = GrassmannPoint(rows)
    return StratumModel(
        name=f"g42-vertex-{subset_label(J)}",
        sample=lambda rng: fixed,
        moment=moment,
        act=lambda p, rng: torus_act(p, [_nonzero_gaussian(rng) for _ in range(4)]),
        compact_act=lambda p, rng: torus_act(p, [unit_gaussian(rng) for _ in range(4)]),
        same_leaf=orbit_equivalent,
        fiber_invariant=lambda p: "point",
    )


def _projective_class(v: Sequence[GaussianRational]) -> tuple:
    lead = next(x for x in v if x != 0)
    return tuple(x / lead for x in v)


def sphere_stratum_model(model: SphereModel) -> StratumModel:
    """Main stratum of ``S^{2n}``; the fiber invariant is the class in CP^{n-1}.

    Coordinates with weight -1 are conjugated first so that the circle acts
    by a common scalar and the projective class is invariant.
    """
    eps = model.epsilon

    def twisted(p):
        z, _ = p
        return [x if e == 1 else x.conjugate() for x, e in zip(z, eps)]

    def sample(rng):
        while True:
            z, r = sphere_point([rng.randint(-4, 4) for _ in range(2 * model.n)], model.n)
            if any(x != 0 for x in z):
                return z, r

    def act(p, rng):
        z, r = p
        t = unit_gaussian(rng)
        return tuple(x * t**e for x, e in zip(z, eps)), r

    def same_leaf(a, b):
        # leaf = circle orbit times (-1, 1): compare the twisted directions up to any scalar
        wa, wb = twisted(a), twisted(b)
        i = next(j for j, x in enumerate(wa) if x != 0)
        if wb[i] == 0:
            return False
        lam = wb[i] / wa[i]
        return all(y == lam * x for x, y in zip(wa, wb))

    return StratumModel(
        name=f"sphere-{model.n}",
        sample=sample,
        moment=lambda p: (p[1],),
        act=act,
        compact_act=act,
        same_leaf=same_leaf,
        fiber_invariant=lambda p: _projective_class(twisted(p)),
    )
