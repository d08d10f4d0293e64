"""Exact convex polytopes over the rationals.

A polytope is stored by its vertex list (sorted lexicographically, so vertex
indices are canonical), its affine dimension, an H-description relative to its
affine hull, and its full face lattice.  Faces are identified by sorted tuples
of vertex indices.

Hulls are computed by exhaustive facet search: every affinely independent
subset of ``dim`` points spanning a supporting hyperplane gives a facet.  That
is plenty for the polytopes that come up here (a few dozen points in
dimension at most five or so) and keeps every step exact.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from math import comb
from typing import Iterable, Literal, Sequence

from .exact import rational_nullspace, rational_rank, row_echelon, to_fraction

__all__ = [
    "QPoint",
    "FaceId",
    "LatticePolytope",
    "qpoint",
    "convex_hull",
    "hypersimplex",
    "permutahedron",
    "minkowski_sum",
    "simplex",
    "cube",
    "contains",
    "faces",
    "face_polytope",
    "affine_rank",
    "centroid",
    "delta",
]

QPoint = tuple  # tuple of Fraction
FaceId = tuple  # sorted tuple of vertex indices


def qpoint(coords: Iterable) -> QPoint:
    """Build a point from ints, Fractions or ``"p/q"`` strings."""
    if isinstance(coords, str):
        coords = coords.split(",")
    return tuple(to_fraction(c) for c in coords)


def delta(J: Iterable[int], n: int) -> QPoint:
    """0/1 indicator vector of the 1-based index set ``J`` in ``R^n``."""
    J = set(J)
    return tuple(Fraction(int(i + 1 in J)) for i in range(n))


def affine_rank(points: Sequence[QPoint]) -> int:
    """Affine dimension of a finite point set (``-1`` for the empty set)."""
    if not points:
        return -1
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    diffs = [d for d in diffs if any(d)]
    return rational_rank(diffs) if diffs else 0


def centroid(points: Sequence[QPoint]) -> QPoint:
    n = len(points)
    return tuple(sum(c) / n for c in zip(*points))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


class LatticePolytope:
    """Convex hull of finitely many rational points.

    Use :func:`convex_hull` (or one of the named constructors) rather than
    instantiating directly.  Instances are immutable; equality and hashing go
    through the vertex set.
    """

    def __init__(self, points: Iterable[Sequence]):
        pts = sorted({qpoint(p) for p in points})
        if not pts:
            raise ValueError("empty hull")
        amb = len(pts[0])
        if any(len(p) != amb for p in pts):
            raise ValueError("inconsistent ambient dimension")
        self.ambient_dim = amb
        self._build(pts)

    # -- construction -------------------------------------------------------

    def _build(self, pts: list[QPoint]) -> None:
        p0 = pts[0]
        diffs = [[a - b for a, b in zip(p, p0)] for p in pts[1:]]
        nz = [d for d in diffs if any(d)]
        if nz:
            _, pivots = row_echelon(nz)
        else:
            pivots = []
        d = len(pivots)
        self.dim = d
        self._base = p0
        self._pivots = tuple(pivots)
        # equations n.(x - p0) = 0 cutting out the affine hull
        if self.ambient_dim == 0:
            self._equations = []
        elif nz:
            self._equations = rational_nullspace(nz)
        else:
            self._equations = rational_nullspace([], self.ambient_dim)

        proj = [self._project(p) for p in pts]
        facet_sets, inequalities = _facets(proj, d)

        if d == 0:
            vert_idx = [0]
        else:
            vert_idx = []
            for j in range(len(pts)):
                containing = [f for f in facet_sets if j in f]
                if containing and frozenset.intersection(*containing) == {j}:
                    vert_idx.append(j)
        self.vertices: tuple[QPoint, ...] = tuple(pts[j] for j in vert_idx)
        remap = {j: i for i, j in enumerate(vert_idx)}
        self._inequalities = inequalities  # (normal, offset): normal.y <= offset

        facets_v = {frozenset(remap[j] for j in f if j in remap) for f in facet_sets}
        lattice: set[frozenset] = set(facets_v)
        frontier = set(facets_v)
        while frontier:
            new = set()
            for a in frontier:
                for b in facets_v:
                    c = a & b
                    if c and c not in lattice:
                        new.add(c)
            lattice |= new
            frontier = new
        lattice.add(frozenset(range(len(self.vertices))))
        by_dim: dict[int, list[FaceId]] = {k: [] for k in range(d + 1)}
        for f in lattice:
            fid = tuple(sorted(f))
            by_dim[affine_rank([self.vertices[i] for i in fid])].append(fid)
        self.faces_by_dim = {k: tuple(sorted(v)) for k, v in by_dim.items()}

    def _project(self, x: QPoint) -> tuple:
        return tuple(x[c] - self._base[c] for c in self._pivots)

    # -- queries --------------------------------------------------------------

    def in_affine_hull(self, x: QPoint) -> bool:
        if len(x) != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        diff = [a - b for a, b in zip(x, self._base)]
        return all(_dot(e, diff) == 0 for e in self._equations)

    def contains(self, x: Sequence, mode: Literal["interior", "closed"] = "closed") -> bool:
        x = qpoint(x)
        if not self.in_affine_hull(x):
            return False
        if self.dim == 0:
            return True
        y = self._project(x)
        if mode == "closed":
            return all(_dot(a, y) <= b for a, b in self._inequalities)
        if mode == "interior":
            return all(_dot(a, y) < b for a, b in self._inequalities)
        raise ValueError(f"unknown mode {mode!r}")

    def faces(self, d: int) -> tuple[FaceId, ...]:
        if not 0 <= d <= self.dim:
            raise ValueError(f"face dimension {d} out of range 0..{self.dim}")
        return self.faces_by_dim[d]

    @property
    def facets(self) -> tuple[FaceId, ...]:
        return self.faces(self.dim - 1) if self.dim > 0 else ()

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces_by_dim[k]) for k in range(self.dim + 1))

    def all_faces(self) -> list[FaceId]:
        return [f for k in range(self.dim + 1) for f in self.faces_by_dim[k]]

    def face_vertices(self, face: FaceId) -> tuple[QPoint, ...]:
        return tuple(self.vertices[i] for i in face)

    def is_face(self, other: "LatticePolytope") -> bool:
        """True when ``other`` is a (nonempty) face of this polytope."""
        try:
            idx = tuple(sorted(self.vertices.index(v) for v in other.vertices))
        except ValueError:
            return False
        return idx in self.faces_by_dim.get(other.dim, ())

    def is_simple(self) -> bool:
        return all(
            sum(1 for f in self.facets if v in f) == self.dim
            for v in range(len(self.vertices))
        )

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def __eq__(self, other):
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return (
            f"LatticePolytope(dim={self.dim}, vertices={len(self.vertices)}, "
            f"f={self.f_vector()})"
        )

    # -- export ---------------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "vertices": [[str(c) for c in v] for v in self.vertices],
            "dim": self.dim,
            "faces_by_dim": {str(k): [list(f) for f in v] for k, v in self.faces_by_dim.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_off(self) -> str:
        """OFF-style text: counts line, vertex rows, then facet vertex lists."""
        facets = self.facets
        lines = ["OFF", f"{len(self.vertices)} {len(facets)} {len(self.faces_by_dim.get(1, ())) if self.dim > 1 else 0}"]
        lines += [" ".join(str(c) for c in v) for v in self.vertices]
        lines += [" ".join(str(x) for x in (len(f),) + f) for f in facets]
        return "\n".join(lines) + "\n"


def _facets(proj: list[tuple], d: int):
    """Exhaustive facet search on full-dimensional projected points."""
    m = len(proj)
    if d == 0:
        return [], []
    if d == 1:
        xs = [p[0] for p in proj]
        lo, hi = min(xs), max(xs)
        sets = [frozenset(j for j in range(m) if xs[j] == lo),
                frozenset(j for j in range(m) if xs[j] == hi)]
        ineqs = [((Fraction(-1),), -lo), ((Fraction(1),), hi)]
        return sets, ineqs
    found: list[frozenset] = []
    ineqs = []
    for combo in itertools.combinations(range(m), d):
        cs = set(combo)
        if any(cs <= f for f in found):
            continue
        base = proj[combo[0]]
        rows = [[a - b for a, b in zip(proj[j], base)] for j in combo[1:]]
        if rational_rank(rows) != d - 1:
            continue
        normal = rational_nullspace(rows)[0]
        offset = _dot(normal, base)
        vals = [_dot(normal, p) - offset for p in proj]
        if all(v <= 0 for v in vals):
            pass
        elif all(v >= 0 for v in vals):
            normal = [-a for a in normal]
            offset = -offset
        else:
            continue
        f = frozenset(j for j in range(m) if vals[j] == 0)
        found.append(f)
        ineqs.append((tuple(normal), offset))
    return found, ineqs


# -- constructors -------------------------------------------------------------


def convex_hull(points: Iterable[Sequence]) -> LatticePolytope:
    """Exact convex hull; raises ``ValueError("empty hull")`` for no points."""
    return LatticePolytope(points)


def hypersimplex(n: int, q: int) -> LatticePolytope:
    """Hull of the 0/1 vectors in ``R^n`` with exactly ``q`` ones."""
    if not 1 <= q <= n - 1:
        raise ValueError(f"hypersimplex needs 1 <= q <= n-1, got n={n}, q={q}")
    pts = [delta(J, n) for J in itertools.combinations(range(1, n + 1), q)]
    assert len(pts) == comb(n, q)
    return convex_hull(pts)


def permutahedron(n: int) -> LatticePolytope:
    """Hull of all permutations of ``(0, 1, ..., n-1)``."""
    if n < 2:
        raise ValueError("permutahedron needs n >= 2")
    return convex_hull(itertools.permutations(range(n)))


def simplex(n: int) -> LatticePolytope:
    """Standard ``n``-simplex: the origin and the unit vectors of ``R^n``."""
    pts = [tuple([0] * n)] + [tuple(int(i == j) for i in range(n)) for j in range(n)]
    return convex_hull(pts)


def cube(n: int) -> LatticePolytope:
    return convex_hull(itertools.product((0, 1), repeat=n))


def minkowski_sum(p: LatticePolytope, q: LatticePolytope) -> LatticePolytope:
    if p.ambient_dim != q.ambient_dim:
        raise ValueError("dimension mismatch in Minkowski sum")
    return convex_hull(tuple(a + b for a, b in zip(u, v)) for u in p.vertices for v in q.vertices)


def contains(p: LatticePolytope, x: Sequence, mode: Literal["interior", "closed"] = "closed") -> bool:
    """Exact membership; ``interior`` means the relative interior."""
    return p.contains(x, mode)


def faces(p: LatticePolytope, d: int) -> tuple[FaceId, ...]:
    return p.faces(d)


def face_polytope(p: LatticePolytope, face: FaceId) -> LatticePolytope:
    return convex_hull(p.face_vertices(face))
