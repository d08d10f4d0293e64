"""Families of admissible polytopes and the complex built from them.

The complex is the formal disjoint union of the admissible polytopes, one
labelled cell per member, with the canonical projection back to the base
polytope.  Both topologies on it are carried combinatorially: the CW topology
by each cell's face lattice, the quotient topology by a specialization order
generated from model-supplied closure data.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Sequence

from .polytope import LatticePolytope, QPoint, convex_hull, qpoint

__all__ = [
    "FaceClosureError",
    "AdmissibleFamily",
    "Cell",
    "Complex",
    "Cortege",
    "TopologyReport",
    "SpecializationOrder",
    "StratumModel",
    "CheckResult",
    "build_complex",
    "cortege",
    "is_regular_value",
    "is_exceptional_point",
    "hausdorff_predicate",
    "specialization_order",
    "face_closure_oracle",
    "boundary_candidates",
    "local_product_check",
    "random_relative_interior_point",
    "family_from_json",
]


class FaceClosureError(ValueError):
    """A member of a family has a face that is not itself a member."""


class AdmissibleFamily:
    """A base polytope together with a finite, face-closed set of sub-polytopes.

    ``members`` maps labels to polytopes.  The base must be a member, as must
    each of its vertices, and every face of every member must be a member.
    Pass ``validate=False`` to defer the check (``build_complex`` runs it).
    """

    def __init__(
        self,
        base: LatticePolytope,
        members: Mapping[str, LatticePolytope],
        name: str | None = None,
        validate: bool = True,
    ):
        self.base = base
        self.members: dict[str, LatticePolytope] = dict(sorted(members.items(), key=lambda kv: (kv[1].dim, kv[0])))
        self.name = name
        self._by_vertices = {}
        for label, poly in self.members.items():
            if poly.ambient_dim != base.ambient_dim:
                raise ValueError(f"member {label} has the wrong ambient dimension")
            if poly.vertex_set() in self._by_vertices:
                raise ValueError(f"members {self._by_vertices[poly.vertex_set()]} and {label} coincide")
            self._by_vertices[poly.vertex_set()] = label
        if validate:
            self.check()

    def check(self) -> None:
        """Raise :class:`FaceClosureError` unless the family invariants hold."""
        if self.label_of(self.base) is None:
            raise FaceClosureError("base polytope is not a member")
        for label, poly in self.members.items():
            for face in poly.all_faces():
                verts = frozenset(poly.face_vertices(face))
                if verts not in self._by_vertices:
                    missing = ",".join("(" + ",".join(str(c) for c in v) + ")" for v in sorted(verts))
                    raise FaceClosureError(f"face [{missing}] of member {label} is missing")

    def label_of(self, poly: LatticePolytope | Iterable[QPoint]) -> str | None:
        verts = poly.vertex_set() if isinstance(poly, LatticePolytope) else frozenset(poly)
        return self._by_vertices.get(verts)

    @property
    def base_label(self) -> str:
        return self.label_of(self.base)

    @property
    def k(self) -> int:
        return self.base.dim

    def is_face_of_base(self, label: str) -> bool:
        return self.base.is_face(self.members[label])

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members.items())

    def __repr__(self):
        return f"AdmissibleFamily({self.name or '?'}, members={len(self)}, k={self.k})"


@dataclass(frozen=True)
class Cell:
    label: str
    polytope: LatticePolytope

    @property
    def dim(self) -> int:
        return self.polytope.dim


@dataclass(frozen=True)
class Complex:
    """One labelled cell per family member; ``projection`` is the identity on geometry."""

    family: AdmissibleFamily
    cells: tuple[Cell, ...]

    def projection(self, label: str) -> LatticePolytope:
        return self.family.members[label]

    def cell(self, label: str) -> Cell:
        for c in self.cells:
            if c.label == label:
                return c
        raise KeyError(label)

    @property
    def labels(self) -> list[str]:
        return [c.label for c in self.cells]

    def to_dict(self, order: "SpecializationOrder | None" = None) -> dict:
        return {
            "cells": [
                {
                    "label": c.label,
                    "vertices": [[str(x) for x in v] for v in c.polytope.vertices],
                    "dim": c.dim,
                }
                for c in self.cells
            ],
            "order": [list(p) for p in order.pairs] if order is not None else [],
        }


def build_complex(family: AdmissibleFamily) -> Complex:
    family.check()
    return Complex(family, tuple(Cell(label, poly) for label, poly in family.members.items()))


def family_from_json(data: Mapping | str, name: str | None = None) -> AdmissibleFamily:
    """Load a family from the complex JSON schema ``{cells: [{label, vertices, dim}], ...}``.

    The base is the unique member of top dimension.
    """
    if isinstance(data, str):
        data = json.loads(data)
    members = {c["label"]: convex_hull(qpoint(v) for v in c["vertices"]) for c in data["cells"]}
    top = max(p.dim for p in members.values())
    tops = [p for p in members.values() if p.dim == top]
    hull = convex_hull(v for p in members.values() for v in p.vertices)
    base = next((p for p in tops if p == hull), None)
    if base is None:
        raise ValueError("no member equals the hull of the family")
    return AdmissibleFamily(base, members, name=name)


# -- corteges and regular values ---------------------------------------------


@dataclass(frozen=True)
class Cortege:
    point: QPoint
    members: tuple[str, ...]

    def __len__(self):
        return len(self.members)


def cortege(family: AdmissibleFamily, x: Sequence) -> Cortege:
    """Members whose relative interior contains ``x``."""
    x = qpoint(x)
    if not family.base.contains(x, "closed"):
        raise ValueError("point lies outside the base polytope")
    members = tuple(label for label, p in family.members.items() if p.contains(x, "interior"))
    return Cortege(x, members)


def is_regular_value(family: AdmissibleFamily, x: Sequence) -> bool:
    c = cortege(family, x)
    return all(family.members[m].dim == family.k for m in c.members)


def is_exceptional_point(family: AdmissibleFamily, x: Sequence) -> bool:
    return len(cortege(family, x)) >= 2


# -- topology -----------------------------------------------------------------


@dataclass(frozen=True)
class TopologyReport:
    hausdorff: bool
    t1: bool
    alexandrov: bool
    canonical_bijection: bool

    def to_dict(self) -> dict:
        return {
            "hausdorff": self.hausdorff,
            "t1": self.t1,
            "alexandrov": self.alexandrov,
            "canonical_bijection": self.canonical_bijection,
        }


def hausdorff_predicate(family: AdmissibleFamily) -> TopologyReport:
    """All four properties hold exactly when every member is a face of the base."""
    ok = all(family.is_face_of_base(label) for label in family.members)
    return TopologyReport(ok, ok, ok, ok)


@dataclass(frozen=True)
class SpecializationOrder:
    """Partial order on cell labels; ``pairs`` lists every ``a <= b`` with ``a != b``."""

    labels: tuple[str, ...]
    pairs: frozenset

    def leq(self, a: str, b: str) -> bool:
        return a == b or (a, b) in self.pairs

    def upper_set(self, a: str) -> set[str]:
        return {a} | {y for (x, y) in self.pairs if x == a}

    def lower_set(self, a: str) -> set[str]:
        return {a} | {x for (x, y) in self.pairs if y == a}


def face_closure_oracle(family: AdmissibleFamily) -> dict[str, set[str]]:
    """Closure data of a face-only family: each cell's closure is its faces."""
    out = {}
    for label, poly in family.members.items():
        out[label] = {family.label_of(poly.face_vertices(f)) for f in poly.all_faces()}
    return out


def specialization_order(
    cx: Complex, closure_oracle: Mapping[str, Iterable[str]] | Callable[[str], Iterable[str]]
) -> SpecializationOrder:
    """Generate ``a <= b iff a meets the closure of b`` and close transitively.

    Raises ``ValueError("not a partial order")`` if the result has a cycle.
    """
    get = closure_oracle if callable(closure_oracle) else (lambda lab: closure_oracle.get(lab, ()))
    labels = tuple(cx.labels)
    known = set(labels)
    below: dict[str, set[str]] = {b: set() for b in labels}
    for b in labels:
        for a in get(b):
            if a not in known:
                raise KeyError(f"closure oracle names unknown cell {a}")
            if a != b:
                below[b].add(a)
    # transitive closure; the cell counts here are tiny
    changed = True
    while changed:
        changed = False
        for b in labels:
            extra = set()
            for a in below[b]:
                extra |= below[a]
            if not extra <= below[b]:
                below[b] |= extra
                changed = True
    pairs = set()
    for b, lows in below.items():
        for a in lows:
            if a == b or b in below[a]:
                raise ValueError("not a partial order")
            pairs.add((a, b))
    return SpecializationOrder(labels, frozenset(pairs))


def boundary_candidates(sigma, admissible: Iterable | None = None) -> list:
    """Admissible proper subsets of a support: a superset of its boundary strata.

    ``admissible`` lists the admissible supports to draw from; it defaults to
    the compiled G(4,2) catalog for supports of G(4,2).
    """
    if admissible is None:
        if (sigma.n, sigma.q) != (4, 2):
            raise ValueError("pass the admissible supports explicitly outside G(4,2)")
        from .grassmann import g42_catalog

        admissible = g42_catalog()
    return sorted((s for s in admissible if s < sigma), key=lambda s: (len(s), s.sorted()))


# -- local product structure ---------------------------------------------------


@dataclass
class StratumModel:
    """Sampling interface for the local-product check on one stratum.

    ``sample(rng)`` draws a stratum point, ``act(p, rng)`` applies a random
    algebraic-torus element, ``compact_act(p, rng)`` a random compact-torus
    element.  ``fiber_invariant`` labels leaves; ``same_leaf`` decides leaf
    equality independently of the invariant.
    """

    name: str
    sample: Callable[[random.Random], Any]
    moment: Callable[[Any], QPoint]
    act: Callable[[Any, random.Random], Any]
    compact_act: Callable[[Any, random.Random], Any]
    same_leaf: Callable[[Any, Any], bool]
    fiber_invariant: Callable[[Any], Any] | None = None


@dataclass(frozen=True)
class CheckResult:
    status: str  # "passed" | "failed" | "untested"
    samples: int = 0
    failures: tuple[str, ...] = ()

    def __bool__(self):
        return self.status == "passed"


def local_product_check(model: StratumModel, n_samples: int = 50, rng: random.Random | int | None = 0) -> CheckResult:
    """Finite shadow of ``W/T ~ (open polytope) x F`` on sampled stratum points.

    Checks that the fiber invariant is constant on algebraic-torus orbits,
    that it separates leaves exactly as ``same_leaf`` does, and that compact
    translates keep both the moment value and the invariant.
    """
    if model.fiber_invariant is None:
        return CheckResult("untested")
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    inv = model.fiber_invariant
    failures = []
    pts = [model.sample(rng) for _ in range(n_samples)]
    for i, p in enumerate(pts):
        tp = model.act(p, rng)
        if inv(tp) != inv(p):
            failures.append(f"sample {i}: invariant moved under the torus")
        if not model.same_leaf(p, tp):
            failures.append(f"sample {i}: torus translate left the leaf")
        up = model.compact_act(p, rng)
        if model.moment(up) != model.moment(p) or inv(up) != inv(p):
            failures.append(f"sample {i}: compact translate changed (moment, invariant)")
        q = pts[(i + 1) % len(pts)]
        if model.same_leaf(p, q) != (inv(p) == inv(q)):
            failures.append(f"samples {i},{(i + 1) % len(pts)}: invariant and leaf test disagree")
    return CheckResult("failed" if failures else "passed", n_samples, tuple(failures))


def random_relative_interior_point(poly: LatticePolytope, rng: random.Random) -> QPoint:
    """Strictly positive random convex combination of all vertices."""
    weights = [rng.randint(1, 9) for _ in poly.vertices]
    total = sum(weights)
    return tuple(
        sum(Fraction(w, total) * v[i] for w, v in zip(weights, poly.vertices))
        for i in range(poly.ambient_dim)
    )
