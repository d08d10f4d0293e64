"""Mechanized checks of the two counterexamples and the join applications.

Limits are witnessed algebraically.  Along a family whose matrix entries are
affine in a parameter ``t``, the raw maximal minors are polynomials in ``t``
of degree at most ``q``; we evaluate them at ``t = 1/2, 1/4, 1/8, ...``,
interpolate, confirm the extra samples lie on the interpolant, and read off
the value at ``t = 0``.  No numerics are involved.
"""

from __future__ import annotations

import functools
import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .complex import cortege
from .exact import GaussianRational, determinant, row_echelon, to_gaussian
from .grassmann import (
    GrassmannPoint,
    PlueckerVector,
    SupportSet,
    _minors,
    admissible_polytope,
    family_c,
    g42_catalog,
    g42_family,
    moment,
    pluecker,
    realizable,
    subset_label,
    support,
    torus_act,
)
from .models import (
    OrbitSpaceModel,
    SphereModel,
    cp,
    cp5_family,
    f3_family,
    join_model_check,
    sphere_family,
    sphere_orbit_model,
)

__all__ = [
    "StepRecord",
    "GS73Report",
    "CWvsCQReport",
    "JoinReport",
    "polynomial_limit",
    "gs73_matrix",
    "gs73_q",
    "gs73_scenario",
    "cw_vs_cq_scenario",
    "join_scenarios",
    "join_report",
    "g42_closure_oracle",
    "verify",
]

_TS = (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1, 16))


def _fmt(x) -> str:
    return str(x)


def _point_str(x: Sequence) -> list[str]:
    return [str(c) for c in x]


def _labels(sigma: SupportSet) -> list[str]:
    return [subset_label(J) for J in sigma.sorted()]


@dataclass
class StepRecord:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"step": self.name, "ok": self.ok, **self.detail}


# -- algebraic limits ------------------------------------------------------------


def _lagrange_at(xs: Sequence[Fraction], ys: Sequence[GaussianRational], x) -> GaussianRational:
    total = GaussianRational(0)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        w = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                w *= Fraction(x - xj, xi - xj)
        total = total + yi * w
    return total


def polynomial_limit(
    family: Callable[[Fraction], GrassmannPoint],
    degree: int,
    ts: Sequence[Fraction] = _TS,
) -> tuple[dict, bool]:
    """Raw minors of ``family(t)`` at ``t = 0`` by exact interpolation.

    Uses the first ``degree + 1`` sample values; the remaining ones must lie on
    the interpolant.  Returns ``(minors at 0, consistent)``.
    """
    if len(ts) < degree + 2:
        raise ValueError("need at least one sample beyond the interpolation nodes")
    samples = [_minors(family(t)) for t in ts]
    nodes = list(ts[: degree + 1])
    out, consistent = {}, True
    for J in samples[0]:
        ys = [s[J] for s in samples[: degree + 1]]
        for t, s in zip(ts[degree + 1 :], samples[degree + 1 :]):
            if _lagrange_at(nodes, ys, t) != s[J]:
                consistent = False
        out[J] = _lagrange_at(nodes, ys, 0)
    return out, consistent


def _projective(minors: dict, n: int, q: int) -> PlueckerVector:
    return PlueckerVector(n, q, dict(minors))


# -- the Gel'fand-Serganova example on G(7,3) ------------------------------------

FANO_LISTING = ("126", "135", "234", "147", "257", "367", "456")


def gs73_matrix(a2=0, a3=0, b1=0, b3=0, c1=0, c2=0, d=(0, 0, 0)) -> GrassmannPoint:
    """The 3x7 chart matrix, stored as a 7x3 point (one row per coordinate of C^7)."""
    rows = [
        [1, 0, 0, 0, b1, c1, d[0]],
        [0, 1, 0, a2, 0, c2, d[1]],
        [0, 0, 1, a3, b3, 0, d[2]],
    ]
    return GrassmannPoint([list(col) for col in zip(*rows)])


def gs73_q(a2, a3, b1, b3, c1, c2):
    """The obstruction ``Q = a3 b1 c2 - a2 b3 c1``."""
    return a3 * b1 * c2 - a2 * b3 * c1


def _compatibility(a2, a3, b1, b3, c1, c2):
    # d1 c2 = d2 c1, d1 b3 = d3 b1, d2 a3 = a2 d3 as a linear system in d
    return [[c2, -c1, 0], [b3, 0, -b1], [0, a3, -a2]]


def _chart_coordinates(p: GrassmannPoint) -> dict[str, GaussianRational]:
    """Normalize to chart 123 and read off (a2, a3, b1, b3, c1, c2)."""
    block = [list(row) for row in p.matrix[:3]]
    aug = [block[i] + [GaussianRational(int(i == j)) for j in range(3)] for i in range(3)]
    reduced, pivots = row_echelon(aug)
    if pivots[:3] != [0, 1, 2]:
        raise ValueError("point not in chart 123")
    inv = [row[3:] for row in reduced]
    m = [[sum((row[k] * inv[k][c] for k in range(3)), GaussianRational(0)) for c in range(3)] for row in p.matrix]
    # row i of m is column i of the 3x7 chart matrix
    return {"a2": m[3][1], "a3": m[3][2], "b1": m[4][0], "b3": m[4][2], "c1": m[5][0], "c2": m[5][1]}


@dataclass
class GS73Report:
    support_W: SupportSet | None = None
    support_Wprime: SupportSet | None = None
    equality_witness: GrassmannPoint | None = None
    inequality_witness: GrassmannPoint | None = None
    limit_family_description: str = ""
    boundary_meets: bool = False
    not_contained: bool = False
    q_equality: Fraction | None = None
    q_inequality: Fraction | None = None
    w_zero_set: tuple[str, ...] = ()
    steps: list[StepRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.boundary_meets and self.not_contained and all(s.ok for s in self.steps)

    @property
    def failing_step(self) -> str | None:
        return next((s.name for s in self.steps if not s.ok), None)

    def to_dict(self) -> dict:
        return {
            "scenario": "gs73",
            "support_W": _labels(self.support_W) if self.support_W else None,
            "support_Wprime": _labels(self.support_Wprime) if self.support_Wprime else None,
            "w_zero_set": list(self.w_zero_set),
            "equality_witness": self.equality_witness.to_json() if self.equality_witness else None,
            "inequality_witness": self.inequality_witness.to_json() if self.inequality_witness else None,
            "limit_family": self.limit_family_description,
            "Q_equality": _fmt(self.q_equality),
            "Q_inequality": _fmt(self.q_inequality),
            "verdict": {"boundary_meets": self.boundary_meets, "not_contained": self.not_contained},
            "steps": [s.to_dict() for s in self.steps],
            "ok": self.ok,
            "failing_step": self.failing_step,
        }

    def to_text(self) -> str:
        lines = ["Gel'fand-Serganova example on G(7,3)"]
        for s in self.steps:
            lines.append(f"  [{'ok' if s.ok else 'FAIL'}] {s.name}")
        lines.append(f"  boundary of W meets W': {self.boundary_meets}")
        lines.append(f"  W' not contained in the boundary of W: {self.not_contained}")
        return "\n".join(lines)


def gs73_scenario(rng: random.Random | int | None = 0) -> GS73Report:
    """Certify that the boundary of W meets W' while W' is not inside that boundary.

    The not-contained half rests on the polynomial obstruction: Q vanishes on
    W and on every t -> 0 substitution of it, and Q is nonzero at a point of W'.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    rep = GS73Report()

    # (1) a point of W and its Plücker zero set
    w = gs73_matrix(a2=1, a3=1, b1=2, b3=2, c1=3, c2=3, d=(1, 1, 1))
    sigma_w = support(w)
    all_triples = set(itertools.combinations(range(1, 8), 3))
    zero = tuple(sorted((subset_label(J) for J in all_triples - set(sigma_w)), key=lambda s: FANO_LISTING.index(s) if s in FANO_LISTING else 99))
    rep.support_W, rep.w_zero_set = sigma_w, zero
    # the six collinear triples forced by the chart shape; 456 would need a3 b1 c2 = -a2 b3 c1
    expected = set(FANO_LISTING) - {"456"}
    rep.steps.append(
        StepRecord(
            "W witness zero set",
            set(zero) == expected,
            {"zero_set": list(zero), "listed_but_nonzero": sorted(set(FANO_LISTING) - set(zero))},
        )
    )

    # (2) equality witness, d-completion and the limit family
    par = dict(a2=1, a3=1, b1=1, b3=1, c1=1, c2=1)
    eq = gs73_matrix(**par)
    rep.equality_witness = eq
    rep.support_Wprime = support(eq)
    rep.q_equality = gs73_q(**par)
    d = (Fraction(1), Fraction(par["c2"], par["c1"]), Fraction(par["b3"], par["b1"]))
    solvable = all(
        sum(r * x for r, x in zip(row, d)) == 0 for row in _compatibility(**par)
    ) and all(x != 0 for x in d)
    rep.steps.append(StepRecord("equality witness d-completion", solvable, {"d": _point_str(d), "Q": str(rep.q_equality)}))

    def family(t):
        return gs73_matrix(**par, d=tuple(t * x for x in d))

    in_w = all(support(family(t)) == sigma_w for t in _TS)
    q_on_family = all(gs73_q(**_chart_coordinates(family(t))) == 0 for t in _TS)
    limit, consistent = polynomial_limit(family, degree=1)
    converges = consistent and _projective(limit, 7, 3) == pluecker(eq)
    rep.limit_family_description = "L_t: d = t*(1, c2/c1, b3/b1), t -> 0"
    rep.steps.append(
        StepRecord(
            "limit family L_t",
            in_w and q_on_family and converges,
            {"samples": _point_str(_TS), "in_W": in_w, "Q_zero": q_on_family, "limit_matches": converges},
        )
    )
    rep.boundary_meets = solvable and in_w and converges

    # (3) inequality witness in W' where the compatibility system has only d = 0
    par2 = dict(a2=1, a3=1, b1=1, b3=2, c1=1, c2=1)
    ineq = gs73_matrix(**par2)
    rep.inequality_witness = ineq
    rep.q_inequality = gs73_q(**par2)
    same_stratum = support(ineq) == rep.support_Wprime
    det = determinant(_compatibility(**par2))
    rep.steps.append(
        StepRecord(
            "inequality witness",
            same_stratum and det == rep.q_inequality != 0,
            {"in_Wprime": same_stratum, "Q": str(rep.q_inequality), "compatibility_det": str(det)},
        )
    )

    # torus invariance of the relation Q = 0 and of the ratio a3 b1 c2 / (a2 b3 c1)
    invariant = True
    for _ in range(10):
        t = [Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9)) for _ in range(7)]
        c_eq = _chart_coordinates(torus_act(eq, t))
        c_in = _chart_coordinates(torus_act(ineq, t))
        if gs73_q(**c_eq) != 0 or _ratio(c_in) != _ratio(_chart_coordinates(ineq)):
            invariant = False
    rep.steps.append(StepRecord("torus invariance of Q", invariant, {"torus_elements": 10}))
    rep.not_contained = same_stratum and rep.q_inequality != 0 and det != 0 and q_on_family and invariant
    return rep


def _ratio(c: dict) -> GaussianRational:
    return (c["a3"] * c["b1"] * c["c2"]) / (c["a2"] * c["b3"] * c["c1"])


# -- CW versus quotient topology on G(4,2) -----------------------------------------


@dataclass
class CWvsCQReport:
    family_moments: dict = field(default_factory=dict)
    limit_moments: dict = field(default_factory=dict)
    placements: dict = field(default_factory=dict)
    order_evidence: list = field(default_factory=list)
    not_cw_closed: bool = False
    verdict: bool = False
    steps: list[StepRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.verdict

    def to_dict(self) -> dict:
        return {
            "scenario": "cwcq",
            "family_moments": {k: _point_str(v) for k, v in self.family_moments.items()},
            "limit_moments": {k: _point_str(v) for k, v in self.limit_moments.items()},
            "placements": self.placements,
            "order_evidence": [list(p) for p in self.order_evidence],
            "not_closed_in_cw": self.not_cw_closed,
            "closed_in_quotient": True,
            "steps": [s.to_dict() for s in self.steps],
            "verdict": self.verdict,
            "ok": self.ok,
        }

    def to_text(self) -> str:
        lines = ["CW versus quotient topology on G(4,2)"]
        for k, v in self.limit_moments.items():
            pl = self.placements[k]
            lines.append(f"  mu({k}) = ({', '.join(map(str, v))}) in open cell {pl['cell']} (face of base: {pl['face_of_base']})")
        lines.append(f"  image of the closure not closed in the CW topology: {self.not_cw_closed}")
        return "\n".join(lines)


def _c_infinity_chart(s) -> GrassmannPoint:
    # the same subspace as C(1/s), written in the chart P^{23} != 0
    return GrassmannPoint([[-s, s], [1, 0], [0, 1], [1 - s, s]])


def cw_vs_cq_scenario() -> CWvsCQReport:
    """Limits of the family C(c) land in open cells of non-face members of G(4,2)."""
    rep = CWvsCQReport()
    fam = g42_family()
    base_label = fam.base_label
    main = SupportSet.full(4, 2)

    one_stratum = True
    for c in (2, 3, -1):
        p = family_c(c)
        rep.family_moments[f"C({c})"] = moment(p)
        one_stratum &= support(p) == main
        inside = fam.members[base_label].contains(moment(p), "interior")
        one_stratum &= inside
    rep.steps.append(StepRecord("family stays in the main stratum", one_stratum))

    limits = {
        "C0": (lambda t: family_c(t), GrassmannPoint([[1, 0], [0, 1], [0, 1], [1, 1]])),
        "C1": (lambda t: family_c(1 + t), family_c(1)),
        "Cinf": (_c_infinity_chart, GrassmannPoint([[0, 0], [1, 0], [0, 1], [1, 0]])),
    }
    expected = {
        "C0": ((Fraction(3, 5), Fraction(2, 5), Fraction(2, 5), Fraction(3, 5)), "{12,13,14,24,34}"),
        "C1": ((Fraction(3, 5), Fraction(3, 5), Fraction(2, 5), Fraction(2, 5)), "{12,13,14,23,24}"),
        "Cinf": ((Fraction(0), Fraction(1, 2), Fraction(1), Fraction(1, 2)), "{23,34}"),
    }
    all_match = True
    for name, (path, limit_point) in limits.items():
        minors, consistent = polynomial_limit(path, degree=2)
        reached = consistent and _projective(minors, 4, 2) == pluecker(limit_point)
        mu = moment(limit_point)
        sigma = support(limit_point)
        cell = sigma.label
        in_cell = admissible_polytope(sigma).contains(mu, "interior")
        face = fam.is_face_of_base(cell)
        rep.limit_moments[name] = mu
        rep.placements[name] = {
            "cell": cell,
            "face_of_base": face,
            "in_open_cell": in_cell,
            "cortege": list(cortege(fam, mu).members),
        }
        exp_mu, exp_cell = expected[name]
        match = reached and in_cell and mu == exp_mu and cell == exp_cell
        all_match &= match
        rep.steps.append(StepRecord(f"limit {name}", match, {"moment": _point_str(mu), "cell": cell}))
        rep.order_evidence.append((cell, base_label))
    rep.not_cw_closed = any(not p["face_of_base"] for p in rep.placements.values())
    rep.verdict = one_stratum and all_match and rep.not_cw_closed
    return rep


# -- specialization data for G(4,2) ---------------------------------------------------


@functools.lru_cache(maxsize=None)
def _g42_closure(seed: int) -> tuple[tuple[str, tuple[str, ...]], ...]:
    rng = random.Random(seed)
    fam = g42_family()
    catalog = g42_catalog()
    out = {}
    for sigma in catalog:
        label = sigma.label
        poly = fam.members[label]
        closure = {fam.label_of(poly.face_vertices(f)) for f in poly.all_faces()}
        # tau lies in the closure of W_sigma when a pencil tau-witness + e * sigma-witness
        # has generic support sigma: those points are in W_sigma for all but finitely many e
        for tau in catalog:
            if not tau < sigma or tau.label in closure:
                continue
            for _ in range(8):
                a = realizable(tau, rng=rng).witness
                b = realizable(sigma, rng=rng).witness
                generic = set()
                for e in (Fraction(1, 3), Fraction(2, 7), Fraction(5, 11)):
                    pt = [[x + e * y for x, y in zip(ra, rb)] for ra, rb in zip(a.matrix, b.matrix)]
                    try:
                        generic |= set(support(GrassmannPoint(pt)))
                    except ValueError:
                        continue
                if generic == set(sigma):
                    closure.add(tau.label)
                    break
        out[label] = tuple(sorted(closure))
    return tuple(sorted(out.items()))


def g42_closure_oracle(seed: int = 0) -> dict[str, set[str]]:
    """Cells met by the closure of each G(4,2) cell: faces plus limit evidence."""
    return {k: set(v) for k, v in _g42_closure(seed)}


# -- join applications ----------------------------------------------------------------


@dataclass
class JoinReport:
    models: dict
    expected: dict

    @property
    def ok(self) -> bool:
        return all(str(self.models[k]) == self.expected[k] and self.models[k].checks["violations"] == 0 for k in self.expected)

    def to_dict(self) -> dict:
        return {
            "scenario": "joins",
            "models": {k: m.to_dict() for k, m in self.models.items()},
            "ok": self.ok,
        }

    def to_text(self) -> str:
        lines = ["Orbit spaces as joins"]
        for k, m in self.models.items():
            lines.append(f"  {k}: {m} ({m.checks['boundary_points_tested']} boundary points, {m.checks['violations']} violations)")
        return "\n".join(lines)


def join_scenarios(sphere_n: int = 4, rng: random.Random | int | None = 0) -> list[OrbitSpaceModel]:
    """Join models for G(4,2), CP^5, F3 and S^{2n}, each after its hypothesis checks."""
    return list(join_report(sphere_n, rng).models.values())


def join_report(sphere_n: int = 4, rng: random.Random | int | None = 0) -> JoinReport:
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    sphere = SphereModel(sphere_n)
    models = {
        "g42": join_model_check(g42_family(), cp(1), rng=rng),
        "cp5": join_model_check(cp5_family(), cp(2), rng=rng),
        "f3": join_model_check(f3_family(), cp(1), rng=rng),
        f"sphere:{sphere_n}": join_model_check(sphere_family(), sphere_orbit_model(sphere).fiber, rng=rng),
    }
    expected = {
        "g42": "join(S^2, CP^1)",
        "cp5": "join(S^2, CP^2)",
        "f3": "join(S^1, CP^1)",
        f"sphere:{sphere_n}": f"join(S^0, CP^{sphere_n - 1})",
    }
    return JoinReport(models, expected)


def verify(which: str = "all", seed: int = 0) -> tuple[dict, str, bool]:
    """Run scenarios; returns (JSON-ready report, text, all verdicts true)."""
    runners = {
        "gs73": lambda: gs73_scenario(rng=seed),
        "cwcq": cw_vs_cq_scenario,
        "joins": lambda: join_report(rng=seed),
    }
    if which != "all" and which not in runners:
        raise KeyError(f"unknown scenario {which!r}")
    names = list(runners) if which == "all" else [which]
    reports = {name: runners[name]() for name in names}
    data = {name: r.to_dict() for name, r in reports.items()}
    data["seed"] = seed
    data["ok"] = all(r.ok for r in reports.values())
    text = "\n".join(r.to_text() for r in reports.values())
    return data, text, data["ok"]


def report_json(data: dict) -> str:
    return json.dumps(data, sort_keys=True, indent=2)
