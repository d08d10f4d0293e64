"""Command-line front end.

Every command prints deterministic JSON (sorted keys, exact fraction
strings) to stdout.  Exit codes: 0 success, 1 computation failure or failed
verdict, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .complex import (
    build_complex,
    cortege,
    face_closure_oracle,
    family_from_json,
    hausdorff_predicate,
    is_regular_value,
    specialization_order,
)
from .grassmann import GrassmannPoint, moment, plucker_relation_check, pluecker, stratum, subset_label
from .models import (
    OrbitSpaceModel,
    QuasitoricModel,
    SphereModel,
    cp,
    family_by_id,
    join_model_check,
    quasitoric_family,
    quasitoric_validate,
    sphere_family,
    sphere_orbit_model,
)
from .polytope import hypersimplex, permutahedron, qpoint
from .scenarios import g42_closure_oracle, verify

_FIBERS = {"g42": cp(1), "cp5": cp(2), "f3": cp(1)}


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _load_family(family_id: str):
    path = Path(family_id)
    if family_id.endswith(".json") and path.exists():
        return family_from_json(path.read_text(), name=path.stem)
    return family_by_id(family_id)


def _load_point(path: str) -> GrassmannPoint:
    return GrassmannPoint.from_json(Path(path).read_text())


def _polytope_out(poly, args) -> str:
    return poly.to_off() if args.off else _dump(poly.to_dict())


def _cmd_hypersimplex(args):
    return _polytope_out(hypersimplex(args.n, args.q), args)


def _cmd_permutahedron(args):
    return _polytope_out(permutahedron(args.n), args)


def _cmd_pluecker(args):
    p = _load_point(args.matrix)
    v = pluecker(p)
    out = {"n": v.n, "q": v.q, "coords": {subset_label(J): str(z) for J, z in v.coords.items()}}
    if v.q == 2:
        out["relation_check"] = plucker_relation_check(v)
    return _dump(out)


def _cmd_moment(args):
    return _dump({"moment": [str(c) for c in moment(_load_point(args.matrix))]})


def _cmd_stratum(args):
    return _dump(stratum(_load_point(args.matrix)).to_dict())


def _cmd_cortege(args):
    fam = _load_family(args.family)
    c = cortege(fam, qpoint(args.point))
    return _dump({"point": [str(x) for x in c.point], "cortege": list(c.members), "exceptional": len(c) >= 2})


def _cmd_regular(args):
    fam = _load_family(args.family)
    return _dump({"regular": is_regular_value(fam, qpoint(args.point))})


def _cmd_complex(args):
    fam = _load_family(args.family)
    cx = build_complex(fam)
    oracle = g42_closure_oracle(args.seed) if args.family == "g42" else face_closure_oracle(fam)
    return _dump(cx.to_dict(specialization_order(cx, oracle)))


def _cmd_topology(args):
    return _dump(hausdorff_predicate(_load_family(args.family)).to_dict())


def _cmd_model(args):
    mid = args.id
    if mid.startswith("sphere"):
        n = int(mid.split(":", 1)[1]) if ":" in mid else 1
        model = join_model_check(sphere_family(), sphere_orbit_model(SphereModel(n)).fiber, rng=args.seed)
    elif mid.startswith("quasitoric:"):
        qm = QuasitoricModel.from_json(Path(mid.split(":", 1)[1]).read_text())
        check = quasitoric_validate(qm)
        if not check:
            raise ValueError(f"characteristic pair fails at vertex {[str(c) for c in check.vertex]} (det {check.det})")
        fam = quasitoric_family(qm)
        model = OrbitSpaceModel("polytope", "point", base="P", checks={"faces": len(fam), "violations": 0})
    elif mid in _FIBERS:
        model = join_model_check(family_by_id(mid), _FIBERS[mid], rng=args.seed)
    else:
        raise KeyError(f"unknown model id {mid!r}")
    return _dump(model.to_dict())


def _cmd_verify(args):
    data, text, ok = verify(args.scenario, seed=args.seed)
    return (text + "\n" if args.text else _dump(data)), ok


def _seed_default() -> int:
    env = os.environ.get("TORUS_STRATA_SEED")
    return int(env) if env not in (None, "") else 0


def build_parser() -> argparse.ArgumentParser:
    seed_help = "seed for randomized oracles (env TORUS_STRATA_SEED)"
    # subcommands accept --seed too; SUPPRESS keeps them from clobbering a top-level value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help=seed_help)

    parser = argparse.ArgumentParser(prog="torus-strata", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=_seed_default(), help=seed_help)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hypersimplex", parents=[common], help="hypersimplex Delta(n, q)")
    p.add_argument("n", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--off", action="store_true", help="OFF-style text instead of JSON")
    p.set_defaults(func=_cmd_hypersimplex)

    p = sub.add_parser("permutahedron", parents=[common], help="permutahedron on (0, ..., n-1)")
    p.add_argument("n", type=int)
    p.add_argument("--off", action="store_true")
    p.set_defaults(func=_cmd_permutahedron)

    for name, func, text in [
        ("pluecker", _cmd_pluecker, "canonical Plücker coordinates"),
        ("moment", _cmd_moment, "moment map image"),
        ("stratum", _cmd_stratum, "support, polytope, stabilizer and torus dimension"),
    ]:
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--matrix", required=True, metavar="FILE", help='JSON {"n", "q", "entries"}')
        p.set_defaults(func=func)

    for name, func, text in [
        ("cortege", _cmd_cortege, "admissible polytopes whose interior contains the point"),
        ("regular", _cmd_regular, "is the point a regular value"),
    ]:
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--family", required=True, metavar="ID")
        p.add_argument("--point", required=True, help='comma-separated fractions, e.g. "1/2,1/2,1/2,1/2"')
        p.set_defaults(func=func)

    p = sub.add_parser("complex", parents=[common], help="cells and specialization order")
    p.add_argument("--family", required=True, metavar="ID")
    p.set_defaults(func=_cmd_complex)

    p = sub.add_parser("topology", parents=[common], help="Hausdorff / T1 / Alexandrov / bijection report")
    p.add_argument("--family", required=True, metavar="ID")
    p.set_defaults(func=_cmd_topology)

    p = sub.add_parser("model", parents=[common], help="orbit-space model")
    p.add_argument("--id", required=True, help="sphere:n | g42 | cp5 | f3 | quasitoric:FILE")
    p.set_defaults(func=_cmd_model)

    p = sub.add_parser("verify", parents=[common], help="run scenario checks")
    p.add_argument("scenario", choices=["gs73", "cwcq", "joins", "all"])
    p.add_argument("--text", action="store_true", help="human-readable report")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except (ValueError, KeyError, OSError, ArithmeticError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(_dump({"error": str(msg), "type": type(exc).__name__}))
        return 1
    ok = True
    if isinstance(result, tuple):
        result, ok = result
    sys.stdout.write(result if result.endswith("\n") else result + "\n")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
