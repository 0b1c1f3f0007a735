"""Command-line front end.

Thin client over the service handlers: by default everything runs
in-process; pass --url to talk to a running server instead.  Output is a
single JSON document on stdout (JSON-lines for orbit streams).

Exit codes: 0 success / verification passed; 1 domain failure or a
verification that ran and failed; 2 malformed input (flags, words, classes,
config files).
"""
from __future__ import annotations

import argparse
import json
import sys

from pydantic import ValidationError

from . import jsonio
from .errors import DomainError
from .service import api
from .service.models import (LatticeActRequest, LatticeDynkinRequest,
                             LatticeMatrixRequest, LatticeOrbitRequest,
                             OrbitRequest, VerifyRequest)

_PARSE_EXIT = 2
_DOMAIN_EXIT = 1


def _emit(payload, indent: int | None = 2):
    sys.stdout.write(jsonio.dumps(payload, indent=indent) + "\n")


def _fail(kind: str, message: str, code: int) -> int:
    _emit({"error": message, "kind": kind})
    return code


def _post(url: str, path: str, body) -> tuple[int, dict]:
    import httpx

    resp = httpx.post(url.rstrip("/") + path, json=body, timeout=300.0)
    try:
        payload = resp.json()
    except ValueError:
        payload = {"error": resp.text, "kind": "transport"}
    return resp.status_code, payload


def _run_remote(url: str, path: str, model, passed_key: str | None = None) -> int:
    status, payload = _post(url, path, model.model_dump(by_alias=True))
    _emit(payload)
    if status == 400:
        return _PARSE_EXIT
    if status >= 500:
        return _DOMAIN_EXIT
    if status != 200:
        return _DOMAIN_EXIT
    if passed_key is not None and not payload.get(passed_key, False):
        return _DOMAIN_EXIT
    return 0


def _load_json_file(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_lattice(args) -> int:
    try:
        if args.lattice_cmd == "act":
            model = LatticeActRequest(n=args.n, m=args.m, word=args.word,
                                      cls=args.cls, kind=args.kind)
            if args.url:
                return _run_remote(args.url, "/lattice/act", model)
            _emit(api.lattice_act(model).model_dump())
        elif args.lattice_cmd == "matrix":
            model = LatticeMatrixRequest(n=args.n, m=args.m, word=args.word,
                                         direction="pullback" if args.pullback
                                         else "pushforward")
            if args.url:
                return _run_remote(args.url, "/lattice/matrix", model)
            _emit(api.lattice_matrix(model).model_dump())
        elif args.lattice_cmd == "dynkin":
            model = LatticeDynkinRequest(n=args.n, m=args.m)
            if args.url:
                return _run_remote(args.url, "/lattice/dynkin", model)
            _emit(api.lattice_dynkin(model).model_dump())
        else:
            model = LatticeOrbitRequest(n=args.n, m=args.m, depth=args.depth,
                                        cls=args.cls)
            if args.url:
                return _run_remote(args.url, "/lattice/orbit", model)
            _emit(api.lattice_orbit(model).model_dump())
    except (api.ParseFailure, ValidationError) as exc:
        return _fail("parse", str(exc), _PARSE_EXIT)
    except DomainError as exc:
        return _fail(type(exc).__name__, str(exc), _DOMAIN_EXIT)
    return 0


def _cmd_orbit(args) -> int:
    try:
        spec = _load_json_file(args.params)
    except (OSError, json.JSONDecodeError) as exc:
        return _fail("parse", f"cannot read params file: {exc}", _PARSE_EXIT)
    if args.word is not None:
        spec["word"] = args.word
    if args.steps is not None:
        spec["steps"] = args.steps
    try:
        model = OrbitRequest(**spec)
    except (ValidationError, TypeError) as exc:
        return _fail("parse", str(exc), _PARSE_EXIT)
    if args.url:
        status, payload = _post(args.url, "/orbit", model.model_dump())
        if status != 200:
            _emit(payload)
            return _PARSE_EXIT if status == 400 else _DOMAIN_EXIT
        for state in payload.get("states", []):
            _emit(state, indent=None)
        return 0
    try:
        resp = api.param_orbit(model)
    except api.ParseFailure as exc:
        return _fail("parse", str(exc), _PARSE_EXIT)
    except DomainError as exc:
        return _fail(type(exc).__name__, str(exc), _DOMAIN_EXIT)
    for state in resp.states:
        _emit(state.model_dump(), indent=None)
    return 0


def _cmd_verify(args) -> int:
    spec: dict = {}
    if args.config:
        try:
            spec = _load_json_file(args.config)
        except (OSError, json.JSONDecodeError) as exc:
            return _fail("parse", f"cannot read config file: {exc}", _PARSE_EXIT)
    overrides = {
        "word": args.word, "compare": args.compare, "seed": args.seed,
        "probes": args.probes, "tol": args.tol, "n": args.n, "m": args.m,
        "tau": args.tau, "eps": args.eps, "variant": args.variant,
    }
    for key, value in overrides.items():
        if value is not None:
            spec[key] = value
    if args.random:
        spec["random"] = True
    if args.timing:
        spec["timing"] = True
    if args.checks is not None:
        spec["checks"] = [c.strip() for c in args.checks.split(",") if c.strip()]
    try:
        model = VerifyRequest(**spec)
    except (ValidationError, TypeError) as exc:
        return _fail("parse", str(exc), _PARSE_EXIT)
    if args.url:
        return _run_remote(args.url, "/verify", model, passed_key="passed")
    try:
        resp = api.run_verify(model)
    except api.ParseFailure as exc:
        return _fail("parse", str(exc), _PARSE_EXIT)
    except DomainError as exc:
        return _fail(type(exc).__name__, str(exc), _DOMAIN_EXIT)
    _emit({"passed": resp.passed, "reports": resp.reports})
    return 0 if resp.passed else _DOMAIN_EXIT


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weyltorus",
        description="Weyl group actions on point configurations: exact "
                    "lattice queries, torus parameter orbits, and geometric "
                    "verification runs.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add_url(p):
        p.add_argument("--url", default=None,
                       help="send the request to a running server instead of "
                            "computing in-process")

    lat = sub.add_parser("lattice", help="exact Picard-lattice queries")
    lat_sub = lat.add_subparsers(dest="lattice_cmd", required=True)

    act = lat_sub.add_parser("act", help="apply a word to a divisor/curve class")
    act.add_argument("--n", type=int, required=True)
    act.add_argument("--m", type=int, required=True)
    act.add_argument("--word", default="", help='comma-separated letters, e.g. "0,1,2,1"')
    act.add_argument("--class", dest="cls", required=True,
                     help='symbolic class, e.g. "E-E_1-E_2" or "e_3"')
    act.add_argument("--kind", choices=["divisor", "curve"], default="divisor")
    add_url(act)
    act.set_defaults(func=_cmd_lattice)

    mat = lat_sub.add_parser("matrix", help="matrix of a word on the divisor basis")
    mat.add_argument("--n", type=int, required=True)
    mat.add_argument("--m", type=int, required=True)
    mat.add_argument("--word", default="")
    mat.add_argument("--pullback", action="store_true",
                     help="return the pullback (inverse) matrix")
    add_url(mat)
    mat.set_defaults(func=_cmd_lattice)

    dyn = lat_sub.add_parser("dynkin", help="generator adjacency diagram")
    dyn.add_argument("--n", type=int, required=True)
    dyn.add_argument("--m", type=int, required=True)
    add_url(dyn)
    dyn.set_defaults(func=_cmd_lattice)

    orb = lat_sub.add_parser("orbit", help="bounded reflection orbit of alpha_0")
    orb.add_argument("--n", type=int, required=True)
    orb.add_argument("--m", type=int, required=True)
    orb.add_argument("--depth", type=int, default=4)
    orb.add_argument("--class", dest="cls", default=None,
                     help="also report whether this class appears in the orbit")
    add_url(orb)
    orb.set_defaults(func=_cmd_lattice)

    po = sub.add_parser("orbit", help="iterate a word on a theta-ratio state "
                                      "(JSON-lines, one state per step)")
    po.add_argument("--params", required=True,
                    help="JSON file with n, m, tau, eps, u (and optional word, steps)")
    po.add_argument("--word", default=None)
    po.add_argument("--steps", type=int, default=None)
    add_url(po)
    po.set_defaults(func=_cmd_orbit)

    ver = sub.add_parser("verify", help="run geometric-vs-torus verification")
    ver.add_argument("--config", default=None, help="JSON config file")
    ver.add_argument("--n", type=int, default=None)
    ver.add_argument("--m", type=int, default=None)
    ver.add_argument("--tau", default=None, help='complex, e.g. "0.31+1.17i" or [re,im]')
    ver.add_argument("--eps", default=None)
    ver.add_argument("--variant", choices=["theta_ratio", "weierstrass"], default=None)
    ver.add_argument("--word", default=None)
    ver.add_argument("--compare", default=None,
                     help="second word; additionally check both words give the "
                          "same end state")
    ver.add_argument("--random", action="store_true",
                     help="draw the marked points from the seeded generator")
    ver.add_argument("--seed", type=int, default=None)
    ver.add_argument("--probes", type=int, default=None)
    ver.add_argument("--tol", type=float, default=None)
    ver.add_argument("--checks", default=None,
                     help='comma-separated subset of "word,decomposition,prop32"')
    ver.add_argument("--timing", action="store_true",
                     help="include wall-clock timings (off by default so "
                          "reports are byte-stable)")
    add_url(ver)
    ver.set_defaults(func=_cmd_verify)

    srv = sub.add_parser("serve", help="run the HTTP service")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8000)
    srv.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
