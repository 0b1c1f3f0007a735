"""Handlers behind the HTTP endpoints; also called in-process by the CLI.

All domain and parse failures surface as the package's exception types;
the app layer (or the CLI) maps them onto status codes / exit codes.
"""
from __future__ import annotations

import numpy as np

from .. import jsonio
from ..elliptic import TorusModulus, lattice_dist
from ..errors import DomainError
from ..lattice import (CurveClass, DivisorClass, Signature, check_word,
                       curve_pushforward, dynkin_adjacency, format_class,
                       is_real_root_orbit_member, parse_class, parse_word,
                       real_root_orbit, word_pushforward, word_pullback)
from ..torus_action import TorusParams, theta_ratio_word, word_with_shifts
from ..verify import (random_torus_point, verify_g_decomposition,
                      verify_prop32, verify_word)
from .models import (ClassResponse, DynkinResponse, LatticeActRequest,
                     LatticeDynkinRequest, LatticeMatrixRequest,
                     LatticeOrbitRequest, LatticeOrbitResponse, MatrixResponse,
                     OrbitRequest, OrbitResponse, ParamState, VerifyRequest,
                     VerifyResponse)


class ParseFailure(ValueError):
    """Input that is well-formed JSON but not a valid domain description."""


def _sig(n: int, m: int) -> Signature:
    try:
        return Signature(n, m)
    except ValueError as exc:
        raise ParseFailure(str(exc)) from None


def _word(value) -> tuple:
    try:
        if isinstance(value, str):
            return parse_word(value)
        return tuple(int(g) for g in value)
    except (TypeError, ValueError) as exc:
        raise ParseFailure(f"bad word: {exc}") from None


def _checked_word(value, sig: Signature) -> tuple:
    try:
        return check_word(_word(value), sig)
    except ValueError as exc:
        raise ParseFailure(str(exc)) from None


def _class(value, sig: Signature, kind: str):
    try:
        if isinstance(value, str):
            cls = parse_class(value, sig)
        else:
            coeffs = tuple(int(c) for c in value)
            cls = (DivisorClass if kind == "divisor" else CurveClass)(coeffs, sig)
    except ValueError as exc:
        raise ParseFailure(str(exc)) from None
    if kind == "divisor" and not isinstance(cls, DivisorClass):
        raise ParseFailure("expected a divisor class (symbols E, E_i)")
    if kind == "curve" and not isinstance(cls, CurveClass):
        raise ParseFailure("expected a curve class (symbols e, e_i)")
    return cls


def _complex(value, what: str) -> complex:
    try:
        return jsonio.parse_complex(value)
    except ValueError as exc:
        raise ParseFailure(f"bad {what}: {exc}") from None


def lattice_act(req: LatticeActRequest) -> ClassResponse:
    sig = _sig(req.n, req.m)
    word = _checked_word(req.word, sig)
    cls = _class(req.cls, sig, req.kind)
    if isinstance(cls, DivisorClass):
        out = word_pushforward(word, sig).act_divisor(cls)
        return ClassResponse(coeffs=list(out.coeffs), pretty=format_class(out.coeffs, "E"),
                             kind="divisor")
    out = curve_pushforward(word, cls)
    return ClassResponse(coeffs=list(out.coeffs), pretty=format_class(out.coeffs, "e"),
                         kind="curve")


def lattice_matrix(req: LatticeMatrixRequest) -> MatrixResponse:
    sig = _sig(req.n, req.m)
    word = _checked_word(req.word, sig)
    mat = (word_pushforward if req.direction == "pushforward" else word_pullback)(word, sig)
    return MatrixResponse(rows=[list(r) for r in mat.rows],
                          determinant=mat.determinant(), direction=req.direction)


def lattice_dynkin(req: LatticeDynkinRequest) -> DynkinResponse:
    sig = _sig(req.n, req.m)
    adj = dynkin_adjacency(sig)
    return DynkinResponse(adjacency=[list(r) for r in adj],
                          labels=[f"alpha_{i}" for i in range(sig.m)])


def lattice_orbit(req: LatticeOrbitRequest) -> LatticeOrbitResponse:
    sig = _sig(req.n, req.m)
    if req.depth < 0:
        raise ParseFailure("depth must be >= 0")
    orbit = real_root_orbit(sig, req.depth)
    member = None
    if req.cls is not None:
        cls = _class(req.cls, sig, "divisor")
        member = is_real_root_orbit_member(cls, req.depth)
    return LatticeOrbitResponse(depth=req.depth, count=len(orbit),
                                orbit=[list(D.coeffs) for D in orbit], member=member)


def _theta_ratio_state(sig: Signature, tau, u, eps) -> TorusParams:
    mod = TorusModulus(_complex(tau, "tau"))
    if u is None:
        raise ParseFailure("missing marked points u")
    if len(u) != sig.m:
        raise ParseFailure(f"need {sig.m} marked points, got {len(u)}")
    pts = [_complex(x, "u") for x in u]
    if eps is None:
        raise ParseFailure("theta-ratio state needs eps")
    return TorusParams.theta_ratio(sig, mod, pts, _complex(eps, "eps"))


def _state_snapshot(step: int, state: TorusParams) -> ParamState:
    return ParamState(step=step,
                      eps=jsonio.complex_pair(state.eps),
                      u=[jsonio.complex_pair(x) for x in state.u],
                      v_np1=jsonio.complex_pair(state.v_np1))


def param_orbit(req: OrbitRequest) -> OrbitResponse:
    sig = _sig(req.n, req.m)
    word = _checked_word(req.word, sig)
    if req.steps < 1:
        raise ParseFailure("steps must be >= 1")
    state = _theta_ratio_state(sig, req.tau, req.u, req.eps)
    states = [_state_snapshot(0, state)]
    for k in range(1, req.steps + 1):
        try:
            state = theta_ratio_word(word, state)
        except DomainError as exc:
            raise DomainError(f"orbit degenerated at step {k}: {exc}") from None
        states.append(_state_snapshot(k, state))
    return OrbitResponse(word=list(word), states=states)


def _verify_state(req: VerifyRequest) -> TorusParams:
    sig = _sig(req.n, req.m)
    mod = TorusModulus(_complex(req.tau, "tau"))
    if req.random or req.u is None:
        rng = np.random.default_rng(req.seed)
        pts = []
        for _ in range(sig.m):
            pts.append(random_torus_point(rng, mod, avoid=pts, min_dist=0.05))
        eps = _complex(req.eps, "eps") if req.eps is not None else (
            0.15 + 0.1 * mod.tau + 0.07j)
    else:
        if len(req.u) != sig.m:
            raise ParseFailure(f"need {sig.m} marked points, got {len(req.u)}")
        pts = [_complex(x, "u") for x in req.u]
        eps = _complex(req.eps, "eps") if req.eps is not None else None
    if req.variant == "weierstrass":
        return TorusParams.weierstrass(sig, mod, pts)
    if eps is None:
        raise ParseFailure("theta-ratio verification needs eps")
    return TorusParams.theta_ratio(sig, mod, pts, eps)


def run_verify(req: VerifyRequest) -> VerifyResponse:
    state = _verify_state(req)
    sig = state.sig
    word = _checked_word(req.word, sig)
    reports: dict = {}
    passed = True

    if "word" in req.checks:
        rep = verify_word(word, state, probes=req.probes, seed=req.seed,
                          tol=req.tol, include_timing=req.timing)
        reports["word"] = jsonio.to_jsonable(rep)
        passed = passed and rep.passed

    if req.compare is not None:
        other = _checked_word(req.compare, sig)
        rep_a = verify_word(word, state, probes=req.probes, seed=req.seed,
                            tol=req.tol, include_timing=req.timing)
        rep_b = verify_word(other, state, probes=req.probes, seed=req.seed,
                            tol=req.tol, include_timing=req.timing)
        end_a, _ = word_with_shifts(word, state)
        end_b, _ = word_with_shifts(other, state)
        dist = max(lattice_dist(a, b, state.modulus)
                   for a, b in zip(end_a.u, end_b.u))
        if state.variant == "theta_ratio":
            dist = max(dist, lattice_dist(end_a.eps, end_b.eps, state.modulus))
        equal = bool(dist < 1e-8 and rep_a.passed and rep_b.passed)
        reports["compare"] = {
            "word": list(word), "other": list(other),
            "state_distance": dist, "equal": equal,
            "word_report": jsonio.to_jsonable(rep_a),
            "other_report": jsonio.to_jsonable(rep_b)}
        passed = passed and equal

    if "decomposition" in req.checks:
        case = ("weierstrass_cremona" if state.variant == "weierstrass"
                else "theta_ratio_base_swap")
        rep = verify_g_decomposition(case, state)
        reports["decomposition"] = jsonio.to_jsonable(rep)
        passed = passed and rep.passed

    if "prop32" in req.checks:
        if state.variant != "theta_ratio":
            raise ParseFailure("prop32 check needs a theta-ratio state")
        rng = np.random.default_rng(req.seed + 1)
        shift = complex(rng.random(), 0) * 0.2 + complex(rng.random()) * 0.2j
        other = TorusParams.theta_ratio(
            sig, state.modulus, [z + shift for z in state.u],
            state.eps + 0.1 * shift)
        rep = verify_prop32(state.embedding(), other.embedding(), seed=req.seed)
        reports["prop32"] = jsonio.to_jsonable(rep)
        passed = passed and rep.passed

    return VerifyResponse(passed=passed, reports=reports)
