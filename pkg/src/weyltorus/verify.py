"""End-to-end checks that the geometric action equals the torus prediction.

verify_word builds the point configuration from an embedded state, pushes it
through the generators geometrically, and independently transports the state
on the torus side; the two must agree up to one projective map G, which is
solved from the marked columns and then validated on random fiber probes
that never enter the solve.

verify_g_decomposition reproduces the closed-form factorizations G = G2 G1
of the two distinguished generators against the solved G, and verify_prop32
checks that any two degree-(n+1) embeddings differ by a translation plus a
projective map, with the translation read off hyperplane-section zero sums.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .configuration import (PointConfig, ProjectiveMap, apply_word,
                            projective_residual, solve_pgl)
from .elliptic import (EllipticEmbedding, TorusModulus, invert_embedding,
                       lattice_dist, reduce_mod_lattice, section_zero_data,
                       theta, translation_between)
from .errors import DegenerateConfigError, DomainError, SolveError
from .lattice import check_word
from .torus_action import TorusParams, word_with_shifts, weierstrass_step, theta_ratio_step


def matrix_projective_residual(a: np.ndarray, b: np.ndarray) -> float:
    """Relative distance between matrices up to a global scalar."""
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    lam = np.vdot(a, b) / np.vdot(a, a)
    return float(np.linalg.norm(b - lam * a) / np.linalg.norm(b))


def random_torus_point(rng, mod: TorusModulus, avoid=(), min_dist: float = 0.02) -> complex:
    """Uniform point of the period cell, resampled away from `avoid`."""
    for _ in range(200):
        t = complex(rng.random()) + complex(rng.random()) * mod.tau
        if all(lattice_dist(t, a, mod) > min_dist for a in avoid):
            return t
    raise SolveError("could not sample a point clear of the avoid set")


@dataclass
class VerificationReport:
    word: list
    variant: str
    n: int
    m: int
    tau: complex
    probes: int
    seed: int | None
    passed: bool
    residual: float                 # max fiber-probe residual
    solve_residual: float           # held-out marked-column residual
    shifts: list = field(default_factory=list)
    shift_total: complex = 0.0
    measured_shifts: list = field(default_factory=list)
    g_matrix: list | None = None
    failure: str | None = None
    elapsed: float | None = None


def _failed(word, params, probes, seed, msg, t0, include_timing) -> VerificationReport:
    return VerificationReport(
        word=list(word), variant=params.variant, n=params.sig.n, m=params.sig.m,
        tau=params.modulus.tau, probes=probes, seed=seed, passed=False,
        residual=math.inf, solve_residual=math.inf, failure=msg,
        elapsed=(time.perf_counter() - t0) if include_timing else None)


def verify_word(word, params: TorusParams, probes: int = 3, seed: int | None = 0,
                tol: float = 1e-6, include_timing: bool = False,
                measure_shift: bool = True) -> VerificationReport:
    """Check one word end to end; degeneracies yield a failed report."""
    t_start = time.perf_counter()
    if probes < 1:
        raise ValueError("need at least one fiber probe")
    sig = params.sig
    word = check_word(word, sig)
    emb = params.embedding()
    rng = np.random.default_rng(seed)
    probe_pts = [random_torus_point(rng, params.modulus, avoid=params.u)
                 for _ in range(probes)]

    cfg = PointConfig(sig, np.column_stack([emb.embed(u) for u in params.u]),
                      np.column_stack([emb.embed(t) for t in probe_pts]))
    try:
        geo = apply_word(word, cfg)
    except DegenerateConfigError as exc:
        msg = f"degenerate configuration at word prefix {list(exc.prefix)}: {exc}"
        return _failed(word, params, probes, seed, msg, t_start, include_timing)

    try:
        state_after, shifts = word_with_shifts(word, params)
    except DomainError as exc:
        return _failed(word, params, probes, seed,
                       f"torus state degenerated: {exc}", t_start, include_timing)
    emb_after = state_after.embedding()
    s_total = sum(shifts) if shifts else 0.0 + 0.0j
    predicted = [emb_after.embed(u) for u in state_after.u]

    try:
        gmap, solve_res = solve_pgl(
            [geo.matrix[:, j] for j in range(sig.m)], predicted, tol=math.inf)
    except SolveError as exc:
        return _failed(word, params, probes, seed,
                       f"projective solve failed: {exc}", t_start, include_timing)

    residual = 0.0
    measured = []
    for r, t in enumerate(probe_pts):
        mapped = gmap.matrix @ geo.fiber[:, r]
        target = emb_after.embed(t - s_total)
        residual = max(residual, projective_residual(mapped, target))
        if measure_shift:
            try:
                t_back = invert_embedding(emb_after, mapped, t - s_total)
                measured.append(reduce_mod_lattice(t - t_back, params.modulus))
            except SolveError:
                measured.append(None)

    passed = residual < tol and solve_res < tol
    return VerificationReport(
        word=list(word), variant=params.variant, n=sig.n, m=sig.m,
        tau=params.modulus.tau, probes=probes, seed=seed, passed=passed,
        residual=residual, solve_residual=solve_res, shifts=list(shifts),
        shift_total=s_total, measured_shifts=measured,
        g_matrix=gmap.normalized().tolist(),
        elapsed=(time.perf_counter() - t_start) if include_timing else None)


# ---------------------------------------------------------------------------
# closed-form G = G2 G1 factorizations
# ---------------------------------------------------------------------------

@dataclass
class DecompositionReport:
    case: str
    passed: bool
    match_residual: float
    solve_residual: float
    g_solved: list | None = None
    g_explicit: list | None = None
    failure: str | None = None


def _solve_generator_g(g: int, params: TorusParams):
    """Geometric action of one generator vs predicted columns; returns
    (solved map, residual, state after)."""
    emb = params.embedding()
    cfg = PointConfig(params.sig,
                      np.column_stack([emb.embed(u) for u in params.u]))
    geo = apply_word([g], cfg)
    if params.variant == "weierstrass":
        state_after, _ = weierstrass_step(g, params)
    else:
        state_after = theta_ratio_step(g, params)
    emb_after = state_after.embedding()
    predicted = [emb_after.embed(u) for u in state_after.u]
    gmap, res = solve_pgl([geo.matrix[:, j] for j in range(params.sig.m)],
                          predicted, tol=math.inf)
    return gmap, res, state_after


def verify_g_decomposition(case: str, params: TorusParams,
                           tol: float = 1e-7) -> DecompositionReport:
    """Compare the closed-form G2 G1 of a distinguished generator with the
    independently solved G, entrywise up to a scalar."""
    n = params.sig.n
    mod = params.modulus
    try:
        if case == "weierstrass_cremona":
            if params.variant != "weierstrass":
                raise DomainError("weierstrass_cremona needs a Weierstrass state")
            emb = params.embedding()
            gmap, solve_res, state_after = _solve_generator_g(0, params)
            _, s = weierstrass_step(0, params)
            frame_old = np.column_stack([emb.embed(u) for u in params.u[: n + 1]])
            # G1: coordinates of the inverse frame map, as minors against the
            # last coordinate direction
            dets = []
            e_last = np.zeros(n + 1, dtype=complex)
            e_last[-1] = 1.0
            for k in range(n + 1):
                mat = frame_old.copy()
                mat[:, k] = e_last
                dets.append(np.linalg.det(mat))
            g1 = np.diag(np.array(dets, dtype=complex))
            # G2: rescale the new frame so the shifted origin lands correctly
            frame_new = np.column_stack([emb.embed(u) for u in state_after.u[: n + 1]])
            w = np.linalg.solve(frame_new, emb.embed(-s))
            g2 = frame_new @ np.diag(w)
            explicit = g2 @ g1
        elif case == "theta_ratio_base_swap":
            if params.variant != "theta_ratio":
                raise DomainError("theta_ratio_base_swap needs a theta-ratio state")
            gmap, solve_res, _ = _solve_generator_g(n + 1, params)
            u = params.u
            eps = params.eps
            th = lambda z: theta(z, mod)
            d1 = np.ones(n + 1, dtype=complex)
            for k in range(n):
                d1[k] = -th(u[n + 1] - u[k]) / th(u[n + 1] - u[k] - eps)
            m1 = np.eye(n + 1, dtype=complex)
            for k in range(n):
                m1[k, n] = -th(u[n + 1] - u[k] - eps) * th(u[n + 1] - u[n]) / (
                    th(u[n + 1] - u[k]) * th(u[n + 1] - u[n] - eps))
            m1[n, n] = th(u[n + 1] - u[n]) / th(u[n + 1] - u[n] - eps)
            g1 = np.diag(d1) @ m1
            d2 = np.empty(n + 1, dtype=complex)
            for k in range(n):
                d2[k] = th(u[n + 1] - u[k] - eps) / th(u[n] - u[k])
            d2[n] = th(-eps) / th(u[n] - u[n + 1])
            g2 = np.diag(d2)
            explicit = g2 @ g1
        else:
            raise ValueError(f"unknown decomposition case {case!r}")
    except (DegenerateConfigError, SolveError, DomainError) as exc:
        return DecompositionReport(case=case, passed=False, match_residual=math.inf,
                                   solve_residual=math.inf, failure=str(exc))
    match = matrix_projective_residual(explicit, gmap.matrix)
    return DecompositionReport(
        case=case, passed=bool(match < tol and solve_res < tol),
        match_residual=match, solve_residual=solve_res,
        g_solved=gmap.normalized().tolist(),
        g_explicit=ProjectiveMap(explicit).normalized().tolist())


# ---------------------------------------------------------------------------
# translation between two embeddings
# ---------------------------------------------------------------------------

@dataclass
class TranslationReport:
    translation: complex
    passed: bool
    residual: float
    zero_count: float | None = None
    failure: str | None = None


def verify_prop32(emb_a: EllipticEmbedding, emb_b: EllipticEmbedding,
                  map_b: ProjectiveMap | None = None, holdout: int = 20,
                  seed: int | None = 0, tol: float = 1e-7) -> TranslationReport:
    """Recover the translation a between two embeddings from zero sums of
    their first coordinates, then validate G on held-out samples.

    a is only pinned modulo (n+1)-torsion; any branch extends to a
    projective map of the degree-(n+1) image, so the principal branch is
    used throughout.
    """
    if emb_a.n != emb_b.n:
        raise DomainError("embedding dimensions differ")
    if abs(emb_a.modulus.tau - emb_b.modulus.tau) > 1e-12:
        raise DomainError("embeddings must share the modulus")
    n = emb_a.n
    mod = emb_a.modulus
    count = None
    try:
        if map_b is None:
            a = translation_between(emb_a.first_coordinate_zeros(),
                                    emb_b.first_coordinate_zeros(), mod)
        else:
            data = section_zero_data(emb_b, np.asarray(map_b.matrix)[0, :])
            count = data.count
            s_a = sum(emb_a.first_coordinate_zeros())
            a = reduce_mod_lattice((data.zero_sum - s_a) / (n + 1), mod)

        rng = np.random.default_rng(seed)
        avoid = list(emb_a.base_u) + [z - a for z in emb_b.base_u] + [0.0, -a]
        pts = [random_torus_point(rng, mod, avoid=avoid, min_dist=0.03)
               for _ in range(n + 2 + holdout)]
        def dst(t):
            col = emb_b.embed(t + a)
            return (map_b.matrix @ col) if map_b is not None else col
        gmap, _ = solve_pgl([emb_a.embed(t) for t in pts[: n + 2]],
                            [dst(t) for t in pts[: n + 2]], tol=math.inf)
        residual = 0.0
        for t in pts[n + 2:]:
            residual = max(residual,
                           projective_residual(gmap.matrix @ emb_a.embed(t), dst(t)))
    except (SolveError, DegenerateConfigError) as exc:
        return TranslationReport(translation=0.0, passed=False, residual=math.inf,
                                 zero_count=count, failure=str(exc))
    return TranslationReport(translation=a, passed=bool(residual < tol),
                             residual=residual, zero_count=count)
