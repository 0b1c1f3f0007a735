"""End-to-end agreement checks: solved G, closed-form factorizations,
translation recovery, and the report/determinism contract."""
import numpy as np
import pytest

from weyltorus.elliptic import EllipticEmbedding, lattice_dist
from weyltorus.errors import DomainError
from weyltorus.configuration import ProjectiveMap
from weyltorus.jsonio import dumps, to_jsonable
from weyltorus.lattice import Signature
from weyltorus.torus_action import TorusParams, theta_ratio_step
from weyltorus.verify import (matrix_projective_residual, verify_g_decomposition,
                              verify_prop32, verify_word)

from conftest import random_state

SIG = Signature(2, 5)


def test_matrix_projective_residual():
    a = np.array([[1.0, 2.0], [3.0, 4.0]], dtype=complex)
    assert matrix_projective_residual(a, (2 - 1j) * a) < 1e-15
    assert matrix_projective_residual(a, a + np.array([[0, 0], [0, 1.0]])) > 1e-3


def test_identity_word(mod_generic):
    p = random_state(SIG, mod_generic, seed=1)
    rep = verify_word((), p, probes=2)
    assert rep.passed and rep.residual < 1e-12
    assert rep.shifts == [] and rep.shift_total == 0.0
    assert matrix_projective_residual(np.array(rep.g_matrix), np.eye(3)) < 1e-10
    for ms in rep.measured_shifts:
        assert lattice_dist(ms, 0.0, mod_generic) < 1e-8


@pytest.mark.parametrize("variant", ("theta_ratio", "weierstrass"))
def test_every_generator(variant, mod_generic):
    p = random_state(SIG, mod_generic, seed=2, variant=variant)
    for g in range(SIG.m):
        rep = verify_word((g,), p, probes=2, seed=3)
        assert rep.passed, (g, rep.failure, rep.residual)
        assert rep.residual < 1e-8 and rep.solve_residual < 1e-8


def test_random_word_both_variants(mod_i):
    for variant in ("theta_ratio", "weierstrass"):
        p = random_state(SIG, mod_i, seed=4, variant=variant)
        rep = verify_word((0, 3, 1, 0, 2), p, probes=3, seed=5)
        assert rep.passed, rep.failure
        assert rep.residual < 1e-6


def test_theta_gen0_g_is_identity(mod_generic):
    p = random_state(SIG, mod_generic, seed=6)
    rep = verify_word((0,), p, probes=2)
    assert rep.passed
    assert matrix_projective_residual(np.array(rep.g_matrix), np.eye(3)) < 1e-8
    assert rep.shift_total == 0.0
    for ms in rep.measured_shifts:
        assert lattice_dist(ms, 0.0, mod_generic) < 1e-8


def test_theta_swaps_permute_coordinates(mod_generic):
    p = random_state(SIG, mod_generic, seed=7)
    # swapping two frame points permutes the ratio coordinates
    rep = verify_word((1,), p, probes=2)
    perm = np.eye(3)[[1, 0, 2]]
    assert rep.passed
    assert matrix_projective_residual(np.array(rep.g_matrix), perm) < 1e-8
    # swapping two non-frame points leaves the embedding alone
    rep = verify_word((4,), p, probes=2)
    assert rep.passed
    assert matrix_projective_residual(np.array(rep.g_matrix), np.eye(3)) < 1e-8


def test_weierstrass_gen0_measured_shift(mod_generic):
    p = random_state(SIG, mod_generic, seed=8, variant="weierstrass")
    rep = verify_word((0,), p, probes=3, seed=9)
    assert rep.passed
    s_formula = -(SIG.n - 1) / (SIG.n + 1) * sum(p.u[: SIG.n + 1])
    assert rep.shifts == [s_formula]
    for ms in rep.measured_shifts:
        assert ms is not None
        assert lattice_dist(ms, s_formula, mod_generic) < 1e-8


def test_weierstrass_swaps_identity_g(mod_generic):
    p = random_state(SIG, mod_generic, seed=10, variant="weierstrass")
    for g in (1, 4):
        rep = verify_word((g,), p, probes=2)
        assert rep.passed and rep.shifts == [0.0]
        assert matrix_projective_residual(np.array(rep.g_matrix), np.eye(3)) < 1e-8


def test_verify_failure_is_reported_not_raised(mod_i):
    p0 = random_state(SIG, mod_i, seed=11)
    u = list(p0.u)
    u[3] = u[0] + p0.eps   # generator 0 sends u_1 onto u_4 exactly
    p = TorusParams.theta_ratio(SIG, mod_i, u, p0.eps)
    rep = verify_word((0,), p, probes=2)
    assert not rep.passed
    assert rep.failure is not None
    assert rep.residual == np.inf


def test_probe_validation(mod_i):
    p = random_state(SIG, mod_i, seed=12)
    with pytest.raises(ValueError):
        verify_word((0,), p, probes=0)


@pytest.mark.parametrize("case,variant", [
    ("weierstrass_cremona", "weierstrass"),
    ("theta_ratio_base_swap", "theta_ratio"),
])
def test_g_decompositions(case, variant, mod_generic):
    for seed in (13, 14, 15):
        p = random_state(SIG, mod_generic, seed=seed, variant=variant)
        rep = verify_g_decomposition(case, p)
        assert rep.passed, rep.failure
        assert rep.match_residual < 1e-7


def test_decomposition_variant_guard(mod_i):
    p = random_state(SIG, mod_i, seed=16)
    rep = verify_g_decomposition("weierstrass_cremona", p)
    assert not rep.passed and "Weierstrass" in rep.failure
    with pytest.raises(ValueError):
        verify_g_decomposition("no_such_case", p)


# ---------------------------------------------------------------------------
# translation between embeddings
# ---------------------------------------------------------------------------

def _theta_emb(mod, shift=0.0, eps=0.21 + 0.07j):
    base = (0.12 + 0.05j, 0.34 - 0.04j, 0.71 + 0.11j)
    return EllipticEmbedding(2, mod, "theta_ratio",
                             base_u=tuple(u + shift for u in base), eps=eps)


def test_prop32_same_embedding(mod_generic):
    emb = _theta_emb(mod_generic)
    rep = verify_prop32(emb, emb, seed=17)
    assert rep.passed
    assert rep.translation == 0.0
    assert rep.residual < 1e-10


def test_prop32_shifted_base(mod_generic):
    t0 = 0.13 - 0.07j
    rep = verify_prop32(_theta_emb(mod_generic), _theta_emb(mod_generic, shift=t0),
                        seed=18)
    assert rep.passed, rep.failure
    assert lattice_dist(rep.translation, t0, mod_generic) < 1e-10
    assert rep.residual < 1e-7


def test_prop32_with_projective_map(mod_generic):
    emb = _theta_emb(mod_generic)
    rng = np.random.default_rng(19)
    h = ProjectiveMap(np.eye(3) + 0.3 * (rng.standard_normal((3, 3))
                                         + 1j * rng.standard_normal((3, 3))))
    rep = verify_prop32(emb, emb, map_b=h, seed=20)
    assert rep.passed, rep.failure
    assert abs(rep.zero_count - 3) < 0.01
    # same bundle on both sides: the translation is pure (n+1)-torsion
    assert lattice_dist(3 * rep.translation, 0.0, mod_generic) < 1e-6


def test_prop32_across_variants(mod_generic):
    emb_w = EllipticEmbedding(2, mod_generic, "weierstrass")
    emb_t = _theta_emb(mod_generic)
    rep = verify_prop32(emb_w, emb_t, seed=21)
    assert rep.passed, rep.failure
    assert rep.residual < 1e-7
    # zero-sum bookkeeping: 3v of the ratio embedding, zeros of [z]^3 at 0
    v3 = emb_t.eps + sum(emb_t.base_u)
    assert lattice_dist(3 * rep.translation, v3, mod_generic) < 1e-9


def test_prop32_input_guards(mod_i, mod_generic):
    with pytest.raises(DomainError):
        verify_prop32(EllipticEmbedding(2, mod_i, "weierstrass"),
                      EllipticEmbedding(3, mod_i, "weierstrass"))
    with pytest.raises(DomainError):
        verify_prop32(EllipticEmbedding(2, mod_i, "weierstrass"),
                      EllipticEmbedding(2, mod_generic, "weierstrass"))


# ---------------------------------------------------------------------------
# report serialization contract
# ---------------------------------------------------------------------------

def test_reports_are_deterministic(mod_i):
    p = random_state(SIG, mod_i, seed=22)
    a = dumps(to_jsonable(verify_word((0, 2), p, probes=3, seed=5)))
    b = dumps(to_jsonable(verify_word((0, 2), p, probes=3, seed=5)))
    assert a == b
    c = dumps(to_jsonable(verify_word((0, 2), p, probes=3, seed=6)))
    assert a != c


def test_failed_report_serializes(mod_i):
    p0 = random_state(SIG, mod_i, seed=23)
    u = list(p0.u)
    u[3] = u[0] + p0.eps
    p = TorusParams.theta_ratio(SIG, mod_i, u, p0.eps)
    rep = verify_word((0,), p, probes=2)
    text = dumps(to_jsonable(rep))
    assert '"passed":false' in text
    assert "Infinity" not in text   # non-finite floats must not leak into JSON
