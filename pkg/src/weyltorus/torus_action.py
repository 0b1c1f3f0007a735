"""Parameter dynamics on the torus side.

A word in the group acts on the marked points u_1..u_m by an affine map read
off the pullback coefficients b_i^j, while the base value v transforms only
through its (n+1)-fold (n+1)v.  Generator-level closed forms fix the torsion
branch: the theta-ratio state absorbs every shift into (eps, u) so s = 0,
and the Weierstrass state re-normalizes u <- u' - s to keep v = 0.

All u, eps, v are plain complex representatives, never reduced mid-word;
lattice reduction happens only inside theta evaluation and comparisons.
"""
from __future__ import annotations

from dataclasses import dataclass

from .elliptic import EllipticEmbedding, TorusModulus, lattice_dist
from .errors import DomainError
from .lattice import Signature, b_rows, check_word, word_pullback

_MIN_SEP = 1e-9


@dataclass(frozen=True)
class TorusParams:
    """State (u_1..u_m; v; optional eps) over a fixed modulus.

    eps is None for the Weierstrass variant.  v is stored as the principal
    representative; the torsion-safe quantity is v_np1 = (n+1)v, which for
    the theta-ratio variant is recomputed exactly as eps + u_1 + ... + u_{n+1}.
    """

    sig: Signature
    modulus: TorusModulus
    u: tuple
    v: complex = 0.0
    eps: complex | None = None

    def __post_init__(self):
        u = tuple(complex(x) for x in self.u)
        if len(u) != self.sig.m:
            raise DomainError(f"need {self.sig.m} marked points, got {len(u)}")
        for i in range(len(u)):
            for j in range(i + 1, len(u)):
                if lattice_dist(u[i], u[j], self.modulus) < _MIN_SEP:
                    raise DomainError(
                        f"marked points {i + 1} and {j + 1} collide mod lattice")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", complex(self.v))
        if self.eps is not None:
            object.__setattr__(self, "eps", complex(self.eps))

    @property
    def variant(self) -> str:
        return "weierstrass" if self.eps is None else "theta_ratio"

    @property
    def v_np1(self) -> complex:
        """(n+1)v as an exact representative (no division round-trip)."""
        n = self.sig.n
        if self.eps is None:
            return (n + 1) * self.v
        return self.eps + sum(self.u[: n + 1])

    @classmethod
    def weierstrass(cls, sig: Signature, modulus: TorusModulus, u) -> "TorusParams":
        return cls(sig, modulus, tuple(u), v=0.0, eps=None)

    @classmethod
    def theta_ratio(cls, sig: Signature, modulus: TorusModulus, u, eps) -> "TorusParams":
        u = tuple(complex(x) for x in u)
        v = (complex(eps) + sum(u[: sig.n + 1])) / (sig.n + 1)
        return cls(sig, modulus, u, v=v, eps=eps)

    def embedding(self) -> EllipticEmbedding:
        if self.eps is None:
            return EllipticEmbedding(self.sig.n, self.modulus, "weierstrass")
        return EllipticEmbedding(self.sig.n, self.modulus, "theta_ratio",
                                 base_u=self.u[: self.sig.n + 1], eps=self.eps)


def predict_points(b, params: TorusParams) -> tuple[list, complex]:
    """Affine image of the state under pullback coefficients b.

    Returns (u'_1..u'_m, (n+1)v'); v' itself is only defined up to
    (n+1)-torsion, so the caller never divides.
      u_i'   = b_i^0 (n+1)v + sum_j b_i^j u_j
      (n+1)v' = b_0^0 (n+1)v + sum_j b_0^j u_j
    """
    m = params.sig.m
    if len(b) != m + 1:
        raise DomainError(f"coefficient table rank {len(b)} != {m + 1}")
    vn = params.v_np1
    u_new = []
    for i in range(1, m + 1):
        acc = b[i][0] * vn
        for j in range(1, m + 1):
            acc += b[i][j] * params.u[j - 1]
        u_new.append(acc)
    v_new = b[0][0] * vn
    for j in range(1, m + 1):
        v_new += b[0][j] * params.u[j - 1]
    return u_new, v_new


def predict_word(word, params: TorusParams) -> tuple[list, complex]:
    """predict_points for a whole word, coefficients from the exact lattice."""
    return predict_points(b_rows(word_pullback(word, params.sig)), params)


def shift_s(b, params: TorusParams) -> complex:
    """(n+1)s relative to an embedding that keeps the old v: the lattice-level
    shift (n+1)v' - (n+1)v, un-divided (torsion-ambiguous)."""
    _, v_new = predict_points(b, params)
    return v_new - params.v_np1


# ---------------------------------------------------------------------------
# generator-level closed forms
# ---------------------------------------------------------------------------

def _swap_u(u: tuple, k: int) -> tuple:
    out = list(u)
    out[k - 1], out[k] = out[k], out[k - 1]
    return tuple(out)


def theta_ratio_step(g: int, state: TorusParams) -> TorusParams:
    """One generator on the theta-ratio state; the branch choices make the
    residual translation s vanish identically."""
    if state.eps is None:
        raise DomainError("theta_ratio_step needs a theta-ratio state")
    check_word([g], state.sig)
    n = state.sig.n
    if g == 0:
        u = tuple(ui + state.eps if i < n + 1 else ui
                  for i, ui in enumerate(state.u))
        return TorusParams.theta_ratio(state.sig, state.modulus, u, -state.eps)
    if g == n + 1:
        eps = state.eps + state.u[n] - state.u[n + 1]
        return TorusParams.theta_ratio(state.sig, state.modulus,
                                       _swap_u(state.u, g), eps)
    return TorusParams.theta_ratio(state.sig, state.modulus,
                                   _swap_u(state.u, g), state.eps)


def theta_ratio_word(word, state: TorusParams) -> TorusParams:
    for g in check_word(word, state.sig):
        state = theta_ratio_step(g, state)
    return state


def weierstrass_step(g: int, params: TorusParams) -> tuple[TorusParams, complex]:
    """One generator on the Weierstrass state; returns (new state, s).

    Generator 0 shifts the frame points by -sum u_j and carries
    s = -(n-1)/(n+1) sum_{j<=n+1} u_j; the returned state has every u_i
    replaced by u_i' - s so v stays 0.  Swaps have s = 0.
    """
    if params.eps is not None:
        raise DomainError("weierstrass_step needs a Weierstrass state")
    check_word([g], params.sig)
    n = params.sig.n
    if g != 0:
        return TorusParams.weierstrass(params.sig, params.modulus,
                                       _swap_u(params.u, g)), 0.0 + 0.0j
    total = sum(params.u[: n + 1])
    s = -(n - 1) / (n + 1) * total
    u = tuple((ui - total if i < n + 1 else ui) - s
              for i, ui in enumerate(params.u))
    return TorusParams.weierstrass(params.sig, params.modulus, u), s


def weierstrass_word(word, params: TorusParams) -> tuple[TorusParams, list]:
    shifts = []
    for g in check_word(word, params.sig):
        params, s = weierstrass_step(g, params)
        shifts.append(s)
    return params, shifts


def step_with_shift(g: int, state: TorusParams) -> tuple[TorusParams, complex]:
    """Variant dispatch; theta-ratio shifts are identically zero."""
    if state.eps is None:
        return weierstrass_step(g, state)
    return theta_ratio_step(g, state), 0.0 + 0.0j


def word_with_shifts(word, state: TorusParams) -> tuple[TorusParams, list]:
    shifts = []
    for g in check_word(word, state.sig):
        state, s = step_with_shift(g, state)
        shifts.append(s)
    return state, shifts
