"""Numerics on the torus T = C/(Z + Z tau).

Provides the odd theta function [z] (classical theta_1 normalization, simple
zeros exactly on the lattice), Weierstrass p and its first three derivatives,
two degree-(n+1) embeddings T -> P^n (Weierstrass derivatives and the
theta-ratio form with extra parameter eps), translation recovery between
embeddings, and argument-principle zero counting for hyperplane sections.

All formulas consumed downstream are invariant under rescaling of [z]; the
theta_1 normalization is pinned only for reproducibility.  Documented domain:
Im tau >= 0.2 (the nome is ill-conditioned below that).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError, PoleError, SolveError

TOL_TORUS = 1e-8
TOL_POLE = 1e-10
_SERIES_EPS = 1e-18     # term cutoff relative to running max
_SERIES_MAX = 200

PI = math.pi


class TorusModulus:
    """Lattice Z + Z tau with cached nome and Weierstrass invariants."""

    def __init__(self, tau: complex):
        tau = complex(tau)
        if not (math.isfinite(tau.real) and math.isfinite(tau.imag)):
            raise DomainError("tau must be finite")
        if tau.imag <= 0:
            raise DomainError(f"Im tau must be positive, got {tau.imag}")
        self.tau = tau
        self.q = cmath.exp(1j * PI * tau)

    def __repr__(self):
        return f"TorusModulus(tau={self.tau})"

    @cached_property
    def wp_const(self) -> complex:
        # c(tau) = theta'''(0) / (3 theta'(0)) kills the constant Laurent
        # term of -(log theta)'' so the result is the true Weierstrass p
        d1 = _theta_series(1, 0.0 + 0.0j, self.q)
        d3 = _theta_series(3, 0.0 + 0.0j, self.q)
        return d3 / (3.0 * d1)

    @cached_property
    def g2(self) -> complex:
        return (4.0 / 3.0) * PI ** 4 * self._eisenstein(4)

    @cached_property
    def g3(self) -> complex:
        return (8.0 / 27.0) * PI ** 6 * self._eisenstein(6)

    def _eisenstein(self, weight: int) -> complex:
        qq = cmath.exp(2j * PI * self.tau)
        coeff = {4: 240.0, 6: -504.0}[weight]
        power = weight - 1
        total = 0.0 + 0.0j
        qj = 1.0 + 0.0j
        for j in range(1, _SERIES_MAX):
            qj *= qq
            term = (j ** power) * qj / (1.0 - qj)
            total += term
            if abs(term) < _SERIES_EPS:
                break
        return 1.0 + coeff * total


def reduce_coords(z: complex, mod: TorusModulus) -> tuple[complex, int, int]:
    """z = z0 + a + b*tau with |Re z0| <= 1/2, |Im z0| <= Im(tau)/2."""
    z = complex(z)
    b = int(round(z.imag / mod.tau.imag))
    zp = z - b * mod.tau
    a = int(round(zp.real))
    return zp - a, a, b


def reduce_mod_lattice(z: complex, mod: TorusModulus) -> complex:
    return reduce_coords(z, mod)[0]


def lattice_dist(z: complex, w: complex, mod: TorusModulus) -> float:
    """Distance from z - w to the nearest lattice point (9-cell search)."""
    d0, _, _ = reduce_coords(complex(z) - complex(w), mod)
    best = math.inf
    for a in (-1, 0, 1):
        for b in (-1, 0, 1):
            best = min(best, abs(d0 - a - b * mod.tau))
    return best


def torus_eq(z: complex, w: complex, mod: TorusModulus, tol: float = TOL_TORUS) -> bool:
    return lattice_dist(z, w, mod) < tol


# ---------------------------------------------------------------------------
# theta
# ---------------------------------------------------------------------------

def _theta_series(order: int, z0: complex, q: complex) -> complex:
    """d^order/dz^order of 2 sum (-1)^k q^((k+1/2)^2) sin((2k+1) pi z) at
    reduced z0.  Valid orders 0..3."""
    total = 0.0 + 0.0j
    running_max = 0.0
    sign = 1.0
    for k in range(_SERIES_MAX):
        w = (2 * k + 1) * PI
        amp = 2.0 * sign * q ** ((k + 0.5) ** 2)
        if order == 0:
            term = amp * cmath.sin(w * z0)
        elif order == 1:
            term = amp * w * cmath.cos(w * z0)
        elif order == 2:
            term = -amp * w * w * cmath.sin(w * z0)
        elif order == 3:
            term = -amp * w ** 3 * cmath.cos(w * z0)
        else:
            raise ValueError(f"theta derivative order {order} not supported (0..3)")
        total += term
        running_max = max(running_max, abs(term))
        if k >= 2 and abs(term) < _SERIES_EPS * max(running_max, 1e-300):
            break
        sign = -sign
    return total


def theta_d(order: int, z: complex, mod: TorusModulus) -> complex:
    """order-th derivative of [z]; quasi-periodicity is applied exactly so
    large arguments stay accurate (the prefactor may overflow for huge
    Im z, as the function itself does)."""
    z0, a, b = reduce_coords(z, mod)
    if a == 0 and b == 0:
        return _theta_series(order, z0, mod.q)
    # theta(z0 + a + b tau) = C exp(L z0) theta(z0), constants in z0:
    C = (-1) ** ((a + b) % 2) * cmath.exp(-1j * PI * mod.tau * b * b)
    L = -2j * PI * b
    E = C * cmath.exp(L * z0)
    vals = [_theta_series(j, z0, mod.q) for j in range(order + 1)]
    binom = {0: (1,), 1: (1, 1), 2: (1, 2, 1), 3: (1, 3, 3, 1)}[order]
    acc = 0.0 + 0.0j
    for j in range(order + 1):
        acc += binom[j] * L ** (order - j) * vals[j]
    return E * acc


def theta(z: complex, mod: TorusModulus) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("theta argument must be finite")
    return theta_d(0, z, mod)


def log_theta(z: complex, mod: TorusModulus) -> complex:
    """log [z] with the quasi-period factors taken exactly in log space;
    returns -inf + 0j on the lattice so exp gives exact zero."""
    z0, a, b = reduce_coords(z, mod)
    if z0 == 0:
        return complex(-math.inf, 0.0)
    val = _theta_series(0, z0, mod.q)
    if val == 0:
        return complex(-math.inf, 0.0)
    factor = 1j * PI * (a + b) - 1j * PI * mod.tau * b * b - 2j * PI * b * z0
    return cmath.log(val) + factor


# ---------------------------------------------------------------------------
# Weierstrass p
# ---------------------------------------------------------------------------

def wp(u: complex, mod: TorusModulus, order: int = 0, tol_pole: float = TOL_POLE) -> complex:
    """p and derivatives: orders 0,1 from -(log theta)'' and its derivative,
    orders 2,3 from the differential equation."""
    if order not in (0, 1, 2, 3):
        raise ValueError(f"wp order {order} not supported (0..3)")
    z0, _, _ = reduce_coords(complex(u), mod)
    if abs(z0) < tol_pole:
        raise PoleError(f"wp evaluated within {tol_pole} of a lattice point")
    t0 = _theta_series(0, z0, mod.q)
    t1 = _theta_series(1, z0, mod.q)
    t2 = _theta_series(2, z0, mod.q)
    r1 = t1 / t0
    p = -(t2 / t0 - r1 * r1) + mod.wp_const
    if order == 0:
        return p
    t3 = _theta_series(3, z0, mod.q)
    p1 = -(t3 / t0 - 3.0 * t1 * t2 / (t0 * t0) + 2.0 * r1 ** 3)
    if order == 1:
        return p1
    if order == 2:
        return 6.0 * p * p - mod.g2 / 2.0
    return 12.0 * p * p1


# ---------------------------------------------------------------------------
# embeddings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EllipticEmbedding:
    """Degree-(n+1) embedding T -> P^n.

    variant "weierstrass": u -> (1 : p(u) : p'(u) : ... : p^(n-1)(u)), with
    the lattice point mapped to (0 : ... : 0 : 1).
    variant "theta_ratio": coordinates are the cleared products
    f_k(u) = [u-u_k-eps] prod_{j<=n+1, j!=k} [u-u_j]; the k-th base point
    maps exactly to the k-th coordinate point.
    """

    n: int
    modulus: TorusModulus
    variant: str
    base_u: tuple = ()
    eps: complex = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("embedding dimension n must be >= 1")
        if self.variant == "theta_ratio":
            if len(self.base_u) != self.n + 1:
                raise DomainError(
                    f"theta_ratio embedding needs {self.n + 1} base points, got {len(self.base_u)}")
            object.__setattr__(self, "base_u", tuple(complex(u) for u in self.base_u))
            object.__setattr__(self, "eps", complex(self.eps))
        elif self.variant != "weierstrass":
            raise DomainError(f"unknown embedding variant {self.variant!r}")

    # factor arguments of the k-th cleared theta-ratio coordinate
    def _factor_shifts(self, k: int) -> list[complex]:
        shifts = [self.base_u[k] + self.eps]
        shifts.extend(self.base_u[j] for j in range(self.n + 1) if j != k)
        return shifts

    def embed(self, u: complex) -> np.ndarray:
        """Homogeneous coordinates normalized to max-modulus 1."""
        u = complex(u)
        if self.variant == "weierstrass":
            z0, _, _ = reduce_coords(u, self.modulus)
            if abs(z0) < TOL_POLE:
                out = np.zeros(self.n + 1, dtype=complex)
                out[-1] = 1.0
                return out
            coords = [1.0 + 0.0j]
            coords.extend(wp(u, self.modulus, order=j) for j in range(self.n))
            col = np.array(coords, dtype=complex)
        else:
            logs = []
            for k in range(self.n + 1):
                acc = 0.0 + 0.0j
                for a in self._factor_shifts(k):
                    lt = log_theta(u - a, self.modulus)
                    if lt.real == -math.inf:
                        acc = complex(-math.inf, 0.0)
                        break
                    acc += lt
                logs.append(acc)
            shift = max(l.real for l in logs)
            if shift == -math.inf:
                raise PoleError("theta_ratio embedding degenerate at this point")
            col = np.array([0.0 if l.real == -math.inf else cmath.exp(l - shift)
                            for l in logs], dtype=complex)
        piv = col[int(np.argmax(np.abs(col)))]
        return col / piv

    def embed_jet(self, u: complex) -> tuple[np.ndarray, np.ndarray]:
        """(coordinates, d/du coordinates) in a common (unnormalized) scale."""
        u = complex(u)
        if self.variant == "weierstrass":
            if self.n > 3:
                raise DomainError("weierstrass jet supported for n <= 3 (wp orders 0..3)")
            x = [1.0 + 0.0j] + [wp(u, self.modulus, order=j) for j in range(self.n)]
            dx = [0.0 + 0.0j] + [wp(u, self.modulus, order=j + 1) for j in range(self.n)]
            return np.array(x, dtype=complex), np.array(dx, dtype=complex)
        logs, dlogs = [], []
        for k in range(self.n + 1):
            acc = 0.0 + 0.0j
            dacc = 0.0 + 0.0j
            for a in self._factor_shifts(k):
                acc += log_theta(u - a, self.modulus)
                dacc += theta_d(1, u - a, self.modulus) / theta_d(0, u - a, self.modulus)
            logs.append(acc)
            dlogs.append(dacc)
        shift = max(l.real for l in logs)
        x = np.array([cmath.exp(l - shift) for l in logs], dtype=complex)
        dx = x * np.array(dlogs, dtype=complex)
        return x, dx

    def base_point_v(self) -> complex:
        """v with (n+1)[v] linearly equivalent to a hyperplane section; the
        principal value of the division, before any lattice reduction."""
        if self.variant == "weierstrass":
            return 0.0 + 0.0j
        return (self.eps + sum(self.base_u)) / (self.n + 1)

    def first_coordinate_zeros(self) -> list[complex]:
        """Zeros of the cleared first coordinate in one period cell."""
        if self.variant == "weierstrass":
            return [0.0 + 0.0j] * (self.n + 1)
        zeros = [self.base_u[0] + self.eps]
        zeros.extend(self.base_u[1: self.n + 1])
        return [reduce_mod_lattice(z, self.modulus) for z in zeros]


def translation_between(zeros_src, zeros_dst, mod: TorusModulus) -> complex:
    """a = (sum dst - sum src)/(n+1), principal branch, lattice-reduced.
    Determined only up to (n+1)-torsion; any branch extends to a projective
    map of the degree-(n+1) image."""
    zeros_src = list(zeros_src)
    zeros_dst = list(zeros_dst)
    if len(zeros_src) != len(zeros_dst):
        raise ValueError("zero lists must have equal length")
    a = (sum(zeros_dst) - sum(zeros_src)) / len(zeros_src)
    return reduce_mod_lattice(a, mod)


def invert_embedding(emb: EllipticEmbedding, target: np.ndarray, t0: complex,
                     tol: float = 1e-12, maxit: int = 40) -> complex:
    """Newton solve for t with embed(t) projectively equal to target,
    starting from t0.  Works on the cross-product equation of the two
    largest target coordinates, so scaling of target is irrelevant."""
    y = np.asarray(target, dtype=complex).ravel()
    idx = np.argsort(-np.abs(y))
    i, j = int(idx[0]), int(idx[1])
    t = complex(t0)
    for _ in range(maxit):
        x, dx = emb.embed_jet(t)
        h = x[i] * y[j] - x[j] * y[i]
        dh = dx[i] * y[j] - dx[j] * y[i]
        if dh == 0:
            raise SolveError("embedding inversion hit a critical point")
        step = h / dh
        t -= step
        if abs(step) < tol:
            break
    else:
        raise SolveError("embedding inversion did not converge")
    from .configuration import projective_residual
    if projective_residual(emb.embed(t), y) > 1e-6:
        raise SolveError("embedding inversion converged to a wrong branch")
    return t


# ---------------------------------------------------------------------------
# hyperplane sections: argument-principle zero count and zero sum
# ---------------------------------------------------------------------------

@dataclass
class SectionZeroData:
    count: float            # boundary winding / 2 pi, should be ~ n+1
    zero_sum: complex       # sum of zeros inside the cell (mod lattice)
    corner: complex


def _section_eval(emb: EllipticEmbedding, coeffs: np.ndarray, z: complex) -> tuple[complex, float]:
    """H(embed(z)) in split form value * exp(scale), scale real.

    Both variants are cleared to entire functions F with F(z+1) = c F(z) and
    F(z+tau) = c' exp(-2 pi i (n+1) z) F(z), so the cell contains exactly
    n+1 zeros for generic coefficients.
    """
    if emb.variant == "weierstrass":
        lt = log_theta(z, emb.modulus)
        poly = coeffs[0]
        for j in range(1, emb.n + 1):
            poly = poly + coeffs[j] * wp(z, emb.modulus, order=j - 1)
        full = (emb.n + 1) * lt
        return poly * cmath.exp(1j * full.imag), full.real
    logs = []
    for k in range(emb.n + 1):
        acc = 0.0 + 0.0j
        for a in emb._factor_shifts(k):
            acc += log_theta(z - a, emb.modulus)
        logs.append(acc)
    shift = max(l.real for l in logs)
    val = 0.0 + 0.0j
    for k in range(emb.n + 1):
        val += coeffs[k] * cmath.exp(logs[k] - shift)
    return val, shift


def _edge_log_delta(emb, coeffs, start: complex, stop: complex, samples: int):
    """Continuous change of log F along a segment, via principal-log ratios
    of the split representation.  Raises if sampling is too coarse."""
    zs = [start + (stop - start) * (k / samples) for k in range(samples + 1)]
    vals = [_section_eval(emb, coeffs, z) for z in zs]
    total = 0.0 + 0.0j
    for (v0, s0), (v1, s1) in zip(vals, vals[1:]):
        if v0 == 0 or v1 == 0:
            raise SolveError("section zero on integration contour")
        ratio = v1 / v0
        if abs(cmath.phase(ratio)) > 2.5:
            raise SolveError("contour sampling too coarse")
        total += cmath.log(ratio) + (s1 - s0)
    return total


def section_zero_data(emb: EllipticEmbedding, coeffs, corner: complex | None = None,
                      samples: int = 256) -> SectionZeroData:
    """Zero count (winding) and zero sum of u -> H(embed(u)) over one cell.

    The sum uses only the bottom and left edges: quasi-periodicity pairs
    opposite edges exactly, leaving
      S = (-tau dLog_bottom + dLog_left)/(2 pi i) + (n+1)(z0 + 1/2 + tau)
    for corner z0.
    """
    coeffs = np.asarray(coeffs, dtype=complex).ravel()
    if coeffs.shape != (emb.n + 1,):
        raise ValueError(f"need {emb.n + 1} section coefficients")
    tau = emb.modulus.tau
    base = corner if corner is not None else (-0.2471 - 0.1938 * tau)
    last_err = None
    for attempt in range(6):
        z0 = base + attempt * (0.013 + 0.017 * tau)
        nsamp = samples * (2 ** min(attempt, 3))
        try:
            d_bottom = _edge_log_delta(emb, coeffs, z0, z0 + 1, nsamp)
            d_right = _edge_log_delta(emb, coeffs, z0 + 1, z0 + 1 + tau, nsamp)
            d_top = _edge_log_delta(emb, coeffs, z0 + 1 + tau, z0 + tau, nsamp)
            d_left = _edge_log_delta(emb, coeffs, z0 + tau, z0, nsamp)
        except SolveError as exc:
            last_err = exc
            continue
        winding = (d_bottom + d_right + d_top + d_left).imag / (2.0 * PI)
        r = -(emb.n + 1)   # exponent of exp(2 pi i r z) in the tau-period factor
        s = (-tau * d_bottom - d_left) / (2j * PI) - r * (z0 + 0.5 + tau)
        return SectionZeroData(count=float(winding), zero_sum=s, corner=z0)
    raise SolveError(f"zero-count contour failed after retries: {last_err}")
