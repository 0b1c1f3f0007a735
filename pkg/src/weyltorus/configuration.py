"""Generator actions on point-configuration matrices, plus PGL utilities.

A configuration is an (n+1) x m complex matrix of homogeneous point columns,
optionally with extra "fiber" columns carrying general points of P^n along
for the ride.  Swaps exchange columns; the Cremona generator re-expresses
everything in the frame of n+1 chosen points and inverts coordinates
entrywise.  Columns are defined up to scale and are renormalized to
max-modulus 1 after each generator to stop exponent drift.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateConfigError, SolveError
from .lattice import Signature, check_word

TOL_DET = 1e-10          # scaled-minor genericity threshold
TOL_PROJECTIVE = 1e-8    # projective equality after normalization
TOL_ENTRY = 1e-13        # relative zero threshold before entrywise inversion


def normalize_column(col: np.ndarray) -> np.ndarray:
    """Divide by the max-modulus entry (first among ties); zero columns are errors."""
    idx = int(np.argmax(np.abs(col)))
    piv = col[idx]
    if piv == 0:
        raise DegenerateConfigError("zero column cannot be normalized")
    return col / piv


def projective_residual(a: np.ndarray, b: np.ndarray) -> float:
    """Sine of the Fubini-Study angle between homogeneous vectors (scale-free)."""
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        raise ValueError("zero vector has no projective class")
    a = a / na
    b = b / nb
    r = b - a * np.vdot(a, b)
    return float(np.linalg.norm(r))


@dataclass
class PointConfig:
    """Ordered point configuration with optional fiber columns.

    matrix: (n+1, m) complex; fiber: None, (n+1,) or (n+1, k) complex.
    Columns are homogeneous coordinates; genericity (all maximal minors
    nonzero) is checked on demand by genericity_check, not in the constructor.
    """

    sig: Signature
    matrix: np.ndarray
    fiber: np.ndarray | None = None

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.shape != (self.sig.n + 1, self.sig.m):
            raise ValueError(
                f"matrix shape {mat.shape} != {(self.sig.n + 1, self.sig.m)}")
        self.matrix = mat
        if self.fiber is not None:
            fib = np.asarray(self.fiber, dtype=complex)
            if fib.ndim == 1:
                fib = fib[:, None]
            if fib.shape[0] != self.sig.n + 1:
                raise ValueError(f"fiber rows {fib.shape[0]} != {self.sig.n + 1}")
            self.fiber = fib

    def normalized(self) -> "PointConfig":
        cols = np.column_stack([normalize_column(self.matrix[:, j])
                                for j in range(self.sig.m)])
        fib = None
        if self.fiber is not None:
            fib = np.column_stack([normalize_column(self.fiber[:, j])
                                   for j in range(self.fiber.shape[1])])
        return PointConfig(self.sig, cols, fib)

    def column(self, i: int) -> np.ndarray:
        """1-based point column."""
        if not 1 <= i <= self.sig.m:
            raise ValueError(f"column index {i} out of range 1..{self.sig.m}")
        return self.matrix[:, i - 1]


@dataclass
class ProjectiveMap:
    """Element of PGL(n+1): nonsingular matrix up to scalar."""

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("projective map must be square")
        scale = np.abs(mat).max()
        if scale == 0 or abs(np.linalg.det(mat / scale)) < 1e-14:
            raise SolveError("projective map is singular")
        self.matrix = mat

    def __call__(self, point: np.ndarray) -> np.ndarray:
        return normalize_column(self.matrix @ np.asarray(point, dtype=complex))

    def normalized(self) -> np.ndarray:
        """Matrix scaled so its max-modulus entry is 1 (canonical representative)."""
        flat = int(np.argmax(np.abs(self.matrix)))
        piv = self.matrix.flat[flat]
        return self.matrix / piv

    def inverse(self) -> "ProjectiveMap":
        return ProjectiveMap(np.linalg.inv(self.matrix))


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def swap(i: int, j: int, cfg: PointConfig) -> PointConfig:
    """Exchange point columns i and j (1-based); the fiber is untouched."""
    m = cfg.sig.m
    if not (1 <= i <= m and 1 <= j <= m) or i == j:
        raise ValueError(f"bad swap indices ({i},{j}) for m={m}")
    mat = cfg.matrix.copy()
    mat[:, [i - 1, j - 1]] = mat[:, [j - 1, i - 1]]
    fib = None if cfg.fiber is None else cfg.fiber.copy()
    return PointConfig(cfg.sig, mat, fib)


def _cremona_front(cfg: PointConfig) -> PointConfig:
    n, m = cfg.sig.n, cfg.sig.m
    front = cfg.matrix[:, : n + 1]
    scale = np.abs(front).max()
    if scale == 0 or abs(np.linalg.det(front / scale)) < TOL_DET:
        raise DegenerateConfigError("Cremona frame is singular")
    rest = cfg.matrix[:, n + 1:]
    b = np.linalg.solve(front, rest)
    cols = [np.eye(n + 1, dtype=complex)[:, k] for k in range(n + 1)]
    for j in range(b.shape[1]):
        col = b[:, j]
        if np.min(np.abs(col)) < TOL_ENTRY * np.max(np.abs(col)):
            raise DegenerateConfigError(
                f"point {n + 2 + j} lies on a coordinate hyperplane of the Cremona frame")
        cols.append(normalize_column(1.0 / col))
    fib = None
    if cfg.fiber is not None:
        xb = np.linalg.solve(front, cfg.fiber)
        out = []
        for j in range(xb.shape[1]):
            col = xb[:, j]
            if np.min(np.abs(col)) < TOL_ENTRY * np.max(np.abs(col)):
                raise DegenerateConfigError(
                    "fiber point lies on a coordinate hyperplane of the Cremona frame")
            out.append(normalize_column(1.0 / col))
        fib = np.column_stack(out)
    return PointConfig(cfg.sig, np.column_stack(cols), fib)


def cremona(indices, cfg: PointConfig) -> PointConfig:
    """Standard Cremona transformation in the frame of the chosen n+1 points.

    For indices (1..n+1) this solves the frame out of the matrix and inverts
    every entry outside the resulting identity block; other index sets are
    handled by conjugating with the column permutation that brings them to
    the front.
    """
    n, m = cfg.sig.n, cfg.sig.m
    idx = sorted(set(int(i) for i in indices))
    if len(idx) != n + 1:
        raise ValueError(f"cremona needs {n + 1} distinct indices, got {indices}")
    if idx[0] < 1 or idx[-1] > m:
        raise ValueError(f"cremona indices {idx} out of range 1..{m}")
    if idx == list(range(1, n + 2)):
        return _cremona_front(cfg)
    # conjugate by the permutation moving idx to the front, preserving the
    # relative order of the remaining columns
    others = [j for j in range(1, m + 1) if j not in idx]
    perm = idx + others            # perm[k] = source column of slot k+1
    mat = cfg.matrix[:, [j - 1 for j in perm]]
    moved = _cremona_front(PointConfig(cfg.sig, mat, cfg.fiber))
    inv = np.empty(m, dtype=int)
    for slot, src in enumerate(perm):
        inv[src - 1] = slot
    return PointConfig(cfg.sig, moved.matrix[:, inv], moved.fiber)


def apply_word(word, cfg: PointConfig) -> PointConfig:
    """Apply generators left to right: letter 0 is the front Cremona map,
    letter i >= 1 swaps points i, i+1.  Degeneracies abort with the failing
    word prefix attached."""
    word = check_word(word, cfg.sig)
    cur = cfg.normalized()
    for pos, g in enumerate(word):
        try:
            if g == 0:
                cur = cremona(range(1, cfg.sig.n + 2), cur)
            else:
                cur = swap(g, g + 1, cur)
        except DegenerateConfigError as exc:
            raise DegenerateConfigError(str(exc), prefix=word[: pos + 1]) from None
        cur = cur.normalized()
    return cur


# ---------------------------------------------------------------------------
# PGL solve and normal form
# ---------------------------------------------------------------------------

def solve_pgl(src, dst, tol: float = 1e-6) -> tuple[ProjectiveMap, float]:
    """Projective map G with G(src_k) proportional to dst_k.

    G is pinned by the first n+2 correspondences (frame plus unit point);
    the remaining pairs are used as a consistency check and their worst
    projective residual is returned.  Raises SolveError on degenerate
    position or when the extra correspondences disagree above `tol`.
    """
    src = [np.asarray(p, dtype=complex) for p in src]
    dst = [np.asarray(p, dtype=complex) for p in dst]
    if len(src) != len(dst):
        raise ValueError("src/dst length mismatch")
    n1 = src[0].shape[0]
    if len(src) < n1 + 1:
        raise SolveError(f"need at least {n1 + 1} correspondences, got {len(src)}")
    Ms = np.column_stack(src[:n1])
    Md = np.column_stack(dst[:n1])
    for name, M in (("source", Ms), ("destination", Md)):
        scale = np.abs(M).max()
        if scale == 0 or abs(np.linalg.det(M / scale)) < TOL_DET:
            raise SolveError(f"{name} frame is degenerate")
    c = np.linalg.solve(Ms, src[n1])
    d = np.linalg.solve(Md, dst[n1])
    if np.min(np.abs(c)) < TOL_ENTRY * np.max(np.abs(c)) or \
       np.min(np.abs(d)) < TOL_ENTRY * np.max(np.abs(d)):
        raise SolveError("unit point lies on a frame hyperplane")
    G = Md @ np.diag(d / c) @ np.linalg.inv(Ms)
    gmap = ProjectiveMap(G)
    residual = 0.0
    for k in range(n1 + 1, len(src)):
        residual = max(residual, projective_residual(G @ src[k], dst[k]))
    if residual > tol:
        raise SolveError(f"correspondences inconsistent: residual {residual:.3e} > {tol:.1e}")
    return gmap, residual


def normalize_frame(cfg: PointConfig) -> tuple[PointConfig, ProjectiveMap]:
    """Unique representative with columns 1..n+1 the identity and column n+2
    all ones; returns it with the projective map used.  Idempotent."""
    n, m = cfg.sig.n, cfg.sig.m
    front = cfg.matrix[:, : n + 1]
    scale = np.abs(front).max()
    if scale == 0 or abs(np.linalg.det(front / scale)) < TOL_DET:
        raise DegenerateConfigError("frame columns 1..n+1 are dependent")
    b = np.linalg.solve(front, cfg.matrix[:, n + 1])
    if np.min(np.abs(b)) < TOL_ENTRY * np.max(np.abs(b)):
        raise DegenerateConfigError("column n+2 lies on a frame hyperplane")
    G = np.diag(1.0 / b) @ np.linalg.inv(front)
    mat = G @ cfg.matrix
    fib = None if cfg.fiber is None else G @ cfg.fiber
    out = PointConfig(cfg.sig, mat, fib).normalized()
    return out, ProjectiveMap(G)


@dataclass
class GenericityReport:
    """Minimum scaled minor over all (n+1)-subsets of columns."""

    min_scaled_minor: float
    worst_indices: tuple
    passed: bool
    tol: float = TOL_DET


def genericity_check(cfg: PointConfig, tol: float = TOL_DET) -> GenericityReport:
    """Scan all C(m, n+1) maximal minors; scaled by the column norms so the
    verdict is scale-invariant.  Reports, never raises."""
    from itertools import combinations

    n, m = cfg.sig.n, cfg.sig.m
    norms = np.linalg.norm(cfg.matrix, axis=0)
    if np.any(norms == 0):
        j = int(np.argmin(norms))
        return GenericityReport(0.0, (j + 1,), False, tol)
    best = np.inf
    worst = ()
    for combo in combinations(range(m), n + 1):
        sub = cfg.matrix[:, combo]
        val = abs(np.linalg.det(sub)) / float(np.prod(norms[list(combo)]))
        if val < best:
            best = val
            worst = tuple(c + 1 for c in combo)
    return GenericityReport(float(best), worst, bool(best >= tol), tol)
