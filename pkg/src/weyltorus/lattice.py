"""Exact integer model of the blow-up bi-lattice and its Weyl group action.

The divisor lattice has basis (E, E_1, ..., E_m) and the curve lattice the
dual basis (e, e_1, ..., e_m), paired by

    <E, e> = 1,   <E_i, e_j> = -delta_ij,   <E, e_j> = <E_i, e> = 0.

Simple reflections are indexed by the alphabet {0, 1, ..., m-1}: letter 0 is
the Cremona reflection attached to the first n+1 points, letter i >= 1 the
transposition of points i, i+1.  The induced diagram is the tree
T_{2, n+1, m-n-1}: a path on alpha_1 .. alpha_{m-1} with alpha_0 attached to
alpha_{n+1}.

Everything here is exact: plain Python integers, no floating point.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Signature:
    """Ambient dimension n and number of blown-up points m, with m >= n+2."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need n >= 1, got n={self.n}")
        if self.m < self.n + 2:
            raise ValueError(f"need m >= n+2, got (n,m)=({self.n},{self.m})")

    @property
    def rank(self) -> int:
        return self.m + 1

    @property
    def generators(self) -> range:
        return range(self.m)


def _check_same_sig(a, b):
    if a.sig != b.sig:
        raise ValueError(f"signature mismatch: {a.sig} vs {b.sig}")


@dataclass(frozen=True)
class DivisorClass:
    """Integer vector (d_0; d_1..d_m) meaning d_0 E + sum d_i E_i."""

    coeffs: tuple
    sig: Signature

    def __post_init__(self):
        if len(self.coeffs) != self.sig.rank:
            raise ValueError(
                f"divisor class needs {self.sig.rank} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __add__(self, other):
        _check_same_sig(self, other)
        return DivisorClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.sig)

    def __sub__(self, other):
        _check_same_sig(self, other)
        return DivisorClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.sig)

    def scale(self, k: int):
        return DivisorClass(tuple(k * c for c in self.coeffs), self.sig)

    def __str__(self):
        return format_class(self.coeffs, "E")


@dataclass(frozen=True)
class CurveClass:
    """Integer vector (d_0; d_1..d_m) meaning d_0 e + sum d_i e_i."""

    coeffs: tuple
    sig: Signature

    def __post_init__(self):
        if len(self.coeffs) != self.sig.rank:
            raise ValueError(
                f"curve class needs {self.sig.rank} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __add__(self, other):
        _check_same_sig(self, other)
        return CurveClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.sig)

    def __sub__(self, other):
        _check_same_sig(self, other)
        return CurveClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.sig)

    def scale(self, k: int):
        return CurveClass(tuple(k * c for c in self.coeffs), self.sig)

    def __str__(self):
        return format_class(self.coeffs, "e")


# ---------------------------------------------------------------------------
# basis vectors and distinguished classes
# ---------------------------------------------------------------------------

def hyperplane(sig: Signature) -> DivisorClass:
    """E, the pullback of a hyperplane."""
    return DivisorClass((1,) + (0,) * sig.m, sig)


def exceptional(i: int, sig: Signature) -> DivisorClass:
    """E_i, the class of the i-th exceptional divisor (1-based)."""
    if not 1 <= i <= sig.m:
        raise ValueError(f"exceptional index {i} out of range 1..{sig.m}")
    c = [0] * sig.rank
    c[i] = 1
    return DivisorClass(tuple(c), sig)


def line(sig: Signature) -> CurveClass:
    """e, the class of a general line."""
    return CurveClass((1,) + (0,) * sig.m, sig)


def exceptional_line(i: int, sig: Signature) -> CurveClass:
    """e_i, a line inside the i-th exceptional divisor (1-based)."""
    if not 1 <= i <= sig.m:
        raise ValueError(f"exceptional index {i} out of range 1..{sig.m}")
    c = [0] * sig.rank
    c[i] = 1
    return CurveClass(tuple(c), sig)


def anticanonical_curve(sig: Signature) -> CurveClass:
    """delta = (n+1)e - e_1 - ... - e_m, invariant under the whole group."""
    return CurveClass((sig.n + 1,) + (-1,) * sig.m, sig)


def root(i: int, sig: Signature) -> DivisorClass:
    """alpha_0 = E - E_1 - ... - E_{n+1};  alpha_i = E_i - E_{i+1} for i >= 1."""
    if not 0 <= i <= sig.m - 1:
        raise ValueError(f"root index {i} out of range 0..{sig.m - 1}")
    c = [0] * sig.rank
    if i == 0:
        c[0] = 1
        for j in range(1, sig.n + 2):
            c[j] = -1
    else:
        c[i] = 1
        c[i + 1] = -1
    return DivisorClass(tuple(c), sig)


def coroot(i: int, sig: Signature) -> CurveClass:
    """alpha_0^ = (n-1)e - e_1 - ... - e_{n+1};  alpha_i^ = e_i - e_{i+1}."""
    if not 0 <= i <= sig.m - 1:
        raise ValueError(f"coroot index {i} out of range 0..{sig.m - 1}")
    c = [0] * sig.rank
    if i == 0:
        c[0] = sig.n - 1
        for j in range(1, sig.n + 2):
            c[j] = -1
    else:
        c[i] = 1
        c[i + 1] = -1
    return CurveClass(tuple(c), sig)


# ---------------------------------------------------------------------------
# pairing and reflections
# ---------------------------------------------------------------------------

def pairing(D: DivisorClass, d: CurveClass) -> int:
    """<D, d> = D_0 d_0 - sum_{i>=1} D_i d_i.  Note <alpha_i, alpha_i^> = -2."""
    _check_same_sig(D, d)
    return D.coeffs[0] * d.coeffs[0] - sum(
        a * b for a, b in zip(D.coeffs[1:], d.coeffs[1:]))


def reflect_divisor(i: int, D: DivisorClass) -> DivisorClass:
    """r_i(D) = D + <D, alpha_i^> alpha_i."""
    return D + root(i, D.sig).scale(pairing(D, coroot(i, D.sig)))


def reflect_curve(i: int, d: CurveClass) -> CurveClass:
    """r_i(d) = d + <alpha_i, d> alpha_i^."""
    return d + coroot(i, d.sig).scale(pairing(root(i, d.sig), d))


# ---------------------------------------------------------------------------
# words and action matrices
# ---------------------------------------------------------------------------

def check_word(word, sig: Signature) -> tuple:
    word = tuple(int(g) for g in word)
    for g in word:
        if not 0 <= g <= sig.m - 1:
            raise ValueError(f"generator {g} out of range 0..{sig.m - 1}")
    return word


def parse_word(text: str) -> tuple:
    """Parse a comma-separated word like "0,1,2,1"; empty string is the identity."""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise ValueError(f"cannot parse word {text!r}: {exc}") from None


@dataclass(frozen=True)
class ActionMatrix:
    """Integer matrix of a group element acting on divisor-coefficient columns.

    rows[i][k] is the E_i-coefficient of the image of the k-th basis vector,
    so acting on a class is the usual matrix-times-column product.  The curve
    (homology) action is not stored: it is derived through the pairing
    adjoint, keeping a single source of truth.
    """

    rows: tuple
    sig: Signature

    def __post_init__(self):
        r = self.sig.rank
        if len(self.rows) != r or any(len(row) != r for row in self.rows):
            raise ValueError(f"action matrix must be {r}x{r}")
        object.__setattr__(
            self, "rows", tuple(tuple(int(x) for x in row) for row in self.rows))

    @classmethod
    def identity(cls, sig: Signature) -> "ActionMatrix":
        r = sig.rank
        return cls(tuple(tuple(1 if i == k else 0 for k in range(r)) for i in range(r)), sig)

    def __matmul__(self, other: "ActionMatrix") -> "ActionMatrix":
        if self.sig != other.sig:
            raise ValueError("signature mismatch in matrix product")
        r = self.sig.rank
        cols = list(zip(*other.rows))
        rows = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
            for row in self.rows)
        return ActionMatrix(rows, self.sig)

    def act_divisor(self, D: DivisorClass) -> DivisorClass:
        if D.sig != self.sig:
            raise ValueError("signature mismatch")
        new = tuple(sum(a * b for a, b in zip(row, D.coeffs)) for row in self.rows)
        return DivisorClass(new, self.sig)

    def act_curve(self, d: CurveClass) -> CurveClass:
        """Pairing-adjoint action on homology: J M^{-T} J with J = diag(1,-1..-1)."""
        if d.sig != self.sig:
            raise ValueError("signature mismatch")
        inv = exact_inverse(self.rows)
        # (J inv^T J) @ c, with J c / J row sign flips folded in directly
        signs = (1,) + (-1,) * self.sig.m
        coeffs = tuple(
            signs[i] * sum(inv[k][i] * signs[k] * d.coeffs[k] for k in range(self.sig.rank))
            for i in range(self.sig.rank))
        return CurveClass(coeffs, self.sig)

    def determinant(self) -> int:
        return exact_determinant(self.rows)

    def inverse(self) -> "ActionMatrix":
        return ActionMatrix(exact_inverse(self.rows), self.sig)


def _reflect_coeff_column(i: int, coeffs: tuple, sig: Signature) -> tuple:
    # rank-one update: c + <c, alpha_i^> * alpha_i, on raw coefficient tuples
    a = root(i, sig).coeffs
    av = coroot(i, sig).coeffs
    pair = coeffs[0] * av[0] - sum(x * y for x, y in zip(coeffs[1:], av[1:]))
    return tuple(c + pair * x for c, x in zip(coeffs, a))


def generator_matrix(i: int, sig: Signature) -> ActionMatrix:
    """Matrix of the simple reflection r_i on divisor coefficients."""
    r = sig.rank
    cols = []
    for k in range(r):
        basis = tuple(1 if j == k else 0 for j in range(r))
        cols.append(_reflect_coeff_column(i, basis, sig))
    rows = tuple(tuple(col[i] for col in cols) for i in range(r))
    return ActionMatrix(rows, sig)


def word_pushforward(word, sig: Signature) -> ActionMatrix:
    """Matrix of w_* for the word applied left to right; identity for ()."""
    word = check_word(word, sig)
    r = sig.rank
    cols = [tuple(1 if j == k else 0 for j in range(r)) for k in range(r)]
    for g in word:
        cols = [_reflect_coeff_column(g, c, sig) for c in cols]
    rows = tuple(tuple(col[i] for col in cols) for i in range(r))
    return ActionMatrix(rows, sig)


def word_pullback(word, sig: Signature) -> ActionMatrix:
    """Exact inverse of word_pushforward: every generator is an involution,
    so the pullback is the pushforward of the reversed word."""
    word = check_word(word, sig)
    return word_pushforward(tuple(reversed(word)), sig)


def b_rows(pullback: ActionMatrix) -> tuple:
    """Coefficient rows b_i of the pullback: the image of the i-th primed basis
    vector expands as b_i^0 E + sum_j b_i^j E_j; returns the (m+1) rows b_i."""
    return tuple(tuple(pullback.rows[j][i] for j in range(pullback.sig.rank))
                 for i in range(pullback.sig.rank))


def curve_pushforward(word, d: CurveClass) -> CurveClass:
    """Push a curve class through a word by iterated simple reflections."""
    word = check_word(word, d.sig)
    for g in word:
        d = reflect_curve(g, d)
    return d


# ---------------------------------------------------------------------------
# diagram and orbit search
# ---------------------------------------------------------------------------

def dynkin_adjacency(sig: Signature) -> tuple:
    """0/1 adjacency over generator indices: (i,j) joined iff <alpha_i, alpha_j^> = 1.

    Reproduces the tree T_{2, n+1, m-n-1}; at (n,m) = (2,9) this is the
    affine E_8 diagram.
    """
    g = sig.m
    adj = [[0] * g for _ in range(g)]
    for i in range(g):
        for j in range(g):
            if i == j:
                continue
            p = pairing(root(i, sig), coroot(j, sig))
            if p not in (0, 1):
                raise AssertionError(f"unexpected off-diagonal pairing {p} at ({i},{j})")
            adj[i][j] = p
    return tuple(tuple(row) for row in adj)


def real_root_orbit(sig: Signature, depth: int) -> list:
    """All classes w_*(alpha_0) for words of length <= depth, BFS order.

    The full orbit is infinite for affine and indefinite diagram types, so the
    caller supplies the depth bound; completeness beyond it is undecided.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    start = root(0, sig)
    seen = {start.coeffs}
    frontier = [start]
    out = [start]
    for _ in range(depth):
        nxt = []
        for D in frontier:
            for g in sig.generators:
                img = reflect_divisor(g, D)
                if img.coeffs not in seen:
                    seen.add(img.coeffs)
                    nxt.append(img)
                    out.append(img)
        if not nxt:
            break
        frontier = nxt
    return out


def is_real_root_orbit_member(D: DivisorClass, depth: int) -> bool:
    """True iff D = w_*(alpha_0) for some word of length <= depth (bounded BFS)."""
    target = D.coeffs
    start = root(0, D.sig)
    if target == start.coeffs:
        return True
    seen = {start.coeffs}
    frontier = [start]
    for _ in range(depth):
        nxt = []
        for cur in frontier:
            for g in D.sig.generators:
                img = reflect_divisor(g, cur)
                if img.coeffs == target:
                    return True
                if img.coeffs not in seen:
                    seen.add(img.coeffs)
                    nxt.append(img)
        if not nxt:
            return False
        frontier = nxt
    return False


# ---------------------------------------------------------------------------
# exact linear algebra (small matrices, Fraction elimination)
# ---------------------------------------------------------------------------

def exact_determinant(rows) -> int:
    a = [[Fraction(x) for x in row] for row in rows]
    r = len(a)
    det = Fraction(1)
    for col in range(r):
        piv = next((k for k in range(col, r) if a[k][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for k in range(col + 1, r):
            f = a[k][col] * inv
            if f:
                a[k] = [x - f * y for x, y in zip(a[k], a[col])]
    assert det.denominator == 1
    return int(det)


def exact_inverse(rows) -> tuple:
    """Exact inverse of an integer matrix with det +-1 (raises otherwise)."""
    r = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(1 if i == k else 0) for k in range(r)]
         for i, row in enumerate(rows)]
    for col in range(r):
        piv = next((k for k in range(col, r) if a[k][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for k in range(r):
            if k != col and a[k][col]:
                f = a[k][col]
                a[k] = [x - f * y for x, y in zip(a[k], a[col])]
    out = []
    for i in range(r):
        row = a[i][r:]
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append(tuple(int(x) for x in row))
    return tuple(out)


# ---------------------------------------------------------------------------
# symbolic class parsing ("E-E_1-E_2", "2e_3", ...)
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"([+-]?)\s*(\d*)\s*([Ee])(?:_(\d+))?")


def parse_class(text: str, sig: Signature):
    """Parse a symbolic sum of basis classes.

    Upper-case E/E_i builds a DivisorClass, lower-case e/e_i a CurveClass;
    the two cannot be mixed.  Multiples like "2E" or "-3E_4" are accepted.
    """
    text = text.strip()
    if not text:
        raise ValueError("empty class expression")
    coeffs = [0] * sig.rank
    kinds = set()
    pos = 0
    while pos < len(text):
        mobj = _TOKEN.match(text, pos)
        if mobj is None or mobj.start() != pos:
            raise ValueError(f"cannot parse class expression {text!r} at {text[pos:]!r}")
        sign, mult, letter, idx = mobj.groups()
        kinds.add(letter)
        k = int(mult) if mult else 1
        if sign == "-":
            k = -k
        slot = 0
        if idx is not None:
            slot = int(idx)
            if not 1 <= slot <= sig.m:
                raise ValueError(f"index {slot} out of range 1..{sig.m} in {text!r}")
        coeffs[slot] += k
        pos = mobj.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    if len(kinds) != 1:
        raise ValueError(f"mixed divisor/curve symbols in {text!r}")
    if kinds.pop() == "E":
        return DivisorClass(tuple(coeffs), sig)
    return CurveClass(tuple(coeffs), sig)


def format_class(coeffs, letter: str) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        sym = letter if i == 0 else f"{letter}_{i}"
        mag = abs(c)
        body = sym if mag == 1 else f"{mag}{sym}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+{body}" if c > 0 else f"-{body}")
    return "".join(parts) if parts else "0"
