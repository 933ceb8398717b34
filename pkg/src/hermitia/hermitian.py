"""The Hermitian curve x^(q+1) = y^q + y over GF(q**2), its rational points,
divisors, the monomial basis of the coordinate ring, code parameters for all
four parameter regimes, parity-check matrices, and the support tests that
decide whether a point set carries a nonzero codeword.

Code labels follow the convention that the basis contains a monomial of
weighted degree m+1; other values of m are rejected (they would silently
alias the next valid label).  Points are ordered lexicographically by
(x, y) in the deterministic field enumeration so matrices and codeword
indices are reproducible.
"""

from __future__ import annotations

import functools
from bisect import bisect_right
from dataclasses import dataclass, field

import numpy as np

from .errors import (AmbiguousSupportError, InvalidMError, NotASupportError)
from .gf import FieldSpec
from .poly import DegRevLex, PolyRing, Polynomial, w_degree


# -- exact linear algebra over GF(q**2) ---------------------------------------

def gf_rref(mat: np.ndarray, spec: FieldSpec):
    """Reduced row echelon form over GF(q**2); returns (rref, pivot_columns).

    Entries are field element indices; row operations go through the dense
    operation tables, so the arithmetic is exact.
    """
    M = np.array(mat, dtype=np.int64)
    np_add, np_mul = spec.np_add.astype(np.int64), spec.np_mul.astype(np.int64)
    neg = np.array(spec.neg_table, dtype=np.int64)
    inv = np.array(spec.inv_table, dtype=np.int64)
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            M[[r, pr]] = M[[pr, r]]
        if M[r, c] != 1:
            M[r] = np_mul[inv[M[r, c]]][M[r]]
        for rr in range(rows):
            if rr != r and M[rr, c]:
                M[rr] = np_add[M[rr], np_mul[neg[M[rr, c]]][M[r]]]
        pivots.append(c)
        r += 1
    return M, pivots


def gf_rank(mat: np.ndarray, spec: FieldSpec) -> int:
    if mat.size == 0:
        return 0
    return len(gf_rref(mat, spec)[1])


def gf_kernel(mat: np.ndarray, spec: FieldSpec) -> np.ndarray:
    """Basis of the right kernel, one vector per row; shape (dim, cols)."""
    R, pivots = gf_rref(mat, spec)
    cols = mat.shape[1]
    neg = spec.neg_table
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = neg[int(R[r, fc])]
    return basis


# -- curve and divisors --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CurveContext:
    """The curve, its points in a fixed order, and the monomial basis of the
    coordinate ring (sorted by increasing weighted degree)."""

    spec: FieldSpec
    q: int
    g: int
    n: int
    ring: PolyRing
    H: Polynomial
    points: tuple[tuple[int, int], ...]
    B: tuple[tuple[int, int], ...]
    wdegs: tuple[int, ...]


@functools.lru_cache(maxsize=None)
def build_curve(spec: FieldSpec) -> CurveContext:
    """Enumerate the q**3 affine rational points and the monomial basis.

    Points are produced with the outer loop over x in field order and the
    inner loop over the q solutions of y^q + y = x^(q+1).
    """
    q, q2 = spec.q, spec.q2
    ring = PolyRing(spec, ("y", "x"))
    H = ring.gen("x", q + 1) - ring.gen("y", q) - ring.gen("y")
    frob, add = spec.frob_table, spec.add_table
    points = []
    for xi in range(q2):
        rhs = spec.pow_idx(xi, q + 1)
        for yi in range(q2):
            if add[frob[yi]][yi] == rhs:
                points.append((xi, yi))
    assert len(points) == q**3
    B = [(s, r) for r in range(q + 1) for s in range(q2 - q)]
    B += [(s, 0) for s in range(q2 - q, q2)]
    B.sort(key=lambda m: w_degree(m, q))
    assert len(B) == q**3
    return CurveContext(
        spec=spec, q=q, g=q * (q - 1) // 2, n=q**3, ring=ring, H=H,
        points=tuple(points), B=tuple(B),
        wdegs=tuple(w_degree(m, q) for m in B))


@dataclass(frozen=True)
class Divisor:
    """A set of distinct rational points, stored as sorted point indices."""

    indices: tuple[int, ...]

    def __post_init__(self):
        ids = tuple(sorted(self.indices))
        if any(i < 0 for i in ids):
            raise ValueError("negative point index")
        if len(set(ids)) != len(ids):
            raise ValueError("divisor points must be pairwise distinct")
        object.__setattr__(self, "indices", ids)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, i):
        return i in self.indices


@dataclass(frozen=True)
class Codeword:
    """A vector in the code; entries are field element indices."""

    entries: tuple[int, ...]

    @property
    def weight(self) -> int:
        return sum(1 for e in self.entries if e)

    def support(self) -> Divisor:
        return Divisor(tuple(i for i, e in enumerate(self.entries) if e))


@dataclass(frozen=True, eq=False)
class HermitianCode:
    """Parameters and parity-check matrix of the code with label m."""

    ctx: CurveContext
    m: int
    phase: int
    d: int
    k: int
    mu: int | None
    beta: int | None
    lam: int | None
    Bm: tuple[tuple[int, int], ...]
    parity: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def n(self) -> int:
        return self.ctx.n


def decompose_m(q: int, m: int) -> tuple[int, int]:
    """The unique (mu, beta) with m = mu*q + beta*(q+1), 0 <= mu <= q."""
    mu = (-m) % (q + 1)
    beta, rem = divmod(m - mu * q, q + 1)
    if beta < 0 or rem:
        raise ValueError(f"{m} = mu*{q} + beta*{q + 1} has no solution with mu <= {q}")
    return mu, beta


def _semigroup_member(v: int, q: int) -> bool:
    return any((v - b * (q + 1)) % q == 0 for b in range(v // (q + 1) + 1))


def code_parameters(ctx: CurveContext, m: int) -> HermitianCode:
    """Phase, distance, dimension, decomposition integers and parity-check
    matrix of the code labelled m.

    Raises InvalidMError when the basis has no monomial of weighted degree
    m+1 (such an m labels the same code as the next valid one) or m is out
    of range.
    """
    q, g, n = ctx.q, ctx.g, ctx.n
    if m < 0 or m > n + 2 * g - 2:
        raise InvalidMError(f"m = {m} outside [0, {n + 2 * g - 2}]")
    if (m + 1) not in ctx.wdegs:
        raise InvalidMError(
            f"no basis monomial of w-degree {m + 1}: m = {m} does not label a code")
    cut = bisect_right(ctx.wdegs, m)
    Bm = ctx.B[:cut]
    k = n - len(Bm)

    lam = None
    try:
        mu, beta = decompose_m(q, m)
    except ValueError:
        mu = beta = None

    if 2 * q * q - 2 * q - 2 <= m <= n - 2:
        phase = 3
    elif m >= n - 1:
        phase = 4
    elif m <= q * q - 2:
        phase = 1
    else:
        phase = 2

    if phase in (3, 4):
        d = m - 2 * g + 2
        assert mu is not None, "phase 3-4 labels always decompose"
        lam = beta - q + 2
        assert mu * q + lam * (q + 1) == d
    elif phase == 1:
        mstar = ctx.wdegs[cut - 1]
        a, b = divmod(mstar, q)
        d = a + 1 if a > b else a + 2
    else:
        delta = m - 2 * g + 2
        d = delta if _semigroup_member(delta, q) else -(-delta // q) * q

    parity = np.zeros((len(Bm), n), dtype=np.int64)
    mul = ctx.spec.mul_table
    for i, (s, r) in enumerate(Bm):
        for j, (xi, yi) in enumerate(ctx.points):
            parity[i, j] = mul[ctx.spec.pow_idx(xi, r)][ctx.spec.pow_idx(yi, s)]
    return HermitianCode(ctx=ctx, m=m, phase=phase, d=d, k=k,
                         mu=mu, beta=beta, lam=lam, Bm=Bm, parity=parity)


def parity_check_matrix(code: HermitianCode) -> np.ndarray:
    """|Bm| x n matrix whose row i evaluates Bm[i] at all points."""
    return code.parity


def divisor_cut(ctx: CurveContext, F: Polynomial) -> tuple[Divisor, bool]:
    """Zeros of F among the rational points, and whether their number equals
    r*q + s*(q+1) for the leading monomial x^r y^s (the full intersection is
    then simple and rational)."""
    if F.ring != ctx.ring:
        raise ValueError("polynomial not in the curve's (y, x) ring")
    if F.is_zero():
        raise ValueError("the zero polynomial cuts no divisor")
    if F.degree_in(1) > ctx.q:
        raise ValueError(f"x-degree exceeds q = {ctx.q}")
    zeros = tuple(i for i, (xi, yi) in enumerate(ctx.points)
                  if F.evaluate((yi, xi)) == 0)
    lm = F.leading_monomial(ctx.ring.degrevlex)
    if lm == (0, 0):
        return Divisor(zeros), False
    expected = lm[1] * ctx.q + lm[0] * (ctx.q + 1)
    return Divisor(zeros), len(zeros) == expected


def supports_codeword(code: HermitianCode, D: Divisor) -> bool:
    """True iff some nonzero codeword has support inside D (the restricted
    parity-check columns drop rank)."""
    if len(D) == 0:
        raise ValueError("empty divisor")
    if D.indices[-1] >= code.n:
        raise ValueError("point index out of range")
    sub = code.parity[:, list(D.indices)]
    return gf_rank(sub, code.ctx.spec) < len(D)


def codeword_from_support(code: HermitianCode, D: Divisor) -> Codeword:
    """The codeword supported inside D, when it is unique up to scalars;
    normalized so its first nonzero entry is 1."""
    if len(D) == 0:
        raise ValueError("empty divisor")
    sub = code.parity[:, list(D.indices)]
    ker = gf_kernel(sub, code.ctx.spec)
    if ker.shape[0] == 0:
        raise NotASupportError(f"divisor of degree {len(D)} supports no codeword")
    if ker.shape[0] > 1:
        raise AmbiguousSupportError(
            f"codewords inside the divisor form a space of dimension {ker.shape[0]}")
    v = ker[0]
    spec = code.ctx.spec
    first = int(np.nonzero(v)[0][0])
    if v[first] != 1:
        v = spec.np_mul.astype(np.int64)[spec.inv_table[int(v[first])]][v]
    entries = [0] * code.n
    for pos, val in zip(D.indices, v):
        entries[pos] = int(val)
    return Codeword(tuple(entries))


def critical_monomials(code: HermitianCode) -> list[tuple[int, int]]:
    """The ladder of monomials just past w-degree m whose presence in the
    staircase of a divisor ideal certifies a codeword (phases 3-4 only)."""
    if code.phase not in (3, 4):
        raise ValueError("critical monomials are defined for phases 3-4")
    q, mu, beta = code.q, code.mu, code.beta
    if mu > 0:
        out = [(beta + i, mu - i) for i in range(1, mu + 1)]
        out += [(beta + mu - q + j + 1, q - j) for j in range(q - mu + 1)]
    else:
        out = [(beta - q + j + 1, q - j) for j in range(q + 1)]
    return out


def vanishing_ideal_generators(ctx: CurveContext, D: Divisor) -> list[Polynomial]:
    """Generators of the ideal of polynomials vanishing on D: the curve and
    field equations plus interpolation polynomials found by linear algebra
    over the monomial basis."""
    spec, q2 = ctx.spec, ctx.spec.q2
    ring = ctx.ring
    gens = [ctx.H,
            ring.gen("x", q2) - ring.gen("x"),
            ring.gen("y", q2) - ring.gen("y")]
    if len(D) == 0:
        return gens
    mul = spec.mul_table
    M = np.zeros((len(D), len(ctx.B)), dtype=np.int64)
    for i, pi in enumerate(D.indices):
        xi, yi = ctx.points[pi]
        for j, (s, r) in enumerate(ctx.B):
            M[i, j] = mul[spec.pow_idx(xi, r)][spec.pow_idx(yi, s)]
    for row in gf_kernel(M, spec):
        terms = {ctx.B[j]: int(c) for j, c in enumerate(row) if c}
        gens.append(Polynomial(ring, terms))
    return gens
