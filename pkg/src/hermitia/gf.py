"""Exact arithmetic in GF(p), GF(q) and GF(q**2), where q = p**e.

The quadratic extension is modelled once and for all as
GF(p)[t] / (m(t)) with m a fixed monic irreducible of degree 2e, chosen
deterministically (lexicographically smallest coefficient vector among
monic irreducibles), so that every run and every machine agrees on the
labelling of elements.  GF(q) is not a separate type: it is the subfield
{a : a**q == a} of GF(q**2).

Elements are identified with indices 0 .. q**2-1; the base-p digits of an
index are the coefficients of the residue class (so index 0 is 0 and
index 1 is 1).  All arithmetic is table-driven: `FieldSpec` carries dense
addition/multiplication tables both as nested lists (fast scalar lookups)
and as numpy arrays (vectorised lookups for the enumeration oracles).
Supported field sizes are p**(2e) <= MAX_FIELD_SIZE.
"""

from __future__ import annotations

import functools
from itertools import product

import numpy as np

from .errors import MixedFieldError

# Largest supported q**2.  Dense q**2 x q**2 tables stay below a few MB and
# table construction below a second; desk-scale q (<= 31) all fit.
MAX_FIELD_SIZE = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def split_prime_power(q: int) -> tuple[int, int]:
    """Write q = p**e with p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if is_prime(p) and q % p == 0:
            e = 0
            n = q
            while n % p == 0:
                n //= p
                e += 1
            if n != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, e
    raise ValueError(f"{q} is not a prime power")


def _poly_mul_mod(a, b, modulus, p):
    """Product of coefficient lists a, b reduced mod (modulus, p).

    Lists are little-endian; modulus is monic of degree d = len(modulus)-1.
    """
    d = len(modulus) - 1
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    for k in range(len(res) - 1, d - 1, -1):
        c = res[k]
        if c:
            res[k] = 0
            for j in range(d):
                res[k - d + j] = (res[k - d + j] - c * modulus[j]) % p
    return res[:d] + [0] * (d - len(res))


def _poly_divides(div, poly, p):
    """True if div (monic) divides poly over GF(p); both little-endian."""
    rem = list(poly)
    dd = len(div) - 1
    for k in range(len(rem) - 1, dd - 1, -1):
        c = rem[k]
        if c:
            for j in range(dd + 1):
                rem[k - dd + j] = (rem[k - dd + j] - c * div[j]) % p
    return not any(rem)


def _is_irreducible(poly, p):
    """Trial division by all monic polynomials of degree 1 .. deg//2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            div = list(tail) + [1]
            if _poly_divides(div, poly, p):
                return False
    return True


def _smallest_irreducible(p: int, deg: int) -> tuple[int, ...]:
    """Monic irreducible of given degree over GF(p) with lexicographically
    smallest coefficient vector (c0, c1, ..., c_{deg-1})."""
    for tail in product(range(p), repeat=deg):
        poly = list(tail) + [1]
        if poly[0] != 0 and _is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # cannot happen


class FieldSpec:
    """The field GF(q**2) = GF(p)[t]/(m(t)) together with its operation tables.

    Build instances through :func:`build_field`, which caches them, so that
    two elements may be compared by spec identity.
    """

    def __init__(self, p: int, e: int):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if e <= 0:
            raise ValueError(f"e = {e} must be positive")
        q2 = p ** (2 * e)
        if q2 > MAX_FIELD_SIZE:
            raise ValueError(
                f"field size q^2 = {q2} exceeds supported bound {MAX_FIELD_SIZE}")
        self.p = p
        self.e = e
        self.q = p**e
        self.q2 = q2
        self.modulus = _smallest_irreducible(p, 2 * e)
        self._build_tables()

    # -- construction -----------------------------------------------------

    def _digits(self, index):
        p, d = self.p, 2 * self.e
        out = []
        for _ in range(d):
            out.append(index % p)
            index //= p
        return out

    def _index(self, digits):
        idx = 0
        for c in reversed(digits):
            idx = idx * self.p + (c % self.p)
        return idx

    def _build_tables(self):
        p, q, q2 = self.p, self.q, self.q2
        nd = 2 * self.e
        mod = list(self.modulus)

        digs = np.array([self._digits(i) for i in range(q2)], dtype=np.int64)
        pows = np.array([p**i for i in range(nd)], dtype=np.int64)
        add = ((digs[:, None, :] + digs[None, :, :]) % p) @ pows
        self.np_add = add.astype(np.uint16)
        self.np_neg = (((-digs) % p) @ pows).astype(np.uint16)

        def mul_idx(a, b):
            return self._index(_poly_mul_mod(self._digits(a), self._digits(b), mod, p))

        # Discrete-log tables over a multiplicative generator.
        gen = None
        for cand in range(1, q2):
            seen = 1
            x = cand
            order = 1
            while x != 1:
                x = mul_idx(x, cand)
                order += 1
                if order > q2:
                    raise AssertionError("order computation ran away")
            if order == q2 - 1:
                gen = cand
                break
        assert gen is not None
        exp = [1] * (q2 - 1)
        for i in range(1, q2 - 1):
            exp[i] = mul_idx(exp[i - 1], gen)
        log = [0] * q2
        for i, v in enumerate(exp):
            log[v] = i
        self.generator = gen
        self._exp = exp
        self._log = log

        exp_np = np.array(exp, dtype=np.uint16)
        log_np = np.array(log, dtype=np.int64)
        mul = np.zeros((q2, q2), dtype=np.uint16)
        nz = np.arange(1, q2)
        mul[1:, 1:] = exp_np[(log_np[nz][:, None] + log_np[nz][None, :]) % (q2 - 1)]
        self.np_mul = mul

        self.add_table = self.np_add.tolist()
        self.mul_table = mul.tolist()
        self.neg_table = self.np_neg.tolist()
        self.negmul_table = self.np_neg[mul.astype(np.int64)].tolist()
        self.inv_table = [0] + [exp[(q2 - 1 - log[a]) % (q2 - 1)] for a in range(1, q2)]
        self.frob_table = [self.pow_idx(a, q) for a in range(q2)]
        self.trace_table = [self.add_table[self.frob_table[a]][a] for a in range(q2)]
        self.norm_table = [self.pow_idx(a, q + 1) for a in range(q2)]

    # -- index-level arithmetic -------------------------------------------

    def pow_idx(self, a: int, n: int) -> int:
        """a**n by index, with 0**0 == 1."""
        if n == 0:
            return 1
        if a == 0:
            return 0
        return self._exp[(self._log[a] * n) % (self.q2 - 1)]

    def element(self, index: int) -> "FieldElement":
        if not 0 <= index < self.q2:
            raise ValueError(f"index {index} out of range for GF({self.q2})")
        return FieldElement(self, index)

    def from_coeffs(self, coeffs) -> "FieldElement":
        if len(coeffs) != 2 * self.e:
            raise ValueError("coefficient vector has wrong length")
        return FieldElement(self, self._index(list(coeffs)))

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, e={self.e}, q2={self.q2})"


class FieldElement:
    """An element of GF(q**2), canonical by construction (index form)."""

    __slots__ = ("spec", "index")

    def __init__(self, spec: FieldSpec, index: int):
        self.spec = spec
        self.index = index

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.spec._digits(self.index))

    def _o(self, other):
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.spec != self.spec:
            raise MixedFieldError("elements from different fields")
        return other.index

    def __add__(self, other):
        return FieldElement(self.spec, self.spec.add_table[self.index][self._o(other)])

    def __sub__(self, other):
        j = self.spec.neg_table[self._o(other)]
        return FieldElement(self.spec, self.spec.add_table[self.index][j])

    def __mul__(self, other):
        return FieldElement(self.spec, self.spec.mul_table[self.index][self._o(other)])

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg_table[self.index])

    def __truediv__(self, other):
        j = self._o(other)
        if j == 0:
            raise ZeroDivisionError("division by zero field element")
        return FieldElement(self.spec, self.spec.mul_table[self.index][self.spec.inv_table[j]])

    def __pow__(self, n: int):
        if n < 0:
            if self.index == 0:
                raise ZeroDivisionError("inverse of zero field element")
            return FieldElement(self.spec, self.spec.pow_idx(self.spec.inv_table[self.index], -n))
        return FieldElement(self.spec, self.spec.pow_idx(self.index, n))

    def __eq__(self, other):
        return (isinstance(other, FieldElement)
                and self.spec == other.spec and self.index == other.index)

    def __hash__(self):
        return hash((self.spec.p, self.spec.e, self.index))

    def __bool__(self):
        return self.index != 0

    def __repr__(self):
        return f"GF({self.spec.q2})#{self.index}"

    def __str__(self):
        coeffs = self.coeffs
        parts = []
        for i, c in enumerate(coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                t = "t" if i == 1 else f"t^{i}"
                parts.append(t if c == 1 else f"{c}*{t}")
        return " + ".join(parts) if parts else "0"


@functools.lru_cache(maxsize=None)
def build_field(p: int, e: int) -> FieldSpec:
    """The field GF(p**(2e)) with the deterministic modulus; cached."""
    return FieldSpec(p, e)


@functools.lru_cache(maxsize=None)
def field_for_q(q: int) -> FieldSpec:
    """The field GF(q**2) for a prime power q."""
    p, e = split_prime_power(q)
    return build_field(p, e)


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    """Multiplicative inverse; raises ZeroDivisionError on 0."""
    if a.index == 0:
        raise ZeroDivisionError("inverse of zero field element")
    return FieldElement(a.spec, a.spec.inv_table[a.index])


def trace(a: FieldElement) -> FieldElement:
    """Tr(a) = a**q + a, an element of the subfield GF(q)."""
    return FieldElement(a.spec, a.spec.trace_table[a.index])


def norm(a: FieldElement) -> FieldElement:
    """N(a) = a**(q+1), an element of the subfield GF(q)."""
    return FieldElement(a.spec, a.spec.norm_table[a.index])


def frobenius(a: FieldElement) -> FieldElement:
    """a**q."""
    return FieldElement(a.spec, a.spec.frob_table[a.index])


def enumerate_elements(spec: FieldSpec) -> list[FieldElement]:
    """All q**2 elements in the deterministic order 0, 1, ..."""
    return [FieldElement(spec, i) for i in range(spec.q2)]
