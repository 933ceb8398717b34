"""Sparse multivariate polynomials over GF(q**2) and the three term orders
used throughout the package: graded reverse lexicographic with y > x, the
weighted order with weights (q, q+1), and a block elimination order with the
(y, x) block in front of the parameter block.

Monomials are exponent tuples aligned with the ring's variable list, whose
fixed layout is (y, x, parameter variables).  Every order packs a monomial
into a single integer key that is *order-isomorphic* (integer comparison ==
term-order comparison) and *additive* (key(ab) == key(a) + key(b) - K), with
a guard bit per field so that divisibility is a two-instruction test.  The
Groebner engine runs entirely on these keys.
"""

from __future__ import annotations

import re

from .gf import FieldSpec
from .errors import MixedFieldError

_W = 16                     # bits per exponent field
_FMASK = (1 << _W) - 1
_C = (1 << (_W - 1)) - 1    # complemented exponents live in [0, _C]
_DEGW = 32                  # bits per degree field
MAX_EXPONENT = 1 << 13      # headroom below the guard bits


def _check_exponents(exps):
    for e in exps:
        if e < 0 or e > MAX_EXPONENT:
            raise ValueError(f"exponent {e} outside [0, {MAX_EXPONENT}]")


class TermOrder:
    """Base for packed term orders.

    Subclasses define ``nvars``, ``K`` (multiplication correction),
    ``GUARD`` (one bit per packed field), ``encode`` and ``decode``.
    """

    nvars: int
    K: int
    GUARD: int

    def key(self, mono: tuple[int, ...]) -> int:
        return self.encode(mono)

    def mul(self, a: int, b: int) -> int:
        return a + b - self.K

    def divides(self, a: int, b: int):
        """Key of b/a if a divides b, else None."""
        d = b - a + self.K
        if d < 0 or (d & self.GUARD):
            return None
        return d

    def lcm_keys(self, a: int, b: int) -> int:
        return self.encode_unchecked(
            tuple(max(x, y) for x, y in zip(self.decode(a), self.decode(b))))

    def encode(self, mono):
        raise NotImplementedError

    def encode_unchecked(self, mono):
        return self.encode(mono)

    def decode(self, key):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.__dict__.items()))))


class DegRevLex(TermOrder):
    """Graded reverse lexicographic order; variable precedence is the ring
    order (y > x > parameters).

    The field widths may be shrunk when all occurring exponents are known to
    be small (the point-counting ideals), so keys fit a machine word.
    """

    name = "degrevlex"

    def __init__(self, nvars: int, width: int = _W, degwidth: int = _DEGW):
        self.nvars = nvars
        self.width = width
        self.degwidth = degwidth
        c = (1 << (width - 1)) - 1
        self.comp = c
        # all run-time monomials then have degree (hence exponents) <= c,
        # provided basis leading monomials stay below max_total_degree too
        self.max_exponent = c // 2
        self.max_total_degree = c // 2
        self.deg_shift = width * nvars
        fmask = (1 << width) - 1
        self._fmask = fmask
        self.K = sum(c << (width * i) for i in range(nvars))
        self._h = sum(1 << (width * i + width - 1) for i in range(nvars))
        self._cmask = sum(fmask << (width * i) for i in range(nvars))
        self.GUARD = self._h | (1 << (width * nvars + degwidth - 1))

    def encode(self, mono):
        if len(mono) != self.nvars:
            raise ValueError("monomial length does not match order arity")
        deg = 0
        for e in mono:
            if e < 0 or e > self.max_exponent:
                raise ValueError(f"exponent {e} outside [0, {self.max_exponent}]")
            deg += e
        if deg > self.max_total_degree:
            raise ValueError(
                f"total degree {deg} exceeds {self.max_total_degree} for this key width")
        return self.encode_unchecked(mono)

    def encode_unchecked(self, mono):
        w, c = self.width, self.comp
        key = sum(mono) << (w * self.nvars)
        for i, e in enumerate(mono):
            key |= (c - e) << (w * i)
        return key

    def decode(self, key):
        w, c, f = self.width, self.comp, self._fmask
        return tuple(c - ((key >> (w * i)) & f) for i in range(self.nvars))

    def lcm_keys(self, a: int, b: int) -> int:
        """Key of lcm, by field-wise selection of the smaller complement."""
        w, f = self.width, self._fmask
        cm, h = self._cmask, self._h
        am = a & cm
        bm = b & cm
        sel = ((((am | h) - bm) & h) >> (w - 1)) * f
        comp = (bm & sel) | (am & ~sel & cm)
        s = 0
        t = comp
        while t:
            s += t & f
            t >>= w
        return ((self.nvars * self.comp - s) << (w * self.nvars)) | comp


class WeightedOrder(TermOrder):
    """Weighted order on (y, x) with weights w(x) = q, w(y) = q+1; ties on
    weighted degree go to the larger y exponent."""

    name = "weighted"
    nvars = 2

    def __init__(self, q: int):
        self.q = q
        self.K = 0
        self.GUARD = (1 << (_W - 1)) | (1 << (2 * _W - 1)) | (1 << (2 * _W + _DEGW - 1))

    def encode(self, mono):
        if len(mono) != 2:
            raise ValueError("weighted order applies to (y, x) monomials only")
        ey, ex = mono
        _check_exponents(mono)
        w = self.q * ex + (self.q + 1) * ey
        return (w << (2 * _W)) | (ey << _W) | ex

    def decode(self, key):
        return ((key >> _W) & _FMASK, key & _FMASK)


class BlockOrder(TermOrder):
    """Elimination order: DegRevLex on the (y, x) block first, DegRevLex on
    the parameter block as tie-break."""

    name = "block"

    def __init__(self, nvars: int):
        if nvars < 2:
            raise ValueError("block order needs the (y, x) block")
        self.nvars = nvars
        npar = nvars - 2
        self.npar = npar
        self._par_bits = _W * npar + _DEGW
        # params at bits [0, 16*npar), deg_par, comp(e_y), comp(e_x), deg_xy
        K = sum(_C << (_W * i) for i in range(npar))
        K |= _C << self._par_bits
        K |= _C << (self._par_bits + _W)
        self.K = K
        g = sum(1 << (_W * i + _W - 1) for i in range(npar))
        g |= 1 << (_W * npar + _DEGW - 1)                      # deg_par guard
        g |= 1 << (self._par_bits + _W - 1)                    # comp(e_y) guard
        g |= 1 << (self._par_bits + 2 * _W - 1)                # comp(e_x) guard
        g |= 1 << (self._par_bits + 2 * _W + _DEGW - 1)        # deg_xy guard
        self.GUARD = g

    def encode(self, mono):
        if len(mono) != self.nvars:
            raise ValueError("monomial length does not match order arity")
        _check_exponents(mono)
        ey, ex = mono[0], mono[1]
        par = mono[2:]
        key = (ey + ex) << (self._par_bits + 2 * _W)
        key |= (_C - ex) << (self._par_bits + _W)
        key |= (_C - ey) << self._par_bits
        key |= sum(par) << (_W * self.npar)
        for i, e in enumerate(par):
            key |= (_C - e) << (_W * i)
        return key

    def decode(self, key):
        ey = _C - ((key >> self._par_bits) & _FMASK)
        ex = _C - ((key >> (self._par_bits + _W)) & _FMASK)
        par = tuple(_C - ((key >> (_W * i)) & _FMASK) for i in range(self.npar))
        return (ey, ex) + par


def compare(a: tuple[int, ...], b: tuple[int, ...], order: TermOrder) -> int:
    """-1, 0 or 1 as a <, ==, > b under the order."""
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def w_degree(mono: tuple[int, ...], q: int) -> int:
    """Weighted degree r*q + s*(q+1) of x^r y^s; rejects parameter variables."""
    if any(mono[2:]):
        raise ValueError("w-degree is defined for monomials in x, y only")
    ey, ex = mono[0], (mono[1] if len(mono) > 1 else 0)
    return ex * q + ey * (q + 1)


class PolyRing:
    """A polynomial ring over GF(q**2) with the fixed variable layout
    (y, x, parameters...)."""

    def __init__(self, field: FieldSpec, names: tuple[str, ...] = ("y", "x")):
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.field = field
        self.names = tuple(names)
        self.nvars = len(names)
        self._index = {n: i for i, n in enumerate(names)}
        self.degrevlex = DegRevLex(self.nvars)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, cidx: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: cidx} if cidx else {})

    def monomial(self, mono, cidx: int = 1) -> "Polynomial":
        return Polynomial(self, {tuple(mono): cidx} if cidx else {})

    def gen(self, name: str, exp: int = 1) -> "Polynomial":
        mono = [0] * self.nvars
        mono[self._index[name]] = exp
        return self.monomial(tuple(mono))

    def var_index(self, name: str) -> int:
        return self._index[name]

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.names == other.names)

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"PolyRing(GF({self.field.q2})[{', '.join(self.names)}])"

    # -- textual format ----------------------------------------------------

    _TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\d+|\^|\*|\+|-)")

    def parse(self, text: str) -> "Polynomial":
        """Parse "x^2*y + 2*x + 1" style text; integer literals are field
        element indices in the deterministic enumeration."""
        tokens = []
        pos = 0
        while pos < len(text):
            m = self._TOKEN.match(text, pos)
            if not m:
                if text[pos:].strip():
                    raise ValueError(f"cannot parse polynomial at: {text[pos:]!r}")
                break
            tokens.append(m.group(1))
            pos = m.end()
        terms: dict[tuple[int, ...], int] = {}
        i = 0
        field = self.field
        while i < len(tokens):
            sign = 1
            while i < len(tokens) and tokens[i] in "+-":
                if tokens[i] == "-":
                    sign = -sign
                i += 1
            if i >= len(tokens):
                raise ValueError("dangling sign in polynomial text")
            coeff = 1
            exps = [0] * self.nvars
            expect_factor = True
            while i < len(tokens):
                tok = tokens[i]
                if tok in "+-":
                    break
                if tok == "*":
                    i += 1
                    expect_factor = True
                    continue
                if not expect_factor:
                    raise ValueError(f"missing '*' before {tok!r}")
                if tok.isdigit():
                    coeff = field.mul_table[coeff][int(tok) % field.q2]
                    i += 1
                else:
                    if tok not in self._index:
                        raise ValueError(f"unknown variable {tok!r}")
                    e = 1
                    i += 1
                    if i < len(tokens) and tokens[i] == "^":
                        i += 1
                        if i >= len(tokens) or not tokens[i].isdigit():
                            raise ValueError("exponent expected after '^'")
                        e = int(tokens[i])
                        i += 1
                    exps[self._index[tok]] += e
                expect_factor = False
            if sign < 0:
                coeff = field.neg_table[coeff]
            mono = tuple(exps)
            acc = field.add_table[terms.get(mono, 0)][coeff]
            if acc:
                terms[mono] = acc
            else:
                terms.pop(mono, None)
        return Polynomial(self, terms)


class Polynomial:
    """Immutable-by-convention sparse polynomial; coefficients are stored as
    field element indices (never zero)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict[tuple[int, ...], int]):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}

    # -- ring arithmetic ----------------------------------------------------

    def _o(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")
        if other.ring != self.ring:
            raise MixedFieldError("polynomials from different rings")
        return other

    def __add__(self, other):
        other = self._o(other)
        add = self.ring.field.add_table
        res = dict(self.terms)
        for m, c in other.terms.items():
            v = add[res.get(m, 0)][c]
            if v:
                res[m] = v
            else:
                res.pop(m, None)
        return Polynomial(self.ring, res)

    def __sub__(self, other):
        other = self._o(other)
        add = self.ring.field.add_table
        neg = self.ring.field.neg_table
        res = dict(self.terms)
        for m, c in other.terms.items():
            v = add[res.get(m, 0)][neg[c]]
            if v:
                res[m] = v
            else:
                res.pop(m, None)
        return Polynomial(self.ring, res)

    def __neg__(self):
        neg = self.ring.field.neg_table
        return Polynomial(self.ring, {m: neg[c] for m, c in self.terms.items()})

    def __mul__(self, other):
        other = self._o(other)
        add = self.ring.field.add_table
        mul = self.ring.field.mul_table
        res: dict[tuple[int, ...], int] = {}
        if len(self.terms) > len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        for ma, ca in a.terms.items():
            row = mul[ca]
            for mb, cb in b.terms.items():
                mm = tuple(x + y for x, y in zip(ma, mb))
                v = add[res.get(mm, 0)][row[cb]]
                if v:
                    res[mm] = v
                else:
                    res.pop(mm, None)
        return Polynomial(self.ring, res)

    def scale(self, cidx: int) -> "Polynomial":
        if cidx == 0:
            return Polynomial(self.ring, {})
        row = self.ring.field.mul_table[cidx]
        return Polynomial(self.ring, {m: row[c] for m, c in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.ring == other.ring
                and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, var: int) -> int:
        if not self.terms:
            return -1
        return max(m[var] for m in self.terms)

    def leading_monomial(self, order: TermOrder) -> tuple[int, ...]:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: TermOrder) -> int:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: TermOrder) -> "Polynomial":
        lc = self.leading_coefficient(order)
        if lc == 1:
            return self
        return self.scale(self.ring.field.inv_table[lc])

    def evaluate(self, values) -> int:
        """Value (as a field index) at the point given per ring variable."""
        field = self.ring.field
        if len(values) != self.ring.nvars:
            raise ValueError("wrong number of values")
        add, mul = field.add_table, field.mul_table
        acc = 0
        for m, c in self.terms.items():
            v = c
            for val, e in zip(values, m):
                if e:
                    v = mul[v][field.pow_idx(val, e)]
                    if not v:
                        break
            acc = add[acc][v]
        return acc

    def substitute_params(self, assignment) -> "Polynomial":
        """Specialize the parameter variables (all vars past y, x) to field
        indices, returning a polynomial in the (y, x) ring."""
        field = self.ring.field
        xy_ring = PolyRing(field, self.ring.names[:2])
        add, mul = field.add_table, field.mul_table
        if len(assignment) != self.ring.nvars - 2:
            raise ValueError("wrong number of parameter values")
        res: dict[tuple[int, int], int] = {}
        for m, c in self.terms.items():
            v = c
            for val, e in zip(assignment, m[2:]):
                if e:
                    v = mul[v][field.pow_idx(val, e)]
                    if not v:
                        break
            if not v:
                continue
            mono = (m[0], m[1])
            acc = add[res.get(mono, 0)][v]
            if acc:
                res[mono] = acc
            else:
                res.pop(mono, None)
        return Polynomial(xy_ring, res)

    # -- textual format -------------------------------------------------------

    def to_text(self, order: TermOrder | None = None) -> str:
        if not self.terms:
            return "0"
        if order is None:
            order = self.ring.degrevlex
        names = self.ring.names
        # display order: x, y, then parameters
        disp = (1, 0) + tuple(range(2, self.ring.nvars)) if self.ring.nvars >= 2 else (0,)
        parts = []
        for m in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[m]
            factors = []
            for i in disp:
                e = m[i]
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([str(c)] + factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"<{self.to_text()}>"
