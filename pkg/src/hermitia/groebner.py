"""Buchberger's algorithm, normal forms, staircases and rational-point
counting for ideals over GF(q**2).

The engine works on the packed integer keys provided by the term orders in
:mod:`hermitia.poly`: multiplication is integer addition, divisibility is a
guard-bit test, and the heap used for full reduction compares keys directly.
Critical pairs are pruned with the two standard criteria (coprime leading
monomials and the chain criterion, in their Gebauer-Moeller formulation) and
selected by the normal strategy (smallest lcm first).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from heapq import heapify, heappop, heappush
from time import perf_counter

import numpy as np

from .errors import BudgetExceededError, NotZeroDimensionalError
from .gf import FieldSpec
from .poly import DegRevLex, PolyRing, Polynomial, TermOrder


class _WidthOverflow(Exception):
    """A basis leading monomial outgrew the packed key width envelope."""


class _Engine:
    """Packed-key polynomial reduction against an append-only basis."""

    def __init__(self, fieldspec: FieldSpec, order: TermOrder, deadline=None):
        self.order = order
        self.K = order.K
        self.GUARD = order.GUARD
        self._deg_shift = getattr(order, "deg_shift", None)
        self._max_lm_deg = getattr(order, "max_total_degree", None)
        self.add = fieldspec.add_table
        self.mul = fieldspec.mul_table
        self.neg = fieldspec.neg_table
        self.negmul = fieldspec.negmul_table
        self.inv = fieldspec.inv_table
        self.deadline = deadline
        self.lms: list[int] = []
        self.tails: list[list[tuple[int, int]]] = []
        # monomial key -> (reducer index or None, basis size when cached);
        # valid forever because the basis only grows during a run
        self._red_cache: dict[int, tuple[int | None, int]] = {}
        self._steps = 0

    def add_basis(self, p: dict[int, int]) -> int:
        lm = max(p)
        if self._max_lm_deg is not None and (lm >> self._deg_shift) > self._max_lm_deg:
            raise _WidthOverflow(
                f"leading monomial degree {lm >> self._deg_shift} exceeds the "
                f"safe bound {self._max_lm_deg} for this key width")
        lc = p[lm]
        if lc != 1:
            row = self.mul[self.inv[lc]]
            p = {k: row[v] for k, v in p.items()}
        self.lms.append(lm)
        self.tails.append(sorted(((k, v) for k, v in p.items() if k != lm),
                                 reverse=True))
        return len(self.lms) - 1

    def _scan(self, m: int, start: int):
        lms = self.lms
        G = self.GUARD
        mK = m + self.K
        for i in range(start, len(lms)):
            d = mK - lms[i]
            if d >= 0 and not (d & G):
                self._red_cache[m] = (i, len(lms))
                return i
        self._red_cache[m] = (None, len(lms))
        return None

    def _tick(self):
        self._steps += 1
        if self.deadline is not None and not (self._steps & 0x3FF):
            if perf_counter() > self.deadline:
                raise BudgetExceededError("Groebner computation budget exhausted",
                                          stage="groebner")

    def reduce_full(self, work: dict[int, int]) -> dict[int, int]:
        """Full normal form of `work` (consumed) against the current basis."""
        out: dict[int, int] = {}
        if not work:
            return out
        heap = [-k for k in work]
        heapify(heap)
        add = self.add
        negmul = self.negmul
        K = self.K
        lms, tails = self.lms, self.tails
        cache = self._red_cache
        while heap:
            m = -heappop(heap)
            c = work.pop(m, 0)
            if not c:
                continue
            hit = cache.get(m)
            if hit is None:
                gi = self._scan(m, 0)
            else:
                gi, upto = hit
                if gi is None and upto < len(lms):
                    gi = self._scan(m, upto)
            if gi is None:
                out[m] = c
                continue
            q = m - lms[gi] + K
            nrow = negmul[c]
            for mk, ck in tails[gi]:
                nm = q + mk - K
                prev = work.get(nm)
                if prev is None:
                    work[nm] = nrow[ck]
                    heappush(heap, -nm)
                else:
                    v = add[prev][nrow[ck]]
                    if v:
                        work[nm] = v
                    else:
                        del work[nm]
            self._tick()
        return out

    def lcm_key(self, i: int, j: int) -> int:
        return self.order.lcm_keys(self.lms[i], self.lms[j])

    def product_key(self, i: int, j: int) -> int:
        return self.order.mul(self.lms[i], self.lms[j])

    def spoly(self, i: int, j: int, lcm: int) -> dict[int, int]:
        add, neg = self.add, self.neg
        K = self.K
        qi = lcm - self.lms[i] + K
        qj = lcm - self.lms[j] + K
        work: dict[int, int] = {}
        for mk, ck in self.tails[i]:
            work[qi + mk - K] = ck
        for mk, ck in self.tails[j]:
            nm = qj + mk - K
            v = add[work.get(nm, 0)][neg[ck]]
            if v:
                work[nm] = v
            else:
                work.pop(nm, None)
        return work


def _buchberger_core(eng: _Engine, inputs: list[dict[int, int]],
                     preinserted: list[dict[int, int]] | None = None) -> list[dict[int, int]]:
    pairs: dict[tuple[int, int], int] = {}   # (i, j) i < j -> lcm key
    heap: list[tuple[int, int, int]] = []
    K, GUARD = eng.K, eng.GUARD

    def update(t: int):
        """Gebauer-Moeller pair update after basis element t was added."""
        lmt = eng.lms[t]
        new_lcm = [eng.lcm_key(i, t) for i in range(t)]
        # prune old pairs by the chain criterion
        for (i, j), l in list(pairs.items()):
            d = l - lmt + K
            if d >= 0 and not (d & GUARD):
                if new_lcm[i] != l and new_lcm[j] != l:
                    del pairs[(i, j)]
        # group candidate new pairs by lcm, ascending
        cands: dict[int, list[int]] = {}
        for i in range(t):
            cands.setdefault(new_lcm[i], []).append(i)
        killers: list[int] = []
        for l in sorted(cands):
            dominated = any(
                (d := l - k + K) >= 0 and not (d & GUARD) and k != l
                for k in killers)
            if dominated:
                continue
            members = cands[l]
            coprime = any(l == eng.product_key(i, t) for i in members)
            killers.append(l)
            if not coprime:
                i = members[0]
                pairs[(i, t)] = l
                heappush(heap, (l, i, t))

    for p in preinserted or ():
        update(eng.add_basis(dict(p)))
    for p in sorted(inputs, key=max):
        r = eng.reduce_full(dict(p))
        if r:
            update(eng.add_basis(r))

    while heap:
        l, i, j = heappop(heap)
        if pairs.get((i, j)) != l:
            continue
        del pairs[(i, j)]
        r = eng.reduce_full(eng.spoly(i, j, l))
        if r:
            update(eng.add_basis(r))

    return _interreduce(eng)


def _interreduce(eng: _Engine) -> list[dict[int, int]]:
    """Drop redundant generators and tail-reduce the rest (reduced basis)."""
    order = eng.order
    idx = sorted(range(len(eng.lms)), key=lambda i: eng.lms[i])
    kept: list[int] = []
    kept_lms: list[int] = []
    for i in idx:
        m = eng.lms[i]
        mK = m + eng.K
        if any((d := mK - l) >= 0 and not (d & eng.GUARD) for l in kept_lms):
            continue
        kept.append(i)
        kept_lms.append(m)
    # fresh engine over the kept elements only (the reducer cache of `eng`
    # is stale once redundant generators are dropped)
    final = _Engine(_FieldView(eng), order, eng.deadline)
    for i in kept:
        final.lms.append(eng.lms[i])
        final.tails.append(eng.tails[i])
    out = []
    for pos in range(len(final.lms)):
        tail = final.reduce_full(dict(final.tails[pos]))
        final.tails[pos] = sorted(tail.items(), reverse=True)
        out.append({final.lms[pos]: 1, **tail})
    return out


class _FieldView:
    """Adapter so a fresh engine can reuse another engine's tables."""

    def __init__(self, eng: _Engine):
        self.add_table = eng.add
        self.mul_table = eng.mul
        self.neg_table = eng.neg
        self.negmul_table = eng.negmul
        self.inv_table = eng.inv


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced, monic Groebner basis, generators sorted by ascending
    leading monomial."""

    ring: PolyRing
    order: TermOrder
    generators: tuple[Polynomial, ...]

    @property
    def initial_monomials(self) -> tuple[tuple[int, ...], ...]:
        """Minimal generators of the initial ideal."""
        return tuple(g.leading_monomial(self.order) for g in self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


@dataclass(frozen=True)
class Staircase:
    """The finite set of monomials outside the initial ideal."""

    monomials: tuple[tuple[int, ...], ...]
    complete: bool = True

    def __len__(self):
        return len(self.monomials)

    def __contains__(self, mono):
        return tuple(mono) in set(self.monomials)


def _engine_for(G: GroebnerBasis, deadline=None) -> _Engine:
    eng = _Engine(G.ring.field, G.order, deadline)
    for g in G.generators:
        eng.add_basis({G.order.encode(m): c for m, c in g.terms.items()})
    return eng


def buchberger(gens, order: TermOrder, *, deadline=None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by `gens` under `order`.

    Deterministic and idempotent; raises BudgetExceededError past `deadline`
    (an absolute perf_counter time).
    """
    gens = [g for g in gens if g.terms]
    if not gens:
        raise ValueError("buchberger needs at least one nonzero generator")
    ring = gens[0].ring
    for g in gens[1:]:
        if g.ring != ring:
            raise ValueError("generators from different rings")
    eng = _Engine(ring.field, order, deadline)
    packed = [{order.encode(m): c for m, c in g.terms.items()} for g in gens]
    out = _buchberger_core(eng, packed)
    polys = tuple(
        Polynomial(ring, {order.decode(k): c for k, c in p.items()})
        for p in sorted(out, key=max))
    return GroebnerBasis(ring=ring, order=order, generators=polys)


def normal_form(f: Polynomial, G: GroebnerBasis, *, deadline=None) -> Polynomial:
    """Remainder of f on division by G: no monomial of the result is
    divisible by a leading monomial of G, and f - result lies in <G>."""
    if f.ring != G.ring:
        raise ValueError("polynomial and basis from different rings")
    order = G.order
    eng = _engine_for(G, deadline)
    out = eng.reduce_full({order.encode(m): c for m, c in f.terms.items()})
    return Polynomial(f.ring, {order.decode(k): c for k, c in out.items()})


def staircase(G: GroebnerBasis) -> Staircase:
    """All monomials outside the initial ideal of G (a basis of the quotient).

    Raises NotZeroDimensionalError when some variable has no pure power in
    the initial ideal, which would make the staircase infinite.
    """
    n = G.ring.nvars
    lms = [list(m) for m in G.initial_monomials]
    if any(not any(m) for m in lms):
        return Staircase(monomials=())
    for v in range(n):
        if not any(m[v] and sum(m) == m[v] for m in lms):
            raise NotZeroDimensionalError(
                f"no pure power of {G.ring.names[v]} in the initial ideal")
    gens = np.array(lms, dtype=np.int64)
    start = (0,) * n
    seen = {start}
    queue = deque([start])
    while queue:
        m = queue.popleft()
        for v in range(n):
            child = m[:v] + (m[v] + 1,) + m[v + 1:]
            if child in seen:
                continue
            arr = np.array(child, dtype=np.int64)
            if np.all(gens <= arr, axis=1).any():
                continue
            seen.add(child)
            queue.append(child)
    key = G.order.key
    return Staircase(monomials=tuple(sorted(seen, key=key)))


def count_rational_points(gens, spec: FieldSpec | None = None, *,
                          deadline=None) -> int:
    """Number of points of the variety of <gens + field equations>.

    The field equations v**(q^2) - v are adjoined for every ring variable,
    making the ideal radical with all points rational; the count is the size
    of the staircase of the resulting Groebner basis (the constant value of
    the affine Hilbert polynomial).
    """
    gens = list(gens)
    if not gens:
        raise ValueError("count_rational_points needs at least one generator")
    ring = gens[0].ring
    if spec is not None and spec != ring.field:
        raise ValueError("field spec does not match the generators' ring")
    q2 = ring.field.q2
    eqs = [ring.gen(name, q2) - ring.gen(name) for name in ring.names]
    # Small fields allow narrow key fields (keys fit a machine word, which
    # speeds up dict and heap traffic a lot); fall back to the default
    # widths if the run outgrows the narrow envelope.
    w = (2 * q2).bit_length() + 2
    if w < 16:
        try:
            order = DegRevLex(ring.nvars, width=w, degwidth=w + 1)
            G = buchberger(gens + eqs, order, deadline=deadline)
            return len(staircase(G))
        except (_WidthOverflow, ValueError):
            pass
    G = buchberger(gens + eqs, DegRevLex(ring.nvars), deadline=deadline)
    return len(staircase(G))
