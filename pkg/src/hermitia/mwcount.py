"""Counting minimum-weight codewords of phase-3/4 codes by the Groebner
pipeline, and constructing explicit minimum-weight codewords as unions of
lines.

The count works on the generic curve section
f = x^mu * y^lam + sum nu_ab * x^a * y^b over all exponent pairs of weighted
degree below the distance: the specializations of the nu's for which <H, f>
contains both field equations are exactly those cutting a simple rational
divisor of degree d, and each such divisor carries q^2 - 1 minimum-weight
codewords.  The number of good specializations is read off as the number of
rational points of a coefficient ideal in the nu's alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from time import perf_counter

from .errors import BudgetExceededError, ParametricLeadingCoefficientError
from .gf import FieldSpec, field_for_q
from .groebner import (GroebnerBasis, buchberger, count_rational_points,
                       normal_form)
from .hermitian import (Divisor, HermitianCode, build_curve, code_parameters,
                        divisor_cut)
from .poly import BlockOrder, DegRevLex, PolyRing, Polynomial


@dataclass(frozen=True)
class ParameterSupport:
    """Exponent pairs (a, b) with a <= q and a*q + b*(q+1) < d; one generic
    coefficient nu_a_b per pair."""

    q: int
    d: int
    pairs: tuple[tuple[int, int], ...]

    def __len__(self):
        return len(self.pairs)


@dataclass
class MWResult:
    """Outcome of a minimum-weight count, by any method."""

    q: int
    m: int
    d: int
    mu: int | None
    lam: int | None
    num_points_z: int | None
    mw_count: int
    elapsed: float
    method: str


@dataclass
class PipelineArtifacts:
    """Intermediate objects of the counting pipeline, for inspection."""

    code: HermitianCode
    support: ParameterSupport
    ring: PolyRing
    order: BlockOrder
    f: Polynomial
    H: Polynomial
    basis: GroebnerBasis
    nf_x: Polynomial
    nf_y: Polynomial
    param_ring: PolyRing
    coefficient_gens: list[Polynomial]


def parameter_support(q: int, d: int) -> ParameterSupport:
    pairs = [(a, b) for a in range(q + 1) for b in range(d)
             if a * q + b * (q + 1) < d]
    return ParameterSupport(q=q, d=d, pairs=tuple(sorted(pairs)))


def parametric_ring(spec: FieldSpec, ps: ParameterSupport) -> PolyRing:
    names = ("y", "x") + tuple(f"nu_{a}_{b}" for a, b in ps.pairs)
    return PolyRing(spec, names)


def generic_polynomial(spec: FieldSpec, ps: ParameterSupport,
                       mu: int, lam: int) -> Polynomial:
    """x^mu y^lam plus the generic tail with one nu coefficient per pair."""
    ring = parametric_ring(spec, ps)
    npar = len(ps.pairs)
    terms = {(lam, mu) + (0,) * npar: 1}
    for i, (a, b) in enumerate(ps.pairs):
        mono = (b, a) + tuple(1 if j == i else 0 for j in range(npar))
        terms[mono] = 1
    return Polynomial(ring, terms)


def pipeline_artifacts(q: int, m: int, *, deadline: float | None = None) -> PipelineArtifacts:
    """Run the Groebner stages and collect the coefficient ideal generators."""
    spec = field_for_q(q)
    ctx = build_curve(spec)
    code = code_parameters(ctx, m)
    if code.phase not in (3, 4):
        raise ValueError(
            f"m = {m} is a phase-{code.phase} label; the pipeline covers phases 3-4 "
            f"(m >= {2 * q * q - 2 * q - 2})")
    ps = parameter_support(q, code.d)
    ring = parametric_ring(spec, ps)
    f = generic_polynomial(spec, ps, code.mu, code.lam)
    H = ring.gen("x", q + 1) - ring.gen("y", q) - ring.gen("y")
    order = BlockOrder(ring.nvars)
    basis = buchberger([H, f], order, deadline=deadline)
    for g in basis:
        lm = g.leading_monomial(order)
        if any(lm[2:]):
            raise ParametricLeadingCoefficientError(
                f"basis element with leading monomial {lm} involves a parameter "
                "variable; the generic section lost its expected structure")
    q2 = spec.q2
    nf_x = normal_form(ring.gen("x", q2) - ring.gen("x"), basis, deadline=deadline)
    nf_y = normal_form(ring.gen("y", q2) - ring.gen("y"), basis, deadline=deadline)
    param_ring = PolyRing(spec, ring.names[2:])
    coeff_gens = _coefficient_ideal(nf_x, nf_y, param_ring)
    return PipelineArtifacts(code=code, support=ps, ring=ring, order=order,
                             f=f, H=H, basis=basis, nf_x=nf_x, nf_y=nf_y,
                             param_ring=param_ring, coefficient_gens=coeff_gens)


def _coefficient_ideal(nf_x: Polynomial, nf_y: Polynomial,
                       param_ring: PolyRing) -> list[Polynomial]:
    """Coefficients of the two normal forms with respect to x, y, ordered by
    (xy-monomial, which normal form)."""
    grouped: dict[tuple[tuple[int, int], int], dict[tuple[int, ...], int]] = {}
    for which, nf in enumerate((nf_x, nf_y)):
        for mono, c in nf.terms.items():
            key = ((mono[0], mono[1]), which)
            grouped.setdefault(key, {})[mono[2:]] = c
    xy_key = DegRevLex(2).key
    gens = []
    for (xy, which) in sorted(grouped, key=lambda t: (xy_key(t[0]), t[1])):
        gens.append(Polynomial(param_ring, grouped[(xy, which)]))
    return gens


def count_min_weight(q: int, m: int, *, budget_secs: float | None = None) -> MWResult:
    """Number of minimum-weight codewords of the phase-3/4 code labelled m.

    Runs the Groebner pipeline and multiplies the number of rational points
    of the coefficient ideal by q**2 - 1.  An optional wall-clock budget
    aborts with BudgetExceededError (carrying the stage reached).
    """
    t0 = perf_counter()
    deadline = t0 + budget_secs if budget_secs is not None else None
    try:
        art = pipeline_artifacts(q, m, deadline=deadline)
        spec = art.ring.field
        if art.coefficient_gens:
            z = count_rational_points(art.coefficient_gens, spec, deadline=deadline)
        else:
            # both normal forms vanish identically: every assignment is good
            z = spec.q2 ** len(art.support)
    except BudgetExceededError as exc:
        exc.elapsed = perf_counter() - t0
        raise
    code = art.code
    return MWResult(q=q, m=m, d=code.d, mu=code.mu, lam=code.lam,
                    num_points_z=z, mw_count=z * (spec.q2 - 1),
                    elapsed=perf_counter() - t0, method="algorithm1")


def line_union_codeword(code: HermitianCode, seed: int = 0) -> tuple[Polynomial, Divisor]:
    """A polynomial F that is a product of mu distinct vertical lines and lam
    distinct non-vertical lines cutting a simple rational divisor of degree d,
    together with that divisor.

    Admissibility: every non-vertical line y = beta_j needs Tr(beta_j) != 0,
    and no chosen vertical line x = alpha_i may pass through a curve point of
    a chosen horizontal line, i.e. N(alpha_i) != Tr(beta_j).  The seed picks
    a parameter combination deterministically; inadmissible combinations are
    skipped by probing forward, so any seed yields a valid sample.
    """
    if code.phase not in (3, 4):
        raise ValueError("line unions target phase 3-4 codes")
    ctx = code.ctx
    spec = ctx.spec
    q2 = spec.q2
    mu, lam = code.mu, code.lam
    beta_pool = [i for i in range(q2) if spec.trace_table[i] != 0]
    alpha_combos = list(combinations(range(q2), mu))
    beta_combos = list(combinations(beta_pool, lam))
    total = len(alpha_combos) * len(beta_combos)
    if total == 0:
        raise ValueError(
            f"not enough admissible line parameters for mu={mu}, lam={lam}")
    start = seed % total
    for off in range(total):
        pos = (start + off) % total
        alphas = alpha_combos[pos // len(beta_combos)]
        betas = beta_combos[pos % len(beta_combos)]
        if all(spec.norm_table[a] != spec.trace_table[b]
               for a in alphas for b in betas):
            F = ctx.ring.one()
            for a in alphas:
                F = F * (ctx.ring.gen("x") - ctx.ring.constant(a))
            for b in betas:
                F = F * (ctx.ring.gen("y") - ctx.ring.constant(b))
            D, simple_rational = divisor_cut(ctx, F)
            assert simple_rational and len(D) == code.d
            return F, D
    raise ValueError(
        f"no admissible union of {mu} vertical and {lam} non-vertical lines exists")
