"""Rank-one trigonal deformations: quadrics, the annihilator system and its base locus.

Everything is expressed on the scroll S = F_n carrying the canonical curve:
H^0(K_C) is H^0(S, H) and H^0(2K_C) is H^0(S, 2H), so functionals on
H^0(2K_C) (tangent vectors to moduli) are vectors on the 2H monomial basis.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Any, Sequence

from . import cox
from .cox import SyzygyBlock, X1_POLY, XINF_POLY, monomial_basis, t_monomials
from .kernel import (
    Matrix,
    Poly,
    analyze_binary_form,
    binary_form_coefficients,
    binary_form_gcd,
    binary_form_sqrt,
    exact_divide,
    format_rational,
    poly_gcd,
    rational_sqrt,
    same_span,
    span_rank,
)
from .rng import IntegerStream
from .surface import DivisorClass, h0, intersect, maroni_range
from .trigonal import TrigonalCurve, gaussian_test, maroni_verify, random_curve


class DegeneracyError(AssertionError):
    """A curve failed a dimension count the theory predicts for smooth trigonal curves."""


# ---------------------------------------------------------------------------
# quadrics through the canonical curve


@dataclass(frozen=True)
class QuadricSpace:
    g: int
    basis: tuple[Matrix, ...]  # symmetric g x g matrices
    mult_rank: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def evaluate(self, y: Sequence) -> list[Fraction]:
        y = [Fraction(v) for v in y]
        return [
            sum((q[i, j] * y[i] * y[j] for i in range(self.g) for j in range(self.g)), Fraction(0))
            for q in self.basis
        ]

    def annihilated_by(self, q: Matrix) -> bool:
        """Does the quadratic functional with Gram matrix q vanish on every quadric?"""
        return all(
            sum((b[i, j] * q[i, j] for i in range(self.g) for j in range(self.g)), Fraction(0)) == 0
            for b in self.basis
        )


def canonical_basis(curve: TrigonalCurve) -> list:
    return cox.monomial_basis(curve.ctx.H)


def bicanonical_basis(curve: TrigonalCurve) -> list:
    return cox.monomial_basis(2 * curve.ctx.H)


def sym2_multiplication(curve: TrigonalCurve) -> tuple[Matrix, list[tuple[int, int]]]:
    """Sym^2 H^0(K) -> H^0(2K) in the restriction models of H and 2H."""
    ctx = curve.ctx
    can = cox.restriction_model(curve, ctx.H)
    bican = cox.restriction_model(curve, 2 * ctx.H)
    if can.relations or bican.relations or can.dim != curve.g or bican.dim != 3 * curve.g - 3:
        raise DegeneracyError("canonical or bicanonical model is not the full surface space")
    pairs = list(combinations_with_replacement(range(len(can.basis)), 2))
    cols = []
    for i, j in pairs:
        prod = Poly.monomial(can.basis[i]) * Poly.monomial(can.basis[j])
        cols.append(cox.coordinates(prod, bican.basis))
    return Matrix.from_columns(cols, len(bican.basis)), pairs


def _gram(g: int, pairs, coeffs) -> Matrix:
    m = [[Fraction(0)] * g for _ in range(g)]
    for (i, j), c in zip(pairs, coeffs):
        if i == j:
            m[i][i] = c
        else:
            m[i][j] = m[j][i] = c / 2
    return Matrix.from_rows(m, g)


def quadrics_I2(curve: TrigonalCurve) -> QuadricSpace:
    mu, pairs = sym2_multiplication(curve)
    return QuadricSpace(curve.g, tuple(_gram(curve.g, pairs, v) for v in mu.kernel()), mu.rank)


def s_point_vectors(curve: TrigonalCurve, point: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    """Values of the H- and 2H-monomials at a point (t0, t1, x_inf, x1) of S."""
    can = [Poly.monomial(e).evaluate(point) for e in canonical_basis(curve)]
    bican = [Poly.monomial(e).evaluate(point) for e in bicanonical_basis(curve)]
    return can, bican


def random_s_points(curve: TrigonalCurve, count: int, stream: IntegerStream) -> list[tuple[int, ...]]:
    pts = []
    while len(pts) < count:
        p = tuple(stream.integers(4, -9, 9))
        can, _ = s_point_vectors(curve, p)
        if any(can) and p not in pts:
            pts.append(p)
    return pts


@dataclass(frozen=True)
class QuadricRank:
    rank: int
    in_tangent_space: bool  # xi annihilates I_2, i.e. comes from a functional on H^0(2K)


def quadric_rank(curve: TrigonalCurve, xi, quadrics: QuadricSpace | None = None) -> QuadricRank:
    """Rank of q_xi = xi o mu on H^0(K).

    ``xi`` is either a vector on the 2H monomial basis (a functional on
    H^0(2K)), or a symmetric g x g Matrix giving a functional on Sym^2 H^0(K).
    """
    g = curve.g
    if isinstance(xi, Matrix):
        if xi.rows != g or xi.cols != g:
            raise ValueError("quadratic functional must be g x g")
        q = xi
        if quadrics is None:
            quadrics = quadrics_I2(curve)
        return QuadricRank(q.rank, quadrics.annihilated_by(q))
    bican = bicanonical_basis(curve)
    if len(xi) != len(bican):
        raise ValueError(f"expected {len(bican)} values on H^0(2K), got {len(xi)}")
    index = {e: i for i, e in enumerate(bican)}
    can = canonical_basis(curve)
    rows = [
        [Fraction(xi[index[tuple(a + b for a, b in zip(ei, ej))]]) for ej in can] for ei in can
    ]
    return QuadricRank(Matrix.from_rows(rows, g).rank, True)


def point_functional(y: Sequence) -> Matrix:
    """The quadratic functional Q -> Q(y) on Sym^2 H^0(K) for a point y of P^(g-1)."""
    y = [Fraction(v) for v in y]
    return Matrix.from_rows([[a * b for b in y] for a in y], len(y))


# ---------------------------------------------------------------------------
# the annihilator system


def vanishing_blocks(curve: TrigonalCurve, d: DivisorClass) -> list[SyzygyBlock]:
    """Blocks for s * x_inf in (F, F_x1) at bidegree D + B: the R_V-vanishing encoding."""
    ctx = curve.ctx
    target = d + ctx.B
    return [
        SyzygyBlock(XINF_POLY, d),
        SyzygyBlock(-1 * curve.F, target - ctx.C),
        SyzygyBlock(-1 * curve.F_x1, target - ctx.QV),
    ]


def vanishing_on_rv(curve: TrigonalCurve, d: DivisorClass) -> list[Poly]:
    """Basis of sections of D with s * x_inf in (F, F_x1) at bidegree D + B."""
    return cox.projected_solutions(vanishing_blocks(curve, d))


def satisfies_rv_encoding(curve: TrigonalCurve, s: Poly, d: DivisorClass) -> bool:
    ok, _ = cox.ideal_membership_at_bidegree(
        XINF_POLY * s, [curve.F, curve.F_x1], d + curve.ctx.B
    )
    return ok


def lambda_generators(curve: TrigonalCurve) -> list[Poly]:
    g, k = curve.g, curve.k
    gens = [m * curve.F_x1 for m in t_monomials(g - 4 - k)]
    gens += [m * curve.F_xinf for m in t_monomials(k - 2)]
    return gens


@dataclass(frozen=True)
class LambdaSystem:
    bidegree: DivisorClass
    generators: tuple[Poly, ...]
    oracle: tuple[Poly, ...]
    generator_rank: int
    span_match: bool
    fixed: Poly
    residual: DivisorClass

    @property
    def dim(self) -> int:
        return len(self.oracle)

    @property
    def fixed_class(self) -> DivisorClass:
        return self.bidegree - self.residual


def lambda_space(curve: TrigonalCurve, strict: bool = False) -> LambdaSystem:
    ctx = curve.ctx
    d = 2 * ctx.H
    gens = lambda_generators(curve)
    oracle = vanishing_on_rv(curve, d)
    basis = monomial_basis(d)
    gv = [cox.coordinates(p, basis) for p in gens]
    ov = [cox.coordinates(p, basis) for p in oracle]
    match = same_span(gv, ov, len(basis))
    if strict and not (match and len(oracle) == curve.g - 4):
        raise DegeneracyError(
            f"Lambda: {len(gens)} generators of rank {span_rank(gv, len(basis))}, "
            f"oracle dim {len(oracle)}, expected {curve.g - 4}"
        )
    fixed, residual = cox.fixed_part(list(oracle), ctx.n)
    return LambdaSystem(
        d, tuple(gens), tuple(oracle), span_rank(gv, len(basis)), match, fixed, residual
    )


def dim_T(curve: TrigonalCurve, lam: LambdaSystem | None = None) -> int:
    lam = lam or lambda_space(curve)
    return (3 * curve.g - 3) - lam.dim


def unique_qv(curve: TrigonalCurve) -> list[Poly]:
    """Sections of class Q_V = 2B + (g-k)R vanishing on R_V (the pencil G when n = 0)."""
    return vanishing_on_rv(curve, curve.ctx.QV)


def qv_spanned_by_F_x1(curve: TrigonalCurve, sols: Sequence[Poly]) -> bool:
    basis = monomial_basis(curve.ctx.QV)
    expected = [curve.F_x1] if curve.n > 0 else [curve.F_x1, curve.F_xinf]
    return same_span(
        [cox.coordinates(p, basis) for p in sols],
        [cox.coordinates(p, basis) for p in expected],
        len(basis),
    )


def lambda_prime(curve: TrigonalCurve) -> cox.SectionSpace:
    ctx = curve.ctx
    if ctx.n <= 0:
        raise ValueError("Lambda' is defined for g > 2k + 2")
    sols = vanishing_on_rv(curve, ctx.Q1)
    basis = monomial_basis(ctx.Q1)
    return cox.subspace_from_vectors(
        ctx.Q1, [cox.coordinates(p, basis) for p in sols], method="lambda_prime"
    )


def lambda_prime_expected(curve: TrigonalCurve) -> list[Poly]:
    return [m * curve.F_x1 for m in t_monomials(curve.n)] + [curve.F_xinf]


def lambda_equals_omega_image(curve: TrigonalCurve, lam: LambdaSystem) -> bool:
    """Lambda restricted to C against Omega_V * H^0(C, K - 2L).

    Omega_V * u is represented by the 2H-section s with s * x_inf = F_x1 * u mod F.
    """
    ctx = curve.ctx
    d = 2 * ctx.H
    target = d + ctx.B
    images = []
    for e in monomial_basis(ctx.H - 2 * ctx.R):
        u = Poly.monomial(e)
        # unknowns: s in H^0(2H), w with F * w, and a scalar c with c * F_x1 * u
        sols = cox.solve_syzygies([
            SyzygyBlock(XINF_POLY, d),
            SyzygyBlock(-1 * curve.F, target - ctx.C),
            SyzygyBlock(-1 * curve.F_x1 * u, ctx.cls(0, 0)),
        ])
        particular = [s for s in sols if not s[2].is_zero()]
        if len(particular) != 1:
            return False
        s, _, c = particular[0]
        images.append(s * (1 / c.coefficient((0, 0, 0, 0))))
    basis = monomial_basis(d)
    return same_span(
        [cox.coordinates(p, basis) for p in images],
        [cox.coordinates(p, basis) for p in lam.oracle],
        len(basis),
    ) and len(images) == curve.g - 4


# ---------------------------------------------------------------------------
# base locus and the curve Gamma


@dataclass(frozen=True)
class BaseLocus:
    fixed_class: DivisorClass
    residual_degree_budget: int
    ci_degree: int
    qv_q1_coprime: bool
    rv_contained: bool


def base_locus_analysis(curve: TrigonalCurve, lam: LambdaSystem | None = None) -> BaseLocus:
    ctx = curve.ctx
    lam = lam or lambda_space(curve)
    fixed_class = lam.fixed_class
    coprime = poly_gcd(curve.F_x1, curve.F_xinf) == Poly.constant(1)
    ci = intersect(ctx.QV, ctx.Q1)
    rv = all(satisfies_rv_encoding(curve, s, lam.bidegree) for s in lam.generators)
    budget = ci if fixed_class.pair == (0, 0) else intersect(lam.residual, lam.residual)
    return BaseLocus(fixed_class, budget, ci, coprime, rv)


@dataclass(frozen=True)
class GammaAnalysis:
    fiber_discriminant: tuple[Fraction, ...]  # b^2 - 3ac, t0-descending
    reduced: bool
    irreducible: bool
    smooth: bool
    split_classes: tuple[DivisorClass, ...]
    components: tuple[Poly, ...]
    degenerate_components: bool  # every component lies in a hyperplane of |H|

    @property
    def split_pairs(self) -> list[tuple[int, int]]:
        return [c.pair for c in self.split_classes]


def gamma_analysis(curve: TrigonalCurve) -> GammaAnalysis:
    """Reducibility and smoothness of Gamma = {F_x1 = 0} for k = 1.

    F_x1 = 3a x1^2 + 2b x1 x_inf + c x_inf^2 splits over Qbar exactly when
    b^2 - 3ac is a square of a binary form over Qbar.
    """
    ctx = curve.ctx
    if curve.k != 1:
        raise ValueError("Gamma analysis applies to Maroni degree 1")
    a, b, c = curve.alpha_poly(3), curve.alpha_poly(2), curve.alpha_poly(1)
    disc = b * b - 3 * a * c
    gamma_poly = curve.F_x1
    if disc.is_zero():
        coeffs: tuple[Fraction, ...] = ()
        lin = 3 * a * X1_POLY + b * XINF_POLY
        comp = _strip_t_content(lin, ctx.n)
        classes = (_cls_of(comp, ctx),) * 2
        return GammaAnalysis(coeffs, False, False, False, classes, (comp, comp),
                             all(_degenerate(cl, ctx) for cl in classes))
    coeffs = tuple(binary_form_coefficients(disc))
    info = analyze_binary_form(list(coeffs))
    if not info.is_square:
        return GammaAnalysis(coeffs, True, True, info.squarefree, (ctx.QV,), (gamma_poly,),
                             _degenerate(ctx.QV, ctx))
    lam, q = binary_form_sqrt(list(coeffs))
    root = rational_sqrt(lam)
    if root is None:
        # the two components are exchanged by Gal(Q(sqrt(lam))/Q), hence share a class
        half = ctx.QV.b // 2
        classes = (ctx.cls(1, half),) * 2 if ctx.QV.b % 2 == 0 else ()
        return GammaAnalysis(coeffs, True, False, False, classes, (),
                             bool(classes) and all(_degenerate(cl, ctx) for cl in classes))
    delta = Poly.binary_form([root * x for x in q])
    first = _strip_t_content(3 * a * X1_POLY + (b + delta) * XINF_POLY, ctx.n)
    second = exact_divide(gamma_poly, first)
    comps = (first.normalized(), second.normalized())
    classes = tuple(_cls_of(p, ctx) for p in comps)
    return GammaAnalysis(coeffs, True, False, False, classes, comps,
                         all(_degenerate(cl, ctx) for cl in classes))


def _strip_t_content(p: Poly, n: int) -> Poly:
    """Divide a form linear in (x1, x_inf) by the gcd of its two binary-form coefficients."""
    parts = []
    for idx in (0, 1):  # x_inf-part, x1-part
        terms = {(e[0], e[1], 0, 0): c for e, c in p.items() if e[3] == idx}
        parts.append(Poly(terms))
    nonzero = [binary_form_coefficients(q) for q in parts if not q.is_zero()]
    common = nonzero[0]
    for other in nonzero[1:]:
        common = binary_form_gcd(common, other)
    if len(common) == 1:
        return p
    return exact_divide(p, Poly.binary_form(common))


def _cls_of(p: Poly, ctx) -> DivisorClass:
    return ctx.cls(*p.bidegree(ctx.n))


def _degenerate(cl: DivisorClass, ctx) -> bool:
    return h0(ctx.H - cl) > 0


# ---------------------------------------------------------------------------
# theorem driver


@dataclass
class Check:
    name: str
    expected: Any
    computed: Any
    passed: bool

    def to_json_dict(self) -> dict:
        return {"name": self.name, "expected": jsonable(self.expected),
                "computed": jsonable(self.computed), "pass": self.passed}


@dataclass
class VerificationReport:
    g: int
    k: int
    seed: int | None
    curve_file: str | None = None
    checks: list[Check] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.g - 2 - 2 * self.k

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, name: str, expected, computed, passed: bool | None = None) -> Check:
        if passed is None:
            passed = expected == computed
        chk = Check(name, expected, computed, bool(passed))
        self.checks.append(chk)
        return chk

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failing(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json_dict(self) -> dict:
        return {
            "g": self.g,
            "k": self.k,
            "n": self.n,
            "seed": jsonable(self.seed),
            "curve_file": self.curve_file,
            "checks": [c.to_json_dict() for c in self.checks],
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"


def jsonable(v):
    """JSON-safe form: integers beyond 53 bits, rationals and polynomials become strings."""
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return v if abs(v) < 2 ** 53 else str(v)
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, DivisorClass):
        return [v.a, v.b]
    if isinstance(v, Poly):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    raise TypeError(f"cannot serialize {type(v).__name__}")


K2_EXCEPTIONS = {(6, 1), (7, 1)}
POINTS_PER_CURVE = 5


def expected_fixed_class(g: int, k: int) -> tuple[int, int]:
    if (g, k) in K2_EXCEPTIONS:
        return (2, g - k)
    return (0, 0)


def verify_curve(curve: TrigonalCurve, curve_file: str | None = None) -> VerificationReport:
    g, k = curve.g, curve.k
    ctx = curve.ctx
    rep = VerificationReport(g, k, curve.seed, curve_file)

    cert = curve.certificate
    rep.add("discriminant_degree", 2 * g + 4, cert.discriminant_degree)
    rep.add("smooth_certificate", True, cert.ok)
    if not cert.ok:
        return rep
    rep.add("euler_identity", True, curve.euler_identity_holds())

    mar = maroni_verify(curve)
    rep.add("maroni", k, mar.k)

    gauss = gaussian_test(curve)
    rep.add("gaussian_corollary", True, gauss.not_in_image)

    quad = quadrics_I2(curve)
    rep.add("dim_I2", (g - 2) * (g - 3) // 2, quad.dim)
    rep.add("mult_rank", 3 * g - 3, quad.mult_rank)

    stream = IntegerStream(curve.seed or 0, (g, k, 1))
    points = random_s_points(curve, POINTS_PER_CURVE, stream)
    ranks, on_s = [], True
    for p in points:
        can, bican = s_point_vectors(curve, p)
        ranks.append(quadric_rank(curve, bican).rank)
        on_s = on_s and not any(quad.evaluate(can))
    rep.add("rank_one", [1] * POINTS_PER_CURVE, ranks)
    rep.add("quadrics_vanish_on_S", True, on_s)

    lam = lambda_space(curve)
    rep.add("dim_lambda", g - 4, lam.dim)
    rep.add("lambda_span_match", True, lam.span_match and lam.generator_rank == lam.dim)
    rep.add("lambda_omega_image", True, lambda_equals_omega_image(curve, lam))
    rep.add("dim_T", 2 * g + 1, dim_T(curve, lam))

    sols = unique_qv(curve)
    rep.add("unique_qv", 1 if ctx.n > 0 else 2, len(sols),
            len(sols) == (1 if ctx.n > 0 else 2) and qv_spanned_by_F_x1(curve, sols))

    if ctx.n > 0:
        lp = lambda_prime(curve)
        contains = all(lp.contains(p) for p in lambda_prime_expected(curve))
        rep.add("lambda_prime_dim", g - 2 * k, lp.dim, lp.dim == g - 2 * k and contains)

    base = base_locus_analysis(curve, lam)
    rep.add("fixed_part", list(expected_fixed_class(g, k)), list(base.fixed_class.pair))
    if (g, k) in K2_EXCEPTIONS:
        rep.add("fixed_part_is_qv", True, lam.fixed == curve.F_x1.normalized())
    rep.add("coprime_qv_q1", True, base.qv_q1_coprime)
    rep.add("ci_degree", ctx.ramification_degree, base.ci_degree)
    rep.add("rv_contained", True, base.rv_contained)

    if k == 1 and g in (6, 7):
        gam = gamma_analysis(curve)
        rep.add("gamma_irreducible", True, gam.irreducible)
        rep.add("gamma_smooth", True, gam.smooth)
    return rep


def verify_theorem(g: int, k: int, seed: int) -> VerificationReport:
    if k not in maroni_range(g):
        raise ValueError(f"k={k} is not admissible for g={g}")
    curve = random_curve(g, k, seed)
    return verify_curve(curve)
