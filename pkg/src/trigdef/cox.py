"""Bigraded coordinate ring of F_n and section spaces built from it.

Variables and weights: t0, t1 have bidegree (0, 1), x_inf has (1, 0) and
x1 has (1, n), so H^0(F_n, aB + bR) is spanned by the monomials
``x1^i x_inf^(a-i) t0^j t1^(b-in-j)``. Every space used downstream is a
subspace or quotient of one of these monomial spaces, and every map is an
exact matrix in the monomial bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .kernel import (
    X1,
    Exponent,
    Matrix,
    Poly,
    monomial_key,
    poly_gcd_all,
    rref,
    span_rank,
    subspace_membership,
)
from .surface import DivisorClass, h1, intersect

XINF_POLY = Poly.var("xinf")
X1_POLY = Poly.var("x1")
T0_POLY = Poly.var("t0")
T1_POLY = Poly.var("t1")


class BidegreeMismatch(ValueError):
    pass


def grading_weights(n: int) -> dict[str, tuple[int, int]]:
    return {"t0": (0, 1), "t1": (0, 1), "xinf": (1, 0), "x1": (1, n)}


def monomial_basis(d: DivisorClass) -> list[Exponent]:
    """Monomials of bidegree (a, b), largest first in the fixed order."""
    if d.a < 0:
        return []
    out = []
    for i in range(d.a + 1):
        top = d.b - i * d.n
        for j in range(top + 1):
            out.append((j, top - j, d.a - i, i))
    out.sort(key=monomial_key, reverse=True)
    return out


def t_monomials(degree: int) -> list[Poly]:
    if degree < 0:
        return []
    return [Poly.monomial((degree - j, j, 0, 0)) for j in range(degree + 1)]


def coordinates(p: Poly, basis: Sequence[Exponent]) -> list[Fraction]:
    index = {e: i for i, e in enumerate(basis)}
    v = [Fraction(0)] * len(basis)
    for e, c in p.items():
        if e not in index:
            raise BidegreeMismatch(f"monomial {e} is not in the basis")
        v[index[e]] = c
    return v


def from_coordinates(v: Sequence, basis: Sequence[Exponent]) -> Poly:
    return Poly({e: c for e, c in zip(basis, v)})


def check_bidegree(p: Poly, d: DivisorClass) -> None:
    if p.is_zero():
        return
    got = p.bidegree(d.n)
    if got != d.pair:
        raise BidegreeMismatch(f"expected bidegree {d.pair}, got {got}")


def mult_map(d1: DivisorClass, d2: DivisorClass) -> Matrix:
    """Matrix of H^0(D1) (x) H^0(D2) -> H^0(D1 + D2).

    Columns are indexed by pairs (m1, m2) in row-major order of the two bases.
    """
    if d1.a < 0 or d2.a < 0:
        raise BidegreeMismatch("multiplication map needs effective monomial spaces")
    target = monomial_basis(d1 + d2)
    index = {e: i for i, e in enumerate(target)}
    columns = []
    for m1 in monomial_basis(d1):
        for m2 in monomial_basis(d2):
            col = [0] * len(target)
            col[index[tuple(a + b for a, b in zip(m1, m2))]] = 1
            columns.append(col)
    if not columns:
        return Matrix.zeros(len(target), 0)
    return Matrix.from_columns(columns, len(target))


def is_surjective(m: Matrix) -> bool:
    return m.rank == m.rows


def linear_system(columns: Sequence[Sequence[Poly]]) -> tuple[Matrix, list[list[Exponent]]]:
    """Stack polynomial-valued columns into one coefficient matrix.

    ``columns[j][q]`` is the image of unknown j in equation q. Each equation
    gets its own block of rows, indexed by the monomials that occur in it.
    """
    neq = len(columns[0]) if columns else 0
    bases: list[list[Exponent]] = []
    for q in range(neq):
        monos = set()
        for col in columns:
            monos.update(col[q].terms)
        bases.append(sorted(monos, key=monomial_key, reverse=True))
    rows_total = sum(len(b) for b in bases)
    cols = []
    for col in columns:
        v: list[Fraction] = []
        for q, b in enumerate(bases):
            terms = col[q].terms
            v.extend(terms.get(e, Fraction(0)) for e in b)
        cols.append(v)
    if not cols:
        return Matrix.zeros(rows_total, 0), bases
    return Matrix.from_columns(cols, rows_total), bases


@dataclass(frozen=True)
class SyzygyBlock:
    multiplier: Poly
    unknown: DivisorClass


def solve_syzygies(blocks: Sequence[SyzygyBlock]) -> list[list[Poly]]:
    """Basis of all (u_1, ..., u_r), u_i in H^0(unknown_i), with sum multiplier_i * u_i = 0."""
    layout = [(i, e) for i, blk in enumerate(blocks) for e in monomial_basis(blk.unknown)]
    if not layout:
        return []
    columns = [[blocks[i].multiplier * Poly.monomial(e)] for i, e in layout]
    m, _ = linear_system(columns)
    out = []
    for vec in m.kernel():
        parts: list[dict[Exponent, Fraction]] = [dict() for _ in blocks]
        for (i, e), c in zip(layout, vec):
            if c:
                parts[i][e] = c
        out.append([Poly(p) for p in parts])
    return out


def projected_solutions(blocks: Sequence[SyzygyBlock], keep: int = 0) -> list[Poly]:
    """Linearly independent projections of the syzygy space onto block ``keep``."""
    basis = monomial_basis(blocks[keep].unknown)
    vecs = [coordinates(sol[keep], basis) for sol in solve_syzygies(blocks)]
    if not vecs:
        return []
    red, _ = rref(vecs, len(basis))
    return [from_coordinates(r, basis) for r in red]


def ideal_membership_at_bidegree(
    s: Poly, gens: Sequence[Poly], d: DivisorClass
) -> tuple[bool, list[Poly] | None]:
    """Is s in sum_i gens[i] * H^0(D - deg gens[i])?  Returns a witness on success."""
    check_bidegree(s, d)
    layout = []
    for i, gen in enumerate(gens):
        if gen.is_zero():
            continue
        gd = gen.bidegree(d.n)
        if gd is None:
            raise BidegreeMismatch(f"generator {i} is not bihomogeneous")
        comp = d - DivisorClass(d.n, *gd)
        layout.extend((i, e) for e in monomial_basis(comp))
    target = monomial_basis(d)
    if not layout:
        return (s.is_zero(), [Poly() for _ in gens] if s.is_zero() else None)
    vectors = [coordinates(gens[i] * Poly.monomial(e), target) for i, e in layout]
    ok, coords = subspace_membership(coordinates(s, target), vectors)
    if not ok:
        return False, None
    witness: list[dict] = [dict() for _ in gens]
    for (i, e), c in zip(layout, coords):
        if c:
            witness[i][e] = c
    return True, [Poly(w) for w in witness]


# ---------------------------------------------------------------------------
# section spaces


@dataclass(frozen=True)
class SectionSpace:
    """A subspace of H^0(F_n, D) in monomial coordinates, modulo a relation subspace.

    ``subspace`` spans the cut-out subspace (the kernel of ``constraints``),
    ``relations`` spans the part that is quotiented away (multiples of the
    curve equation for curve models). ``dim`` is the dimension of the quotient.
    """

    bidegree: DivisorClass
    basis: tuple[Exponent, ...]
    subspace: tuple[tuple[Fraction, ...], ...]
    relations: tuple[tuple[Fraction, ...], ...] = ()
    method: str = "ambient"
    represents: DivisorClass | None = None
    constraints: Matrix = field(default=None, compare=False)

    @property
    def ambient_dim(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        return span_rank(self.subspace, len(self.basis)) - span_rank(self.relations, len(self.basis))

    def sections(self) -> list[Poly]:
        return [from_coordinates(v, self.basis) for v in self.subspace]

    def vector(self, p: Poly) -> list[Fraction]:
        check_bidegree(p, self.bidegree)
        return coordinates(p, self.basis)

    def contains(self, p: Poly) -> bool:
        return subspace_membership(self.vector(p), list(self.subspace))[0]

    def class_in_span(self, p: Poly, others: Sequence[Poly]) -> bool:
        """Is the class of p (mod relations) in the span of the classes of ``others``?"""
        span = [self.vector(o) for o in others] + [list(r) for r in self.relations]
        return subspace_membership(self.vector(p), span)[0]

    def quotient_rank(self, polys: Sequence[Poly]) -> int:
        """Dimension of the span of the classes of ``polys`` modulo relations."""
        rel = [list(r) for r in self.relations]
        vecs = [self.vector(p) for p in polys]
        return span_rank(vecs + rel, len(self.basis)) - span_rank(rel, len(self.basis))


def ambient_space(d: DivisorClass) -> SectionSpace:
    basis = tuple(monomial_basis(d))
    ident = tuple(tuple(Fraction(int(i == j)) for j in range(len(basis))) for i in range(len(basis)))
    return SectionSpace(d, basis, ident, (), "ambient", d, Matrix.zeros(0, len(basis)))


def subspace_from_vectors(
    d: DivisorClass, vectors: Sequence[Sequence], relations=(), method="subspace", represents=None
) -> SectionSpace:
    basis = tuple(monomial_basis(d))
    if vectors:
        red, _ = rref([list(v) for v in vectors], len(basis))
    else:
        red = []
    if red:
        cons = Matrix.from_rows(Matrix.from_rows(red, len(basis)).kernel() or [], len(basis))
    else:
        cons = Matrix.identity(len(basis))
    return SectionSpace(
        d, basis, tuple(tuple(r) for r in red),
        tuple(tuple(r) for r in relations), method, represents, cons,
    )


def restriction_model(curve, d: DivisorClass, method: str = "auto") -> SectionSpace:
    """Model of H^0(C, D|_C) by surface sections.

    ``quotient``: H^0(S, D) / F * H^0(S, D - C), valid when h^1(D - C) = 0.
    ``twist``: sections of D + 2A whose restriction vanishes on the divisor
    cut by x1^2, modulo F; multiplication by x1^2 identifies this with
    H^0(C, D|_C). Requires h^1(D + 2A - C) = 0.
    ``auto`` picks quotient whenever it is valid.
    """
    if not curve.smooth:
        raise ValueError("restriction models need a curve with a smoothness certificate")
    ctx = curve.ctx
    if d.n != ctx.n:
        raise BidegreeMismatch(f"class on F_{d.n}, curve on F_{ctx.n}")
    if d.a < 0:
        raise BidegreeMismatch("restriction model needs D.a >= 0")
    if method == "auto":
        method = "quotient" if h1(d - ctx.C) == 0 else "twist"
    if method == "quotient":
        if h1(d - ctx.C) != 0:
            raise ValueError(f"quotient model invalid: h1({d - ctx.C}) != 0")
        return _quotient_model(curve, d)
    if method == "twist":
        return _twist_model(curve, d)
    raise ValueError(f"unknown method {method!r}")


def _f_multiples(curve, d: DivisorClass) -> list[Poly]:
    return [curve.F * Poly.monomial(e) for e in monomial_basis(d - curve.ctx.C)]


def _quotient_model(curve, d: DivisorClass) -> SectionSpace:
    basis = tuple(monomial_basis(d))
    full = [tuple(Fraction(int(i == j)) for j in range(len(basis))) for i in range(len(basis))]
    rel = [tuple(coordinates(p, basis)) for p in _f_multiples(curve, d)]
    return SectionSpace(
        d, basis, tuple(full), tuple(rel), "quotient", d, Matrix.zeros(0, len(basis))
    )


def _twist_model(curve, d: DivisorClass) -> SectionSpace:
    ctx = curve.ctx
    twisted = d + 2 * ctx.A
    if h1(twisted - ctx.C) != 0:
        raise ValueError(f"twist class too small: h1({twisted - ctx.C}) != 0")
    alpha0 = curve.alpha_poly(0)  # coefficient of x_inf^3, cuts C on {x1 = 0}
    alpha1 = curve.alpha_poly(1)
    top = twisted.b  # degree of the x_inf^a coefficient
    # unknowns: the section s, then auxiliary forms q0, q1 proving
    #   s0 = q0 * alpha0   and   s0 * alpha1 - s1 * alpha0 = q1 * alpha0^2,
    # where s = s0 x_inf^a + s1 x1 x_inf^(a-1) + (terms divisible by x1^2)
    basis = monomial_basis(twisted)
    columns = []
    for e in basis:
        m = Poly.monomial(e)
        t_part = Poly.monomial((e[0], e[1], 0, 0))
        if e[X1] == 0:
            columns.append([t_part, t_part * alpha1])
        elif e[X1] == 1:
            columns.append([Poly(), -t_part * alpha0])
        else:
            columns.append([Poly(), Poly()])
    deg0 = top - curve.degrees[0]
    deg1 = top - ctx.n - curve.degrees[0]  # deg(s0 * alpha1) - 2 deg(alpha0)
    q0 = t_monomials(deg0)
    q1 = t_monomials(deg1)
    columns += [[-q * alpha0, Poly()] for q in q0]
    columns += [[Poly(), -q * alpha0 * alpha0] for q in q1]
    m, _ = linear_system(columns)
    sols = [v[:len(basis)] for v in m.kernel()]
    sols = [v for v in sols if any(v)]
    rel = [coordinates(p, basis) for p in _f_multiples(curve, twisted)]
    space = subspace_from_vectors(twisted, sols, rel, "twist", d)
    return space


def restriction_degree(curve, d: DivisorClass) -> int:
    return intersect(d, curve.ctx.C)


# ---------------------------------------------------------------------------
# fixed components


def fixed_part(sections: Sequence[Poly], n: int) -> tuple[Poly, DivisorClass]:
    """gcd of a linear system's members and the bidegree left after removing it."""
    sections = [s for s in sections if not s.is_zero()]
    if not sections:
        raise ValueError("fixed part of an all-zero family is undefined")
    degs = {s.bidegree(n) for s in sections}
    if None in degs or len(degs) != 1:
        raise BidegreeMismatch("sections must share one bidegree")
    total = DivisorClass(n, *degs.pop())
    g = poly_gcd_all(sections)
    gd = g.bidegree(n)
    return g, total - DivisorClass(n, *gd)
