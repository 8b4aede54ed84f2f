"""Exact arithmetic substrate.

Rationals are :class:`fractions.Fraction`. Matrices are dense, row-major and
immutable; elimination is plain Gaussian elimination over Q. Polynomials live
in Q[t0, t1, x_inf, x1] and are stored as a mapping from exponent 4-tuples
``(e_t0, e_t1, e_xinf, e_x1)`` to nonzero rationals.

The fixed monomial order is lexicographic on ``(e_x1, e_xinf, e_t0, e_t1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt
from typing import Iterable, Mapping, Sequence

import sympy

Exponent = tuple[int, int, int, int]

T0, T1, XINF, X1 = range(4)
VARIABLE_NAMES = ("t0", "t1", "xinf", "x1")


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    return Fraction(x)


def format_rational(x: Fraction) -> str:
    """Canonical text form: ``"p"`` or ``"p/q"``."""
    x = as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# matrices


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged rows")
        return cls(len(rows), cols, tuple(as_fraction(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        columns = [list(c) for c in columns]
        if rows is None:
            if not columns:
                raise DimensionMismatch("row count needed for an empty column list")
            rows = len(columns[0])
        for c in columns:
            if len(c) != rows:
                raise DimensionMismatch("ragged columns")
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, size: int) -> "Matrix":
        return cls.from_rows([[int(i == j) for j in range(size)] for i in range(size)], size)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def column(self, j: int) -> list[Fraction]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix.from_rows([self.column(j) for j in range(self.cols)], self.rows)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise DimensionMismatch("row counts differ")
        return Matrix.from_rows(
            [self.row(i) + other.row(i) for i in range(self.rows)], self.cols + other.cols
        )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch("inner dimensions differ")
        cols = [other.column(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.append([sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols])
        return Matrix.from_rows(out, other.cols)

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise DimensionMismatch("vector length differs from column count")
        v = [as_fraction(x) for x in v]
        return [
            sum((a * b for a, b in zip(self.row(i), v) if a and b), Fraction(0))
            for i in range(self.rows)
        ]

    @cached_property
    def _echelon(self) -> tuple[tuple[tuple[Fraction, ...], ...], tuple[int, ...]]:
        rows, pivots = rref(self.to_rows(), self.cols)
        return tuple(tuple(r) for r in rows), tuple(pivots)

    @property
    def rank(self) -> int:
        return len(self._echelon[1])

    @property
    def pivots(self) -> tuple[int, ...]:
        return self._echelon[1]

    def rref(self) -> "Matrix":
        rows, _ = self._echelon
        return Matrix.from_rows(list(rows) + [[0] * self.cols] * (self.rows - len(rows)), self.cols)

    def kernel(self) -> list[list[Fraction]]:
        """Basis of {v : M v = 0}, one vector per free column."""
        return kernel_from_rref(self._echelon[0], self._echelon[1], self.cols)

    def column_space(self) -> list[list[Fraction]]:
        return [self.column(j) for j in self.pivots]

    def is_zero(self) -> bool:
        return not any(self.entries)


def rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    m = [[as_fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        prow = m[r]
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    mi = m[i]
                    for j in nz:
                        mi[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def kernel_from_rref(rows, pivots, ncols) -> list[list[Fraction]]:
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for r, pc in zip(rows, pivots):
            v[pc] = -r[free]
        basis.append(v)
    return basis


def rank(m: Matrix) -> int:
    return m.rank


def span_rank(vectors: Sequence[Sequence], length: int | None = None) -> int:
    vectors = list(vectors)
    if not vectors:
        return 0
    return Matrix.from_rows(vectors, length).rank


def subspace_membership(
    v: Sequence, spanning: Sequence[Sequence]
) -> tuple[bool, list[Fraction] | None]:
    """Decide v in span(spanning); on success also return coordinates."""
    v = [as_fraction(x) for x in v]
    spanning = [list(s) for s in spanning]
    for s in spanning:
        if len(s) != len(v):
            raise DimensionMismatch("vectors have different lengths")
    if not spanning:
        return (not any(v)), ([] if not any(v) else None)
    n = len(spanning)
    aug = [[spanning[j][i] for j in range(n)] + [v[i]] for i in range(len(v))]
    red, pivots = rref(aug, n + 1)
    if n in pivots:
        return False, None
    coords = [Fraction(0)] * n
    for r, pc in zip(red, pivots):
        coords[pc] = r[n]
    return True, coords


def same_span(a: Sequence[Sequence], b: Sequence[Sequence], length: int) -> bool:
    ra, rb = span_rank(a, length), span_rank(b, length)
    return ra == rb == span_rank(list(a) + list(b), length)


# ---------------------------------------------------------------------------
# polynomials


def monomial_key(e: Exponent) -> tuple[int, int, int, int]:
    """Sort key realizing lex order on (e_x1, e_xinf, e_t0, e_t1)."""
    return (e[X1], e[XINF], e[T0], e[T1])


class Poly:
    """Immutable polynomial in t0, t1, x_inf, x1 with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, Fraction] = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != 4 or min(e) < 0:
                raise ValueError(f"bad exponent {e}")
            c = as_fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self._terms = dict(sorted(clean.items(), key=lambda kv: monomial_key(kv[0]), reverse=True))
        self._hash = None

    # construction helpers
    @classmethod
    def monomial(cls, e: Exponent, c=1) -> "Poly":
        return cls({e: c})

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls({(0, 0, 0, 0): c})

    @classmethod
    def var(cls, name: str) -> "Poly":
        e = [0, 0, 0, 0]
        e[VARIABLE_NAMES.index(name)] = 1
        return cls({tuple(e): 1})

    @classmethod
    def binary_form(cls, coeffs: Sequence, shift: Exponent = (0, 0, 0, 0)) -> "Poly":
        """sum coeffs[i] t0^(d-i) t1^i, multiplied by the monomial ``shift``."""
        d = len(coeffs) - 1
        return cls({
            (d - i + shift[0], i + shift[1], shift[2], shift[3]): c for i, c in enumerate(coeffs)
        })

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, e: Exponent) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other)
        return isinstance(other, Poly) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        if not self._terms:
            return "Poly(0)"
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            mono = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(VARIABLE_NAMES, e) if k
            )
            coeff = format_rational(c)
            if not mono:
                parts.append(coeff)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # arithmetic
    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Poly":
        return _coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly({e: c * other for e, c in self._terms.items()})
        other = _coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def diff(self, var: int | str) -> "Poly":
        if isinstance(var, str):
            var = VARIABLE_NAMES.index(var)
        out = {}
        for e, c in self._terms.items():
            if e[var]:
                f = list(e)
                f[var] -= 1
                out[tuple(f)] = c * e[var]
        return Poly(out)

    def evaluate(self, point: Sequence) -> Fraction:
        point = [as_fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= x ** k
            total += v
        return total

    # grading
    def bidegree(self, n: int) -> tuple[int, int] | None:
        """Common bidegree under deg t = (0,1), deg x_inf = (1,0), deg x1 = (1,n).

        Returns None for the zero polynomial or an inhomogeneous polynomial.
        """
        degs = {bidegree_of_exponent(e, n) for e in self._terms}
        if len(degs) != 1:
            return None
        return degs.pop()

    def leading(self) -> tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = next(iter(self._terms))
        return e, self._terms[e]

    def content(self) -> Fraction:
        """Positive rational c with self / c having coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self._terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def normalized(self) -> "Poly":
        """Content 1 with positive leading coefficient in the fixed order."""
        if not self._terms:
            return self
        c = self.content()
        if self.leading()[1] < 0:
            c = -c
        return Poly({e: v / c for e, v in self._terms.items()})

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def t_only(self) -> bool:
        return all(e[XINF] == 0 and e[X1] == 0 for e in self._terms)


def _coerce(x) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly.constant(x)


def bidegree_of_exponent(e: Exponent, n: int) -> tuple[int, int]:
    return (e[XINF] + e[X1], e[T0] + e[T1] + n * e[X1])


def exact_divide(p: Poly, q: Poly) -> Poly:
    """Return p / q, raising ArithmeticError when q does not divide p.

    Single-divisor multivariate division; since {q} is a Groebner basis of
    (q), a nonzero remainder certifies non-divisibility.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lq, cq = q.leading()
    rem = p
    quot: dict[Exponent, Fraction] = {}
    while rem:
        le, lc = rem.leading()
        if any(a < b for a, b in zip(le, lq)):
            raise ArithmeticError("not divisible")
        e = tuple(a - b for a, b in zip(le, lq))
        c = lc / cq
        quot[e] = c
        rem = rem - Poly.monomial(e, c) * q
    return Poly(quot)


def divides(q: Poly, p: Poly) -> bool:
    try:
        exact_divide(p, q)
    except ArithmeticError:
        return False
    return True


_SYMBOLS = sympy.symbols(VARIABLE_NAMES)


def _to_sympy(p: Poly) -> sympy.Poly:
    return sympy.Poly.from_dict(
        {e: sympy.Rational(c.numerator, c.denominator) for e, c in p.items()},
        *_SYMBOLS, domain=sympy.QQ,
    )


def _from_sympy(p: sympy.Poly) -> Poly:
    return Poly({
        tuple(e): Fraction(int(c.numerator), int(c.denominator)) for e, c in p.as_dict().items()
    })


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Normalized gcd of two polynomials (not both zero)."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if p.is_zero():
        return q.normalized()
    if q.is_zero():
        return p.normalized()
    if len(p) == 1 and len(q) == 1:
        (e1, _), (e2, _) = next(iter(p.items())), next(iter(q.items()))
        return Poly.monomial(tuple(min(a, b) for a, b in zip(e1, e2)))
    return _from_sympy(_to_sympy(p).gcd(_to_sympy(q))).normalized()


def poly_gcd_all(polys: Iterable[Poly]) -> Poly:
    out = None
    for p in polys:
        if p.is_zero():
            continue
        out = p.normalized() if out is None else poly_gcd(out, p)
        if out == 1:
            break
    if out is None:
        raise ValueError("gcd of an all-zero family is undefined")
    return out


# ---------------------------------------------------------------------------
# binary forms in t0, t1
#
# A binary form of degree d is a coefficient list c[0..d] meaning
# sum c[i] t0^(d-i) t1^i. Roots at t1 = 0 are tracked through the trailing
# zeros of that list, so every statement below is projective.


class BinaryFormError(ValueError):
    pass


def binary_form_coefficients(h: Poly) -> list[Fraction]:
    """Coefficient list (t0-descending) of a homogeneous form in t0, t1."""
    if h.is_zero():
        raise BinaryFormError("zero form")
    if not h.t_only():
        raise BinaryFormError("form involves x variables")
    degs = {e[T0] + e[T1] for e in h.terms}
    if len(degs) != 1:
        raise BinaryFormError("inhomogeneous form")
    d = degs.pop()
    return [h.coefficient((d - i, i, 0, 0)) for i in range(d + 1)]


def _strip(c: list[Fraction]) -> list[Fraction]:
    i = 0
    while i < len(c) and c[i] == 0:
        i += 1
    return c[i:]


def _upoly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    # dense univariate, highest degree first
    a = list(a)
    b = _strip(b)
    if not b:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[0]
    for i in range(len(q)):
        f = a[i] / lb
        q[i] = f
        if f:
            for j, bj in enumerate(b):
                a[i + j] -= f * bj
    r = _strip(a[len(q):] if q else a)
    return q, r


def _upoly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    size = max(len(a), len(b))
    a = [Fraction(0)] * (size - len(a)) + list(a)
    b = [Fraction(0)] * (size - len(b)) + list(b)
    return _strip([x - y for x, y in zip(a, b)])


def _upoly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _strip(a), _strip(b)
    while b:
        _, r = _upoly_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    return [x / a[0] for x in a]


def _split_infinity(c: list[Fraction]) -> tuple[list[Fraction], int]:
    """Affine part (t1 = 1, t0-descending, leading nonzero) and root multiplicity at t1 = 0.

    A factor t1^m shows up as m leading zeros of the t0-descending list.
    """
    m = 0
    while m < len(c) and c[m] == 0:
        m += 1
    return c[m:], m


def binary_form_gcd(a: Sequence, b: Sequence) -> list[Fraction]:
    """Monic (in the affine part) gcd of two nonzero binary forms given as coefficient lists."""
    pa, ma = _split_infinity([as_fraction(x) for x in a])
    pb, mb = _split_infinity([as_fraction(x) for x in b])
    if not pa or not pb:
        raise BinaryFormError("zero form")
    return [Fraction(0)] * min(ma, mb) + _upoly_gcd(pa, pb)


def binary_form_mul(a: Sequence, b: Sequence) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def binary_form_divide(a: Sequence, b: Sequence) -> list[Fraction]:
    """Exact quotient of binary forms; raises ArithmeticError if b does not divide a."""
    pa, ma = _split_infinity([as_fraction(x) for x in a])
    pb, mb = _split_infinity([as_fraction(x) for x in b])
    if mb > ma:
        raise ArithmeticError("not divisible")
    q, r = _upoly_divmod(pa, pb)
    if r:
        raise ArithmeticError("not divisible")
    return [Fraction(0)] * (ma - mb) + q


def _binary_derivatives(c: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    d = len(c) - 1
    dt0 = [c[i] * (d - i) for i in range(d)]
    dt1 = [c[i] * i for i in range(1, d + 1)]
    return dt0, dt1


def _degree(c: list[Fraction]) -> int:
    return len(c) - 1


def _gcd_with_partials(c: list[Fraction]) -> list[Fraction]:
    if len(c) == 1:
        return [Fraction(1)]
    dt0, dt1 = _binary_derivatives(c)
    # Euler: d * h = t0 h_t0 + t1 h_t1, so gcd(h_t0, h_t1) already divides h
    if not any(dt0):
        return binary_form_gcd(c, dt1)
    if not any(dt1):
        return binary_form_gcd(c, dt0)
    return binary_form_gcd(binary_form_gcd(c, dt0), dt1)


@dataclass(frozen=True)
class BinaryFormAnalysis:
    degree: int
    squarefree: bool
    is_square: bool
    multiplicities: tuple[int, ...]  # number of distinct Qbar-roots of multiplicity 1, 2, ...


def gcd_chain_degrees(coeffs: Sequence) -> list[int]:
    """Degrees of P0 = h, P_{i+1} = gcd(P_i, dP_i/dt0, dP_i/dt1) until constant."""
    c = [as_fraction(x) for x in coeffs]
    degs = [_degree(c)]
    while _degree(c) > 0:
        c = _gcd_with_partials(c)
        degs.append(_degree(c))
    return degs


def analyze_binary_form(h: Poly | Sequence) -> BinaryFormAnalysis:
    c = binary_form_coefficients(h) if isinstance(h, Poly) else [as_fraction(x) for x in h]
    if not any(c):
        raise BinaryFormError("zero form")
    degs = gcd_chain_degrees(c) + [0]
    # deg P_{i-1} - deg P_i counts distinct roots of multiplicity >= i
    at_least = [degs[i - 1] - degs[i] for i in range(1, len(degs))]
    exact = tuple(at_least[i] - (at_least[i + 1] if i + 1 < len(at_least) else 0)
                  for i in range(len(at_least) - 1))
    squarefree = degs[1] == 0
    is_square = all(m == 0 for i, m in enumerate(exact) if (i + 1) % 2 == 1)
    return BinaryFormAnalysis(_degree(c), squarefree, is_square, exact)


def squarefree_decomposition(coeffs: Sequence) -> tuple[Fraction, list[list[Fraction]]]:
    """Yun decomposition h = lc * prod f_i^i with f_i squarefree, pairwise coprime.

    Returns (constant, [f_1, f_2, ...]); the f_i are monic in their affine part.
    """
    c = [as_fraction(x) for x in coeffs]
    p, m = _split_infinity(c)
    if not p:
        raise BinaryFormError("zero form")
    lc = p[0]
    p = [x / lc for x in p]
    factors: list[list[Fraction]] = []
    if len(p) > 1:
        dp = [p[i] * (len(p) - 1 - i) for i in range(len(p) - 1)]
        a = _upoly_gcd(p, dp)
        b, _ = _upoly_divmod(p, a)
        cc, _ = _upoly_divmod(dp, a)
        while len(b) > 1:
            db = [b[i] * (len(b) - 1 - i) for i in range(len(b) - 1)]
            d = _upoly_sub(cc, db)
            f = _upoly_gcd(b, d) if d else list(b)
            factors.append(f)
            b, _ = _upoly_divmod(b, f)
            if d:
                cc, _ = _upoly_divmod(d, f)
            else:
                cc = [Fraction(0)]
    # put the t1 = 0 root back at its multiplicity; all f_i are forms of their own degree
    while len(factors) < m:
        factors.append([Fraction(1)])
    if m:
        factors[m - 1] = binary_form_mul(factors[m - 1], [Fraction(0), Fraction(1)])
    return lc, factors


def binary_form_sqrt(coeffs: Sequence) -> tuple[Fraction, list[Fraction]] | None:
    """If h = lam * q^2 with q a rational binary form, return (lam, q); else None."""
    lam, factors = squarefree_decomposition(coeffs)
    if any(len(f) > 1 for i, f in enumerate(factors) if (i + 1) % 2 == 1):
        return None
    q = [Fraction(1)]
    for i, f in enumerate(factors):
        if (i + 1) % 2 == 0:
            for _ in range((i + 1) // 2):
                q = binary_form_mul(q, f)
    return lam, q


def rational_sqrt(x: Fraction) -> Fraction | None:
    x = as_fraction(x)
    if x < 0:
        return None
    a, b = isqrt(x.numerator), isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None
