"""Explicit trigonal curves on F_n.

A curve of genus g and Maroni degree k is the zero locus of

    F = alpha_0 x_inf^3 + alpha_1 x1 x_inf^2 + alpha_2 x1^2 x_inf + alpha_3 x1^3

on F_n, n = g - 2 - 2k, with alpha_i a binary form in t0, t1 of degree
d_i = (2g - 2 - 3k) - i*n. F has class 3B + (2g - 2 - 3k)R.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path

from . import cox
from .kernel import (
    Poly,
    analyze_binary_form,
    as_fraction,
    binary_form_coefficients,
    binary_form_gcd,
    format_rational,
)
from .rng import IntegerStream
from .surface import SurfaceContext, maroni_range

FORMAT_VERSION = 1
COEFF_BOUND = 9
MAX_RESAMPLES = 1000


class CurveGenerationError(RuntimeError):
    def __init__(self, g: int, k: int, seed: int, attempts: int):
        super().__init__(
            f"no acceptable curve for g={g}, k={k}, seed={seed} after {attempts} samples"
        )
        self.g, self.k, self.seed, self.attempts = g, k, seed, attempts


class MaroniMismatch(AssertionError):
    pass


def coefficient_degrees(g: int, k: int) -> tuple[int, int, int, int]:
    n = g - 2 - 2 * k
    top = 2 * g - 2 - 3 * k
    return tuple(top - i * n for i in range(4))


def discriminant_forms(a: Poly, b: Poly, c: Poly, d: Poly) -> Poly:
    """Discriminant of a X^3 + b X^2 Y + c X Y^2 + d Y^3."""
    return (
        18 * a * b * c * d
        - 4 * b ** 3 * d
        + b * b * c * c
        - 4 * a * c ** 3
        - 27 * a * a * d * d
    )


@dataclass(frozen=True)
class SmoothnessCertificate:
    discriminant_squarefree: bool
    discriminant_degree: int
    leading_coprime: bool  # alpha_3 shares no root with the discriminant
    extreme_nonzero: bool  # alpha_0 and alpha_3 nonzero

    @property
    def ok(self) -> bool:
        return self.discriminant_squarefree and self.leading_coprime and self.extreme_nonzero


@dataclass(frozen=True)
class TrigonalCurve:
    g: int
    k: int
    alpha: tuple[tuple[Fraction, ...], ...]  # alpha[i]: t0-descending coefficients of alpha_i
    seed: int | None = None
    ctx: SurfaceContext = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "ctx", SurfaceContext(self.g, self.k))
        degs = coefficient_degrees(self.g, self.k)
        if len(self.alpha) != 4:
            raise ValueError("a trigonal cubic has four coefficient forms")
        alpha = tuple(tuple(as_fraction(c) for c in coeffs) for coeffs in self.alpha)
        for i, (coeffs, d) in enumerate(zip(alpha, degs)):
            if len(coeffs) != d + 1:
                raise ValueError(f"alpha_{i} needs {d + 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "alpha", alpha)

    @property
    def n(self) -> int:
        return self.ctx.n

    @property
    def degrees(self) -> tuple[int, int, int, int]:
        return coefficient_degrees(self.g, self.k)

    def alpha_poly(self, i: int) -> Poly:
        return Poly.binary_form(self.alpha[i])

    @cached_property
    def F(self) -> Poly:
        total = Poly()
        for i in range(4):
            total = total + self.alpha_poly(i) * Poly.monomial((0, 0, 3 - i, i))
        return total

    @cached_property
    def F_x1(self) -> Poly:
        """dF/dx1, the defining section of Q_V, bidegree (2, g - k)."""
        return self.F.diff("x1")

    @cached_property
    def F_xinf(self) -> Poly:
        """dF/dx_inf, used as Q_1, bidegree (2, 2g - 2 - 3k)."""
        return self.F.diff("xinf")

    @cached_property
    def discriminant(self) -> Poly:
        a, b, c, d = (self.alpha_poly(i) for i in (3, 2, 1, 0))
        return discriminant_forms(a, b, c, d)

    @cached_property
    def certificate(self) -> SmoothnessCertificate:
        disc = self.discriminant
        extreme = any(self.alpha[0]) and any(self.alpha[3])
        if disc.is_zero():
            return SmoothnessCertificate(False, -1, False, extreme)
        info = analyze_binary_form(disc)
        coprime = True
        if self.degrees[3] > 0 and any(self.alpha[3]):
            common = binary_form_gcd(self.alpha[3], binary_form_coefficients(disc))
            coprime = len(common) == 1
        return SmoothnessCertificate(info.squarefree, info.degree, coprime, extreme)

    @property
    def smooth(self) -> bool:
        return self.certificate.ok

    def euler_identity_holds(self) -> bool:
        x1, xinf = cox.X1_POLY, cox.XINF_POLY
        return x1 * self.F_x1 + xinf * self.F_xinf - 3 * self.F == Poly()

    # serialization
    def to_json_dict(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "g": self.g,
            "k": self.k,
            "seed": self.seed if self.seed is None or self.seed < 2 ** 53 else str(self.seed),
            "alpha": [[format_rational(c) for c in coeffs] for coeffs in self.alpha],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json_dict(cls, data: dict) -> "TrigonalCurve":
        if data.get("format_version") != FORMAT_VERSION:
            raise ValueError(f"unsupported curve format_version {data.get('format_version')!r}")
        alpha = tuple(tuple(Fraction(c) for c in coeffs) for coeffs in data["alpha"])
        seed = data.get("seed")
        return cls(int(data["g"]), int(data["k"]), alpha, None if seed is None else int(seed))

    @classmethod
    def from_json(cls, text: str) -> "TrigonalCurve":
        return cls.from_json_dict(json.loads(text))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "TrigonalCurve":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def curve_stream(g: int, k: int, seed: int) -> IntegerStream:
    return IntegerStream(seed, (g, k))


def random_curve(g: int, k: int, seed: int, max_resamples: int = MAX_RESAMPLES) -> TrigonalCurve:
    """First curve from the (g, k, seed) stream that passes the smoothness certificate."""
    if k not in maroni_range(g):
        raise ValueError(f"k={k} is not an admissible Maroni degree for g={g}")
    stream = curve_stream(g, k, seed)
    degs = coefficient_degrees(g, k)
    for _ in range(max_resamples):
        alpha = tuple(
            tuple(stream.integers(d + 1, -COEFF_BOUND, COEFF_BOUND)) for d in degs
        )
        curve = TrigonalCurve(g, k, alpha, seed)
        if curve.smooth:
            return curve
    raise CurveGenerationError(g, k, seed, max_resamples)


def reducible_gamma_curve(g: int, seed: int, max_resamples: int = MAX_RESAMPLES) -> TrigonalCurve:
    """Smooth k = 1 curve whose F_x1 splits over Q.

    Picks alpha_3, delta and gamma, then sets alpha_2 = delta + 3 alpha_3 gamma and
    alpha_1 = gamma (2 delta + 3 alpha_3 gamma), so that
    alpha_2^2 - 3 alpha_3 alpha_1 = delta^2 and
    F_x1 = (3 alpha_3 x1 + (alpha_2 + delta) x_inf) (x1 + gamma x_inf).
    """
    k = 1
    ctx = SurfaceContext(g, k)
    degs = coefficient_degrees(g, k)
    stream = IntegerStream(seed, (g, k, 7))
    for _ in range(max_resamples):
        a3 = Poly.binary_form(stream.integers(degs[3] + 1, -3, 3))
        delta = Poly.binary_form(stream.integers(degs[2] + 1, -3, 3))
        gamma = Poly.binary_form(stream.integers(ctx.n + 1, -2, 2))
        a0 = stream.integers(degs[0] + 1, -COEFF_BOUND, COEFF_BOUND)
        if a3.is_zero():
            continue
        a2 = delta + 3 * a3 * gamma
        a1 = gamma * (2 * delta + 3 * a3 * gamma)
        try:
            forms = [binary_form_coefficients(p) for p in (a1, a2, a3)]
        except ValueError:
            continue
        alpha = (tuple(a0), *(tuple(c) for c in forms))
        if [len(c) - 1 for c in alpha] != list(degs):
            continue
        curve = TrigonalCurve(g, k, alpha, seed)
        if curve.smooth:
            return curve
    raise CurveGenerationError(g, k, seed, max_resamples)


# ---------------------------------------------------------------------------
# analysis


@dataclass(frozen=True)
class MaroniResult:
    k: int
    dims: tuple[int, ...]  # h^0(C, jL) for j = 0, 1, ...
    methods: tuple[str, ...]
    matches: bool


def pencil_dims(curve: TrigonalCurve, upto: int) -> list[tuple[int, str]]:
    out = []
    for j in range(upto + 1):
        space = cox.restriction_model(curve, curve.ctx.cls(0, j))
        out.append((space.dim, space.method))
    return out


def maroni_verify(curve: TrigonalCurve, strict: bool = False) -> MaroniResult:
    """Recover k as (first j with h^0(jL) != j + 1) - 2."""
    if not curve.smooth:
        raise ValueError("Maroni verification needs a smooth curve")
    dims, methods = [], []
    j = 0
    while True:
        space = cox.restriction_model(curve, curve.ctx.cls(0, j))
        dims.append(space.dim)
        methods.append(space.method)
        if space.dim != j + 1:
            break
        j += 1
        if j > curve.g:
            raise MaroniMismatch("h^0(jL) never jumped")
    computed = j - 2
    result = MaroniResult(computed, tuple(dims), tuple(methods), computed == curve.k)
    if strict and not result.matches:
        raise MaroniMismatch(f"constructed k={curve.k}, recovered k={computed}")
    return result


@dataclass(frozen=True)
class GaussianTest:
    not_in_image: bool
    model_dim: int
    image_dim: int

    @property
    def codimension(self) -> int:
        return self.model_dim - self.image_dim


def gaussian_test(curve: TrigonalCurve) -> GaussianTest:
    """Is the class of F_x1 outside x_inf * H^0(S, H + 2R) in the Q_V-class model?

    F_x1 restricts to x_inf times the Gaussian section, so membership would put
    the Gaussian section in the image of H^0(S, H + 2R) -> H^0(C, K + 2L).
    """
    ctx = curve.ctx
    model = cox.restriction_model(curve, ctx.QV)
    image = [cox.XINF_POLY * Poly.monomial(e) for e in cox.monomial_basis(ctx.H + 2 * ctx.R)]
    member = model.class_in_span(curve.F_x1, image)
    return GaussianTest(not member, model.dim, model.quotient_rank(image))


def gaussian_not_in_image(curve: TrigonalCurve) -> bool:
    if not curve.smooth:
        raise ValueError("needs a smooth curve")
    return gaussian_test(curve).not_in_image
