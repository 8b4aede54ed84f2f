"""Picard lattice of the Hirzebruch surface F_n.

Classes are written a*B + b*R, where B is the negative section (B^2 = -n) and
R a fiber. All cohomology numbers are line-bundle numbers computed from the
pushforward to P^1 and Serre duality.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, floor
from typing import NamedTuple


MIN_GENUS = 6


class LatticeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class DivisorClass:
    n: int
    a: int
    b: int

    def __post_init__(self):
        if self.n < 0:
            raise LatticeError(f"Hirzebruch index must be nonnegative, got {self.n}")

    def _check(self, other: "DivisorClass") -> None:
        if not isinstance(other, DivisorClass):
            raise TypeError(f"expected DivisorClass, got {type(other).__name__}")
        if other.n != self.n:
            raise LatticeError(f"classes live on F_{self.n} and F_{other.n}")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(self.n, self.a + other.a, self.b + other.b)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(self.n, self.a - other.a, self.b - other.b)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.n, -self.a, -self.b)

    def __mul__(self, k: int) -> "DivisorClass":
        return DivisorClass(self.n, k * self.a, k * self.b)

    __rmul__ = __mul__

    @property
    def pair(self) -> tuple[int, int]:
        return (self.a, self.b)

    def __str__(self) -> str:
        return f"{self.a}B{self.b:+d}R"


def intersect(d1: DivisorClass, d2: DivisorClass) -> int:
    d1._check(d2)
    return -d1.n * d1.a * d2.a + d1.a * d2.b + d2.a * d1.b


def canonical_class(n: int) -> DivisorClass:
    return DivisorClass(n, -2, -(n + 2))


class Positivity(NamedTuple):
    ample: bool
    nef: bool
    big_and_nef: bool


def positivity(d: DivisorClass) -> Positivity:
    """Ample iff a > 0 and b > na; nef iff b >= na >= 0; big and nef iff nef with D^2 > 0."""
    n, a, b = d.n, d.a, d.b
    ample = a > 0 and b > n * a
    nef = a >= 0 and b >= n * a
    return Positivity(ample, nef, nef and intersect(d, d) > 0)


def chi(d: DivisorClass) -> int:
    twice = intersect(d, d - canonical_class(d.n))
    if twice % 2:
        raise AssertionError("D.(D-K) is always even on F_n")
    return 1 + twice // 2


def h0(d: DivisorClass) -> int:
    if d.a < 0:
        return 0
    return sum(max(0, d.b - i * d.n + 1) for i in range(d.a + 1))


class Cohomology(NamedTuple):
    h0: int
    h1: int
    h2: int


def h012(d: DivisorClass) -> Cohomology:
    zero = h0(d)
    two = h0(canonical_class(d.n) - d)
    one = zero + two - chi(d)
    if one < 0:
        raise AssertionError(f"negative h1 for {d}")
    return Cohomology(zero, one, two)


def h1(d: DivisorClass) -> int:
    return h012(d).h1


def maroni_range(g: int) -> list[int]:
    if g < MIN_GENUS:
        raise LatticeError(f"genus must be at least {MIN_GENUS}, got {g}")
    return list(range(ceil((g - 4) / 3), floor((g - 2) / 2) + 1))


@dataclass(frozen=True)
class SurfaceContext:
    """Genus, Maroni degree and the Hirzebruch index n = g - 2 - 2k of the scroll."""

    g: int
    k: int

    def __post_init__(self):
        if self.k not in maroni_range(self.g):
            raise LatticeError(
                f"Maroni degree {self.k} outside the admissible range "
                f"{maroni_range(self.g)} for g={self.g}"
            )

    @property
    def n(self) -> int:
        return self.g - 2 - 2 * self.k

    def cls(self, a: int, b: int) -> DivisorClass:
        return DivisorClass(self.n, a, b)

    @property
    def B(self) -> DivisorClass:
        return self.cls(1, 0)

    @property
    def R(self) -> DivisorClass:
        return self.cls(0, 1)

    @property
    def A(self) -> DivisorClass:
        return self.cls(1, self.n)

    @property
    def H(self) -> DivisorClass:
        return self.cls(1, self.g - 2 - self.k)

    @property
    def C(self) -> DivisorClass:
        return self.cls(3, 2 * self.g - 2 - 3 * self.k)

    @property
    def K(self) -> DivisorClass:
        return canonical_class(self.n)

    @property
    def QV(self) -> DivisorClass:
        return self.cls(2, self.g - self.k)

    @property
    def Q1(self) -> DivisorClass:
        return self.cls(2, 2 * self.g - 3 * self.k - 2)

    @property
    def ramification_degree(self) -> int:
        return 2 * self.g + 4


def standard_classes(ctx: SurfaceContext) -> dict[str, DivisorClass]:
    return {"B": ctx.B, "R": ctx.R, "A": ctx.A, "H": ctx.H, "C": ctx.C, "K_S": ctx.K}
