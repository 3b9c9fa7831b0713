"""Numerical K-theory of curves and of products of two curves.

A curve class (r, d) stands for r[O_C] + d[O_x].  On C1 x C2 only the
span of exterior products of [O] and point classes is modelled: write
a = [O_x1 (x) O], b = [O (x) O_x2], so the ring is Z[a, b]/(a^2, b^2) with
basis 1, a, b, ab.  Duality fixes 1 and ab and negates a and b (the dual
of a point sheaf on a curve is the point sheaf shifted by one).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial, prod
from typing import Sequence

from .errors import UsageError


@dataclass(frozen=True)
class CurveClass:
    r: int
    d: int

    def __add__(self, other):
        return CurveClass(self.r + other.r, self.d + other.d)

    def __sub__(self, other):
        return CurveClass(self.r - other.r, self.d - other.d)

    def __rmul__(self, k: int):
        return CurveClass(k * self.r, k * self.d)

    def __mul__(self, other: "CurveClass") -> "CurveClass":
        # tensor product in K_num(C): [O_x]^2 = 0
        return CurveClass(self.r * other.r, self.r * other.d + self.d * other.r)

    def as_tuple(self) -> tuple[int, int]:
        return (self.r, self.d)


O_C = CurveClass(1, 0)
O_PT = CurveClass(0, 1)


def line_bundle(degree: int) -> CurveClass:
    return CurveClass(1, degree)


def canonical(g: int) -> CurveClass:
    return CurveClass(1, 2 * g - 2)


def curve_chi(g: int, v: CurveClass, w: CurveClass) -> int:
    """chi(v, w) = r r'(1 - g) + (r d' - r' d)  (Riemann-Roch)."""
    return v.r * w.r * (1 - g) + (v.r * w.d - w.r * v.d)


@dataclass(frozen=True)
class ProductClass:
    c00: int = 0  # [O (x) O]
    c10: int = 0  # [O_x1 (x) O]
    c01: int = 0  # [O (x) O_x2]
    c11: int = 0  # [O_x1 (x) O_x2]

    def __add__(self, other):
        return ProductClass(*(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return ProductClass(*(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __rmul__(self, k: int):
        return ProductClass(*(k * x for x in self.coeffs))

    @property
    def coeffs(self) -> tuple[int, int, int, int]:
        return (self.c00, self.c10, self.c01, self.c11)

    def __mul__(self, other: "ProductClass") -> "ProductClass":
        p0, pa, pb, pab = self.coeffs
        q0, qa, qb, qab = other.coeffs
        return ProductClass(
            p0 * q0,
            p0 * qa + pa * q0,
            p0 * qb + pb * q0,
            p0 * qab + pab * q0 + pa * qb + pb * qa,
        )

    def dual(self) -> "ProductClass":
        return ProductClass(self.c00, -self.c10, -self.c01, self.c11)

    @classmethod
    def boxtimes(cls, v: CurveClass, w: CurveClass) -> "ProductClass":
        return cls(v.r * w.r, v.d * w.r, v.r * w.d, v.d * w.d)


STRUCTURE_SHEAF = ProductClass(1, 0, 0, 0)
POINT = ProductClass(0, 0, 0, 1)
IDEAL_OF_POINT = STRUCTURE_SHEAF - POINT


def product_euler(g1: int, g2: int, u: ProductClass) -> int:
    """Euler characteristic chi(C1 x C2, u)."""
    return u.c00 * (1 - g1) * (1 - g2) + u.c10 * (1 - g2) + u.c01 * (1 - g1) + u.c11


def product_chi(g1: int, g2: int, u: ProductClass, v: ProductClass) -> int:
    """chi(u, v) = chi(dual(u) . v) on C1 x C2."""
    return product_euler(g1, g2, u.dual() * v)


def gluing_pairing(
    g1: int,
    g2: int,
    gluing_object: ProductClass,
    basis1: Sequence[CurveClass] = (O_C, O_PT),
    basis2: Sequence[CurveClass] = (O_C, O_PT),
) -> tuple[tuple[int, ...], ...]:
    """Matrix of [G](v1, v2) = chi((v1^dual (x) v2) . G) over the two bases."""
    return tuple(
        tuple(
            product_chi(
                g1,
                g2,
                ProductClass.boxtimes(v1, O_C),
                ProductClass.boxtimes(O_C, v2) * gluing_object,
            )
            for v2 in basis2
        )
        for v1 in basis1
    )


def augmentation_pairing(
    g: int, gluing_object: CurveClass = O_C, basis: Sequence[CurveClass] = (O_C, O_PT)
) -> tuple[tuple[int, ...]]:
    """Gluing of a point with a curve: [G](1, w) = chi(C, w (x) G), one row."""
    return (tuple(curve_chi(g, O_C, w * gluing_object) for w in basis),)


@dataclass(frozen=True)
class BNPEntry:
    r: int
    s: int
    degree: int
    count: int

    def to_json(self) -> dict:
        return {"r": self.r, "s": self.s, "degree": self.degree, "count": self.count}


def grassmannian_degree(r: int, s: int) -> int:
    """deg Gr(r, r+s) in its Pluecker embedding: (rs)! prod_{i<r} i!/(s+i)!."""
    if r < 0 or s < 0:
        raise UsageError("negative Grassmannian parameters")
    num = factorial(r * s) * prod(factorial(i) for i in range(r))
    den = prod(factorial(s + i) for i in range(r))
    q, rem = divmod(num, den)
    assert rem == 0
    return q


def bnp_enumerate(g: int) -> list[BNPEntry]:
    """Petri-extremal numerics for every ordered factorization g = r s.

    h0 = r, h1 = s, so Riemann-Roch gives degree r - s + g - 1.  The count
    of such bundles is the number on a general curve over an algebraically
    closed field of characteristic zero; it is reported without checking
    those hypotheses.
    """
    if g < 0:
        raise UsageError("genus must be nonnegative")
    return [
        BNPEntry(r, g // r, r - g // r + g - 1, grassmannian_degree(r, g // r))
        for r in range(1, g + 1)
        if g % r == 0
    ]
