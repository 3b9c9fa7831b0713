"""Ext tables of augmentations (H^0(F), F, ev) and the Serre functor on them.

Everything here is a rank chase through the triangle

    RHom(E, E') -> RHom(F, F') + Hom(V, V') -> RHom(V (x) O, F')

with the ranks of the connecting maps supplied by the caller (Petri ranks,
multiplication ranks).  Degrees are cohomological.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .. import curvek
from ..curvek import CurveClass
from ..errors import ChaseFailed, HypothesisNotMet, UsageError
from .graded import GradedDims, cone_dims, fiber_dims


@dataclass(frozen=True)
class AugmentationData:
    """A line bundle L of degree d on a genus g curve with h^0 = h0, h^1 = h1 and Petri rank p."""

    g: int
    h0: int
    h1: int
    p: int
    d: int

    def __post_init__(self):
        if min(self.g, self.h0, self.h1, self.p) < 0:
            raise UsageError("g, h0, h1 and the Petri rank must be nonnegative")
        if self.h0 - self.h1 != self.d + 1 - self.g:
            raise UsageError(
                f"Riemann-Roch fails: h0 - h1 = {self.h0 - self.h1}, d + 1 - g = {self.d + 1 - self.g}"
            )
        if self.p > min(self.g, self.h0 * self.h1):
            raise UsageError(f"Petri rank {self.p} exceeds min(g, h0 h1) = {min(self.g, self.h0 * self.h1)}")

    @classmethod
    def bnp_extremal(cls, g: int, h0: int, h1: int) -> "AugmentationData":
        if h0 * h1 != g:
            raise UsageError(f"h0 h1 = {h0 * h1} is not g = {g}")
        return cls(g, h0, h1, g, h0 - h1 + g - 1)


def bn_ext_table(a: AugmentationData) -> GradedDims:
    """Ext(fa(L), fa(L)) = {0: 1, 1: g - p, 2: h0 h1 - p}."""
    if a.h0 < 1:
        raise UsageError("h0 must be at least 1")
    # End(V) -> Hom(V, H^0(L)) is an isomorphism; Ext^1(L, L) -> V* (x) H^1(L) is dual to Petri
    middle = {0: 1 + a.h0 * a.h0, 1: a.g}
    target = {0: a.h0 * a.h0, 1: a.h0 * a.h1}
    return fiber_dims(middle, target, {0: a.h0 * a.h0, 1: a.p})


def bn_cross_ext_table(hom: int, ext1: int, h0_1: int, h0_2: int, h1_2: int, m: int) -> GradedDims:
    """Ext(fa(L1), fa(L2)) from Hom/Ext^1(L1, L2), the cohomology of L1, L2 and the mixed rank m.

    m is the rank of Ext^1(L1, L2) -> H^0(L1)* (x) H^1(L2).
    """
    if min(hom, ext1, h0_1, h0_2, h1_2, m) < 0:
        raise UsageError("dimensions and ranks must be nonnegative")
    if m > ext1 or m > h0_1 * h1_2:
        raise UsageError(f"mixed rank {m} exceeds min({ext1}, {h0_1 * h1_2})")
    middle = {0: hom + h0_1 * h0_2, 1: ext1}
    target = {0: h0_1 * h0_2, 1: h0_1 * h1_2}
    return fiber_dims(middle, target, {0: h0_1 * h0_2, 1: m})


# ---------------------------------------------------------------------------
# Serre functor


@dataclass(frozen=True)
class SerreImage:
    v_bar: GradedDims
    f_bar: CurveClass  # K-class of the sheaf part
    flags: Mapping[str, bool] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "v_bar": self.v_bar.to_json(),
            "f_bar": {"rank": self.f_bar.r, "degree": self.f_bar.d},
            "flags": dict(self.flags),
        }


def serre_on_augmentation(
    g: int,
    v_dims: Mapping[int, int],
    cls: CurveClass,
    twist_dims: Mapping[int, int],
    mult_rank: int | Mapping[int, int] = 0,
) -> SerreImage:
    """Numerical shadow of S(V, F, phi) on the augmented curve.

    v_dims is V, cls is [F], twist_dims is H(F (x) omega) and mult_rank the
    rank of V (x) H^0(omega) -> H(F (x) omega) (an int means degree 0).
    """
    if g < 0:
        raise UsageError("genus must be nonnegative")
    v = GradedDims(v_dims)
    twist = GradedDims(twist_dims)
    omega = curvek.canonical(g)
    f_omega = cls * omega
    if twist.euler() != curvek.curve_chi(g, curvek.O_C, f_omega):
        raise UsageError("H(F (x) omega) is inconsistent with Riemann-Roch")
    ranks = {0: mult_rank} if isinstance(mult_rank, int) else dict(mult_rank)
    source = GradedDims({p: n * g for p, n in v.items()})
    try:
        cone = cone_dims(source, twist, ranks)
    except ChaseFailed as exc:
        raise UsageError(f"multiplication rank inconsistent: {exc}") from None
    v_bar = cone.shift(1)
    f_bar = v.euler() * omega - f_omega
    flags = {
        "v_bar_in_degree_minus_2": set(v_bar) <= {-2},
        "f_bar_rank_nonnegative": f_bar.r >= 0,
    }
    flags["augmentation_shifted_by_2"] = all(flags.values())
    return SerreImage(v_bar, f_bar, flags)


@dataclass(frozen=True)
class AugmentedSheaf:
    """Data for fa(F): genus, h^0(F), [F], H(F (x) omega), multiplication rank, global generation."""

    g: int
    h0: int
    cls: CurveClass
    twist_h0: int
    twist_h1: int
    mult_rank: int
    globally_generated: bool = True

    def serre_image(self) -> SerreImage:
        return serre_on_augmentation(
            self.g, {0: self.h0}, self.cls, {0: self.twist_h0, 1: self.twist_h1}, self.mult_rank
        )


def augmented_line_bundle(g: int, degree: int, h0: int, mult_rank: int | None = None) -> AugmentedSheaf:
    """fa(L) for a line bundle; H(L (x) omega) follows from Riemann-Roch when deg L > 0."""
    tw = degree + 2 * g - 2
    h0_tw = tw + 1 - g if degree > 0 else None
    if h0_tw is None:
        raise UsageError("only positive degree line bundles are supported here")
    return AugmentedSheaf(
        g, h0, curvek.line_bundle(degree), h0_tw, 0, h0_tw if mult_rank is None else mult_rank
    )


def serre_pair_check(a: AugmentedSheaf, b: AugmentedSheaf) -> bool:
    """True when S(fa(F1)) and S(fa(F2)) are fa(F2)[2] and fa(F1)[2] numerically."""
    if a.g != b.g:
        raise UsageError("both sheaves must live on the same curve")
    omega = curvek.canonical(a.g)
    for name, x in (("F1", a), ("F2", b)):
        if not x.globally_generated:
            raise HypothesisNotMet("globally_generated", f"{name} is not globally generated")
        if x.twist_h1 != 0:
            raise HypothesisNotMet("h1_twist_zero", f"H^1({name} (x) omega) = {x.twist_h1} != 0")
        if x.mult_rank != x.twist_h0:
            raise HypothesisNotMet(
                "multiplication_surjective",
                f"multiplication for {name} has rank {x.mult_rank} < {x.twist_h0}",
            )
    for x, y, name in ((a, b, "F2"), (b, a, "F1")):
        if x.h0 * omega - x.cls * omega != y.cls:
            raise HypothesisNotMet("kernel_relation", f"{name} is not the kernel of the evaluation map")
    ia, ib = a.serre_image(), b.serre_image()
    return (
        ia.v_bar == {-2: b.h0}
        and ib.v_bar == {-2: a.h0}
        and ia.f_bar == b.cls
        and ib.f_bar == a.cls
    )
