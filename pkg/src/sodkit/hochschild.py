"""Hochschild homology and cohomology dimension tables for the glued families.

Tables are keyed by the shift n of k[n]: {1: g, 0: 3, -1: g} stands for
k^g[1] + k^3 + k^g[-1], and HH^2 sits under key -2.  The chases run in
cohomological degrees internally (degree p = key -p).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import ChaseFailed, OutOfPaperRange, UsageError
from .families import FamilySpec
from .homcalc.graded import GradedDims, cone_dims, fiber_dims


def _flip(table: Mapping[int, int]) -> GradedDims:
    """Shift keys <-> cohomological degrees."""
    return GradedDims({-k: v for k, v in table.items()})


def hh_homology(spec: FamilySpec) -> GradedDims:
    """Hochschild homology, additive over the semiorthogonal pieces."""
    s = spec.genus_sum
    if spec.kind == "augmented":
        return GradedDims({1: s, 0: 3, -1: s})
    if spec.kind == "ipg":
        return GradedDims({1: s, 0: 4, -1: s})
    if spec.kind == "rpg":
        return GradedDims({1: s, 0: 3, -1: s})
    if spec.kind == "bncomp":
        return GradedDims({1: s, 0: 2, -1: s})
    raise UsageError(f"unknown family {spec.kind!r}")


def curve_hh_cohomology(g: int) -> GradedDims:
    """HH of a genus g curve by HKR: H^0(O) + (H^1(O) + H^0(T))[-1] + H^1(T)[-2]."""
    if g < 0:
        raise UsageError("genus must be nonnegative")
    h0_t = {0: 3, 1: 1}.get(g, 0)
    h1_t = {0: 0, 1: 1}.get(g, 3 * g - 3)
    return GradedDims({0: 1, -1: g + h0_t, -2: h1_t})


def hh_cohomology(spec: FamilySpec) -> GradedDims:
    if spec.kind == "augmented":
        (g,) = spec.genera
        if g == 0:
            return GradedDims({0: 1, -1: 3})
        if g == 1:
            return GradedDims({0: 1, -1: 1, -2: 1})
        return GradedDims({0: 1, -2: 3 * g - 3})
    if spec.kind in ("ipg", "rpg"):
        g1, g2 = spec.genera
        if min(g1, g2) < 2:
            raise OutOfPaperRange(
                f"Hochschild cohomology of {spec.kind}:{g1},{g2} is only known for both genera >= 2"
            )
        s = g1 + g2
        if spec.kind == "ipg":
            return GradedDims({0: 1, -2: 3 * s - 4, -3: g1 * g2})
        return GradedDims({0: 1, -2: 3 * s - 3, -3: g1 * g2, -4: g1 * g2})
    if spec.kind == "bncomp":
        raise OutOfPaperRange("Hochschild cohomology of BN-modifications depends on a map rank; use hh_bn_modification")
    raise UsageError(f"unknown family {spec.kind!r}")


@dataclass(frozen=True)
class GluingChase:
    table: GradedDims
    flags: Mapping[str, bool] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"table": self.table.to_json(), "flags": dict(self.flags)}


def hh_gluing_check(
    hh1: Mapping[int, int],
    hh2: Mapping[int, int],
    ext_gg: Mapping[int, int],
    connecting_ranks: Mapping[int, int],
) -> GluingChase:
    """HH of a gluing from HH(D) -> HH(D1) + HH(D2) -> Ext(G, G).

    All tables and the rank keys use the shift convention of this module.
    """
    middle = _flip(GradedDims(hh1) + GradedDims(hh2))
    ranks = {-k: r for k, r in connecting_ranks.items()}
    table = _flip(fiber_dims(middle, _flip(ext_gg), ranks))
    flags = {"hh0_overcount": table[0] > 1}
    return GluingChase(table, flags)


def ipg_gluing_chase(g1: int, g2: int) -> GluingChase:
    """Unit to unit in degree 0, H^1(O) injective in degree 1, the Atiyah class map zero in degree 2."""
    ext_ii = {0: 1, -1: g1 + g2 + 2, -2: g1 * g2}
    return hh_gluing_check(curve_hh_cohomology(g1), curve_hh_cohomology(g2), ext_ii, {0: 1, -1: g1 + g2, -2: 0})


def augmented_gluing_chase(g: int) -> GluingChase:
    """Point glued to a curve along O_C; H^1(O) maps isomorphically."""
    return hh_gluing_check({0: 1}, curve_hh_cohomology(g), {0: 1, -1: g}, {0: 1, -1: g})


def rpg_cone_chase(g1: int, g2: int, hh_ipg: Mapping[int, int] | None = None, rank3: int = 0) -> GluingChase:
    """HH of the complement of E from Ext(S(E), E) -> HH(ipg) -> HH(rpg).

    ``rank3`` is the rank of k = Ext^3(S(E), E) -> HH^3(ipg); the deformation
    argument forces it to be zero.
    """
    if hh_ipg is None:
        hh_ipg = hh_cohomology(FamilySpec("ipg", (g1, g2)))
    ext = {-3: 1, -5: g1 * g2}
    table = _flip(cone_dims(_flip(ext), _flip(hh_ipg), {3: rank3}))
    return GluingChase(table, {"hh0_overcount": table[0] > 1})


def hh_bn_modification(middle: int, last: int, rank: int, first: int | None = None) -> GradedDims:
    """HH of a BN-modification: k + ker[-2] + coker[-3] of the map middle -> last."""
    if min(middle, last, rank) < 0:
        raise UsageError("dimensions and rank must be nonnegative")
    if rank > min(middle, last):
        raise ChaseFailed(-2, f"rank {rank} exceeds min({middle}, {last})")
    if first is not None and first < 0:
        raise UsageError("dimensions must be nonnegative")
    return GradedDims({0: 1, -2: middle - rank, -3: last - rank})


def bn_modification_terms(g: int, h0: int, h1: int) -> tuple[int, int, int]:
    """Dimensions of H^1(omega^-1), the middle sum and the triple product, by Riemann-Roch.

    With d = deg L and the adjoint bundle of degree 2g - 2 - d:
    h^1(omega^-1) = 3g - 3, h^1(L^-1) = d + g - 1, h^1(adjoint^-1) = 3g - 3 - d.
    """
    if h0 < 1 or h1 < 1 or h0 * h1 != g:
        raise UsageError(f"({h0}, {h1}) is not a factorization of g = {g}")
    d = h0 - h1 + g - 1
    first = 3 * g - 3
    middle = h0 * (3 * g - 3 - d) + (d + g - 1) * h1
    last = h0 * g * h1
    return first, middle, last
