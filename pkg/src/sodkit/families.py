"""Named Euler lattices, each assembled by gluing curve and point lattices.

Gluing convention: the glued Gram is [[A1, G], [0, A2]] in the object
basis, where G is the Euler characteristic of the gluing bimodule.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from sympy import Matrix

from . import curvek, intmat
from .errors import NotBNPExtremal, UsageError
from .lattice import EulerLattice, KClass, orthogonal_complement

MAX_GENUS = 10_000

POINT_LATTICE = EulerLattice(((1,),), ("[E]",))


def curve_lattice(g: int, suffix: str = "") -> EulerLattice:
    basis = (curvek.O_C, curvek.O_PT)
    gram = tuple(tuple(curvek.curve_chi(g, v, w) for w in basis) for v in basis)
    return EulerLattice(gram, (f"[O_C{suffix}]", f"[O_x{suffix}]"))


def glue_lattices(l1: EulerLattice, l2: EulerLattice, g: Sequence[Sequence[int]]) -> EulerLattice:
    n1, n2 = l1.rank, l2.rank
    if len(g) != n1 or any(len(row) != n2 for row in g):
        raise UsageError(f"gluing pairing must be {n1} x {n2}")
    rows = [tuple(l1.gram[i]) + tuple(g[i]) for i in range(n1)]
    rows += [(0,) * n1 + tuple(l2.gram[i]) for i in range(n2)]
    return EulerLattice(tuple(rows), l1.basis_labels + l2.basis_labels)


def _check_genus(*gs: int) -> None:
    for g in gs:
        if not isinstance(g, int) or g < 0:
            raise UsageError(f"genus must be a nonnegative integer, got {g!r}")
        if g > MAX_GENUS:
            raise UsageError(f"genus {g} exceeds the cap {MAX_GENUS}")


def augmented_lattice(g: int) -> EulerLattice:
    _check_genus(g)
    return glue_lattices(POINT_LATTICE, curve_lattice(g), curvek.augmentation_pairing(g))


def ipg_lattice(g1: int, g2: int) -> EulerLattice:
    _check_genus(g1, g2)
    pairing = curvek.gluing_pairing(g1, g2, curvek.IDEAL_OF_POINT)
    return glue_lattices(curve_lattice(g1, "1"), curve_lattice(g2, "2"), pairing)


def exotic_class(g1: int, g2: int) -> KClass:
    """[O_x1] - [O_x2], the class of the cone of the canonical map O_x1 -> O_x2."""
    return ipg_lattice(g1, g2).cls((0, 1, 0, -1))


def rebase(lat: EulerLattice, embedding, target_vectors, labels=()) -> EulerLattice:
    """Re-express a sublattice (columns of ``embedding``) in the basis ``target_vectors``.

    The targets must lie in the sublattice and generate it; both are checked.
    """
    k = Matrix(embedding)
    p = Matrix([list(v) for v in target_vectors]).T
    try:
        sol, params = k.gauss_jordan_solve(p)
    except ValueError:
        raise UsageError("target vectors do not lie in the sublattice") from None
    if params.shape[0]:
        raise UsageError("embedding does not have full column rank")
    if any(not x.is_integer for x in sol):
        raise UsageError("target vectors are not integral in the sublattice basis")
    if abs(sol.det()) != 1:
        raise UsageError("target vectors do not generate the sublattice")
    return lat.transformed(intmat.from_sympy(p), labels)


RPG_LABELS = ("[O_C2]+[O_x1]-[O_x2]", "[O_C1]-g1[O_x1]-g2[O_x2]", "[O_C2]+[O_x1]")


def rpg_basis(g1: int, g2: int) -> tuple[tuple[int, ...], ...]:
    return ((0, 1, 1, -1), (1, -g1, 0, -g2), (0, 1, 1, 0))


def rpg_lattice(g1: int, g2: int) -> EulerLattice:
    """Left orthogonal of the exotic class in the ideal point gluing, in the standard basis."""
    ipg = ipg_lattice(g1, g2)
    comp = orthogonal_complement(ipg, exotic_class(g1, g2), "left")
    if comp.lattice.rank != 3:
        raise AssertionError(f"complement has rank {comp.lattice.rank}, expected 3")
    return rebase(ipg, comp.embedding, rpg_basis(g1, g2), RPG_LABELS)


def _bn_degrees(g: int, h0: int, h1: int | None = None) -> tuple[int, int]:
    _check_genus(g)
    if h0 < 1 or g % h0 != 0:
        raise NotBNPExtremal(f"h0 = {h0} does not divide g = {g}")
    q = g // h0
    if h1 is not None and h1 != q:
        raise NotBNPExtremal(f"h0 * h1 = {h0 * h1} != g = {g}")
    if q < 1:
        raise NotBNPExtremal("h1 must be at least 1")
    return q, h0 - q + g - 1


def bn_class(g: int, h0: int) -> KClass:
    """h0[E] - [L] for a Petri-extremal line bundle L with h0(L) = h0."""
    _, d = _bn_degrees(g, h0)
    return augmented_lattice(g).cls((h0, -1, -d))


def bn_complement_basis(h0: int, h1: int) -> tuple[tuple[int, ...], ...]:
    return ((1, 0, -h1), (1, -1, -h0))


def bn_complement_lattice(g: int, h0: int, h1: int) -> EulerLattice:
    _bn_degrees(g, h0, h1)
    aug = augmented_lattice(g)
    comp = orthogonal_complement(aug, bn_class(g, h0), "left")
    if comp.lattice.rank != 2:
        raise AssertionError(f"complement has rank {comp.lattice.rank}, expected 2")
    labels = ("[E]-h1[O_x]", "[E]-[O_C]-h0[O_x]")
    return rebase(aug, comp.embedding, bn_complement_basis(h0, h1), labels)


def twisted_ipg_pairing(g1: int, g2: int) -> tuple[tuple[int, ...], ...]:
    """Gluing pairing of I_(x1,x2) (x) (O_C1 (x) O_C2(x2))."""
    twist = curvek.ProductClass.boxtimes(curvek.O_C, curvek.line_bundle(1))
    return curvek.gluing_pairing(g1, g2, curvek.IDEAL_OF_POINT * twist)


# --------------------------------------------------------------------------
# string grammar used by the CLI


@dataclass(frozen=True)
class FamilySpec:
    kind: str  # augmented | ipg | rpg | bncomp
    genera: tuple[int, ...]
    h0: int | None = None
    h1: int | None = None

    def __post_init__(self):
        _check_genus(*self.genera)
        expected = {"augmented": 1, "ipg": 2, "rpg": 2, "bncomp": 1}
        if self.kind not in expected:
            raise UsageError(f"unknown family {self.kind!r}")
        if len(self.genera) != expected[self.kind]:
            raise UsageError(f"{self.kind} takes {expected[self.kind]} genus parameter(s)")
        if self.kind == "bncomp":
            if self.h0 is None or self.h1 is None:
                raise UsageError("bncomp needs h0 and h1")
            if self.h0 < 1 or self.h1 < 1 or self.h0 * self.h1 != self.genera[0]:
                raise NotBNPExtremal(f"h0 * h1 = {self.h0 * self.h1} != g = {self.genera[0]}")

    @property
    def genus_sum(self) -> int:
        return sum(self.genera)

    def lattice(self) -> EulerLattice:
        if self.kind == "augmented":
            return augmented_lattice(*self.genera)
        if self.kind == "ipg":
            return ipg_lattice(*self.genera)
        if self.kind == "rpg":
            return rpg_lattice(*self.genera)
        return bn_complement_lattice(self.genera[0], self.h0, self.h1)

    def __str__(self) -> str:
        params = list(self.genera)
        if self.kind == "bncomp":
            params += [self.h0, self.h1]
        return f"{self.kind}:" + ",".join(map(str, params))

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        m = re.fullmatch(r"\s*(augmented|ipg|rpg|bncomp)\s*:\s*(\d+(?:\s*,\s*\d+)*)\s*", text)
        if not m:
            raise UsageError(
                f"bad family {text!r}; expected augmented:G, ipg:G1,G2, rpg:G1,G2 or bncomp:G,H0,H1"
            )
        kind = m.group(1)
        nums = [int(x) for x in m.group(2).split(",")]
        if kind == "bncomp":
            if len(nums) != 3:
                raise UsageError("bncomp takes G,H0,H1")
            return cls(kind, (nums[0],), nums[1], nums[2])
        return cls(kind, tuple(nums))

