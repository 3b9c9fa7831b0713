"""Finite formal graded categories, bimodules between them, and Hom spaces in a gluing.

A morphism space is a named graded basis.  Composition is a sparse table:
``compositions[(X, Y, Z)][(i, j)] = {k: c}`` means g_i o f_j = sum c h_k for
f_j in Hom(X, Y), g_i in Hom(Y, Z), h_k in Hom(X, Z).  Higher products are
taken to be zero (formal models).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..errors import IncompleteModel, UsageError
from .graded import GradedComplex, GradedDims, _matmul

Basis = tuple[tuple[str, int], ...]
Vector = tuple[Fraction, ...]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True, eq=False)
class FiniteGradedCategory:
    objects: tuple[str, ...]
    homs: Mapping[tuple[str, str], Basis]
    compositions: Mapping[tuple[str, str, str], Mapping[tuple[int, int], Mapping[int, Fraction]]]
    identities: Mapping[str, int]

    def __post_init__(self):
        objs = set(self.objects)
        for (x, y), basis in self.homs.items():
            if x not in objs or y not in objs:
                raise UsageError(f"hom space ({x}, {y}) names an unknown object")
            for entry in basis:
                if not isinstance(entry[1], int):
                    raise UsageError(f"degree of {entry[0]} must be an integer")
        for x in self.objects:
            i = self.identities.get(x)
            if i is None or i >= len(self.hom(x, x)) or self.hom(x, x)[i][1] != 0:
                raise UsageError(f"identity of {x} must be a degree-0 basis element of Hom({x}, {x})")
        for (x, y, z), table in self.compositions.items():
            hxy, hyz, hxz = self.hom(x, y), self.hom(y, z), self.hom(x, z)
            for (i, j), out in table.items():
                if i >= len(hyz) or j >= len(hxy):
                    raise UsageError(f"composition index out of range in ({x}, {y}, {z})")
                for k, c in out.items():
                    if c and hxz[k][1] != hyz[i][1] + hxy[j][1]:
                        raise UsageError(
                            f"{hyz[i][0]} o {hxy[j][0]} -> {hxz[k][0]} is not degree additive"
                        )
        self._check_units()
        self._check_associativity()

    # ---------------------------------------------------------------- access

    def hom(self, x: str, y: str) -> Basis:
        return tuple(self.homs.get((x, y), ()))

    def hom_dims(self, x: str, y: str) -> GradedDims:
        return GradedDims([(d, 1) for _, d in self.hom(x, y)])

    def compose_basis(self, x: str, y: str, z: str, i: int, j: int) -> dict[int, Fraction]:
        """g_i o f_j with f_j in Hom(x, y), g_i in Hom(y, z), as a sparse vector."""
        if j == self.identities[y] and x == y:
            return {i: Fraction(1)}
        if i == self.identities[y] and y == z:
            return {j: Fraction(1)}
        table = self.compositions.get((x, y, z), {})
        return {k: _frac(c) for k, c in table.get((i, j), {}).items() if c}

    def compose(self, x: str, y: str, z: str, g: Sequence, f: Sequence) -> list[Fraction]:
        out = [Fraction(0)] * len(self.hom(x, z))
        for i, gi in enumerate(g):
            if not gi:
                continue
            for j, fj in enumerate(f):
                if not fj:
                    continue
                for k, c in self.compose_basis(x, y, z, i, j).items():
                    out[k] += gi * fj * c
        return out

    def unit(self, x: str, y: str, i: int) -> list[Fraction]:
        v = [Fraction(0)] * len(self.hom(x, y))
        v[i] = Fraction(1)
        return v

    # ------------------------------------------------------------ validation

    def _check_units(self):
        for (x, y, z), table in self.compositions.items():
            for (i, j), out in table.items():
                nz = {k: c for k, c in out.items() if c}
                if x == y and j == self.identities[x] and nz != {i: 1}:
                    raise UsageError(f"identity of {x} is not a right unit")
                if y == z and i == self.identities[y] and nz != {j: 1}:
                    raise UsageError(f"identity of {y} is not a left unit")

    def _check_associativity(self):
        for w, x, y, z in itertools.product(self.objects, repeat=4):
            fs, gs, hs = self.hom(w, x), self.hom(x, y), self.hom(y, z)
            if not (fs and gs and hs):
                continue
            for a, b, c in itertools.product(range(len(hs)), range(len(gs)), range(len(fs))):
                f, g, h = self.unit(w, x, c), self.unit(x, y, b), self.unit(y, z, a)
                left = self.compose(w, x, z, self.compose(x, y, z, h, g), f)
                right = self.compose(w, y, z, h, self.compose(w, x, y, g, f))
                if left != right:
                    raise UsageError(
                        f"composition not associative on ({hs[a][0]}, {gs[b][0]}, {fs[c][0]})"
                    )

    # ----------------------------------------------------------------- json

    def to_json(self) -> dict:
        return {
            "objects": list(self.objects),
            "homs": [
                {"src": x, "dst": y, "basis": [[n, d] for n, d in self.hom(x, y)]}
                for x, y in sorted(self.homs)
            ],
            "identities": {x: self.identities[x] for x in self.objects},
            "compositions": [
                {
                    "src": x,
                    "mid": y,
                    "dst": z,
                    "coeffs": [
                        [i, j, k, str(_frac(c))]
                        for (i, j), out in sorted(table.items())
                        for k, c in sorted(out.items())
                        if c
                    ],
                }
                for (x, y, z), table in sorted(self.compositions.items())
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FiniteGradedCategory":
        try:
            homs = {(h["src"], h["dst"]): tuple((n, int(d)) for n, d in h["basis"]) for h in data["homs"]}
            comps: dict = {}
            for entry in data["compositions"]:
                table = comps.setdefault((entry["src"], entry["mid"], entry["dst"]), {})
                for i, j, k, c in entry["coeffs"]:
                    table.setdefault((int(i), int(j)), {})[int(k)] = Fraction(c)
            return cls(tuple(data["objects"]), homs, comps, dict(data["identities"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed category JSON: {exc}") from None


def build_category(
    objects: Sequence[str],
    homs: Mapping[tuple[str, str], Basis],
    products: Mapping[tuple[str, str, str], Mapping[tuple[int, int], Mapping[int, int]]],
    identities: Mapping[str, int],
) -> FiniteGradedCategory:
    """Fill in the unit entries of the composition table, then validate."""
    comps = {key: {ij: dict(out) for ij, out in table.items()} for key, table in products.items()}
    for x, y in homs:
        n = len(homs[(x, y)])
        # id_y o f and f o id_x
        t = comps.setdefault((x, y, y), {})
        for j in range(n):
            t[(identities[y], j)] = {j: 1}
        t = comps.setdefault((x, x, y), {})
        for i in range(n):
            t[(i, identities[x])] = {i: 1}
    return FiniteGradedCategory(tuple(objects), dict(homs), comps, dict(identities))


# ---------------------------------------------------------------------------
# bimodules


Matrix = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True, eq=False)
class GradedBimodule:
    """G(F1, F2), covariant in F2 and contravariant in F1.

    ``right[(F1, F1p, F2)][k]`` is the matrix of x -> x . f_k, from G(F1p, F2)
    to G(F1, F2), for f_k in Hom_1(F1, F1p).  ``left[(F1, F2, F2p)][k]`` is the
    matrix of x -> f_k . x from G(F1, F2) to G(F1, F2p), for f_k in Hom_2(F2, F2p).
    """

    values: Mapping[tuple[str, str], GradedComplex]
    right: Mapping[tuple[str, str, str], tuple[Matrix, ...]] = field(default_factory=dict)
    left: Mapping[tuple[str, str, str], tuple[Matrix, ...]] = field(default_factory=dict)

    def value(self, f1: str, f2: str) -> GradedComplex:
        try:
            return self.values[(f1, f2)]
        except KeyError:
            raise IncompleteModel(f"no bimodule value G({f1}, {f2})") from None

    def right_action(self, f1: str, f1p: str, f2: str) -> tuple[Matrix, ...]:
        try:
            return self.right[(f1, f1p, f2)]
        except KeyError:
            raise IncompleteModel(f"no right action of Hom({f1}, {f1p}) on G({f1p}, {f2})") from None

    def left_action(self, f1: str, f2: str, f2p: str) -> tuple[Matrix, ...]:
        try:
            return self.left[(f1, f2, f2p)]
        except KeyError:
            raise IncompleteModel(f"no left action of Hom({f2}, {f2p}) on G({f1}, {f2})") from None

    def validate(self, cat1: FiniteGradedCategory, cat2: FiniteGradedCategory) -> None:
        """Degree, chain-map (up to a sign per generator) and unit checks for every action.

        Every value G(F1, F2) must be present; missing actions are only
        reported when a computation needs them.
        """
        for f1 in cat1.objects:
            for f2 in cat2.objects:
                self.value(f1, f2)
        for (f1, f1p, f2), mats in self.right.items():
            src, dst = self.value(f1p, f2), self.value(f1, f2)
            basis = cat1.hom(f1, f1p)
            _check_action(mats, basis, src, dst, f"right action on G({f1p}, {f2})")
            if f1 == f1p:
                _check_identity(mats[cat1.identities[f1]], f"right unit on G({f1}, {f2})")
        for (f1, f2, f2p), mats in self.left.items():
            src, dst = self.value(f1, f2), self.value(f1, f2p)
            basis = cat2.hom(f2, f2p)
            _check_action(mats, basis, src, dst, f"left action on G({f1}, {f2})")
            if f2 == f2p:
                _check_identity(mats[cat2.identities[f2]], f"left unit on G({f1}, {f2})")

    def to_json(self) -> dict:
        def sparse(m):
            return [[i, j, str(x)] for i, row in enumerate(m) for j, x in enumerate(row) if x]

        return {
            "values": [
                {"src": a, "dst": b, "basis": [[n, d] for n, d in zip(c.names, c.degrees)],
                 "differential": sparse(c.differential)}
                for (a, b), c in sorted(self.values.items())
            ],
            "right": [
                {"key": list(k), "matrices": [sparse(m) for m in ms]} for k, ms in sorted(self.right.items())
            ],
            "left": [
                {"key": list(k), "matrices": [sparse(m) for m in ms]} for k, ms in sorted(self.left.items())
            ],
        }


def _check_action(mats, basis, src: GradedComplex, dst: GradedComplex, what: str) -> None:
    if len(mats) != len(basis):
        raise UsageError(f"{what}: expected {len(basis)} matrices, got {len(mats)}")
    for (name, deg), m in zip(basis, mats):
        if len(m) != dst.size or any(len(r) != src.size for r in m):
            raise UsageError(f"{what}: matrix for {name} has the wrong shape")
        for i in range(dst.size):
            for j in range(src.size):
                if m[i][j] and dst.degrees[i] != src.degrees[j] + deg:
                    raise UsageError(f"{what}: {name} does not have degree {deg}")
        if not src.size or not dst.size:
            continue
        dm = _matmul(dst.differential, m)
        md = _matmul(m, src.differential)
        if dm != md and dm != [[-x for x in r] for r in md]:
            raise UsageError(f"{what}: {name} does not commute with the differential")


def _check_identity(m, what: str) -> None:
    n = len(m)
    if any(m[i][j] != (i == j) for i in range(n) for j in range(n)):
        raise UsageError(f"{what}: identity does not act trivially")


# ---------------------------------------------------------------------------
# objects of the gluing and their Hom spaces


@dataclass(frozen=True)
class GlueTriple:
    """(F1, F2, phi): the fiber of phi: F1 -> F2, with phi a degree-0 cocycle in G(F1, F2).

    Either component may be None (the zero object); phi is then empty.
    """

    f1: str | None
    f2: str | None
    phi: tuple[Fraction, ...] = ()

    def __str__(self) -> str:
        return f"({self.f1 or 0}, {self.f2 or 0}, phi)"


@dataclass(frozen=True, eq=False)
class GluedModel:
    cat1: FiniteGradedCategory
    cat2: FiniteGradedCategory
    bimodule: GradedBimodule
    # object label -> coordinates in the glued numerical lattice, for the Euler bridge
    classes: Mapping[str, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        self.bimodule.validate(self.cat1, self.cat2)

    def check_triple(self, t: GlueTriple) -> None:
        if t.f1 is not None and t.f1 not in self.cat1.objects:
            raise UsageError(f"{t.f1} is not an object of the first factor")
        if t.f2 is not None and t.f2 not in self.cat2.objects:
            raise UsageError(f"{t.f2} is not an object of the second factor")
        if t.f1 is None or t.f2 is None:
            if any(t.phi):
                raise UsageError("phi must vanish when a component is zero")
            return
        g = self.bimodule.value(t.f1, t.f2)
        phi = [_frac(x) for x in t.phi] or [Fraction(0)] * g.size
        if len(phi) != g.size:
            raise UsageError(f"phi has {len(phi)} coordinates, G({t.f1}, {t.f2}) has {g.size}")
        if any(x and g.degrees[i] != 0 for i, x in enumerate(phi)):
            raise UsageError("phi must live in degree 0")
        if not g.is_cocycle(phi):
            raise UsageError("phi is not a cocycle")

    def triple_class(self, t: GlueTriple) -> tuple[int, ...]:
        """[F1] - [F2]."""
        n = len(next(iter(self.classes.values())))
        v = [0] * n
        if t.f1 is not None:
            v = [a + b for a, b in zip(v, self.classes[t.f1])]
        if t.f2 is not None:
            v = [a - b for a, b in zip(v, self.classes[t.f2])]
        return tuple(v)


def hom_complex(model: GluedModel, t: GlueTriple, tp: GlueTriple) -> GradedComplex:
    """Total complex Hom_1(F1, F1') + Hom_2(F2, F2') + G(F1, F2')[-1].

    The differential is (f1, f2, z) -> (0, 0, phi' . f1 - f2 . phi - d z).
    """
    model.check_triple(t)
    model.check_triple(tp)
    c1, c2, bim = model.cat1, model.cat2, model.bimodule
    h1 = c1.hom(t.f1, tp.f1) if t.f1 is not None and tp.f1 is not None else ()
    h2 = c2.hom(t.f2, tp.f2) if t.f2 is not None and tp.f2 is not None else ()
    if t.f1 is not None and tp.f2 is not None:
        g = bim.value(t.f1, tp.f2)
    else:
        g = GradedComplex.formal(())
    n1, n2, m = len(h1), len(h2), g.size
    size = n1 + n2 + m
    dmat = [[Fraction(0)] * size for _ in range(size)]
    off = n1 + n2

    if h1 and m and tp.f2 is not None and any(tp.phi):
        mats = bim.right_action(t.f1, tp.f1, tp.f2)
        phi_p = [_frac(x) for x in tp.phi]
        for k, mat in enumerate(mats):
            for i in range(m):
                dmat[off + i][k] = sum(mat[i][j] * phi_p[j] for j in range(len(phi_p)))
    if h2 and m and t.f1 is not None and any(t.phi):
        mats = bim.left_action(t.f1, t.f2, tp.f2)
        phi = [_frac(x) for x in t.phi]
        for k, mat in enumerate(mats):
            for i in range(m):
                dmat[off + i][n1 + k] = -sum(mat[i][j] * phi[j] for j in range(len(phi)))
    for i in range(m):
        for j in range(m):
            dmat[off + i][off + j] = -g.differential[i][j]

    degrees = tuple(d for _, d in h1) + tuple(d for _, d in h2) + tuple(d + 1 for d in g.degrees)
    names = (
        tuple(f"1:{n}" for n, _ in h1)
        + tuple(f"2:{n}" for n, _ in h2)
        + tuple(f"G:{n}" for n in g.names)
    )
    return GradedComplex(degrees, tuple(tuple(r) for r in dmat), names)


def gluing_hom(model: GluedModel, t: GlueTriple, tp: GlueTriple) -> GradedDims:
    """Graded dimensions of Hom in the gluing from ``t`` to ``tp``."""
    return hom_complex(model, t, tp).cohomology()


def dumps(obj) -> str:
    return json.dumps(obj.to_json(), indent=2, sort_keys=True)
