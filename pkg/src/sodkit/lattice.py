"""Free abelian groups with a non-symmetric integer bilinear form.

Convention: the Gram matrix is read with the row index as the first
argument, ``chi(v, w) = v^T A w``.  The numerical Serre operator is the
unique S with ``chi(x, y) = chi(y, S x)``, which gives ``S = A^{-1} A^T``;
its columns are the images of the basis vectors.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Literal, Sequence

import numpy as np
from sympy import Matrix

from . import intmat
from .errors import NonUnimodular, NotExceptional, UsageError
from .intmat import IntMatrix

Side = Literal["left", "right"]


@dataclass(frozen=True)
class EulerLattice:
    gram: IntMatrix
    basis_labels: tuple[str, ...] = ()

    def __post_init__(self):
        gram = intmat.as_int_matrix(self.gram)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise UsageError("Gram matrix must be square")
        labels = tuple(self.basis_labels) or tuple(f"b{i + 1}" for i in range(n))
        if len(labels) != n:
            raise UsageError(f"{len(labels)} labels for rank {n}")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "basis_labels", labels)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> int:
        if self.rank == 0:
            return 1
        return int(Matrix(self.gram).det())

    @property
    def unimodular(self) -> bool:
        return abs(self.det) == 1

    def cls(self, coords: Sequence[int]) -> "KClass":
        return KClass(tuple(int(c) for c in coords), self)

    def basis(self, i: int) -> "KClass":
        return self.cls([int(j == i) for j in range(self.rank)])

    def zero(self) -> "KClass":
        return self.cls([0] * self.rank)

    def symmetrized(self) -> IntMatrix:
        return tuple(
            tuple(self.gram[i][j] + self.gram[j][i] for j in range(self.rank))
            for i in range(self.rank)
        )

    def transformed(self, p: IntMatrix, labels: Iterable[str] = ()) -> "EulerLattice":
        """Lattice with Gram P^T A P, i.e. the form restricted to the columns of P."""
        pm = Matrix(p)
        return EulerLattice(intmat.from_sympy(pm.T * Matrix(self.gram) * pm), tuple(labels))

    def to_json(self) -> dict:
        return {"basis": list(self.basis_labels), "gram": [list(r) for r in self.gram]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict | str) -> "EulerLattice":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            gram = data["gram"]
            labels = data.get("basis", ())
        except (KeyError, TypeError, AttributeError) as exc:
            raise UsageError(f"not a lattice document: {exc}") from None
        if any(not isinstance(x, int) or isinstance(x, bool) for row in gram for x in row):
            raise UsageError("Gram entries must be integers")
        return cls(intmat.as_int_matrix(gram), tuple(labels))


@dataclass(frozen=True)
class KClass:
    coords: tuple[int, ...]
    lattice: EulerLattice = field(repr=False, compare=False)

    def __post_init__(self):
        if len(self.coords) != self.lattice.rank:
            raise UsageError(
                f"class has {len(self.coords)} coordinates, lattice rank is {self.lattice.rank}"
            )

    def _same(self, other: "KClass") -> None:
        if len(other.coords) != len(self.coords):
            raise UsageError("classes live in lattices of different rank")

    def __add__(self, other: "KClass") -> "KClass":
        self._same(other)
        return KClass(tuple(a + b for a, b in zip(self.coords, other.coords)), self.lattice)

    def __sub__(self, other: "KClass") -> "KClass":
        self._same(other)
        return KClass(tuple(a - b for a, b in zip(self.coords, other.coords)), self.lattice)

    def __neg__(self) -> "KClass":
        return KClass(tuple(-a for a in self.coords), self.lattice)

    def __rmul__(self, k: int) -> "KClass":
        return KClass(tuple(k * a for a in self.coords), self.lattice)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        terms = []
        for c, lab in zip(self.coords, self.lattice.basis_labels):
            if c:
                terms.append(f"{c}{lab}" if c not in (1, -1) else ("-" if c < 0 else "") + lab)
        return " + ".join(terms).replace("+ -", "- ") or "0"


def _coords(lat: EulerLattice, v) -> tuple[int, ...]:
    c = tuple(v.coords) if isinstance(v, KClass) else tuple(int(x) for x in v)
    if len(c) != lat.rank:
        raise UsageError(f"vector of length {len(c)} in a rank {lat.rank} lattice")
    return c


def pair(lat: EulerLattice, v, w) -> int:
    """Euler pairing chi(v, w) = v^T A w."""
    a, b = _coords(lat, v), _coords(lat, w)
    g = lat.gram
    return sum(a[i] * g[i][j] * b[j] for i in range(lat.rank) for j in range(lat.rank))


# --------------------------------------------------------------------------
# Serre operator


@dataclass(frozen=True)
class SerreAnalysis:
    serre_matrix: IntMatrix
    char_poly: tuple[int, ...]
    quasiunipotent: bool
    unipotent: bool
    cyclotomic_factors: dict = field(default_factory=dict, compare=False)

    def char_poly_str(self, factored: bool = True) -> str:
        return intmat.factor_str(self.char_poly) if factored else intmat.poly_str(self.char_poly)

    def to_json(self) -> dict:
        return {
            "serre_matrix": [list(r) for r in self.serre_matrix],
            "char_poly": list(self.char_poly),
            "char_poly_factored": self.char_poly_str(),
            "quasiunipotent": self.quasiunipotent,
            "unipotent": self.unipotent,
        }


def serre_matrix(lat: EulerLattice) -> IntMatrix:
    if not lat.unimodular:
        raise NonUnimodular(f"det = {lat.det}")
    a = Matrix(lat.gram)
    return intmat.from_sympy(a.inv() * a.T)


def serre_analysis(lat: EulerLattice) -> SerreAnalysis:
    s = serre_matrix(lat)
    cp = intmat.charpoly(s)
    rest, found = intmat.strip_cyclotomic(cp)
    quasi = rest == (1,)
    uni = quasi and set(found) <= {1}
    return SerreAnalysis(s, cp, quasi, uni, found)


def apply(m: IntMatrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


# --------------------------------------------------------------------------
# mutations and complements


def mutate(lat: EulerLattice, e, v, side: Side = "right") -> KClass:
    """Reflect ``v`` through the numerically exceptional class ``e``.

    right: v - chi(v, e) e, which is left-orthogonal to e (chi(., e) = 0);
    left:  v - chi(e, v) e, which is right-orthogonal to e (chi(e, .) = 0).
    """
    ec, vc = _coords(lat, e), _coords(lat, v)
    if pair(lat, ec, ec) != 1:
        raise NotExceptional(f"chi(e, e) = {pair(lat, ec, ec)}")
    if side == "right":
        k = pair(lat, vc, ec)
    elif side == "left":
        k = pair(lat, ec, vc)
    else:
        raise UsageError(f"side must be 'left' or 'right', got {side!r}")
    return lat.cls([a - k * b for a, b in zip(vc, ec)])


@dataclass(frozen=True)
class Complement:
    lattice: EulerLattice
    embedding: IntMatrix  # ambient_rank x sub_rank; columns are the sub-basis

    def ambient_class(self, coords: Sequence[int]) -> tuple[int, ...]:
        return apply(self.embedding, coords)


def orthogonal_complement(lat: EulerLattice, e, side: Side = "left") -> Complement:
    """Saturated sublattice orthogonal to ``e``.

    left:  {v : chi(v, e) = 0}
    right: {v : chi(e, v) = 0}
    """
    ec = _coords(lat, e)
    if not any(ec):
        raise UsageError("complement of the zero class is not defined")
    g = lat.gram
    n = lat.rank
    if side == "left":
        row = [sum(g[i][j] * ec[j] for j in range(n)) for i in range(n)]
    elif side == "right":
        row = [sum(ec[i] * g[i][j] for i in range(n)) for j in range(n)]
    else:
        raise UsageError(f"side must be 'left' or 'right', got {side!r}")
    emb = intmat.integer_kernel([row], n)
    k = len(emb[0]) if emb and emb[0] else 0
    labels = tuple(f"k{i + 1}" for i in range(k))
    return Complement(lat.transformed(emb, labels), emb)


# --------------------------------------------------------------------------
# class predicates


@dataclass(frozen=True)
class ClassPredicates:
    """Numerical shadows only: chi(v, v) = 1 or 2 is necessary, not sufficient,
    for the object to be exceptional or 2-spherical."""

    chi_self: int
    numerically_exceptional: bool
    numerically_2spherical: bool

    def to_json(self) -> dict:
        return {
            "chi_self": self.chi_self,
            "numerically_exceptional": self.numerically_exceptional,
            "numerically_2spherical": self.numerically_2spherical,
        }


def class_predicates(lat: EulerLattice, v) -> ClassPredicates:
    c = pair(lat, v, v)
    return ClassPredicates(c, c == 1, c == 2)


# --------------------------------------------------------------------------
# isometry testing


@dataclass(frozen=True)
class Found:
    matrix: IntMatrix

    def to_json(self) -> dict:
        return {"result": "found", "matrix": [list(r) for r in self.matrix]}


@dataclass(frozen=True)
class RefutedByInvariant:
    name: str
    left: str = ""
    right: str = ""

    def to_json(self) -> dict:
        return {"result": "refuted", "invariant": self.name, "left": self.left, "right": self.right}


@dataclass(frozen=True)
class NotFoundUpToBound:
    bound: int

    def to_json(self) -> dict:
        return {
            "result": "inconclusive",
            "bound": self.bound,
            "note": "no isometry with entries bounded by the search box; this does not prove non-isometry",
        }


IsometryResult = Found | RefutedByInvariant | NotFoundUpToBound


def is_isometry(p: IntMatrix, a1: IntMatrix, a2: IntMatrix) -> bool:
    pm = Matrix(p)
    return abs(pm.det()) == 1 and pm.T * Matrix(a1) * pm == Matrix(a2)


def _signature(sym: IntMatrix) -> tuple[int, int, int]:
    cp = intmat.charpoly(sym)
    n = len(sym)
    zero = 0
    while zero < len(cp) and cp[len(cp) - 1 - zero] == 0:
        zero += 1
    pos = intmat.descartes_positive_roots(cp)
    # roots of p(-t) are the negatives of the roots of p
    neg_poly = [c * (-1) ** (n - i) for i, c in enumerate(cp)]
    neg = intmat.descartes_positive_roots(neg_poly)
    return pos, neg, zero


def _content(lat: EulerLattice) -> int:
    from math import gcd

    g = 0
    for i in range(lat.rank):
        g = gcd(g, lat.gram[i][i])
        for j in range(i + 1, lat.rank):
            g = gcd(g, lat.gram[i][j] + lat.gram[j][i])
    return g


def isometry_invariants(lat: EulerLattice) -> list[tuple[str, object]]:
    """Invariants of (Z^n, chi) under P^T A P, cheapest first."""
    from sympy.matrices.normalforms import invariant_factors

    out: list[tuple[str, object]] = [("rank", lat.rank), ("abs_det", abs(lat.det))]
    if lat.unimodular:
        out.append(("serre_char_poly", intmat.charpoly(serre_matrix(lat))))
    sym = lat.symmetrized()
    skew = tuple(
        tuple(lat.gram[i][j] - lat.gram[j][i] for j in range(lat.rank)) for i in range(lat.rank)
    )
    out.append(("sym_abs_det", abs(int(Matrix(sym).det())) if lat.rank else 1))
    out.append(("quadratic_content", _content(lat)))
    out.append(("sym_signature", _signature(sym) if lat.rank else (0, 0, 0)))
    if lat.rank:
        out.append(("sym_invariant_factors", tuple(abs(int(x)) for x in invariant_factors(Matrix(sym)))))
        out.append(("skew_invariant_factors", tuple(abs(int(x)) for x in invariant_factors(Matrix(skew)))))
    return out


def _format_invariant(name: str, value) -> str:
    if name == "serre_char_poly":
        return intmat.factor_str(value)
    return str(value)


def isometry_search(l1: EulerLattice, l2: EulerLattice, bound: int = 10) -> IsometryResult:
    """Look for integer P with |det P| = 1 and P^T A1 P = A2.

    Invariants are compared first.  Otherwise the columns of P are chosen
    one at a time from the box [-bound, bound]^n in lexicographic order,
    each column constrained by its self-pairing and by its pairings with
    the columns already chosen.  The first hit is therefore the
    lexicographically smallest P (columns compared in order).  Equal Gram
    matrices short-circuit to the identity.
    """
    if bound < 0:
        raise UsageError("bound must be nonnegative")
    if l1.rank != l2.rank:
        return RefutedByInvariant("rank", str(l1.rank), str(l2.rank))
    inv1 = isometry_invariants(l1)
    inv2 = dict(isometry_invariants(l2))
    for name, value in inv1:
        if name in inv2 and inv2[name] != value:
            return RefutedByInvariant(
                name, _format_invariant(name, value), _format_invariant(name, inv2[name])
            )
    n = l1.rank
    if l1.gram == l2.gram:
        return Found(intmat.identity(n))
    a1 = np.array(l1.gram, dtype=np.int64)
    a2 = l2.gram
    box = np.array(list(itertools.product(range(-bound, bound + 1), repeat=n)), dtype=np.int64)
    self_pair = np.einsum("ij,ij->i", box @ a1, box)
    # candidates for column j, restricted once by the self-pairing
    cands = []
    for j in range(n):
        c = box[self_pair == a2[j][j]]
        cands.append((c, c @ a1, c @ a1.T))  # rows: v, v^T A1, v^T A1^T
    cols: list[np.ndarray] = []

    # with |det A1| = |det A2| = 1 a Gram-preserving P is automatically unimodular
    need_det = not (l1.unimodular and l2.unimodular)

    def extend(j: int) -> bool:
        if j == n:
            return not need_det or abs(Matrix(np.array(cols).T.tolist()).det()) == 1
        vecs, left, right = cands[j]
        mask = np.ones(len(vecs), dtype=bool)
        for i, p in enumerate(cols):
            mask &= left @ p == a2[j][i]  # chi(v, p_i)
            mask &= right @ p == a2[i][j]  # chi(p_i, v)
        for idx in np.flatnonzero(mask):
            cols.append(vecs[idx])
            if extend(j + 1):
                return True
            cols.pop()
        return False

    if not extend(0):
        return NotFoundUpToBound(bound)
    p = tuple(tuple(int(cols[j][i]) for j in range(n)) for i in range(n))
    if not is_isometry(p, l1.gram, l2.gram):
        raise AssertionError("search produced a matrix that fails the isometry identity")
    return Found(p)
