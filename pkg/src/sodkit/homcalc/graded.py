"""Graded dimension vectors, finite cochain complexes and rank chases.

Degrees are cohomological: ``k[-n]`` sits in degree n, so a shift [1]
lowers degrees by one.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from ..errors import ChaseFailed, UsageError


class GradedDims(Mapping):
    """Finitely supported map degree -> nonnegative dimension.

    Zero entries are dropped, so ``GradedDims({0: 1, 1: 0}) == {0: 1}``.
    """

    __slots__ = ("_d",)

    def __init__(self, data: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = data.items() if isinstance(data, Mapping) else data
        d: dict[int, int] = {}
        for k, v in items:
            k, v = int(k), int(v)
            if v < 0:
                raise UsageError(f"negative dimension {v} in degree {k}")
            if v:
                d[k] = d.get(k, 0) + v
        self._d = dict(sorted(d.items()))

    def __getitem__(self, k):
        return self._d.get(k, 0)

    def __iter__(self):
        return iter(self._d)

    def __len__(self):
        return len(self._d)

    def __eq__(self, other):
        if isinstance(other, Mapping):
            return self._d == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._d.items()))

    def __repr__(self):
        return f"GradedDims({self._d})"

    def __add__(self, other: Mapping) -> "GradedDims":
        return GradedDims(list(self._d.items()) + list(other.items()))

    def shift(self, n: int) -> "GradedDims":
        """V[n]: the degree-p part of V moves to degree p - n."""
        return GradedDims({k - n: v for k, v in self._d.items()})

    def euler(self) -> int:
        return sum((-1) ** k * v for k, v in self._d.items())

    def total(self) -> int:
        return sum(self._d.values())

    def support(self) -> tuple[int, int]:
        if not self._d:
            return (0, -1)
        return (min(self._d), max(self._d))

    def to_json(self) -> dict[str, int]:
        return {str(k): v for k, v in self._d.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "GradedDims":
        return cls({int(k): v for k, v in data.items()})


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank over the rationals."""
    if not rows or not rows[0]:
        return 0
    data = [[QQ(Fraction(x).numerator, Fraction(x).denominator) for x in r] for r in rows]
    return DomainMatrix(data, (len(rows), len(rows[0])), QQ).rank()


@dataclass(frozen=True)
class GradedComplex:
    """Finite-dimensional cochain complex on an explicit graded basis.

    ``differential[i][j]`` is the coefficient of basis vector i in d(basis j);
    it must raise degree by exactly one and square to zero.
    """

    degrees: tuple[int, ...]
    differential: tuple[tuple[Fraction, ...], ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        n = len(self.degrees)
        if len(self.differential) != n or any(len(r) != n for r in self.differential):
            raise UsageError("differential must be square of the basis size")
        for i in range(n):
            for j in range(n):
                if self.differential[i][j] and self.degrees[i] != self.degrees[j] + 1:
                    raise UsageError("differential must have degree +1")
        if n and any(any(r) for r in _matmul(self.differential, self.differential)):
            raise UsageError("differential does not square to zero")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"e{i}" for i in range(n)))

    @classmethod
    def formal(cls, degrees: Sequence[int], names: Sequence[str] = ()) -> "GradedComplex":
        n = len(degrees)
        zero = tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))
        return cls(tuple(degrees), zero, tuple(names))

    @property
    def size(self) -> int:
        return len(self.degrees)

    def indices(self, degree: int) -> list[int]:
        return [i for i, d in enumerate(self.degrees) if d == degree]

    def cohomology(self) -> GradedDims:
        out = {}
        for p in sorted(set(self.degrees)):
            dim = len(self.indices(p))
            out[p] = dim - self._rank_out(p) - self._rank_out(p - 1)
        return GradedDims(out)

    def _rank_out(self, p: int) -> int:
        src, dst = self.indices(p), self.indices(p + 1)
        if not src or not dst:
            return 0
        return rank([[self.differential[i][j] for j in src] for i in dst])

    def is_cocycle(self, vec: Sequence) -> bool:
        return not any(
            sum(self.differential[i][j] * vec[j] for j in range(self.size)) for i in range(self.size)
        )

    def rank_mod_boundaries(self, vectors: Sequence[Sequence]) -> int:
        """Rank of the span of cocycle ``vectors`` in cohomology."""
        boundaries = [
            [self.differential[i][j] for i in range(self.size)] for j in range(self.size)
        ]
        base = rank(boundaries) if boundaries else 0
        return rank(boundaries + [list(v) for v in vectors]) - base


def _matmul(a, b):
    # sparse enough in practice that skipping zeros pays off
    n, m = len(a), len(b[0]) if b else 0
    out = [[0] * m for _ in range(n)]
    for i, row in enumerate(a):
        for t, x in enumerate(row):
            if x:
                for j, y in enumerate(b[t]):
                    if y:
                        out[i][j] += x * y
    return out


# --------------------------------------------------------------------------
# chases through a distinguished triangle X -> Y -> Z with zero differentials


def _check_ranks(y: GradedDims, z: GradedDims, ranks: Mapping[int, int]) -> None:
    for p, r in ranks.items():
        if r < 0:
            raise ChaseFailed(p, f"negative rank {r}")
        if r > y[p] or r > z[p]:
            raise ChaseFailed(p, f"rank {r} exceeds dimensions {y[p]} -> {z[p]}")


def fiber_dims(y: Mapping[int, int], z: Mapping[int, int], ranks: Mapping[int, int]) -> GradedDims:
    """Dimensions of X in a triangle X -> Y -> Z when Y -> Z has the given ranks.

    dim X^p = (dim Y^p - r_p) + (dim Z^{p-1} - r_{p-1}).
    """
    y, z = GradedDims(y), GradedDims(z)
    _check_ranks(y, z, ranks)
    degrees = set(y) | {p + 1 for p in z}
    return GradedDims(
        {p: (y[p] - ranks.get(p, 0)) + (z[p - 1] - ranks.get(p - 1, 0)) for p in degrees}
    )


def cone_dims(x: Mapping[int, int], y: Mapping[int, int], ranks: Mapping[int, int]) -> GradedDims:
    """Dimensions of Z in a triangle X -> Y -> Z when X -> Y has the given ranks.

    dim Z^p = (dim Y^p - r_p) + (dim X^{p+1} - r_{p+1}).
    """
    x, y = GradedDims(x), GradedDims(y)
    _check_ranks(x, y, ranks)
    degrees = set(y) | {p - 1 for p in x}
    return GradedDims(
        {p: (y[p] - ranks.get(p, 0)) + (x[p + 1] - ranks.get(p + 1, 0)) for p in degrees}
    )
