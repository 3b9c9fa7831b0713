"""Small exact integer matrix helpers.

Matrices are plain ``tuple[tuple[int, ...], ...]`` (row-major) at the API
boundary; sympy does the heavy lifting for determinants, characteristic
polynomials and normal forms.
"""
from __future__ import annotations

from typing import Sequence

from sympy import Matrix, Poly, cyclotomic_poly, symbols, totient
from sympy.matrices.normalforms import hermite_normal_form, invariant_factors

IntMatrix = tuple[tuple[int, ...], ...]

T = symbols("t")


def as_int_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    out = tuple(tuple(int(x) for x in row) for row in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def to_sympy(m: IntMatrix, ncols: int | None = None) -> Matrix:
    if not m:
        return Matrix.zeros(0, ncols or 0)
    return Matrix(m)


def from_sympy(m: Matrix) -> IntMatrix:
    rows = []
    for i in range(m.rows):
        row = []
        for j in range(m.cols):
            x = m[i, j]
            if not x.is_integer:
                raise ValueError(f"non-integral entry {x}")
            row.append(int(x))
        rows.append(tuple(row))
    return tuple(rows)


def transpose(m: IntMatrix) -> IntMatrix:
    return tuple(zip(*m)) if m else ()


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def integer_kernel(rows: Sequence[Sequence[int]], n: int) -> IntMatrix:
    """Basis of ``{v in Z^n : rows @ v = 0}`` as the columns of an n x k matrix.

    Column operations reduce ``rows`` to echelon form while the same
    operations are recorded on an identity matrix; the columns of the
    transform that end up zero span the kernel.  The transform is
    unimodular, so the result is saturated.  The basis is then replaced
    by the Hermite normal form of its column span so that it is canonical.
    """
    m = [list(r) for r in rows]
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(dst, src, q):
        # col_dst -= q * col_src
        for r in m:
            r[dst] -= q * r[src]
        for r in u:
            r[dst] -= q * r[src]

    def swap(a, b):
        for r in m:
            r[a], r[b] = r[b], r[a]
        for r in u:
            r[a], r[b] = r[b], r[a]

    pivot_col = 0
    for row in range(len(m)):
        if pivot_col >= n:
            break
        while True:
            nz = [j for j in range(pivot_col, n) if m[row][j] != 0]
            if not nz:
                break
            j = min(nz, key=lambda c: abs(m[row][c]))
            swap(pivot_col, j)
            done = True
            for c in range(pivot_col + 1, n):
                if m[row][c] != 0:
                    colop(c, pivot_col, m[row][c] // m[row][pivot_col])
                    if m[row][c] != 0:
                        done = False
            if done:
                pivot_col += 1
                break
    kernel_cols = list(range(pivot_col, n))
    if not kernel_cols:
        return tuple(() for _ in range(n))
    k = Matrix([[u[i][j] for j in kernel_cols] for i in range(n)])
    return from_sympy(hermite_normal_form(k))


def is_saturated(embedding: IntMatrix) -> bool:
    """True when Z^n / (column span) is torsion-free, i.e. all invariant factors are 1."""
    if not embedding or not embedding[0]:
        return True
    factors = invariant_factors(Matrix(embedding))
    return all(abs(int(f)) == 1 for f in factors)


def charpoly(m: IntMatrix) -> tuple[int, ...]:
    """Characteristic polynomial det(tI - M), coefficients from the leading term down."""
    if not m:
        return (1,)
    p = Matrix(m).charpoly(T)
    return tuple(int(c) for c in p.all_coeffs())


def poly_str(coeffs: Sequence[int]) -> str:
    return str(Poly(list(coeffs), T).as_expr())


def factor_str(coeffs: Sequence[int]) -> str:
    from sympy import factor

    return str(factor(Poly(list(coeffs), T).as_expr()))


def strip_cyclotomic(coeffs: Sequence[int]) -> tuple[tuple[int, ...], dict[int, int]]:
    """Divide out every cyclotomic factor Phi_n with phi(n) <= deg by trial division.

    Returns the cofactor and a map n -> multiplicity.
    """
    p = Poly(list(coeffs), T)
    deg = p.degree()
    found: dict[int, int] = {}
    # phi(n) <= deg forces n <= 2 deg^2 (crudely); phi(n) >= sqrt(n/2)
    n = 1
    while n <= max(2, 2 * deg * deg):
        if totient(n) <= deg:
            cyc = Poly(cyclotomic_poly(n, T), T)
            while p.degree() >= cyc.degree():
                q, r = p.div(cyc)
                if not r.is_zero:
                    break
                p = q
                found[n] = found.get(n, 0) + 1
        n += 1
    return tuple(int(c) for c in p.all_coeffs()), found


def descartes_positive_roots(coeffs: Sequence[int]) -> int:
    """Sign changes in the coefficient sequence (exact count when all roots are real)."""
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)
