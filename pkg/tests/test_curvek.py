import itertools

import pytest
from hypothesis import given, strategies as st

from sodkit import curvek
from sodkit.curvek import (
    IDEAL_OF_POINT,
    O_C,
    O_PT,
    POINT,
    STRUCTURE_SHEAF,
    CurveClass,
    ProductClass,
    augmentation_pairing,
    bnp_enumerate,
    curve_chi,
    gluing_pairing,
    grassmannian_degree,
    product_chi,
)
from sodkit.errors import UsageError


@pytest.mark.parametrize("g", [0, 1, 2, 7])
def test_curve_chi_entries(g):
    assert curve_chi(g, O_C, O_C) == 1 - g
    assert curve_chi(g, O_C, O_PT) == 1
    assert curve_chi(g, O_PT, O_C) == -1
    assert curve_chi(g, O_PT, O_PT) == 0


def test_riemann_roch_for_line_bundles():
    assert curve_chi(3, O_C, curvek.line_bundle(5)) == 5 + 1 - 3
    assert curve_chi(3, O_C, curvek.canonical(3)) == 3 - 1


def test_product_chi_examples():
    assert product_chi(2, 5, STRUCTURE_SHEAF, STRUCTURE_SHEAF) == (1 - 2) * (1 - 5)
    assert product_chi(2, 5, POINT, POINT) == 0


@pytest.mark.parametrize("g1,g2", [(0, 0), (2, 3), (5, 1)])
def test_ideal_point_pairing_block(g1, g2):
    m = gluing_pairing(g1, g2, IDEAL_OF_POINT)
    assert m == ((g1 * g2 - g1 - g2, 1 - g1), (g2 - 1, -1))


def test_augmentation_and_point_gluing():
    assert augmentation_pairing(4) == ((-3, 1),)
    # point as the first factor, gluing object the point of the product
    assert gluing_pairing(0, 3, POINT, basis1=(O_C,), basis2=(O_C,)) == ((1,),)


def test_bnp_examples():
    assert [e.to_json() for e in bnp_enumerate(1)] == [{"r": 1, "s": 1, "degree": 0, "count": 1}]
    g4 = {(e.r, e.s): e for e in bnp_enumerate(4)}
    assert g4[(2, 2)].degree == 3 and g4[(2, 2)].count == 2
    assert {(e.r, e.s): e.count for e in bnp_enumerate(9)}[(3, 3)] == 42
    assert bnp_enumerate(0) == []
    with pytest.raises(UsageError):
        bnp_enumerate(-1)


def _lattice_paths(r, s):
    """Standard Young tableaux of the r x s rectangle, counted by brute force."""
    cells = [(i, j) for i in range(r) for j in range(s)]
    count = 0
    for perm in itertools.permutations(range(len(cells))):
        t = dict(zip(cells, perm))
        if all(
            (i + 1 >= r or t[(i, j)] < t[(i + 1, j)]) and (j + 1 >= s or t[(i, j)] < t[(i, j + 1)])
            for i, j in cells
        ):
            count += 1
    return count


@pytest.mark.parametrize("r,s", [(1, 1), (1, 4), (2, 2), (2, 3), (3, 2)])
def test_grassmannian_degree_against_tableaux(r, s):
    assert grassmannian_degree(r, s) == _lattice_paths(r, s)


@given(st.integers(1, 60))
def test_bnp_entries_are_consistent(g):
    for e in bnp_enumerate(g):
        assert e.r * e.s == g
        assert curve_chi(g, O_C, curvek.line_bundle(e.degree)) == e.r - e.s


classes = st.builds(CurveClass, st.integers(-4, 4), st.integers(-4, 4))


@given(st.integers(0, 6), st.integers(0, 6), classes, classes, classes, classes)
def test_kunneth_multiplicativity(g1, g2, v1, v2, w1, w2):
    u = ProductClass.boxtimes(v1, v2)
    w = ProductClass.boxtimes(w1, w2)
    assert product_chi(g1, g2, u, w) == curve_chi(g1, v1, w1) * curve_chi(g2, v2, w2)


@given(st.integers(0, 6), st.integers(0, 6), classes, classes)
def test_gluing_pairing_additive(g1, g2, a, b):
    basis = (a, b, a + b)
    m = gluing_pairing(g1, g2, IDEAL_OF_POINT, basis, basis)
    for j in range(3):
        assert m[2][j] == m[0][j] + m[1][j]
        assert m[j][2] == m[j][0] + m[j][1]
