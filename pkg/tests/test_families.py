import pytest
from hypothesis import given, strategies as st

from sodkit import curvek
from sodkit.errors import NotBNPExtremal, UsageError
from sodkit.families import (
    FamilySpec,
    augmented_lattice,
    bn_class,
    bn_complement_lattice,
    curve_lattice,
    exotic_class,
    glue_lattices,
    ipg_lattice,
    rpg_basis,
    rpg_lattice,
    twisted_ipg_pairing,
)
from sodkit.lattice import EulerLattice, Found, is_isometry, isometry_search, pair, serre_matrix, apply

# closed forms typed in from the source matrices
AUG = lambda g: ((1, 1 - g, 1), (0, 1 - g, 1), (0, -1, 0))  # noqa: E731
IPG = lambda a, b: (  # noqa: E731
    (1 - a, 1, a * b - a - b, 1 - a),
    (-1, 0, b - 1, -1),
    (0, 0, 1 - b, 1),
    (0, 0, -1, 0),
)
RPG = lambda a, b: ((1, -1, 1), (0, 1 - a - b, 1), (0, -1, 0))  # noqa: E731


def test_augmented_examples():
    assert augmented_lattice(0).gram == ((1, 1, 1), (0, 1, 1), (0, -1, 0))
    assert augmented_lattice(2).gram == ((1, -1, 1), (0, -1, 1), (0, -1, 0))
    assert all(augmented_lattice(g).det == 1 for g in range(41))


def test_ipg_examples():
    assert ipg_lattice(2, 3).gram[0][2] == 1
    assert ipg_lattice(0, 0).gram[0][2] == 0
    assert all(abs(ipg_lattice(a, b).det) == 1 for a in range(21) for b in range(21))


def test_gluing_constructor():
    pt = EulerLattice(((1,),))
    assert glue_lattices(pt, curve_lattice(3), curvek.augmentation_pairing(3)).gram == AUG(3)
    zero = glue_lattices(curve_lattice(1), curve_lattice(2), ((0, 0), (0, 0)))
    assert zero.gram == ((0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, -1, 1), (0, 0, -1, 0))
    with pytest.raises(UsageError):
        glue_lattices(pt, curve_lattice(3), ((1,),))


def test_exotic_class():
    for a, b in ((0, 0), (3, 1), (6, 6)):
        e = exotic_class(a, b)
        lat = ipg_lattice(a, b)
        assert e.coords == (0, 1, 0, -1)
        assert pair(lat, e, e) == 1
        assert all(pair(lat, v, e) == 0 for v in rpg_basis(a, b))


def test_rpg_examples():
    assert rpg_lattice(1, 1).gram == ((1, -1, 1), (0, -1, 1), (0, -1, 0))
    assert all(rpg_lattice(a, b).gram[0][1] == -1 for a in range(6) for b in range(6))
    for g in range(4):
        assert isinstance(isometry_search(rpg_lattice(0, g), augmented_lattice(g), 10), Found)


def test_bn_examples():
    assert bn_complement_lattice(4, 2, 2).gram == ((-1, 0), (1, -1))
    for g in (1, 3, 8):
        assert bn_complement_lattice(g, 1, g).gram == ((1 - g, -1), (1, 0))
    with pytest.raises(NotBNPExtremal):
        bn_complement_lattice(6, 2, 2)
    with pytest.raises(NotBNPExtremal):
        bn_class(6, 4)


@pytest.mark.parametrize("g", range(1, 25))
def test_bn_class_is_exceptional(g):
    for h0 in range(1, g + 1):
        if g % h0 == 0:
            e = bn_class(g, h0)
            assert pair(augmented_lattice(g), e, e) == 1
            h1 = g // h0
            assert bn_complement_lattice(g, h0, h1).gram == ((1 - h1, g - h0 - h1), (1, 1 - h0))


@given(st.integers(0, 40))
def test_augmented_closed_form(g):
    assert augmented_lattice(g).gram == AUG(g)


@given(st.integers(0, 20), st.integers(0, 20))
def test_ipg_and_rpg_closed_forms(a, b):
    assert ipg_lattice(a, b).gram == IPG(a, b)
    assert rpg_lattice(a, b).gram == RPG(a, b)


@given(st.integers(0, 40))
def test_serre_action_on_e(g):
    s = serre_matrix(augmented_lattice(g))
    assert apply(s, (1, 0, 0)) == (g, -1, -(2 * g - 2))
    if g:
        assert bn_class(g, g).coords == (g, -1, -(2 * g - 2))
        assert bn_class(g, 1).coords == (1, -1, 0)


@given(st.integers(0, 8), st.integers(0, 8))
def test_twist_is_explicit_isometry(a, b):
    twisted = glue_lattices(curve_lattice(a, "1"), curve_lattice(b, "2"), twisted_ipg_pairing(a, b))
    p = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, -1, 1))
    assert is_isometry(p, twisted.gram, ipg_lattice(a, b).gram)


def test_family_spec_grammar():
    assert str(FamilySpec.parse("ipg: 2, 3")) == "ipg:2,3"
    spec = FamilySpec.parse("bncomp:6,2,3")
    assert spec.lattice().gram == ((-2, 1), (1, -1))
    for bad in ("augmented", "ipg:1", "torus:1", "augmented:-1", "augmented:1,2"):
        with pytest.raises(UsageError):
            FamilySpec.parse(bad)
    with pytest.raises(NotBNPExtremal):
        FamilySpec.parse("bncomp:6,2,2")
    with pytest.raises(UsageError):
        FamilySpec.parse("augmented:10001")
