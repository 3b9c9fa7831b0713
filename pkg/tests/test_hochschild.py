import pytest
from hypothesis import given, strategies as st

from sodkit.errors import ChaseFailed, OutOfPaperRange, UsageError
from sodkit.families import FamilySpec, augmented_lattice
from sodkit.hochschild import (
    augmented_gluing_chase,
    bn_modification_terms,
    curve_hh_cohomology,
    hh_bn_modification,
    hh_cohomology,
    hh_gluing_check,
    hh_homology,
    ipg_gluing_chase,
    rpg_cone_chase,
)
from sodkit.families import bn_class
from sodkit.homcalc import GradedDims
from sodkit.lattice import apply, pair, serre_matrix


def F(text):
    return FamilySpec.parse(text)


def test_homology_examples():
    assert hh_homology(F("augmented:4")) == {1: 4, 0: 3, -1: 4}
    assert hh_homology(F("ipg:2,3")) == {1: 5, 0: 4, -1: 5}
    assert hh_homology(F("rpg:0,0")) == {0: 3}


def test_cohomology_examples():
    assert hh_cohomology(F("augmented:1")) == {0: 1, -1: 1, -2: 1}
    assert hh_cohomology(F("augmented:6")) == {0: 1, -2: 15}
    assert hh_cohomology(F("rpg:2,2")) == {0: 1, -2: 9, -3: 4, -4: 4}
    assert hh_cohomology(F("ipg:2,2")) == {0: 1, -2: 8, -3: 4}


@pytest.mark.parametrize("spec", ["ipg:1,3", "rpg:0,5", "bncomp:4,2,2"])
def test_out_of_range(spec):
    with pytest.raises(OutOfPaperRange):
        hh_cohomology(F(spec))


def test_curve_hkr():
    assert curve_hh_cohomology(0) == {0: 1, -1: 3}
    assert curve_hh_cohomology(1) == {0: 1, -1: 2, -2: 1}
    assert curve_hh_cohomology(5) == {0: 1, -1: 5, -2: 12}


def test_chases():
    assert ipg_gluing_chase(2, 3).table == hh_cohomology(F("ipg:2,3"))
    assert rpg_cone_chase(2, 2).table == hh_cohomology(F("rpg:2,2"))
    for g in range(0, 10):
        assert augmented_gluing_chase(g).table == hh_cohomology(F(f"augmented:{g}"))


def test_zero_bimodule_chase_flags_overcount():
    c = hh_gluing_check(curve_hh_cohomology(2), curve_hh_cohomology(3), {}, {})
    assert c.table == curve_hh_cohomology(2) + curve_hh_cohomology(3)
    assert c.flags["hh0_overcount"]
    assert not ipg_gluing_chase(2, 2).flags["hh0_overcount"]


def test_chase_rejects_bad_ranks():
    with pytest.raises(ChaseFailed) as err:
        hh_gluing_check({0: 1}, {0: 1}, {0: 1}, {0: 2})
    assert err.value.degree == 0


def test_bn_modification_table():
    assert hh_bn_modification(10, 4, 4) == {0: 1, -2: 6}
    assert hh_bn_modification(10, 4, 0) == {0: 1, -2: 10, -3: 4}
    with pytest.raises(UsageError):
        hh_bn_modification(3, 4, 5)
    first, middle, last = bn_modification_terms(4, 2, 2)
    assert (first, middle, last) == (9, 24, 16)
    assert hh_bn_modification(middle, last, last) == {0: 1, -2: 8}


@pytest.mark.parametrize("g", range(1, 25))
def test_bn_terms_match_lattice_pairing(g):
    # chi(S e, e) = chi(e, S^2 e) is the alternating sum of the three terms
    lat = augmented_lattice(g)
    s = serre_matrix(lat)
    for h0 in range(1, g + 1):
        if g % h0 == 0:
            e = bn_class(g, h0).coords
            first, middle, last = bn_modification_terms(g, h0, g // h0)
            assert pair(lat, apply(s, e), e) == first - middle + last


@given(st.integers(2, 30), st.integers(2, 30))
def test_rpg_hh2_matches_augmented(a, b):
    assert hh_cohomology(F(f"rpg:{a},{b}"))[-2] == hh_cohomology(F(f"augmented:{a + b}"))[-2]


@given(st.integers(0, 30), st.integers(0, 30))
def test_homology_additivity(a, b):
    ipg = hh_homology(F(f"ipg:{a},{b}"))
    rpg = hh_homology(F(f"rpg:{a},{b}"))
    assert ipg == rpg + {0: 1}
    assert ipg == GradedDims({1: a, 0: 2, -1: a}) + {1: b, 0: 2, -1: b}
    aug = hh_homology(F(f"augmented:{a}"))
    assert sum((-1) ** k * v for k, v in aug.items()) == 3 - 2 * a

