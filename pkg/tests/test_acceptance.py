"""Acceptance criteria 1-13, exact arithmetic throughout.

Each test records its outcome in ``ACCEPTANCE``; conftest prints one
PASS/FAIL line per criterion at the end of the run.
"""
import functools
import random

from sodkit import curvek
from sodkit.bnclassify import classify_bn
from sodkit.families import (
    augmented_lattice,
    bn_class,
    curve_lattice,
    exotic_class,
    glue_lattices,
    ipg_lattice,
    rpg_basis,
    rpg_lattice,
    twisted_ipg_pairing,
)
from sodkit.families import FamilySpec
from sodkit.hochschild import hh_cohomology, hh_homology, ipg_gluing_chase, rpg_cone_chase, augmented_gluing_chase
from sodkit.homcalc import (
    AugmentationData,
    bn_cross_ext_table,
    bn_ext_table,
    exotic_triple,
    gluing_hom,
    ipg_local_model,
)
from sodkit.lattice import (
    EulerLattice,
    Found,
    RefutedByInvariant,
    apply,
    is_isometry,
    isometry_search,
    pair,
    serre_analysis,
)
from sodkit.verify import local_triples

from .acceptance_log import ACCEPTANCE
from .oracles import augmentation_les, random_admissible, random_rank_matrix


def criterion(n, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            try:
                fn()
            except BaseException:
                ACCEPTANCE[n] = (False, title)
                print(f"criterion {n}: FAIL  {title}")
                raise
            ACCEPTANCE[n] = (True, title)
            print(f"criterion {n}: PASS  {title}")

        return run

    return wrap


def aug_matrix(g):
    return ((1, 1 - g, 1), (0, 1 - g, 1), (0, -1, 0))


def ipg_matrix(a, b):
    return (
        (1 - a, 1, a * b - a - b, 1 - a),
        (-1, 0, b - 1, -1),
        (0, 0, 1 - b, 1),
        (0, 0, -1, 0),
    )


def rpg_matrix(a, b):
    return ((1, -1, 1), (0, 1 - a - b, 1), (0, -1, 0))


def found(l1, l2, bound=10):
    res = isometry_search(l1, l2, bound)
    return isinstance(res, Found) and is_isometry(res.matrix, l1.gram, l2.gram)


@criterion(1, "augmented Gram, g = 0..40")
def test_criterion_01():
    for g in range(41):
        assert augmented_lattice(g).gram == aug_matrix(g), g


@criterion(2, "ideal point gluing Gram, g1, g2 = 0..20")
def test_criterion_02():
    for a in range(21):
        for b in range(21):
            assert ipg_lattice(a, b).gram == ipg_matrix(a, b), (a, b)


@criterion(3, "reduced ideal point gluing by complement and rebase, g1, g2 = 0..20")
def test_criterion_03():
    for a in range(21):
        for b in range(21):
            assert rpg_lattice(a, b).gram == rpg_matrix(a, b), (a, b)


@criterion(4, "Serre matrix, char poly and (quasi)unipotency of augmented(g), g = 0..40")
def test_criterion_04():
    for g in range(41):
        an = serre_analysis(augmented_lattice(g))
        assert an.serre_matrix == ((g, g - 1, 1), (-1, -1, 0), (2 - 2 * g, 2 - 2 * g, -1)), g
        # (t - 1)(t^2 - (g - 3) t + 1)
        assert an.char_poly == (1, -(g - 3) - 1, (g - 3) + 1, -1), g
        assert an.quasiunipotent == (1 <= g <= 5), g
        assert an.unipotent == (g == 5), g


@criterion(5, "exotic class is exceptional and left orthogonal to the complement basis")
def test_criterion_05():
    for a in range(21):
        for b in range(21):
            lat, e = ipg_lattice(a, b), exotic_class(a, b)
            assert pair(lat, e, e) == 1
            for v in rpg_basis(a, b):
                assert pair(lat, v, e) == 0, (a, b, v)


@criterion(6, "Ext(E, E) = {0: 1} in the local model, g1, g2 = 0..8, both mu o lam settings")
def test_criterion_06():
    for a in range(9):
        for b in range(9):
            for toggle in (True, False):
                m = ipg_local_model(a, b, toggle)
                t = exotic_triple(m)
                assert gluing_hom(m, t, t) == {0: 1}, (a, b, toggle)


@criterion(7, "BN-exceptional, hyperelliptic, trigonal tables and the small-field oracle")
def test_criterion_07():
    for g in range(1, 41):
        for h0 in range(1, g + 1):
            if g % h0 == 0:
                assert bn_ext_table(AugmentationData.bnp_extremal(g, h0, g // h0)) == {0: 1}, (g, h0)
    assert bn_ext_table(AugmentationData(3, 2, 2, 3, 2)) == {0: 1, 2: 1}
    assert bn_cross_ext_table(0, 3, 2, 2, 2, 3) == {2: 1}
    rng = random.Random(7)
    for _ in range(200):
        g, h0, h1, d, p = random_admissible(rng)
        dims, realized = augmentation_les(g, h0, h1, random_rank_matrix(rng, h0 * h1, g, p))
        assert bn_ext_table(AugmentationData(g, h0, h1, realized, d)) == dims


@criterion(8, "Hochschild homology and cohomology tables and their chases")
def test_criterion_08():
    for g in range(41):
        assert hh_homology(FamilySpec("augmented", (g,))) == {1: g, 0: 3, -1: g}
    assert hh_cohomology(FamilySpec("augmented", (0,))) == {0: 1, -1: 3}
    assert hh_cohomology(FamilySpec("augmented", (1,))) == {0: 1, -1: 1, -2: 1}
    for g in range(2, 41):
        assert hh_cohomology(FamilySpec("augmented", (g,))) == {0: 1, -2: 3 * g - 3}
        assert augmented_gluing_chase(g).table == {0: 1, -2: 3 * g - 3}
    for a in range(21):
        for b in range(21):
            s = a + b
            assert hh_homology(FamilySpec("ipg", (a, b))) == {1: s, 0: 4, -1: s}
            assert hh_homology(FamilySpec("rpg", (a, b))) == {1: s, 0: 3, -1: s}
            if min(a, b) >= 2:
                ipg = {0: 1, -2: 3 * s - 4, -3: a * b}
                rpg = {0: 1, -2: 3 * s - 3, -3: a * b, -4: a * b}
                assert hh_cohomology(FamilySpec("ipg", (a, b))) == ipg
                assert hh_cohomology(FamilySpec("rpg", (a, b))) == rpg
                # Ext(I, I) = {0: 1, -1: g1 + g2 + 2, -2: g1 g2} drives the gluing chase,
                # Ext(S(E), E) = {-3: 1, -5: g1 g2} the complement chase
                assert ipg_gluing_chase(a, b).table == ipg
                assert rpg_cone_chase(a, b, ipg).table == rpg


@criterion(9, "BN-modification verdicts at g = 9, 10 and curve-like trivial factorizations")
def test_criterion_09():
    g9 = {(e.h0, e.h1): e.curve_equivalent for e in classify_bn(9)}
    assert g9[(3, 3)] is False
    g10 = {(e.h0, e.h1): e.curve_equivalent for e in classify_bn(10)}
    assert g10[(2, 5)] is False and g10[(5, 2)] is False
    for g in range(1, 41):
        v = {(e.h0, e.h1): e.curve_equivalent for e in classify_bn(g)}
        assert v[(1, g)] and v[(g, 1)], g


@criterion(10, "isometries: rpg vs augmented, quiver lattice, char-poly refutation")
def test_criterion_10():
    for a in range(5):
        for b in range(5):
            assert found(rpg_lattice(a, b), augmented_lattice(a + b)), (a, b)
    for g in range(7):
        assert found(rpg_lattice(0, g), augmented_lattice(g)), g
    # projectives of 1 -> 2 => 3 (one arrow, then two): chi(P_i, P_j) counts paths
    quiver = EulerLattice(((1, 1, 2), (0, 1, 2), (0, 0, 1)))
    assert found(augmented_lattice(0), quiver)
    res = isometry_search(augmented_lattice(2), augmented_lattice(3), 10)
    assert isinstance(res, RefutedByInvariant) and res.name == "serre_char_poly"


@criterion(11, "numerical Serre action on [E], g = 0..40")
def test_criterion_11():
    for g in range(41):
        an = serre_analysis(augmented_lattice(g))
        s = an.serre_matrix
        assert apply(s, (1, 0, 0)) == (g, -1, -(2 * g - 2)), g
        # S^-1[E] = [E] - [O_C]  <=>  S([E] - [O_C]) = [E]
        assert apply(s, (1, -1, 0)) == (1, 0, 0), g
        if g:
            assert bn_class(g, 1).coords == (1, -1, 0)
            assert bn_class(g, g).coords == (g, -1, -(2 * g - 2))


@criterion(12, "Euler bridge in the local model, g1, g2 <= 5")
def test_criterion_12():
    for a in range(6):
        for b in range(6):
            m = ipg_local_model(a, b)
            lat = ipg_lattice(a, b)
            ts = local_triples(m)
            for t in ts:
                for u in ts:
                    assert gluing_hom(m, t, u).euler() == pair(lat, m.triple_class(t), m.triple_class(u))


@criterion(13, "twist and swap invariance of glued lattices")
def test_criterion_13():
    twist = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, -1, 1))
    for a in range(4):
        for b in range(4):
            twisted = glue_lattices(curve_lattice(a, "1"), curve_lattice(b, "2"), twisted_ipg_pairing(a, b))
            assert twisted.gram != ipg_lattice(a, b).gram
            assert is_isometry(twist, twisted.gram, ipg_lattice(a, b).gram)
            pairing = curvek.gluing_pairing(a, b, curvek.IDEAL_OF_POINT)
            swapped = glue_lattices(curve_lattice(b, "2"), curve_lattice(a, "1"), tuple(zip(*pairing)))
            assert found(ipg_lattice(a, b), swapped), (a, b)
    for g in range(4):
        # the augmented curve swapped: curve first, point second
        aug = augmented_lattice(g)
        swapped = glue_lattices(curve_lattice(g), EulerLattice(((1,),)), tuple(zip(*curvek.augmentation_pairing(g))))
        assert found(aug, swapped), g
