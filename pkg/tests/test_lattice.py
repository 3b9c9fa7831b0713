import pytest
from hypothesis import given, strategies as st

from sodkit import intmat
from sodkit.errors import NonUnimodular, NotExceptional, UsageError
from sodkit.families import augmented_lattice, bn_class, exotic_class, ipg_lattice
from sodkit.lattice import (
    EulerLattice,
    Found,
    NotFoundUpToBound,
    RefutedByInvariant,
    class_predicates,
    is_isometry,
    isometry_search,
    mutate,
    orthogonal_complement,
    pair,
    serre_analysis,
    serre_matrix,
)

from .oracles import brute_isometry


def test_pair_examples():
    aug2 = augmented_lattice(2)
    assert pair(aug2, (1, 0, 0), (0, 1, 0)) == -1
    assert pair(ipg_lattice(2, 3), (1, 0, 0, 0), (0, 0, 1, 0)) == 1
    assert pair(aug2, (0, 0, 0), (4, -7, 2)) == 0


def test_pair_accepts_kclass_and_checks_rank():
    lat = augmented_lattice(3)
    assert pair(lat, lat.basis(0), lat.basis(1)) == -2
    with pytest.raises(UsageError):
        pair(lat, (1, 0), (0, 1, 0))
    with pytest.raises(UsageError):
        pair(lat, ipg_lattice(1, 1).basis(0), (1, 0, 0))


def test_lattice_validation():
    with pytest.raises(UsageError):
        EulerLattice(((1, 0),))
    with pytest.raises(UsageError):
        EulerLattice(((1,),), ("a", "b"))
    assert EulerLattice(((1, 0), (0, 1))).basis_labels == ("b1", "b2")
    assert EulerLattice(()).det == 1


def test_json_round_trip():
    lat = augmented_lattice(5)
    assert EulerLattice.from_json(lat.dumps()) == lat
    assert lat.to_json() == {"basis": ["[E]", "[O_C]", "[O_x]"], "gram": [[1, -4, 1], [0, -4, 1], [0, -1, 0]]}
    with pytest.raises(UsageError):
        EulerLattice.from_json({"basis": []})
    with pytest.raises(UsageError):
        EulerLattice.from_json({"gram": [[1.5]]})


def test_serre_augmented_examples():
    for g in (0, 2, 4, 7):
        an = serre_analysis(augmented_lattice(g))
        assert an.serre_matrix == ((g, g - 1, 1), (-1, -1, 0), (2 - 2 * g, 2 - 2 * g, -1))
        assert an.char_poly == (1, -(g - 2), g - 2, -1)
    assert serre_analysis(augmented_lattice(5)).unipotent
    assert not serre_analysis(augmented_lattice(6)).quasiunipotent


def test_serre_symmetric_is_identity():
    an = serre_analysis(EulerLattice(((2, 1), (1, 1))))
    assert an.serre_matrix == ((1, 0), (0, 1))
    assert an.unipotent


def test_serre_requires_unimodular():
    with pytest.raises(NonUnimodular):
        serre_matrix(EulerLattice(((2, 0), (0, 1))))


def test_mutation_examples():
    lat = ipg_lattice(2, 5)
    e = exotic_class(2, 5)
    assert mutate(lat, e, (0, 1, 0, 0), "right").coords == (0, 0, 0, 1)
    assert mutate(lat, e, e, "right").is_zero()
    aug = augmented_lattice(4)
    el = bn_class(4, 2)
    k = pair(aug, el, (0, 0, 1))
    assert mutate(aug, el, (0, 0, 1), "left").coords == tuple(
        x - k * y for x, y in zip((0, 0, 1), el.coords)
    )
    with pytest.raises(NotExceptional):
        mutate(aug, (0, 1, 0), (1, 0, 0))
    with pytest.raises(UsageError):
        mutate(aug, el, (1, 0, 0), "up")


def test_complement_examples():
    c = orthogonal_complement(EulerLattice(((1, 0), (0, 1))), (1, 0))
    assert c.lattice.rank == 1 and c.embedding in (((0,), (1,)), ((0,), (-1,)))
    c = orthogonal_complement(ipg_lattice(3, 2), exotic_class(3, 2))
    assert c.lattice.rank == 3
    with pytest.raises(UsageError):
        orthogonal_complement(ipg_lattice(1, 1), (0, 0, 0, 0))


def test_complement_saturated():
    # a non-primitive orthogonality condition must still give a saturated sublattice
    lat = EulerLattice(((1, 2, 0), (0, 1, 4), (0, 0, 1)))
    c = orthogonal_complement(lat, (1, 0, 0), "right")
    assert intmat.is_saturated(c.embedding)
    for col in zip(*c.embedding):
        assert pair(lat, (1, 0, 0), col) == 0


def test_class_predicates_examples():
    assert class_predicates(ipg_lattice(4, 1), (0, 1, 0, -1)).chi_self == 1
    p = class_predicates(augmented_lattice(3), (2, -1, -2))
    assert p.chi_self == 2 and p.numerically_2spherical and not p.numerically_exceptional
    assert class_predicates(augmented_lattice(3), (0, 0, 0)).chi_self == 0


def test_isometry_examples():
    from sodkit.families import rpg_lattice

    res = isometry_search(rpg_lattice(1, 1), augmented_lattice(2), 10)
    assert res == Found(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    res = isometry_search(rpg_lattice(2, 2), augmented_lattice(4), 10)
    assert isinstance(res, Found)
    assert is_isometry(res.matrix, rpg_lattice(2, 2).gram, augmented_lattice(4).gram)
    res = isometry_search(augmented_lattice(2), augmented_lattice(3), 10)
    assert isinstance(res, RefutedByInvariant) and res.name == "serre_char_poly"
    assert isometry_search(augmented_lattice(2), ipg_lattice(1, 1), 10).name == "rank"


def test_isometry_inconclusive_is_explicit():
    # isometric, but the only isometries need entries larger than the bound
    a = ((1, 0), (0, 1))
    p = ((2, 1), (1, 1))
    b = EulerLattice(a).transformed(p)
    res = isometry_search(EulerLattice(a), b, 0)
    assert isinstance(res, NotFoundUpToBound)
    assert "does not prove" in res.to_json()["note"]


def test_isometry_lexicographically_smallest_matches_brute_force():
    a = augmented_lattice(0)
    b = a.transformed(((1, 1, 0), (0, 1, 0), (0, 0, -1)))
    res = isometry_search(a, b, 1)
    assert isinstance(res, Found)
    want = brute_isometry(a.gram, b.gram, 1)
    assert res.matrix == want


# ---------------------------------------------------------------------------
# properties


def unimodular(n, steps):
    return st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.sampled_from((-1, 1))),
        min_size=0,
        max_size=steps,
    ).map(lambda ops: _apply_ops(n, ops))


def _apply_ops(n, ops):
    m = [list(r) for r in intmat.identity(n)]
    for i, j, c in ops:
        if i != j:
            for row in m:
                row[i] += c * row[j]
    return tuple(tuple(r) for r in m)


family_lattices = st.one_of(
    st.integers(0, 8).map(augmented_lattice),
    st.tuples(st.integers(0, 5), st.integers(0, 5)).map(lambda t: ipg_lattice(*t)),
)


@given(family_lattices)
def test_family_lattices_unimodular_and_serre_is_isometry(lat):
    assert lat.unimodular
    s = serre_matrix(lat)
    assert is_isometry(s, lat.gram, lat.gram)


@given(family_lattices, st.data())
def test_charpoly_invariant_under_base_change(lat, data):
    p = data.draw(unimodular(lat.rank, 6))
    assert serre_analysis(lat.transformed(p)).char_poly == serre_analysis(lat).char_poly


@given(st.integers(0, 6), st.data())
def test_search_finds_unimodular_conjugates(g, data):
    lat = augmented_lattice(g)
    p = data.draw(unimodular(3, 3))
    conj = lat.transformed(p)
    res = isometry_search(lat, conj, max(3, max(abs(x) for r in p for x in r)))
    assert isinstance(res, Found)
    assert is_isometry(res.matrix, lat.gram, conj.gram)


@given(st.tuples(st.integers(0, 5), st.integers(0, 5)), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_mutations_are_orthogonal(gs, v):
    lat = ipg_lattice(*gs)
    e = exotic_class(*gs)
    assert pair(lat, mutate(lat, e, v, "right"), e) == 0
    assert pair(lat, e, mutate(lat, e, v, "left")) == 0


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3), st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_complement_is_saturated_and_orthogonal(gram, e):
    if not any(e):
        return
    lat = EulerLattice(tuple(map(tuple, gram)))
    for side in ("left", "right"):
        c = orthogonal_complement(lat, e, side)
        assert intmat.is_saturated(c.embedding) if c.lattice.rank else True
        for col in zip(*c.embedding) if c.lattice.rank else ():
            val = pair(lat, col, e) if side == "left" else pair(lat, e, col)
            assert val == 0
