"""Regression catalogue: every closed-form matrix and table, recomputed from scratch.

Each item has a dotted ID (its first component is the group used by
``--filter``), a one-line statement of what it certifies, and a check that
returns a list of failure messages (empty on success).
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

from . import bnclassify, families, hochschild, intmat, lattice, reference
from .families import FamilySpec
from .homcalc import augmentation, category, models

Check = Callable[[], list]


@dataclass(frozen=True)
class Item:
    id: str
    certifies: str
    check: Check

    @property
    def group(self) -> str:
        return self.id.split(".", 1)[0]


@dataclass(frozen=True)
class ItemResult:
    id: str
    certifies: str
    passed: bool
    failures: tuple[str, ...]
    seconds: float

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "certifies": self.certifies,
            "passed": self.passed,
            "failures": list(self.failures),
        }


def _cap(fails: list, limit: int = 5) -> list:
    return fails if len(fails) <= limit else fails[:limit] + [f"... {len(fails) - limit} more"]


# ---------------------------------------------------------------------------
# lattices


def check_augmented_gram(gmax: int = 40) -> list:
    return [
        f"g={g}: {families.augmented_lattice(g).gram}"
        for g in range(gmax + 1)
        if families.augmented_lattice(g).gram != reference.augmented_gram(g)
    ]


def check_ipg_gram(gmax: int = 20) -> list:
    return [
        f"g1={a} g2={b}"
        for a in range(gmax + 1)
        for b in range(gmax + 1)
        if families.ipg_lattice(a, b).gram != reference.ipg_gram(a, b)
    ]


def check_rpg_gram(gmax: int = 20) -> list:
    return [
        f"g1={a} g2={b}"
        for a in range(gmax + 1)
        for b in range(gmax + 1)
        if families.rpg_lattice(a, b).gram != reference.rpg_gram(a, b)
    ]


def check_bn_complement_gram(gmax: int = 40) -> list:
    fails = []
    for g in range(1, gmax + 1):
        for h0 in range(1, g + 1):
            if g % h0 == 0:
                h1 = g // h0
                if families.bn_complement_lattice(g, h0, h1).gram != reference.bn_complement_gram(g, h0, h1):
                    fails.append(f"g={g} h0={h0}")
    return fails


def check_exotic_class(gmax: int = 20) -> list:
    fails = []
    for a in range(gmax + 1):
        for b in range(gmax + 1):
            lat = families.ipg_lattice(a, b)
            e = families.exotic_class(a, b)
            if lattice.pair(lat, e, e) != 1:
                fails.append(f"g1={a} g2={b}: chi(e, e) != 1")
            for v in families.rpg_basis(a, b):
                if lattice.pair(lat, v, e) != 0:
                    fails.append(f"g1={a} g2={b}: chi({v}, e) != 0")
    return fails


def check_twist_invariance(gmax: int = 6) -> list:
    fails = []
    for a in range(gmax + 1):
        for b in range(gmax + 1):
            plain = families.ipg_lattice(a, b).gram
            twisted = families.glue_lattices(
                families.curve_lattice(a, "1"), families.curve_lattice(b, "2"), families.twisted_ipg_pairing(a, b)
            ).gram
            # identity on the first curve, tensoring by O(-x2) on the second
            p = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, -1, 1))
            if not lattice.is_isometry(p, twisted, plain):
                fails.append(f"g1={a} g2={b}")
    return fails


# ---------------------------------------------------------------------------
# Serre operator


def check_augmented_serre(gmax: int = 40) -> list:
    fails = []
    for g in range(gmax + 1):
        lat = families.augmented_lattice(g)
        an = lattice.serre_analysis(lat)
        if an.serre_matrix != reference.augmented_serre(g):
            fails.append(f"g={g}: Serre matrix {an.serre_matrix}")
        if an.char_poly != reference.augmented_serre_charpoly(g):
            fails.append(f"g={g}: char poly {an.char_poly}")
        if an.quasiunipotent != (1 <= g <= 5):
            fails.append(f"g={g}: quasiunipotent = {an.quasiunipotent}")
        if an.unipotent != (g == 5):
            fails.append(f"g={g}: unipotent = {an.unipotent}")
    return fails


def check_serre_classes(gmax: int = 40) -> list:
    fails = []
    for g in range(gmax + 1):
        lat = families.augmented_lattice(g)
        s = lattice.serre_matrix(lat)
        s_inv = intmat.from_sympy(intmat.to_sympy(s).inv())
        e = (1, 0, 0)
        if lattice.apply(s_inv, e) != (1, -1, 0):
            fails.append(f"g={g}: S^-1[E] = {lattice.apply(s_inv, e)}")
        if lattice.apply(s, e) != (g, -1, -(2 * g - 2)):
            fails.append(f"g={g}: S[E] = {lattice.apply(s, e)}")
        # the same classes are those of the augmentations of O_C and omega
        if g >= 1 and families.bn_class(g, 1).coords != lattice.apply(s_inv, e):
            fails.append(f"g={g}: class of fa(O_C)")
        if g >= 1 and families.bn_class(g, g).coords != lattice.apply(s, e):
            fails.append(f"g={g}: class of fa(omega)")
    return fails


# ---------------------------------------------------------------------------
# homcalc


def check_exotic_exceptional(gmax: int = 8) -> list:
    fails = []
    for a in range(gmax + 1):
        for b in range(gmax + 1):
            for toggle in (True, False):
                m = models.ipg_local_model(a, b, toggle)
                t = models.exotic_triple(m)
                dims = category.gluing_hom(m, t, t)
                if dims != {0: 1}:
                    fails.append(f"g1={a} g2={b} mu.lam {'on' if toggle else 'off'}: {dict(dims)}")
    return fails


def check_ipg_claim() -> list:
    fails = []
    for a, b in ((0, 0), (2, 3), (4, 1)):
        m = models.ipg_local_model(a, b)
        gx = m.bimodule.value("O_x1", "O_x2")
        if gx.cohomology() != {0: 1, 1: 2}:
            fails.append(f"g1={a} g2={b}: G(O_x1, O_x2) = {dict(gx.cohomology())}")
        eps = models.epsilon(m)
        # lam o mu acting on eps from both sides
        r = m.bimodule.right_action("O_x1", "O_x1", "O_x2")[1]
        l = m.bimodule.left_action("O_x1", "O_x2", "O_x2")[1]
        img = [[sum(mat[i][j] * eps[j] for j in range(len(eps))) for i in range(len(mat))] for mat in (r, l)]
        if gx.rank_mod_boundaries(img) != 2:
            fails.append(f"g1={a} g2={b}: the two actions on eps are not independent in cohomology")
    return fails


def check_exotic_spherical() -> list:
    fails = []
    for d1 in range(1, 5):
        for d2 in range(1, 5):
            if models.exotic_ext_table(d1, d2) != {0: 1}:
                fails.append(f"d1={d1} d2={d2}")
    return fails


def check_bridge(gmax: int = 5) -> list:
    fails = []
    for a in range(gmax + 1):
        for b in range(gmax + 1):
            m = models.ipg_local_model(a, b)
            lat = families.ipg_lattice(a, b)
            for t in local_triples(m):
                for u in local_triples(m):
                    chi = category.gluing_hom(m, t, u).euler()
                    want = lattice.pair(lat, m.triple_class(t), m.triple_class(u))
                    if chi != want:
                        fails.append(f"g1={a} g2={b} {t} -> {u}: {chi} != {want}")
    return fails


def local_triples(m) -> list:
    out = [category.GlueTriple(x, None) for x in m.cat1.objects]
    out += [category.GlueTriple(None, y) for y in m.cat2.objects]
    out += [category.GlueTriple(x, y) for x in m.cat1.objects for y in m.cat2.objects]
    out.append(models.exotic_triple(m))
    return out


def check_bn_ext(gmax: int = 40) -> list:
    fails = []
    for g in range(1, gmax + 1):
        for h0 in range(1, g + 1):
            if g % h0 == 0:
                a = augmentation.AugmentationData.bnp_extremal(g, h0, g // h0)
                if augmentation.bn_ext_table(a) != {0: 1}:
                    fails.append(f"g={g} h0={h0}")
    hyper = augmentation.bn_ext_table(augmentation.AugmentationData(3, 2, 2, 3, 2))
    if hyper != {0: 1, 2: 1}:
        fails.append(f"hyperelliptic genus 3: {dict(hyper)}")
    cross = augmentation.bn_cross_ext_table(0, 3, 2, 2, 2, 3)
    if cross != {2: 1}:
        fails.append(f"trigonal genus 4 pair: {dict(cross)}")
    return fails


def check_serre_pairs() -> list:
    fails = []
    l1 = augmentation.augmented_line_bundle(4, 3, 2)
    if not augmentation.serre_pair_check(l1, l1):
        fails.append("trigonal genus 4 pair")
    h = augmentation.augmented_line_bundle(3, 2, 2)
    if not augmentation.serre_pair_check(h, h):
        fails.append("hyperelliptic genus 3")
    for g in range(0, 41):
        img = augmentation.serre_on_augmentation(g, {0: 1}, families.curvek.CurveClass(0, 0), {}, 0)
        if img.v_bar != ({-2: g} if g else {}) or img.f_bar != families.curvek.canonical(g):
            fails.append(f"g={g}: S(E)")
    return fails


# ---------------------------------------------------------------------------
# Hochschild


def check_hh_homology() -> list:
    fails = []
    for g in range(0, 21):
        if hochschild.hh_homology(FamilySpec("augmented", (g,))) != {1: g, 0: 3, -1: g}:
            fails.append(f"augmented g={g}")
    for a in range(0, 11):
        for b in range(0, 11):
            s = a + b
            if hochschild.hh_homology(FamilySpec("ipg", (a, b))) != {1: s, 0: 4, -1: s}:
                fails.append(f"ipg {a},{b}")
            if hochschild.hh_homology(FamilySpec("rpg", (a, b))) != {1: s, 0: 3, -1: s}:
                fails.append(f"rpg {a},{b}")
    return fails


def check_hh_cohomology() -> list:
    fails = []
    if hochschild.hh_cohomology(FamilySpec("augmented", (0,))) != {0: 1, -1: 3}:
        fails.append("augmented g=0")
    if hochschild.hh_cohomology(FamilySpec("augmented", (1,))) != {0: 1, -1: 1, -2: 1}:
        fails.append("augmented g=1")
    for g in range(2, 41):
        if hochschild.hh_cohomology(FamilySpec("augmented", (g,))) != {0: 1, -2: 3 * g - 3}:
            fails.append(f"augmented g={g}")
    for a in range(2, 11):
        for b in range(2, 11):
            if hochschild.hh_cohomology(FamilySpec("ipg", (a, b))) != {0: 1, -2: 3 * (a + b) - 4, -3: a * b}:
                fails.append(f"ipg {a},{b}")
            want = {0: 1, -2: 3 * (a + b) - 3, -3: a * b, -4: a * b}
            if hochschild.hh_cohomology(FamilySpec("rpg", (a, b))) != want:
                fails.append(f"rpg {a},{b}")
    return fails


def check_hh_chases() -> list:
    fails = []
    for g in range(0, 41):
        if hochschild.augmented_gluing_chase(g).table != hochschild.hh_cohomology(FamilySpec("augmented", (g,))):
            fails.append(f"augmented chase g={g}")
    for a in range(2, 11):
        for b in range(2, 11):
            if hochschild.ipg_gluing_chase(a, b).table != hochschild.hh_cohomology(FamilySpec("ipg", (a, b))):
                fails.append(f"ipg chase {a},{b}")
            if hochschild.rpg_cone_chase(a, b).table != hochschild.hh_cohomology(FamilySpec("rpg", (a, b))):
                fails.append(f"rpg chase {a},{b}")
    return fails


# ---------------------------------------------------------------------------
# BN classification and isometries


def check_bn_verdicts(gmax: int = 40) -> list:
    fails = []
    for g in (9, 10):
        bad = {(3, 3)} if g == 9 else {(2, 5), (5, 2)}
        for e in bnclassify.classify_bn(g):
            if (e.h0, e.h1) in bad and e.curve_equivalent:
                fails.append(f"g={g} ({e.h0}, {e.h1}) reported curve-equivalent")
    for g in range(1, gmax + 1):
        for e in bnclassify.classify_bn(g):
            expected = e.h0 == 1 or e.h1 == 1
            if e.curve_equivalent != expected:
                fails.append(f"g={g} ({e.h0}, {e.h1}): curve_equivalent = {e.curve_equivalent}")
    return fails


def _expect_found(l1, l2, bound: int, what: str) -> list:
    res = lattice.isometry_search(l1, l2, bound)
    if not isinstance(res, lattice.Found):
        return [f"{what}: {type(res).__name__}"]
    if not lattice.is_isometry(res.matrix, l1.gram, l2.gram):
        return [f"{what}: returned matrix is not an isometry"]
    return []


def check_rpg_isometries() -> list:
    fails = []
    for a in range(5):
        for b in range(5):
            fails += _expect_found(families.rpg_lattice(a, b), families.augmented_lattice(a + b), 10, f"rpg {a},{b}")
    for g in range(7):
        fails += _expect_found(families.rpg_lattice(0, g), families.augmented_lattice(g), 10, f"rpg 0,{g}")
    return fails


def check_quiver_isometry() -> list:
    return _expect_found(
        families.augmented_lattice(0), lattice.EulerLattice(reference.quiver_gram((1, 2))), 10, "quiver"
    )


def check_refutation() -> list:
    res = lattice.isometry_search(families.augmented_lattice(2), families.augmented_lattice(3), 10)
    if not isinstance(res, lattice.RefutedByInvariant) or res.name != "serre_char_poly":
        return [f"augmented 2 vs 3: {res}"]
    return []


def check_swap_isometries(gmax: int = 3) -> list:
    fails = []
    for a in range(gmax + 1):
        for b in range(gmax + 1):
            l1 = families.ipg_lattice(a, b)
            pairing = families.curvek.gluing_pairing(a, b, families.curvek.IDEAL_OF_POINT)
            transposed = tuple(zip(*pairing))
            l2 = families.glue_lattices(families.curve_lattice(b, "2"), families.curve_lattice(a, "1"), transposed)
            fails += _expect_found(l1, l2, 10, f"swap {a},{b}")
    return fails


ITEMS: tuple[Item, ...] = (
    Item("lattice.augmented.gram", "Euler form of the augmented curve, g = 0..40", check_augmented_gram),
    Item("lattice.ipg.gram", "Euler form of the ideal point gluing, g1, g2 = 0..20", check_ipg_gram),
    Item("lattice.rpg.gram", "complement of the exotic class in the standard basis, g1, g2 = 0..20", check_rpg_gram),
    Item("lattice.bncomp.gram", "Euler form of BN-modifications, g = 1..40", check_bn_complement_gram),
    Item("lattice.exotic.class", "exotic class is exceptional and left orthogonal to the complement basis", check_exotic_class),
    Item("lattice.twist", "twisting the gluing object is an isometry of glued lattices", check_twist_invariance),
    Item("serre.augmented.matrix", "Serre matrix, char poly and (quasi)unipotency of augmented curves", check_augmented_serre),
    Item("serre.augmented.classes", "S^-1[E] = [E] - [O_C] and S[E] = g[E] - [O_C] - (2g-2)[O_x]", check_serre_classes),
    Item("serre.augmentation.pairs", "Serre functor swaps augmentations of paired bundles", check_serre_pairs),
    Item("homcalc.ipg.claim", "G(O_x1, O_x2) = k + k[-1]^2 with independent actions of lam o mu", check_ipg_claim),
    Item("homcalc.exotic.exceptional", "Ext(E, E) = k for the exotic object, both mu o lam settings", check_exotic_exceptional),
    Item("homcalc.exotic.spherical", "exotic object stays exceptional for spherical degrees 1..4", check_exotic_spherical),
    Item("homcalc.bridge", "Euler characteristics of Hom spaces equal lattice pairings, g1, g2 <= 5", check_bridge),
    Item("homcalc.bn.ext", "BN-exceptional, hyperelliptic 2-spherical and trigonal spherical pair tables", check_bn_ext),
    Item("hochschild.homology", "Hochschild homology of all families", check_hh_homology),
    Item("hochschild.cohomology", "Hochschild cohomology closed forms", check_hh_cohomology),
    Item("hochschild.chases", "gluing and complement chases reproduce the closed forms", check_hh_chases),
    Item("bnclassify.verdicts", "BN-modifications at g = 9, 10 are not curves; O_C and omega are", check_bn_verdicts),
    Item("isometry.rpg", "reduced ideal point gluing lattices are isometric to augmented ones", check_rpg_isometries),
    Item("isometry.quiver", "genus 0 augmented lattice is the 3-vertex quiver lattice", check_quiver_isometry),
    Item("isometry.refute", "augmented genus 2 and 3 separated by the Serre char poly", check_refutation),
    Item("isometry.swap", "gluing in the opposite order with transposed pairing is isometric", check_swap_isometries),
)


def select(filter_prefix: str | None = None) -> list[Item]:
    if not filter_prefix:
        return list(ITEMS)
    return [it for it in ITEMS if it.id == filter_prefix or it.id.startswith(filter_prefix + ".") or it.group == filter_prefix]


def run_item(item: Item) -> ItemResult:
    t0 = time.perf_counter()
    try:
        fails = item.check()
    except Exception as exc:  # a crash is a failure of that item, not of the suite
        fails = [f"{type(exc).__name__}: {exc}"]
    return ItemResult(item.id, item.certifies, not fails, tuple(_cap(fails)), time.perf_counter() - t0)


def run_all(filter_prefix: str | None = None, workers: int = 1) -> list[ItemResult]:
    items = sorted(select(filter_prefix), key=lambda it: it.id)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(run_item, items))
    return [run_item(it) for it in items]
