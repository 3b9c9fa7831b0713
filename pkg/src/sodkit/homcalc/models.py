"""Local formal models of gluings whose bimodule is a cone of a rank-one tensor map.

Each factor has two objects L, K with

    Hom(L, L) = k.id + (k.eta_1 + ... + k.eta_e)[-d]
    Hom(L, K) = k.lam             (degree 0)
    Hom(K, L) = k.mu[-d]
    Hom(K, K) = k.id + k.sigma[-d],    lam o mu = sigma,

so K is d-spherical and L is adherent to it.  mu o lam is either eta_1 or 0;
every other product of non-identity generators vanishes.  The bimodule is

    G(F1, F2) = Cone( (Hom(F1, L1) (x) Hom(L2, F2))[-d2] -> Hom(F1, K1) (x) Hom(K2, F2) ),
    a (x) b -> (lam1 o a) (x) (b o mu2).

For curves d = 1, L = O_C, K = O_x and e = g.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..errors import NotAdherent, UsageError
from .category import (
    FiniteGradedCategory,
    GlueTriple,
    GluedModel,
    GradedBimodule,
    build_category,
    gluing_hom,
)
from .graded import GradedComplex, GradedDims


@lru_cache(maxsize=256)
def spherical_category(
    d: int, extra: int, mu_lambda_nonzero: bool = True, labels: tuple[str, str] = ("L", "K")
) -> FiniteGradedCategory:
    if d < 1:
        raise UsageError("spherical degree must be positive")
    if extra < 0:
        raise UsageError("number of extra endomorphisms must be nonnegative")
    el, k = labels
    homs = {
        (el, el): (("id", 0),) + tuple((f"eta{i + 1}", d) for i in range(extra)),
        (el, k): (("lam", 0),),
        (k, el): (("mu", d),),
        (k, k): (("id", 0), ("sigma", d)),
    }
    products = {(k, el, k): {(0, 0): {1: 1}}}  # lam o mu = sigma
    if mu_lambda_nonzero and extra:
        products[(el, k, el)] = {(0, 0): {1: 1}}  # mu o lam = eta_1
    return build_category((el, k), homs, products, {el: 0, k: 0})


def _index(basis_pairs):
    return {p: i for i, p in enumerate(basis_pairs)}


def cone_bimodule(
    cat1: FiniteGradedCategory,
    cat2: FiniteGradedCategory,
    l1: str,
    k1: str,
    l2: str,
    k2: str,
) -> GradedBimodule:
    """The cone bimodule above, with lam1 = the basis of Hom(L1, K1), mu2 = that of Hom(K2, L2)."""
    (_, lam_deg), = cat1.hom(l1, k1)
    (_, d2), = cat2.hom(k2, l2)
    if lam_deg != 0:
        raise UsageError("lam must have degree 0")

    layouts = {}
    values = {}
    for f1 in cat1.objects:
        for f2 in cat2.objects:
            a, b = cat1.hom(f1, l1), cat2.hom(l2, f2)
            t1, t2 = cat1.hom(f1, k1), cat2.hom(k2, f2)
            basis = [("A", i, j) for i in range(len(a)) for j in range(len(b))]
            basis += [("T", i, j) for i in range(len(t1)) for j in range(len(t2))]
            degrees, names = [], []
            for part, i, j in basis:
                if part == "A":
                    degrees.append(a[i][1] + b[j][1] + d2 - 1)
                    names.append(f"{a[i][0]}*{b[j][0]}")
                else:
                    degrees.append(t1[i][1] + t2[j][1])
                    names.append(f"{t1[i][0]}*{t2[j][0]}")
            idx = _index(basis)
            n = len(basis)
            diff = [[Fraction(0)] * n for _ in range(n)]
            for i in range(len(a)):
                lam_a = cat1.compose(f1, l1, k1, [1], cat1.unit(f1, l1, i))
                for j in range(len(b)):
                    b_mu = cat2.compose(k2, l2, f2, cat2.unit(l2, f2, j), [1])
                    for p, x in enumerate(lam_a):
                        for q, y in enumerate(b_mu):
                            if x and y:
                                diff[idx[("T", p, q)]][idx[("A", i, j)]] += x * y
            layouts[(f1, f2)] = idx
            values[(f1, f2)] = GradedComplex(
                tuple(degrees), tuple(tuple(r) for r in diff), tuple(names)
            )

    right = {}
    for f1 in cat1.objects:
        for f1p in cat1.objects:
            fs = cat1.hom(f1, f1p)
            if not fs:
                continue
            for f2 in cat2.objects:
                src, dst = layouts[(f1p, f2)], layouts[(f1, f2)]
                b, t2 = cat2.hom(l2, f2), cat2.hom(k2, f2)
                mats = []
                for kf, (_, fdeg) in enumerate(fs):
                    m = [[Fraction(0)] * len(src) for _ in range(len(dst))]
                    for (part, i, j), col in src.items():
                        if part == "A":
                            sign = (-1) ** (fdeg * (b[j][1] + d2))
                            img = cat1.compose(f1, f1p, l1, cat1.unit(f1p, l1, i), cat1.unit(f1, f1p, kf))
                        else:
                            sign = (-1) ** (fdeg * t2[j][1])
                            img = cat1.compose(f1, f1p, k1, cat1.unit(f1p, k1, i), cat1.unit(f1, f1p, kf))
                        for p, x in enumerate(img):
                            if x:
                                m[dst[(part, p, j)]][col] += sign * x
                    mats.append(tuple(tuple(r) for r in m))
                right[(f1, f1p, f2)] = tuple(mats)

    left = {}
    for f2 in cat2.objects:
        for f2p in cat2.objects:
            fs = cat2.hom(f2, f2p)
            if not fs:
                continue
            for f1 in cat1.objects:
                src, dst = layouts[(f1, f2)], layouts[(f1, f2p)]
                a, t1 = cat1.hom(f1, l1), cat1.hom(f1, k1)
                mats = []
                for kf, (_, fdeg) in enumerate(fs):
                    m = [[Fraction(0)] * len(src) for _ in range(len(dst))]
                    for (part, i, j), col in src.items():
                        if part == "A":
                            sign = (-1) ** (fdeg * a[i][1])
                            img = cat2.compose(l2, f2, f2p, cat2.unit(f2, f2p, kf), cat2.unit(l2, f2, j))
                        else:
                            sign = (-1) ** (fdeg * t1[i][1])
                            img = cat2.compose(k2, f2, f2p, cat2.unit(f2, f2p, kf), cat2.unit(k2, f2, j))
                        for q, y in enumerate(img):
                            if y:
                                m[dst[(part, i, q)]][col] += sign * y
                    mats.append(tuple(tuple(r) for r in m))
                left[(f1, f2, f2p)] = tuple(mats)

    return GradedBimodule(values, right, left)


def spherical_adherent_model(
    d1: int,
    d2: int,
    extra1: int = 0,
    extra2: int = 0,
    mu_lambda_nonzero: bool = True,
    labels1: tuple[str, str] = ("L1", "K1"),
    labels2: tuple[str, str] = ("L2", "K2"),
    classes: dict | None = None,
) -> GluedModel:
    cat1 = spherical_category(d1, extra1, mu_lambda_nonzero, labels1)
    cat2 = spherical_category(d2, extra2, mu_lambda_nonzero, labels2)
    bim = cone_bimodule(cat1, cat2, *labels1, *labels2)
    return GluedModel(cat1, cat2, bim, classes or {})


IPG_LABELS1 = ("O_C1", "O_x1")
IPG_LABELS2 = ("O_C2", "O_x2")


@lru_cache(maxsize=256)
def ipg_local_model(g1: int, g2: int, mu_lambda_nonzero: bool = True) -> GluedModel:
    """O_C and O_x on two curves, glued along the ideal sheaf of (x1, x2).

    Models are validated once and cached; treat them as read-only.

    Classes are coordinates in the ideal point gluing lattice with basis
    [O_C1], [O_x1], [O_C2], [O_x2].
    """
    if g1 < 0 or g2 < 0:
        raise UsageError("genus must be nonnegative")
    classes = {
        "O_C1": (1, 0, 0, 0),
        "O_x1": (0, 1, 0, 0),
        "O_C2": (0, 0, 1, 0),
        "O_x2": (0, 0, 0, 1),
    }
    return spherical_adherent_model(1, 1, g1, g2, mu_lambda_nonzero, IPG_LABELS1, IPG_LABELS2, classes)


def epsilon(model: GluedModel, k1: str = "O_x1", k2: str = "O_x2") -> tuple[Fraction, ...]:
    """id (x) id in G(K1, K2)."""
    g = model.bimodule.value(k1, k2)
    i1, i2 = model.cat1.identities[k1], model.cat2.identities[k2]
    target = f"{model.cat1.hom(k1, k1)[i1][0]}*{model.cat2.hom(k2, k2)[i2][0]}"
    vec = [Fraction(0)] * g.size
    # the T-part comes after the A-part, so the last match is the T basis vector
    pos = max(i for i, n in enumerate(g.names) if n == target and g.degrees[i] == 0)
    vec[pos] = Fraction(1)
    return tuple(vec)


def exotic_triple(model: GluedModel, k1: str = "O_x1", k2: str = "O_x2") -> GlueTriple:
    return GlueTriple(k1, k2, epsilon(model, k1, k2))


def exotic_ext_table(d1: int, d2: int, adherence1: int = 1, adherence2: int = 1) -> GradedDims:
    """Ext of (K1, K2, eps) against itself when K_i is d_i-spherical and adherent to L_i."""
    if adherence1 != 1 or adherence2 != 1:
        raise NotAdherent(
            f"adherence dimensions must both be 1, got {adherence1} and {adherence2}"
        )
    model = spherical_adherent_model(d1, d2)
    t = exotic_triple(model, "K1", "K2")
    return gluing_hom(model, t, t)
