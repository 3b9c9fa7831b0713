"""Integral binary quadratic forms up to GL2(Z), and the BN-modification verdicts.

A form (p, q, r) is p x^2 + q xy + r y^2.  The symmetrized Euler form of a
lattice is v -> chi(v, v).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .errors import UsageError
from .families import bn_complement_lattice


@dataclass(frozen=True)
class BinQuadForm:
    p: int
    q: int
    r: int

    @property
    def disc(self) -> int:
        return self.q * self.q - 4 * self.p * self.r

    @property
    def content(self) -> int:
        return gcd(gcd(self.p, self.q), self.r)

    def is_zero(self) -> bool:
        return self.p == self.q == self.r == 0

    def __call__(self, x: int, y: int) -> int:
        return self.p * x * x + self.q * x * y + self.r * y * y

    def transform(self, a: int, b: int, c: int, d: int) -> "BinQuadForm":
        """f(a x + b y, c x + d y)."""
        return BinQuadForm(
            self(a, c),
            2 * self.p * a * b + self.q * (a * d + b * c) + 2 * self.r * c * d,
            self(b, d),
        )

    def negated(self) -> "BinQuadForm":
        return BinQuadForm(-self.p, -self.q, -self.r)

    def improper(self) -> "BinQuadForm":
        """Image under (x, y) -> (x, -y), which has determinant -1."""
        return BinQuadForm(self.p, -self.q, self.r)

    def __str__(self) -> str:
        terms = []
        for c, mono in ((self.p, "x^2"), (self.q, "xy"), (self.r, "y^2")):
            if c:
                terms.append(f"{c}{mono}" if c not in (1, -1) else ("-" if c < 0 else "") + mono)
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "r": self.r, "disc": self.disc}

    @classmethod
    def from_gram(cls, gram) -> "BinQuadForm":
        (a, b), (c, d) = gram
        return cls(a, b + c, d)


# ---------------------------------------------------------------------------
# definite forms: Gauss reduction


def _reduce_definite(f: BinQuadForm) -> BinQuadForm:
    """Unique reduced representative of a positive definite form under SL2(Z)."""
    a, b, c = f.p, f.q, f.r
    while True:
        # translate so that -a < b <= a
        if not -a < b <= a:
            k = (a - b) // (2 * a)
            b, c = b + 2 * k * a, a * k * k + b * k + c
            continue
        if a > c:
            a, b, c = c, -b, a
            continue
        break
    if a == c and b < 0:
        b = -b
    if b == -a:
        b = a
    return BinQuadForm(a, b, c)


# ---------------------------------------------------------------------------
# indefinite forms with non-square discriminant: cycles of reduced forms


def _lt_sqrt(x: int, disc: int) -> bool:
    """x < sqrt(disc) for non-square disc."""
    return x < 0 or x * x < disc


def _normalize_indef(a: int, b: int, c: int, disc: int) -> tuple[int, int, int]:
    s = isqrt(disc)
    m = 2 * abs(a)
    if _lt_sqrt(abs(a), disc):
        # b in (sqrt(D) - 2|a|, sqrt(D)), i.e. [s - 2|a| + 1, s]
        b2 = s - ((s - b) % m)
    else:
        low = -abs(a) + 1
        b2 = (b - low) % m + low
    c2 = (b2 * b2 - disc) // (4 * a)
    return a, b2, c2


def _is_reduced_indef(a: int, b: int, disc: int) -> bool:
    s = isqrt(disc)
    return 0 < b <= s and 2 * abs(a) + b >= s + 1 and 2 * abs(a) - b <= s


def _rho(a: int, b: int, c: int, disc: int) -> tuple[int, int, int]:
    return _normalize_indef(c, -b, a, disc)


def _indefinite_cycle(f: BinQuadForm) -> frozenset:
    disc = f.disc
    a, b, c = _normalize_indef(f.p, f.q, f.r, disc) if f.p else _rho(f.p, f.q, f.r, disc)
    for _ in range(10_000):
        if _is_reduced_indef(a, b, disc):
            break
        a, b, c = _rho(a, b, c, disc)
    else:  # pragma: no cover - reduction always terminates quickly
        raise RuntimeError("indefinite reduction did not terminate")
    start = (a, b, c)
    cycle = {start}
    cur = _rho(a, b, c, disc)
    while cur != start:
        cycle.add(cur)
        cur = _rho(*cur, disc)
    return frozenset(cycle)


# ---------------------------------------------------------------------------
# square discriminant: the form splits into two linear factors


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), (1 if a >= 0 else -1), 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def _square_invariant(f: BinQuadForm) -> frozenset:
    """Residues r mod n of the forms (0, n, r) reachable from each isotropic line."""
    n = isqrt(f.disc)
    zeros = []
    if f.p == 0:
        zeros.append((1, 0))
        g = gcd(f.r, f.q)
        zeros.append((f.r // g, -f.q // g))
    else:
        for sign in (1, -1):
            x, y = -f.q + sign * n, 2 * f.p
            g = gcd(x, y)
            zeros.append((x // g, y // g))
    out = set()
    for a, c in zeros:
        _, u, v = _ext_gcd(a, c)
        # a u + c v = 1, so the columns (a, c), (-v, u) form a basis
        t = f.transform(a, -v, c, u)
        assert t.p == 0 and abs(t.q) == n
        out.add(t.r % n)
    return frozenset(out)


def form_equivalent(f1: BinQuadForm, f2: BinQuadForm) -> bool:
    """Decide GL2(Z)-equivalence of two integral binary quadratic forms."""
    if f1.disc != f2.disc:
        return False
    if f1.is_zero() or f2.is_zero():
        return f1.is_zero() and f2.is_zero()
    disc = f1.disc
    if disc == 0:
        # f = c (u x + v y)^2 with (u, v) primitive, and GL2 moves (u, v) to (1, 0)
        return _signed_content(f1) == _signed_content(f2)
    if disc < 0:
        if (f1.p > 0) != (f2.p > 0):
            return False
        if f1.p < 0:
            f1, f2 = f1.negated(), f2.negated()
        r2 = _reduce_definite(f2)
        return r2 in (_reduce_definite(f1), _reduce_definite(f1.improper()))
    if isqrt(disc) ** 2 == disc:
        inv2 = _square_invariant(f2)
        return bool(inv2 & (_square_invariant(f1) | _square_invariant(f1.improper())))
    c2 = _indefinite_cycle(f2)
    return bool(c2 & (_indefinite_cycle(f1) | _indefinite_cycle(f1.improper())))


def _signed_content(f: BinQuadForm) -> int:
    c = f.content
    return c if (f.p > 0 or f.r > 0) else -c


# ---------------------------------------------------------------------------
# BN-modifications


def curve_form(g: int) -> BinQuadForm:
    """chi(v, v) on the numerical K-group of a genus g curve: (1 - g) r^2."""
    return BinQuadForm(1 - g, 0, 0)


def bn_closed_form(h0: int, h1: int) -> BinQuadForm:
    """-b x^2 + ab xy - a y^2 with a = h0 - 1, b = h1 - 1 in the complement basis."""
    a, b = h0 - 1, h1 - 1
    return BinQuadForm(-b, a * b, -a)


@dataclass(frozen=True)
class BNEntry:
    h0: int
    h1: int
    form: BinQuadForm
    disc: int
    curve_equivalent: bool
    verdict: str

    def to_json(self) -> dict:
        return {
            "h0": self.h0,
            "h1": self.h1,
            "form": [self.form.p, self.form.q, self.form.r],
            "form_text": str(self.form),
            "disc": self.disc,
            "curve_equivalent": self.curve_equivalent,
            "verdict": self.verdict,
        }


def classify_bn(g: int) -> list[BNEntry]:
    if not isinstance(g, int) or g < 1:
        raise UsageError("genus must be a positive integer")
    out = []
    for h0 in range(1, g + 1):
        if g % h0:
            continue
        h1 = g // h0
        form = BinQuadForm.from_gram(bn_complement_lattice(g, h0, h1).gram)
        if form != bn_closed_form(h0, h1):
            raise AssertionError(f"symmetrized form {form} differs from the closed form at ({h0}, {h1})")
        a, b = h0 - 1, h1 - 1
        disc = form.disc
        assert disc == a * b * (a * b - 4)
        equivalent = form_equivalent(form, curve_form(g))
        if equivalent:
            verdict = "curve-like: L is O_C or the canonical bundle"
        elif disc != 0:
            verdict = "not a curve: nonzero discriminant"
        else:
            verdict = "not a curve: degenerate forms of different content"
        out.append(BNEntry(h0, h1, form, disc, equivalent, verdict))
    return out
