"""Closed-form matrices and tables the constructions are checked against.

These are written out directly rather than built, so comparing them with
the gluing/complement pipeline is a genuine cross-check.
"""
from __future__ import annotations

from .intmat import IntMatrix


def augmented_gram(g: int) -> IntMatrix:
    return ((1, 1 - g, 1), (0, 1 - g, 1), (0, -1, 0))


def ipg_gram(g1: int, g2: int) -> IntMatrix:
    return (
        (1 - g1, 1, g1 * g2 - g1 - g2, 1 - g1),
        (-1, 0, g2 - 1, -1),
        (0, 0, 1 - g2, 1),
        (0, 0, -1, 0),
    )


def rpg_gram(g1: int, g2: int) -> IntMatrix:
    return ((1, -1, 1), (0, 1 - g1 - g2, 1), (0, -1, 0))


def bn_complement_gram(g: int, h0: int, h1: int) -> IntMatrix:
    return ((1 - h1, g - h0 - h1), (1, 1 - h0))


def augmented_serre(g: int) -> IntMatrix:
    return ((g, g - 1, 1), (-1, -1, 0), (2 - 2 * g, 2 - 2 * g, -1))


def augmented_serre_charpoly(g: int) -> tuple[int, ...]:
    """(t - 1)(t^2 - (g - 3) t + 1), leading coefficient first."""
    return (1, -(g - 2), g - 2, -1)


def quiver_gram(arrows: tuple[int, int] = (1, 2)) -> IntMatrix:
    """Euler form of the 3-vertex linear quiver on indecomposable projectives.

    chi(P_i, P_j) counts paths between the vertices; with a arrows 1 -> 2 and
    b arrows 2 -> 3 that is 1, a, b and a b.
    """
    a, b = arrows
    return ((1, a, a * b), (0, 1, b), (0, 0, 1))
