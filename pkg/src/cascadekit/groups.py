"""Standard small permutation groups and a small structure-naming catalog."""

from __future__ import annotations

from collections import Counter

from .core import Transformation, TransformationSemigroup


def cyclic(n: int) -> TransformationSemigroup:
    """Z_n as the permutation group generated by the n-cycle (1..n)."""
    return TransformationSemigroup([Transformation.from_cycles(n, range(1, n + 1))])


def symmetric(n: int) -> TransformationSemigroup:
    """S_n generated by the n-cycle and the transposition (1,2)."""
    if n == 1:
        return trivial(1)
    gens = [Transformation.from_cycles(n, range(1, n + 1)),
            Transformation.from_cycles(n, (1, 2))]
    return TransformationSemigroup(gens)


def dihedral_square() -> TransformationSemigroup:
    """D_4 as symmetries of the square on 4 points."""
    return TransformationSemigroup([
        Transformation.from_cycles(4, (1, 2, 3, 4)),
        Transformation.from_cycles(4, (1, 3)),
    ])


def quaternion() -> TransformationSemigroup:
    """Q_8 in its regular representation on 8 points."""
    return TransformationSemigroup([
        Transformation.from_cycles(8, (1, 5, 3, 7), (2, 8, 4, 6)),
        Transformation.from_cycles(8, (1, 2, 3, 4), (5, 6, 7, 8)),
    ])


def trivial(n: int) -> TransformationSemigroup:
    return TransformationSemigroup([Transformation.identity(n)])


def full_transformation_monoid(n: int) -> TransformationSemigroup:
    """All n^n transformations of n points, via the standard 3 generators."""
    if n < 2:
        return trivial(1)
    collapse = tuple(list(range(1, n)) + [n - 1])  # rank n-1 map, n -> n-1
    gens = [Transformation.from_cycles(n, range(1, n + 1)),
            Transformation.from_cycles(n, (1, 2)),
            Transformation(collapse)]
    return TransformationSemigroup(gens)


def _is_abelian(elements: list[Transformation]) -> bool:
    return all(a * b == b * a for a in elements for b in elements)


def structure_name(group: TransformationSemigroup) -> str:
    """Name a small group: C2..C8, V4, S3, D4, Q8; fallback G<order>.

    Only intended for groups of order at most 8; anything larger or
    unrecognized gets the fallback name.
    """
    elements = list(group.elements())
    order = len(elements)
    orders = Counter(e.element_order()[1] for e in elements)
    if order in (2, 3, 5, 7):
        return f"C{order}"
    if order == 4:
        return "C4" if orders.get(4) else "V4"
    if order == 6:
        return "C6" if orders.get(6) else "S3"
    if order == 8:
        if orders.get(8):
            return "C8"
        if not _is_abelian(elements):
            return "Q8" if orders.get(2) == 1 else "D4"
    return f"G{order}"
