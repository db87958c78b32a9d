"""Coset-chain decomposition of permutation groups into cascades.

A subgroup chain G = H_0 > H_1 > ... > H_k = 1 identifies every group
element with a tuple of right-coset representatives, one per level.  The
component at level i is the permutation group induced by H_{i-1} on the
right cosets of H_i, and group elements lift to permutation cascades that
emulate right multiplication on the coordinate tuples.

Conventions: right cosets with right multiplication, the identity is always
the first transversal representative, and transversal representatives are
picked breadth-first over the parent group's generators.
"""

from __future__ import annotations

import itertools
from collections import deque
from functools import reduce
from typing import Iterable, Sequence

from .cascade import (Cascade, CascadeProductSemigroup, ComponentList,
                      generate)
from .core import (DEFAULT_ELEMENT_CAP, Transformation,
                   TransformationSemigroup)
from .errors import InputError, InternalError


class SubgroupChain:
    """Strictly descending chain of permutation groups ending at the trivial one."""

    def __init__(self, groups: Sequence[TransformationSemigroup]):
        groups = list(groups)
        if len(groups) < 2:
            raise InputError("chain needs at least the full group and 1")
        degree = groups[0].degree
        for i, h in enumerate(groups):
            if h.degree != degree:
                raise InputError(f"chain member {i} has degree {h.degree}, "
                                 f"expected {degree}")
            if not h.is_group():
                raise InputError(f"chain member {i} is not a permutation group")
        if groups[0].order() == 1:
            raise InputError("chain cannot start at the trivial group")
        if groups[-1].order() != 1:
            raise InputError("chain must end at the trivial group")
        for i in range(len(groups) - 1):
            parent, child = groups[i], groups[i + 1]
            for g in child.generators:
                if g not in parent:
                    raise InputError(
                        f"chain member {i + 1} is not a subgroup of member {i}: "
                        f"generator {list(g.images)} missing")
            if child.order() >= parent.order():
                raise InputError(
                    f"chain inclusion {i} -> {i + 1} is not strict")
        self.groups = tuple(groups)
        self.degree = degree

    @classmethod
    def from_generator_lists(cls, degree: int,
                             generator_lists: Sequence[Sequence[Transformation]]
                             ) -> "SubgroupChain":
        """Chain from per-subgroup generator lists, outermost group first.

        A trivial terminating group is appended when missing.
        """
        groups = []
        for gens in generator_lists:
            gens = list(gens)
            if not gens:
                gens = [Transformation.identity(degree)]
            groups.append(TransformationSemigroup(gens))
        if not groups or groups[-1].order() != 1:
            groups.append(TransformationSemigroup(
                [Transformation.identity(degree)]))
        return cls(groups)

    def __len__(self) -> int:
        return len(self.groups) - 1


def default_chain(G: TransformationSemigroup) -> SubgroupChain:
    """Point-stabilizer chain, base points smallest-first, pruned to strict drops."""
    if not G.is_group():
        raise InputError("default chain requires a permutation group")
    if G.order() == 1:
        raise InputError("cannot build a chain for the trivial group")
    groups = [G]
    current = G
    for point in range(1, G.degree + 1):
        if current.order() == 1:
            break
        stab_elems = sorted(
            (s for s in current.elements() if s.apply(point) == point),
            key=lambda s: s.images)
        stab = TransformationSemigroup(stab_elems)
        if stab.order() < current.order():
            groups.append(stab)
            current = stab
    if current.order() != 1:
        raise InternalError("stabilizer chain did not reach the trivial group")
    return SubgroupChain(groups)


def _bfs_elements(group: TransformationSemigroup) -> list[Transformation]:
    """All elements in BFS order from the identity over the generators."""
    identity = Transformation.identity(group.degree)
    order = [identity]
    seen = {identity}
    queue = deque([identity])
    while queue:
        u = queue.popleft()
        for g in group.generators:
            v = u * g
            if v not in seen:
                seen.add(v)
                order.append(v)
                queue.append(v)
    return order


class FLDecomposition:
    """Coordinate system on a group from a subgroup chain's coset spaces."""

    def __init__(self, G: TransformationSemigroup,
                 chain: SubgroupChain | None = None):
        if chain is None:
            chain = default_chain(G)
        if chain.degree != G.degree or chain.groups[0] != G:
            # Accept any chain starting at a group equal to <G> as a set.
            if chain.degree != G.degree or \
                    set(chain.groups[0].elements()) != set(G.elements()):
                raise InputError("chain must start at the decomposed group")
        self.group = G
        self.chain = chain
        self.transversals: list[list[Transformation]] = []
        self._rep_index: list[dict[Transformation, int]] = []
        components = []
        for i in range(len(chain)):
            parent, child = chain.groups[i], chain.groups[i + 1]
            child_elems = list(child.elements())
            transversal: list[Transformation] = []
            rep_index: dict[Transformation, int] = {}
            for u in _bfs_elements(parent):
                if u not in rep_index:
                    idx = len(transversal)
                    transversal.append(u)
                    for k in child_elems:
                        rep_index[k * u] = idx
            if len(transversal) * child.order() != parent.order():
                raise InternalError("transversal does not partition the group")
            self.transversals.append(transversal)
            self._rep_index.append(rep_index)
            action_gens = [self._action_perm(i, g) for g in parent.generators]
            components.append(TransformationSemigroup(action_gens))
        self.components = ComponentList.of(*components)

    def _action_perm(self, level0: int, h: Transformation) -> Transformation:
        """Permutation of level-(level0+1) coset indices induced by h."""
        transversal = self.transversals[level0]
        rep_index = self._rep_index[level0]
        images = tuple(rep_index[t * h] + 1 for t in transversal)
        return Transformation(images)

    @property
    def levels(self) -> int:
        return len(self.transversals)

    def coordinates(self, g: Transformation) -> tuple[int, ...]:
        """Tuple of 1-based transversal indices identifying g."""
        if g not in self.group.monoid_elements():
            raise InputError("element does not belong to the decomposed group")
        coords = []
        carry = g
        for level0 in range(self.levels):
            idx = self._rep_index[level0][carry]
            coords.append(idx + 1)
            carry = carry * self.transversals[level0][idx].inverse()
        if not carry.is_identity():
            raise InternalError("sifting did not terminate at the identity")
        return tuple(coords)

    def decode(self, coords: Sequence[int]) -> Transformation:
        """Product t_k * ... * t_1 of the selected representatives."""
        if len(coords) != self.levels:
            raise InputError(f"expected {self.levels} coordinates")
        reps = []
        for level0, x in enumerate(coords):
            if not (1 <= x <= len(self.transversals[level0])):
                raise InputError(
                    f"coordinate {level0 + 1}: index {x} out of range")
            reps.append(self.transversals[level0][x - 1])
        return reduce(lambda a, b: a * b, reversed(reps))

    def encode(self, g: Transformation) -> Cascade:
        """Permutation cascade emulating right multiplication by g.

        For every u in the group, act(encode(g), coordinates(u)) equals
        coordinates(u * g).
        """
        if g not in self.group.monoid_elements():
            raise InputError("element does not belong to the decomposed group")
        pairs = []
        top = self._action_perm(0, g)
        if not top.is_identity():
            pairs.append(((), top))
        sizes = self.components.sizes
        for level0 in range(1, self.levels):
            for prefix in itertools.product(
                    *(range(1, n + 1) for n in sizes[:level0])):
                carry = self._sift_carry(g, prefix)
                value = self._action_perm(level0, carry)
                if not value.is_identity():
                    pairs.append((prefix, value))
        return Cascade.from_pairs(self.components, pairs)

    def _sift_carry(self, g: Transformation, prefix: Sequence[int]) -> Transformation:
        """Carry element entering level len(prefix)+1 when g acts after prefix."""
        carry = g
        for level0, x in enumerate(prefix):
            t = self.transversals[level0][x - 1]
            th = t * carry
            rep = self.transversals[level0][self._rep_index[level0][th]]
            carry = th * rep.inverse()
        return carry

    def cascade_group(self, cap: int = DEFAULT_ELEMENT_CAP) -> CascadeProductSemigroup:
        gens = [self.encode(g) for g in self.group.generators]
        return generate(self.components, gens, cap)


def fl_cascade_group(G: TransformationSemigroup,
                     chain: SubgroupChain | None = None,
                     cap: int = DEFAULT_ELEMENT_CAP) -> CascadeProductSemigroup:
    """Cascade group generated by the encoded generators of G."""
    return FLDecomposition(G, chain).cascade_group(cap)
