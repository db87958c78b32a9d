"""Transformation cascades over a fixed hierarchy of components.

A cascade is a tuple of sparse dependency functions, one per level.  Absent
prefixes evaluate to the identity, and the canonical form never stores an
identity value, so the dependency count matches what is reported externally.
State tuples are encoded into flat states mixed-radix, level 1 most
significant, so lexicographic tuple order matches flat state order.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .core import (DEFAULT_ELEMENT_CAP, Transformation,
                   TransformationSemigroup, Word)
from .errors import CapExceededError, InputError

DEFAULT_FLAT_CAP = 65536


@dataclass(frozen=True)
class ComponentList:
    """Ordered list of (state-set size, component semigroup) pairs."""

    levels: tuple[tuple[int, TransformationSemigroup], ...]

    def __post_init__(self):
        if not self.levels:
            raise InputError("component list must be nonempty")
        for i, (n, sgp) in enumerate(self.levels, start=1):
            if n < 1:
                raise InputError(f"level {i}: state-set size must be >= 1")
            if sgp.degree != n:
                raise InputError(
                    f"level {i}: component degree {sgp.degree} != {n} points")

    @classmethod
    def of(cls, *components: TransformationSemigroup) -> "ComponentList":
        return cls(tuple((c.degree, c) for c in components))

    def __len__(self) -> int:
        return len(self.levels)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.levels)

    def semigroup(self, level: int) -> TransformationSemigroup:
        return self.levels[level - 1][1]

    @property
    def flat_degree(self) -> int:
        d = 1
        for n in self.sizes:
            d *= n
        return d

    def state_tuples(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(1, n + 1) for n in self.sizes))

    def prefixes(self, level: int) -> Iterator[tuple[int, ...]]:
        """All prefix tuples feeding the dependency function of a level."""
        return itertools.product(
            *(range(1, n + 1) for n in self.sizes[:level - 1]))

    def encode(self, states: Sequence[int]) -> int:
        """Mixed-radix flat state of a tuple, 1-based, level 1 most significant."""
        self._check_tuple(states)
        flat = 0
        for x, n in zip(states, self.sizes):
            flat = flat * n + (x - 1)
        return flat + 1

    def decode(self, flat: int) -> tuple[int, ...]:
        if not (1 <= flat <= self.flat_degree):
            raise InputError(f"flat state {flat} out of range")
        rest = flat - 1
        out = [0] * len(self.levels)
        for i in range(len(self.levels) - 1, -1, -1):
            n = self.sizes[i]
            out[i] = rest % n + 1
            rest //= n
        return tuple(out)

    def _check_tuple(self, states: Sequence[int]):
        if len(states) != len(self.levels):
            raise InputError(
                f"state tuple length {len(states)} != {len(self.levels)} levels")
        for i, (x, n) in enumerate(zip(states, self.sizes), start=1):
            if not (1 <= x <= n):
                raise InputError(f"coordinate {i}: state {x} out of range 1..{n}")


@dataclass(frozen=True)
class DependencyFunction:
    """Sparse map from prefix tuples to non-identity transformations."""

    level: int
    prefix_sizes: tuple[int, ...]
    target_degree: int
    entries: tuple[tuple[tuple[int, ...], Transformation], ...]

    @classmethod
    def build(cls, level: int, prefix_sizes: Sequence[int], target_degree: int,
              mapping: Mapping[tuple[int, ...], Transformation]) -> "DependencyFunction":
        """Canonicalize a mapping: drop identities, sort, validate."""
        prefix_sizes = tuple(prefix_sizes)
        entries = []
        for prefix, value in mapping.items():
            prefix = tuple(prefix)
            if len(prefix) != len(prefix_sizes):
                raise InputError(
                    f"level {level}: prefix {prefix} has arity "
                    f"{len(prefix)}, expected {len(prefix_sizes)}")
            for x, n in zip(prefix, prefix_sizes):
                if not (1 <= x <= n):
                    raise InputError(
                        f"level {level}: prefix coordinate {x} out of range 1..{n}")
            if value.degree != target_degree:
                raise InputError(
                    f"level {level}: value degree {value.degree} != {target_degree}")
            if not value.is_identity():
                entries.append((prefix, value))
        entries.sort(key=lambda e: e[0])
        return cls(level, prefix_sizes, target_degree, tuple(entries))

    @classmethod
    def empty(cls, level: int, prefix_sizes: Sequence[int],
              target_degree: int) -> "DependencyFunction":
        return cls(level, tuple(prefix_sizes), target_degree, ())

    @property
    def arity(self) -> int:
        return len(self.prefix_sizes)

    @cached_property
    def _map(self) -> dict[tuple[int, ...], Transformation]:
        return dict(self.entries)

    def evaluate(self, prefix: Sequence[int]) -> Transformation:
        prefix = tuple(prefix)
        if len(prefix) != self.arity:
            raise InputError(
                f"level {self.level}: prefix arity {len(prefix)} != {self.arity}")
        for x, n in zip(prefix, self.prefix_sizes):
            if not (1 <= x <= n):
                raise InputError(
                    f"level {self.level}: prefix coordinate {x} out of range 1..{n}")
        value = self._map.get(prefix)
        if value is None:
            return Transformation.identity(self.target_degree)
        return value

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Cascade:
    """An n-tuple of dependency functions acting coordinatewise."""

    components: ComponentList
    deps: tuple[DependencyFunction, ...]

    def __post_init__(self):
        if len(self.deps) != len(self.components):
            raise InputError("one dependency function per level required")
        for i, dep in enumerate(self.deps, start=1):
            if dep.level != i:
                raise InputError(f"dependency at position {i} has level {dep.level}")

    @classmethod
    def identity(cls, components: ComponentList) -> "Cascade":
        sizes = components.sizes
        deps = tuple(
            DependencyFunction.empty(i, sizes[:i - 1], sizes[i - 1])
            for i in range(1, len(components) + 1))
        return cls(components, deps)

    @classmethod
    def from_pairs(cls, components: ComponentList,
                   pairs: Iterable[tuple[Sequence[int], Transformation]]) -> "Cascade":
        """Build from (prefix, value) pairs; a prefix of length L binds level L+1."""
        sizes = components.sizes
        per_level: list[dict[tuple[int, ...], Transformation]] = [
            {} for _ in range(len(components))]
        for prefix, value in pairs:
            prefix = tuple(prefix)
            level = len(prefix) + 1
            if level > len(components):
                raise InputError(
                    f"prefix {prefix} implies level {level}, but only "
                    f"{len(components)} levels exist")
            if prefix in per_level[level - 1]:
                raise InputError(f"duplicate dependency entry for prefix {prefix}")
            per_level[level - 1][prefix] = value
        deps = tuple(
            DependencyFunction.build(i, sizes[:i - 1], sizes[i - 1], mapping)
            for i, mapping in enumerate(per_level, start=1))
        return cls(components, deps)

    @classmethod
    def constant(cls, components: ComponentList,
                 elems: Sequence[Transformation]) -> "Cascade":
        """Constant dependency functions: one component element per level."""
        if len(elems) != len(components):
            raise InputError("one element per level required")
        pairs = []
        for i, elem in enumerate(elems, start=1):
            if elem.degree != components.sizes[i - 1]:
                raise InputError(
                    f"level {i}: element degree {elem.degree} != "
                    f"{components.sizes[i - 1]}")
            for prefix in components.prefixes(i):
                pairs.append((prefix, elem))
        return cls.from_pairs(components, pairs)

    @property
    def dependency_count(self) -> int:
        return sum(len(d) for d in self.deps)

    def act(self, states: Sequence[int]) -> tuple[int, ...]:
        """Coordinatewise action; all dependencies see the original tuple."""
        self.components._check_tuple(states)
        states = tuple(states)
        return tuple(
            dep.evaluate(states[:i - 1]).apply(states[i - 1])
            for i, dep in enumerate(self.deps, start=1))

    def act_prefix(self, prefix: Sequence[int]) -> tuple[int, ...]:
        """Action restricted to the first len(prefix) coordinates."""
        prefix = tuple(prefix)
        return tuple(
            self.deps[j].evaluate(prefix[:j]).apply(prefix[j])
            for j in range(len(prefix)))

    def compose(self, other: "Cascade") -> "Cascade":
        """Cascade with act(result, x) = act(other, act(self, x))."""
        if self.components != other.components:
            raise InputError("cascades must share a component list")
        sizes = self.components.sizes
        deps = []
        for i in range(1, len(self.components) + 1):
            mapping = {}
            for prefix in self.components.prefixes(i):
                value = self.deps[i - 1].evaluate(prefix) * \
                    other.deps[i - 1].evaluate(self.act_prefix(prefix))
                if not value.is_identity():
                    mapping[prefix] = value
            deps.append(DependencyFunction.build(
                i, sizes[:i - 1], sizes[i - 1], mapping))
        return Cascade(self.components, tuple(deps))

    def __mul__(self, other: "Cascade") -> "Cascade":
        return self.compose(other)

    def flatten(self, cap: int = DEFAULT_FLAT_CAP) -> Transformation:
        """The cascade as a single transformation of the product state set."""
        n = self.components.flat_degree
        if n > cap:
            raise CapExceededError("flat degree exceeds cap", cap)
        images = [0] * n
        for states in self.components.state_tuples():
            images[self.components.encode(states) - 1] = \
                self.components.encode(self.act(states))
        return Transformation(tuple(images))

    def __repr__(self) -> str:
        return (f"Cascade({len(self.components)} levels, "
                f"{self.dependency_count} dependencies)")


def compose_cascades(a: Cascade, b: Cascade) -> Cascade:
    return a.compose(b)


def constant_cascade(components: ComponentList,
                     elems: Sequence[Transformation]) -> Cascade:
    return Cascade.constant(components, elems)


def wreath_generators(components: ComponentList) -> list[Cascade]:
    """One single-entry cascade per (level, prefix, component generator).

    For group components the generated cascade semigroup is the full wreath
    product; for non-group components it is the cascade product of the
    components with identity adjoined (absent entries act as the identity).
    """
    out = []
    for i in range(1, len(components) + 1):
        prefix_count = 1
        for n in components.sizes[:i - 1]:
            prefix_count *= n
        if prefix_count > DEFAULT_FLAT_CAP:
            raise CapExceededError(
                f"prefix space at level {i} exceeds cap", DEFAULT_FLAT_CAP)
        for prefix in components.prefixes(i):
            for g in components.semigroup(i).generators:
                if g.is_identity():
                    continue
                out.append(Cascade.from_pairs(components, [(prefix, g)]))
    return out


class CascadeProductSemigroup:
    """Closure of a set of cascades under cascade composition."""

    def __init__(self, components: ComponentList, generators: Iterable[Cascade],
                 cap: int = DEFAULT_ELEMENT_CAP):
        gens = tuple(generators)
        if not gens:
            raise InputError("cascade generator set must be nonempty")
        for w in gens:
            if w.components != components:
                raise InputError("all generators must share the component list")
        self.components = components
        self.generators = gens
        self.cap = cap
        self._elements: dict[Cascade, Word] | None = None

    def elements(self) -> dict[Cascade, Word]:
        if self._elements is None:
            elems: dict[Cascade, Word] = {}
            queue: deque[Cascade] = deque()
            for idx, g in enumerate(self.generators, start=1):
                if g not in elems:
                    elems[g] = (idx,)
                    queue.append(g)
            while queue:
                c = queue.popleft()
                word = elems[c]
                for idx, g in enumerate(self.generators, start=1):
                    d = c * g
                    if d not in elems:
                        if len(elems) >= self.cap:
                            raise CapExceededError(
                                "cascade enumeration exceeded element cap",
                                self.cap)
                        elems[d] = word + (idx,)
                        queue.append(d)
            self._elements = elems
        return self._elements

    def order(self) -> int:
        return len(self.elements())

    def __iter__(self) -> Iterator[Cascade]:
        return iter(self.elements())

    @property
    def levels(self) -> int:
        return len(self.components)

    def __repr__(self) -> str:
        pts = ", ".join(str(n) for n in self.components.sizes)
        return (f"CascadeProductSemigroup({len(self.generators)} generators, "
                f"{self.levels} levels with ({pts}) pts)")


def generate(components: ComponentList, cascades: Iterable[Cascade],
             cap: int = DEFAULT_ELEMENT_CAP) -> CascadeProductSemigroup:
    return CascadeProductSemigroup(components, cascades, cap)
