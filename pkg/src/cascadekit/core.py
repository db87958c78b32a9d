"""Finite transformations and brute-force semigroup enumeration.

States are 1-based throughout: a transformation of degree n maps {1..n} to
itself and is stored as its image list.  Composition is written as a right
action, so ``s * t`` means "apply s, then t".
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import CapExceededError, InputError

#: A word is a sequence of 1-based generator indices; () is the formal identity.
Word = tuple[int, ...]

DEFAULT_ELEMENT_CAP = 1_000_000


@dataclass(frozen=True)
class Transformation:
    """A self-map of {1..n}, stored as a tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n == 0:
            raise InputError("transformation must have positive degree")
        for x in self.images:
            if not (1 <= x <= n):
                raise InputError(
                    f"image value {x} out of range 1..{n}")

    @classmethod
    def identity(cls, n: int) -> "Transformation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Iterable[int]) -> "Transformation":
        """Permutation of degree n from disjoint cycles, e.g. (1,2,3)."""
        images = list(range(1, n + 1))
        for cycle in cycles:
            pts = list(cycle)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                if not (1 <= a <= n):
                    raise InputError(f"cycle point {a} out of range 1..{n}")
                images[a - 1] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def apply(self, x: int) -> int:
        if not (1 <= x <= self.degree):
            raise InputError(f"state {x} out of range 1..{self.degree}")
        return self.images[x - 1]

    def image_set(self, points: Iterable[int]) -> frozenset[int]:
        return frozenset(self.apply(x) for x in points)

    def __mul__(self, other: "Transformation") -> "Transformation":
        return compose(self, other)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, start=1))

    def is_permutation(self) -> bool:
        return len(set(self.images)) == self.degree

    def inverse(self) -> "Transformation":
        if not self.is_permutation():
            raise InputError("only permutations are invertible")
        images = [0] * self.degree
        for x, y in enumerate(self.images, start=1):
            images[y - 1] = x
        return Transformation(tuple(images))

    def element_order(self) -> tuple[int, int]:
        """Smallest (index i, period p) with s^(i+p) = s^i; index 0 for perms."""
        seen: dict[Transformation, int] = {}
        power = Transformation.identity(self.degree)
        k = 0
        while power not in seen:
            seen[power] = k
            power = power * self
            k += 1
        first = seen[power]
        return first, k - first

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles of a permutation, smallest point first."""
        if not self.is_permutation():
            raise InputError("cycle notation only applies to permutations")
        out = []
        done: set[int] = set()
        for start in range(1, self.degree + 1):
            if start in done:
                continue
            cyc = [start]
            done.add(start)
            x = self.apply(start)
            while x != start:
                cyc.append(x)
                done.add(x)
                x = self.apply(x)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __repr__(self) -> str:
        return f"Transformation({list(self.images)})"


def compose(s: Transformation, t: Transformation) -> Transformation:
    """Right-action product: x^(st) = (x^s)^t."""
    if s.degree != t.degree:
        raise InputError(
            f"degree mismatch: {s.degree} vs {t.degree}")
    return Transformation(tuple(t.images[x - 1] for x in s.images))


def apply(x: int, s: Transformation) -> int:
    return s.apply(x)


def image_set(points: Iterable[int], s: Transformation) -> frozenset[int]:
    return s.image_set(points)


class TransformationSemigroup:
    """Semigroup generated by a finite set of transformations.

    Elements are enumerated lazily, breadth-first by word length, so every
    element carries a shortest-found word over the generators.  Enumeration
    is deterministic given the generator order.
    """

    def __init__(self, generators: Iterable[Transformation],
                 cap: int = DEFAULT_ELEMENT_CAP):
        gens = tuple(generators)
        if not gens:
            raise InputError("generator list must be nonempty")
        degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise InputError("generators must share a degree")
        self.generators = gens
        self.degree = degree
        self.cap = cap
        self._elements: dict[Transformation, Word] | None = None

    def elements(self) -> dict[Transformation, Word]:
        """Map from each element to one shortest-found witness word."""
        if self._elements is None:
            elems: dict[Transformation, Word] = {}
            queue: deque[Transformation] = deque()
            for idx, g in enumerate(self.generators, start=1):
                if g not in elems:
                    elems[g] = (idx,)
                    queue.append(g)
            while queue:
                s = queue.popleft()
                word = elems[s]
                for idx, g in enumerate(self.generators, start=1):
                    t = s * g
                    if t not in elems:
                        if len(elems) >= self.cap:
                            raise CapExceededError(
                                "semigroup enumeration exceeded element cap",
                                self.cap)
                        elems[t] = word + (idx,)
                        queue.append(t)
            self._elements = elems
        return self._elements

    def order(self) -> int:
        return len(self.elements())

    def __contains__(self, s: Transformation) -> bool:
        return s in self.elements()

    def __iter__(self) -> Iterator[Transformation]:
        return iter(self.elements())

    def word_transformation(self, word: Word) -> Transformation:
        """Evaluate a word; the empty word gives the identity of S^1."""
        result = Transformation.identity(self.degree)
        for idx in word:
            if not (1 <= idx <= len(self.generators)):
                raise InputError(f"generator index {idx} out of range")
            result = result * self.generators[idx - 1]
        return result

    def is_group(self) -> bool:
        return all(s.is_permutation() for s in self.elements())

    def monoid_elements(self) -> dict[Transformation, Word]:
        """Elements of S^1: the enumeration plus the adjoined identity."""
        elems = dict(self.elements())
        elems.setdefault(Transformation.identity(self.degree), ())
        return elems

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TransformationSemigroup):
            return NotImplemented
        return self.degree == other.degree and self.generators == other.generators

    def __hash__(self) -> int:
        return hash((self.degree, self.generators))

    def __repr__(self) -> str:
        return (f"TransformationSemigroup(degree={self.degree}, "
                f"{len(self.generators)} generators)")
