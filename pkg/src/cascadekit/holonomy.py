"""Holonomy decomposition of finite transformation semigroups.

The skeleton collects the images of the state set (plus the state set and
all singletons) under the subduction preorder: Q is subducted by P when some
element of S^1 maps P onto a superset of Q.  Mutual subduction partitions
the members into equivalence classes; heights come from longest paths on the
class condensation, with singleton classes pinned at height 0.  Each
non-singleton class representative carries its tiles (maximal proper member
subsets) and a holonomy group permuting them; classes of equal depth are
pooled into one cascade level.

States are coordinatized by chains of tiles, and semigroup elements lift to
cascades satisfying the emulation contract

    decode(act(lift(s), c)) == decode(c)^s

for every in-range coordinate tuple c.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx

from .cascade import (Cascade, CascadeProductSemigroup, ComponentList,
                      DependencyFunction, generate)
from .core import (DEFAULT_ELEMENT_CAP, Transformation,
                   TransformationSemigroup, Word)
from .errors import CapExceededError, InputError, InternalError
from .groups import structure_name

MAX_HOLONOMY_DEGREE = 64

Member = frozenset


def _member_key(P: frozenset[int]) -> tuple[int, ...]:
    return tuple(sorted(P))


class Skeleton:
    """Image sets of a transformation semigroup under the subduction order."""

    def __init__(self, semigroup: TransformationSemigroup,
                 max_degree: int = MAX_HOLONOMY_DEGREE):
        if semigroup.degree > max_degree:
            raise CapExceededError(
                f"degree {semigroup.degree} exceeds the subset-width cap",
                max_degree)
        self.semigroup = semigroup
        self.base: frozenset[int] = frozenset(range(1, semigroup.degree + 1))
        self._monoid = semigroup.monoid_elements()

        # Images of the full state set, breadth-first, with witness words.
        self.witness: dict[frozenset[int], Word] = {self.base: ()}
        queue = deque([self.base])
        while queue:
            P = queue.popleft()
            word = self.witness[P]
            for idx, g in enumerate(semigroup.generators, start=1):
                Q = g.image_set(P)
                if Q not in self.witness:
                    self.witness[Q] = word + (idx,)
                    queue.append(Q)
        self.image_members = frozenset(self.witness)

        members = set(self.image_members)
        members.add(self.base)
        members.update(frozenset([x]) for x in self.base)
        self.members: list[frozenset[int]] = sorted(members, key=_member_key)
        self._member_set = frozenset(self.members)

        # All images of each member under S^1; subduction tests reduce to
        # subset checks against these.
        self._images_of: dict[frozenset[int], frozenset[frozenset[int]]] = {
            P: frozenset(s.image_set(P) for s in self._monoid)
            for P in self.members}

        self._compute_classes()
        self._compute_travel_words()

    # -- structure ---------------------------------------------------------

    def _compute_classes(self):
        graph = nx.DiGraph()
        graph.add_nodes_from(self.members)
        for P in self.members:
            for Q in self.members:
                if P is not Q and self.subducted(Q, P):
                    graph.add_edge(P, Q)
        condensation = nx.condensation(graph)
        self._class_of: dict[frozenset[int], int] = dict(
            condensation.graph["mapping"])
        self.classes: dict[int, list[frozenset[int]]] = {
            cid: sorted(data["members"], key=_member_key)
            for cid, data in condensation.nodes(data=True)}
        self.reps: dict[int, frozenset[int]] = {
            cid: members[0] for cid, members in self.classes.items()}

        # Longest-path heights on the condensation; singleton classes are
        # sinks at height 0 regardless of subduction among singletons.
        self.heights: dict[int, int] = {}
        for cid in reversed(list(nx.topological_sort(condensation))):
            if len(self.reps[cid]) == 1:
                self.heights[cid] = 0
                continue
            succ = [self.heights[c] for c in condensation.successors(cid)
                    if len(self.reps[c]) > 1]
            succ.append(0)  # singletons below count as height 0
            self.heights[cid] = 1 + max(succ)
        self.height = self.heights[self._class_of[self.base]]

    def _compute_travel_words(self):
        # For each member P with class representative R: words with
        # R . in_word = P and P . out_word = R.
        self.in_word: dict[frozenset[int], Word] = {}
        self.out_word: dict[frozenset[int], Word] = {}
        for P in self.members:
            R = self.rep_of(P)
            if P == R:
                self.in_word[P] = ()
                self.out_word[P] = ()
            else:
                win = self._word_to(R, P)
                wout = self._word_to(P, R)
                if win is None or wout is None:
                    raise InternalError(
                        "equivalent members must be mutually reachable")
                self.in_word[P] = win
                self.out_word[P] = wout

    def _word_to(self, source: frozenset[int],
                 target: frozenset[int]) -> Word | None:
        """Shortest word w with source . w == target, or None."""
        if source == target:
            return ()
        seen: dict[frozenset[int], Word] = {source: ()}
        queue = deque([source])
        while queue:
            P = queue.popleft()
            word = seen[P]
            for idx, g in enumerate(self.semigroup.generators, start=1):
                Q = g.image_set(P)
                if Q not in seen:
                    seen[Q] = word + (idx,)
                    if Q == target:
                        return seen[Q]
                    queue.append(Q)
        return None

    # -- queries -----------------------------------------------------------

    def is_member(self, P: Iterable[int]) -> bool:
        return frozenset(P) in self._member_set

    def is_image(self, P: Iterable[int]) -> bool:
        return frozenset(P) in self.image_members

    def subducted(self, Q: Iterable[int], P: Iterable[int]) -> bool:
        """Whether some element of S^1 maps P onto a superset of Q."""
        Q = frozenset(Q)
        return any(Q <= I for I in self._images_of[frozenset(P)])

    def subduction_word(self, Q: Iterable[int],
                        P: Iterable[int]) -> Word | None:
        """Shortest word w (possibly empty) with Q a subset of P . w."""
        Q, P = frozenset(Q), frozenset(P)
        if Q <= P:
            return ()
        seen: dict[frozenset[int], Word] = {P: ()}
        queue = deque([P])
        while queue:
            current = queue.popleft()
            word = seen[current]
            for idx, g in enumerate(self.semigroup.generators, start=1):
                nxt = g.image_set(current)
                if nxt not in seen:
                    seen[nxt] = word + (idx,)
                    if Q <= nxt:
                        return seen[nxt]
                    queue.append(nxt)
        return None

    def class_of(self, P: Iterable[int]) -> int:
        return self._class_of[frozenset(P)]

    def rep_of(self, P: Iterable[int]) -> frozenset[int]:
        return self.reps[self.class_of(P)]

    def height_of(self, P: Iterable[int]) -> int:
        return self.heights[self.class_of(P)]

    def depth_of(self, P: Iterable[int]) -> int:
        return self.height - self.height_of(P) + 1

    def word_transformation(self, word: Word) -> Transformation:
        return self.semigroup.word_transformation(word)

    def in_transformation(self, P: Iterable[int]) -> Transformation:
        return self.word_transformation(self.in_word[frozenset(P)])

    def out_transformation(self, P: Iterable[int]) -> Transformation:
        return self.word_transformation(self.out_word[frozenset(P)])


class TileStructure:
    """Tiles of every member: maximal proper member subsets."""

    def __init__(self, skeleton: Skeleton):
        self.skeleton = skeleton
        self._tiles: dict[frozenset[int], tuple[frozenset[int], ...]] = {}
        for P in skeleton.members:
            proper = [M for M in skeleton.members if M < P]
            maximal = [M for M in proper
                       if not any(M < other for other in proper)]
            self._tiles[P] = tuple(sorted(maximal, key=_member_key))

    def tiles(self, P: Iterable[int]) -> tuple[frozenset[int], ...]:
        P = frozenset(P)
        if P not in self._tiles:
            raise InputError(f"{sorted(P)} is not a skeleton member")
        return self._tiles[P]


def compute_skeleton(semigroup: TransformationSemigroup,
                     max_degree: int = MAX_HOLONOMY_DEGREE) -> Skeleton:
    return Skeleton(semigroup, max_degree)


def holonomy_group(R: Iterable[int], skeleton: Skeleton,
                   tiles: TileStructure) -> TransformationSemigroup:
    """Permutations of R's tiles induced by elements stabilizing R setwise."""
    R = frozenset(R)
    tile_list = tiles.tiles(R)
    if not tile_list:
        raise InputError("holonomy group requires a member with tiles")
    index = {tile: i for i, tile in enumerate(tile_list)}
    perms = set()
    for s in skeleton._monoid:
        if s.image_set(R) != R:
            continue
        images = []
        for tile in tile_list:
            moved = s.image_set(tile)
            if moved not in index:
                raise InternalError(
                    "stabilizing element moved a tile off the tile set")
            images.append(index[moved] + 1)
        perms.add(Transformation(tuple(images)))
    return TransformationSemigroup(sorted(perms, key=lambda p: p.images))


@dataclass(frozen=True)
class LevelEntry:
    """One class representative pooled into a cascade level."""

    rep: frozenset[int]
    tiles: tuple[frozenset[int], ...]
    offset: int  # points of earlier entries at the same depth
    group: TransformationSemigroup


@dataclass(frozen=True)
class HolonomyLevel:
    depth: int
    entries: tuple[LevelEntry, ...]

    @property
    def points(self) -> int:
        return sum(len(e.tiles) for e in self.entries)


class HolonomyDecomposition:
    """Skeleton, per-depth components, coordinatization, and lifts."""

    def __init__(self, semigroup: TransformationSemigroup,
                 max_degree: int = MAX_HOLONOMY_DEGREE):
        if semigroup.degree < 2:
            raise InputError("holonomy decomposition needs degree >= 2")
        self.semigroup = semigroup
        self.skeleton = Skeleton(semigroup, max_degree)
        self.tile_structure = TileStructure(self.skeleton)
        self.height = self.skeleton.height

        levels = []
        for depth in range(1, self.height + 1):
            entries = []
            offset = 0
            reps_here = sorted(
                (rep for cid, rep in self.skeleton.reps.items()
                 if len(rep) > 1 and self.skeleton.depth_of(rep) == depth),
                key=_member_key)
            for rep in reps_here:
                tiles = self.tile_structure.tiles(rep)
                group = holonomy_group(rep, self.skeleton, self.tile_structure)
                entries.append(LevelEntry(rep, tiles, offset, group))
                offset += len(tiles)
            levels.append(HolonomyLevel(depth, tuple(entries)))
        self.levels: tuple[HolonomyLevel, ...] = tuple(levels)
        self._entry_by_rep: dict[tuple[int, frozenset[int]], LevelEntry] = {
            (level.depth, entry.rep): entry
            for level in self.levels for entry in level.entries}
        self.components = ComponentList.of(
            *(self._component_semigroup(level) for level in self.levels))

    def _component_semigroup(self, level: HolonomyLevel) -> TransformationSemigroup:
        """Blockwise holonomy permutations plus all constant maps."""
        n = level.points
        gens = []
        for entry in level.entries:
            for perm in entry.group.generators:
                images = list(range(1, n + 1))
                for local, target in enumerate(perm.images):
                    images[entry.offset + local] = entry.offset + target
                gens.append(Transformation(tuple(images)))
        for point in range(1, n + 1):
            gens.append(Transformation((point,) * n))
        return TransformationSemigroup(gens)

    # -- coordinatization --------------------------------------------------

    def _active_entry(self, P: frozenset[int], depth: int) -> LevelEntry | None:
        """Level entry for P's class if P is active at this depth."""
        if len(P) == 1:
            return None
        if self.skeleton.depth_of(P) != depth:
            return None
        return self._entry_by_rep[(depth, self.skeleton.rep_of(P))]

    def _descend(self, P: frozenset[int], entry: LevelEntry,
                 coord: int) -> frozenset[int]:
        """Next member when a coordinate selects a tile of P's representative.

        Out-of-block coordinates fold into the representative's block, which
        keeps decoding total on the whole tuple space.
        """
        k = len(entry.tiles)
        local = (coord - entry.offset - 1) % k
        tile = entry.tiles[local]
        return self.skeleton.in_transformation(P).image_set(tile)

    def _walk(self, coords: Sequence[int]) -> frozenset[int]:
        """Member in hand after processing depths 1..len(coords)."""
        P = self.skeleton.base
        for depth, coord in enumerate(coords, start=1):
            entry = self._active_entry(P, depth)
            if entry is not None:
                P = self._descend(P, entry, coord)
        return P

    def decode_tuple(self, coords: Sequence[int]) -> int:
        """State reached by walking the tile chain; total on in-range tuples."""
        self.components._check_tuple(coords)
        P = self._walk(coords)
        if len(P) != 1:
            raise InternalError("decoding walk did not reach a singleton")
        return next(iter(P))

    def encode_state(self, x: int) -> tuple[int, ...]:
        """Canonical coordinates of a state; skipped depths are padded with 1."""
        if x not in self.skeleton.base:
            raise InputError(f"state {x} out of range")
        coords = [1] * self.height
        P = self.skeleton.base
        while len(P) > 1:
            depth = self.skeleton.depth_of(P)
            entry = self._entry_by_rep[(depth, self.skeleton.rep_of(P))]
            w_in = self.skeleton.in_transformation(P)
            rep = self.skeleton.rep_of(P)
            y = min(y for y in rep if w_in.apply(y) == x)
            local = next(i for i, tile in enumerate(entry.tiles) if y in tile)
            coords[depth - 1] = entry.offset + local + 1
            P = w_in.image_set(entry.tiles[local])
            if x not in P:
                raise InternalError("encoding lost track of the state")
        return tuple(coords)

    # -- lifting -----------------------------------------------------------

    def lift(self, s: Transformation) -> Cascade:
        """Cascade emulating s: decode(act(lift(s), c)) == decode(c)^s."""
        if s.degree != self.semigroup.degree:
            raise InputError("degree mismatch")
        if s not in self.skeleton._monoid:
            raise InputError("element does not belong to the semigroup")
        sizes = self.components.sizes
        deps: list[DependencyFunction] = []
        for depth in range(1, self.height + 1):
            mapping = {}
            for prefix in self.components.prefixes(depth):
                image_prefix = self._image_prefix(deps, prefix)
                value = self._dependency_value(s, depth, prefix, image_prefix)
                if value is not None and not value.is_identity():
                    mapping[prefix] = value
            deps.append(DependencyFunction.build(
                depth, sizes[:depth - 1], sizes[depth - 1], mapping))
        return Cascade(self.components, tuple(deps))

    def _image_prefix(self, deps: Sequence[DependencyFunction],
                      prefix: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(
            deps[j].evaluate(prefix[:j]).apply(prefix[j])
            for j in range(len(prefix)))

    def _dependency_value(self, s: Transformation, depth: int,
                          prefix: tuple[int, ...],
                          image_prefix: tuple[int, ...]) -> Transformation | None:
        """Level action moving the source walk's tiles under the image walk.

        P is the member in hand on the source side, Q on the image side; the
        construction maintains P^s as a subset of Q.  When both are active the
        value permutes/maps tile indices of P's representative to covering
        tile indices of Q's representative; when only Q is active a constant
        map selects the tile covering P^s; otherwise the identity suffices.
        """
        P = self._walk(prefix)
        Q = self._walk(image_prefix)
        entry_p = self._active_entry(P, depth)
        entry_q = self._active_entry(Q, depth)
        if entry_q is None:
            return None
        w_in_q = self.skeleton.in_transformation(Q)
        if entry_p is None:
            covered = s.image_set(P)
            target = self._covering_tile(entry_q, w_in_q, covered)
            point = entry_q.offset + target + 1
            return Transformation((point,) * self.components.sizes[depth - 1])
        w_in_p = self.skeleton.in_transformation(P)
        n = self.components.sizes[depth - 1]
        k = len(entry_p.tiles)
        images = []
        local_target: dict[int, int] = {}
        for point in range(1, n + 1):
            local = (point - entry_p.offset - 1) % k
            if local not in local_target:
                covered = s.image_set(w_in_p.image_set(entry_p.tiles[local]))
                local_target[local] = self._covering_tile(
                    entry_q, w_in_q, covered)
            images.append(entry_q.offset + local_target[local] + 1)
        return Transformation(tuple(images))

    def _covering_tile(self, entry: LevelEntry, w_in: Transformation,
                       covered: frozenset[int]) -> int:
        for i, tile in enumerate(entry.tiles):
            if covered <= w_in.image_set(tile):
                return i
        raise InternalError("no tile covers the image; lift construction broken")

    def cascade_semigroup(self, cap: int = DEFAULT_ELEMENT_CAP
                          ) -> CascadeProductSemigroup:
        lifts = [self.lift(g) for g in self.semigroup.generators]
        return generate(self.components, lifts, cap)

    # -- reporting ---------------------------------------------------------

    def components_display(self) -> str:
        """One line per depth, e.g. '3: (2,C2) 2' for a C2 over two tiles."""
        lines = []
        for level in self.levels:
            parts = []
            for entry in level.entries:
                count = len(entry.tiles)
                if entry.group.order() > 1:
                    parts.append(f"({count},{structure_name(entry.group)})")
                else:
                    parts.append(str(count))
            lines.append(f"{level.depth}: " + " ".join(parts))
        return "\n".join(lines)

    def points(self) -> tuple[int, ...]:
        return self.components.sizes


def holonomy_cascade_semigroup(semigroup: TransformationSemigroup,
                               cap: int = DEFAULT_ELEMENT_CAP
                               ) -> CascadeProductSemigroup:
    """Cascade semigroup generated by the lifted generators."""
    return HolonomyDecomposition(semigroup).cascade_semigroup(cap)
