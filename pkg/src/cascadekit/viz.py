"""Deterministic DOT emitters for cascades and skeleton tilings.

Output is byte-identical for identical inputs: nodes and edges are emitted
in sorted order and all naming is derived from the structures themselves.
Rendering is left to external tooling (graphviz dot).
"""

from __future__ import annotations

import itertools
import re

from .cascade import Cascade
from .core import Transformation, Word
from .holonomy import Skeleton, TileStructure, _member_key


def format_action(t: Transformation) -> str:
    """Cycle notation for permutations, image list otherwise; '' for identity."""
    if t.is_identity():
        return ""
    if t.is_permutation():
        return "".join(
            "(" + ",".join(str(x) for x in cyc) + ")" for cyc in t.cycles())
    return "[" + ",".join(str(x) for x in t.images) + "]"


def _format_word(word: Word) -> str:
    if not word:
        return "id"
    return ".".join(f"g{i}" for i in word)


def _prefix_id(prefix: tuple[int, ...]) -> str:
    return "n" + "".join(f"_{x}" for x in prefix)


def dot_dependency_tree(cascade: Cascade) -> str:
    """Rooted prefix tree: nodes carry component actions, edges carry states.

    Prefixes beyond the last level holding any stored dependency are omitted;
    subtrees holding no stored dependency at all are grayed out ("fixed").
    """
    sizes = cascade.components.sizes
    deepest = max((dep.level for dep in cascade.deps if len(dep)), default=1)

    stored = [frozenset(prefix for prefix, _ in dep.entries)
              for dep in cascade.deps]

    def subtree_has_entries(prefix: tuple[int, ...]) -> bool:
        for level0 in range(len(prefix), len(sizes)):
            if any(p[:len(prefix)] == prefix for p in stored[level0]):
                return True
        return False

    lines = ["digraph cascade {", "  node [shape=circle];"]
    for length in range(deepest):
        for prefix in itertools.product(
                *(range(1, n + 1) for n in sizes[:length])):
            label = format_action(cascade.deps[length].evaluate(prefix))
            attrs = f'label="{label}"'
            if not subtree_has_entries(prefix):
                attrs += ", color=gray, fontcolor=gray"
            lines.append(f'  "{_prefix_id(prefix)}" [{attrs}];')
    for length in range(deepest - 1):
        for prefix in itertools.product(
                *(range(1, n + 1) for n in sizes[:length])):
            for state in range(1, sizes[length] + 1):
                child = prefix + (state,)
                lines.append(
                    f'  "{_prefix_id(prefix)}" -> "{_prefix_id(child)}" '
                    f'[label="{state}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _set_id(P: frozenset[int]) -> str:
    return "s" + "".join(f"_{x}" for x in sorted(P))


def _set_label(P: frozenset[int]) -> str:
    return "{" + ",".join(str(x) for x in sorted(P)) + "}"


def dot_tiling(skeleton: Skeleton, tiles: TileStructure) -> str:
    """Tiling picture: one cluster per equivalence class, edges to tiles.

    Edge labels carry a word transporting the member onto the tile when one
    exists; edges to tiles that are not images of the state set are dotted.
    The singleton level is included even though it is not a cascade level.
    """
    sk = skeleton
    class_ids = sorted(
        sk.classes,
        key=lambda cid: (sk.depth_of(sk.reps[cid]), _member_key(sk.reps[cid])))

    lines = ["digraph tiling {", "  node [shape=box];"]
    for depth in range(1, sk.height + 2):
        style = 'shape=plaintext'
        lines.append(f'  "level_{depth}" [label="{depth}", {style}];')
    for depth in range(1, sk.height + 1):
        lines.append(
            f'  "level_{depth}" -> "level_{depth + 1}" [style=invis];')
    for cluster_index, cid in enumerate(class_ids):
        lines.append(f"  subgraph cluster_{cluster_index} {{")
        for P in sk.classes[cid]:
            lines.append(f'    "{_set_id(P)}" [label="{_set_label(P)}"];')
        lines.append("  }")
    for P in sk.members:
        for tile in tiles.tiles(P):
            word = sk._word_to(P, tile)
            label = _format_word(word) if word is not None else ""
            attrs = f'label="{label}"'
            if not sk.is_image(tile):
                attrs += ", style=dotted"
            lines.append(
                f'  "{_set_id(P)}" -> "{_set_id(tile)}" [{attrs}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


_NODE_RE = re.compile(r'^"([^"]+)"\s*\[([^\]]*)\];$')
_EDGE_RE = re.compile(r'^"([^"]+)"\s*->\s*"([^"]+)"\s*(?:\[([^\]]*)\])?;$')
_DEFAULT_RE = re.compile(r'^(node|edge|graph)\s*\[[^\]]*\];$')
_SUBGRAPH_RE = re.compile(r'^subgraph\s+(\w+)\s*\{$')


def parse_dot(text: str) -> tuple[dict[str, str], list[tuple[str, str, str]]]:
    """Minimal DOT grammar check; returns (nodes, edges).

    Accepts the subset this package emits: one digraph, quoted identifiers,
    bracketed attribute lists, and cluster subgraphs.  Raises ValueError on
    anything else, on unbalanced braces, or on edges to undeclared nodes.
    """
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines or not re.match(r"^digraph\s+\w+\s*\{$", lines[0]):
        raise ValueError("missing digraph header")
    depth = 1
    nodes: dict[str, str] = {}
    edges: list[tuple[str, str, str]] = []
    for line in lines[1:]:
        if depth == 0:
            raise ValueError("content after closing brace")
        if line == "}":
            depth -= 1
            continue
        if _SUBGRAPH_RE.match(line):
            depth += 1
            continue
        if _DEFAULT_RE.match(line):
            continue
        m = _EDGE_RE.match(line)
        if m:
            edges.append((m.group(1), m.group(2), m.group(3) or ""))
            continue
        m = _NODE_RE.match(line)
        if m:
            nodes[m.group(1)] = m.group(2)
            continue
        raise ValueError(f"unparseable statement: {line!r}")
    if depth != 0:
        raise ValueError("unbalanced braces")
    for src, dst, _ in edges:
        if src not in nodes or dst not in nodes:
            raise ValueError(f"edge references undeclared node: {src} -> {dst}")
    return nodes, edges
