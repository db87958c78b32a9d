"""Command-line front-end: compose, flatten, decompose, emit DOT, self-check.

Input documents are JSON.  Transformations are 1-based image arrays; cascade
dependency entries are {"prefix": [...], "image": [...]} pairs, a prefix of
length L binding level L+1.  Exit codes: 0 success, 1 input error,
2 resource-cap error, 3 property violation.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Any, Sequence

from . import cascade as casc
from .cascade import Cascade, ComponentList, DEFAULT_FLAT_CAP
from .core import (DEFAULT_ELEMENT_CAP, Transformation,
                   TransformationSemigroup, compose)
from .errors import CapExceededError, CascadeKitError, InputError
from .flg import FLDecomposition, SubgroupChain, default_chain
from .holonomy import MAX_HOLONOMY_DEGREE, HolonomyDecomposition
from .viz import dot_dependency_tree, dot_tiling

DEFAULT_SEED = 1


# -- document parsing --------------------------------------------------------

def _parse_transformation(data: Any, where: str,
                          degree: int | None = None) -> Transformation:
    if not isinstance(data, list) or not all(isinstance(v, int) for v in data):
        raise InputError(f"{where}: expected an image array of integers")
    try:
        t = Transformation(tuple(data))
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from exc
    if degree is not None and t.degree != degree:
        raise InputError(f"{where}: degree {t.degree}, expected {degree}")
    return t


def _parse_generators(data: Any, where: str, *, bijective: bool,
                      cap: int) -> TransformationSemigroup:
    if not isinstance(data, list) or not data:
        raise InputError(f"{where}: nonempty generator list required")
    gens = [_parse_transformation(item, f"{where}[{i}]")
            for i, item in enumerate(data)]
    degree = gens[0].degree
    for i, g in enumerate(gens):
        if g.degree != degree:
            raise InputError(f"{where}[{i}]: degree {g.degree}, expected {degree}")
        if bijective and not g.is_permutation():
            raise InputError(f"{where}[{i}]: not a permutation")
    return TransformationSemigroup(gens, cap=cap)


def parse_semigroup_document(doc: Any, cap: int) -> TransformationSemigroup:
    kind = doc.get("kind")
    if kind not in ("semigroup", "group"):
        raise InputError(f"kind: expected 'semigroup' or 'group', got {kind!r}")
    return _parse_generators(doc.get("generators"), "generators",
                             bijective=(kind == "group"), cap=cap)


def parse_cascade_document(doc: Any, cap: int) -> tuple[ComponentList, list[Cascade]]:
    if doc.get("kind") != "cascade":
        raise InputError(f"kind: expected 'cascade', got {doc.get('kind')!r}")
    comps_data = doc.get("components")
    if not isinstance(comps_data, list) or not comps_data:
        raise InputError("components: nonempty list required")
    comps = []
    for i, item in enumerate(comps_data):
        where = f"components[{i}]"
        if not isinstance(item, dict):
            raise InputError(f"{where}: expected an object")
        points = item.get("points")
        sgp = _parse_generators(item.get("generators"), f"{where}.generators",
                                bijective=False, cap=cap)
        if not isinstance(points, int) or points != sgp.degree:
            raise InputError(f"{where}.points: must equal the generator degree")
        comps.append(sgp)
    components = ComponentList.of(*comps)
    cascades_data = doc.get("cascades")
    if not isinstance(cascades_data, list) or not cascades_data:
        raise InputError("cascades: nonempty list required")
    cascades = []
    for i, item in enumerate(cascades_data):
        where = f"cascades[{i}]"
        deps = item.get("dependencies") if isinstance(item, dict) else None
        if not isinstance(deps, list):
            raise InputError(f"{where}.dependencies: list required")
        pairs = []
        for j, entry in enumerate(deps):
            ewhere = f"{where}.dependencies[{j}]"
            if not isinstance(entry, dict):
                raise InputError(f"{ewhere}: expected an object")
            prefix = entry.get("prefix")
            if not isinstance(prefix, list) or \
                    not all(isinstance(v, int) for v in prefix):
                raise InputError(f"{ewhere}.prefix: integer array required")
            level = len(prefix) + 1
            if level > len(components):
                raise InputError(
                    f"{ewhere}.prefix: length {len(prefix)} binds level "
                    f"{level}, but only {len(components)} levels exist")
            image = _parse_transformation(
                entry.get("image"), f"{ewhere}.image",
                degree=components.sizes[level - 1])
            pairs.append((tuple(prefix), image))
        try:
            cascades.append(Cascade.from_pairs(components, pairs))
        except InputError as exc:
            raise InputError(f"{where}: {exc}") from exc
    return components, cascades


def parse_chain_document(doc: Any, cap: int) -> SubgroupChain:
    if doc.get("kind") != "chain":
        raise InputError(f"kind: expected 'chain', got {doc.get('kind')!r}")
    groups_data = doc.get("groups")
    if not isinstance(groups_data, list) or not groups_data:
        raise InputError("groups: nonempty list required (outermost first)")
    generator_lists = []
    degree = None
    for i, gens in enumerate(groups_data):
        sgp = _parse_generators(gens, f"groups[{i}]", bijective=True, cap=cap)
        if degree is None:
            degree = sgp.degree
        generator_lists.append(list(sgp.generators))
    return SubgroupChain.from_generator_lists(degree, generator_lists)


def cascades_to_document(components: ComponentList,
                         cascades: Sequence[Cascade]) -> dict:
    return {
        "kind": "cascade",
        "components": [
            {"points": n, "generators": [list(g.images) for g in sgp.generators]}
            for n, sgp in components.levels],
        "cascades": [
            {"dependencies": [
                {"prefix": list(prefix), "image": list(value.images)}
                for dep in c.deps for prefix, value in dep.entries]}
            for c in cascades],
    }


def _load(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from exc


# -- subcommands -------------------------------------------------------------

def _points_phrase(sizes: Sequence[int]) -> str:
    return f"({', '.join(str(n) for n in sizes)}) pts"


def cmd_compose(args) -> int:
    components, cascades = parse_cascade_document(_load(args.file),
                                                  args.cap_elements)
    product = casc.generate(components, cascades, cap=args.cap_elements)
    print(f"cascade semigroup with {len(cascades)} generators, "
          f"{len(components)} levels with {_points_phrase(components.sizes)}")
    for i, c in enumerate(cascades, start=1):
        print(f"generator {i}: {c.dependency_count} dependencies")
    print(f"order {product.order()}")
    return 0


def cmd_flatten(args) -> int:
    _, cascades = parse_cascade_document(_load(args.file), args.cap_elements)
    for c in cascades:
        print(list(c.flatten(cap=args.cap_flat_degree).images))
    return 0


def cmd_decompose_holonomy(args) -> int:
    semigroup = parse_semigroup_document(_load(args.file), args.cap_elements)
    decomposition = HolonomyDecomposition(semigroup)
    print(f"{decomposition.height} levels with "
          f"{_points_phrase(decomposition.points())}")
    print(decomposition.components_display())
    if args.dot_tiling:
        with open(args.dot_tiling, "w", encoding="utf-8") as fh:
            fh.write(dot_tiling(decomposition.skeleton,
                                decomposition.tile_structure))
    if args.emit_cascade:
        lifts = [decomposition.lift(g) for g in semigroup.generators]
        doc = cascades_to_document(decomposition.components, lifts)
        with open(args.emit_cascade, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    return 0


def cmd_decompose_flg(args) -> int:
    doc = _load(args.file)
    if doc.get("kind") != "group":
        raise InputError("flg decomposition requires a 'group' document")
    group = parse_semigroup_document(doc, args.cap_elements)
    chain = None
    if args.chain:
        chain = parse_chain_document(_load(args.chain), args.cap_elements)
    decomposition = FLDecomposition(group, chain)
    cascade_group = decomposition.cascade_group(cap=args.cap_elements)
    print(f"{decomposition.levels} levels with "
          f"{_points_phrase(decomposition.components.sizes)}")
    print(f"order {cascade_group.order()}")
    return 0


def cmd_dot_tree(args) -> int:
    _, cascades = parse_cascade_document(_load(args.file), args.cap_elements)
    for c in cascades:
        sys.stdout.write(dot_dependency_tree(c))
    return 0


def cmd_dot_tiling(args) -> int:
    semigroup = parse_semigroup_document(_load(args.file), args.cap_elements)
    decomposition = HolonomyDecomposition(semigroup)
    sys.stdout.write(dot_tiling(decomposition.skeleton,
                                decomposition.tile_structure))
    return 0


# -- self-check property suite ------------------------------------------------

def _check_semigroup(semigroup: TransformationSemigroup,
                     rng: random.Random, report) -> bool:
    ok = True
    elements = list(semigroup.elements())

    for elem, word in semigroup.elements().items():
        if semigroup.word_transformation(word) != elem:
            ok = report("witness word does not evaluate to its element")
    sample = elements if len(elements) <= 30 else rng.sample(elements, 30)
    for a in sample:
        for b in sample:
            if a * b not in semigroup:
                ok = report("enumeration is not closed under composition")
            for c in sample[:5]:
                if (a * b) * c != a * (b * c):
                    ok = report("associativity violated")

    if semigroup.degree <= MAX_HOLONOMY_DEGREE and semigroup.degree >= 2:
        decomposition = HolonomyDecomposition(semigroup)
        lifts = {g: decomposition.lift(g) for g in semigroup.generators}
        decode = {c: decomposition.decode_tuple(c)
                  for c in decomposition.components.state_tuples()}
        for _ in range(20):
            word = [rng.randrange(len(semigroup.generators))
                    for _ in range(rng.randint(1, 6))]
            trans = Transformation.identity(semigroup.degree)
            for i in word:
                trans = trans * semigroup.generators[i]
            for start in decode:
                current = start
                for i in word:
                    current = lifts[semigroup.generators[i]].act(current)
                if decode[current] != trans.apply(decode[start]):
                    ok = report("holonomy emulation violated")

    if semigroup.is_group() and semigroup.order() > 1:
        decomposition = FLDecomposition(semigroup)
        seen = {decomposition.decode(c)
                for c in decomposition.components.state_tuples()}
        if len(seen) != semigroup.order():
            ok = report("coset coordinates are not a bijection")
        for g in semigroup.generators:
            enc = decomposition.encode(g)
            for u in elements:
                if enc.act(decomposition.coordinates(u)) != \
                        decomposition.coordinates(u * g):
                    ok = report("coset cascade does not emulate multiplication")
    return ok


def _check_cascades(components: ComponentList, cascades: Sequence[Cascade],
                    rng: random.Random, report) -> bool:
    ok = True
    for a in cascades:
        for b in cascades:
            if (a * b).flatten() != compose(a.flatten(), b.flatten()):
                ok = report("flatten is not a homomorphism")
    if components.flat_degree <= 4096:
        for c in cascades:
            flat = c.flatten()
            for x in components.state_tuples():
                if components.encode(c.act(x)) != flat.apply(components.encode(x)):
                    ok = report("act and flatten disagree")
    for c in cascades:
        for dep in c.deps:
            if any(value.is_identity() for _, value in dep.entries):
                ok = report("cascade stores an identity dependency value")
    return ok


def cmd_check(args) -> int:
    doc = _load(args.file)
    rng = random.Random(args.seed)
    failures: list[str] = []

    def report(message: str) -> bool:
        failures.append(message)
        return False

    kind = doc.get("kind")
    if kind in ("semigroup", "group"):
        semigroup = parse_semigroup_document(doc, args.cap_elements)
        _check_semigroup(semigroup, rng, report)
    elif kind == "cascade":
        components, cascades = parse_cascade_document(doc, args.cap_elements)
        _check_cascades(components, cascades, rng, report)
    else:
        raise InputError(f"cannot check document of kind {kind!r}")

    if failures:
        for message in sorted(set(failures)):
            print(f"FAIL: {message}")
        return 3
    print("all checks passed")
    return 0


# -- entry point --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cascadekit",
        description="Cascade (de)compositions of transformation semigroups "
                    "and permutation groups.")
    parser.add_argument("--cap-elements", type=int, default=DEFAULT_ELEMENT_CAP,
                        help="element-count cap for enumerations")
    parser.add_argument("--cap-flat-degree", type=int, default=DEFAULT_FLAT_CAP,
                        help="cap on the flattened state-set size")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for randomized self-checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compose", help="generate a cascade product from a cascade document")
    p.add_argument("file")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("flatten", help="print flat image arrays of cascades")
    p.add_argument("file")
    p.set_defaults(func=cmd_flatten)

    p = sub.add_parser("decompose", help="decompose a semigroup or group")
    dsub = p.add_subparsers(dest="method", required=True)
    ph = dsub.add_parser("holonomy", help="holonomy decomposition")
    ph.add_argument("file")
    ph.add_argument("--dot-tiling", metavar="PATH",
                    help="also write the tiling picture as DOT")
    ph.add_argument("--emit-cascade", metavar="PATH",
                    help="also write the lifted generators as a cascade "
                         "document")
    ph.set_defaults(func=cmd_decompose_holonomy)
    pf = dsub.add_parser(
        "flg",
        help="coset-chain (Frobenius-Lagrange) decomposition; the default "
             "chain is a pruned point-stabilizer chain, not a chief series — "
             "supply --chain to control the components")
    pf.add_argument("file")
    pf.add_argument("--chain", metavar="FILE",
                    help="subgroup chain document (outermost group first)")
    pf.set_defaults(func=cmd_decompose_flg)

    p = sub.add_parser("dot", help="emit DOT to stdout")
    vsub = p.add_subparsers(dest="what", required=True)
    pt = vsub.add_parser("tree", help="cascade dependency tree")
    pt.add_argument("file")
    pt.set_defaults(func=cmd_dot_tree)
    pg = vsub.add_parser("tiling", help="holonomy tiling picture")
    pg.add_argument("file")
    pg.set_defaults(func=cmd_dot_tiling)

    p = sub.add_parser("check", help="run the property self-checks on an input")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CapExceededError as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return 2
    except CascadeKitError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
