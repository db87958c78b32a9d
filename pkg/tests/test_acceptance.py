"""End-to-end acceptance suite.

Each test covers one acceptance criterion and prints a single PASS/FAIL
line (visible with ``pytest -s`` or in the captured output of a failure).
"""

import random
from collections import Counter

import pytest

from cascadekit import groups
from cascadekit.cascade import Cascade, ComponentList, generate, wreath_generators
from cascadekit.cli import main as cli_main
from cascadekit.core import Transformation, TransformationSemigroup, compose
from cascadekit.flg import FLDecomposition, SubgroupChain, fl_cascade_group
from cascadekit.holonomy import (HolonomyDecomposition, TileStructure,
                                 compute_skeleton, holonomy_cascade_semigroup)
from cascadekit.viz import dot_dependency_tree, dot_tiling, parse_dot

SWAP = Transformation((2, 1))


def report(number, label, ok):
    print(f"criterion {number} ({label}): {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {number} ({label}) failed"


@pytest.fixture(scope="module")
def emulation_semigroups(sample_semigroup):
    """The fixed and randomized semigroups shared by criteria 7 and 8."""
    pool = [sample_semigroup, groups.full_transformation_monoid(3)]
    rng = random.Random(2024)
    while len(pool) < 22:
        degree = rng.randint(2, 5)
        gens = [Transformation(tuple(rng.randint(1, degree)
                                     for _ in range(degree)))
                for _ in range(rng.randint(1, 3))]
        pool.append(TransformationSemigroup(gens))
    return pool


def emulation_violations(semigroup, rng, words=50):
    decomposition = HolonomyDecomposition(semigroup)
    lifts = [decomposition.lift(g) for g in semigroup.generators]
    decode = {c: decomposition.decode_tuple(c)
              for c in decomposition.components.state_tuples()}
    violations = 0
    for _ in range(words):
        word = [rng.randrange(len(lifts)) for _ in range(rng.randint(1, 6))]
        trans = Transformation.identity(semigroup.degree)
        for i in word:
            trans = trans * semigroup.generators[i]
        for start, x in decode.items():
            current = start
            for i in word:
                current = lifts[i].act(current)
            if decode[current] != trans.apply(x):
                violations += 1
    return violations


def test_criterion_1_mod4_counter(z2_pair, mod4_generator):
    product = generate(z2_pair, [mod4_generator])
    flat = mod4_generator.flatten()
    ok = (product.order() == 4
          and flat.is_permutation()
          and flat.cycles() == [(1, 3, 2, 4)])
    report(1, "mod-4 counter", ok)


def test_criterion_2_direct_product(z2_pair):
    gens = [Cascade.constant(z2_pair, [SWAP, Transformation.identity(2)]),
            Cascade.constant(z2_pair, [Transformation.identity(2), SWAP])]
    product = generate(z2_pair, gens)
    orders = Counter(c.flatten().element_order()[1] for c in product.elements())
    ok = product.order() == 4 and orders[4] == 0
    report(2, "direct product", ok)


def test_criterion_3_wreath_products(z2_pair, z2_triple):
    d4 = generate(z2_pair, wreath_generators(z2_pair))
    hist = Counter(c.flatten().element_order()[1] for c in d4.elements())
    big = generate(z2_triple, wreath_generators(z2_triple))
    ok = (d4.order() == 8 and hist == {1: 1, 2: 5, 4: 2}
          and big.order() == 128)
    report(3, "wreath products", ok)


def test_criterion_4_q8_composition(z2_triple, q8_cascades):
    d, dprime = q8_cascades
    product = generate(z2_triple, [d, dprime])
    hist = Counter(c.flatten().element_order()[1] for c in product.elements())
    flat_order = TransformationSemigroup(
        [d.flatten(), dprime.flatten()]).order()
    ok = (d.dependency_count == 4 and dprime.dependency_count == 3
          and product.order() == 8 and flat_order == 8 and hist[2] == 1)
    report(4, "quaternion composition", ok)


def test_criterion_5_coset_chain_q8():
    q8 = groups.quaternion()
    i = q8.generators[0]
    chain = SubgroupChain.from_generator_lists(
        8, [list(q8.generators), [i], [i * i]])
    decomposition = FLDecomposition(q8, chain)
    cascade_group = fl_cascade_group(q8, chain)
    roundtrip = all(decomposition.decode(decomposition.coordinates(g)) == g
                    for g in q8.elements())
    ok = (decomposition.components.sizes == (2, 2, 2)
          and cascade_group.order() == 8 and roundtrip)
    report(5, "coset-chain decomposition", ok)


def test_criterion_6_holonomy_golden_output(sample_semigroup):
    decomposition = HolonomyDecomposition(sample_semigroup)
    ok = (sample_semigroup.order() == 13
          and decomposition.height == 3
          and decomposition.points() == (2, 2, 4)
          and decomposition.components_display() == "1: 2\n2: 2\n3: (2,C2) 2")
    report(6, "holonomy golden output", ok)


def test_criterion_7_emulation_suite(emulation_semigroups):
    rng = random.Random(99)
    t3_ok = emulation_semigroups[1].order() == 27
    violations = sum(emulation_violations(s, rng)
                     for s in emulation_semigroups)
    report(7, "holonomy emulation suite", t3_ok and violations == 0)


def test_criterion_8_structural_properties(z2_triple, q8_cascades,
                                           emulation_semigroups):
    ok = True

    d, dprime = q8_cascades
    for a in (d, dprime):
        for b in (d, dprime):
            ok &= (a * b).flatten() == compose(a.flatten(), b.flatten())
    elems = list(generate(z2_triple, [d, dprime]).elements())
    ok &= len({c.flatten() for c in elems}) == len(elems)

    for semigroup in emulation_semigroups:
        skeleton = compute_skeleton(semigroup)
        tiles = TileStructure(skeleton)
        monoid = semigroup.monoid_elements()
        for member in skeleton.members:
            if len(member) == 1:
                continue
            tile_set = set(tiles.tiles(member))
            ok &= frozenset().union(*tile_set) == member
            for s in monoid:
                if s.image_set(member) == member:
                    ok &= {s.image_set(t) for t in tile_set} == tile_set

    for group in (groups.cyclic(4), groups.symmetric(3),
                  groups.dihedral_square(), groups.quaternion()):
        decomposition = FLDecomposition(group)
        decoded = {decomposition.decode(c)
                   for c in decomposition.components.state_tuples()}
        ok &= decoded == set(group.elements())

    report(8, "structural property suites", bool(ok))


def test_criterion_9_dot_emitters(q8_cascades, sample_semigroup):
    d, _ = q8_cascades
    tree = dot_dependency_tree(d)
    skeleton = compute_skeleton(sample_semigroup)
    tiles = TileStructure(skeleton)
    tiling = dot_tiling(skeleton, tiles)

    tree_nodes, _ = parse_dot(tree)
    action_nodes = [n for n, attrs in tree_nodes.items()
                    if 'label=""' not in attrs]
    _, tiling_edges = parse_dot(tiling)
    tile_pairs = sum(len(tiles.tiles(P)) for P in skeleton.members)
    member_edges = [e for e in tiling_edges if e[0].startswith("s")]

    ok = (len(action_nodes) == d.dependency_count
          and len(member_edges) == tile_pairs == 10
          and tree == dot_dependency_tree(d)
          and tiling == dot_tiling(compute_skeleton(sample_semigroup),
                                   TileStructure(skeleton)))
    report(9, "deterministic DOT emitters", ok)
