import pytest

from cascadekit import groups
from cascadekit.cascade import generate
from cascadekit.core import Transformation, compose
from cascadekit.errors import InputError
from cascadekit.flg import (FLDecomposition, SubgroupChain, default_chain,
                            fl_cascade_group)


def q8_chain():
    """Q8 > <i> > <i^2> > 1 on the 8-point representation."""
    q8 = groups.quaternion()
    i = q8.generators[0]
    return q8, SubgroupChain.from_generator_lists(
        8, [list(q8.generators), [i], [i * i]])


class TestSubgroupChain:
    def test_valid_chain(self):
        _, chain = q8_chain()
        assert len(chain) == 3
        assert [g.order() for g in chain.groups] == [8, 4, 2, 1]

    def test_trivial_group_appended(self):
        z4 = groups.cyclic(4)
        chain = SubgroupChain.from_generator_lists(
            4, [list(z4.generators), [Transformation.from_cycles(4, (1, 3), (2, 4))]])
        assert chain.groups[-1].order() == 1

    def test_non_subgroup_rejected(self):
        z4 = groups.cyclic(4)
        outsider = Transformation.from_cycles(4, (1, 2))
        with pytest.raises(InputError, match="not a subgroup"):
            SubgroupChain.from_generator_lists(
                4, [list(z4.generators), [outsider]])

    def test_non_strict_rejected(self):
        z4 = groups.cyclic(4)
        with pytest.raises(InputError, match="strict"):
            SubgroupChain([z4, z4, groups.trivial(4)])

    def test_trivial_start_rejected(self):
        with pytest.raises(InputError):
            SubgroupChain([groups.trivial(3), groups.trivial(3)])


class TestDefaultChain:
    def test_z4_prunes_to_two_steps(self):
        chain = default_chain(groups.cyclic(4))
        assert [g.order() for g in chain.groups] == [4, 1]

    def test_s3(self):
        chain = default_chain(groups.symmetric(3))
        assert [g.order() for g in chain.groups] == [6, 2, 1]
        decomposition = FLDecomposition(groups.symmetric(3), chain)
        assert decomposition.components.sizes == (3, 2)

    def test_trivial_rejected(self):
        with pytest.raises(InputError):
            default_chain(groups.trivial(2))

    def test_non_group_rejected(self):
        from cascadekit.core import TransformationSemigroup
        with pytest.raises(InputError):
            default_chain(TransformationSemigroup([Transformation((1, 1))]))


@pytest.fixture(scope="module")
def z4_decomposition():
    z4 = groups.cyclic(4)
    half = Transformation.from_cycles(4, (1, 3), (2, 4))
    chain = SubgroupChain.from_generator_lists(
        4, [list(z4.generators), [half]])
    return FLDecomposition(z4, chain)


class TestTransversals:

    def test_sizes_are_indices(self, z4_decomposition):
        assert [len(t) for t in z4_decomposition.transversals] == [2, 2]

    def test_identity_listed_first(self, z4_decomposition):
        for transversal in z4_decomposition.transversals:
            assert transversal[0].is_identity()

    def test_reps_fix_themselves(self, z4_decomposition):
        for level0, transversal in enumerate(z4_decomposition.transversals):
            for idx, t in enumerate(transversal):
                assert z4_decomposition._rep_index[level0][t] == idx

    def test_same_coset(self, z4_decomposition):
        # u and its representative differ by an element of the subgroup
        chain = z4_decomposition.chain
        for level0, transversal in enumerate(z4_decomposition.transversals):
            subgroup = chain.groups[level0 + 1]
            for u in chain.groups[level0].elements():
                rep = transversal[z4_decomposition._rep_index[level0][u]]
                assert u * rep.inverse() in subgroup

    def test_component_is_coset_action(self, z4_decomposition):
        assert z4_decomposition.components.sizes == (2, 2)
        for _, component in z4_decomposition.components.levels:
            assert component.order() == 2

    def test_subgroup_fixes_identity_coset(self, z4_decomposition):
        # elements of H_i stabilize the coset of the identity representative
        half = z4_decomposition.chain.groups[1]
        for h in half.elements():
            perm = z4_decomposition._action_perm(0, h)
            assert perm.apply(1) == 1


class TestCoordinates:
    def test_all_first_indices_decode_to_identity(self):
        q8, chain = q8_chain()
        decomposition = FLDecomposition(q8, chain)
        assert decomposition.decode((1, 1, 1)).is_identity()

    def test_decode_coordinates_roundtrip_q8(self):
        q8, chain = q8_chain()
        decomposition = FLDecomposition(q8, chain)
        for g in q8.elements():
            assert decomposition.decode(decomposition.coordinates(g)) == g

    def test_lagrange_bijection(self):
        for group in (groups.cyclic(4), groups.symmetric(3),
                      groups.dihedral_square(), groups.quaternion()):
            decomposition = FLDecomposition(group)
            decoded = {decomposition.decode(c)
                       for c in decomposition.components.state_tuples()}
            assert len(decoded) == group.order()
            assert decoded == set(group.elements())


class TestEncode:
    def test_identity_encodes_to_identity_cascade(self):
        q8, chain = q8_chain()
        decomposition = FLDecomposition(q8, chain)
        identity = Transformation.identity(8)
        assert decomposition.encode(identity).dependency_count == 0

    def test_level_one_constant(self):
        q8, chain = q8_chain()
        decomposition = FLDecomposition(q8, chain)
        for g in q8.generators:
            top = decomposition.encode(g).deps[0]
            assert top.arity == 0
            assert len(top) <= 1

    def test_q8_levels_and_order(self):
        q8, chain = q8_chain()
        cascade_group = fl_cascade_group(q8, chain)
        assert cascade_group.levels == 3
        assert cascade_group.components.sizes == (2, 2, 2)
        assert cascade_group.order() == 8

    def test_emulates_right_multiplication(self):
        for group in (groups.cyclic(4), groups.symmetric(3)):
            decomposition = FLDecomposition(group)
            elements = list(group.elements())
            for g in elements:
                encoded = decomposition.encode(g)
                for u in elements:
                    assert encoded.act(decomposition.coordinates(u)) == \
                        decomposition.coordinates(u * g)

    def test_flatten_homomorphism(self):
        group = groups.symmetric(3)
        decomposition = FLDecomposition(group)
        elements = list(group.elements())
        for g in elements:
            for h in elements:
                assert compose(decomposition.encode(g).flatten(),
                               decomposition.encode(h).flatten()) == \
                    decomposition.encode(g * h).flatten()

    def test_outsider_rejected(self):
        group = groups.cyclic(4)
        decomposition = FLDecomposition(group)
        with pytest.raises(InputError):
            decomposition.encode(Transformation.from_cycles(4, (1, 2)))


class TestOrderPreservation:
    @pytest.mark.parametrize("make", [
        groups.cyclic(4).generators,
        groups.symmetric(3).generators,
        groups.dihedral_square().generators,
        groups.quaternion().generators,
    ], ids=["Z4", "S3", "D4", "Q8"])
    def test_cascade_group_order(self, make):
        from cascadekit.core import TransformationSemigroup
        group = TransformationSemigroup(make)
        decomposition = FLDecomposition(group)
        gens = [decomposition.encode(g) for g in group.generators]
        assert generate(decomposition.components, gens).order() == group.order()


class TestZ4Carry:
    def test_reproduces_mod4_counter_structure(self):
        z4 = groups.cyclic(4)
        half = Transformation.from_cycles(4, (1, 3), (2, 4))
        chain = SubgroupChain.from_generator_lists(
            4, [list(z4.generators), [half]])
        cascade_group = fl_cascade_group(z4, chain)
        assert cascade_group.components.sizes == (2, 2)
        assert cascade_group.order() == 4
        # the generator's image has a constant top and a carry below
        generator = cascade_group.generators[0]
        assert generator.deps[0].arity == 0
        assert len(generator.deps[1]) == 1
