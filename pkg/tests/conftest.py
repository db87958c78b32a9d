import pytest

from cascadekit import groups
from cascadekit.cascade import Cascade, ComponentList
from cascadekit.core import Transformation, TransformationSemigroup

SWAP = Transformation((2, 1))


@pytest.fixture(scope="session")
def sample_semigroup():
    """The 13-element semigroup T = <[3,2,4,4], [3,3,1,3]>."""
    return TransformationSemigroup(
        [Transformation((3, 2, 4, 4)), Transformation((3, 3, 1, 3))])


@pytest.fixture(scope="session")
def z2_pair():
    z2 = groups.cyclic(2)
    return ComponentList.of(z2, z2)


@pytest.fixture(scope="session")
def z2_triple():
    z2 = groups.cyclic(2)
    return ComponentList.of(z2, z2, z2)


@pytest.fixture(scope="session")
def mod4_generator(z2_pair):
    """Constant swap on top, carry below: c(1)=id, c(2)=swap."""
    return Cascade.from_pairs(z2_pair, [((), SWAP), ((2,), SWAP)])


@pytest.fixture(scope="session")
def q8_cascades(z2_triple):
    """The two quaternion generator cascades with 4 and 3 dependencies."""
    d = Cascade.from_pairs(
        z2_triple, [((1,), SWAP), ((2,), SWAP), ((1, 1), SWAP), ((2, 2), SWAP)])
    dprime = Cascade.from_pairs(
        z2_triple, [((), SWAP), ((1, 1), SWAP), ((1, 2), SWAP)])
    return d, dprime
