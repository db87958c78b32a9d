"""Cascade products of finite transformation semigroups and permutation
groups: composition, coset-chain and holonomy decompositions, DOT output."""

from .cascade import (Cascade, CascadeProductSemigroup, ComponentList,
                      DependencyFunction, compose_cascades, constant_cascade,
                      generate, wreath_generators)
from .core import Transformation, TransformationSemigroup, compose
from .errors import (CapExceededError, CascadeKitError, InputError,
                     InternalError)
from .flg import (FLDecomposition, SubgroupChain, default_chain,
                  fl_cascade_group)
from .holonomy import (HolonomyDecomposition, Skeleton, TileStructure,
                       compute_skeleton, holonomy_cascade_semigroup,
                       holonomy_group)
from .viz import dot_dependency_tree, dot_tiling, parse_dot

__all__ = [
    "Cascade", "CascadeProductSemigroup", "ComponentList",
    "DependencyFunction", "compose_cascades", "constant_cascade", "generate",
    "wreath_generators", "Transformation", "TransformationSemigroup",
    "compose", "CapExceededError", "CascadeKitError", "InputError",
    "InternalError", "FLDecomposition", "SubgroupChain", "default_chain",
    "fl_cascade_group", "HolonomyDecomposition", "Skeleton", "TileStructure",
    "compute_skeleton", "holonomy_cascade_semigroup", "holonomy_group",
    "dot_dependency_tree", "dot_tiling", "parse_dot",
]

__version__ = "0.1.0"
