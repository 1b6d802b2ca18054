"""Cellular homology of real isotropic and orthogonal Grassmannians of types B, C and D."""

from .chain import ChainComplex, HomologyGroup, build_complex, homology, smith_normal_form
from .shapes import DoublePartition, GrassmannianSpec, enumerate_cells, partition_to_permutation
from .weyl import Root, SignedPermutation

__all__ = [
    "ChainComplex",
    "DoublePartition",
    "GrassmannianSpec",
    "HomologyGroup",
    "Root",
    "SignedPermutation",
    "build_complex",
    "enumerate_cells",
    "homology",
    "partition_to_permutation",
    "smith_normal_form",
]
