"""Additive quaternary codes, their line families in PG(m-1, 2), and exhaustive searches."""

from .code import (
    AdditiveCode,
    BinaryLinearCode,
    WeightDistribution,
    bb_linearity_test,
    concatenate_322,
    griesmer_bound,
    min_distance,
    shorten,
    strength,
    symplectic_dual,
    weight_distribution,
)
from .geometry import CodeObject, ObjectFamily, code_from_family, family_from_code, family_strength
from .linalg2 import BinMatrix, BitVector, F4Elem, F4Vector

__version__ = "0.1.0"
