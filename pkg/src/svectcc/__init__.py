"""Exact 2-category 2SVect_cc: objects are naturals n, 1-morphisms are
(rank matrix, normalized gauge) pairs, 2-morphisms are matrices of
matrices. Scalars are Gaussian rationals, so every law check is exact."""

from .bimorph import (
    CompositionError,
    GaugeError,
    OneMorphism,
    RankMatrix,
    TableGauge,
    TrivialGauge,
    compose1,
    gauge_eval,
    one_identity,
    perm_block,
)
from .exactmat import DimensionError, Mat, Scalar, SingularMatrixError
from .svect import MorphismTuple, functor_apply, gauge_extract, nat_component
from .twomorph import TwoMorphism, hcompose, kv_hcompose, two_identity, vcompose

__version__ = "0.1.0"

__all__ = [
    "CompositionError",
    "DimensionError",
    "GaugeError",
    "Mat",
    "MorphismTuple",
    "OneMorphism",
    "RankMatrix",
    "Scalar",
    "SingularMatrixError",
    "TableGauge",
    "TrivialGauge",
    "TwoMorphism",
    "compose1",
    "functor_apply",
    "gauge_eval",
    "gauge_extract",
    "hcompose",
    "kv_hcompose",
    "nat_component",
    "one_identity",
    "perm_block",
    "two_identity",
    "vcompose",
]
