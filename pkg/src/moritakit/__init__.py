"""Exact computations with small linear categories.

Morita equivalence via full faithfulness and additive generation, saturations
(additive hulls and idempotent completions), explicit pushouts and cylinders,
Azumaya algebras and Brauer classes, and Galois descent with corestriction.
"""
from __future__ import annotations

from .algebras import Algebra, Bimodule, matrix_algebra, quaternion_algebra
from .lincat import KCategory, KFunctor, functor_iso_test, tensor_product
from .morita import is_morita_equivalence, mapping_cylinder
from .scalars import GF4, GF9, QI, QQ, gf

__all__ = [
    "Algebra", "Bimodule", "GF4", "GF9", "KCategory", "KFunctor", "QI", "QQ", "functor_iso_test", "gf",
    "is_morita_equivalence", "mapping_cylinder", "matrix_algebra", "quaternion_algebra", "tensor_product",
]

__version__ = "0.1.0"
