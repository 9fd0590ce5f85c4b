"""Fast DCT-4 and DCT-2 algorithms derived by splitting polynomial algebras
over the exact real tower Q ⊂ Q[√2] ⊂ Q[√(2+√2)] ⊂ ..."""

from .chebyshev import cheb, factor_step, factor_tower, roots_of
from .executor import OpCount, apply, count_ops, materialize, oracle, verify
from .field import DyadicRational, FieldElement, lift, tower_level, two_cos
from .galois import fixed_field_generator, galois_group, subgroup_chain
from .planner import (TransformPlan, make_plan, plan_dct2, plan_dct2_poly, plan_dct4,
                      plan_dct4_poly)

__version__ = "0.1.0"

__all__ = [
    "cheb", "factor_step", "factor_tower", "roots_of",
    "OpCount", "apply", "count_ops", "materialize", "oracle", "verify",
    "DyadicRational", "FieldElement", "lift", "tower_level", "two_cos",
    "fixed_field_generator", "galois_group", "subgroup_chain",
    "TransformPlan", "make_plan", "plan_dct2", "plan_dct2_poly", "plan_dct4", "plan_dct4_poly",
]
