"""Four-dimensional division algebras A(l, c) whose automorphism group
contains Klein's four-group, with exhaustive oracles over small finite fields.
"""

from .algebra import AlgebraSpec, Triple, q_c
from .budget import Budget, BudgetExceeded
from .classification import fq_classify, fq_transversal, standard_extension
from .fields import QQ, FieldError
from .finite_field import PrimePowerField, fq
from .quad_ext import QuadExt, gaussian_rationals

__version__ = "0.1.0"

__all__ = [
    "AlgebraSpec",
    "Budget",
    "BudgetExceeded",
    "FieldError",
    "PrimePowerField",
    "QQ",
    "QuadExt",
    "Triple",
    "fq",
    "fq_classify",
    "fq_transversal",
    "gaussian_rationals",
    "q_c",
    "standard_extension",
]
