"""Exact computations with cotorsion pairs, hearts, mutations and
localizations over bound quiver algebras of finite representation type."""

from .algebra import (
    AlgebraError,
    BoundQuiverAlgebra,
    IndecSet,
    Quiver,
    Rep,
    RepMap,
)
from .cotorsion import CotorsionPair, Inconclusive, Subcategory
from .heart import GabrielQuiver, HeartModel, QuotientCategory
from .mutation import (
    LocalizationModel,
    MutationInput,
    TwinData,
    right_mutation,
    verify_main_theorem,
)

__all__ = [
    "AlgebraError",
    "BoundQuiverAlgebra",
    "CotorsionPair",
    "GabrielQuiver",
    "HeartModel",
    "Inconclusive",
    "IndecSet",
    "LocalizationModel",
    "MutationInput",
    "Quiver",
    "QuotientCategory",
    "Rep",
    "RepMap",
    "Subcategory",
    "TwinData",
    "right_mutation",
    "verify_main_theorem",
]
