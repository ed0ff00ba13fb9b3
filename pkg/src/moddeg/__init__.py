"""moddeg: exact module degeneration, Hom-order and Galois descent toolkit."""

__version__ = "0.1.0"

from .fields import (
    FieldElem,
    FieldTower,
    PrimeBase,
    RationalBase,
    SeparabilityIdempotent,
    make_tower,
    prime_field,
    rationals,
    separability_idempotent,
)

__all__ = [
    "FieldElem",
    "FieldTower",
    "PrimeBase",
    "RationalBase",
    "SeparabilityIdempotent",
    "make_tower",
    "prime_field",
    "rationals",
    "separability_idempotent",
]
