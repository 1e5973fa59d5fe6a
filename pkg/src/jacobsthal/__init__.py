"""Exact character sums over finite fields of odd characteristic.

Submodules, bottom up: ``field`` (F_q tables), ``cyclo`` (exact values in
Q(zeta_{q-1}) via prime embeddings), ``characters``, ``charsums``,
``hypergeom``, ``curves`` and ``verify`` (identity checkers and sweeps).
"""
from .characters import Character, CharacterGroup, HypothesisError
from .cyclo import CycloValue, EmbeddingMismatch
from .field import FieldError, FieldTable, build_field

__all__ = [
    "Character", "CharacterGroup", "CycloValue", "EmbeddingMismatch", "FieldError",
    "FieldTable", "HypothesisError", "build_field",
]
__version__ = "0.1.0"
