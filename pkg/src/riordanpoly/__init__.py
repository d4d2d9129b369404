"""Exact Riordan arrays, their polynomial sequences and generalized Appell families."""

from .appell import AppellSeq, Weight, weighted_sequence
from .polyseq import Polynomial, PolySeq, sequence_from_spec
from .riordan import RiordanSpec, Triangle, build_triangle, product, recover_spec
from .series import Series

__all__ = [
    "AppellSeq",
    "Polynomial",
    "PolySeq",
    "RiordanSpec",
    "Series",
    "Triangle",
    "Weight",
    "build_triangle",
    "product",
    "recover_spec",
    "sequence_from_spec",
    "weighted_sequence",
]
