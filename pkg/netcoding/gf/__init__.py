"""
Finite fields GF(2^m), m in {1, 4, 8}, and dense linear algebra over them.
"""
from .field import FieldContext, REDUCTION_POLYNOMIALS, SUPPORTED_SIZES
from .matrix import EchelonBasis, FieldMatrix, rank, row_reduce, solve
from .probability import random_invertibility_probability

__all__ = [
    'FieldContext',
    'REDUCTION_POLYNOMIALS',
    'SUPPORTED_SIZES',
    'FieldMatrix',
    'EchelonBasis',
    'row_reduce',
    'rank',
    'solve',
    'random_invertibility_probability',
]
