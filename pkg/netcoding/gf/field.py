"""
Arithmetic in GF(2^m) for m in {1, 4, 8}.

Elements are integers 0..q-1 in polynomial basis. Addition is XOR;
multiplication goes through exponent/logarithm tables of a primitive
element, and a full q x q product table is kept for vectorised work on
numpy uint8 arrays.
"""
from functools import lru_cache

import numpy as np

from ..exceptions import DomainError

# Reduction polynomials (x is primitive for each).
REDUCTION_POLYNOMIALS = {
    1: 0b11,        # x + 1
    4: 0x13,        # x^4 + x + 1
    8: 0x11D,       # x^8 + x^4 + x^3 + x^2 + 1
}

SUPPORTED_SIZES = (2, 16, 256)


class FieldContext:
    """
    Lookup tables for one field GF(2^m).

    Instances are immutable and shared; build them with ``for_degree`` or
    ``for_size`` so each field is constructed once per process.
    """

    def __init__(self, m):
        if m not in REDUCTION_POLYNOMIALS:
            raise DomainError(f"unsupported field degree m={m}; expected one of 1, 4, 8")
        self.m = m
        self.q = 1 << m
        self.polynomial = REDUCTION_POLYNOMIALS[m]

        order = self.q - 1
        exp = np.zeros(2 * order, dtype=np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & self.q:
                x ^= self.polynomial
        exp[order:] = exp[:order]
        self.exp_table = exp
        self.log_table = log

        elements = np.arange(self.q)
        mul = np.zeros((self.q, self.q), dtype=np.uint8)
        nz = elements[1:]
        mul[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % order]
        self.mul_table = mul
        mul.setflags(write=False)

        inv = np.zeros(self.q, dtype=np.uint8)
        inv[1:] = exp[(order - log[nz]) % order]
        self.inv_table = inv
        inv.setflags(write=False)

    def __repr__(self):
        return f"FieldContext(GF({self.q}))"

    @classmethod
    def for_degree(cls, m):
        return _field_for_degree(m)

    @classmethod
    def for_size(cls, q):
        if q not in SUPPORTED_SIZES:
            raise DomainError(f"unsupported field size q={q}; expected one of 2, 16, 256")
        return _field_for_degree(q.bit_length() - 1)

    # ------------------------------------------------------------------
    # Scalar operations
    # ------------------------------------------------------------------

    def check(self, *elements):
        for a in elements:
            if not 0 <= int(a) < self.q:
                raise DomainError(f"{a} is not an element of GF({self.q})")

    def add(self, a, b):
        self.check(a, b)
        return int(a) ^ int(b)

    def mul(self, a, b):
        self.check(a, b)
        return int(self.mul_table[int(a), int(b)])

    def inv(self, a):
        self.check(a)
        if int(a) == 0:
            raise DomainError("zero has no multiplicative inverse")
        return int(self.inv_table[int(a)])

    def power(self, a, n):
        self.check(a)
        if int(a) == 0:
            return 0 if n > 0 else 1
        return int(self.exp_table[(int(self.log_table[int(a)]) * n) % (self.q - 1)])

    # ------------------------------------------------------------------
    # Vector operations on uint8 arrays
    # ------------------------------------------------------------------

    def scale(self, c, vector):
        """Multiply every entry of ``vector`` by the scalar ``c``."""
        return self.mul_table[int(c), np.asarray(vector, dtype=np.uint8)]

    def combine(self, coefficients, rows):
        """Return sum_k coefficients[k] * rows[k] (a row vector)."""
        rows = np.asarray(rows, dtype=np.uint8)
        coefficients = np.asarray(coefficients, dtype=np.uint8)
        if rows.ndim != 2 or rows.shape[0] != coefficients.shape[0]:
            raise DomainError(
                f"cannot combine {coefficients.shape[0]} coefficients with rows of shape {rows.shape}"
            )
        if rows.shape[0] == 0:
            return np.zeros(rows.shape[1], dtype=np.uint8)
        products = self.mul_table[coefficients[:, None], rows]
        return np.bitwise_xor.reduce(products, axis=0)

    def matmul(self, a, b):
        """Matrix product over the field."""
        a = np.asarray(a, dtype=np.uint8)
        b = np.asarray(b, dtype=np.uint8)
        if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
            raise DomainError(f"shape mismatch in product: {a.shape} x {b.shape}")
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.uint8)
        for k in range(a.shape[1]):
            out ^= self.mul_table[a[:, k][:, None], b[k][None, :]]
        return out

    def random_elements(self, rng, size):
        """Uniform field elements (zero included) drawn from ``rng``."""
        return rng.integers(0, self.q, size=size, dtype=np.uint8)


@lru_cache(maxsize=None)
def _field_for_degree(m):
    return FieldContext(m)
