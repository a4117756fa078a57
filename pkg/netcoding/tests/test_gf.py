import itertools
import math

import numpy as np
from django.test import SimpleTestCase, tag

from netcoding.exceptions import DomainError
from netcoding.gf import (
    EchelonBasis,
    FieldContext,
    FieldMatrix,
    random_invertibility_probability,
    rank,
    row_reduce,
    solve,
)


class FieldArithmeticTests(SimpleTestCase):
    def setUp(self):
        self.gf256 = FieldContext.for_size(256)
        self.gf16 = FieldContext.for_size(16)
        self.gf2 = FieldContext.for_size(2)

    def test_contexts_are_shared(self):
        self.assertIs(FieldContext.for_size(256), FieldContext.for_degree(8))

    def test_unsupported_size_is_rejected(self):
        with self.assertRaises(DomainError):
            FieldContext.for_size(8)

    def test_small_products(self):
        self.assertEqual(self.gf256.mul(2, 3), 6)
        self.assertEqual(self.gf256.mul(0x80, 2), 0x1D)
        self.assertEqual(self.gf16.mul(0x8, 0x2), 0x3)
        self.assertEqual(self.gf2.mul(1, 1), 1)

    def test_addition_is_xor(self):
        self.assertEqual(self.gf256.add(0x53, 0xCA), 0x53 ^ 0xCA)

    def test_every_nonzero_element_has_an_inverse(self):
        for field in (self.gf2, self.gf16, self.gf256):
            for a in range(1, field.q):
                self.assertEqual(field.mul(a, field.inv(a)), 1)

    def test_zero_has_no_inverse(self):
        with self.assertRaises(DomainError):
            self.gf256.inv(0)

    def test_out_of_range_element(self):
        with self.assertRaises(DomainError):
            self.gf16.mul(16, 1)

    def test_multiplication_table_is_commutative_and_distributive(self):
        mul = self.gf16.mul_table.astype(int)
        np.testing.assert_array_equal(mul, mul.T)
        for a, b, c in itertools.product(range(16), repeat=3):
            self.assertEqual(mul[a, b ^ c], mul[a, b] ^ mul[a, c])

    def test_field_axioms_on_random_triples(self):
        rng = np.random.default_rng(12)
        for field in (self.gf2, self.gf16, self.gf256):
            with self.subTest(q=field.q):
                mul = field.mul_table
                a, b, c = field.random_elements(rng, (3, 5000))
                np.testing.assert_array_equal(mul[mul[a, b], c], mul[a, mul[b, c]])
                np.testing.assert_array_equal(mul[a, b], mul[b, a])
                np.testing.assert_array_equal(mul[a, b ^ c], mul[a, b] ^ mul[a, c])

    def test_power_matches_repeated_multiplication(self):
        x = 1
        for n in range(10):
            self.assertEqual(self.gf256.power(3, n), x)
            x = self.gf256.mul(x, 3)

    def test_combine_matches_scalar_loop(self):
        rng = np.random.default_rng(4)
        rows = self.gf256.random_elements(rng, (5, 7))
        coefficients = self.gf256.random_elements(rng, 5)
        expected = np.zeros(7, dtype=np.uint8)
        for c, row in zip(coefficients, rows):
            for i, v in enumerate(row):
                expected[i] ^= self.gf256.mul(int(c), int(v))
        np.testing.assert_array_equal(self.gf256.combine(coefficients, rows), expected)

    def test_matmul_with_identity(self):
        rng = np.random.default_rng(5)
        a = self.gf16.random_elements(rng, (3, 4))
        np.testing.assert_array_equal(self.gf16.matmul(a, np.eye(4, dtype=np.uint8)), a)


class MatrixTests(SimpleTestCase):
    def setUp(self):
        self.field = FieldContext.for_size(256)

    def test_identity_is_already_reduced(self):
        reduced, pivots = row_reduce(self.field, FieldMatrix.identity(3))
        np.testing.assert_array_equal(reduced, np.eye(3, dtype=np.uint8))
        self.assertEqual(pivots, [0, 1, 2])

    def test_rank_of_dependent_rows(self):
        row = np.array([1, 2, 3], dtype=np.uint8)
        doubled = self.field.scale(2, row)
        self.assertEqual(rank(self.field, [row, doubled, [0, 0, 1]]), 2)

    def test_rank_of_zero_matrix(self):
        self.assertEqual(rank(self.field, FieldMatrix.zeros(3, 4)), 0)

    def test_solve_recovers_messages(self):
        rng = np.random.default_rng(11)
        messages = self.field.random_elements(rng, (4, 6))
        while True:
            a = self.field.random_elements(rng, (4, 4))
            if rank(self.field, a) == 4:
                break
        b = self.field.matmul(a, messages)
        solution = solve(self.field, a, b)
        np.testing.assert_array_equal(solution.entries, messages)

    def test_solve_flags_singular_systems(self):
        a = [[1, 2], [1, 2]]
        self.assertIsNone(solve(self.field, a, [[1], [1]]))

    def test_field_matrix_equality(self):
        self.assertEqual(FieldMatrix.from_rows([[1, 2]]), FieldMatrix.from_rows([[1, 2]]))
        self.assertNotEqual(FieldMatrix.from_rows([[1, 2]]), FieldMatrix.from_rows([[2, 1]]))


class BruteForceRankTests(SimpleTestCase):
    def span_size(self, matrix):
        vectors = set()
        for coefficients in itertools.product((0, 1), repeat=matrix.shape[0]):
            vectors.add(tuple(np.bitwise_xor.reduce(matrix[np.array(coefficients, dtype=bool)], axis=0)))
        return len(vectors)

    def test_rank_matches_span_enumeration_over_gf2(self):
        field = FieldContext.for_size(2)
        rng = np.random.default_rng(8)
        for rows, cols in itertools.product(range(1, 5), repeat=2):
            for _ in range(10):
                matrix = field.random_elements(rng, (rows, cols))
                with self.subTest(matrix=matrix.tolist()):
                    self.assertEqual(2 ** rank(field, matrix), self.span_size(matrix))


class EchelonBasisTests(SimpleTestCase):
    def setUp(self):
        self.field = FieldContext.for_size(16)

    def test_insert_reports_innovation(self):
        basis = EchelonBasis(self.field, 3)
        self.assertTrue(basis.insert([1, 1, 0]))
        self.assertTrue(basis.insert([0, 1, 1]))
        self.assertFalse(basis.insert([1, 0, 1]))
        self.assertEqual(basis.rank, 2)
        self.assertTrue(basis.contains([1, 0, 1]))

    def test_pivot_limit_ignores_payload_columns(self):
        basis = EchelonBasis(self.field, 4, pivot_limit=2)
        self.assertTrue(basis.insert([1, 0, 5, 6]))
        self.assertFalse(basis.insert([0, 0, 7, 7]))

    def test_widen_keeps_existing_rows(self):
        basis = EchelonBasis(self.field, 2)
        basis.insert([1, 1])
        self.assertTrue(basis.insert([0, 0, 1]))
        self.assertEqual(basis.width, 3)
        self.assertEqual(basis.rank, 2)

    def test_copy_is_independent(self):
        basis = EchelonBasis(self.field, 2)
        basis.insert([1, 0])
        clone = basis.copy()
        clone.insert([0, 1])
        self.assertEqual(basis.rank, 1)
        self.assertEqual(clone.rank, 2)

    def test_membership_certificate(self):
        basis = EchelonBasis(self.field, 3)
        self.assertTrue(basis.spans([0, 0, 0]))
        self.assertFalse(basis.spans([0, 1, 0]))
        basis.insert([1, 2, 0])
        basis.insert([0, 1, 5])
        self.assertTrue(basis.is_reduced())
        rows = np.array([[1, 2, 0], [0, 1, 5]], dtype=np.uint8)
        combined = self.field.combine(np.array([3, 7], dtype=np.uint8), rows)
        self.assertTrue(basis.spans(combined))
        self.assertFalse(basis.spans([0, 0, 1]))


class InvertibilityProbabilityTests(SimpleTestCase):
    def brute_force(self, q, k, n):
        field = FieldContext.for_size(q)
        total = 0
        full = 0
        for entries in itertools.product(range(q), repeat=k * n):
            total += 1
            matrix = np.array(entries, dtype=np.uint8).reshape(k, n)
            full += rank(field, matrix) == k
        return full / total

    def test_known_value_for_three_by_three_binary(self):
        self.assertAlmostEqual(random_invertibility_probability(2, 3, 3), 21 / 64, places=12)

    def test_brute_force_enumeration_for_small_binary_matrices(self):
        for k in range(1, 4):
            self.assertAlmostEqual(self.brute_force(2, k, k), random_invertibility_probability(2, k, k), places=12)

    def test_extra_columns_make_full_rank_likely(self):
        self.assertGreater(random_invertibility_probability(256, 20, 10), 0.999999)

    def test_too_few_columns_is_a_domain_error(self):
        with self.assertRaises(DomainError):
            random_invertibility_probability(2, 2, 3)

    def test_empty_product_is_one(self):
        self.assertEqual(random_invertibility_probability(2, 3, 0), 1.0)

    @tag('acceptance')
    def test_monte_carlo_frequency_matches_product(self):
        rng = np.random.default_rng(2024)
        samples = 100_000
        for q, k, n in ((2, 3, 3), (2, 3, 5), (256, 10, 10)):
            field = FieldContext.for_size(q)
            hits = sum(
                rank(field, field.random_elements(rng, (k, n))) == k
                for _ in range(samples)
            )
            p = random_invertibility_probability(q, n, k)
            stderr = math.sqrt(p * (1 - p) / samples)
            self.assertLessEqual(abs(hits / samples - p), 3 * stderr + 1e-12)
