"""
模运算与经典指数和测试
"""

import math
import sys
import unittest
from fractions import Fraction
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from jacsum.kernels.errors import InvalidArgumentError, NotInvertibleError, UnsupportedModulusError
from jacsum.kernels.modarith import (
    Residue,
    UnitRootSum,
    compensated_row_sums,
    completed_kloosterman,
    completion_check,
    divisors,
    e,
    epsilon,
    euler_phi,
    factorize,
    gauss_closed_form,
    gauss_sum,
    incomplete_kloosterman,
    jacobi_symbol,
    kloosterman,
    mobius,
    mod_inverse,
    num_divisors,
    quadratic_phase_sum,
    ramanujan_brute,
    ramanujan_sum,
    salie_closed_form,
    salie_sum,
    selberg_check,
    square_roots,
)

try:
    import mpmath
except ImportError:
    mpmath = None


class TestResidues(unittest.TestCase):
    """Residue 与基本数论函数"""

    def test_residue_must_be_reduced(self):
        with self.assertRaises(InvalidArgumentError):
            Residue(5, 3)
        with self.assertRaises(InvalidArgumentError):
            Residue(0, 0)
        self.assertEqual(Residue.of(-1, 5), Residue(4, 5))
        self.assertEqual(int(Residue.of(17, 5)), 2)

    def test_mod_inverse(self):
        self.assertEqual(mod_inverse(3, 7), Residue(5, 7))
        self.assertEqual(mod_inverse(-2, 9), Residue(4, 9))
        self.assertEqual(mod_inverse(12, 1), Residue(0, 1))
        with self.assertRaises(NotInvertibleError):
            mod_inverse(2, 4)

    def test_multiplicative_functions(self):
        self.assertEqual(factorize(360), ((2, 3), (3, 2), (5, 1)))
        self.assertEqual(factorize(1), ())
        self.assertEqual(euler_phi(36), 12)
        self.assertEqual(euler_phi(1), 1)
        self.assertEqual(mobius(30), -1)
        self.assertEqual(mobius(12), 0)
        self.assertEqual(num_divisors(36), 9)
        self.assertEqual(divisors(12), [1, 2, 3, 4, 6, 12])

    def test_jacobi_symbol_values(self):
        self.assertEqual(jacobi_symbol(2, 15), 1)
        self.assertEqual(jacobi_symbol(3, 5), -1)
        self.assertEqual(jacobi_symbol(5, 15), 0)
        self.assertEqual(jacobi_symbol(-1, 7), -1)
        self.assertEqual(jacobi_symbol(123, 1), 1)

    def test_jacobi_symbol_is_multiplicative(self):
        for n in range(1, 60, 2):
            for a in range(-10, 11):
                for b in range(-6, 7):
                    self.assertEqual(jacobi_symbol(a * b, n), jacobi_symbol(a, n) * jacobi_symbol(b, n))

    def test_jacobi_symbol_matches_squares_mod_prime(self):
        for p in (3, 5, 7, 11, 13):
            squares = {x * x % p for x in range(1, p)}
            for a in range(1, p):
                self.assertEqual(jacobi_symbol(a, p), 1 if a in squares else -1)

    def test_jacobi_symbol_rejects_even_modulus(self):
        for n in (0, 4, -3):
            with self.assertRaises(InvalidArgumentError):
                jacobi_symbol(1, n)

    def test_e_reduces_exactly(self):
        self.assertAlmostEqual(e(1, 4), 1j, places=15)
        self.assertAlmostEqual(e(Fraction(5, 4)), 1j, places=15)
        self.assertAlmostEqual(e(-1, 2), -1, places=15)
        self.assertEqual(e(10**30, 1), 1)

    def test_unit_root_sum_errors(self):
        a = UnitRootSum(1 + 1j, 1e-12)
        b = UnitRootSum(2, 1e-12)
        self.assertGreaterEqual((a + b).err, 2e-12)
        self.assertAlmostEqual((a * b).value, 2 + 2j)
        self.assertTrue(a.agrees_with(UnitRootSum(1 + 1j + 5e-13, 0.0)))
        with self.assertRaises(InvalidArgumentError):
            UnitRootSum(0, -1.0)


class TestGaussSums(unittest.TestCase):
    """Gauss 和"""

    def test_small_values(self):
        self.assertAlmostEqual(gauss_sum(1, 5).value, math.sqrt(5), places=12)
        self.assertAlmostEqual(gauss_sum(1, 3).value, 1j * math.sqrt(3), places=12)
        self.assertAlmostEqual(gauss_sum(2, 3).value, -1j * math.sqrt(3), places=12)
        self.assertAlmostEqual(gauss_sum(5, 1).value, 1, places=12)

    def test_closed_form(self):
        for c in range(1, 62, 2):
            for a in range(1, c + 1):
                if math.gcd(a, c) == 1:
                    self.assertLess(abs(gauss_sum(a, c).value - gauss_closed_form(a, c).value), 1e-9)

    def test_errors(self):
        with self.assertRaises(UnsupportedModulusError):
            gauss_sum(1, 4)
        with self.assertRaises(InvalidArgumentError):
            gauss_sum(3, 9)
        with self.assertRaises(UnsupportedModulusError):
            epsilon(8)

    def test_quadratic_phase_sum_even_modulus(self):
        # sum over lambda mod 2 of e(lambda^2/2) = 1 + e(1/2) = 0
        self.assertAlmostEqual(abs(quadratic_phase_sum(1, 0, 2).value), 0, places=14)
        # completing the square: linear term shifts the sum by a phase
        for c in (7, 9, 15):
            shifted = quadratic_phase_sum(1, 2, c).value
            self.assertAlmostEqual(abs(shifted), abs(gauss_sum(1, c).value), places=10)


class TestKloostermanFamily(unittest.TestCase):
    """Kloosterman、Salié、Ramanujan 和及其恒等式"""

    def test_kloosterman_values(self):
        self.assertAlmostEqual(kloosterman(1, 1, 1).value, 1)
        self.assertAlmostEqual(kloosterman(0, 0, 12).value, 4)
        self.assertAlmostEqual(kloosterman(1, 1, 5).value, 2 + 2 * math.cos(4 * math.pi / 5), places=12)

    def test_kloosterman_is_real_and_weil_bounded(self):
        for c in (7, 11, 13, 101):
            for a, b in ((1, 1), (2, 5), (3, 7)):
                value = kloosterman(a, b, c).value
                self.assertLess(abs(value.imag), 1e-9)
                self.assertLessEqual(abs(value), 2 * math.sqrt(c) + 1e-9)

    @unittest.skipUnless(mpmath, "mpmath not installed")
    def test_kloosterman_against_high_precision(self):
        mpmath.mp.dps = 30
        c = 101
        exact = mpmath.fsum(
            mpmath.exp(2j * mpmath.pi * ((3 * x + 7 * pow(x, -1, c)) % c) / c) for x in range(1, c)
        )
        got = kloosterman(3, 7, c)
        self.assertLess(abs(complex(exact) - got.value), got.err + 1e-13)

    def test_square_roots(self):
        self.assertEqual(square_roots(1, 15), [1, 4, 11, 14])
        self.assertEqual(square_roots(2, 5), [])

    def test_salie_closed_form(self):
        for c in range(1, 46, 2):
            for a in (1, 2, 4, 7):
                for b in (1, 3, 5, 8):
                    if math.gcd(a * b, c) != 1:
                        continue
                    self.assertTrue(
                        salie_sum(a, b, c).agrees_with(salie_closed_form(a, b, c), slack=1e-9),
                        f"a={a}, b={b}, c={c}",
                    )

    def test_salie_closed_form_needs_coprime_product(self):
        with self.assertRaises(InvalidArgumentError):
            salie_closed_form(1, 3, 9)

    def test_ramanujan_closed_form(self):
        self.assertEqual(ramanujan_sum(1, 30), -1)
        self.assertEqual(ramanujan_sum(0, 12), 4)
        self.assertEqual(ramanujan_sum(3, 12), 0)
        self.assertEqual(ramanujan_sum(6, 12), -4)
        for c in range(1, 61):
            for a in range(c):
                brute = ramanujan_brute(a, c)
                self.assertLessEqual(abs(brute.value - ramanujan_sum(a, c)), brute.err + 1e-9)

    def test_selberg_identity(self):
        for c in range(1, 13):
            for y in range(c):
                for a in range(c):
                    self.assertTrue(selberg_check(y, a, c), f"y={y}, a={a}, c={c}")


class TestCompensatedSums(unittest.TestCase):
    """按行的补偿求和"""

    def test_cancellation_is_recovered(self):
        rows = np.array([[1e16, 1.0, -1e16, 1.0, 0.5], [1.0, 1e-16, 1e-16, -1.0, 0.0]], dtype=np.complex128)
        rows[0] *= 1j
        got = compensated_row_sums(rows)
        self.assertEqual(got[0], 2.5j)
        self.assertEqual(got[1], 2e-16)

    def test_matches_fsum(self):
        rng = np.random.default_rng(7)
        rows = rng.standard_normal((9, 257)) * 10.0 ** rng.integers(-8, 9, (9, 257))
        values = rows + 1j * rows[::-1]
        got = compensated_row_sums(values)
        for i in range(9):
            self.assertAlmostEqual(got[i].real, math.fsum(values[i].real.tolist()), delta=1e-14 * 1e8)
            self.assertAlmostEqual(got[i].imag, math.fsum(values[i].imag.tolist()), delta=1e-14 * 1e8)

    def test_shapes(self):
        self.assertEqual(compensated_row_sums(np.zeros((3, 0))).tolist(), [0, 0, 0])
        self.assertEqual(compensated_row_sums(np.ones((2, 1))).tolist(), [1, 1])
        with self.assertRaises(InvalidArgumentError):
            compensated_row_sums(np.ones(4))


class TestCompletion(unittest.TestCase):
    """不完全 Kloosterman 和的补全"""

    def test_full_period_is_complete_sum(self):
        # x running over one full period with t = 1 gives the Ramanujan sum of a
        got = incomplete_kloosterman(5, 12, 0, 1, 0, 12)
        self.assertAlmostEqual(got.value, ramanujan_sum(5, 12), places=10)

    def test_empty_range(self):
        self.assertEqual(incomplete_kloosterman(1, 7, 0, 1, 3, 0).value, 0)
        self.assertAlmostEqual(abs(completed_kloosterman(1, 7, 0, 1, 3, 0).value), 0, places=12)

    def test_completion_identity(self):
        for c in (5, 9, 12, 17):
            for t in (1, 2, 3):
                for start, length in ((0, 4), (2, c), (-7, 3 * c)):
                    self.assertTrue(completion_check(2, c, 1, t, start, length), f"c={c}, t={t}")

    def test_progression_rejects_bad_step(self):
        with self.assertRaises(InvalidArgumentError):
            incomplete_kloosterman(1, 7, 0, 0, 0, 5)


if __name__ == "__main__":
    unittest.main()
