"""
素数加权和、双线性相位与终局指数测试
"""

import math
import os
import sys
import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

import pyarrow.csv as pacsv

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from jacsum.kernels.errors import (
    InvalidArgumentError,
    InvalidParamsError,
    OutOfRegimeError,
    PreconditionError,
)
from jacsum.kernels.hsums import IndexData
from jacsum.kernels.iwaniec import (
    DECAY_COLUMNS,
    P_GE_T_THRESHOLD,
    Regime,
    S_a_sum,
    after_p_exponents,
    as_rational,
    before_p_exponents,
    case_exponents,
    decay_report,
    endgame_delta,
    endgame_exponent,
    f_of_a_t,
    levelwise_S,
    omega,
    omega_array,
    primes_in_range,
    proof_params,
    simple_sieve,
    split_S,
    split_monotonicity,
    t_pieces,
    theorem_exponent,
    theorem_exponent_check,
    total_weight,
    weight_primes,
    weighted_S,
    write_decay_report,
)


class TestPrimeWeights(unittest.TestCase):
    """素数筛与权 omega"""

    def test_primes_in_range(self):
        self.assertEqual(primes_in_range(10, 30), [11, 13, 17, 19, 23, 29])
        self.assertEqual(primes_in_range(0, 10), [2, 3, 5, 7])
        self.assertEqual(primes_in_range(30, 10), [])

    def test_segmented_sieve_matches_simple_sieve(self):
        limit = 200_000
        expected = simple_sieve(limit).tolist()
        self.assertEqual(primes_in_range(2, limit), expected)
        self.assertEqual(
            primes_in_range(65_000, 140_000), [p for p in expected if 65_000 <= p <= 140_000]
        )

    def test_weight_primes(self):
        self.assertEqual(weight_primes(5, 1, -3), [5, 7])
        self.assertEqual(weight_primes(3, 1, -3), [5])
        self.assertEqual(weight_primes(7, 2, -23), [7, 11, 13])
        with self.assertRaises(InvalidArgumentError):
            weight_primes(1, 1, -3)

    def test_omega(self):
        self.assertAlmostEqual(omega(35, 5, 1, -3), math.log(35))
        self.assertEqual(omega(3, 3, 1, -3), 0)
        self.assertAlmostEqual(total_weight(5, 1, -3), math.log(35))
        weights = omega_array(150, 5, 1, -3)
        for c in range(1, 151):
            self.assertAlmostEqual(weights[c], omega(c, 5, 1, -3), places=12)
        with self.assertRaises(InvalidArgumentError):
            omega(0, 5, 1, -3)


class TestWeightedSums(unittest.TestCase):
    """加权 c-级数的两种求和次序与三分"""

    def test_weighted_matches_levelwise(self):
        for k, (m, n, r), P in ((4, (1, 1, 1), 5), (6, (2, 3, 1), 7)):
            index = IndexData(m, n, r)
            flat = weighted_S(k, index, P, 300)
            by_level = levelwise_S(k, index, P, 300)
            self.assertLessEqual(abs(flat.value - by_level.value), flat.err + by_level.err + 1e-10)

    def test_split_partitions_the_sum(self):
        index = IndexData(2, 3, 1)
        split = split_S(6, index, 7, 2, 40, x_max=200)
        whole = weighted_S(6, index, 7, 200)
        self.assertLessEqual(abs(split.total.value - whole.value), split.total.err + whole.err + 1e-12)
        self.assertGreater(split.sharp_tail, 0)
        self.assertEqual((split.C, split.K, split.x_max), (2, 40, 200))

    def test_default_secondary_cutoff(self):
        split = split_S(4, IndexData(1, 1, 1), 5, 1, 3)
        self.assertEqual(split.x_max, 12)

    def test_equal_cutoffs_leave_middle_empty(self):
        split = split_S(4, IndexData(1, 1, 1), 5, 3, 3, x_max=60)
        self.assertEqual(split.s_star.value, 0)
        self.assertEqual(t_pieces(4, IndexData(1, 1, 1), 5, 3, 3), {})

    def test_invalid_split_parameters(self):
        index = IndexData(1, 1, 1)
        for C, K in ((0, 3), (4, 5), (1, 2)):
            with self.assertRaises(InvalidParamsError):
                split_S(4, index, 5, C, K)
        with self.assertRaises(InvalidParamsError):
            split_S(4, index, 5, 1, 3, x_max=2)

    def test_split_monotonicity_is_reported(self):
        index = IndexData(2, 3, 1)
        with self.assertLogs("jacsum.kernels.iwaniec", level="INFO") as logs:
            report = split_monotonicity(6, index, 7, (1, 2, 4), (20, 40, 80), x_max=200)
        self.assertIn("split monotonicity", logs.output[-1])
        self.assertEqual([row["C"] for row in report["flat"]], [4, 2, 1])
        self.assertEqual([row["K"] for row in report["sharp"]], [20, 40, 80])
        flat = [row["abs_s_flat"] for row in report["flat"]]
        sharp = [row["abs_s_sharp"] for row in report["sharp"]]
        self.assertEqual(report["flat_decreasing"], all(b <= a for a, b in zip(flat, flat[1:])))
        self.assertEqual(report["sharp_decreasing"], all(b <= a for a, b in zip(sharp, sharp[1:])))
        split = split_S(6, index, 7, 2, 40, x_max=200)
        self.assertAlmostEqual(report["flat"][1]["abs_s_flat"], abs(split.s_flat.value), delta=1e-12)
        self.assertAlmostEqual(report["sharp"][1]["abs_s_sharp"], abs(split.s_sharp.value), delta=1e-12)

    def test_split_monotonicity_checks_cutoffs(self):
        index = IndexData(1, 1, 1)
        with self.assertRaises(InvalidParamsError):
            split_monotonicity(4, index, 5, (1, 4), (3,))
        with self.assertRaises(InvalidParamsError):
            split_monotonicity(4, index, 5, (), (3,))
        with self.assertRaises(InvalidParamsError):
            split_monotonicity(4, index, 5, (1,), (3, 6), x_max=4)

    def test_t_pieces_regroup_middle(self):
        index = IndexData(2, 3, 1)
        pieces = t_pieces(6, index, 7, 2, 40)
        self.assertTrue(set(pieces) <= {1, 2, 4})
        self.assertEqual(list(pieces), sorted(pieces))
        split = split_S(6, index, 7, 2, 40)
        regrouped = sum(piece.value for piece in pieces.values())
        err = sum(piece.err for piece in pieces.values()) + split.s_star.err
        self.assertLessEqual(abs(regrouped - split.s_star.value), err + 1e-12)


class TestBilinearPhase(unittest.TestCase):
    """f(a, t) 与 S_a 的分解"""

    def test_phase_congruences(self):
        for m, n, r in ((1, 1, 1), (2, 3, 1), (3, 5, 2)):
            index = IndexData(m, n, r)
            for a in range(1, 40):
                if math.gcd(a, 2 * m * index.D) != 1:
                    continue
                for t in (1, 2, 4, 6):
                    if math.gcd(a, t) != 1:
                        continue
                    for eps1 in (1, -1):
                        for eps2 in (1, -1):
                            f = f_of_a_t(index, a, t, eps1, eps2)
                            self.assertEqual(f.modulus, 2 * m * t * a)
                            self.assertEqual((f.value - 2 * eps2 * index.D) % a, 0)
                            self.assertEqual((f.value - eps2 * index.D - eps1 * r * r) % (2 * m * t), 0)
                            lifted = f_of_a_t(index, a, t, eps1, eps2, lift=3)
                            self.assertEqual(lifted, f)

    def test_phase_preconditions(self):
        index = IndexData(1, 1, 1)
        with self.assertRaises(PreconditionError):
            f_of_a_t(index, 3, 1, 1, 1)
        with self.assertRaises(PreconditionError):
            f_of_a_t(index, 5, 10, 1, 1)
        with self.assertRaises(InvalidArgumentError):
            f_of_a_t(index, 5, 1, 0, 1)

    def test_S_a_decomposition(self):
        index = IndexData(1, 1, 1)
        result = S_a_sum(index, 5, 2, 5, 400, 1, 1, 1, 5)
        self.assertTrue(result.termwise_ok)
        self.assertGreater(result.term_count, 0)
        self.assertAlmostEqual(result.omega_a, math.log(5))
        combined = result.v_a.value + result.omega_a * result.v_prime_a.value
        err = result.total.err + result.v_a.err + result.omega_a * result.v_prime_a.err
        self.assertLessEqual(abs(result.total.value - combined), err + 1e-9)
        self.assertLessEqual(abs(result.v_prime_a.value), result.term_count + 1e-9)

    def test_decay_report(self):
        index = IndexData(1, 1, 1)
        rows = decay_report(index, 7, (1, 3, 5, 7), (1, 2), (50, 100))
        self.assertEqual(len(rows), 12)
        self.assertNotIn(3, {row["a"] for row in rows})
        for row in rows:
            self.assertLessEqual(row["abs_v_a"], row["term_count"] * total_weight(7, 1, -3) + 1e-9)
        with tempfile.TemporaryDirectory() as tmp:
            path = write_decay_report(rows, os.path.join(tmp, "decay.csv"))
            table = pacsv.read_csv(path)
            self.assertEqual(tuple(table.column_names), DECAY_COLUMNS)
            self.assertEqual(table.num_rows, 12)


class TestEndgame(unittest.TestCase):
    """终局指数的精确有理数计算"""

    def test_named_points(self):
        result = endgame_exponent(0)
        self.assertEqual(result.delta, Fraction(1, 24))
        self.assertEqual(result.exponent, Fraction(-1, 24))
        self.assertEqual(result.regime, Regime.LOW)

        result = endgame_exponent("21/155")
        self.assertEqual(result.exponent, Fraction(-1, 31))
        self.assertEqual(result.regime, Regime.LOW)
        self.assertEqual(case_exponents(Fraction(21, 155)), (Fraction(-1, 31), Fraction(-1, 31)))

        result = endgame_exponent(Fraction(7, 25))
        self.assertEqual(result.exponent, 0)
        self.assertEqual(result.regime, Regime.HIGH)
        self.assertTrue(result.p_ge_t)

    def test_result_dict(self):
        data = endgame_exponent("1/10").as_dict()
        self.assertEqual(data["regime"], "LOW")
        self.assertEqual(data["p_ge_t_threshold"], P_GE_T_THRESHOLD)
        self.assertEqual(data["delta"], endgame_delta(Fraction(1, 10)))

    def test_proof_params(self):
        params = proof_params(0)
        self.assertEqual(params.p_exp, Fraction(7, 60))
        self.assertEqual((params.c_exp, params.k_exp, params.t_exp), (Fraction(23, 24), Fraction(25, 24), Fraction(1, 24)))
        with self.assertRaises(InvalidParamsError):
            proof_params("3/5")

    def test_term_exponents(self):
        params = proof_params(0)
        before = before_p_exponents(params)
        self.assertEqual(len(before), 4)
        self.assertEqual(before[0], Fraction(-1, 24))
        self.assertEqual(after_p_exponents(params), (Fraction(-1, 24), Fraction(-1, 16), Fraction(1, 24)))

    def test_out_of_regime(self):
        for sigma in ("3/10", "-1/10", Fraction(1, 2)):
            with self.assertRaises(OutOfRegimeError):
                endgame_exponent(sigma)
        with self.assertRaises(OutOfRegimeError):
            theorem_exponent("2/5")

    def test_rationals_only(self):
        self.assertEqual(as_rational("21/155"), Fraction(21, 155))
        self.assertEqual(as_rational(3), Fraction(3))
        for value in (0.1, "0.1", "1e-1", True, None, "abc"):
            with self.assertRaises(InvalidArgumentError):
                as_rational(value)

    def test_theorem_exponent_dominates(self):
        self.assertEqual(theorem_exponent(0), Fraction(-1, 24))
        self.assertEqual(theorem_exponent(Fraction(7, 25)), 0)
        for i in range(29):
            sigma = Fraction(i, 100)
            self.assertTrue(theorem_exponent_check(sigma), str(sigma))
            result = endgame_exponent(sigma)
            self.assertEqual(result.regime, Regime.LOW if sigma <= Fraction(21, 155) else Regime.HIGH)
            self.assertTrue(result.p_ge_t)


if __name__ == "__main__":
    unittest.main()
