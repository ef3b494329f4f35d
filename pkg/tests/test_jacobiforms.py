"""
Jacobi 形式系数表测试
"""

import os
import sys
import tempfile
import unittest
from pathlib import Path

import pyarrow.csv as pacsv
import pyarrow.parquet as pq

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from jacsum.kernels.errors import CutoffExceededError, InvalidArgumentError, UnsupportedOrderError
from jacsum.kernels.jacobiforms import (
    coeff,
    coeff_by_discriminant,
    eta_power,
    phi_cusp,
    phi_cusp_series,
    phi_weak,
    table_from_series,
    write_table,
    zeta_one_sums,
)

# Ramanujan tau(1..4)
TAU = (1, -24, 252, -1472)


class TestWeakForms(unittest.TestCase):
    """弱 Jacobi 形式 phi_{-2,1}, phi_{0,1}"""

    def test_phi_minus_two(self):
        table = phi_weak(-2, 4)
        self.assertEqual([coeff(table, 0, r) for r in (-1, 0, 1)], [1, -2, 1])
        self.assertEqual([coeff(table, 1, r) for r in (0, 1, 2)], [-12, 8, -2])
        self.assertFalse(table.cusp)

    def test_phi_zero(self):
        table = phi_weak(0, 4)
        self.assertEqual([coeff(table, 0, r) for r in (-1, 0, 1)], [1, 10, 1])
        self.assertEqual([coeff(table, 1, r) for r in (0, 1, 2)], [108, -64, 10])
        sums = zeta_one_sums(table)
        self.assertEqual(sums[0], 12)
        for n in range(1, 5):
            self.assertEqual(sums[n], 0)

    def test_bad_arguments(self):
        with self.assertRaises(InvalidArgumentError):
            phi_weak(2, 4)
        with self.assertRaises(InvalidArgumentError):
            phi_weak(0, 0)
        with self.assertRaises(UnsupportedOrderError):
            eta_power(3, 5)


class TestCuspForms(unittest.TestCase):
    """尖形式 phi_{10,1}, phi_{12,1}"""

    @classmethod
    def setUpClass(cls):
        cls.phi10 = phi_cusp(10, 6)
        cls.phi12 = phi_cusp(12, 6)

    def test_leading_coefficients(self):
        self.assertEqual([coeff(self.phi10, 1, r) for r in (0, 1)], [-2, 1])
        self.assertEqual([coeff(self.phi12, 1, r) for r in (0, 1)], [10, 1])
        self.assertEqual([coeff(self.phi10, 2, r) for r in (0, 1, 2)], [36, -16, -2])
        self.assertEqual([coeff(self.phi12, 2, r) for r in (0, 1, 2)], [-132, -88, 10])
        self.assertEqual(coeff(self.phi10, 0, 0), 0)

    def test_symmetry_and_discriminant_class(self):
        for table in (self.phi10, self.phi12):
            for (n, r), value in table.c.items():
                self.assertEqual(coeff(table, n, -r), value)
                self.assertEqual(coeff_by_discriminant(table, 4 * n - r * r), value, f"({n}, {r})")

    def test_elliptic_shift(self):
        tables = (phi_weak(-2, 6), phi_weak(0, 6), self.phi10, self.phi12)
        for table in tables:
            width = 2 * table.max_n + 2
            for n in range(table.max_n + 1):
                for r in range(-width, width + 1):
                    if n + r + 1 > table.max_n:
                        continue
                    self.assertEqual(
                        coeff(table, n, r),
                        coeff(table, n + r + 1, r + 2),
                        f"{table.name}: c({n}, {r}) vs c({n + r + 1}, {r + 2})",
                    )

    def test_coefficients_by_discriminant(self):
        discs = (3, 4, 7, 8, 11, 12, 15, 16)
        self.assertEqual(
            [coeff_by_discriminant(self.phi10, d) for d in discs], [1, -2, -16, 36, 99, -272, -240, 1056]
        )
        self.assertEqual(
            [coeff_by_discriminant(self.phi12, d) for d in discs], [1, 10, -88, -132, 1275, 736, -8040, -2880]
        )

    def test_discriminant_lookup(self):
        self.assertEqual(coeff_by_discriminant(self.phi10, 3), 1)
        self.assertEqual(coeff_by_discriminant(self.phi10, 4), -2)
        self.assertEqual(coeff_by_discriminant(self.phi10, 7), -16)
        self.assertEqual(coeff_by_discriminant(self.phi10, 1), 0)
        self.assertEqual(coeff_by_discriminant(self.phi10, 6), 0)

    def test_zeta_one_sums(self):
        sums12 = zeta_one_sums(self.phi12)
        sums10 = zeta_one_sums(self.phi10)
        for n, tau in enumerate(TAU, start=1):
            self.assertEqual(sums12[n], 12 * tau)
            self.assertEqual(sums10[n], 0)

    def test_cutoff(self):
        self.assertEqual(coeff(self.phi10, -1, 0), 0)
        with self.assertRaises(CutoffExceededError):
            coeff(self.phi10, 7, 1)
        with self.assertRaises(CutoffExceededError):
            table_from_series(phi_cusp_series(10, 3), 50, cusp=True)
        with self.assertRaises(InvalidArgumentError):
            phi_cusp(8, 4)


class TestTableExport(unittest.TestCase):
    """系数表导出"""

    def test_write_csv_and_parquet(self):
        table = phi_cusp(10, 4)
        with tempfile.TemporaryDirectory() as tmp:
            csv_path = write_table(table, os.path.join(tmp, "tables", "phi10.csv"))
            read = pacsv.read_csv(csv_path)
            self.assertEqual(read.column_names, ["n", "r", "c"])
            self.assertEqual(read.num_rows, len(table.c))
            rows = read.to_pylist()
            self.assertEqual(rows, sorted(rows, key=lambda row: (row["n"], row["r"])))
            self.assertIn({"n": 1, "r": 0, "c": -2}, rows)

            parquet_path = write_table(table, os.path.join(tmp, "phi10.parquet"))
            self.assertEqual(pq.read_table(parquet_path).to_pylist(), rows)


if __name__ == "__main__":
    unittest.main()
