import os
import tempfile
import unittest

from constructions import BASE_DEGREES, BASE_MATRIX, StepParams, step1_extend
from exceptions import DecodeMismatchError, InfeasibleDegreeError, InvalidBundleError, InvalidParameterError, \
    InvalidTableError, FeasibilityError
from vanishing import BundleSpec, ConciseTriple, Stability, VanishingTable, ViolationType, check_balanced_pair, \
    check_standard, check_unbalanced_pair, common_lower_bound, decode_concise, degree_pattern_violations, \
    encode_concise, infer_bundle, read_table_csv, table_from_json, table_to_json, write_table_csv


def base_table() -> VanishingTable:
    return VanishingTable.from_rows(6, 5, BASE_MATRIX, BASE_DEGREES)


class TestVanishing(unittest.TestCase):

    def test_columns(self):
        table = base_table()

        assert table.column(0) == [0, 0, 1, 1, 2]
        assert table.column(11) == [2, 1, 1, 0, 0]
        assert table.a_col(2) == [0, 0, 2, 2, 3]
        assert table.b_col(2) == [5, 5, 4, 2, 2]
        assert table.rows() == BASE_MATRIX
        self.assertRaises(InvalidParameterError, table.column, 12)

    def test_table_invalid_shape(self):
        self.assertRaises(InvalidTableError, VanishingTable.from_rows, 6, 5, BASE_MATRIX[:4], BASE_DEGREES)
        ragged = [list(row) for row in BASE_MATRIX]
        ragged[2] = ragged[2][:7]
        self.assertRaises(InvalidTableError, VanishingTable.from_rows, 6, 5, ragged, BASE_DEGREES)
        self.assertRaises(InvalidTableError, VanishingTable.from_rows, 6, 5, [row + [0] for row in BASE_MATRIX],
                          BASE_DEGREES)
        self.assertRaises(InvalidTableError, VanishingTable.from_rows, 6, 5, BASE_MATRIX, BASE_DEGREES[:5])

    def test_bundle_spec(self):
        bundle = BundleSpec(2, 4, 0, 5)

        assert bundle.degree == 11
        assert bundle.det == (2, 9)
        assert bundle.stability is Stability.UNSTABLE
        assert bundle.destabilizing == (2, 4)
        assert bundle.other == (0, 5)
        assert bundle == BundleSpec(0, 5, 2, 4)
        assert BundleSpec(5, 0, 5, 0).stability is Stability.DOUBLE
        assert BundleSpec(0, 5, 3, 2).stability is Stability.SEMISTABLE
        self.assertRaises(InvalidBundleError, lambda: BundleSpec(0, 5, 3, 2).destabilizing)

    def test_bundle_spec_invalid(self):
        self.assertRaises(InvalidBundleError, BundleSpec, -1, 5, 0, 5)
        self.assertRaises(InvalidBundleError, BundleSpec, 0, 5, 0, 3)

    def test_balanced_pair(self):
        pair = check_balanced_pair([0, 0, 1, 3, 3], [5, 4, 3, 2, 1], 5)

        assert pair.passed
        assert (pair.i1, pair.i2) == (1, 4)

    def test_balanced_pair_violations(self):
        pair = check_balanced_pair([0, 1], [5, 5], 5)
        codes = {v.violation_type for v in pair.violations}

        assert not pair.passed
        assert ViolationType.SUM_RANGE in codes
        assert ViolationType.SPECIAL_COUNT in codes

    def test_unbalanced_pair(self):
        pair = check_unbalanced_pair([0, 0, 2, 2, 3], [5, 5, 4, 2, 2], 5)

        assert pair.passed
        assert pair.ell == 3
        assert pair.i_star == 1
        assert list(pair.tau_star) == [5]

    def test_unbalanced_pair_without_repeat(self):
        pair = check_unbalanced_pair([0, 1, 2], [5, 5, 2], 5)
        codes = {v.violation_type for v in pair.violations}

        assert ViolationType.REPEATED_PAIR in codes

    def test_infer_bundle(self):
        table = base_table()

        assert infer_bundle(table.a_col(1), table.b_col(1), 10) == BundleSpec(0, 5, 0, 5)
        assert infer_bundle(table.a_col(2), table.b_col(2), 11) == BundleSpec(2, 4, 0, 5)
        assert infer_bundle(table.a_col(3), table.b_col(3), 10) == BundleSpec(0, 5, 3, 2)
        assert infer_bundle(table.a_col(4), table.b_col(4), 10) == BundleSpec(1, 4, 4, 1)
        assert infer_bundle(table.a_col(5), table.b_col(5), 9) == BundleSpec(4, 0, 3, 2)
        assert infer_bundle(table.a_col(6), table.b_col(6), 10) == BundleSpec(5, 0, 5, 0)

    def test_infer_bundle_infeasible(self):
        self.assertRaises(InfeasibleDegreeError, infer_bundle, [0, 0, 2, 2, 3], [5, 5, 4, 2, 2], 10)
        self.assertRaises(FeasibilityError, infer_bundle, [0, 1], [5, 3], 10)

    def test_decode_concise(self):
        triple = ConciseTriple(BundleSpec(2, 4, 0, 5), [0, 0, 2, 2, 3], [5])
        assert decode_concise(triple, 5) == [5, 5, 4, 2, 2]

        triple = ConciseTriple(BundleSpec(0, 5, 3, 2), [0, 0, 1, 3, 3])
        assert decode_concise(triple, 5) == [5, 4, 3, 2, 1]

    def test_concise_rejects_unsupported_tau(self):
        bundle = BundleSpec(2, 4, 0, 5)

        assert list(ConciseTriple(bundle, [0, 0, 2, 2, 3], [5, 5]).tau_star) == [5]
        self.assertRaises(DecodeMismatchError, ConciseTriple, bundle, [0, 0, 2, 2, 3], [1, 5])
        self.assertRaises(DecodeMismatchError, ConciseTriple, bundle, [0, 0, 2, 2, 3], [5, 9])
        self.assertRaises(DecodeMismatchError, ConciseTriple, bundle, [0, 0, 2, 2, 3], [0])

    def test_encode_decode_base_components(self):
        table = base_table()
        for j in range(1, 7):
            triple = encode_concise(table.a_col(j), table.b_col(j), table.d_vec[j - 1])
            assert decode_concise(triple, table.d_vec[j - 1] // 2) == table.b_col(j)

    def test_common_lower_bound(self):
        assert common_lower_bound([0, 0, 1, 3, 3], [5, 4, 3, 2, 1], 5) == 2
        assert common_lower_bound([0, 0, 1, 3, 3], [5, 4, 3, 2, 1], 1) == 1
        self.assertRaises(InvalidParameterError, common_lower_bound, [0], [1], 2)

    def test_degree_pattern(self):
        assert degree_pattern_violations(6, BASE_DEGREES) == []
        assert degree_pattern_violations(6, [10] * 6) == []
        assert degree_pattern_violations(6, [10, 11, 10, 10, 10, 10])
        assert degree_pattern_violations(6, [10, 9, 10, 10, 11, 10])

    def test_check_standard(self):
        report = check_standard(base_table())

        assert report.passed
        assert report.odd_nodes == [2, 5]
        assert report.bundles[1] == BundleSpec(2, 4, 0, 5)

    def test_check_standard_complementarity(self):
        rows = [list(row) for row in BASE_MATRIX]
        rows[0][1] = 1
        report = check_standard(VanishingTable.from_rows(6, 5, rows, BASE_DEGREES))
        codes = {v.violation_type for v in report.violations}

        assert not report.passed
        assert ViolationType.COMPLEMENTARITY in codes

    def test_table_json(self):
        table = base_table()
        assert table_from_json(table_to_json(table)) == table
        self.assertRaises(InvalidTableError, table_from_json, {})

    def test_table_csv(self):
        table = base_table()
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "table.csv")
            write_table_csv(table, path)

            assert read_table_csv(path, BASE_DEGREES) == table

    def test_table_csv_extended(self):
        table = step1_extend(base_table(), StepParams(6, 1))
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "table.csv")
            write_table_csv(table, path)
            restored = read_table_csv(path, table.d_vec)

            assert restored == table
            assert restored.right_boundary == [8, 7, 7, 6, 6, 3, 2]

    def test_table_csv_malformed(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "table.csv")
            with open(path, "w") as f:
                f.write("0,5,0,5\n0,5,0\n")
            self.assertRaises(InvalidTableError, read_table_csv, path, [4, 4])

            with open(path, "w") as f:
                f.write("0,5,0\n0,5,0\n")
            self.assertRaises(InvalidTableError, read_table_csv, path, [4, 4])

            with open(path, "w") as f:
                f.write("")
            self.assertRaises(InvalidTableError, read_table_csv, path, [4, 4])
