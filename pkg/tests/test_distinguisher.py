"""Filling families, distinctness classification, and the trace recurrence."""

from __future__ import annotations

import pytest

from oracles import cofactor_det, pow_square
from plumbhom.distinguisher import classify_distinct, filling_family, torsion_closed_form
from plumbhom.exact_linalg import AbelianGroup, IntMatrix
from plumbhom.plumbing import GradedGroup, PlumbingGraph
from plumbhom.twist_engine import TwistWord, parse_word, preset_action
from test_plumbing import A2_3PT_N2, A2_3PT_N3

A2_1PT_N3 = PlumbingGraph(3, ("L1", "L2"), (("L1", "L2", 1),))
EVEN_GENERATOR = IntMatrix.from_rows([[8, 3], [-3, -1]])


class TestTorsionClosedForm:
    def test_first_values(self):
        assert torsion_closed_form(EVEN_GENERATOR, 1) == 5
        assert torsion_closed_form(EVEN_GENERATOR, 2) == 45
        assert torsion_closed_form(EVEN_GENERATOR, 3) == 320

    def test_matches_direct_determinant(self):
        rows = EVEN_GENERATOR.to_rows()
        for k in range(1, 16):
            power = pow_square(rows, k)
            power[0][0] -= 1
            power[1][1] -= 1
            assert torsion_closed_form(EVEN_GENERATOR, k) == abs(cofactor_det(power))

    def test_parabolic_trace_two_degenerates(self):
        m = IntMatrix.from_rows([[1, 5], [0, 1]])
        for k in range(8):
            assert torsion_closed_form(m, k) == 0

    def test_k_zero(self):
        assert torsion_closed_form(EVEN_GENERATOR, 0) == 0

    def test_determinant_must_be_one(self):
        with pytest.raises(ValueError, match="determinant"):
            torsion_closed_form(IntMatrix.from_rows([[1, 0], [0, -1]]), 1)

    def test_shape_checked(self):
        with pytest.raises(ValueError):
            torsion_closed_form(IntMatrix.identity(3), 1)

    def test_exponential_growth(self):
        values = [torsion_closed_form(EVEN_GENERATOR, k) for k in range(1, 31)]
        for k in range(2, 30):
            assert values[k] > 6 * values[k - 1]


class TestClassifyDistinct:
    def test_example_partition(self):
        g = GradedGroup({0: AbelianGroup(1)})
        h = GradedGroup({0: AbelianGroup(2)})
        assert classify_distinct([g, g, h]) == [1, 1, 2]

    def test_empty(self):
        assert classify_distinct([]) == []

    def test_numbering_by_first_occurrence(self):
        a = GradedGroup({1: AbelianGroup(1)})
        b = GradedGroup({2: AbelianGroup(1)})
        c = GradedGroup({3: AbelianGroup(1)})
        assert classify_distinct([b, a, b, c, a]) == [1, 2, 1, 3, 2]


class TestFillingFamily:
    def test_odd_family_torsion(self):
        report = filling_family(A2_3PT_N3, parse_word("L1"), 20)
        assert report.torsion_degree == 3
        for entry in report.entries:
            assert entry.torsion_factors == (3 * entry.k,)
            assert entry.boundary_ok
        assert report.distinct_classes == 20
        assert report.trivial_torsion_ks == ()

    def test_dimension_one_preset_family(self):
        graph, _ = preset_action("a2-3pt-n1-t1")
        report = filling_family(graph, parse_word("t1"), 20)
        assert report.torsion_degree == 1
        for entry in report.entries:
            expected = (entry.k,) if entry.k >= 2 else ()
            assert entry.torsion_factors == expected
        assert report.distinct_classes == 20
        assert report.trivial_torsion_ks == (1,)

    def test_single_edge_family(self):
        report = filling_family(A2_1PT_N3, parse_word("L1"), 20)
        for entry in report.entries:
            group = entry.homology.group(3)
            assert group.free_rank == 1
            assert group.invariant_factors == ((entry.k,) if entry.k >= 2 else ())
        assert report.distinct_classes == 20

    def test_action_preset_name_accepted(self):
        graph, _ = preset_action("a2-3pt-n1-t1")
        report = filling_family(graph, "a2-3pt-n1-t1", 5)
        assert report.word == "a2-3pt-n1-t1"
        assert [e.torsion_factors for e in report.entries] == [(), (2,), (3,), (4,), (5,)]

    def test_action_preset_requires_matching_graph(self):
        with pytest.raises(ValueError, match="different graph"):
            filling_family(A2_3PT_N3, "a2-3pt-n1-t1", 3)

    def test_empty_word_collapses_to_one_class(self):
        report = filling_family(A2_3PT_N3, TwistWord(()), 6)
        assert report.distinct_classes == 1
        assert all(e.class_id == 1 for e in report.entries)

    def test_monotone_distinctness(self):
        previous = 0
        for k_max in range(1, 12):
            report = filling_family(A2_3PT_N2, parse_word("L1 L2"), k_max)
            assert report.distinct_classes >= previous
            previous = report.distinct_classes

    def test_even_family_matches_closed_form(self):
        report = filling_family(A2_3PT_N2, parse_word("L1 L2"), 12)
        for entry in report.entries:
            assert entry.torsion_cardinality == torsion_closed_form(EVEN_GENERATOR, entry.k)

    def test_kmax_validated(self):
        with pytest.raises(ValueError, match="k_max"):
            filling_family(A2_3PT_N3, parse_word("L1"), 0)

    def test_report_metadata(self):
        report = filling_family(A2_3PT_N3, parse_word("L1^2"), 3)
        assert report.word == "L1^2"
        assert report.k_max == 3
        assert "degree" in report.indexing_note
        assert report.graph == A2_3PT_N3
