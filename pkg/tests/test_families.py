from fractions import Fraction

import pytest

from qcycle.errors import (
    PreconditionNotMet,
    RootOfUnityLambda,
    UnverifiedStructure,
    ValidationError,
)
from qcycle.families import (
    ClassificationRow,
    NonRootFamilyInput,
    build_nonroot_family,
    classify,
    first_column_vanishing_check,
    fixtures_n3,
    nonunit_vanishing_check,
    normalize,
    root_of_unity_order,
)
from qcycle.solution import check_braid_full, check_braid_reduced
from qcycle.standard import StandardCycleParams, build_standard_cycle
from qcycle.tensor import QCycleStructure, rescale

from conftest import standard_structure


class TestRootOrder:
    def test_orders_over_rationals(self):
        assert root_of_unity_order(Fraction(1), 3) == 1
        assert root_of_unity_order(Fraction(-1), 3) == 2
        assert root_of_unity_order(Fraction(-1), 2) is None
        assert root_of_unity_order(Fraction(2), 10) is None
        assert root_of_unity_order(Fraction(1, 2), 10) is None


class TestNonRootFamily:
    def test_hand_computed_values(self):
        s = build_nonroot_family(NonRootFamilyInput(3, [2, 1], 3))
        assert s.p.entry(2, 0, 2) == 4  # lambda_1 squared
        assert s.d.entry(2, 0, 1) == 3  # solves the forced recursion
        assert check_braid_reduced(s)
        assert check_braid_full(s)

    def test_involutive_iff_mu_equals_lambda1(self):
        base = NonRootFamilyInput(4, [2, 1, -1], 2)
        assert build_nonroot_family(base).is_involutive()
        other = NonRootFamilyInput(4, [2, 1, -1], 3)
        assert not build_nonroot_family(other).is_involutive()

    def test_root_of_unity_rejected(self):
        with pytest.raises(RootOfUnityLambda):
            NonRootFamilyInput(3, [-1, 1], 2)
        # at n = 2 the power range below n is empty except k = 1
        NonRootFamilyInput(2, [-1], 2)

    def test_zero_parameters_rejected(self):
        with pytest.raises(ValidationError):
            NonRootFamilyInput(3, [0, 1], 2)
        with pytest.raises(ValidationError):
            NonRootFamilyInput(3, [2, 1], 0)

    def test_vanishing_check(self):
        s = build_nonroot_family(NonRootFamilyInput(4, [3, 1, 1], 4))
        assert nonunit_vanishing_check(s, 4).ok

    def test_vanishing_check_precondition(self):
        s = standard_structure(4, 1, [1, 1])
        with pytest.raises(PreconditionNotMet):
            nonunit_vanishing_check(s, 4)

    def test_vanishing_check_detects_perturbation(self):
        s = build_nonroot_family(NonRootFamilyInput(3, [2, 1], 3))
        bad = QCycleStructure(s.p, s.d.with_entry(2, 0, 1, s.d.entry(2, 0, 1) + 1))
        assert not nonunit_vanishing_check(bad, 3).ok


class TestFixtures:
    def test_nine_fixtures_all_verified(self):
        fixtures = fixtures_n3()
        assert len(fixtures) == 9
        for fixture in fixtures:
            assert check_braid_reduced(fixture.structure)
            assert check_braid_full(fixture.structure)

    def test_negative_step_closed_forms(self):
        fixtures = [f for f in fixtures_n3() if f.name == "negative_step"]
        point = next(
            f for f in fixtures if f.parameters["p12"] == 1 and f.parameters["p20"] == 2
        )
        t = point.structure.p
        assert t.entry(2, 2, 1) == Fraction(-5)  # -5 * p12 * p20 / 2
        assert t.entry(2, 1, 1) == 2
        assert t.entry(2, 2, 2) == -2  # extension: -2 * p12
        assert t.entry(2, 0, 2) == 1

    def test_mixed_step_never_involutive(self):
        for fixture in fixtures_n3():
            if fixture.name == "mixed_step":
                assert not fixture.structure.is_involutive()

    def test_first_column_vanishing(self):
        fixtures = [f for f in fixtures_n3() if f.name == "unit_step"]
        eligible = [f for f in fixtures if f.parameters["p20"] == 0]
        assert any(f.parameters["p22"] != 0 for f in eligible)
        for f in eligible:
            assert first_column_vanishing_check(f.structure).ok

    def test_first_column_check_preconditions(self):
        s = standard_structure(3, 1, [1])
        with pytest.raises(PreconditionNotMet):
            first_column_vanishing_check(s)


class TestClassify:
    def test_degree_one_standard(self):
        s = standard_structure(4, 1, [2, 0])
        assert classify(s).row is ClassificationRow.P11_NONZERO

    def test_higher_degree_standard(self):
        s = standard_structure(5, 2, [1, 1])
        assert classify(s).row is ClassificationRow.INVOLUTIVE_DELTA_WITH_HIGHER_PARAM

    def test_unit_step_rows(self):
        for fixture in fixtures_n3():
            if fixture.name != "unit_step":
                continue
            verdict = classify(fixture.structure)
            if fixture.parameters["p20"] == 0:
                assert verdict.row is ClassificationRow.INVOLUTIVE_DELTA_ALL_ZERO
            else:
                assert verdict.row is ClassificationRow.INVOLUTIVE_P10_EQ_1_NONDELTA

    def test_negative_step_row(self):
        for fixture in fixtures_n3():
            if fixture.name == "negative_step":
                verdict = classify(fixture.structure)
                assert verdict.row is ClassificationRow.INVOLUTIVE_P10_ROOT_OF_UNITY

    def test_mixed_step_row(self):
        for fixture in fixtures_n3():
            if fixture.name == "mixed_step":
                assert classify(fixture.structure).row is ClassificationRow.NONINV_BOTH_ROOTS

    def test_nonroot_rows(self):
        involutive = build_nonroot_family(NonRootFamilyInput(3, [2, 1], 2))
        assert classify(involutive).row is ClassificationRow.INVOLUTIVE_P10_NOT_ROOT
        mixed = build_nonroot_family(NonRootFamilyInput(3, [2, 1], 3))
        assert classify(mixed).row is ClassificationRow.NONINV_P10_NOT_ROOT

    def test_swapped_nonroot_hits_d_row(self):
        # mu = 1 makes the d step a root of unity while the p step is not;
        # swapping the tensors lands in the symmetric row.
        s = build_nonroot_family(NonRootFamilyInput(3, [2, 1], 1))
        swapped = QCycleStructure(s.d, s.p)
        assert check_braid_reduced(swapped)
        assert classify(swapped).row is ClassificationRow.NONINV_D10_NOT_ROOT

    def test_classify_requires_verified(self):
        s = standard_structure(3, 1, [1])
        bad = QCycleStructure.involutive(s.p.with_entry(2, 1, 1, 9))
        with pytest.raises(UnverifiedStructure):
            classify(bad)

    def test_row_stable_under_rescale(self, rng):
        s = standard_structure(4, 1, [1, 2])
        scaled = rescale(s, Fraction(3, 2))
        assert classify(scaled).row is ClassificationRow.P11_NONZERO


class TestNormalize:
    def test_identity(self):
        s = standard_structure(3, 1, [1])
        assert normalize(s, 1) == s

    def test_degree_one_normalization(self):
        normalized = standard_structure(4, 1, [Fraction(1, 2), -1])
        skewed = rescale(normalized, Fraction(1, 3))
        assert skewed.p.entry(1, 1, 1) == 3
        recovered = normalize(skewed, 3)
        assert recovered == normalized
        # the normal form is the standard structure of its own first row
        row_tail = [recovered.p.entry(1, v, 1) for v in range(2, 4)]
        rebuilt = build_standard_cycle(StandardCycleParams.from_tail(4, 1, row_tail))
        assert QCycleStructure.involutive(rebuilt.tensor) == recovered

    def test_degree_two_normalization(self):
        normalized = standard_structure(5, 2, [1, 1])
        skewed = rescale(normalized, Fraction(1, 2))
        assert skewed.p.entry(1, 2, 1) == 4
        assert normalize(skewed, 2) == normalized
