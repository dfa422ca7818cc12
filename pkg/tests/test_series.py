from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcycle.errors import (
    ConstantTermNotOne,
    ExactDivisionError,
    IndexOutOfTruncation,
    NonzeroConstantTerm,
    NotInvertible,
    ZeroConstantTerm,
)
from qcycle.series import (
    Series1,
    Series2,
    binomial_series,
    compose,
    compositional_inverse,
    divide_exact,
    general_binomial,
    parse_rational,
)

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=6)


def series1(order):
    return st.lists(rationals, min_size=order, max_size=order).map(Series1)


class TestArithmetic:
    def test_add_cancellation(self):
        a = Series1([1, 1, 0])
        b = Series1([1, -1, 0])
        assert a + b == Series1([2, 0, 0])

    def test_add_identity(self):
        f = Series1([2, Fraction(1, 3), -5])
        assert Series1.zero(3) + f == f

    def test_add_hand_sum(self):
        a = Series1([0, 1, 1])
        b = Series1([0, 0, 1])
        assert a + b == Series1([0, 1, 2])

    def test_min_truncation_order(self):
        a = Series1([1, 2, 3, 4])
        b = Series1([1, 1])
        assert (a + b).trunc_order == 2
        assert (a * b).trunc_order == 2

    def test_mul_square(self):
        a = Series1([1, 1, 0])
        assert a * a == Series1([1, 2, 1])

    def test_mul_unit(self):
        f = Series1([Fraction(3, 2), 0, -1, 7])
        assert f * Series1.one(4) == f

    def test_mul_column_example(self):
        # (x+1)x truncated at order 4
        assert Series1([1, 1, 0, 0]) * Series1.x(4) == Series1([0, 1, 1, 0])

    def test_derivative(self):
        assert Series1([1, 1, 1]).derivative() == Series1([1, 2, 0])
        assert Series1.constant(5, 3).derivative() == Series1.zero(3)
        assert Series1([0, 0, 0, Fraction(1, 3)]).derivative() == Series1([0, 0, 1, 0])

    def test_reciprocal_geometric(self):
        inv = Series1([1, -1, 0, 0]).reciprocal()
        assert inv == Series1([1, 1, 1, 1])

    def test_reciprocal_one(self):
        assert Series1.one(5).reciprocal() == Series1.one(5)

    def test_reciprocal_verified_by_product(self):
        a = Series1([1, 1, 0]) * Series1([1, 1, 0])  # (1+x)^2 at order 3
        inv = a.reciprocal()
        assert inv == Series1([1, -2, 3])
        assert a * inv == Series1.one(3)

    def test_reciprocal_requires_unit(self):
        with pytest.raises(ZeroConstantTerm):
            Series1([0, 1, 0]).reciprocal()


class TestComposition:
    def test_identity_substitution(self):
        h = Series1([1, 1, 1])
        assert compose(h, Series1.x(3)) == h

    def test_square_substitution(self):
        h = Series1.monomial(2, 4)
        inner = Series1([0, 1, 1, 0])
        assert compose(h, inner) == Series1([0, 0, 1, 2])

    def test_two_variable_substitution_identity(self):
        grid = Series2([[0, 1, 0], [1, 2, 0], [0, 0, 3]])
        h = Series1.x(3)
        assert compose(h, grid) == grid

    def test_nonzero_constant_rejected(self):
        with pytest.raises(NonzeroConstantTerm):
            compose(Series1.x(3), Series1.one(3))

    def test_inverse_of_x(self):
        assert compositional_inverse(Series1.x(4)) == Series1.x(4)

    def test_inverse_of_geometric_ratio(self):
        # x/(1-x) = x + x^2 + x^3 + x^4; inverse is x/(1+x)
        q = Series1([0, 1, 1, 1, 1])
        a = compositional_inverse(q)
        assert a == Series1([0, 1, -1, 1, -1])
        assert compose(q, a) == Series1.x(5)
        assert compose(a, q) == Series1.x(5)

    def test_inverse_of_x_plus_x2(self):
        q = Series1([0, 1, 1, 0])
        a = compositional_inverse(q)
        assert a == Series1([0, 1, -1, 2])
        assert compose(q, a) == Series1.x(4)

    def test_inverse_requires_linear_term(self):
        with pytest.raises(NotInvertible):
            compositional_inverse(Series1([0, 0, 1, 0]))


class TestBinomialSeries:
    def test_square_root(self):
        root = binomial_series(Fraction(1, 2), Series1([1, 1, 0]))
        assert root == Series1([1, Fraction(1, 2), Fraction(-1, 8)])
        assert root * root == Series1([1, 1, 0])

    def test_zero_exponent(self):
        f = Series1([1, 7, -2])
        assert binomial_series(0, f) == Series1.one(3)

    def test_geometric_from_negative_exponent(self):
        # (1-y)^(-1) at order 4
        assert binomial_series(-1, Series1([1, -1, 0, 0])) == Series1([1, 1, 1, 1])

    def test_requires_unit_constant_term(self):
        with pytest.raises(ConstantTermNotOne):
            binomial_series(Fraction(1, 2), Series1([2, 1, 0]))

    def test_generalized_coefficients(self):
        assert general_binomial(Fraction(1, 2), 2) == Fraction(-1, 8)
        assert general_binomial(Fraction(-3), 2) == 6


class TestDivideExact:
    def test_shifted_division(self):
        # (x^2 + x^3) / x = x + x^2, exact at order 3
        num = Series1([0, 0, 1, 1])
        assert divide_exact(num, Series1.x(4)) == Series1([0, 1, 1])

    def test_rejects_smaller_valuation(self):
        with pytest.raises(ExactDivisionError):
            divide_exact(Series1.x(4), Series1.monomial(2, 4))

    def test_rejects_zero_divisor(self):
        with pytest.raises(ExactDivisionError):
            divide_exact(Series1.x(4), Series1.zero(4))


class TestSeries2:
    def test_coefficient_and_slices(self):
        s = Series2([[0, 0, 0], [0, 1, 0], [0, 0, 0]])  # x*y
        assert s.coefficient(0, 0) == 0
        assert s.coefficient(1, 1) == 1
        assert s.slice_y(1) == Series1([0, 1, 0])
        assert s.slice_x(1) == Series1([0, 1, 0])

    def test_out_of_truncation(self):
        s = Series2.zero(3)
        with pytest.raises(IndexOutOfTruncation):
            s.coefficient(0, 3)
        with pytest.raises(IndexOutOfTruncation):
            s.slice_y(5)
        with pytest.raises(IndexOutOfTruncation):
            Series1.zero(3).coefficient(3)

    def test_transpose(self):
        s = Series2([[0, 1, 0], [2, 0, 0], [0, 0, 0]])
        assert s.transposed().coefficient(1, 0) == 1
        assert s.transposed().coefficient(0, 1) == 2

    def test_mixed_products(self):
        s = Series2.monomial(1, 1, 4)
        t = s.mul_x_series(Series1([0, 2, 0, 0]))
        assert t.coefficient(2, 1) == 2
        u = s.mul_y_series(Series1([0, 3, 0, 0]))
        assert u.coefficient(1, 2) == 3


class TestParsing:
    def test_rational_round_trip(self):
        assert parse_rational("3/4") == Fraction(3, 4)
        assert parse_rational("-5") == Fraction(-5)
        assert str(Fraction(3, 4)) == "3/4"
        assert str(Fraction(5)) == "5"

    def test_payloads(self):
        s = Series1([1, Fraction(-2, 3)])
        assert Series1.from_payload(s.to_payload()) == s
        g = Series2([[1, 0], [Fraction(1, 7), 2]])
        assert Series2.from_payload(g.to_payload()) == g


class TestAlgebraProperties:
    @given(series1(6), series1(6))
    def test_mul_commutative(self, a, b):
        assert a * b == b * a

    @given(series1(5), series1(5), series1(5))
    @settings(max_examples=60)
    def test_mul_associative(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    @given(series1(5), series1(5), series1(5))
    @settings(max_examples=60)
    def test_distributive(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @given(series1(6), series1(6))
    def test_derivative_is_derivation(self, a, b):
        lhs = (a * b).derivative()
        rhs = a.derivative() * b + a * b.derivative()
        # the top coefficient of a derivative is truncation-dependent
        assert lhs.coeffs[:5] == rhs.coeffs[:5]

    @given(series1(6), series1(6), series1(6))
    @settings(max_examples=40)
    def test_compose_associative(self, h, k, s):
        k = Series1([0] + list(k.coeffs[1:]))
        s = Series1([0] + list(s.coeffs[1:]))
        assert compose(h, compose(k, s)) == compose(compose(h, k), s)

    @given(series1(6))
    @settings(max_examples=60)
    def test_compositional_inverse_round_trip(self, q):
        q = Series1([0, 1] + list(q.coeffs[2:]))
        a = compositional_inverse(q)
        assert compose(q, a) == Series1.x(6)
        assert compose(a, q) == Series1.x(6)

    @given(rationals, series1(6))
    @settings(max_examples=60)
    def test_binomial_inverse_pair(self, alpha, b):
        b = Series1([1] + list(b.coeffs[1:]))
        product = binomial_series(alpha, b) * binomial_series(-alpha, b)
        assert product == Series1.one(6)

    @given(series1(6))
    def test_reciprocal_round_trip(self, a):
        a = Series1([1] + list(a.coeffs[1:]))
        assert a * a.reciprocal() == Series1.one(6)

    @given(st.integers(2, 12))
    def test_mul_commutative_at_larger_orders(self, order):
        a = Series1([Fraction(i % 5 - 2, 1 + (i % 3)) for i in range(order)])
        b = Series1([Fraction((i * 7) % 4 - 1) for i in range(order)])
        assert a * b == b * a
