import random
from fractions import Fraction

import pytest

from qcycle.errors import DegreeOutOfRange
from qcycle.operators import build_context, identity_suite
from qcycle.series import Series1, Series2, compose
from qcycle.standard import StandardCycleParams, build_standard_cycle

from conftest import random_series1


def make_context(n, v0, tail, pad=2):
    bundle = build_standard_cycle(StandardCycleParams.from_tail(n, v0, tail))
    return build_context(bundle, order=n + pad)


@pytest.fixture(scope="module")
def ctx_deg1():
    return make_context(4, 1, [Fraction(1, 2), -1])


@pytest.fixture(scope="module")
def ctx_deg2():
    return make_context(5, 2, [1, Fraction(1, 3)])


class TestBasics:
    def test_partial_zero_is_identity(self, ctx_deg1, rng):
        h = random_series1(rng, ctx_deg1.order)
        assert ctx_deg1.partial_x(0, h) == h

    def test_gap_below_degree(self, ctx_deg2, rng):
        h = random_series1(rng, ctx_deg2.order)
        assert ctx_deg2.partial_x(1, h).is_zero()

    def test_degree_slice_is_derivation(self, ctx_deg2, rng):
        h = random_series1(rng, ctx_deg2.order)
        assert ctx_deg2.partial_x(2, h) == ctx_deg2.column * h.derivative()

    def test_row_flow(self, ctx_deg2):
        v0 = ctx_deg2.degree
        lhs = ctx_deg2.partial_x(v0, ctx_deg2.row)
        assert lhs == ctx_deg2.row * (ctx_deg2.f_power(v0).add_constant(-1))

    def test_tilde_unit(self, ctx_deg2, rng):
        h = random_series1(rng, ctx_deg2.order)
        t1 = ctx_deg2.tilde_partial_x(1, h)
        assert t1 == ctx_deg2.column * h.derivative()
        assert t1 == ctx_deg2.partial_x(ctx_deg2.degree, h)

    def test_degree_bound(self, ctx_deg1):
        with pytest.raises(DegreeOutOfRange):
            ctx_deg1.partial_x(ctx_deg1.order, Series1.x(ctx_deg1.order))
        with pytest.raises(DegreeOutOfRange):
            ctx_deg1.partial_y(ctx_deg1.order, Series2.zero(ctx_deg1.order))

    def test_y_twist_on_table(self, ctx_deg2):
        v0 = ctx_deg2.degree
        lhs = ctx_deg2.partial_y(v0, ctx_deg2.table)
        twist = ctx_deg2.f_power(v0).add_constant(-1)
        assert lhs == ctx_deg2.partial_x(v0, ctx_deg2.table).mul_y_series(twist)


class TestEigenSeries:
    def test_alternating_eigenfunction(self, ctx_deg1):
        # for the column x(1+x) the eigenfunction is x - x^2 + x^3 - ...
        q = ctx_deg1.eigenfunction
        bundle = build_standard_cycle(StandardCycleParams.from_tail(4, 1, [0, 0]))
        ctx = build_context(bundle, order=6)
        assert ctx.eigenfunction == Series1([0, 1, -1, 1, -1, 1])

    def test_eigen_ode(self, ctx_deg2):
        q = ctx_deg2.eigenfunction
        assert ctx_deg2.column * q.derivative() == q

    def test_inverse_round_trip(self, ctx_deg2):
        N = ctx_deg2.order
        assert compose(ctx_deg2.eigenfunction, ctx_deg2.eigenfunction_inv) == Series1.x(N)

    def test_power_identity(self, ctx_deg2):
        v0 = ctx_deg2.degree
        lhs = (ctx_deg2.eigenfunction ** v0).scale(v0)
        rhs = Series1.one(ctx_deg2.order) - ctx_deg2.f_power(v0).reciprocal()
        assert lhs == rhs

    def test_row_at_inverse_closed_form(self, ctx_deg2):
        v0 = ctx_deg2.degree
        N = ctx_deg2.order
        fa = compose(ctx_deg2.row, ctx_deg2.eigenfunction_inv)
        denominator = Series1.one(N) - Series1.monomial(v0, N, v0)
        assert fa ** v0 == denominator.reciprocal()


class TestSuite:
    @pytest.mark.parametrize(
        "n,v0,tail",
        [
            (3, 1, [2]),
            (4, 1, [Fraction(1, 2), -1]),
            (4, 3, []),
            (5, 2, [0, Fraction(2, 3)]),
        ],
    )
    def test_identity_suite_green(self, n, v0, tail):
        ctx = make_context(n, v0, tail)
        report = identity_suite(ctx, rng=random.Random(5))
        assert report.ok, [c.name for c in report.failures()]

    def test_suite_covers_core_identities(self):
        ctx = make_context(3, 1, [1])
        names = {c.name for c in identity_suite(ctx).checks}
        assert {
            "global_slice_symmetry",
            "braid_sum_match",
            "partial_x_commutation",
            "eigen_power_vs_row",
            "row_at_eigen_inverse",
            "transport_ode",
            "tilde_flip_transport",
            "main_series_identity",
            "binomial_transform_pair",
        } <= names
