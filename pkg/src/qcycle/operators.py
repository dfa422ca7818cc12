"""Differential-operator calculus on K[[x, y]] attached to a standard cycle.

The operators partial_x^v are defined through substitution into the table G:
h(G) = sum_v (partial_x^v h)(x) y^v, which works out to

    partial_x^v h = sum_{k=1}^{v} (1/k!) (Gbar^k)_v h^(k),      Gbar = G - x.

partial_y^u is the same expression with the slice read in y and y-derivatives;
the global operator is partial^k = sum_{a+b=k} partial_x^a partial_y^b.  The
tilde variants replace Gbar-slices by slices of P, where P regrades Gbar in
powers of f(y) - 1.  The context also carries:

  * the eigenfunction q of the derivation h -> g h' (g q' = q, q = x + ...),
    its compositional inverse, and the scaled eigenfunctions q_i = a_i q^i;
  * the transport series between the two regradings, T = U o S with
    S(y) = 1 - (1+y)^(-v0), V(y) = (1-y)^(-1/v0) - 1, U(y) = V(f(x)^{v0} y),
    satisfying fbar(F) = T(fbar(y)) for the flipped table F(x,y) = G(y,x).

`identity_suite` checks, exactly and up to the truncation order, every
identity the construction is built on, ending with the slice symmetry
(partial^j G)_i = (partial^i G)_j that encodes the braid equations.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb, factorial
from typing import Optional, Union

from .errors import DegreeOutOfRange, InvariantViolation
from .series import (
    ONE,
    Series1,
    Series2,
    ZERO,
    binomial_series,
    compose,
    compositional_inverse,
    general_binomial,
    substitute_y,
)
from .standard import StandardCycleBundle, build_standard_cycle
from .tensor import CheckResult, SuiteReport

SeriesLike = Union[Series1, Series2]


class OperatorContext:
    """All series data the operator identities need, at one truncation order."""

    def __init__(self, bundle: StandardCycleBundle):
        self.bundle = bundle
        self.order = N = bundle.order
        self.degree = bundle.degree
        self.row = bundle.row                    # f
        self.column = bundle.column              # g
        self.table = bundle.table                # G
        self.flip = bundle.table_flip            # F(x,y) = G(y,x)
        self.tensor = bundle.tensor

        self.table_reduced = bundle.table - Series2.monomial(1, 0, N)   # G - x
        self.row_reduced = bundle.row.add_constant(-1)                   # f - 1

        self.inv_factorial = [Fraction(1, factorial(k)) for k in range(N + 1)]

        self._pows: dict = {}
        self._slices: dict = {}
        self._fpow: dict = {}

        self.p_slices = self._build_p_slices()
        self.p_series = Series2.from_y_slices(self.p_slices, N)

        self.eigenfunction = self._build_eigenfunction()
        self.eigenfunction_inv = compositional_inverse(self.eigenfunction)
        self.eigen_slices = self._build_eigen_slices()
        self.q_series = Series2.from_y_slices(self.eigen_slices, N)

        v0 = self.degree
        one_plus_y = Series1([ONE, ONE] + [ZERO] * (N - 2))
        self.to_eigen = Series1.one(N) - binomial_series(-v0, one_plus_y)      # S(y)
        one_minus_y = Series1([ONE, -ONE] + [ZERO] * (N - 2))
        self.root_kernel = binomial_series(Fraction(-1, v0), one_minus_y).add_constant(-1)  # V(y)
        self.from_eigen = Series2.from_y_slices(
            [self.f_power(v0 * k).scale(self.root_kernel.coeffs[k]) for k in range(N)], N
        )                                                                # U(x, y)
        self.transport = substitute_y(self.from_eigen, self.to_eigen)    # T = U o S

        self._verify_construction()

    # -- cached building blocks --------------------------------------------

    def power(self, name: str, k: int) -> Series2:
        """k-th power of a cached two-variable series (k >= 0)."""
        base = {
            "table_reduced": self.table_reduced,
            "p": self.p_series,
            "flip": self.flip,
            "transport": self.transport,
        }[name]
        key = (name, k)
        if key not in self._pows:
            if k == 0:
                self._pows[key] = Series2.monomial(0, 0, self.order)
            elif k == 1:
                self._pows[key] = base
            else:
                self._pows[key] = self.power(name, k - 1) * base
        return self._pows[key]

    def power_slice(self, name: str, k: int, v: int) -> Series1:
        """(series^k)_v: the y-slice of a cached power, as a series in x."""
        key = (name, k, v)
        if key not in self._slices:
            self._slices[key] = self.power(name, k).slice_y(v)
        return self._slices[key]

    def f_power(self, m: int) -> Series1:
        if m not in self._fpow:
            self._fpow[m] = self.row ** m
        return self._fpow[m]

    def fbar_power(self, k: int) -> Series1:
        key = ("fbar", k)
        if key not in self._fpow:
            self._fpow[key] = self.row_reduced ** k
        return self._fpow[key]

    def _build_p_slices(self) -> list[Series1]:
        """P_1 = g and (v+1) P_{v+1} = g P_v' - v P_v."""
        N = self.order
        slices = [Series1.zero(N), self.column]
        for v in range(1, N - 1):
            nxt = (self.column * slices[v].derivative() - slices[v].scale(v)).scale(
                Fraction(1, v + 1)
            )
            slices.append(nxt)
        return slices[:N]

    def _build_eigenfunction(self) -> Series1:
        """The unique q = x + ... with g q' = q:
        (k-1) q_k = - sum_{j<k} g_{k-j+1} j q_j."""
        N = self.order
        g = self.column.coeffs
        b = [ZERO] * N
        if N > 1:
            b[1] = ONE
        for k in range(2, N):
            acc = ZERO
            for j in range(1, k):
                idx = k - j + 1
                if idx < N and g[idx]:
                    acc += g[idx] * j * b[j]
            b[k] = -acc / (k - 1)
        return Series1(b)

    def _build_eigen_slices(self) -> list[Series1]:
        """q_i = a_i q^i, the order-i eigenfunctions of h -> g h'."""
        N = self.order
        a = self.eigenfunction_inv.coeffs
        slices = [Series1.zero(N)]
        power = Series1.one(N)
        for i in range(1, N):
            power = power * self.eigenfunction
            slices.append(power.scale(a[i]))
        return slices

    def _verify_construction(self) -> None:
        N, v0 = self.order, self.degree
        g, q = self.column, self.eigenfunction

        if (g * q.derivative()) != q:
            raise InvariantViolation("eigenfunction_ode")
        x = Series1.x(N)
        if compose(q, self.eigenfunction_inv) != x or compose(self.eigenfunction_inv, q) != x:
            raise InvariantViolation("eigenfunction_inverse_roundtrip")

        regraded = Series2.zero(N)
        for v in range(1, N):
            fb = self.fbar_power(v)
            pv = self.p_slices[v]
            if not pv.is_zero():
                regraded = regraded + Series2.from_x_series(pv, N).mul_y_series(fb)
        if regraded != self.table_reduced:
            raise InvariantViolation("table_regrading")

        lhs = (q ** v0).scale(v0)
        rhs = Series1.one(N) - self.f_power(v0).reciprocal()
        if lhs != rhs:
            raise InvariantViolation("eigen_power_vs_row")

        if not self.transport.slice_y(0).is_zero():
            raise InvariantViolation("transport_vanishes_at_0")
        if self.transport.slice_y(1) != self.f_power(v0):
            raise InvariantViolation("transport_unit_slice")
        for j in range(1, N):
            if self.power_slice("transport", j, j) != self.f_power(j * v0):
                raise InvariantViolation("transport_power_diagonal")

    # -- the operators -------------------------------------------------------

    def _check_degree(self, v: int) -> None:
        if not 0 <= v < self.order:
            raise DegreeOutOfRange(f"degree {v} at truncation order {self.order}")

    def _apply_x(self, slices_name: str, v: int, h: Series1) -> Series1:
        acc = Series1.zero(self.order)
        deriv = h
        for k in range(1, v + 1):
            deriv = deriv.derivative()
            if deriv.is_zero():
                break
            coeff = self._x_slice(slices_name, k, v)
            if not coeff.is_zero():
                acc = acc + (coeff * deriv).scale(self.inv_factorial[k])
        return acc

    def _x_slice(self, slices_name: str, k: int, v: int) -> Series1:
        if slices_name == "gbar":
            return self.power_slice("table_reduced", k, v)
        return self.power_slice("p", k, v)

    def partial_x(self, v: int, h: SeriesLike) -> SeriesLike:
        """partial_x^v: acts on the x-coefficients, one y-slice at a time."""
        self._check_degree(v)
        if v == 0:
            return h
        if isinstance(h, Series1):
            return self._apply_x("gbar", v, h)
        N = self.order
        return Series2.from_y_slices(
            [self._apply_x("gbar", v, h.slice_y(u)) for u in range(N)], N
        )

    def tilde_partial_x(self, v: int, h: SeriesLike) -> SeriesLike:
        self._check_degree(v)
        if v == 0:
            return h
        if isinstance(h, Series1):
            return self._apply_x("p", v, h)
        N = self.order
        return Series2.from_y_slices(
            [self._apply_x("p", v, h.slice_y(u)) for u in range(N)], N
        )

    def _apply_y(self, slices_name: str, u: int, H: Series2) -> Series2:
        acc = Series2.zero(self.order)
        deriv = H
        for i in range(1, u + 1):
            deriv = deriv.partial_y()
            if deriv.is_zero():
                break
            coeff = self._x_slice(slices_name, i, u)  # a series in one variable
            if not coeff.is_zero():
                acc = acc + deriv.mul_y_series(coeff).scale(self.inv_factorial[i])
        return acc

    def partial_y(self, u: int, H: Series2) -> Series2:
        """partial_y^u = sum_i (1/i!) (Gbar^i)_u(y) d^i/dy^i."""
        self._check_degree(u)
        if u == 0:
            return H
        return self._apply_y("gbar", u, H)

    def tilde_partial_y(self, u: int, H: Series2) -> Series2:
        self._check_degree(u)
        if u == 0:
            return H
        return self._apply_y("p", u, H)

    def partial_global(self, k: int, H: Series2) -> Series2:
        """partial^k = sum_{a+b=k} partial_x^a partial_y^b."""
        self._check_degree(k)
        acc = Series2.zero(self.order)
        for b in range(k + 1):
            acc = acc + self.partial_x(k - b, self.partial_y(b, H))
        return acc

    def tilde_partial_global(self, u: int, H: Series2) -> Series2:
        self._check_degree(u)
        acc = Series2.zero(self.order)
        for l in range(u + 1):
            acc = acc + self.tilde_partial_x(l, self.tilde_partial_y(u - l, H))
        return acc


def build_context(bundle: StandardCycleBundle, order: Optional[int] = None) -> OperatorContext:
    """Build the calculus at `order` (>= n); rebuilds the bundle when padded."""
    if order is not None and order != bundle.order:
        bundle = build_standard_cycle(bundle.params, order)
    return OperatorContext(bundle)


# -- the identity suite -------------------------------------------------------


def _random_series1(rng: random.Random, order: int) -> Series1:
    return Series1(
        [Fraction(rng.randint(-4, 4), rng.choice((1, 1, 2, 3))) for _ in range(order)]
    )


def _random_series2(rng: random.Random, order: int) -> Series2:
    return Series2(
        [
            [Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2))) for _ in range(order)]
            for _ in range(order)
        ]
    )


def identity_suite(ctx: OperatorContext, rng: Optional[random.Random] = None) -> SuiteReport:
    """Run every identity check, exactly, at the context's truncation order."""
    rng = rng or random.Random(20240)
    N, v0 = ctx.order, ctx.degree
    checks: list[CheckResult] = []

    def record(name: str, fails: list) -> None:
        checks.append(
            CheckResult(name, not fails, f"first failure: {fails[0]}" if fails else None)
        )

    x1_inputs = [Series1.monomial(a, N) for a in range(N)] + [
        _random_series1(rng, N) for _ in range(3)
    ]
    x2_basis = [
        Series2.monomial(a, b, N)
        for a in range(N)
        for b in range(N)
        if a + b <= N and a + b > 0
    ]
    x2_random = [_random_series2(rng, N) for _ in range(2)]

    # identity and vanishing range of partial_x
    fails = []
    for h in x1_inputs:
        if ctx.partial_x(0, h) != h:
            fails.append(("identity", 0))
        for v in range(1, min(v0, N)):
            if not ctx.partial_x(v, h).is_zero():
                fails.append(("low_degree", v))
    record("partial_x_identity_and_gap", fails)

    # partial_x^{v0} is the derivation h -> g h'
    fails = []
    for h in x1_inputs:
        if v0 < N and ctx.partial_x(v0, h) != ctx.column * h.derivative():
            fails.append("derivation")
    if v0 < N and ctx.partial_x(v0, ctx.row) != ctx.row * (
        ctx.f_power(v0).add_constant(-1)
    ):
        fails.append("row_flow")
    record("partial_x_degree_slice_derivation", fails)

    # partial_x^v x = g_v
    fails = []
    x = Series1.x(N)
    for v in range(N):
        if ctx.partial_x(v, x) != ctx.table.slice_y(v):
            fails.append(v)
    record("partial_x_of_x_gives_slices", fails)

    # commutation of the x-operators
    fails = []
    for u in range(1, N):
        for v in range(u + 1, N):
            for h in x1_inputs:
                if ctx.partial_x(u, ctx.partial_x(v, h)) != ctx.partial_x(
                    v, ctx.partial_x(u, h)
                ):
                    fails.append((u, v))
                    break
            if fails:
                break
        if fails:
            break
    record("partial_x_commutation", fails)

    # x and y operators commute
    fails = []
    small = [H for H in x2_basis if not H.is_zero()][: 2 * N] + x2_random[:1]
    pairs = [(v, u) for v in range(1, min(N, 5)) for u in range(1, min(N, 5))]
    pairs += [(N - 1, N - 1)]
    for v, u in pairs:
        for H in small:
            if ctx.partial_x(v, ctx.partial_y(u, H)) != ctx.partial_y(
                u, ctx.partial_x(v, H)
            ):
                fails.append((v, u))
                break
        if fails:
            break
    record("xy_commutation", fails)

    # partial_y annihilates pure-x series
    fails = []
    pure = Series2.from_x_series(_random_series1(rng, N), N)
    for u in range(1, N):
        if not ctx.partial_y(u, pure).is_zero():
            fails.append(u)
    record("partial_y_kills_pure_x", fails)

    # partial_y^{v0} G = (f(y)^{v0} - 1) partial_x^{v0} G
    fails = []
    fyv = ctx.f_power(v0).add_constant(-1)
    if ctx.partial_y(v0, ctx.table) != ctx.partial_x(v0, ctx.table).mul_y_series(fyv):
        fails.append("twist")
    record("table_y_vs_x_twist", fails)

    # slice symmetry of the x-operators on the table
    dx_table = [ctx.partial_x(u, ctx.table) for u in range(N)]
    fails = []
    for u in range(N):
        for v in range(u + 1, N):
            if dx_table[u].slice_y(v) != dx_table[v].slice_y(u):
                fails.append((u, v))
    record("x_slice_symmetry", fails)

    # partial_x^d g = (partial_x^{v0} G)_d = (partial_x^d G)_{v0}
    fails = []
    if v0 < N:
        for d in range(N):
            lhs = ctx.partial_x(d, ctx.column)
            if lhs != dx_table[v0].slice_y(d) or lhs != dx_table[d].slice_y(v0):
                fails.append(d)
    record("column_slice_exchange", fails)

    # global operator: slice symmetry (the braid identity in series form)
    dy_table = [ctx.partial_y(b, ctx.table) for b in range(N)]
    d_table = []
    for j in range(N):
        acc = Series2.zero(N)
        for b in range(j + 1):
            acc = acc + ctx.partial_x(j - b, dy_table[b])
        d_table.append(acc)
    fails = []
    for i in range(N):
        for j in range(i + 1, N):
            if d_table[j].slice_y(i) != d_table[i].slice_y(j):
                fails.append((i, j))
    record("global_slice_symmetry", fails)

    # (partial^j G)_{ik} equals the brute-forced braid sum R(i, j, k)
    t = ctx.tensor

    def braid_sum(i, j, k):
        acc = ZERO
        for a in range(j + 1):
            b = j - a
            for h in range(i + 1):
                c1 = t.entry(i, a, h)
                if not c1:
                    continue
                for l in range(k + 1):
                    c2 = t.entry(k, b, l)
                    if c2:
                        c3 = t.entry(h, l, 1)
                        if c3:
                            acc += c1 * c2 * c3
        return acc

    fails = []
    for j in range(N):
        dj = d_table[j]
        for i in range(1, N):
            for k in range(1, N):
                if dj.coefficient(i, k) != braid_sum(i, j, k):
                    fails.append((i, j, k))
    record("braid_sum_match", fails)

    # R(i, v0, k) = R(i, k, v0)
    fails = []
    for i in range(N):
        for k in range(N):
            if v0 < N and braid_sum(i, v0, k) != braid_sum(i, k, v0):
                fails.append((i, k))
    record("degree_slot_symmetry", fails)

    # tilde_x^1 = partial_x^{v0} = g d/dx
    fails = []
    for h in x1_inputs[: N + 2]:
        t1 = ctx.tilde_partial_x(1, h)
        if t1 != ctx.column * h.derivative() or (v0 < N and t1 != ctx.partial_x(v0, h)):
            fails.append("unit")
            break
    record("tilde_x_unit", fails)

    # v tilde_x^v = tilde_x^1 tilde_x^{v-1} - (v-1) tilde_x^{v-1}
    fails = []
    for h in x1_inputs[: N + 2]:
        prev = h
        for v in range(1, N):
            cur = ctx.tilde_partial_x(v, h)
            rhs = ctx.tilde_partial_x(1, prev) - prev.scale(v - 1) if v > 1 else cur
            if v > 1 and cur.scale(v) != rhs:
                fails.append(v)
                break
            prev = cur
        if fails:
            break
    record("tilde_x_recursion", fails)

    # same recursion for the global tilde operator
    fails = []
    glob_inputs = x2_basis[: N + 1] + x2_random[:1]
    for H in glob_inputs:
        prev = H
        for v in range(1, min(N, 5)):
            cur = ctx.tilde_partial_global(v, H)
            if v > 1:
                rhs = ctx.tilde_partial_global(1, prev) - prev.scale(v - 1)
                if cur.scale(v) != rhs:
                    fails.append(v)
                    break
            prev = cur
        if fails:
            break
    record("tilde_global_recursion", fails)

    # tilde^v = C(tilde^1, v) as an operator, small v
    fails = []
    cap = min(N, 5)
    bin_inputs = x2_basis[: 2 * N] + x2_random[:1]
    for H in bin_inputs:
        w = H
        for v in range(1, cap):
            # after this step w = tilde^1 (tilde^1 - 1) ... (tilde^1 - v + 1) H
            w = ctx.tilde_partial_global(1, w) - w.scale(v - 1)
            if ctx.tilde_partial_global(v, H) != w.scale(ctx.inv_factorial[v]):
                fails.append(v)
                break
        if fails:
            break
    record("tilde_global_binomial", fails)

    # partial_x^v = sum_u (fbar^u)_v tilde_x^u
    fails = []
    for v in range(1, N):
        coeffs = [ctx.fbar_power(u).coeffs[v] for u in range(N)]
        for h in x1_inputs[: N + 1]:
            acc = Series1.zero(N)
            for u in range(1, N):
                if coeffs[u]:
                    acc = acc + ctx.tilde_partial_x(u, h).scale(coeffs[u])
            if acc != ctx.partial_x(v, h):
                fails.append(v)
                break
        if fails:
            break
    record("partial_x_from_tilde", fails)

    # partial^v = sum_u (fbar^u)_v tilde^u on two-variable inputs
    fails = []
    glob_check = x2_basis[:N] + x2_random[:1] + [ctx.flip]
    for v in range(1, min(N, 6)):
        coeffs = [ctx.fbar_power(u).coeffs[v] for u in range(N)]
        for H in glob_check:
            acc = Series2.zero(N)
            for u in range(1, N):
                if coeffs[u]:
                    acc = acc + ctx.tilde_partial_global(u, H).scale(coeffs[u])
            if acc != ctx.partial_global(v, H):
                fails.append(v)
                break
        if fails:
            break
    record("partial_global_from_tilde", fails)

    # Gbar^u = sum_{v >= u} (P^u)_v(x) fbar(y)^v
    fails = []
    for u in range(1, N):
        acc = Series2.zero(N)
        for v in range(u, N):
            pv = ctx.power_slice("p", u, v)
            if not pv.is_zero():
                acc = acc + Series2.from_x_series(pv, N).mul_y_series(ctx.fbar_power(v))
        if acc != ctx.power("table_reduced", u):
            fails.append(u)
    record("table_regrade_powers", fails)

    # t[d+w][v][w] = sum_i C(w, i) (Gbar^i)_{d+i, v}
    fails = []
    for w in range(1, N):
        for d in range(N - w):
            for v in range(N):
                if v == 0 and d == 0:
                    continue
                acc = ZERO
                for i in range(1, w + 1):
                    if d + i < N:
                        acc += comb(w, i) * ctx.power("table_reduced", i).coefficient(
                            d + i, v
                        )
                if t.entry(d + w, v, w) != acc:
                    fails.append((d, w, v))
    record("level_entry_binomial", fails)

    # sum_h t[u][v][h] l_h = (partial_x^v l)_u
    fails = []
    for _ in range(3):
        ell = _random_series1(rng, N)
        for v in range(N):
            pxl = ctx.partial_x(v, ell)
            for u in range(1, N):
                acc = ZERO
                for h in range(1, u + 1):
                    c = t.entry(u, v, h)
                    if c and ell.coeffs[h]:
                        acc += c * ell.coeffs[h]
                if pxl.coeffs[u] != acc:
                    fails.append((u, v))
    record("row_action_is_partial", fails)

    # t[j][a][h] = (F^h)_{aj}
    fails = []
    for h in range(1, N):
        fh = ctx.power("flip", h)
        for a in range(N):
            for j in range(N):
                if t.entry(j, a, h) != fh.coefficient(a, j):
                    fails.append((j, a, h))
    record("flip_power_entries", fails)

    # partial^j G = sum_h (F^h)_j(y) partial_x^h G
    fails = []
    for j in range(1, N):
        acc = Series2.zero(N)
        for h in range(1, j + 1):
            coeff = ctx.power_slice("flip", h, j)  # a series, read in y below
            if not coeff.is_zero():
                acc = acc + dx_table[h].mul_y_series(coeff)
        if acc != d_table[j]:
            fails.append(j)
    record("global_as_flip_convolution", fails)

    # eigenfunction identities
    fails = []
    q = ctx.eigenfunction
    if ctx.column * q.derivative() != q:
        fails.append("ode")
    for i in range(1, N):
        qi = ctx.eigen_slices[i]
        if ctx.column * qi.derivative() != qi.scale(i):
            fails.append(("scaled_ode", i))
    qs = ctx.q_series
    if qs.partial_x().mul_x_series(ctx.column) != qs.partial_y().mul_y_series(
        Series1.x(N)
    ):
        fails.append("series_ode")
    record("eigen_odes", fails)

    fails = []
    lhs = (q ** v0).scale(v0)
    if lhs != Series1.one(N) - ctx.f_power(v0).reciprocal():
        fails.append("closed_form")
    acc = Series1.zero(N)
    for k in range(1, N):
        c = general_binomial(Fraction(-v0), k)
        acc = acc + ctx.fbar_power(k).scale(-c)
    if lhs != acc:
        fails.append("binomial_form")
    record("eigen_power_vs_row", fails)

    fails = []
    fa = compose(ctx.row, ctx.eigenfunction_inv)
    geo = Series1(
        [Fraction(v0) ** (u // v0) if u % v0 == 0 else ZERO for u in range(N)]
    )
    if fa ** v0 != geo:
        fails.append("power_closed_form")
    acc = Series1.zero(N)
    k = 0
    while v0 * k < N:
        c = general_binomial(Fraction(1, v0) + k - 1, k)
        acc = acc + Series1.monomial(v0 * k, N, c * Fraction(v0) ** k)
        k += 1
    if fa != acc:
        fails.append("root_expansion")
    record("row_at_eigen_inverse", fails)

    # G = sum a_i q(x)^i f(y)^i and F = A(q(y) f(x))
    fails = []
    acc = Series2.zero(N)
    for i in range(1, N):
        qi = ctx.eigen_slices[i]
        if not qi.is_zero():
            acc = acc + Series2.from_x_series(qi, N).mul_y_series(ctx.f_power(i))
    if acc != ctx.table:
        fails.append("table_expansion")
    inner = Series2.from_y_series(q, N).mul_x_series(ctx.row)
    if compose(ctx.eigenfunction_inv, inner) != ctx.flip:
        fails.append("flip_composition")
    record("table_from_eigen", fails)

    # binomial transform pair between the two regradings
    fails = []
    for j in range(1, N):
        acc = Series1.zero(N)
        for i in range(j, N):
            acc = acc + ctx.eigen_slices[i].scale(comb(i, j))
        if acc != ctx.p_slices[j]:
            fails.append(("forward", j))
        acc = Series1.zero(N)
        for i in range(j, N):
            acc = acc + ctx.p_slices[i].scale((-1) ** (i - j) * comb(i, j))
        if acc != ctx.eigen_slices[j]:
            fails.append(("inverse", j))
    record("binomial_transform_pair", fails)

    # transport chain: S(fbar(y)) = v0 q(y)^{v0}; U(v0 q(y)^{v0}) = fbar(F) = T(fbar(y))
    fails = []
    fbar_y = ctx.row_reduced
    if compose(ctx.to_eigen, fbar_y) != (q ** v0).scale(v0):
        fails.append("to_eigen")
    fbar_flip = compose(ctx.row_reduced, ctx.flip)
    if substitute_y(ctx.from_eigen, (q ** v0).scale(v0)) != fbar_flip:
        fails.append("from_eigen")
    if substitute_y(ctx.transport, fbar_y) != fbar_flip:
        fails.append("transport")
    record("transport_chain", fails)

    # (1+y) T_y = tilde_x^1 T + f^{v0} (T + 1)
    fails = []
    T = ctx.transport
    ty = T.partial_y()
    lhs2 = ty + ty.mul_y_series(Series1.x(N))
    rhs2 = ctx.tilde_partial_x(1, T) + (T.add_constant(1)).mul_x_series(ctx.f_power(v0))
    if not lhs2.agrees_with(rhs2, N, N - 1):
        fails.append("ode")
    record("transport_ode", fails)

    # tilde^k F = sum_h (T^h)_k tilde_y^h F
    tilde_y_flip = [None] + [ctx.tilde_partial_y(h, ctx.flip) for h in range(1, N)]
    fails = []
    for k in range(1, N):
        acc = Series2.zero(N)
        for h in range(1, k + 1):
            coeff = ctx.power_slice("transport", h, k)
            if not coeff.is_zero():
                acc = acc + tilde_y_flip[h].mul_x_series(coeff)
        if acc != ctx.tilde_partial_global(k, ctx.flip):
            fails.append(k)
    record("tilde_flip_transport", fails)

    # sum_i (fbar(y)^i)_j tilde^i F = sum_i (fbar(F)^i)_j tilde_y^i F
    fails = []
    fbar_flip = compose(ctx.row_reduced, ctx.flip)
    fbar_flip_pows = [Series2.monomial(0, 0, N)]
    for i in range(1, N):
        fbar_flip_pows.append(fbar_flip_pows[-1] * fbar_flip)
    tilde_flip = [None] + [ctx.tilde_partial_global(i, ctx.flip) for i in range(1, N)]
    for j in range(1, N):
        lhs3 = Series2.zero(N)
        for i in range(1, N):
            c = ctx.fbar_power(i).coeffs[j]
            if c:
                lhs3 = lhs3 + tilde_flip[i].scale(c)
        rhs3 = Series2.zero(N)
        for i in range(1, N):
            coeff = fbar_flip_pows[i].slice_y(j)
            if not coeff.is_zero():
                rhs3 = rhs3 + tilde_y_flip[i].mul_x_series(coeff)
        if lhs3 != rhs3:
            fails.append(j)
    record("main_series_identity", fails)

    return SuiteReport(tuple(checks))
