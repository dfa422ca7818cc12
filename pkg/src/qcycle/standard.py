"""Construction of standard cycle coalgebras from a defining series.

Given n, a degree 1 <= v0 < n and normalized parameters {p_v} (p_{v0} = 1),
set f = 1 + sum_{v0 <= v < n} p_v x^v.  The structure tensor is built in three
steps:

  1. the column series g = f (f^{v0} - 1) / f', which lies in x + x^2 K[[x]];
  2. the two-variable table G = sum g_v(x) y^v fixed by g_0 = x and

       (v+1) g_{v+1} = g * sum_{l} (v-l+1) p_{v-l+1} g_l'  -  sum_{l} p_{v-l+1} l g_l,

     equivalently G_y = g(x) f'(y) G_x - (f(y) - 1) G_y;
  3. level-1 entries t[u][v][1] = coefficient of x^u in g_v, extended to all
     levels by convolution (`tensor.extend_from_level1`).

The resulting pair (t, t) satisfies all braid-equation families exactly; the
identity suite in `operators` re-derives this through the differential
calculus on K[[x, y]].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .errors import ReconstructionError, ValidationError
from .series import (
    ONE,
    Series1,
    Series2,
    ZERO,
    as_fraction,
    divide_exact,
)
from .tensor import CheckResult, CoeffTensor, SuiteReport, extend_from_level1


@dataclass(frozen=True)
class StandardCycleParams:
    """Normalized defining data: dimension n, degree v0, parameters p_v.

    coeffs maps v -> p_v for v0 <= v < n and must have p_{v0} = 1; the
    general (non-normalized) case is reached by `tensor.rescale`.
    """

    n: int
    degree: int
    coeffs: tuple  # ((v, Fraction), ...) sorted by v

    def __init__(self, n: int, degree: int, coeffs: Mapping[int, object]):
        if n < 2:
            raise ValidationError("n must be at least 2")
        if not 1 <= degree < n:
            raise ValidationError("degree must satisfy 1 <= v0 < n")
        normalized = {int(v): as_fraction(c) for v, c in coeffs.items()}
        if set(normalized) != set(range(degree, n)):
            raise ValidationError("parameters must cover exactly v0 <= v < n")
        if normalized[degree] != 1:
            raise ValidationError("p_{v0} must equal 1 in normalized form")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", tuple(sorted(normalized.items())))

    @classmethod
    def from_tail(cls, n: int, degree: int, tail: Sequence[object]) -> "StandardCycleParams":
        """Parameters p_{v0+1}, ..., p_{n-1}; p_{v0} is fixed to 1."""
        if len(tail) != n - degree - 1:
            raise ValidationError(
                f"expected {n - degree - 1} parameters p_{{{degree + 1}}}..p_{{{n - 1}}}, got {len(tail)}"
            )
        coeffs = {degree: ONE}
        for offset, value in enumerate(tail):
            coeffs[degree + 1 + offset] = as_fraction(value)
        return cls(n, degree, coeffs)

    def coeff(self, v: int) -> Fraction:
        """p_v, with p_0 = 1 and p_v = 0 outside the stored range."""
        if v == 0:
            return ONE
        for w, c in self.coeffs:
            if w == v:
                return c
        return ZERO

    def row_series(self, order: int) -> Series1:
        """f = 1 + sum p_v x^v at the requested truncation order."""
        data = [ZERO] * order
        data[0] = ONE
        for v, c in self.coeffs:
            if v < order:
                data[v] = c
        return Series1(data)


@dataclass(frozen=True)
class StandardCycleBundle:
    """Everything `build_standard_cycle` produces, at one truncation order."""

    params: StandardCycleParams
    order: int
    row: Series1        # f, at truncation `order`
    column: Series1     # g = f (f^{v0} - 1) / f'
    table: Series2      # G(x, y): coefficient of x^u y^v is t[u][v][1]
    table_flip: Series2  # G(y, x)
    tensor: CoeffTensor  # dimension `order`

    @property
    def degree(self) -> int:
        return self.params.degree


def column_series(params: StandardCycleParams, order: int) -> Series1:
    """g = f (f^{v0} - 1) / f', exact to the requested order.

    For v0 > 1, f' vanishes at 0 to order v0 - 1, so the quotient is taken by
    the shifted exact division (ord(f') = v0 - 1 <= v0 = ord of the numerator).
    """
    v0 = params.degree
    work = order + v0 + 1
    f = params.row_series(work)
    numerator = f * (f ** v0).add_constant(-1)
    g = divide_exact(numerator, f.derivative())
    return g.truncated(order)


def table_slices(params: StandardCycleParams, order: int) -> list[Series1]:
    """The slices g_v of the table, driven degreewise from g_0 = x."""
    v0 = params.degree
    g = column_series(params, order)
    slices = [Series1.x(order)]
    derivs = [slices[0].derivative()]
    for v in range(order - 1):
        acc = Series1.zero(order)
        # g * sum_l (v-l+1) p_{v-l+1} g_l'
        inner = Series1.zero(order)
        for l in range(0, v - v0 + 2):
            c = params.coeff(v - l + 1)
            if c:
                inner = inner + derivs[l].scale((v - l + 1) * c)
        acc = acc + g * inner
        # - sum_l p_{v-l+1} l g_l
        for l in range(1, v - v0 + 2):
            c = params.coeff(v - l + 1)
            if c:
                acc = acc - slices[l].scale(l * c)
        nxt = acc.scale(Fraction(1, v + 1))
        slices.append(nxt)
        derivs.append(nxt.derivative())
    return slices


def build_standard_cycle(
    params: StandardCycleParams, order: Optional[int] = None
) -> StandardCycleBundle:
    """Construct the bundle at truncation `order` (default: n).

    Orders above n are valid: the defining series is a polynomial of degree
    below n, and all recursions are triangular in the degree, so the larger
    tensor restricts to the order-n one.
    """
    if order is None:
        order = params.n
    if order < params.n:
        raise ValidationError("order must be at least n")
    slices = table_slices(params, order)
    table = Series2.from_y_slices(slices, order)
    level1 = [[slices[v].coeffs[u] for v in range(order)] for u in range(order)]
    tensor = extend_from_level1(level1)
    return StandardCycleBundle(
        params=params,
        order=order,
        row=params.row_series(order),
        column=column_series(params, order),
        table=table,
        table_flip=table.transposed(),
        tensor=tensor,
    )


def table_properties(bundle: StandardCycleBundle) -> SuiteReport:
    """Defining properties of the table G and its level-1 entries.

    Checked exhaustively at the bundle's truncation order:
      1. g_v = 0 for 0 < v < v0          4. G_x(0, y) = f(y)
      2. g_{v0} = g                      5. t[1][v][1] = p_v for v >= v0
      3. G(0, y) = 0                     6. t[u][v][w] = 0 for u < w
    and the column identity g f' = f (f^{v0} - 1).
    """
    v0 = bundle.degree
    order = bundle.order
    table, tensor = bundle.table, bundle.tensor
    checks = []

    fails = [v for v in range(1, v0) if not table.slice_y(v).is_zero()]
    checks.append(CheckResult("low_slices_vanish", not fails, str(fails[:3]) if fails else None))

    checks.append(
        CheckResult("degree_slice_is_column", table.slice_y(v0) == bundle.column)
    )

    fails = [v for v in range(order) if table.coeffs[0][v]]
    checks.append(CheckResult("table_vanishes_at_x0", not fails, str(fails[:3]) if fails else None))

    fails = [v for v in range(order) if table.coeffs[1][v] != bundle.row.coeffs[v]]
    checks.append(CheckResult("x_derivative_at_0_is_row", not fails, str(fails[:3]) if fails else None))

    fails = [
        v for v in range(v0, order) if tensor.entry(1, v, 1) != bundle.params.coeff(v)
    ]
    checks.append(CheckResult("level1_row_matches_params", not fails, str(fails[:3]) if fails else None))

    fails = [
        (u, v, w)
        for u in range(order)
        for v in range(order)
        for w in range(u + 1, order)
        if tensor.entries[u][v][w]
    ]
    checks.append(CheckResult("levels_vanish_below_diagonal", not fails, str(fails[:3]) if fails else None))

    f = bundle.row
    lhs = bundle.column * f.derivative()
    rhs = f * ((f ** v0).add_constant(-1))
    ok = lhs.coeffs[: order - 1] == rhs.coeffs[: order - 1]
    checks.append(CheckResult("column_row_identity", ok))

    return SuiteReport(tuple(checks))


def invariant_suite(bundle: StandardCycleBundle) -> SuiteReport:
    """Structural identities of the tensor for a degree-v0 structure.

    Exhaustive over all valid indices at the bundle's order:
      * t[k][i][k] = 0 for 0 < i < v0;
      * t[k][v0][k] = k * t[1][v0][1];
      * t[j][0][k] = delta_{kj};
      * t[i][j][k] = 0 for 0 < j < v0;
      * t[i][v0][k] = k * t[i-k+1][v0][1];
      * the column/row identity with g, f read off the tensor itself.
    """
    t = bundle.tensor
    n = t.n
    v0 = bundle.degree
    checks = []

    fails = [(k, i) for k in range(n) for i in range(1, v0) if t.entry(k, i, k)]
    checks.append(CheckResult("diagonal_low_column_vanishes", not fails, str(fails[:3]) if fails else None))

    base = t.entry(1, v0, 1)
    fails = [k for k in range(1, n) if t.entry(k, v0, k) != k * base]
    checks.append(CheckResult("diagonal_column_derivation", not fails, str(fails[:3]) if fails else None))

    fails = [
        (j, k)
        for j in range(n)
        for k in range(n)
        if t.entry(j, 0, k) != (ONE if j == k else ZERO)
    ]
    checks.append(CheckResult("column_zero_is_identity", not fails, str(fails[:3]) if fails else None))

    fails = [
        (i, j, k)
        for i in range(n)
        for j in range(1, v0)
        for k in range(n)
        if t.entry(i, j, k)
    ]
    checks.append(CheckResult("low_columns_vanish", not fails, str(fails[:3]) if fails else None))

    fails = [
        (i, k)
        for i in range(n)
        for k in range(n)
        if t.entry(i, v0, k) != k * t.entry(i - k + 1, v0, 1)
    ]
    checks.append(CheckResult("column_v0_derivation", not fails, str(fails[:3]) if fails else None))

    # g f' = f (f^{v0} - 1) with g, f read off the tensor.
    g = Series1([t.entry(i, v0, 1) for i in range(n)])
    f = Series1([t.entry(1, j, 1) for j in range(n)])
    lhs = g * f.derivative()
    rhs = f * ((f ** v0).add_constant(-1))
    ok = lhs.coeffs[: n - 1] == rhs.coeffs[: n - 1]
    checks.append(CheckResult("tensor_column_row_identity", ok))

    return SuiteReport(tuple(checks))


def reconstruct_from_row(n: int, degree: int, row: Sequence[object]) -> CoeffTensor:
    """Rebuild the full tensor from its normalized first row, independently.

    `row` lists t[1][v][1] for v = 0..n-1 and must satisfy row[0] = 1,
    row[v] = 0 for 0 < v < degree, row[degree] = 1.  The tensor is filled
    degree by degree from the coefficient recursions that the braid equations
    force, never touching the series construction, so it serves as a second
    route to the same object.
    """
    v0 = degree
    frow = [as_fraction(c) for c in row]
    if len(frow) != n:
        raise ValidationError("row must have length n")
    if frow[0] != 1 or any(frow[v] for v in range(1, v0)) or frow[v0] != 1:
        raise ValidationError("row is not in normalized form")

    t = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    t[0][0][0] = ONE
    for v in range(n):
        t[1][v][1] = frow[v]
    t[1][0][1] = ONE

    if v0 > 1:
        # Column entries t[i][v0][1] from the convolution recursion
        #   v0 * col[i] = (f^{v0+1} - f)_{i+v0-1} - sum_{m<i} col[m] (i+v0-m) f_{i+v0-m}.
        top = n + v0 - 1
        f = [frow[v] if v < n else ZERO for v in range(top)]
        fpow = [ZERO] * top
        fpow[0] = ONE
        for _ in range(v0 + 1):
            fpow = [
                sum((fpow[a] * f[j - a] for a in range(j + 1) if fpow[a] and f[j - a]), ZERO)
                for j in range(top)
            ]
        col = [ZERO] * n
        col[1] = ONE
        for i in range(2, n):
            j = i + v0 - 1
            acc = (fpow[j] if j < top else ZERO) - (f[j] if j < top else ZERO)
            for m in range(1, i):
                idx = i + v0 - m
                if idx < top and f[idx]:
                    acc -= col[m] * (i + v0 - m) * f[idx]
            col[i] = acc / v0
        for i in range(2, n):
            t[i][v0][1] = col[i]
        # (f^{v0})_b, needed as the diagonal constants t[v0][b][v0].
        fp0 = [ZERO] * n
        fp0[0] = ONE
        for _ in range(v0):
            fp0 = [
                sum((fp0[a] * f[j - a] for a in range(j + 1) if fp0[a] and f[j - a]), ZERO)
                for j in range(n)
            ]

    for s in range(2, 2 * n - 1):
        # Higher levels at this total degree, from strictly lower degrees.
        for i in range(max(0, s - n + 1), min(s, n - 1) + 1):
            j = s - i
            if j >= n:
                continue
            for w in range(2, n):
                acc = ZERO
                for i1 in range(i + 1):
                    for j1 in range(j + 1):
                        c = t[i1][j1][1]
                        if c:
                            d = t[i - i1][j - j1][w - 1]
                            if d:
                                acc += c * d
                t[i][j][w] = acc

        if v0 == 1:
            # Column entry t[s-1][1][1].
            j = s - 1
            if 2 <= j < n:
                acc = ZERO
                for a in range(j):
                    acc += frow[a] * frow[j - a]
                for l in range(2, j + 1):
                    if frow[l]:
                        acc -= l * t[j - l + 1][1][1] * frow[l]
                t[j][1][1] = acc
            # Interior level-1 entries at this degree.
            for i in range(2, n):
                j = s - i
                if not 2 <= j < n:
                    continue
                first = ZERO
                for a in range(j + 1):
                    b = j - a
                    fb = frow[b]
                    if not fb:
                        continue
                    for h in range(1, i + 1):
                        if (a, h) == (j, 1):
                            continue
                        c = t[i][a][h]
                        if c and t[h][1][1]:
                            first += c * fb * t[h][1][1]
                second = ZERO
                for c0 in range(2):
                    d0 = 1 - c0
                    for h in range(1, i + 1):
                        u = t[i][c0][h]
                        if not u:
                            continue
                        for l in range(1, j + 1):
                            if (h, l) == (i, j):
                                continue
                            v = t[j][d0][l]
                            if v and t[h][l][1]:
                                second += u * v * t[h][l][1]
                denom = i + j - 1
                if denom == 0:
                    raise ReconstructionError("vanishing recursion denominator")
                t[i][j][1] = (first - second) / denom
        else:
            # Interior level-1 entries for j > v0; lower columns are zero and
            # the v0 column was precomputed above.
            for i in range(2, n):
                j = s - i
                if not (v0 < j < n):
                    continue
                first = ZERO
                for a in range(j + 1):
                    b = j - a
                    fb = fp0[b]
                    if not fb:
                        continue
                    for h in range(1, i + 1):
                        if (h, a) == (1, j):
                            continue
                        c = t[i][a][h]
                        if c and col[h]:
                            first += c * fb * col[h]
                second = ZERO
                # c = 0, h = i branch: sum_l t[j][v0][l] t[i][l][1], l < j,
                # with t[j][v0][l] = l * col[j-l+1].
                for l in range(v0, j):
                    cl = t[i][l][1]
                    if cl and col[j - l + 1]:
                        second += l * col[j - l + 1] * cl
                # d = 0, l = j branch: sum_{h<i} t[i][v0][h] t[h][j][1],
                # with t[i][v0][h] = h * col[i-h+1].
                for h in range(1, i):
                    ch = t[h][j][1]
                    if ch and col[i - h + 1]:
                        second += h * col[i - h + 1] * ch
                denom = i + j - 1
                if denom == 0:
                    raise ReconstructionError("vanishing recursion denominator")
                t[i][j][1] = (first - second) / denom

    # One final pass for levels whose inputs only completed late: redo all
    # convolution levels now that level 1 is complete.
    final = extend_from_level1([[t[u][v][1] for v in range(n)] for u in range(n)])
    return final
