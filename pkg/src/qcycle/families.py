"""Classification table routing, the non-root-of-unity family, and n = 3 fixtures.

Every verified structure lands in exactly one row of the classification table,
keyed on: whether t[1][1][1] vanishes, whether p = d, whether column zero of p
is the identity action, and the root-of-unity order of the step entries
p[1][0][1] and d[1][0][1].  Over the rationals the only roots of unity are
1 and -1, so the order reported is 1, 2, or "not a root below n".
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .errors import PreconditionNotMet, RootOfUnityLambda, UnverifiedStructure, ValidationError
from .series import ONE, ZERO, as_fraction
from .standard import StandardCycleParams, build_standard_cycle
from .tensor import (
    CheckResult,
    QCycleStructure,
    SuiteReport,
    extend_from_level1,
    rescale,
)
from .solution import check_braid_reduced


class ClassificationRow(Enum):
    P11_NONZERO = "p11_nonzero"
    INVOLUTIVE_DELTA_WITH_HIGHER_PARAM = "involutive_delta_with_higher_param"
    INVOLUTIVE_DELTA_ALL_ZERO = "involutive_delta_all_zero"
    INVOLUTIVE_P10_EQ_1_NONDELTA = "involutive_p10_eq_1_nondelta"
    INVOLUTIVE_P10_ROOT_OF_UNITY = "involutive_p10_root_of_unity"
    INVOLUTIVE_P10_NOT_ROOT = "involutive_p10_not_root"
    NONINV_BOTH_ROOTS = "noninv_both_roots"
    NONINV_P10_NOT_ROOT = "noninv_p10_not_root"
    NONINV_D10_NOT_ROOT = "noninv_d10_not_root"


# How completely each row is understood: "complete" rows pin the structure
# down entirely, the others are covered by partial results and examples.
ROW_STATUS = {
    ClassificationRow.P11_NONZERO: "complete",
    ClassificationRow.INVOLUTIVE_DELTA_WITH_HIGHER_PARAM: "complete",
    ClassificationRow.INVOLUTIVE_DELTA_ALL_ZERO: "partial",
    ClassificationRow.INVOLUTIVE_P10_EQ_1_NONDELTA: "examples",
    ClassificationRow.INVOLUTIVE_P10_ROOT_OF_UNITY: "partial",
    ClassificationRow.INVOLUTIVE_P10_NOT_ROOT: "complete",
    ClassificationRow.NONINV_BOTH_ROOTS: "partial",
    ClassificationRow.NONINV_P10_NOT_ROOT: "complete",
    ClassificationRow.NONINV_D10_NOT_ROOT: "complete",
}


@dataclass(frozen=True)
class ClassificationVerdict:
    row: ClassificationRow
    status: str
    notes: str

    @property
    def complete(self) -> bool:
        return self.status == "complete"


def root_of_unity_order(value: Fraction, bound: int) -> Optional[int]:
    """Least 0 < k < bound with value^k = 1, or None.  Over Q only 1 and -1 qualify."""
    if value == 1:
        return 1 if bound > 1 else None
    if value == -1 and bound > 2:
        return 2
    return None


def classify(s: QCycleStructure) -> ClassificationVerdict:
    """Route a verified structure to its classification row."""
    if not check_braid_reduced(s):
        raise UnverifiedStructure("structure fails the braid checks")
    n = s.n
    p, d = s.p, s.d
    p11 = p.entry(1, 1, 1)
    p10 = p.entry(1, 0, 1)
    d10 = d.entry(1, 0, 1)

    if p11:
        return ClassificationVerdict(
            ClassificationRow.P11_NONZERO,
            ROW_STATUS[ClassificationRow.P11_NONZERO],
            "equivalent to a unique degree-1 standard cycle by rescaling with t[1][1][1]",
        )

    if s.is_involutive():
        delta_column = all(
            p.entry(j, 0, 1) == (ONE if j == 1 else ZERO) for j in range(n)
        )
        if delta_column:
            higher = next((j for j in range(2, n) if p.entry(1, j, 1)), None)
            if higher is not None:
                return ClassificationVerdict(
                    ClassificationRow.INVOLUTIVE_DELTA_WITH_HIGHER_PARAM,
                    ROW_STATUS[ClassificationRow.INVOLUTIVE_DELTA_WITH_HIGHER_PARAM],
                    f"first nonzero row parameter at degree {higher}; standard cycle after "
                    "rescaling by a degree-th root of it (may not exist over Q)",
                )
            return ClassificationVerdict(
                ClassificationRow.INVOLUTIVE_DELTA_ALL_ZERO,
                ROW_STATUS[ClassificationRow.INVOLUTIVE_DELTA_ALL_ZERO],
                "row parameters all vanish; first column forced to vanish as well",
            )
        if p10 == 1:
            return ClassificationVerdict(
                ClassificationRow.INVOLUTIVE_P10_EQ_1_NONDELTA,
                ROW_STATUS[ClassificationRow.INVOLUTIVE_P10_EQ_1_NONDELTA],
                "column zero is not the identity action although the step entry is 1",
            )
        order = root_of_unity_order(p10, n)
        if order is not None:
            return ClassificationVerdict(
                ClassificationRow.INVOLUTIVE_P10_ROOT_OF_UNITY,
                ROW_STATUS[ClassificationRow.INVOLUTIVE_P10_ROOT_OF_UNITY],
                f"step entry {p10} is a root of unity of order {order} below n = {n}",
            )
        return ClassificationVerdict(
            ClassificationRow.INVOLUTIVE_P10_NOT_ROOT,
            ROW_STATUS[ClassificationRow.INVOLUTIVE_P10_NOT_ROOT],
            f"step entry {p10} is not a root of unity of order below n = {n}",
        )

    p_order = root_of_unity_order(p10, n)
    d_order = root_of_unity_order(d10, n)
    if p_order is not None and d_order is not None:
        return ClassificationVerdict(
            ClassificationRow.NONINV_BOTH_ROOTS,
            ROW_STATUS[ClassificationRow.NONINV_BOTH_ROOTS],
            f"both step entries are roots of unity (orders {p_order}, {d_order})",
        )
    if p_order is None:
        return ClassificationVerdict(
            ClassificationRow.NONINV_P10_NOT_ROOT,
            ROW_STATUS[ClassificationRow.NONINV_P10_NOT_ROOT],
            f"p step entry {p10} is not a root of unity below n = {n}",
        )
    return ClassificationVerdict(
        ClassificationRow.NONINV_D10_NOT_ROOT,
        ROW_STATUS[ClassificationRow.NONINV_D10_NOT_ROOT],
        f"d step entry {d10} is not a root of unity below n = {n}",
    )


@dataclass(frozen=True)
class NonRootFamilyInput:
    """Data for the family with vanishing interaction: column-zero steps
    lambda_1..lambda_{n-1} for p (lambda_1 not a root of unity below n) and
    the d step entry mu."""

    n: int
    lambdas: tuple
    mu: Fraction

    def __init__(self, n: int, lambdas: Sequence[object], mu: object):
        if n < 2:
            raise ValidationError("n must be at least 2")
        lam = tuple(as_fraction(v) for v in lambdas)
        if len(lam) != n - 1:
            raise ValidationError("need lambda_1 .. lambda_{n-1}")
        mu = as_fraction(mu)
        if not lam[0]:
            raise ValidationError("lambda_1 must be nonzero")
        if not mu:
            raise ValidationError("mu must be nonzero")
        if root_of_unity_order(lam[0], n) is not None:
            raise RootOfUnityLambda(f"lambda_1 = {lam[0]} has a power equal to 1 below n")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "mu", mu)


def build_nonroot_family(inp: NonRootFamilyInput) -> QCycleStructure:
    """The unique structure with p[i][0][1] = lambda_i, d[1][0][1] = mu and no
    interaction: all entries with second index > 0 vanish.

    The remaining d column is forced by

        d[i][0][1] (lambda_1 - lambda_1^i)
            = sum_{h<i} p[i][0][h] d[h][0][1] - sum_{h>=2} d[i][0][h] p[h][0][1],

    where levels >= 2 are composition products of the level-1 column; the
    structure is involutive exactly when mu = lambda_1.
    """
    n = inp.n
    lam = inp.lambdas

    p_level1 = [[ZERO] * n for _ in range(n)]
    for i in range(1, n):
        p_level1[i][0] = lam[i - 1]
    p = extend_from_level1(p_level1)

    d_col = [ZERO] * n
    d_col[1] = inp.mu
    for i in range(2, n):
        # level-k values of d's column up to i, from d_col[1..i-1]
        d_levels = _column_levels(d_col, i)
        acc = ZERO
        for h in range(1, i):
            acc += p.entry(i, 0, h) * d_col[h]
        for h in range(2, i + 1):
            acc -= d_levels[h] * lam[h - 1]
        denom = lam[0] - lam[0] ** i
        d_col[i] = acc / denom

    d_level1 = [[ZERO] * n for _ in range(n)]
    for i in range(1, n):
        d_level1[i][0] = d_col[i]
    d = extend_from_level1(d_level1)
    return QCycleStructure(p, d)


def _column_levels(col: Sequence[Fraction], i: int) -> list[Fraction]:
    """levels[k] = sum over compositions i = i_1 + ... + i_k (parts > 0) of
    prod col[i_s]; the k-fold convolution power of the column at index i."""
    levels = [ZERO] * (i + 1)
    conv = list(col[: i + 1])
    levels[1] = conv[i]
    current = conv
    for k in range(2, i + 1):
        nxt = [ZERO] * (i + 1)
        for a in range(1, i + 1):
            if col[a]:
                for b in range(1, i + 1 - a):
                    if current[b]:
                        nxt[a + b] += col[a] * current[b]
        current = nxt
        levels[k] = current[i]
    return levels


def nonunit_vanishing_check(s: QCycleStructure, order_bound: int) -> SuiteReport:
    """For structures whose p step entry has no power equal to 1 below
    order_bound: entries with both lower indices positive vanish up to total
    degree order_bound, and the d column satisfies its forced recursion."""
    p, d = s.p, s.d
    n = s.n
    p10 = p.entry(1, 0, 1)
    for r in range(1, order_bound):
        if p10 ** r == 1:
            raise PreconditionNotMet(f"step entry has order {r} < {order_bound}")
    checks = []

    fails = [
        (i, j, k)
        for i in range(1, n)
        for j in range(1, n)
        for k in range(n)
        if i + j <= order_bound and (p.entry(i, j, k) or d.entry(i, j, k))
    ]
    checks.append(CheckResult("interaction_vanishes", not fails, str(fails[:3]) if fails else None))

    fails = []
    for i in range(2, min(order_bound, n - 1) + 1):
        lhs = d.entry(i, 0, 1) * (p10 - p.entry(i, 0, i))
        rhs = ZERO
        for h in range(1, i):
            rhs += p.entry(i, 0, h) * d.entry(h, 0, 1)
        for h in range(2, i + 1):
            rhs -= d.entry(i, 0, h) * p.entry(h, 0, 1)
        if lhs != rhs:
            fails.append(i)
    checks.append(CheckResult("d_column_recursion", not fails, str(fails[:3]) if fails else None))

    return SuiteReport(tuple(checks))


def first_column_vanishing_check(s: QCycleStructure) -> SuiteReport:
    """When t[1][1][1] = 0, p = d, column zero is the identity action, and the
    whole first row vanishes, the whole first column vanishes too."""
    p = s.p
    n = s.n
    if p.entry(1, 1, 1):
        raise PreconditionNotMet("t[1][1][1] must vanish")
    if not s.is_involutive():
        raise PreconditionNotMet("structure must be involutive")
    if any(p.entry(i, 0, 1) != (ONE if i == 1 else ZERO) for i in range(n)):
        raise PreconditionNotMet("column zero must be the identity action")
    if any(p.entry(1, j, 1) for j in range(1, n)):
        raise PreconditionNotMet("first row must vanish")
    fails = [i for i in range(n) if p.entry(i, 1, 1)]
    return SuiteReport(
        (CheckResult("first_column_vanishes", not fails, str(fails[:3]) if fails else None),)
    )


@dataclass(frozen=True)
class Fixture:
    name: str
    parameters: dict
    structure: QCycleStructure


def fixtures_n3() -> list[Fixture]:
    """The three parameterized n = 3 families, at three rational points each.

    * unit_step: p = d, p[1][0][1] = 1, free entries p[2][0][1], p[2][2][1];
    * negative_step: p = d, p[1][0][1] = -1, free p[1][2][1], p[2][0][1], with
      p[2][1][1] = 2 p[1][2][1] and p[2][2][1] = -5 p[1][2][1] p[2][0][1] / 2;
    * mixed_step: p != d in general, p[1][0][1] = 1, d[1][0][1] = -1, free
      p[1][2][1], with d[1][2][1] = -p[1][2][1].

    Every fixture is extended from its level-1 grid and verified against the
    reduced braid check at build time.
    """
    n = 3
    fixtures = []

    for p22, p20 in ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(2)), (Fraction(2), Fraction(0))):
        level1 = [[ZERO] * n for _ in range(n)]
        level1[1][0] = ONE
        level1[2][0] = p20
        level1[2][2] = p22
        p = extend_from_level1(level1)
        fixtures.append(
            Fixture("unit_step", {"p22": p22, "p20": p20}, QCycleStructure.involutive(p))
        )

    for p12, p20 in ((Fraction(1), Fraction(2)), (Fraction(0), Fraction(1)), (Fraction(2), Fraction(1))):
        level1 = [[ZERO] * n for _ in range(n)]
        level1[1][0] = -ONE
        level1[1][2] = p12
        level1[2][0] = p20
        level1[2][1] = 2 * p12
        level1[2][2] = Fraction(-5) * p12 * p20 / 2
        p = extend_from_level1(level1)
        fixtures.append(
            Fixture("negative_step", {"p12": p12, "p20": p20}, QCycleStructure.involutive(p))
        )

    for p12 in (Fraction(1), Fraction(0), Fraction(2)):
        p_level1 = [[ZERO] * n for _ in range(n)]
        p_level1[1][0] = ONE
        p_level1[1][2] = p12
        d_level1 = [[ZERO] * n for _ in range(n)]
        d_level1[1][0] = -ONE
        d_level1[1][2] = -p12
        structure = QCycleStructure(
            extend_from_level1(p_level1), extend_from_level1(d_level1)
        )
        fixtures.append(Fixture("mixed_step", {"p12": p12}, structure))

    for fixture in fixtures:
        report = check_braid_reduced(fixture.structure)
        if not report:
            raise AssertionError(
                f"fixture {fixture.name}{fixture.parameters} fails the braid check: "
                f"{report.violations[:1]}"
            )
    return fixtures


def normalize(s: QCycleStructure, lam) -> QCycleStructure:
    """Rescale by the isomorphism x_i -> lam^i x_i.

    With lam = t[1][1][1] (degree 1) or lam a degree-th root of the first
    nonzero row parameter, a structure in one of the "complete" rows lands
    exactly on its standard-cycle normal form; over Q the caller must supply
    the root explicitly since it need not exist.
    """
    return rescale(s, lam)


def standard_structure(
    n: int,
    degree: int,
    tail: Sequence[object] = (),
    rng: Optional[random.Random] = None,
) -> QCycleStructure:
    """Convenience: the involutive structure of a standard cycle coalgebra."""
    if rng is not None:
        tail = [
            Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2, 3)))
            for _ in range(n - degree - 1)
        ]
    params = StandardCycleParams.from_tail(n, degree, list(tail))
    return QCycleStructure.involutive(build_standard_cycle(params).tensor)
