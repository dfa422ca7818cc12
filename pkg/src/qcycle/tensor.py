"""Structure-constant tensors of linear maps C (x) C -> C.

C is the dual of the truncated polynomial algebra K[y]/<y^n> with basis
x_0..x_{n-1}, comultiplication D(x_i) = sum_{j+k=i} x_j (x) x_k and counit
e(x_i) = delta_{i0}.  A map m(x_i (x) x_j) = sum_k t[i][j][k] x_k is stored as
the n*n*n grid t; entries with any index outside [0, n) are 0 by convention.

Such a map is a coalgebra morphism iff t[i][j][0] = delta_{0,i+j} and, for all
splittings l + h < n,

    t[i][j][l+h] = sum over a+b=i, c+d=j of t[a][c][l] * t[b][d][h].

In particular higher levels are convolution powers of level 1, which is what
`extend_from_level1` builds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm
from typing import Optional, Sequence

from .errors import BadLinearTerm, NotComultiplicative, ParseError, ZeroLambda
from .series import Series1, ZERO, ONE, as_fraction, format_rational, parse_rational

Grid = Sequence[Sequence[Fraction]]


class CoeffTensor:
    """Immutable n*n*n grid of exact rationals; entry(i, j, k) is 0 off-grid."""

    __slots__ = ("n", "entries")

    def __init__(self, entries):
        data = tuple(tuple(tuple(as_fraction(v) for v in col) for col in row) for row in entries)
        n = len(data)
        if n < 2 or any(len(r) != n for r in data) or any(len(c) != n for r in data for c in r):
            raise ValueError("entries must form an n*n*n grid with n >= 2")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", data)

    def __setattr__(self, name, value):
        raise AttributeError("CoeffTensor is immutable")

    def entry(self, i: int, j: int, k: int) -> Fraction:
        n = self.n
        if 0 <= i < n and 0 <= j < n and 0 <= k < n:
            return self.entries[i][j][k]
        return ZERO

    def __eq__(self, other) -> bool:
        return isinstance(other, CoeffTensor) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"CoeffTensor(n={self.n})"

    def level(self, k: int) -> list[list[Fraction]]:
        """The n*n grid of entries with output index k."""
        return [[self.entries[i][j][k] for j in range(self.n)] for i in range(self.n)]

    def with_entry(self, i: int, j: int, k: int, value) -> "CoeffTensor":
        grid = [[list(col) for col in row] for row in self.entries]
        grid[i][j][k] = as_fraction(value)
        return CoeffTensor(grid)

    def scaled_integers(self) -> tuple[list[list[list[int]]], int]:
        """(den * entries as ints, den) for a common denominator den."""
        den = 1
        for row in self.entries:
            for col in row:
                for v in col:
                    den = lcm(den, v.denominator)
        scaled = [
            [[int(v * den) for v in col] for col in row] for row in self.entries
        ]
        return scaled, den

    # -- serialization -----------------------------------------------------

    def to_payload(self) -> list:
        return [[[format_rational(v) for v in col] for col in row] for row in self.entries]

    @classmethod
    def from_payload(cls, payload) -> "CoeffTensor":
        try:
            return cls([[[parse_rational(v) for v in col] for col in row] for row in payload])
        except (TypeError, ValueError) as exc:
            raise ParseError(f"malformed tensor payload: {exc}") from exc


def counit_action(n: int) -> CoeffTensor:
    """The tensor of x_i . x_j = e(x_j) x_i, i.e. t[i][j][k] = [i==k][j==0]."""
    grid = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        grid[i][0][i] = ONE
    return CoeffTensor(grid)


@dataclass(frozen=True)
class QCycleStructure:
    """A pair (p, d) of coefficient tensors with the same n."""

    p: CoeffTensor
    d: CoeffTensor

    def __post_init__(self):
        if self.p.n != self.d.n:
            raise ValueError("p and d must have the same dimension")

    @property
    def n(self) -> int:
        return self.p.n

    @classmethod
    def involutive(cls, p: CoeffTensor) -> "QCycleStructure":
        return cls(p, p)

    def is_involutive(self) -> bool:
        return self.p == self.d

    def to_payload(self) -> dict:
        payload = {"schema": 1, "n": self.n, "p": self.p.to_payload()}
        if self.d != self.p:
            payload["d"] = self.d.to_payload()
        return payload

    @classmethod
    def from_payload(cls, payload: dict) -> "QCycleStructure":
        try:
            n = int(payload["n"])
            p = CoeffTensor.from_payload(payload["p"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed structure payload: {exc}") from exc
        if p.n != n:
            raise ParseError("tensor dimension does not match declared n")
        d = CoeffTensor.from_payload(payload["d"]) if "d" in payload else p
        if d.n != n:
            raise ParseError("tensor dimension does not match declared n")
        return cls(p, d)


@dataclass(frozen=True)
class MorphismReport:
    """Outcome of the coalgebra-morphism scan; carries the first violation."""

    ok: bool
    # (i, j, l, h, lhs, rhs); l + h is the output level that failed.
    violation: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


def is_coalgebra_morphism(t: CoeffTensor) -> MorphismReport:
    """Check the counit condition and every splitting l + h < n of every level."""
    n = t.n
    e = t.entries
    for i in range(n):
        for j in range(n):
            expect = ONE if i + j == 0 else ZERO
            if e[i][j][0] != expect:
                return MorphismReport(False, (i, j, 0, 0, e[i][j][0], expect))
    for l in range(n):
        for h in range(n - l):
            if l + h == 0:
                continue
            k = l + h
            for i in range(n):
                for j in range(n):
                    acc = ZERO
                    for a in range(i + 1):
                        for c in range(j + 1):
                            v = e[a][c][l]
                            if v:
                                w = e[i - a][j - c][h]
                                if w:
                                    acc += v * w
                    if acc != e[i][j][k]:
                        return MorphismReport(False, (i, j, l, h, e[i][j][k], acc))
    return MorphismReport(True)


def extend_from_level1(level1: Grid) -> CoeffTensor:
    """Build the full tensor from level-1 data.

    Level 0 is delta_{0,i+j}; level w >= 2 is the convolution

        t[u][v][w] = sum over u1+u2=u, v1+v2=v of level1[u1][v1] * t[u2][v2][w-1],

    which makes the result comultiplicative by construction.
    """
    n = len(level1)
    grid = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    grid[0][0][0] = ONE
    for u in range(n):
        for v in range(n):
            grid[u][v][1] = as_fraction(level1[u][v])
    for w in range(2, n):
        for u in range(n):
            for v in range(n):
                acc = ZERO
                for u1 in range(u + 1):
                    for v1 in range(v + 1):
                        c = grid[u1][v1][1]
                        if c:
                            d = grid[u - u1][v - v1][w - 1]
                            if d:
                                acc += c * d
                grid[u][v][w] = acc
    return CoeffTensor(grid)


def rescale_tensor(t: CoeffTensor, lam) -> CoeffTensor:
    """Entrywise lam^(k-i-j) twist; an isomorphism of the structure."""
    lam = as_fraction(lam)
    if not lam:
        raise ZeroLambda("rescaling factor must be nonzero")
    n = t.n
    powers = {e: lam ** e for e in range(-2 * (n - 1), n)}
    return CoeffTensor(
        [
            [[powers[k - i - j] * t.entries[i][j][k] for k in range(n)] for j in range(n)]
            for i in range(n)
        ]
    )


def rescale(s: QCycleStructure, lam) -> QCycleStructure:
    return QCycleStructure(rescale_tensor(s.p, lam), rescale_tensor(s.d, lam))


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: Optional[str] = None


@dataclass(frozen=True)
class SuiteReport:
    checks: tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.ok]

    def lines(self) -> list[str]:
        return [f"{'PASS' if c.ok else 'FAIL'}  {c.name}" + (f"  [{c.detail}]" if c.detail and not c.ok else "") for c in self.checks]


def _check(name: str, failures: list) -> CheckResult:
    if failures:
        return CheckResult(name, False, f"first failure at {failures[0]}")
    return CheckResult(name, True)


def structural_lemma_suite(t: CoeffTensor) -> SuiteReport:
    """Consequences of comultiplicativity (and, when meaningful, regularity).

    Checked exhaustively over the grid:
      * vanishing above the total degree: t[i][j][k] = 0 for k > i + j;
      * the top level is binomial: t[i][j][i+j] = C(i+j, i) t10^i t01^j
        (entries with i + j >= n must therefore vanish against the convention);
      * for regular candidates (t10 != 0, t01 = 0): t[i][j][k] = 0 for k > i
        and t[i][1][i] = i * t11 * t10^(i-1).
    """
    report = is_coalgebra_morphism(t)
    if not report:
        raise NotComultiplicative(f"violation at {report.violation}")
    n = t.n
    e = t.entries
    checks = []

    fails = [
        (i, j, k)
        for i in range(n)
        for j in range(n)
        for k in range(i + j + 1, n)
        if e[i][j][k]
    ]
    checks.append(_check("vanishing_above_total_degree", fails))

    t10, t01, t11 = t.entry(1, 0, 1), t.entry(0, 1, 1), t.entry(1, 1, 1)
    fails = []
    for i in range(n):
        for j in range(n):
            if i + j == 0:
                continue
            expected = comb(i + j, i) * t10 ** i * t01 ** j
            if t.entry(i, j, i + j) != expected:
                fails.append((i, j, i + j))
    checks.append(_check("top_level_binomial", fails))

    regular_candidate = bool(t10) and not t01
    if regular_candidate:
        fails = [
            (i, j, k)
            for i in range(n)
            for j in range(n)
            for k in range(i + 1, n)
            if e[i][j][k]
        ]
        checks.append(_check("vanishing_above_first_index", fails))

        fails = []
        for i in range(1, n):
            if t.entry(i, 1, i) != i * t11 * t10 ** (i - 1):
                fails.append((i, 1, i))
        checks.append(_check("column_one_derivation", fails))
    else:
        detail = "requires t[1][0][1] != 0 and t[0][1][1] = 0"
        checks.append(CheckResult("vanishing_above_first_index", False, detail))
        checks.append(CheckResult("column_one_derivation", False, detail))

    return SuiteReport(tuple(checks))


def reconstruct_f_from_g(g: Series1) -> Series1:
    """Recover the generating series of the first row from the first column.

    For degree-1 structures the column series g(x) = sum t[i][1][1] x^i
    determines the row series f(x) = sum t[1][j][1] x^j through

        (j - 1) f_j = sum_{i=1}^{j-1} f_i f_{j-i} - sum_{h=1}^{j-1} h g_{j-h+1} f_h

    with f_0 = f_1 = 1.  Requires g = x + O(x^2).
    """
    if g.coeffs[0] or len(g.coeffs) < 2 or g.coeffs[1] != 1:
        raise BadLinearTerm("column series must be x + O(x^2)")
    n = len(g.coeffs)
    f = [ZERO] * n
    f[0] = ONE
    if n > 1:
        f[1] = ONE
    for j in range(2, n):
        acc = ZERO
        for i in range(1, j):
            acc += f[i] * f[j - i]
        for h in range(1, j):
            if j - h + 1 < n and g.coeffs[j - h + 1]:
                acc -= h * g.coeffs[j - h + 1] * f[h]
        f[j] = acc / (j - 1)
    return Series1(f)
