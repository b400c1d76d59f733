"""Exact rational arithmetic and a strict-inequality feasibility solver.

Every probability and utility in the package is a :class:`fractions.Fraction`.
The solver decides systems of linear equalities, weak inequalities and
strict inequalities by maximizing a shared strictness margin with an
exact two-phase simplex (Bland's rule), so no tolerance parameter is ever
needed.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Hashable, Iterable, Mapping, Sequence

Rational = Fraction

_RATIONAL_RE = re.compile(r"^(-?[1-9][0-9]*|0)(?:/([1-9][0-9]*))?$")


def parse_rational(text: str) -> Fraction:
    """Parse a canonical ``"p/q"`` or ``"p"`` string.

    Non-canonical forms (``"2/4"``, ``"3/1"``, ``"0.3"``, ``"-0"``, ``"1/-2"``)
    are rejected with :class:`ValueError`.
    """
    if not isinstance(text, str):
        raise ValueError(f"rational must be a string, got {type(text).__name__}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a canonical rational: {text!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        return Fraction(num)
    den = int(m.group(2))
    if den == 1 or gcd(abs(num), den) != 1 or num == 0:
        raise ValueError(f"not a canonical rational: {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def rat_compare(a: Fraction, b: Fraction) -> Ordering:
    # denominators are positive, so cross-multiplication preserves order
    lhs = a.numerator * b.denominator
    rhs = b.numerator * a.denominator
    if lhs < rhs:
        return Ordering.LESS
    if lhs > rhs:
        return Ordering.GREATER
    return Ordering.EQUAL


class Relation(enum.Enum):
    EQ = "=="
    GE = ">="
    GT = ">"


@dataclass(frozen=True)
class LinConstraint:
    """``sum(coefficients[v] * v) <relation> rhs``; omitted variables are zero."""

    coefficients: Mapping[Hashable, Fraction]
    relation: Relation
    rhs: Fraction = Fraction(0)

    def __post_init__(self):
        coeffs = {v: Fraction(c) for v, c in self.coefficients.items()}
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def lhs(self, assignment: Mapping[Hashable, Fraction]) -> Fraction:
        return sum((c * assignment.get(v, 0) for v, c in self.coefficients.items()), Fraction(0))

    def margin(self, assignment: Mapping[Hashable, Fraction]) -> Fraction:
        return self.lhs(assignment) - self.rhs


def eq(coefficients, rhs=0) -> LinConstraint:
    return LinConstraint(coefficients, Relation.EQ, rhs)


def ge(coefficients, rhs=0) -> LinConstraint:
    return LinConstraint(coefficients, Relation.GE, rhs)


def gt(coefficients, rhs=0) -> LinConstraint:
    return LinConstraint(coefficients, Relation.GT, rhs)


@dataclass(frozen=True)
class FeasibilityOutcome:
    """Verdict of :func:`solve_strict_feasibility`.

    ``slack`` is the optimal shared margin of the strict constraints (capped
    at 1).  It is ``None`` only when the non-strict part of the system is
    already infeasible, in which case no margin is defined.
    """

    feasible: bool
    witness: dict | None = field(default=None)
    slack: Fraction | None = None

    def __bool__(self) -> bool:
        return self.feasible


def satisfies(constraints: Iterable[LinConstraint], assignment: Mapping, margin: Fraction = Fraction(0)) -> bool:
    """Exact re-substitution check; GT constraints must clear ``margin`` (and zero)."""
    for c in constraints:
        d = c.margin(assignment)
        if c.relation is Relation.EQ and d != 0:
            return False
        if c.relation is Relation.GE and d < 0:
            return False
        if c.relation is Relation.GT and (d <= 0 or d < margin):
            return False
    return True


class _Tableau:
    """Canonical-form tableau for ``max c.x  s.t.  A x = b, x >= 0``."""

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def pivot(self, i: int, j: int) -> None:
        row = self.rows[i]
        p = row[j]
        if p != 1:
            self.rows[i] = row = [a / p for a in row]
            self.rhs[i] = self.rhs[i] / p
        for k, other in enumerate(self.rows):
            if k == i:
                continue
            f = other[j]
            if f:
                self.rows[k] = [a - f * r for a, r in zip(other, row)]
                self.rhs[k] -= f * self.rhs[i]
        self.basis[i] = j

    def maximize(self, cost: Sequence[Fraction], allowed: int) -> bool:
        """Run Bland's-rule primal simplex; columns ``>= allowed`` never enter.

        Returns False if the objective is unbounded.
        """
        while True:
            entering = None
            for j in range(allowed):
                if j in self.basis:
                    continue
                reduced = cost[j] - sum((cost[b] * r[j] for b, r in zip(self.basis, self.rows)), Fraction(0))
                if reduced > 0:
                    entering = j
                    break
            if entering is None:
                return True
            best = None
            for i, r in enumerate(self.rows):
                a = r[entering]
                if a > 0:
                    key = (self.rhs[i] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], entering)

    def value(self, cost: Sequence[Fraction]) -> Fraction:
        return sum((cost[b] * v for b, v in zip(self.basis, self.rhs)), Fraction(0))


def _variable_order(constraints: Sequence[LinConstraint]) -> list:
    seen: dict = {}
    for c in constraints:
        for v in c.coefficients:
            seen.setdefault(v, None)
    return list(seen)


def solve_strict_feasibility(constraints: Sequence[LinConstraint]) -> FeasibilityOutcome:
    """Decide whether a system with strict inequalities has a rational solution.

    Every ``GT`` constraint ``a.x > b`` becomes ``a.x - b >= eps`` for one shared
    free variable ``eps <= 1``; ``eps`` is maximized exactly and the system is
    strictly feasible iff the optimum is positive.  Variables are free (split
    into positive and negative parts) and indexed by first appearance, which
    together with Bland's rule makes the witness a deterministic function of
    the input list.
    """
    constraints = list(constraints)
    variables = _variable_order(constraints)
    index = {v: k for k, v in enumerate(variables)}
    nvar = len(variables)

    # columns: [x+ ..., x- ..., eps+, eps-, surplus per inequality, slack of eps<=1]
    eps_pos, eps_neg = 2 * nvar, 2 * nvar + 1
    inequalities = [k for k, c in enumerate(constraints) if c.relation is not Relation.EQ]
    surplus_col = {k: 2 * nvar + 2 + n for n, k in enumerate(inequalities)}
    bound_slack = 2 * nvar + 2 + len(inequalities)
    nreal = bound_slack + 1

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    zero = Fraction(0)
    for k, c in enumerate(constraints):
        row = [zero] * nreal
        for v, a in c.coefficients.items():
            row[index[v]] += a
            row[nvar + index[v]] -= a
        if c.relation is Relation.GT:
            row[eps_pos] -= 1
            row[eps_neg] += 1
        if k in surplus_col:
            row[surplus_col[k]] = Fraction(-1)
        rows.append(row)
        rhs.append(c.rhs)
    row = [zero] * nreal
    row[eps_pos], row[eps_neg], row[bound_slack] = Fraction(1), Fraction(-1), Fraction(1)
    rows.append(row)
    rhs.append(Fraction(1))

    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-a for a in rows[i]]
            rhs[i] = -rhs[i]

    # phase 1: one artificial per row
    m = len(rows)
    for i, r in enumerate(rows):
        r.extend(Fraction(1) if k == i else zero for k in range(m))
    tab = _Tableau(rows, rhs, [nreal + i for i in range(m)])
    phase1 = [zero] * nreal + [Fraction(-1)] * m
    tab.maximize(phase1, nreal + m)
    if tab.value(phase1) < 0:
        return FeasibilityOutcome(False, None, None)

    # drive zero-valued artificials out of the basis; drop redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= nreal:
            j = next((j for j in range(nreal) if tab.rows[i][j] != 0), None)
            if j is None:
                del tab.rows[i], tab.rhs[i], tab.basis[i]
                continue
            tab.pivot(i, j)
        i += 1
    tab.rows = [r[:nreal] for r in tab.rows]

    phase2 = [zero] * nreal
    phase2[eps_pos], phase2[eps_neg] = Fraction(1), Fraction(-1)
    bounded = tab.maximize(phase2, nreal)
    assert bounded, "margin is capped at 1; the phase-2 objective cannot be unbounded"
    slack = tab.value(phase2)

    values = [zero] * nreal
    for b, v in zip(tab.basis, tab.rhs):
        values[b] = v
    witness = {v: values[index[v]] - values[nvar + index[v]] for v in variables}
    if slack > 0:
        return FeasibilityOutcome(True, witness, slack)
    return FeasibilityOutcome(False, None, slack)
