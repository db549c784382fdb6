"""Dense simplex-method linear programming over exact rationals.

Solves  maximize c.x  subject to  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0
with two phases and Bland's pivot rule, entirely in Fraction arithmetic.
Intended for the tiny polytopes that show up in equilibrium verification,
where float feasibility tolerances would muddy the answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class LpError(Exception):
    pass


class LpInfeasible(LpError):
    pass


class LpUnbounded(LpError):
    pass


@dataclass(frozen=True)
class LpResult:
    x: tuple[Fraction, ...]
    value: Fraction


def _as_fractions(rows) -> list[list[Fraction]]:
    return [[Fraction(v) for v in row] for row in rows]


class _Tableau:
    """Canonical-form tableau: basis columns kept as an identity."""

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, row: int, col: int) -> None:
        piv = self.rows[row][col]
        self.rows[row] = [v / piv for v in self.rows[row]]
        self.rhs[row] /= piv
        for i in range(len(self.rows)):
            if i == row:
                continue
            factor = self.rows[i][col]
            if factor != 0:
                self.rows[i] = [a - factor * b for a, b in zip(self.rows[i], self.rows[row])]
                self.rhs[i] -= factor * self.rhs[row]
        self.basis[row] = col

    def minimize(self, cost: list[Fraction], allowed: set[int]) -> None:
        """Run simplex to optimality with Bland's rule (no cycling)."""
        m = len(self.rows)
        while True:
            basic_cost = [cost[b] for b in self.basis]
            entering = -1
            for j in sorted(allowed):
                reduced = cost[j] - sum(basic_cost[i] * self.rows[i][j] for i in range(m))
                if reduced < 0:
                    entering = j
                    break
            if entering < 0:
                return
            leaving = -1
            best_ratio = None
            for i in range(m):
                coef = self.rows[i][entering]
                if coef > 0:
                    ratio = self.rhs[i] / coef
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and self.basis[i] < self.basis[leaving])
                    ):
                        best_ratio = ratio
                        leaving = i
            if leaving < 0:
                raise LpUnbounded("objective unbounded over the feasible region")
            self.pivot(leaving, entering)

    def objective(self, cost: list[Fraction]) -> Fraction:
        return sum(cost[b] * r for b, r in zip(self.basis, self.rhs))


def maximize(c, a_ub=None, b_ub=None, a_eq=None, b_eq=None) -> LpResult:
    """Maximize c.x subject to A_ub x <= b_ub, A_eq x = b_eq, x >= 0."""
    c = [Fraction(v) for v in c]
    n = len(c)
    a_ub = _as_fractions(a_ub or [])
    b_ub = [Fraction(v) for v in (b_ub or [])]
    a_eq = _as_fractions(a_eq or [])
    b_eq = [Fraction(v) for v in (b_eq or [])]
    if any(len(r) != n for r in a_ub + a_eq):
        raise LpError("constraint row length does not match the number of variables")
    if len(a_ub) != len(b_ub) or len(a_eq) != len(b_eq):
        raise LpError("constraint matrix and right-hand side sizes disagree")

    # Assemble equality rows with nonnegative rhs; record where slack or
    # artificial columns are needed.
    specs = []  # (coeffs, rhs, kind) with kind in {"le", "ge", "eq"}
    for row, b in zip(a_ub, b_ub):
        if b < 0:
            specs.append(([-v for v in row], -b, "ge"))
        else:
            specs.append((list(row), b, "le"))
    for row, b in zip(a_eq, b_eq):
        if b < 0:
            specs.append(([-v for v in row], -b, "eq"))
        else:
            specs.append((list(row), b, "eq"))

    m = len(specs)
    n_slack = sum(1 for s in specs if s[2] in ("le", "ge"))
    n_art = sum(1 for s in specs if s[2] in ("ge", "eq"))
    width = n + n_slack + n_art

    rows = []
    rhs = []
    basis = []
    slack_at = n
    art_at = n + n_slack
    art_cols = []
    for coeffs, b, kind in specs:
        row = coeffs + [Fraction(0)] * (width - n)
        if kind == "le":
            row[slack_at] = Fraction(1)
            basis.append(slack_at)
            slack_at += 1
        elif kind == "ge":
            row[slack_at] = Fraction(-1)
            slack_at += 1
            row[art_at] = Fraction(1)
            basis.append(art_at)
            art_cols.append(art_at)
            art_at += 1
        else:
            row[art_at] = Fraction(1)
            basis.append(art_at)
            art_cols.append(art_at)
            art_at += 1
        rows.append(row)
        rhs.append(Fraction(b))

    tab = _Tableau(rows, rhs, basis)

    if art_cols:
        phase1 = [Fraction(0)] * width
        for j in art_cols:
            phase1[j] = Fraction(1)
        tab.minimize(phase1, set(range(width)))
        if tab.objective(phase1) != 0:
            raise LpInfeasible("constraints admit no feasible point")
        # Drive any leftover zero-valued artificials out of the basis.
        art_set = set(art_cols)
        for i in range(m):
            if tab.basis[i] in art_set:
                swap = next(
                    (j for j in range(width) if j not in art_set and tab.rows[i][j] != 0), None
                )
                if swap is not None:
                    tab.pivot(i, swap)

    allowed = set(range(n + n_slack))
    phase2 = [-v for v in c] + [Fraction(0)] * (width - n)
    tab.minimize(phase2, allowed)

    x = [Fraction(0)] * n
    for b, value in zip(tab.basis, tab.rhs):
        if b < n:
            x[b] = value
    value = sum(ci * xi for ci, xi in zip(c, x))
    return LpResult(tuple(x), value)
