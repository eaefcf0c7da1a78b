"""Exact solution of linear systems over the rationals.

The solver classifies every system Ax = b as having a unique solution, no
solution, or an affine family of solutions, and returns exact Fractions.
Elimination is fraction-free (Bareiss): integer inputs stay integers all
the way through forward elimination, which is substantially faster in
CPython than eliminating with Fraction entries.  Rational inputs are
scaled row-by-row to integers first (row scaling does not change the
solution set).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


@dataclass(frozen=True)
class LinearSolution:
    """Outcome of solving Ax = b.

    kind is one of "unique", "none", "multi".  For "unique" and "multi",
    ``solution`` holds one exact solution (free variables set to zero);
    for "multi", ``nullspace`` holds a basis of the homogeneous solution
    space, so the full solution set is solution + span(nullspace).
    """

    kind: str
    solution: tuple[Fraction, ...] | None = None
    nullspace: tuple[tuple[Fraction, ...], ...] = ()


def _echelon_int(rows: list[list[int]], ncoef: int) -> list[tuple[int, int]]:
    """In-place fraction-free row echelon; returns the (row, col) pivots.

    ``rows`` is the augmented matrix; only the first ``ncoef`` columns are
    eligible as pivot columns.
    """
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    pivots: list[tuple[int, int]] = []
    prev = 1
    r = 0
    for c in range(ncoef):
        if r >= m:
            break
        piv = None
        for i in range(r, m):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(r + 1, m):
            ri = rows[i]
            rr = rows[r]
            f = ri[c]
            for j in range(c, ncols):
                ri[j] = (p * ri[j] - f * rr[j]) // prev
        pivots.append((r, c))
        prev = p
        r += 1
    return pivots


def solve_int_system(a: list[list[int]], b: list[int]) -> LinearSolution:
    """Solve an integer system Ax = b exactly."""
    m = len(a)
    n = len(a[0]) if m else 0
    rows = [list(a[i]) + [b[i]] for i in range(m)]
    pivots = _echelon_int(rows, n)

    # Rows below the last pivot are all-zero in coefficients after
    # elimination; any nonzero rhs there means inconsistency.
    nrank = len(pivots)
    for i in range(nrank, m):
        if rows[i][n] != 0:
            return LinearSolution("none")

    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(n) if c not in pivot_cols]

    def back_substitute(rhs_col: list[Fraction], free_values: dict[int, Fraction]) -> list[Fraction]:
        x: list[Fraction] = [Fraction(0)] * n
        for c, v in free_values.items():
            x[c] = v
        for idx in range(nrank - 1, -1, -1):
            r, c = pivots[idx]
            total = rhs_col[r]
            row = rows[r]
            for j in range(c + 1, n):
                if row[j] and x[j]:
                    total -= row[j] * x[j]
            x[c] = total / row[c]
        return x

    rhs = [Fraction(rows[i][n]) for i in range(m)]
    particular = back_substitute(rhs, {c: Fraction(0) for c in free_cols})
    if not free_cols:
        return LinearSolution("unique", tuple(particular))

    zero_rhs = [Fraction(0)] * m
    basis = []
    for f in free_cols:
        values = {c: Fraction(1 if c == f else 0) for c in free_cols}
        basis.append(tuple(back_substitute(zero_rhs, values)))
    return LinearSolution("multi", tuple(particular), tuple(basis))


def solve_fraction_system(a, b) -> LinearSolution:
    """Solve Ax = b where entries may be Fractions or ints."""
    int_rows: list[list[int]] = []
    int_rhs: list[int] = []
    for row, rhs in zip(a, b):
        entries = [Fraction(v) for v in row] + [Fraction(rhs)]
        scale = 1
        for e in entries:
            scale = scale * e.denominator // gcd(scale, e.denominator)
        scaled = [int(e * scale) for e in entries]
        int_rows.append(scaled[:-1])
        int_rhs.append(scaled[-1])
    return solve_int_system(int_rows, int_rhs)
