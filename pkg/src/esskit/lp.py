"""Exact linear programming by two-phase simplex with rational pivoting.

Small dense tableau simplex over ``fractions.Fraction``.  Bland's rule is
used for both the entering and leaving choices, so the method terminates
on every input, including the heavily degenerate programs this package
produces.  Intended for the problem sizes that arise here (tens of
variables); there is deliberately no floating-point fast path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None


def _run_simplex(tab, basis, costrow, m, scan, rhs_col):
    """Maximize over the current tableau; Bland's rule throughout.

    Only the first ``scan`` columns may enter the basis (phase 2 excludes
    the artificial block this way).
    """
    while True:
        enter = -1
        for j in range(scan):
            if costrow[j] > 0:
                enter = j
                break
        if enter < 0:
            return "optimal"
        leave = -1
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][rhs_col] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return "unbounded"
        _pivot(tab, basis, costrow, leave, enter, m, rhs_col)


def _pivot(tab, basis, costrow, r, c, m, rhs_col):
    row = tab[r]
    p = row[c]
    if p != 1:
        tab[r] = row = [v / p for v in row]
    for i in range(m):
        if i != r:
            f = tab[i][c]
            if f:
                tab[i] = [a - f * b for a, b in zip(tab[i], row)]
    f = costrow[c]
    if f:
        for j in range(rhs_col):
            costrow[j] -= f * row[j]
    basis[r] = c


def maximize(objective, eq=(), ge=(), le=(), free=frozenset()) -> LPResult:
    """Maximize objective . x subject to linear constraints.

    eq/ge/le are sequences of (coefficients, rhs) pairs.  Variables are
    nonnegative unless their index appears in ``free``.  Everything must
    be Fraction or int; results are exact.
    """
    nvars = len(objective)
    free = frozenset(free)

    # Column layout: each original variable gets one column, free
    # variables get a second (negated) column; then surplus/slack columns.
    pos_col = list(range(nvars))
    neg_col: dict[int, int] = {}
    ncols = nvars
    for j in sorted(free):
        neg_col[j] = ncols
        ncols += 1

    rows = []
    for coeffs, rhs in eq:
        rows.append((list(coeffs), Fraction(rhs), 0))
    for coeffs, rhs in ge:
        rows.append((list(coeffs), Fraction(rhs), -1))
    for coeffs, rhs in le:
        rows.append((list(coeffs), Fraction(rhs), +1))
    m = len(rows)

    nslack = sum(1 for _, _, kind in rows if kind != 0)
    total = ncols + nslack + m  # + artificials
    art0 = ncols + nslack

    tab = []
    slack_idx = ncols
    for i, (coeffs, rhs, kind) in enumerate(rows):
        row = [Fraction(0)] * (total + 1)
        for j, v in enumerate(coeffs):
            v = Fraction(v)
            row[pos_col[j]] = v
            if j in neg_col:
                row[neg_col[j]] = -v
        if kind != 0:
            row[slack_idx] = Fraction(kind)
            slack_idx += 1
        row[total] = rhs
        if row[total] < 0:
            row = [-v for v in row]
        row[art0 + i] = Fraction(1)
        tab.append(row)

    basis = [art0 + i for i in range(m)]

    # Phase 1: maximize -(sum of artificials); price out the basis.
    costrow = [Fraction(0)] * total
    for j in range(art0):
        costrow[j] = sum(tab[i][j] for i in range(m))
    status = _run_simplex(tab, basis, costrow, m, total, total)
    assert status == "optimal"  # phase 1 is bounded below by 0
    if any(basis[i] >= art0 and tab[i][total] != 0 for i in range(m)):
        return LPResult("infeasible")

    # Drive any artificial still basic (at zero) out, or drop its row.
    drop = []
    for i in range(m):
        if basis[i] >= art0:
            piv = next((j for j in range(art0) if tab[i][j] != 0), None)
            if piv is None:
                drop.append(i)
            else:
                _pivot(tab, basis, costrow, i, piv, m, total)
    if drop:
        tab = [tab[i] for i in range(m) if i not in drop]
        basis = [basis[i] for i in range(m) if i not in drop]
        m = len(tab)

    # Phase 2 objective over the structural columns; artificial columns
    # are excluded from the entering scan.
    cvec = [Fraction(0)] * total
    for j, v in enumerate(objective):
        v = Fraction(v)
        cvec[pos_col[j]] = v
        if j in neg_col:
            cvec[neg_col[j]] = -v
    costrow = list(cvec)
    for i in range(m):
        cb = cvec[basis[i]]
        if cb:
            for j in range(total):
                costrow[j] -= cb * tab[i][j]

    status = _run_simplex(tab, basis, costrow, m, art0, total)
    if status == "unbounded":
        return LPResult("unbounded")

    std = [Fraction(0)] * total
    for i in range(m):
        std[basis[i]] = tab[i][total]
    x = []
    for j in range(nvars):
        v = std[pos_col[j]]
        if j in neg_col:
            v -= std[neg_col[j]]
        x.append(v)
    value = sum(Fraction(c) * v for c, v in zip(objective, x))
    return LPResult("optimal", value, tuple(x))


def feasible_point(ge=(), eq=()) -> tuple[Fraction, ...] | None:
    """Find any x (free variables) with eq rows tight and ge rows satisfied.

    Returns None when the system is infeasible.  All variables are free.
    """
    if not ge and not eq:
        return ()
    nvars = len((ge[0] if ge else eq[0])[0])
    res = maximize([Fraction(0)] * nvars, eq=eq, ge=ge, free=range(nvars))
    if res.status != "optimal":
        return None
    return res.x
