"""Exact rational linear programming with duality certificates.

Solves  min c.x  s.t.  A x >= b, x >= 0  by a two-phase primal simplex
on the standard-form tableau with Bland's anti-cycling rule (always on;
no performance pivoting).  Every optimal solve returns both a primal and
a dual vector and asserts, in exact arithmetic, primal feasibility, dual
feasibility, complementary slackness and c.x = b.y before returning.

Arithmetic runs on gmpy2.mpq when importable (identical exact semantics,
several times faster than Fraction); the public API always returns
Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 present in normal installs
    _Q = Fraction

__all__ = ["LpProblem", "LpSolution", "lp_solve", "lp_solve_max"]


@dataclass(frozen=True)
class LpProblem:
    """min c.x  subject to  A x >= b,  x >= 0 (all data rational)."""

    c: tuple
    A: tuple
    b: tuple

    def __init__(self, c, A, b) -> None:
        cf = tuple(Fraction(e) for e in c)
        Af = tuple(tuple(Fraction(e) for e in row) for row in A)
        bf = tuple(Fraction(e) for e in b)
        if len(Af) != len(bf):
            raise ValueError("A and b row counts differ")
        if any(len(row) != len(cf) for row in Af):
            raise ValueError("A column count does not match c")
        object.__setattr__(self, "c", cf)
        object.__setattr__(self, "A", Af)
        object.__setattr__(self, "b", bf)


@dataclass(frozen=True)
class LpSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None
    x: tuple | None
    y: tuple | None


def _pivot(T, cost, basis, r, j):
    pr = T[r]
    pv = pr[j]
    if pv != 1:
        inv = 1 / _Q(pv)
        T[r] = pr = [e * inv for e in pr]
    for i in range(len(T)):
        if i != r and T[i][j]:
            f = T[i][j]
            Ti = T[i]
            T[i] = [a - f * bb for a, bb in zip(Ti, pr)]
    if cost[j]:
        f = cost[j]
        cost[:] = [a - f * bb for a, bb in zip(cost, pr)]
    basis[r] = j


def _reduce_cost_row(cost, T, basis):
    for r, bv in enumerate(basis):
        if cost[bv]:
            f = cost[bv]
            pr = T[r]
            cost[:] = [a - f * bb for a, bb in zip(cost, pr)]


def _run_simplex(T, cost, basis, ncols, barred):
    zero = _Q(0)
    while True:
        enter = None
        for j in range(ncols):
            if j not in barred and cost[j] < zero:
                enter = j
                break
        if enter is None:
            return "optimal"
        leave = None
        best = None
        for i in range(len(T)):
            tij = T[i][enter]
            if tij > zero:
                key = (T[i][-1] / tij, basis[i])
                if best is None or key < best:
                    best = key
                    leave = i
        if leave is None:
            return "unbounded"
        _pivot(T, cost, basis, leave, enter)


def lp_solve(p: LpProblem) -> LpSolution:
    """Two-phase exact simplex; see module docstring for guarantees."""
    m = len(p.b)
    n = len(p.c)
    pos_rhs = [bi > 0 for bi in p.b]  # rows kept as-is; the rest are negated
    # equality form: rows with b>0 keep  A x - s = b  (artificial basic),
    # rows with b<=0 are negated to  -A x + s = -b  (slack basic).
    art_rows = [i for i in range(m) if pos_rhs[i]]
    art_start = n + m
    ncols = n + m + len(art_rows)
    T = []
    art_of = {}
    for i in range(m):
        row = [_Q(0)] * (ncols + 1)
        sgn = 1 if pos_rhs[i] else -1
        for j, a in enumerate(p.A[i]):
            row[j] = _Q(a) * sgn
        row[n + i] = _Q(-sgn)
        row[-1] = _Q(p.b[i]) * sgn
        T.append(row)
    basis = [0] * m
    k = 0
    for i in range(m):
        if pos_rhs[i]:
            a_col = art_start + k
            art_of[i] = a_col
            T[i][a_col] = _Q(1)
            basis[i] = a_col
            k += 1
        else:
            basis[i] = n + i
    # phase 1: minimize the sum of artificials
    cost = [_Q(0)] * (ncols + 1)
    for i in art_rows:
        cost[art_of[i]] = _Q(1)
    _reduce_cost_row(cost, T, basis)
    barred: set[int] = set()
    status = _run_simplex(T, cost, basis, ncols, barred)
    if status != "optimal":  # pragma: no cover - phase 1 is always bounded
        raise RuntimeError("phase-1 simplex reported unbounded")
    if -cost[-1] != 0:
        return LpSolution("infeasible", None, None, None)
    # drive artificials out of the basis where possible, then bar them
    for r in range(m):
        if basis[r] >= art_start:
            j = next((j for j in range(art_start) if T[r][j] != 0), None)
            if j is not None:
                _pivot(T, cost, basis, r, j)
    barred = set(range(art_start, ncols))
    # phase 2: the real objective
    cost = [_Q(0)] * (ncols + 1)
    for j in range(n):
        cost[j] = _Q(p.c[j])
    _reduce_cost_row(cost, T, basis)
    status = _run_simplex(T, cost, basis, ncols, barred)
    if status == "unbounded":
        return LpSolution("unbounded", None, None, None)
    value = -cost[-1]
    full = [_Q(0)] * ncols
    for r, bv in enumerate(basis):
        full[bv] = T[r][-1]
    x = [Fraction(int(e.numerator), int(e.denominator)) for e in full[:n]]
    # duals read off the reduced costs of each row's initial identity column
    y = []
    for i in range(m):
        col = art_of[i] if pos_rhs[i] else n + i
        yi = -cost[col]
        if not pos_rhs[i]:
            yi = -yi
        y.append(Fraction(int(yi.numerator), int(yi.denominator)))
    val = Fraction(int(value.numerator), int(value.denominator))
    _certify(p, val, x, y)
    return LpSolution("optimal", val, tuple(x), tuple(y))


def _certify(p: LpProblem, value, x, y) -> None:
    n = len(p.c)
    slack = []
    for i, row in enumerate(p.A):
        s = sum(a * xj for a, xj in zip(row, x)) - p.b[i]
        if s < 0:
            raise RuntimeError("LP certification failed: primal infeasible")
        slack.append(s)
    if any(xj < 0 for xj in x):
        raise RuntimeError("LP certification failed: negative primal variable")
    if any(yi < 0 for yi in y):
        raise RuntimeError("LP certification failed: negative dual variable")
    red = []
    for j in range(n):
        rc = p.c[j] - sum(y[i] * p.A[i][j] for i in range(len(y)))
        if rc < 0:
            raise RuntimeError("LP certification failed: dual infeasible")
        red.append(rc)
    if sum(c * xj for c, xj in zip(p.c, x)) != value:
        raise RuntimeError("LP certification failed: objective mismatch")
    if sum(b * yi for b, yi in zip(p.b, y)) != value:
        raise RuntimeError("LP certification failed: strong duality violated")
    if any(xj * rc != 0 for xj, rc in zip(x, red)):
        raise RuntimeError("LP certification failed: complementary slackness (primal)")
    if any(yi * s != 0 for yi, s in zip(y, slack)):
        raise RuntimeError("LP certification failed: complementary slackness (dual)")


def lp_solve_max(c, A, b) -> LpSolution:
    """max c.x  s.t.  A x <= b, x >= 0, with the same exact guarantees.

    Solved as min (-c).x s.t. (-A) x >= (-b); the returned value and
    duals are re-oriented for the maximization problem (y >= 0 with
    y.A >= c certificates become  value = b.y  by the same strong
    duality identity).
    """
    neg_c = [-Fraction(e) for e in c]
    neg_A = [[-Fraction(e) for e in row] for row in A]
    neg_b = [-Fraction(e) for e in b]
    sol = lp_solve(LpProblem(neg_c, neg_A, neg_b))
    if sol.status != "optimal":
        return sol
    return LpSolution("optimal", -sol.value, sol.x, sol.y)
