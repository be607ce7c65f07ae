"""Exact rational dense matrices and fraction-free rank.

RationalMatrix is a thin immutable wrapper over tuples of Fractions
(always in lowest terms, as Fraction guarantees); it only supports the
operations the domination/LP layers need: transpose, product, equality.
rank_exact works over the rationals by clearing denominators row-wise
and running Bareiss (fraction-free) elimination on arbitrary-precision
integers, so overflow cannot occur.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

__all__ = ["RationalMatrix", "rank_exact"]


class RationalMatrix:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows) -> None:
        conv = tuple(tuple(Fraction(e) for e in row) for row in rows)
        if conv and any(len(r) != len(conv[0]) for r in conv):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", conv)
        object.__setattr__(self, "nrows", len(conv))
        object.__setattr__(self, "ncols", len(conv[0]) if conv else 0)

    def __setattr__(self, *a) -> None:
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls([[0] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self.rows)) if self.rows else RationalMatrix([])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else []
        return RationalMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows]
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"RationalMatrix({[[str(e) for e in r] for r in self.rows]})"


def _as_int_rows(mat) -> list[list[int]]:
    if isinstance(mat, RationalMatrix):
        rows = [list(r) for r in mat.rows]
    elif hasattr(mat, "tolist"):
        rows = mat.tolist()
    else:
        rows = [list(r) for r in mat]
    out = []
    for row in rows:
        conv = []
        for e in row:
            if isinstance(e, float):
                if e != int(e):
                    raise ValueError("rank_exact needs exact integer or rational entries")
                e = int(e)
            conv.append(Fraction(e))
        den = lcm(*(f.denominator for f in conv)) if conv else 1
        out.append([int(f * den) for f in conv])
    return out


def rank_exact(mat) -> int:
    """Rank over the rationals via Bareiss elimination."""
    rows = _as_int_rows(mat)
    m = len(rows)
    n = len(rows[0]) if m else 0
    rank = 0
    prev = 1
    for col in range(n):
        piv = next((i for i in range(rank, m) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        pv = pr[col]
        for i in range(rank + 1, m):
            ri = rows[i]
            f = ri[col]
            for j in range(col + 1, n):
                q, rem = divmod(pv * ri[j] - f * pr[j], prev)
                if rem:
                    raise ArithmeticError("Bareiss exact-division invariant violated")
                ri[j] = q
            ri[col] = 0
        prev = pv
        rank += 1
        if rank == m:
            break
    return rank
