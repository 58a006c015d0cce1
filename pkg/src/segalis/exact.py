"""Small exact linear algebra and linear programming over Fraction.

These routines are deliberately plain: matrices are lists of rows of
``Fraction``, sizes are tiny, and correctness matters more than speed.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def as_fraction_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in r] for r in rows]


def determinant(rows: Sequence[Sequence]) -> Fraction:
    a = as_fraction_matrix(rows)
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = as_fraction_matrix(rows)
    if not a:
        return a, []
    m, n = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : A x = 0}."""
    if not rows:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    red, piv = rref(rows)
    n = len(red[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def solve_affine(rows: Sequence[Sequence], rhs: Sequence) -> tuple[list[Fraction], list[list[Fraction]]] | None:
    """Solve A x = b; return (particular solution, nullspace basis) or None."""
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(piv):
        x[p] = red[i][n]
    kernel = nullspace(rows)
    return x, kernel


class LPResult:
    __slots__ = ("status", "value", "x")

    def __init__(self, status: str, value: Fraction | None = None, x: list[Fraction] | None = None):
        self.status = status
        self.value = value
        self.x = x

    def __repr__(self) -> str:
        return f"LPResult({self.status!r}, value={self.value})"


def maximize(c: Sequence, a_eq: Sequence[Sequence], b_eq: Sequence) -> LPResult:
    """Maximize c.x subject to A x = b, x >= 0, by two-phase tableau simplex.

    Bland's rule is used throughout so the method terminates.  ``status`` is
    one of ``"optimal"``, ``"infeasible"``, ``"unbounded"``.
    """
    m = len(a_eq)
    n = len(c)
    rows = [[Fraction(v) for v in r] for r in a_eq]
    rhs = [Fraction(v) for v in b_eq]
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    # phase 1: artificial variables n..n+m-1
    tab = [rows[i] + [Fraction(int(i == j)) for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    width = n + m
    obj1 = [Fraction(0)] * n + [Fraction(-1)] * m + [Fraction(0)]
    _simplex(tab, basis, obj1, width)
    if _objective(tab, basis, obj1, width) < 0:
        return LPResult("infeasible")
    # drive artificial variables out of the basis where possible
    for i, bv in enumerate(basis):
        if bv >= n:
            col = next((j for j in range(n) if tab[i][j] != 0), None)
            if col is not None:
                _pivot(tab, basis, i, col)
    keep = [i for i, bv in enumerate(basis) if bv < n]
    tab = [[r[j] for j in range(n)] + [r[-1]] for i, r in enumerate(tab) if i in keep]
    basis = [basis[i] for i in keep]
    obj2 = [Fraction(v) for v in c] + [Fraction(0)]
    if not _simplex(tab, basis, obj2, n):
        return LPResult("unbounded")
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        x[bv] = tab[i][-1]
    return LPResult("optimal", sum(Fraction(ci) * xi for ci, xi in zip(c, x)), x)


def _objective(tab, basis, obj, width) -> Fraction:
    return sum(obj[bv] * tab[i][-1] for i, bv in enumerate(basis))


def _pivot(tab, basis, r, col) -> None:
    inv = 1 / tab[r][col]
    tab[r] = [v * inv for v in tab[r]]
    for i in range(len(tab)):
        if i != r and tab[i][col] != 0:
            f = tab[i][col]
            tab[i] = [a - f * b for a, b in zip(tab[i], tab[r])]
    basis[r] = col


def _simplex(tab, basis, obj, width) -> bool:
    """Run primal simplex in place; False if unbounded."""
    while True:
        # reduced costs
        enter = None
        for j in range(width):
            if j in basis:
                continue
            red = obj[j] - sum(obj[bv] * tab[i][j] for i, bv in enumerate(basis))
            if red > 0:
                enter = j
                break
        if enter is None:
            return True
        best = None
        for i in range(len(tab)):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(tab, basis, best[1], enter)


def feasible(a_eq: Sequence[Sequence], b_eq: Sequence) -> LPResult:
    n = len(a_eq[0]) if a_eq else 0
    return maximize([0] * n, a_eq, b_eq)
