"""Exact linear algebra over the supported coefficient fields.

Vectors and matrices are plain Python lists of scalars.  Everything here
divides exactly and never touches floating point.  Two elimination styles
are used:

* ordinary Gaussian elimination with pivot normalization, for echelon bases,
  solving, and determinants over any of the fields;
* Bareiss fraction-free elimination for ranks over the rational function
  fields, where clearing denominators first keeps every intermediate entry a
  polynomial and sidesteps gcd churn.
"""

from __future__ import annotations

from typing import Sequence

from .coefficients import (
    LaurentPoly,
    RationalFunction,
    RationalFunctionField,
    poly_divexact,
)


class LinearAlgebraError(ValueError):
    """Singular systems and malformed input."""


class EchelonBasis:
    """A growing reduced-row-echelon basis of a fixed-dimension vector space.

    Rows are kept fully reduced with pivot entries normalized to one and
    pivot columns strictly increasing, so membership testing and coordinate
    extraction are plain reduction sweeps.
    """

    def __init__(self, dimension: int, zero, one):
        self.dimension = dimension
        self.zero = zero
        self.one = one
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vector: Sequence) -> list:
        """Fully reduce a copy of ``vector`` against the basis."""
        v = list(vector)
        for pivot, row in zip(self.pivots, self.rows):
            c = v[pivot]
            if c:
                for j in range(pivot, self.dimension):
                    rj = row[j]
                    if rj:
                        v[j] = v[j] - c * rj
        return v

    def coordinates(self, vector: Sequence) -> list | None:
        """Coordinates of ``vector`` in the basis rows, or None if it is not
        in the span."""
        v = list(vector)
        coords = [self.zero] * len(self.rows)
        for k, (pivot, row) in enumerate(zip(self.pivots, self.rows)):
            c = v[pivot]
            if c:
                coords[k] = c
                for j in range(pivot, self.dimension):
                    rj = row[j]
                    if rj:
                        v[j] = v[j] - c * rj
        if any(v):
            return None
        return coords

    def insert(self, vector: Sequence) -> list | None:
        """Reduce and insert; returns the stored normalized row when the span
        grew, None when the vector was already in the span."""
        v = self.reduce(vector)
        pivot = next((j for j, c in enumerate(v) if c), None)
        if pivot is None:
            return None
        lead = v[pivot]
        if lead != self.one:
            inv = self.one / lead
            v = [c * inv if c else c for c in v]
        # Back-substitute into the existing rows to keep the basis reduced.
        for row in self.rows:
            c = row[pivot]
            if c:
                for j in range(pivot, self.dimension):
                    vj = v[j]
                    if vj:
                        row[j] = row[j] - c * vj
        at = next(
            (k for k, p in enumerate(self.pivots) if p > pivot), len(self.pivots)
        )
        self.rows.insert(at, v)
        self.pivots.insert(at, pivot)
        return v

    def contains(self, vector: Sequence) -> bool:
        return not any(self.reduce(vector))


def solve_linear(matrix: Sequence[Sequence], rhs: Sequence, zero, one) -> list:
    """Solve a square system exactly; raises LinearAlgebraError when singular."""
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise LinearAlgebraError("system is not square")
    a = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col]), None)
        if pivot_row is None:
            raise LinearAlgebraError("singular matrix")
        a[col], a[pivot_row] = a[pivot_row], a[col]
        inv = one / a[col][col]
        a[col] = [c * inv if c else c for c in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y if y else x for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def determinant(matrix: Sequence[Sequence], zero, one):
    """Exact determinant by Gaussian elimination over the field."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise LinearAlgebraError("matrix is not square")
    a = [list(row) for row in matrix]
    det = one
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col]), None)
        if pivot_row is None:
            return zero
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            det = -det
        det = det * a[col][col]
        inv = one / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                a[r] = [x - f * y if y else x for x, y in zip(a[r], a[col])]
    return det


def kernel_basis(matrix: Sequence[Sequence], zero, one) -> list[list]:
    """A basis of the right kernel, one vector per free column of the RREF."""
    rows = [list(r) for r in matrix]
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, m) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = one / rows[r][c]
        rows[r] = [x * inv if x else x for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [zero] * ncols
        v[free] = one
        for prow, pcol in enumerate(pivots):
            v[pcol] = zero - rows[prow][free]
        basis.append(v)
    return basis


def field_rank(matrix: Sequence[Sequence], zero, one) -> int:
    """Rank by plain exact elimination; fine for rationals and prime fields."""
    if not matrix:
        return 0
    a = [list(row) for row in matrix]
    cols = len(a[0])
    rank = 0
    for col in range(cols):
        pivot_row = next((r for r in range(rank, len(a)) if a[r][col]), None)
        if pivot_row is None:
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        inv = one / a[rank][col]
        for r in range(rank + 1, len(a)):
            if a[r][col]:
                f = a[r][col] * inv
                a[r] = [x - f * y if y else x for x, y in zip(a[r], a[rank])]
        rank += 1
        if rank == len(a):
            break
    return rank


def _clear_row_denominators(row: Sequence[RationalFunction]) -> list[LaurentPoly]:
    """Scale a row of rational functions to Laurent polynomials (the scaling
    is a unit, so ranks are unchanged)."""
    common = None
    for entry in row:
        if entry and not entry.den.is_one():
            common = entry.den if common is None else common * entry.den
    if common is None:
        return [entry.num for entry in row]
    out = []
    for entry in row:
        if not entry:
            out.append(entry.num)
        else:
            scaled = poly_divexact(common, entry.den) if not entry.den.is_one() else common
            out.append(entry.num * scaled)
    return out


def rational_function_rank(matrix: Sequence[Sequence[RationalFunction]]) -> int:
    """Rank over a rational function field via fraction-free elimination.

    Rows are cleared to polynomials first; the Bareiss update
    (a[i][j]*pivot - a[i][c]*a[p][j]) / previous_pivot then stays polynomial
    throughout, with the division exact by construction.
    """
    if not matrix:
        return 0
    rows = [_clear_row_denominators(row) for row in matrix]
    variables = None
    for row in rows:
        for entry in row:
            variables = entry.variables
            break
        if variables:
            break
    if variables is None:
        return 0
    one = LaurentPoly.constant(variables, 1)
    # Bareiss needs ordinary polynomials; clear each row's negative exponents
    # by a single monomial unit (row scaling leaves the rank alone).
    cleaned = []
    nvars = len(variables)
    for row in rows:
        mins = [0] * nvars
        for entry in row:
            for exps in entry.terms:
                for k in range(nvars):
                    if exps[k] < mins[k]:
                        mins[k] = exps[k]
        if any(mins):
            unit = LaurentPoly.monomial(variables, tuple(-m for m in mins))
            row = [entry * unit if entry else entry for entry in row]
        cleaned.append(list(row))
    a = cleaned
    cols = len(a[0])
    rank = 0
    prev = one
    for col in range(cols):
        pivot_row = next((r for r in range(rank, len(a)) if a[r][col]), None)
        if pivot_row is None:
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        pivot = a[rank][col]
        for r in range(rank + 1, len(a)):
            rc = a[r][col]
            new_row = []
            for j in range(cols):
                num = a[r][j] * pivot - rc * a[rank][j] if rc else a[r][j] * pivot
                new_row.append(poly_divexact(num, prev) if not num.is_zero() else num)
            a[r] = new_row
        prev = pivot
        rank += 1
        if rank == len(a):
            break
    return rank


def matrix_rank(matrix: Sequence[Sequence], field) -> int:
    """Rank dispatcher: fraction-free over function fields, plain elsewhere."""
    if not matrix:
        return 0
    if isinstance(field, RationalFunctionField):
        coerced = [[field.coerce(x) for x in row] for row in matrix]
        return rational_function_rank(coerced)
    zero = field.zero()
    one = field.one()
    return field_rank(matrix, zero, one)
