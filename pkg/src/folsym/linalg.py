"""Exact linear algebra over cyclotomic fields.

Matrices are tuples of tuples of Cyclo.  Everything here is small and dense;
Gaussian elimination with exact division is used throughout.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .cyclotomic import Cyclo, ONE, ZERO, rat

Matrix = Tuple[Tuple[Cyclo, ...], ...]
Vector = Tuple[Cyclo, ...]


def mat(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Cyclo._coerce(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        arow = a[i]
        row = []
        for j in range(m):
            s = ZERO
            for t in range(k):
                x = arow[t]
                if x:
                    y = b[t][j]
                    if y:
                        s = s + x * y
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(a: Matrix, v: Sequence[Cyclo]) -> Vector:
    return tuple(
        sum((x * y for x, y in zip(row, v) if x and y), ZERO) for row in a
    )


def mat_scale(a: Matrix, c: Cyclo) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def det(a: Matrix) -> Cyclo:
    a = mat(a)
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if n == 3:
        return (
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )
    raise ValueError("det implemented for n <= 3")


def char_poly_coeffs(a: Matrix) -> Tuple[Cyclo, ...]:
    """Elementary symmetric functions (e1, ..., en) of the eigenvalues."""
    n = len(a)
    e1 = sum((a[i][i] for i in range(n)), ZERO)
    if n == 2:
        return (e1, det(a))
    if n == 3:
        e2 = (
            (a[0][0] * a[1][1] - a[0][1] * a[1][0])
            + (a[0][0] * a[2][2] - a[0][2] * a[2][0])
            + (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        )
        return (e1, e2, det(a))
    raise ValueError("char_poly_coeffs implemented for n in {2, 3}")


def mat_inverse(a: Matrix) -> Matrix:
    a = mat(a)
    n = len(a)
    d = det(a)
    if not d:
        raise ZeroDivisionError("singular matrix")
    inv_d = d.inverse()
    if n == 1:
        return ((inv_d,),)
    if n == 2:
        return (
            (a[1][1] * inv_d, -a[0][1] * inv_d),
            (-a[1][0] * inv_d, a[0][0] * inv_d),
        )
    if n == 3:
        cof = [[None] * 3 for _ in range(3)]
        idx = ((1, 2), (0, 2), (0, 1))
        for i in range(3):
            for j in range(3):
                r0, r1 = idx[i]
                c0, c1 = idx[j]
                minor = a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0]
                cof[j][i] = minor * inv_d if (i + j) % 2 == 0 else -minor * inv_d
        return tuple(tuple(row) for row in cof)
    raise ValueError("mat_inverse implemented for n <= 3")


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return a == b


def nullspace(rows: List[List[Cyclo]], ncols: int) -> List[Vector]:
    """Basis of the right nullspace of the matrix given as a list of rows.

    Returned vectors are in reduced echelon form over the free columns
    (deterministic: free columns carry 1 in increasing order).
    """
    pivots: List[Tuple[int, List[Cyclo]]] = []  # (pivot col, normalized row)
    for row in rows:
        row = list(row)
        for col, prow in pivots:
            if row[col]:
                f = row[col]
                row = [a - f * b if b else a for a, b in zip(row, prow)]
        piv = next((j for j, v in enumerate(row) if v), None)
        if piv is None:
            continue
        inv = row[piv].inverse()
        row = [v * inv for v in row]
        # back-substitute into existing pivot rows
        for col, prow in pivots:
            if prow[piv]:
                f = prow[piv]
                prow[:] = [a - f * b if b else a for a, b in zip(prow, row)]
        pivots.append((piv, row))
        if len(pivots) == ncols:
            return []
    pivots.sort(key=lambda t: t[0])
    pivot_cols = {c for c, _ in pivots}
    basis = []
    for j in range(ncols):
        if j in pivot_cols:
            continue
        vec = [ZERO] * ncols
        vec[j] = ONE
        for col, prow in pivots:
            if prow[j]:
                vec[col] = -prow[j]
        basis.append(tuple(vec))
    return basis


def rank(rows: List[List[Cyclo]], ncols: int) -> int:
    return ncols - len(nullspace(rows, ncols))


def solve(rows: List[List[Cyclo]], rhs: List[Cyclo]) -> Optional[Vector]:
    """One exact solution of rows * x = rhs, or None if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ns = nullspace(aug, ncols + 1)
    # solutions correspond to nullspace vectors with last coordinate -1 (scaled)
    for vec in ns:
        if vec[ncols]:
            c = -(vec[ncols].inverse())
            return tuple(v * c for v in vec[:ncols])
    return None


def independent_subset(vectors: List[Vector]) -> List[int]:
    """Indices of a maximal linearly independent subset, greedy in order."""
    pivots: List[Tuple[int, List[Cyclo]]] = []
    chosen = []
    for idx, vec in enumerate(vectors):
        row = list(vec)
        for col, prow in pivots:
            if row[col]:
                f = row[col]
                row = [a - f * b for a, b in zip(row, prow)]
        piv = next((j for j, v in enumerate(row) if v), None)
        if piv is None:
            continue
        inv = row[piv].inverse()
        pivots.append((piv, [v * inv for v in row]))
        chosen.append(idx)
    return chosen
