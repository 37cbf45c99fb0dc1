"""Exact integer matrix helpers: Smith decomposition, lattices, subquotients.

Matrices are plain tuples of row tuples of Python ints.  Because a matrix
with zero rows carries no column count, every function here that needs
a shape takes it explicitly.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence

from sympy import ZZ, Matrix, factorint
from sympy.matrices.normalforms import invariant_factors as _sympy_invariant_factors
from sympy.matrices.normalforms import smith_normal_decomp

IntMatrix = tuple[tuple[int, ...], ...]


def zeros(rows: int, cols: int) -> IntMatrix:
    return tuple((0,) * cols for _ in range(rows))


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def matmul(a: IntMatrix, b: IntMatrix, inner: int, cols: int) -> IntMatrix:
    """Product of an (r x inner) and an (inner x cols) matrix."""
    return tuple(
        tuple(sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols))
        for row in a
    )


def transpose(a: IntMatrix, cols: int) -> IntMatrix:
    return tuple(tuple(row[j] for row in a) for j in range(cols))


def kron(a: IntMatrix, b: IntMatrix, a_cols: int, b_cols: int) -> IntMatrix:
    return tuple(
        tuple(x * y for x in ra for y in rb)
        for ra in a
        for rb in b
    ) if a_cols and b_cols else tuple(() for _ in range(len(a) * len(b)))


def block_diag(a: IntMatrix, b: IntMatrix, a_cols: int, b_cols: int) -> IntMatrix:
    top = tuple(tuple(row) + (0,) * b_cols for row in a)
    bottom = tuple((0,) * a_cols + tuple(row) for row in b)
    return top + bottom


def reduce_rows(a: IntMatrix, moduli: Sequence[int]) -> IntMatrix:
    """Reduce row i modulo moduli[i] (0 means no reduction)."""
    return tuple(
        tuple(x % m if m else x for x in row) for row, m in zip(a, moduli)
    )


def smith(a: IntMatrix, rows: int, cols: int) -> tuple[list[int], IntMatrix, IntMatrix]:
    """Smith decomposition ``U * A * V = S`` with U, V unimodular.

    Returns the diagonal of S (length ``min(rows, cols)``, nonnegative,
    each entry dividing the next with zeros last) together with U and V.
    """
    if rows == 0 or cols == 0:
        return [], identity(rows), identity(cols)
    s, u, v = smith_normal_decomp(Matrix(rows, cols, [x for row in a for x in row]))
    diag = [int(s[i, i]) for i in range(min(rows, cols))]
    u_m = as_matrix(u.tolist())
    v_m = as_matrix(v.tolist())
    # sympy may leave negative diagonal entries; absorb the sign into U.
    if any(d < 0 for d in diag):
        u_m = tuple(
            tuple(-x for x in row) if i < len(diag) and diag[i] < 0 else row
            for i, row in enumerate(u_m)
        )
        diag = [abs(d) for d in diag]
    return diag, u_m, v_m


def inverse_unimodular(u: IntMatrix) -> IntMatrix:
    n = len(u)
    if n == 0:
        return ()
    return as_matrix(Matrix(n, n, [x for row in u for x in row]).inv().tolist())


def invariant_factors(relations: Sequence[dict[int, int]], ncols: int) -> list[int]:
    """Invariant factors of ``Z^ncols / span(relations)``.

    Each relation is a sparse row ``{column: coefficient}``.  Columns with a
    unit coefficient are eliminated first (a unimodular change of
    generators), which typically leaves a tiny dense block for the full
    Smith reduction.  The result lists torsion factors ascending, then one
    0 per free summand, with factors equal to 1 omitted.
    """
    rows = [{c: v for c, v in r.items() if v} for r in relations]
    rows = [r for r in rows if r]
    alive = set(range(ncols))
    while True:
        pick = None
        for idx, r in enumerate(rows):
            for c, v in r.items():
                if v in (1, -1):
                    pick = (idx, c)
                    break
            if pick:
                break
        if pick is None:
            break
        idx, col = pick
        pivot_row = rows.pop(idx)
        sign = pivot_row[col]
        alive.discard(col)
        new_rows = []
        for r in rows:
            k = r.get(col)
            if k:
                factor = k * sign
                merged = dict(r)
                for c, v in pivot_row.items():
                    merged[c] = merged.get(c, 0) - factor * v
                merged = {c: v for c, v in merged.items() if v}
                if merged:
                    new_rows.append(merged)
            else:
                new_rows.append(r)
        rows = new_rows

    # Columns touched only by single-entry rows are cyclic summands already.
    coupled = {c for r in rows if len(r) > 1 for c in r}
    cyclic = {c: 0 for c in alive - coupled}
    rest = []
    for r in rows:
        if len(r) == 1:
            (c, v), = r.items()
            if c in cyclic:
                cyclic[c] = gcd(cyclic[c], v)
                continue
        rest.append(r)
    orders = [o for o in cyclic.values() if o != 1]
    cols = sorted(coupled)
    if cols and rest:
        dense = Matrix([[r.get(c, 0) for c in cols] for r in rest])
        diag = [abs(int(d)) for d in _sympy_invariant_factors(dense, domain=ZZ)]
        orders += [d for d in diag if d != 1]
        orders += [0] * (len(cols) - len(diag))
    else:
        orders += [0] * len(cols)
    return invariant_chain(orders)


def invariant_chain(orders: Sequence[int]) -> list[int]:
    """Invariant factors of a direct sum of cyclic groups (0 = Z, 1 dropped)."""
    free = sum(1 for o in orders if o == 0)
    powers: dict[int, list[int]] = {}
    for o in orders:
        if o > 1:
            for prime, e in factorint(o).items():
                powers.setdefault(prime, []).append(prime ** e)
    length = max((len(v) for v in powers.values()), default=0)
    chain = [1] * length
    for v in powers.values():
        v.sort()
        for i, x in enumerate(v):
            chain[length - len(v) + i] *= x
    return chain + [0] * free


def solve(a: IntMatrix, b: Sequence[int], rows: int, cols: int) -> tuple[int, ...] | None:
    """An integer solution x of ``A x = b``, or None when none exists."""
    diag, u, v = smith(a, rows, cols)
    ub = [sum(u[i][k] * b[k] for k in range(rows)) for i in range(rows)]
    y = [0] * cols
    for i in range(rows):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % d:
                return None
            y[i] = ub[i] // d
    return tuple(sum(v[j][k] * y[k] for k in range(cols)) for j in range(cols))


def nullspace(a: IntMatrix, rows: int, cols: int) -> list[tuple[int, ...]]:
    """A Z-basis of ``{x in Z^cols : A x = 0}``."""
    diag, _, v = smith(a, rows, cols)
    rank = sum(1 for d in diag if d)
    return [tuple(v[j][k] for j in range(cols)) for k in range(rank, cols)]


def lattice_basis(gens: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """A Z-basis of the sublattice of Z^dim spanned by ``gens``."""
    if not gens or dim == 0:
        return []
    g = tuple(tuple(vec[i] for vec in gens) for i in range(dim))  # columns = gens
    diag, u, _ = smith(g, dim, len(gens))
    uinv = inverse_unimodular(u)
    return [
        tuple(uinv[i][k] * diag[k] for i in range(dim))
        for k in range(len(diag))
        if diag[k]
    ]

