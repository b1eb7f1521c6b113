"""Exact integer linear algebra on small dense matrices.

Matrices are tuples of row tuples of Python ints, so everything is
arbitrary precision.  The workhorses are the Smith normal form with its
unimodular transforms, integer kernels and particular solutions of
``A x = b`` over the integers.
"""

from __future__ import annotations

from fractions import Fraction

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]


def freeze(rows) -> Mat:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Mat, b: Mat) -> Mat:
    if not a:
        return ()
    cols = len(b[0]) if b else 0
    bt = list(zip(*b)) if b else []
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) or (0,) * cols
        for row in a
    )


def mat_vec(a: Mat, v: Vec) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(x - y for x, y in zip(u, v))


def vec_neg(u: Vec) -> Vec:
    return tuple(-x for x in u)


def vec_scale(c: int, u: Vec) -> Vec:
    return tuple(c * x for x in u)


def dot(u: Vec, v: Vec) -> int:
    return sum(x * y for x, y in zip(u, v))


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a)) if a else ()


def smith_normal_form(a: Mat) -> tuple[Mat, Mat, Mat]:
    """Return ``(d, u, v)`` with ``d = u a v`` in Smith normal form.

    ``u`` and ``v`` are unimodular; the diagonal of ``d`` consists of the
    invariant factors ``d_1 | d_2 | ...`` followed by zeros.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(row) for row in a]
    u = [list(row) for row in identity(m)]
    v = [list(row) for row in identity(n)]

    def row_op(i, j, c):  # row_i -= c * row_j
        d[i] = [x - c * y for x, y in zip(d[i], d[j])]
        u[i] = [x - c * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, c):  # col_i -= c * col_j
        for row in d:
            row[i] -= c * row[j]
        for row in v:
            row[i] -= c * row[j]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(m, n):
        # find a pivot of least absolute value in the remaining block
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < best):
                    best = abs(d[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            # clear column t then row t; repeat until both are clean
            dirty = False
            for i in range(t + 1, m):
                if d[i][t] != 0:
                    q = d[i][t] // d[t][t]
                    row_op(i, t, q)
                    if d[i][t] != 0:  # remainder became the smaller pivot
                        swap_rows(i, t)
                        dirty = True
            for j in range(t + 1, n):
                if d[t][j] != 0:
                    q = d[t][j] // d[t][t]
                    col_op(j, t, q)
                    if d[t][j] != 0:
                        swap_cols(j, t)
                        dirty = True
            if not dirty:
                break
        # enforce divisibility d[t][t] | d[i][j] for the rest of the block
        redo = False
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if d[i][j] % d[t][t] != 0:
                    row_op(t, i, -1)  # add row i into row t, then restart block
                    redo = True
                    break
            if redo:
                break
        if redo:
            continue
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return freeze(d), freeze(u), freeze(v)


def rank(a: Mat) -> int:
    """Rank over the rationals, by fraction-free elimination."""
    rows = [list(map(Fraction, row)) for row in a]
    n = len(rows[0]) if rows else 0
    r = 0
    for j in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][j] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][j] != 0:
                f = rows[i][j] / rows[r][j]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def kernel_basis(a: Mat) -> list[Vec]:
    """Integer basis of ``{x : a x = 0}``."""
    if not a or not a[0]:
        n = len(a[0]) if a else 0
        return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    d, _, v = smith_normal_form(a)
    n = len(a[0])
    r = sum(1 for i in range(min(len(d), n)) if d[i][i] != 0)
    cols = transpose(v)
    return [cols[j] for j in range(r, n)]


def solve(a: Mat, b: Vec) -> Vec | None:
    """One integer solution of ``a x = b``, or None."""
    if not a:
        return ()
    n = len(a[0])
    if n == 0:
        return () if all(x == 0 for x in b) else None
    d, u, v = smith_normal_form(a)
    ub = mat_vec(u, b)
    y = [0] * n
    for i in range(len(a)):
        di = d[i][i] if i < n else 0
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            q, rem = divmod(ub[i], di)
            if rem != 0:
                return None
            y[i] = q
    return mat_vec(v, tuple(y))


def lattice_reduce(gens: list[Vec], dim: int) -> list[Vec]:
    """Basis of the lattice generated by ``gens`` inside Z^dim.

    Row-style Hermite reduction; returns independent generators.
    """
    rows = [list(g) for g in gens if any(g)]
    if not rows:
        return []
    basis: list[list[int]] = []
    for row in rows:
        basis.append(row)
    # column-by-column Hermite elimination
    mat = basis
    pivot_rows: list[list[int]] = []
    work = [r[:] for r in mat]
    col = 0
    while col < dim and work:
        live = [r for r in work if any(r[col:])]
        work = live
        if not work:
            break
        nz = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            base = nz[0]
            new_nz = [base]
            for r in nz[1:]:
                q = r[col] // base[col]
                rr = [x - q * y for x, y in zip(r, base)]
                if rr[col] != 0:
                    new_nz.append(rr)
                elif any(rr):
                    rest.append(rr)
            if len(new_nz) == 1:
                nz = new_nz
                break
            nz = new_nz
        if nz:
            pivot_rows.append(nz[0])
        work = rest
        col += 1
    return [tuple(r) for r in pivot_rows]


def gcd_vector(u: Vec) -> int:
    from math import gcd

    g = 0
    for x in u:
        g = gcd(g, x)
    return g
