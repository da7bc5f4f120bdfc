"""Pure-Python hot kernels: integer Smith reduction and GF(2) elimination.

`chainq.linalg` selects these or the compiled twins in `chainq._kernels`
at import time.  Both implementations must agree exactly; the compiled
module is an optimization only.

All integer arithmetic is arbitrary precision.  Matrices are lists of
row lists; GF(2) rows are ints used as bitmasks (bit j = column j).
"""

from __future__ import annotations

IMPLEMENTATION = "python"


def smith_kernel(mat, m, n):
    """Diagonalize an integer matrix, tracking transforms.

    Returns (diag, U, V, Uinv, Vinv) where diag is the list of diagonal
    entries d_1 | d_2 | ... (nonnegative, divisibility chain), and
    U*mat*V = D, U*Uinv = I, V*Vinv = I exactly.

    `mat` is consumed (mutated).
    """
    A = mat
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Uinv = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vinv = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_add(i, j, c):
        # R_i += c R_j ; inverse: column j of Uinv -= c * column i
        Ai, Aj = A[i], A[j]
        for k in range(n):
            if Aj[k]:
                Ai[k] += c * Aj[k]
        Ui, Uj = U[i], U[j]
        for k in range(m):
            if Uj[k]:
                Ui[k] += c * Uj[k]
        for r in Uinv:
            if r[i]:
                r[j] -= c * r[i]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for r in Uinv:
            r[i], r[j] = r[j], r[i]

    def row_neg(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for r in Uinv:
            r[i] = -r[i]

    def col_add(j, i, c):
        # C_j += c C_i ; inverse: row i of Vinv -= c * row j
        for r in A:
            if r[i]:
                r[j] += c * r[i]
        for r in V:
            if r[i]:
                r[j] += c * r[i]
        Vj, Vi = Vinv[j], Vinv[i]
        for k in range(n):
            if Vj[k]:
                Vi[k] -= c * Vj[k]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    size = min(m, n)
    t = 0
    while t < size:
        # Locate a pivot of least absolute value in A[t:, t:].
        piv = None
        best = None
        for i in range(t, m):
            Ai = A[i]
            for j in range(t, n):
                x = Ai[j]
                if x:
                    ax = -x if x < 0 else x
                    if best is None or ax < best:
                        best = ax
                        piv = (i, j)
                        if ax == 1:
                            break
            if best == 1:
                break
        if piv is None:
            break
        i0, j0 = piv
        if i0 != t:
            row_swap(t, i0)
        if j0 != t:
            col_swap(t, j0)

        while True:
            # Clear column t, restarting whenever a smaller pivot appears.
            dirty = False
            for i in range(m):
                if i == t:
                    continue
                x = A[i][t]
                if x:
                    p = A[t][t]
                    q = x // p
                    if q:
                        row_add(i, t, -q)
                    if A[i][t]:
                        row_swap(t, i)
                        dirty = True
            if dirty:
                continue
            for j in range(n):
                if j == t:
                    continue
                x = A[t][j]
                if x:
                    p = A[t][t]
                    q = x // p
                    if q:
                        col_add(j, t, -q)
                    if A[t][j]:
                        col_swap(t, j)
                        dirty = True
            if dirty:
                continue
            # Pivot must divide the remaining submatrix.
            p = A[t][t]
            witness = None
            for i in range(t + 1, m):
                Ai = A[i]
                for j in range(t + 1, n):
                    if Ai[j] % p:
                        witness = i
                        break
                if witness is not None:
                    break
            if witness is None:
                break
            row_add(t, witness, 1)
        if A[t][t] < 0:
            row_neg(t)
        t += 1

    diag = [A[i][i] for i in range(size)]
    return diag, U, V, Uinv, Vinv


def f2_echelon(rows, track=False):
    """Row-echelon form over GF(2) on bitmask rows.

    Returns (pivots, basis, combos): `basis` is the reduced nonzero rows,
    `pivots[k]` the pivot column of basis[k] (ascending), and `combos[k]`
    (when track) the bitmask over input rows producing basis[k].
    """
    basis = []
    pivots = []
    combos = []
    for idx, row in enumerate(rows):
        comb = 1 << idx
        for p, b, c in zip(pivots, basis, combos):
            if (row >> p) & 1:
                row ^= b
                comb ^= c
        if row:
            p = row.bit_length() - 1
            # Insert keeping pivot order descending internally; reduce above.
            k = 0
            while k < len(pivots) and pivots[k] > p:
                k += 1
            pivots.insert(k, p)
            basis.insert(k, row)
            combos.insert(k, comb)
            for i in range(len(basis)):
                if i != k and (basis[i] >> p) & 1:
                    basis[i] ^= row
                    combos[i] ^= comb
    if not track:
        combos = [0] * len(basis)
    return pivots, basis, combos


def f2_reduce(vec, pivots, basis):
    """Reduce vec against an echelon basis; returns the remainder."""
    for p, b in zip(pivots, basis):
        if (vec >> p) & 1:
            vec ^= b
    return vec


def f2_reduce_tracked(vec, pivots, basis, combos):
    comb = 0
    for p, b, c in zip(pivots, basis, combos):
        if (vec >> p) & 1:
            vec ^= b
            comb ^= c
    return vec, comb
