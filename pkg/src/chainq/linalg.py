"""Exact linear algebra over Z, Z/m, and GF(2^k).

Two computational substrates cover every ring in the library:

* the integer substrate: abelian groups (Z/e)^k presented by integer
  matrices, reduced by Smith normal form with full transform tracking
  (e = 0 gives Z, e = m gives Z/m);
* the GF(2) substrate: bitmask Gaussian elimination, used whenever the
  additive exponent is 2 (GF(2^k) matrices are expanded entrywise to
  k x k blocks over F2).

Hot kernels live in `chainq._kernels` (compiled) with a pure-Python twin
in `chainq._kernels_py`; set CHAINQ_PURE=1 to force the fallback.
"""

from __future__ import annotations

import os
from math import gcd

from .matrix import Matrix
from .rings import UnsupportedRing

if os.environ.get("CHAINQ_PURE"):
    from . import _kernels_py as _K
else:
    try:
        from . import _kernels as _K  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _K

KERNEL_IMPLEMENTATION = _K.IMPLEMENTATION


class NoSolution(Exception):
    pass


def xgcd(a, b):
    """(g, x, y) with x*a + y*b = g = gcd(a, b), g >= 0 for a, b >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


# ---------------------------------------------------------------------------
# Integer substrate


class SmithData:
    """Smith normal form D = U M V with exact transform inverses."""

    __slots__ = ("m", "n", "diag", "U", "V", "Uinv", "Vinv", "rank")

    def __init__(self, intmat, m, n):
        work = [list(row) for row in intmat]
        self.m, self.n = m, n
        self.diag, self.U, self.V, self.Uinv, self.Vinv = \
            _K.smith_kernel(work, m, n)
        self.rank = sum(1 for d in self.diag if d)

    def solve(self, b):
        """One solution x of M x = b over Z, or None."""
        c = _matvec(self.U, b)
        y = [0] * self.n
        for i in range(self.m):
            d = self.diag[i] if i < min(self.m, self.n) else 0
            if i < self.n and d:
                if c[i] % d:
                    return None
                y[i] = c[i] // d
            elif c[i]:
                return None
        return _matvec(self.V, y)

    def kernel(self):
        """Columns forming a basis of ker(M) over Z."""
        cols = []
        for j in range(self.n):
            d = self.diag[j] if j < min(self.m, self.n) else 0
            if d == 0:
                cols.append([self.V[i][j] for i in range(self.n)])
        return cols


def _matvec(mat, vec):
    out = []
    for row in mat:
        acc = 0
        for a, b in zip(row, vec):
            if a and b:
                acc += a * b
        out.append(acc)
    return out


class IntSolver:
    """Cached solver/kernel for an integer matrix modulo an exponent e.

    Solves M x = b in (Z/e)^m and produces a basis of the lattice
    {x in Z^n : M x = 0 mod e}.  For e > 0 the matrix is augmented with
    e*I columns; the projection of the augmented kernel onto the first n
    coordinates is injective, so the projected basis is a basis.
    """

    def __init__(self, intmat, m, n, exponent=0):
        self.m, self.n, self.e = m, n, exponent
        if exponent:
            aug = [list(row) + [exponent if i == j else 0
                                for j in range(m)]
                   for i, row in enumerate(intmat)]
            self.sd = SmithData(aug, m, n + m)
        else:
            self.sd = SmithData(intmat, m, n)

    def solve(self, b):
        x = self.sd.solve(list(b))
        if x is None:
            return None
        return x[:self.n]

    def kernel(self):
        return [col[:self.n] for col in self.sd.kernel()
                if any(col[:self.n])]


def lattice_contains(gens, vec, exponent=0):
    """Is vec in the subgroup of (Z/e)^k generated by the vectors gens?"""
    k = len(vec)
    mat = [[g[i] for g in gens] for i in range(k)]
    return IntSolver(mat, k, len(gens), exponent).solve(vec) is not None


def lattice_equal(gens_a, gens_b, dim, exponent=0):
    mat_a = [[g[i] for g in gens_a] for i in range(dim)]
    mat_b = [[g[i] for g in gens_b] for i in range(dim)]
    sa = IntSolver(mat_a, dim, len(gens_a), exponent)
    sb = IntSolver(mat_b, dim, len(gens_b), exponent)
    return (all(sa.solve(g) is not None for g in gens_b)
            and all(sb.solve(g) is not None for g in gens_a))


# ---------------------------------------------------------------------------
# GF(2) substrate


class F2Solver:
    """Solve M x = b and compute kernels over GF(2).

    The matrix is handed over as its list of columns, each column a
    bitmask int over row indices.
    """

    def __init__(self, col_masks, nrows):
        self.nrows = nrows
        self.ncols = len(col_masks)
        self.cols = col_masks
        self._pivots = []
        self._basis = []
        self._combos = []
        self._kernel = []
        for j, col in enumerate(col_masks):
            rem, comb = _K.f2_reduce_tracked(col, self._pivots, self._basis,
                                             self._combos)
            comb |= 1 << j
            if rem == 0:
                self._kernel.append(comb)
            else:
                p = rem.bit_length() - 1
                k = 0
                while k < len(self._pivots) and self._pivots[k] > p:
                    k += 1
                self._pivots.insert(k, p)
                self._basis.insert(k, rem)
                self._combos.insert(k, comb)

    def solve(self, bmask):
        """Bitmask over columns with M x = b, or None."""
        rem, comb = _K.f2_reduce_tracked(bmask, self._pivots, self._basis,
                                         self._combos)
        if rem:
            return None
        return comb

    def contains(self, bmask):
        return _K.f2_reduce(bmask, self._pivots, self._basis) == 0

    def rank(self):
        return len(self._pivots)

    def kernel(self):
        """Bitmask vectors (over column indices) spanning ker(M)."""
        return list(self._kernel)


# ---------------------------------------------------------------------------
# Ring-level canonical forms (the public smith/Howell surface)


def smith_or_howell_form(M: Matrix):
    """Canonical form (D, U, V, Uinv, Vinv) with D = U M V, U, V invertible.

    Over Z and over GF(2^k), D is diagonal (Smith form / rank normal
    form).  Over Z/m, D is the Howell form of M with V = I; if the
    Howell basis needs more rows than M has, M is implicitly padded with
    zero rows and U is square of the padded size.
    """
    ring = M.ring
    if ring.kind == "Integers":
        sd = SmithData(M.data, M.rows, M.cols)
        D = Matrix.zero(ring, M.rows, M.cols)
        for i, d in enumerate(sd.diag):
            D.data[i][i] = d
        mk = lambda rows: Matrix(ring, [list(r) for r in rows])
        return D, mk(sd.U), mk(sd.V), mk(sd.Uinv), mk(sd.Vinv)
    if ring.kind == "IntegersMod":
        H, U, Uinv = howell_form(M)
        V = Matrix.identity(ring, M.cols)
        return H, U, V, Uinv, V
    if ring.kind == "GaloisField2k":
        return _field_diagonalize(M)
    raise UnsupportedRing(str(ring.kind))


def _field_diagonalize(M: Matrix):
    ring = M.ring
    A = [row[:] for row in M.data]
    m, n = M.rows, M.cols

    def ident(k):
        return [[ring.one() if i == j else ring.zero() for j in range(k)]
                for i in range(k)]

    U, Uinv, V, Vinv = ident(m), ident(m), ident(n), ident(n)
    add, sub, mul = ring.add, ring.sub, ring.mul
    t = 0
    while t < min(m, n):
        piv = next(((i, j) for i in range(t, m) for j in range(t, n)
                    if A[i][j]), None)
        if piv is None:
            break
        i0, j0 = piv
        if i0 != t:
            A[t], A[i0] = A[i0], A[t]
            U[t], U[i0] = U[i0], U[t]
            for r in Uinv:
                r[t], r[i0] = r[i0], r[t]
        if j0 != t:
            for r in A:
                r[t], r[j0] = r[j0], r[t]
            for r in V:
                r[t], r[j0] = r[j0], r[t]
            Vinv[t], Vinv[j0] = Vinv[j0], Vinv[t]
        pinv = ring.inv(A[t][t])
        p = A[t][t]
        A[t] = [mul(pinv, x) for x in A[t]]
        U[t] = [mul(pinv, x) for x in U[t]]
        for r in Uinv:
            r[t] = mul(r[t], p)
        for i in range(m):
            if i != t and A[i][t]:
                c = A[i][t]
                A[i] = [sub(x, mul(c, y)) for x, y in zip(A[i], A[t])]
                U[i] = [sub(x, mul(c, y)) for x, y in zip(U[i], U[t])]
                for r in Uinv:
                    r[t] = add(r[t], mul(c, r[i]))
        for j in range(n):
            if j != t and A[t][j]:
                c = A[t][j]
                for r in A:
                    r[j] = sub(r[j], mul(c, r[t]))
                for r in V:
                    r[j] = sub(r[j], mul(c, r[t]))
                Vinv[t] = [add(x, mul(c, y))
                           for x, y in zip(Vinv[t], Vinv[j])]
        t += 1
    mk = lambda rows: Matrix(ring, rows)
    return mk(A), mk(U), mk(V), mk(Uinv), mk(Vinv)


def _unit_scaling(a, m):
    """A unit u mod m with u*a = gcd(a, m) mod m."""
    g = gcd(a, m)
    b = a // g
    mm = m // g
    if mm == 1:
        return 1
    u = pow(b % mm, -1, mm)
    while gcd(u, m) != 1:
        u += mm
    return u % m


def howell_form(M: Matrix):
    """Howell form over Z/m: (H, U, Uinv) with H = U * Mpad.

    The Howell form is the canonical echelon matrix whose rows span the
    same row space as M and which is closed under annihilator rows:
    pivots divide m, entries above a pivot are reduced mod the pivot,
    and (m/pivot) times each row is again in the row span.  Appending
    annihilator rows can need more rows than M has, in which case M is
    padded with zero rows (Mpad) and U is square of the padded size.
    """
    ring = M.ring
    if ring.kind != "IntegersMod":
        raise UnsupportedRing("Howell form needs Z/m")
    m_mod = ring.m
    n = M.cols
    A = [[x % m_mod for x in row] for row in M.data]
    k = len(A)
    U = [[int(i == j) for j in range(k)] for i in range(k)]
    Uinv = [[int(i == j) for j in range(k)] for i in range(k)]

    def combine(i, j):
        # 2x2 unimodular transform making A[i][col] = gcd, A[j][col] = 0.
        a, b = A[i][col], A[j][col]
        if b == 0:
            return
        if a == 0:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]
            for r in Uinv:
                r[i], r[j] = r[j], r[i]
            return
        g, s, t = xgcd(a, b)
        u, v = -(b // g), a // g
        A[i], A[j] = ([(s * x + t * y) % m_mod for x, y in zip(A[i], A[j])],
                      [(u * x + v * y) % m_mod for x, y in zip(A[i], A[j])])
        U[i], U[j] = ([(s * x + t * y) % m_mod for x, y in zip(U[i], U[j])],
                      [(u * x + v * y) % m_mod for x, y in zip(U[i], U[j])])
        # inverse of [[s,t],[u,v]] (det 1) is [[v,-t],[-u,s]]: column ops.
        for r in Uinv:
            ci, cj = r[i], r[j]
            r[i] = (v * ci - u * cj) % m_mod
            r[j] = (-t * ci + s * cj) % m_mod

    def scale(i, u):
        uinv = pow(u, -1, m_mod)
        A[i] = [(u * x) % m_mod for x in A[i]]
        U[i] = [(u * x) % m_mod for x in U[i]]
        for r in Uinv:
            r[i] = (r[i] * uinv) % m_mod

    def append_annihilator(i, ann):
        nonlocal k
        A.append([(ann * x) % m_mod for x in A[i]])
        new_u = [(ann * x) % m_mod for x in U[i]] + [1]
        for r in U:
            r.append(0)
        U.append(new_u)
        for r in Uinv:
            r.append(0)
        # U_new = [[U, 0], [ann*U[i], 1]], so Uinv_new = [[Uinv, 0], [w, 1]]
        # with w = -ann * (row i of U * Uinv) = -ann * e_i.
        new_uinv = [0] * k + [1]
        new_uinv[i] = (-ann) % m_mod
        Uinv.append(new_uinv)
        k += 1

    r0 = 0
    col = 0
    while col < n and r0 < len(A):
        for i in range(r0 + 1, len(A)):
            combine(r0, i)
        a = A[r0][col]
        if a:
            g = gcd(a, m_mod)
            if a != g:
                scale(r0, _unit_scaling(a, m_mod))
            piv = A[r0][col]
            for i in range(r0):
                q = A[i][col] // piv
                if q:
                    A[i] = [(x - q * y) % m_mod
                            for x, y in zip(A[i], A[r0])]
                    U[i] = [(x - q * y) % m_mod
                            for x, y in zip(U[i], U[r0])]
                    for rr in Uinv:
                        rr[r0] = (rr[r0] + q * rr[i]) % m_mod
            ann = m_mod // gcd(piv, m_mod)
            if ann != 1 and any((ann * x) % m_mod for x in A[r0]):
                append_annihilator(r0, ann)
            r0 += 1
        col += 1
    mk = lambda rows: Matrix(ring, [[x % m_mod for x in row]
                                    for row in rows])
    return mk(A), mk(U), mk(Uinv)


# ---------------------------------------------------------------------------
# Additive expansion of ring matrices


def additive_matrix(M: Matrix):
    """Expand a ring matrix to an integer matrix on additive coordinates."""
    ring = M.ring
    d = ring.add_dim
    out = [[0] * (M.cols * d) for _ in range(M.rows * d)]
    zero = ring.zero()
    for i in range(M.rows):
        for j in range(M.cols):
            a = M.data[i][j]
            if a == zero:
                continue
            blk = ring.mul_add_matrix(a)
            for u in range(d):
                row = out[i * d + u]
                brow = blk[u]
                for v in range(d):
                    row[j * d + v] = brow[v]
    return out


def vector_to_add(ring, vec):
    out = []
    for a in vec:
        out.extend(ring.to_add(a))
    return out


def vector_from_add(ring, coords):
    d = ring.add_dim
    return [ring.from_add(tuple(coords[i * d:(i + 1) * d]))
            for i in range(len(coords) // d)]
