"""Dense matrices over a ring with involution.

Column convention: a morphism f: A^n -> A^m is an m x n matrix M with
f(e_j) = sum_i M[i][j] e_i, so composition is matrix multiplication.

With the twisted dual-module structure (a.g)(x) = g(x) conj(a) and the
identification M** = M, the matrix of the dual morphism f* is the
conjugate transpose (rings here are commutative).  `star` is that map.

Matrices are treated as immutable after construction.
"""

from __future__ import annotations

from .rings import Ring


class ShapeError(Exception):
    pass


class RingMismatch(Exception):
    pass


class Matrix:
    __slots__ = ("ring", "rows", "cols", "data")

    def __init__(self, ring: Ring, data, rows=None, cols=None):
        self.ring = ring
        if rows is None:
            rows = len(data)
            cols = len(data[0]) if rows else 0
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def zero(cls, ring, rows, cols):
        z = ring.zero()
        return cls(ring, [[z] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero(), ring.one()
        return cls(ring, [[o if i == j else z for j in range(n)]
                          for i in range(n)], n, n)

    @classmethod
    def from_rows(cls, ring, rows):
        data = [[ring.of_int(x) if isinstance(x, int) else x for x in row]
                for row in rows]
        return cls(ring, data)

    @classmethod
    def scalar(cls, ring, n, a):
        m = cls.zero(ring, n, n)
        for i in range(n):
            m.data[i][i] = a
        return m

    def copy(self):
        return Matrix(self.ring, [row[:] for row in self.data],
                      self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.ring == other.ring
                and self.rows == other.rows and self.cols == other.cols
                and self.data == other.data)

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols,
                     tuple(tuple(r) for r in self.data)))

    def is_zero(self):
        zero = self.ring.zero()
        return all(x == zero for row in self.data for x in row)

    def __add__(self, other):
        self._check(other)
        add = self.ring.add
        return Matrix(self.ring,
                      [[add(a, b) for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.data, other.data)],
                      self.rows, self.cols)

    def __sub__(self, other):
        self._check(other)
        sub = self.ring.sub
        return Matrix(self.ring,
                      [[sub(a, b) for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.data, other.data)],
                      self.rows, self.cols)

    def __neg__(self):
        neg = self.ring.neg
        return Matrix(self.ring, [[neg(a) for a in row] for row in self.data],
                      self.rows, self.cols)

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeError(f"{self.rows}x{self.cols} vs "
                             f"{other.rows}x{other.cols}")

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ring != other.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            if self.cols != other.rows:
                raise ShapeError(f"{self.rows}x{self.cols} * "
                                 f"{other.rows}x{other.cols}")
            ring = self.ring
            add, mul, zero = ring.add, ring.mul, ring.zero()
            ot = [[other.data[k][j] for k in range(other.rows)]
                  for j in range(other.cols)]
            out = []
            for row in self.data:
                orow = []
                for col in ot:
                    acc = zero
                    for a, b in zip(row, col):
                        if a != zero and b != zero:
                            acc = add(acc, mul(a, b))
                    orow.append(acc)
                out.append(orow)
            return Matrix(ring, out, self.rows, other.cols)
        return self.scale(other)

    def scale(self, a):
        mul = self.ring.mul
        return Matrix(self.ring, [[mul(a, x) for x in row]
                                  for row in self.data],
                      self.rows, self.cols)

    def scale_int(self, n):
        if n == 1:
            return self
        if n == -1:
            return -self
        return self.scale(self.ring.of_int(n))

    def transpose(self):
        return Matrix(self.ring,
                      [[self.data[i][j] for i in range(self.rows)]
                       for j in range(self.cols)], self.cols, self.rows)

    def conj(self):
        c = self.ring.conj
        return Matrix(self.ring, [[c(x) for x in row] for row in self.data],
                      self.rows, self.cols)

    def star(self):
        """Conjugate transpose: the matrix of the dual morphism."""
        c = self.ring.conj
        return Matrix(self.ring,
                      [[c(self.data[i][j]) for i in range(self.rows)]
                       for j in range(self.cols)], self.cols, self.rows)

    @classmethod
    def block(cls, ring, grid):
        """Assemble from a 2d list of (matrix or None) blocks.

        Row heights and column widths are inferred; None means zero.
        """
        nbr = len(grid)
        nbc = len(grid[0]) if nbr else 0
        heights = [None] * nbr
        widths = [None] * nbc
        for i in range(nbr):
            for j in range(nbc):
                b = grid[i][j]
                if b is not None:
                    if heights[i] is None:
                        heights[i] = b.rows
                    elif heights[i] != b.rows:
                        raise ShapeError("inconsistent block heights")
                    if widths[j] is None:
                        widths[j] = b.cols
                    elif widths[j] != b.cols:
                        raise ShapeError("inconsistent block widths")
        heights = [h if h is not None else 0 for h in heights]
        widths = [w if w is not None else 0 for w in widths]
        out = cls.zero(ring, sum(heights), sum(widths))
        r0 = 0
        for i in range(nbr):
            c0 = 0
            for j in range(nbc):
                b = grid[i][j]
                if b is not None:
                    for r in range(b.rows):
                        out.data[r0 + r][c0:c0 + b.cols] = list(b.data[r])
                c0 += widths[j]
            r0 += heights[i]
        return out

    def entries(self):
        for row in self.data:
            yield from row

    def __repr__(self):
        if self.rows == 0 or self.cols == 0:
            return f"Matrix({self.ring}, {self.rows}x{self.cols})"
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"[{body}]"


def rand_matrix(ring, rows, cols, rng, bound=2):
    return Matrix(ring, [[ring.rand(rng, bound) for _ in range(cols)]
                         for _ in range(rows)], rows, cols)


def pair(lam: Matrix, x, y):
    """Evaluate the sesquilinear pairing lam(x)(y) = sum_j y_j conj((Lx)_j).

    x, y are coordinate lists; lam an n x n matrix over its ring.
    """
    ring = lam.ring
    acc = ring.zero()
    for j in range(lam.rows):
        s = ring.zero()
        for i in range(lam.cols):
            s = ring.add(s, ring.mul(lam.data[j][i], x[i]))
        acc = ring.add(acc, ring.mul(y[j], ring.conj(s)))
    return acc
