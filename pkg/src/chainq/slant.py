"""Slant coordinates for tensor chains.

A degree-k element of C^t (x)_A D is stored as its slant image: a finite
collection of matrices phi^(i): C^i -> D_{k-i}, indexed by the source
cohomological degree i (slant(x (x) y) maps h to conj(h(x)) y, i.e. the
matrix y conj(x)^T for x in C_i, y in D_{k-i}).

In these coordinates:

* the tensor differential is
    (d phi)^(i) = d_D phi^(i) + (-1)^(k-1-i) phi^(i+1) d_C*,
* the transposition involution (C = D) is
    (T phi)^(i) = (-1)^(i(k-i)) star(phi^(k-i)),
* a chain map u: D -> E acts by (u phi u'^*)^(i) = u phi^(i) star(u'),

and d T = T d holds on the nose.
"""

from __future__ import annotations

from .matrix import Matrix, ShapeError


class SlantChain:
    """Element of (C^t (x) D)_deg in slant coordinates."""

    __slots__ = ("C", "D", "deg", "comps")

    def __init__(self, C, D, deg, comps=None):
        self.C = C
        self.D = D
        self.deg = deg
        self.comps = {}
        if comps:
            for i, m in comps.items():
                self._set(i, m)

    def _set(self, i, m):
        want = (self.D.rank(self.deg - i), self.C.rank(i))
        if (m.rows, m.cols) != want:
            raise ShapeError(
                f"component {i} of degree-{self.deg} slant chain: "
                f"got {m.rows}x{m.cols}, want {want[0]}x{want[1]}")
        if m.is_zero():
            self.comps.pop(i, None)
        else:
            self.comps[i] = m

    def component(self, i):
        m = self.comps.get(i)
        if m is None:
            return Matrix.zero(self.C.ring, self.D.rank(self.deg - i),
                               self.C.rank(i))
        return m

    def support(self):
        lo = max(self.C.bottom, self.deg - self.D.top)
        hi = min(self.C.top, self.deg - self.D.bottom)
        return range(lo, hi + 1)

    def is_zero(self):
        return not self.comps

    def __add__(self, other):
        assert self.deg == other.deg
        out = SlantChain(self.C, self.D, self.deg)
        for i in set(self.comps) | set(other.comps):
            out._set(i, self.component(i) + other.component(i))
        return out

    def __sub__(self, other):
        assert self.deg == other.deg
        out = SlantChain(self.C, self.D, self.deg)
        for i in set(self.comps) | set(other.comps):
            out._set(i, self.component(i) - other.component(i))
        return out

    def __neg__(self):
        return SlantChain(self.C, self.D, self.deg,
                          {i: -m for i, m in self.comps.items()})

    def scale_int(self, n):
        if n == 1:
            return self
        return SlantChain(self.C, self.D, self.deg,
                          {i: m.scale_int(n) for i, m in self.comps.items()})

    def __eq__(self, other):
        if self.deg != other.deg:
            return False
        for i in set(self.comps) | set(other.comps):
            if self.component(i) != other.component(i):
                return False
        return True

    def d(self):
        """The tensor differential in slant coordinates."""
        out = SlantChain(self.C, self.D, self.deg - 1)
        for i in out.support():
            acc = None
            m = self.comps.get(i)
            if m is not None:
                acc = self.D.diff(self.deg - i) * m
            m1 = self.comps.get(i + 1)
            if m1 is not None:
                t = m1 * self.C.diff(i + 1).star()
                t = t.scale_int(-1 if (self.deg - 1 - i) % 2 else 1)
                acc = t if acc is None else acc + t
            if acc is not None:
                out._set(i, acc)
        return out

    def T(self):
        """Transposition involution (requires C = D)."""
        out = SlantChain(self.C, self.D, self.deg)
        for i, m in self.comps.items():
            j = self.deg - i
            sgn = -1 if (i * j) % 2 else 1
            out._set(j, m.star().scale_int(sgn))
        return out

    def push(self, u, v=None):
        """u . phi . star(v) for chain maps u: D -> E, v: C -> B.

        Component-wise: (out)^(i) = u_{deg-i} phi^(i) star(v_i), a
        degree-deg slant chain from B to E.  v defaults to u (requires
        then C = D).
        """
        if v is None:
            v = u
        out = SlantChain(v.target, u.target, self.deg)
        for i, m in self.comps.items():
            mat = u.component(self.deg - i) * m * v.component(i).star()
            if not mat.is_zero():
                out._set(i, mat)
        return out

    def copy(self):
        return SlantChain(self.C, self.D, self.deg, dict(self.comps))

    def __repr__(self):
        parts = ", ".join(f"{i}:{m!r}" for i, m in sorted(self.comps.items()))
        return f"SlantChain(deg={self.deg}; {parts})"


def slant_from_matrix(C, D, deg, i, mat):
    return SlantChain(C, D, deg, {i: mat})


def rand_slant(C, D, deg, rng, bound=2):
    from .matrix import rand_matrix
    out = SlantChain(C, D, deg)
    for i in out.support():
        rows, cols = D.rank(deg - i), C.rank(i)
        if rows and cols:
            out._set(i, rand_matrix(C.ring, rows, cols, rng, bound))
    return out
