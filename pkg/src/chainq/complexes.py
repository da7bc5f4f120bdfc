"""Bounded chain complexes of f.g. free modules and their constructions.

A complex stores an explicit degree window [bottom, top], per-degree
ranks and differentials d_r: C_r -> C_{r-1} with d*d = 0.  Provided
constructions: suspension, dual C^{-*}, n-dual C^{n-*} (differential
(-1)^r d*), tensor product over the ring with the transposition
involution, hom complexes, mapping cones, direct sums, homology (as
canonical presentations with witnesses), acyclicity and equivalence
tests, and chain contractions / homotopy inverses for equivalences.

Tensor basis ordering is lexicographic with the first factor's degree
descending, then (first-factor index, second-factor index).
"""

from __future__ import annotations

from .groups import homology_data
from .linalg import additive_matrix
from .matrix import Matrix, RingMismatch, ShapeError


class DimensionMismatch(Exception):
    pass


class ChainComplex:
    __slots__ = ("ring", "bottom", "ranks", "diffs", "_hom_cache")

    def __init__(self, ring, bottom, ranks, diffs, check=True):
        """ranks[i] is the rank in degree bottom + i; diffs maps degree r
        to the matrix of d_r: C_r -> C_{r-1}."""
        while ranks and ranks[-1] == 0:
            ranks = ranks[:-1]
        while ranks and ranks[0] == 0:
            ranks = ranks[1:]
            bottom += 1
        self.ring = ring
        self.bottom = bottom
        self.ranks = list(ranks)
        self.diffs = {}
        self._hom_cache = {}
        for r, mat in diffs.items():
            if self.rank(r) and self.rank(r - 1):
                self.diffs[r] = mat
        if check:
            self.validate()

    @property
    def top(self):
        return self.bottom + len(self.ranks) - 1

    def degrees(self):
        return range(self.bottom, self.top + 1)

    def rank(self, r):
        if self.bottom <= r <= self.top:
            return self.ranks[r - self.bottom]
        return 0

    def total_rank(self):
        return sum(self.ranks)

    def diff(self, r):
        """d_r: C_r -> C_{r-1} (zero matrix outside the window)."""
        m = self.diffs.get(r)
        if m is None:
            return Matrix.zero(self.ring, self.rank(r - 1), self.rank(r))
        return m

    def validate(self):
        for r in range(self.bottom, self.top + 2):
            d, d1 = self.diff(r), self.diff(r + 1)
            if d.rows != self.rank(r - 1) or d.cols != self.rank(r):
                raise ShapeError(f"differential at degree {r}")
            if not (d * d1).is_zero():
                raise ValueError(f"d*d != 0 at degree {r + 1}")

    def is_zero(self):
        return not self.ranks

    def __eq__(self, other):
        return (isinstance(other, ChainComplex) and self.ring == other.ring
                and self.bottom == other.bottom and self.ranks == other.ranks
                and all(self.diff(r) == other.diff(r) for r in self.degrees()))

    def __repr__(self):
        rk = ", ".join(f"{r}:{self.rank(r)}" for r in self.degrees())
        return f"ChainComplex({self.ring}; {rk})"

    # -- constructions ----------------------------------------------------

    def suspend(self, n=1):
        """S^n C: degree shift by n, same differentials."""
        return ChainComplex(self.ring, self.bottom + n, self.ranks,
                            {r + n: m for r, m in self.diffs.items()},
                            check=False)

    def dual(self):
        """C^{-*}: (C^{-*})_r = C^{-r} with differential d*."""
        bot, top = -self.top, -self.bottom
        ranks = [self.rank(-r) for r in range(bot, top + 1)]
        diffs = {}
        for r in range(bot, top + 1):
            # d: C^{-r} -> C^{-r+1} is the dual of d_{-r+1}: C_{-r+1} -> C_{-r}
            d = self.diff(-r + 1)
            if d.rows and d.cols:
                diffs[r] = d.star()
        return ChainComplex(self.ring, bot, ranks, diffs, check=False)

    def n_dual(self, n):
        """C^{n-*}: (C^{n-*})_r = C^{n-r} with differential (-1)^r d*."""
        bot, top = n - self.top, n - self.bottom
        ranks = [self.rank(n - r) for r in range(bot, top + 1)]
        diffs = {}
        for r in range(bot, top + 1):
            d = self.diff(n - r + 1)
            if d.rows and d.cols:
                diffs[r] = d.star().scale_int(-1 if r % 2 else 1)
        return ChainComplex(self.ring, bot, ranks, diffs, check=False)

    def direct_sum(self, other):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        bot = min(self.bottom, other.bottom)
        top = max(self.top, other.top)
        ranks = [self.rank(r) + other.rank(r) for r in range(bot, top + 1)]
        diffs = {}
        for r in range(bot, top + 1):
            diffs[r] = Matrix.block(self.ring,
                                    [[self.diff(r), None],
                                     [None, other.diff(r)]])
        return ChainComplex(self.ring, bot, ranks, diffs, check=False)

    def summand_injection(self, other, which):
        """Chain map C -> C (+) C' onto the first/second summand."""
        tot = self.direct_sum(other)
        src = self if which == 0 else other
        comps = {}
        for r in src.degrees():
            m = Matrix.zero(self.ring, tot.rank(r), src.rank(r))
            off = 0 if which == 0 else self.rank(r)
            for i in range(src.rank(r)):
                m.data[off + i][i] = self.ring.one()
            comps[r] = m
        return ChainMap(src, tot, comps)

    # -- homology ---------------------------------------------------------

    def homology_full(self, r):
        """HomologyData for H_r(C), cached."""
        if r not in self._hom_cache:
            ring = self.ring
            d = ring.add_dim
            k = self.rank(r) * d
            k_out = self.rank(r - 1) * d
            k_in = self.rank(r + 1) * d
            d_out = additive_matrix(self.diff(r))
            d_in = additive_matrix(self.diff(r + 1))
            self._hom_cache[r] = homology_data(d_out, d_in, k, k_out, k_in,
                                               exponent=ring.exponent)
        return self._hom_cache[r]

    def homology(self, r):
        """Canonical presentation of H_r(C) as an abelian group."""
        return self.homology_full(r).pres

    def cohomology_full(self, r):
        """H^r(C) = H_{-r} of the dual complex."""
        return self.dual().homology_full(-r)

    def cohomology(self, r):
        return self.dual().homology(-r)

    def is_acyclic(self):
        return all(self.homology(r).is_trivial()
                   for r in range(self.bottom, self.top + 1))

    def contraction(self):
        """A chain contraction G with d G + G d = 1 (acyclic C only).

        Returns {r: Matrix G_r: C_r -> C_{r+1}}.
        """
        from .linalg import IntSolver, vector_to_add, vector_from_add
        ring = self.ring
        gamma = {}
        prev = None  # G_{r-1}
        for r in self.degrees():
            # solve d_{r+1} G_r = 1 - G_{r-1} d_r  columnwise
            target = Matrix.identity(ring, self.rank(r))
            if prev is not None:
                target = target - prev * self.diff(r)
            d1 = self.diff(r + 1)
            add = additive_matrix(d1)
            ad = ring.add_dim
            solver = IntSolver(add, self.rank(r) * ad,
                               self.rank(r + 1) * ad, ring.exponent)
            cols = []
            for j in range(self.rank(r)):
                col = [target.data[i][j] for i in range(self.rank(r))]
                sol = solver.solve(vector_to_add(ring, col))
                if sol is None:
                    raise ValueError("complex is not contractible")
                cols.append(vector_from_add(ring, sol))
            g = Matrix(ring, [[cols[j][i] for j in range(self.rank(r))]
                              for i in range(self.rank(r + 1))],
                       self.rank(r + 1), self.rank(r))
            gamma[r] = g
            prev = g
        return gamma


class ChainMap:
    """A degreewise map f: C -> D with d f = (-1)^shift f d.

    shift 0 is a chain map; shift 1 arises for suspended data.  Only
    shift 0 is validated as a chain map.
    """

    __slots__ = ("source", "target", "comps")

    def __init__(self, source, target, comps, check=True):
        if source.ring != target.ring:
            raise RingMismatch("chain map across different rings")
        self.source = source
        self.target = target
        self.comps = {r: m for r, m in comps.items()
                      if m.rows == target.rank(r) and m.cols == source.rank(r)
                      and not m.is_zero()}
        for r, m in comps.items():
            if (m.rows, m.cols) != (target.rank(r), source.rank(r)):
                raise ShapeError(f"component at degree {r}")
        if check:
            self.validate()

    def component(self, r):
        m = self.comps.get(r)
        if m is None:
            return Matrix.zero(self.source.ring, self.target.rank(r),
                               self.source.rank(r))
        return m

    def validate(self):
        lo = min(self.source.bottom, self.target.bottom)
        hi = max(self.source.top, self.target.top)
        for r in range(lo, hi + 1):
            lhs = self.target.diff(r) * self.component(r)
            rhs = self.component(r - 1) * self.source.diff(r)
            if lhs != rhs:
                raise ValueError(f"not a chain map at degree {r}")

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, {}, check=False)

    @classmethod
    def identity(cls, c):
        return cls(c, c, {r: Matrix.identity(c.ring, c.rank(r))
                          for r in c.degrees()}, check=False)

    def __add__(self, other):
        comps = {}
        for r in set(self.comps) | set(other.comps):
            comps[r] = self.component(r) + other.component(r)
        return ChainMap(self.source, self.target, comps, check=False)

    def __sub__(self, other):
        comps = {}
        for r in set(self.comps) | set(other.comps):
            comps[r] = self.component(r) - other.component(r)
        return ChainMap(self.source, self.target, comps, check=False)

    def __neg__(self):
        return ChainMap(self.source, self.target,
                        {r: -m for r, m in self.comps.items()}, check=False)

    def compose(self, other):
        """self o other."""
        comps = {}
        for r in other.comps:
            comps[r] = self.component(r) * other.component(r)
        return ChainMap(other.source, self.target, comps, check=False)

    def n_dual(self, n):
        """The n-dual chain map f^(n-dual): D^{n-*} -> C^{n-*}."""
        comps = {}
        for r0, m in self.comps.items():
            comps[n - r0] = m.star()
        return ChainMap(self.target.n_dual(n), self.source.n_dual(n),
                        comps, check=False)

    def suspend(self, n=1):
        return ChainMap(self.source.suspend(n), self.target.suspend(n),
                        {r + n: m for r, m in self.comps.items()},
                        check=False)

    def direct_sum(self, other):
        src = self.source.direct_sum(other.source)
        tgt = self.target.direct_sum(other.target)
        comps = {}
        for r in src.degrees():
            comps[r] = Matrix.block(src.ring,
                                    [[self.component(r), None],
                                     [None, other.component(r)]])
        return ChainMap(src, tgt, comps, check=False)

    def cone(self):
        """Algebraic mapping cone: cone(f)_r = D_r (+) C_{r-1}."""
        f = self
        C, D = f.source, f.target
        bot = min(D.bottom, C.bottom + 1)
        top = max(D.top, C.top + 1)
        ranks = [D.rank(r) + C.rank(r - 1) for r in range(bot, top + 1)]
        diffs = {}
        for r in range(bot, top + 1):
            fr = f.component(r - 1).scale_int(-1 if (r - 1) % 2 else 1)
            diffs[r] = Matrix.block(D.ring,
                                    [[D.diff(r), fr],
                                     [None, C.diff(r - 1)]])
        return ChainComplex(D.ring, bot, ranks, diffs, check=False)

    def is_equivalence(self):
        """f is a chain equivalence iff its cone is acyclic (bounded free
        complexes are contractible when acyclic)."""
        return self.cone().is_acyclic()

    def homotopy_inverse(self):
        """(g, h_C, h_D) with g: D -> C a chain map, and homotopies
        d h_C + h_C d = g f - 1 and d h_D + h_D d = f g - 1 (verified).
        Requires f to be an equivalence."""
        f = self
        C, D = f.source, f.target
        cone = f.cone()
        G = cone.contraction()
        # cone_r = D_r (+) C_{r-1}; the lower-left block of G_r is an
        # anti-chain map D -> C, fixed up by the sign (-1)^r.
        g_comps = {}
        for r in range(cone.bottom, cone.top + 1):
            Gr = G.get(r)
            if Gr is None:
                continue
            dr = D.rank(r)
            blk = Matrix(D.ring,
                         [row[:dr] for row in Gr.data[D.rank(r + 1):]],
                         C.rank(r), dr)
            g_comps[r] = blk.scale_int(-1 if r % 2 else 1)
        g = ChainMap(D, C, g_comps)
        hC = null_homotopy(g.compose(f) - ChainMap.identity(C))
        hD = null_homotopy(f.compose(g) - ChainMap.identity(D))
        return g, hC, hD


def null_homotopy(p: ChainMap):
    """h with d h + h d = p for a null-homotopic chain map p: C -> D.

    Returns {r: Matrix h_r: C_r -> D_{r+1}}; raises ValueError when p is
    not null-homotopic.  The identity is verified before returning.
    """
    from .linalg import IntSolver, vector_to_add, vector_from_add
    C, D = p.source, p.target
    ring = C.ring
    H = hom_complex(C, D)
    # Flatten p as a degree-0 element of Hom(C, D); basis order matches
    # hom_complex: p ascending, then column-major over (j, i).
    def flatten(mapdict, n):
        vec = []
        for pp in range(C.bottom, C.top + 1):
            q = pp + n
            if C.rank(pp) and D.rank(q):
                mat = mapdict.get(pp)
                for j in range(D.rank(q)):
                    for i in range(C.rank(pp)):
                        vec.append(mat.data[j][i] if mat is not None
                                   else ring.zero())
        return vec

    def unflatten(vec, n):
        out = {}
        pos = 0
        for pp in range(C.bottom, C.top + 1):
            q = pp + n
            if C.rank(pp) and D.rank(q):
                mat = Matrix.zero(ring, D.rank(q), C.rank(pp))
                for j in range(D.rank(q)):
                    for i in range(C.rank(pp)):
                        mat.data[j][i] = vec[pos]
                        pos += 1
                out[pp] = mat
        return out

    # The hom-complex differential is (dh)_p = d_D h_p + (-1)^p h_{p-1} d_C
    # at degree 1; the sign eps(p) = (-1)^(p(p+1)/2) turns its solutions
    # into genuine homotopies d h + h d = p.
    def eps(p):
        return -1 if (p * (p + 1) // 2) % 2 else 1

    pmaps = {r: p.component(r).scale_int(eps(r))
             for r in range(C.bottom, C.top + 1)}
    pvec = flatten(pmaps, 0)
    d1 = H.diff(1)
    ad = ring.add_dim
    solver = IntSolver(additive_matrix(d1), H.rank(0) * ad,
                       H.rank(1) * ad, ring.exponent)
    sol = solver.solve(vector_to_add(ring, pvec))
    if sol is None:
        raise ValueError("map is not null-homotopic")
    hraw = unflatten(vector_from_add(ring, sol), 1)
    h = {r: m.scale_int(eps(r)) for r, m in hraw.items()}
    if not _check_homotopy(p, h):
        raise AssertionError("homotopy verification failed")
    return h


def _check_homotopy(p, h):
    C, D = p.source, p.target
    zero = Matrix.zero
    for r in range(C.bottom - 1, C.top + 2):
        hr = h.get(r, zero(C.ring, D.rank(r + 1), C.rank(r)))
        hr1 = h.get(r - 1, zero(C.ring, D.rank(r), C.rank(r - 1)))
        lhs = D.diff(r + 1) * hr + hr1 * C.diff(r)
        if lhs != p.component(r):
            return False
    return True


def homology(C, r):
    return C.homology(r)


def is_equivalence(f):
    return f.is_equivalence()


def mapping_cone(f):
    return f.cone()


def sphere(ring, r, rank=1):
    """S^r A: the complex with A^rank concentrated in degree r."""
    return ChainComplex(ring, r, [rank], {}, check=False)


# ---------------------------------------------------------------------------
# Tensor and hom complexes


def tensor(C, D):
    """C^t (x)_A D with d(x (x) y) = x (x) dy + (-1)^q dx (x) y.

    Basis at total degree k: blocks (p, q = k - p) with p descending;
    within a block, (i, j) lexicographic with the C_p index i major.
    Scalars cross the tensor sign conjugated: (a x) (x) y = x (x) conj(a) y.
    """
    if C.ring != D.ring:
        raise RingMismatch(f"{C.ring} vs {D.ring}")
    ring = C.ring
    bot = C.bottom + D.bottom
    top = C.top + D.top

    def blocks(k):
        out = []
        for p in range(min(C.top, k - D.bottom),
                       max(C.bottom, k - D.top) - 1, -1):
            if C.rank(p) and C.rank(p) * D.rank(k - p):
                out.append((p, k - p))
        return out

    def offset(k, p):
        off = 0
        for (pp, qq) in blocks(k):
            if pp == p:
                return off
            off += C.rank(pp) * D.rank(qq)
        raise KeyError(p)

    ranks = []
    for k in range(bot, top + 1):
        ranks.append(sum(C.rank(p) * D.rank(q) for (p, q) in blocks(k)))
    diffs = {}
    for k in range(bot + 1, top + 1):
        m = Matrix.zero(ring, ranks[k - 1 - bot], ranks[k - bot])
        for (p, q) in blocks(k):
            src = offset(k, p)
            # x (x) dy: block (p, q-1)
            dD = D.diff(q)
            if dD.rows and dD.cols and C.rank(p) and D.rank(q - 1):
                dst = offset(k - 1, p)
                for i in range(C.rank(p)):
                    for j in range(D.rank(q)):
                        for j2 in range(D.rank(q - 1)):
                            v = dD.data[j2][j]
                            if v != ring.zero():
                                m.data[dst + i * D.rank(q - 1) + j2][
                                    src + i * D.rank(q) + j] = v
            # (-1)^q dx (x) y: block (p-1, q); coefficient conj(dC) by the
            # twisted tensor relation.
            dC = C.diff(p)
            if dC.rows and dC.cols and C.rank(p - 1) and D.rank(q):
                dst = offset(k - 1, p - 1)
                sgn = -1 if q % 2 else 1
                for i in range(C.rank(p)):
                    for i2 in range(C.rank(p - 1)):
                        v = ring.conj(dC.data[i2][i])
                        if sgn < 0:
                            v = ring.neg(v)
                        if v != ring.zero():
                            for j in range(D.rank(q)):
                                m.data[dst + i2 * D.rank(q) + j][
                                    src + i * D.rank(q) + j] = v
        diffs[k] = m
    cx = ChainComplex(ring, bot, ranks, diffs, check=False)
    return TensorComplex(cx, C, D, blocks, offset)


class TensorComplex:
    """The tensor complex plus its block layout and, for C = D, the
    transposition involution T(x (x) y) = (-1)^{pq} y (x) x."""

    def __init__(self, cx, C, D, blocks, offset):
        self.complex = cx
        self.C, self.D = C, D
        self.blocks = blocks
        self.offset = offset

    def transposition(self, k):
        """Matrix of T on total degree k (requires C = D)."""
        C, D = self.C, self.D
        ring = C.ring
        n = self.complex.rank(k)
        m = Matrix.zero(ring, n, n)
        for (p, q) in self.blocks(k):
            src = self.offset(k, p)
            dst = self.offset(k, q)
            sgn = -1 if (p * q) % 2 else 1
            for i in range(C.rank(p)):
                for j in range(D.rank(q)):
                    v = ring.of_int(sgn)
                    # y (x) x lands in block (q, p) at index (j, i)
                    m.data[dst + j * C.rank(p) + i][src + i * D.rank(q) + j] \
                        = v
        return m

    def slant_to_map(self, k, vec):
        """Identify a degree-k tensor vector with a collection of matrices
        {C^i -> D_{k-i}} (the slant identification)."""
        from .slant import SlantChain
        C, D = self.C, self.D
        ring = C.ring
        comps = {}
        for (p, q) in self.blocks(k):
            off = self.offset(k, p)
            mat = Matrix.zero(ring, D.rank(q), C.rank(p))
            for i in range(C.rank(p)):
                for j in range(D.rank(q)):
                    # slant(x (x) y): h -> conj(h(x)) y, matrix y conj(x)^T
                    mat.data[j][i] = vec[off + i * D.rank(q) + j]
            if not mat.is_zero():
                comps[p] = mat
        return SlantChain(C, D, k, comps)

    def map_to_tensor(self, sl):
        """Inverse of slant_to_map."""
        vec = [self.C.ring.zero()] * self.complex.rank(sl.deg)
        for (p, q) in self.blocks(sl.deg):
            mat = sl.component(p)
            off = self.offset(sl.deg, p)
            for i in range(self.C.rank(p)):
                for j in range(self.D.rank(q)):
                    vec[off + i * self.D.rank(q) + j] = mat.data[j][i]
        return vec


def hom_complex(C, D):
    """Hom_A(C, D) with Hom_n = sum over q - p = n of Hom(C_p, D_q).

    Returned as a plain ChainComplex; basis within degree n is ordered by
    p ascending then (row-major) matrix entries.  The differential is
    d(f) = d_D f + (-1)^{q} f d_C on the component landing in D_q.
    """
    ring = C.ring
    bot = D.bottom - C.top
    top = D.top - C.bottom

    def blocks(n):
        return [(p, p + n) for p in range(C.bottom, C.top + 1)
                if C.rank(p) and D.rank(p + n)]

    def size(n):
        return sum(C.rank(p) * D.rank(q) for p, q in blocks(n))

    def offset(n, p0):
        off = 0
        for p, q in blocks(n):
            if p == p0:
                return off
            off += C.rank(p) * D.rank(q)
        raise KeyError(p0)

    ranks = [size(n) for n in range(bot, top + 1)]
    diffs = {}
    for n in range(bot + 1, top + 1):
        m = Matrix.zero(ring, size(n - 1), size(n))
        for p, q in blocks(n):
            src = offset(n, p)
            # d_D f : component (p, q-1)
            if D.rank(q - 1) and C.rank(p):
                dst = offset(n - 1, p)
                dD = D.diff(q)
                for i in range(C.rank(p)):
                    for j2 in range(D.rank(q - 1)):
                        for j in range(D.rank(q)):
                            v = dD.data[j2][j]
                            if v != ring.zero():
                                m.data[dst + j2 * C.rank(p) + i][
                                    src + j * C.rank(p) + i] = v
            # (-1)^q f d_C : component (p+1, q)
            if C.rank(p + 1) and D.rank(q):
                dst = offset(n - 1, p + 1)
                dC = C.diff(p + 1)
                sgn = -1 if q % 2 else 1
                for j in range(D.rank(q)):
                    for i in range(C.rank(p)):
                        for i2 in range(C.rank(p + 1)):
                            v = dC.data[i][i2]
                            if sgn < 0:
                                v = ring.neg(v)
                            if v != ring.zero():
                                m.data[dst + j * C.rank(p + 1) + i2][
                                    src + j * C.rank(p) + i] = v
        diffs[n] = m
    return ChainComplex(ring, bot, ranks, diffs, check=False)
