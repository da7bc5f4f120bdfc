"""Finitely generated abelian groups: presentations, homology, Tate groups.

`Presentation` is the universal output type: a free rank plus invariant
factors d_1 | d_2 | ... (each >= 2), compared only in this canonical
form.  `HomologyData` computes H = ker(d_out)/im(d_in) for a pair of
integer matrices acting on (Z/e)^k, and supports classifying arbitrary
cycles in generator coordinates and lifting coordinates to witness
cycles; this single routine underlies every group the library computes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import F2Solver, IntSolver, SmithData, _matvec, _K


@dataclass(frozen=True)
class Presentation:
    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        tor = tuple(int(t) for t in self.torsion)
        object.__setattr__(self, "torsion", tor)
        for a, b in zip(tor, tor[1:]):
            if b % a:
                raise ValueError(f"invariant factors {tor} not a chain")
        if any(t < 2 for t in tor):
            raise ValueError(f"invariant factors {tor} must be >= 2")

    @property
    def ngens(self):
        return self.free_rank + len(self.torsion)

    def order(self):
        """Number of elements, or None if infinite."""
        if self.free_rank:
            return None
        n = 1
        for t in self.torsion:
            n *= t
        return n

    def is_trivial(self):
        return self.ngens == 0

    def reduce_coords(self, coords):
        out = list(coords[:self.free_rank])
        for t, c in zip(self.torsion, coords[self.free_rank:]):
            out.append(c % t)
        return tuple(out)

    def all_coords(self):
        """Enumerate all elements (finite groups only)."""
        if self.free_rank:
            raise ValueError("infinite group")
        import itertools
        return (tuple(c) for c in
                itertools.product(*[range(t) for t in self.torsion]))

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def presentation_from_relations(ngens, relations, exponent=0):
    """Present Z^ngens (or (Z/e)^ngens) modulo the given relation rows.

    Returns (Presentation, gen_matrix, classify) where gen_matrix columns
    express the canonical generators in the original ones and classify
    maps an original-coordinate vector to canonical coordinates.
    """
    rel_cols = [list(r) for r in relations]
    if exponent:
        rel_cols += [[exponent if i == j else 0 for i in range(ngens)]
                     for j in range(ngens)]
    mat = [[rel[i] for rel in rel_cols] for i in range(ngens)]
    sd = SmithData(mat, ngens, len(rel_cols))
    free_idx, tors_idx, tors = [], [], []
    for i in range(ngens):
        d = sd.diag[i] if i < min(ngens, len(rel_cols)) else 0
        d = abs(d)
        if d == 0:
            free_idx.append(i)
        elif d >= 2:
            tors_idx.append(i)
            tors.append(d)
    order = sorted(range(len(tors)), key=lambda k: tors[k])
    tors_idx = [tors_idx[k] for k in order]
    tors = [tors[k] for k in order]
    pres = Presentation(len(free_idx), tuple(tors))
    sel = free_idx + tors_idx
    gens = [[sd.Uinv[i][j] for j in sel] for i in range(ngens)]

    def classify(vec):
        y = _matvec(sd.U, list(vec))
        return pres.reduce_coords([y[i] for i in sel])

    return pres, gens, classify


class HomologyData:
    """H = ker(d_out)/im(d_in) on (Z/e)^k, with witnesses.

    d_out: k' x k, d_in: k x k'' integer matrices; e the additive
    exponent (0 for Z).  Generators are ambient integer vectors; the
    canonical coordinates list free coordinates first, then torsion.
    """

    def __init__(self, d_out, d_in, k, k_out, k_in, exponent=0):
        self.k = k
        self.e = exponent
        self._solver_out = IntSolver(d_out, k_out, k, exponent)
        self._din = d_in
        self._kin = k_in
        self._solver_in = None
        kb = self._solver_out.kernel()
        self._kernel_basis = kb
        c = len(kb)
        kmat = [[kb[j][i] for j in range(c)] for i in range(k)]
        # kb is a Z-basis of the full cycle lattice (which contains e*Z^k),
        # so membership and coordinates are exact integer solves.
        self._ksolver = IntSolver(kmat, k, c, 0)
        bnd = [[d_in[i][j] for i in range(k)] for j in range(k_in)]
        if exponent:
            bnd += [[exponent if i == j else 0 for i in range(k)]
                    for j in range(k)]
        rel = []
        for b in bnd:
            w = self._ksolver.solve(b)
            if w is None:
                raise AssertionError("boundary is not a cycle")
            rel.append(w)
        pres, gens, classify = presentation_from_relations(c, rel)
        self.pres = pres
        self._coord_classify = classify
        self.generators = [_matvec(kmat, [gens[i][j] for i in range(c)])
                           for j in range(pres.ngens)]
        self._kmat = kmat

    def classify(self, vec):
        """Canonical coordinates of the class of an ambient cycle."""
        w = self._ksolver.solve(list(vec))
        if w is None:
            raise ValueError("vector is not a cycle")
        return self._coord_classify(w)

    def is_cycle(self, vec):
        return self._ksolver.solve(list(vec)) is not None

    def is_zero_class(self, vec):
        return all(c == 0 for c in self.classify(vec))

    def lift(self, coords):
        """An ambient cycle representing the given coordinates."""
        out = [0] * self.k
        for c, g in zip(coords, self.generators):
            if c:
                for i in range(self.k):
                    out[i] += c * g[i]
        if self.e:
            out = [x % self.e for x in out]
        return out

    def solve_boundary(self, vec):
        """x with d_in x = vec (mod e), or None."""
        if self._solver_in is None:
            self._solver_in = IntSolver(self._din, self.k, self._kin, self.e)
        return self._solver_in.solve(list(vec))


class F2HomologyData:
    """Fast path for exponent 2: same interface as HomologyData.

    Ambient vectors are lists of ints taken mod 2; internally bitmasks.
    """

    def __init__(self, d_out, d_in, k, k_out, k_in):
        self.k = k
        self.e = 2

        def colmask(mat, rows, j):
            m = 0
            for i in range(rows):
                if mat[i][j] & 1:
                    m |= 1 << i
            return m

        out_cols = [colmask(d_out, k_out, j) for j in range(k)]
        self._out_solver = F2Solver(out_cols, k_out)
        in_cols = [colmask(d_in, k, j) for j in range(k_in)]
        self._in_solver = F2Solver(in_cols, k)
        self._kin = k_in
        # Kernel vectors of d_out as ambient bitmasks.
        kmasks = self._out_solver.kernel()
        # Echelonize boundaries, then extend by kernel vectors.
        piv, bas, _ = _K.f2_echelon([c for c in in_cols if c])
        gens = []
        gpiv, gbas, gtags = list(piv), list(bas), [None] * len(piv)
        for km in kmasks:
            v, _tag = self._reduce_tagged(km, gpiv, gbas, gtags)
            if v:
                p = v.bit_length() - 1
                j = 0
                while j < len(gpiv) and gpiv[j] > p:
                    j += 1
                gpiv.insert(j, p)
                gbas.insert(j, v)
                gtags.insert(j, len(gens))
                gens.append(v)
        self._gpiv, self._gbas, self._gtags = gpiv, gbas, gtags
        self.pres = Presentation(0, tuple([2] * len(gens)))
        self.generators = [self._mask_to_vec(g) for g in gens]

    def _reduce_tagged(self, v, piv, bas, tags):
        picked = 0
        for p, b, t in zip(piv, bas, tags):
            if (v >> p) & 1:
                v ^= b
                if t is not None:
                    picked ^= 1 << t
        return v, picked

    def _mask_to_vec(self, mask):
        return [(mask >> i) & 1 for i in range(self.k)]

    def _vec_to_mask(self, vec):
        m = 0
        for i, x in enumerate(vec):
            if x & 1:
                m |= 1 << i
        return m

    def classify(self, vec):
        v = self._vec_to_mask(vec)
        rem, picked = self._reduce_tagged(v, self._gpiv, self._gbas,
                                          self._gtags)
        if rem:
            raise ValueError("vector is not a cycle")
        n = len(self.pres.torsion)
        return tuple((picked >> t) & 1 for t in range(n))

    def is_cycle(self, vec):
        v = self._vec_to_mask(vec)
        rem, _ = self._reduce_tagged(v, self._gpiv, self._gbas, self._gtags)
        return rem == 0

    def is_zero_class(self, vec):
        return not any(self.classify(vec))

    def lift(self, coords):
        out = 0
        for c, g in zip(coords, self.generators):
            if c & 1:
                out ^= self._vec_to_mask(g)
        return self._mask_to_vec(out)

    def solve_boundary(self, vec):
        combo = self._in_solver.solve(self._vec_to_mask(vec))
        if combo is None:
            return None
        return [(combo >> j) & 1 for j in range(self._kin)]


def homology_data(d_out, d_in, k, k_out, k_in, exponent=0):
    if exponent == 2:
        return F2HomologyData(d_out, d_in, k, k_out, k_in)
    return HomologyData(d_out, d_in, k, k_out, k_in, exponent)


# ---------------------------------------------------------------------------
# A-groups and the Tate groups of a ring


class AGroup:
    """An abelian group with an A-action a(x+y) = ax+ay, a(bx) = (ab)x.

    The action need not be additive in the ring variable.  Elements are
    coordinate tuples for `pres`; `action(a, coords)` applies a ring
    element.
    """

    def __init__(self, pres, action, describe=""):
        self.pres = pres
        self.action = action
        self.describe = describe

    def elements(self):
        return self.pres.all_coords()

    def add(self, x, y):
        return self.pres.reduce_coords([a + b for a, b in zip(x, y)])

    def zero(self):
        return (0,) * self.pres.ngens

    def __repr__(self):
        return f"AGroup({self.pres}{', ' + self.describe if self.describe else ''})"


class TateRingGroup(AGroup):
    """ker(op_out)/im(op_in) inside the additive group of A.

    Carries classify/lift between ring elements and coordinates, and
    the A-action (a, x) -> a x conj(a).
    """

    def __init__(self, ring, op_out, op_in, describe=""):
        # op_* are functions A -> A, additive.
        self.ring = ring
        d = ring.add_dim
        e = ring.exponent

        def opmat(op):
            cols = []
            for i in range(d):
                basis_elt = ring.from_add(tuple(1 if t == i else 0
                                                for t in range(d)))
                cols.append(ring.to_add(op(basis_elt)))
            return [[cols[j][i] for j in range(d)] for i in range(d)]

        self.hom = homology_data(opmat(op_out), opmat(op_in), d, d, d,
                                 exponent=e)

        def action(a, coords):
            x = self.from_coords(coords)
            return self.to_coords(ring.mul(ring.mul(a, x), ring.conj(a)))

        super().__init__(self.hom.pres, action, describe)

    def to_coords(self, x):
        return self.hom.classify(list(self.ring.to_add(x)))

    def from_coords(self, coords):
        return self.ring.from_add(tuple(self.hom.lift(coords)))


def tate_cohomology_of_ring(ring, epsilon, r):
    """The Tate group H^r-hat(Z2; A, eps) = ker(1-(-1)^r T)/im(1+(-1)^r T).

    T is the eps-involution a -> eps*conj(a); the A-action is
    (a, x) -> a x conj(a).
    """
    sign = 1 if r % 2 == 0 else -1
    eps_elt = ring.of_int(epsilon)

    def t_eps(a):
        return ring.mul(eps_elt, ring.conj(a))

    def op_out(a):
        return ring.sub(a, ring.mul(ring.of_int(sign), t_eps(a)))

    def op_in(a):
        return ring.add(a, ring.mul(ring.of_int(sign), t_eps(a)))

    return TateRingGroup(ring, op_out, op_in,
                         f"H^{r}-hat(Z2;{ring},{epsilon:+d})")


def h0_of_ring(ring, epsilon):
    """H^0(Z2; A, eps) = ker(1 - T_eps), as a subgroup of A."""
    eps_elt = ring.of_int(epsilon)

    def op_out(a):
        return ring.sub(a, ring.mul(eps_elt, ring.conj(a)))

    return TateRingGroup(ring, op_out, lambda a: ring.zero(),
                         f"H^0(Z2;{ring},{epsilon:+d})")


def h_0_of_ring(ring, epsilon):
    """H_0(Z2; A, eps) = coker(1 - T_eps)."""
    eps_elt = ring.of_int(epsilon)

    def op_in(a):
        return ring.sub(a, ring.mul(eps_elt, ring.conj(a)))

    return TateRingGroup(ring, lambda a: ring.zero(), op_in,
                         f"H_0(Z2;{ring},{epsilon:+d})")


def zero_agroup(ring):
    return TateRingGroup(ring, lambda a: a, lambda a: ring.zero(), "0")


def ring_cohomology(ring, epsilon, r):
    """H^r(Z2; A, eps) with the r = 0 / r >= 1 / r < 0 case split."""
    if r < 0:
        return zero_agroup(ring)
    if r == 0:
        return h0_of_ring(ring, epsilon)
    return tate_cohomology_of_ring(ring, epsilon, r)


def ring_homology(ring, epsilon, r):
    """H_r(Z2; A, eps) with the r = 0 / r >= 1 / r < 0 case split."""
    if r < 0:
        return zero_agroup(ring)
    if r == 0:
        return h_0_of_ring(ring, epsilon)
    return tate_cohomology_of_ring(ring, epsilon, r + 1)
