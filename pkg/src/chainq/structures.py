"""Symmetric, quadratic, and hyperquadratic structures and their groups.

An n-dimensional structure on a complex C is a finitely supported family
of slant chains indexed by s:

* symmetric:       phi_s of tensor degree n + s, s >= 0,
* quadratic:       psi_s of tensor degree n - s, s >= 0,
* hyperquadratic:  theta_s of tensor degree n + s, s in Z,

subject to the cycle equations (phi_{-1} = 0):

  sym/hyper:  d(phi_s)   + (-1)^(n+s-1) (phi_{s-1} + (-1)^s T phi_{s-1}) = 0
  quadratic:  d(psi_s)   + (-1)^(n-s-1) (psi_{s+1} + (-1)^(s+1) T psi_{s+1}) = 0

where d is the slant differential and T the transposition involution.
The structure groups are the homology of the corresponding total
complexes, which are finite in each degree for bounded C; they are
computed exactly via the additive homology engine, with generator
witnesses, classification of arbitrary cycles, and boundary solving.
"""

from __future__ import annotations

from .groups import homology_data
from .linalg import vector_to_add, vector_from_add
from .matrix import Matrix
from .slant import SlantChain

SYM, QUAD, HYPER = "sym", "quad", "hyper"


class Structure:
    """A chain of the W-total complex of the given kind and degree n.

    Cycles of degree n are exactly the n-dimensional structures.
    """

    __slots__ = ("kind", "C", "n", "comps")

    def __init__(self, kind, C, n, comps=None):
        assert kind in (SYM, QUAD, HYPER)
        self.kind = kind
        self.C = C
        self.n = n
        self.comps = {}
        if comps:
            for s, ch in comps.items():
                self.set_component(s, ch)

    def tensor_degree(self, s):
        return self.n - s if self.kind == QUAD else self.n + s

    def s_range(self):
        """Indices s where a nonzero component may live."""
        lo2, hi2 = 2 * self.C.bottom, 2 * self.C.top
        if self.kind == QUAD:
            lo, hi = self.n - hi2, self.n - lo2
            lo = max(lo, 0)
        elif self.kind == SYM:
            lo, hi = max(0, lo2 - self.n), hi2 - self.n
        else:
            lo, hi = lo2 - self.n, hi2 - self.n
        return range(lo, hi + 1)

    def set_component(self, s, ch):
        if self.kind in (SYM, QUAD) and s < 0:
            if ch.is_zero():
                return
            raise ValueError(f"component s={s} must vanish for {self.kind}")
        assert ch.deg == self.tensor_degree(s)
        if ch.is_zero():
            self.comps.pop(s, None)
        else:
            self.comps[s] = ch

    def component(self, s):
        ch = self.comps.get(s)
        if ch is None:
            return SlantChain(self.C, self.C, self.tensor_degree(s))
        return ch

    def is_zero(self):
        return not self.comps

    def __add__(self, other):
        assert (self.kind, self.n) == (other.kind, other.n)
        out = Structure(self.kind, self.C, self.n)
        for s in set(self.comps) | set(other.comps):
            out.set_component(s, self.component(s) + other.component(s))
        return out

    def __sub__(self, other):
        assert (self.kind, self.n) == (other.kind, other.n)
        out = Structure(self.kind, self.C, self.n)
        for s in set(self.comps) | set(other.comps):
            out.set_component(s, self.component(s) - other.component(s))
        return out

    def __neg__(self):
        return Structure(self.kind, self.C, self.n,
                         {s: -ch for s, ch in self.comps.items()})

    def scale_int(self, k):
        return Structure(self.kind, self.C, self.n,
                         {s: ch.scale_int(k) for s, ch in self.comps.items()})

    def __eq__(self, other):
        return (self.kind, self.n) == (other.kind, other.n) and \
            (self - other).is_zero()

    def d(self):
        """Differential of the total complex; zero iff cycle equations hold."""
        out = Structure(self.kind, self.C, self.n - 1)
        n = self.n
        if self.kind == QUAD:
            s_hi = max(self.comps) if self.comps else -1
            for s in range(0, s_hi + 2):
                if out.tensor_degree(s) < 2 * self.C.bottom - 1:
                    break
                acc = self.component(s).d()
                nxt = self.component(s + 1)
                tw = nxt + nxt.T().scale_int(-1 if (s + 1) % 2 else 1)
                acc = acc + tw.scale_int(-1 if (n - s - 1) % 2 else 1)
                if not acc.is_zero():
                    out.set_component(s, acc)
        else:
            srange = set()
            for s in self.comps:
                srange.add(s)
                srange.add(s + 1)
            for s in sorted(srange):
                if self.kind == SYM and s < 0:
                    continue
                acc = self.component(s).d()
                prv = self.component(s - 1)
                tw = prv + prv.T().scale_int(-1 if s % 2 else 1)
                acc = acc + tw.scale_int(-1 if (n + s - 1) % 2 else 1)
                if not acc.is_zero():
                    out.set_component(s, acc)
        return out

    def is_cycle(self):
        return self.d().is_zero()

    def copy(self):
        return Structure(self.kind, self.C, self.n,
                         {s: ch.copy() for s, ch in self.comps.items()})

    def __repr__(self):
        ss = sorted(self.comps)
        return f"Structure({self.kind}, n={self.n}, s={ss})"


def check_structure(kind, C, struct):
    """True iff the cycle equations hold exactly."""
    if struct.kind != kind or struct.C is not C and struct.C != C:
        return False
    return struct.is_cycle()


def structure_defect(struct):
    """The left-hand sides of the cycle equations, per (s, target degree)."""
    bad = {}
    dd = struct.d()
    for s, ch in dd.comps.items():
        for i in ch.support():
            m = ch.component(i)
            if not m.is_zero():
                bad[(s, dd.tensor_degree(s) - i)] = m
    return bad


# ---------------------------------------------------------------------------
# The total W-complexes as explicit additive complexes


class WSpace:
    """Flattening of the degree-m chain group of the total complex."""

    def __init__(self, kind, C, m):
        self.kind = kind
        self.C = C
        self.m = m
        probe = Structure(kind, C, m)
        self.blocks = []       # (s, i, rows, cols)
        off = 0
        ad = C.ring.add_dim
        for s in probe.s_range():
            deg = probe.tensor_degree(s)
            for i in range(max(C.bottom, deg - C.top),
                           min(C.top, deg - C.bottom) + 1):
                rows, cols = C.rank(deg - i), C.rank(i)
                if rows and cols:
                    self.blocks.append((s, i, rows, cols, off))
                    off += rows * cols * ad
        self.dim = off

    def flatten(self, struct):
        ring = self.C.ring
        out = [0] * self.dim
        ad = ring.add_dim
        for (s, i, rows, cols, off) in self.blocks:
            ch = struct.comps.get(s)
            if ch is None:
                continue
            mat = ch.comps.get(i)
            if mat is None:
                continue
            pos = off
            for r in range(rows):
                for c in range(cols):
                    for t, v in enumerate(ring.to_add(mat.data[r][c])):
                        out[pos + t] = v
                    pos += ad
        return out

    def unflatten(self, vec):
        ring = self.C.ring
        ad = ring.add_dim
        out = Structure(self.kind, self.C, self.m)
        for (s, i, rows, cols, off) in self.blocks:
            mat = Matrix.zero(ring, rows, cols)
            pos = off
            nz = False
            for r in range(rows):
                for c in range(cols):
                    a = ring.from_add(tuple(vec[pos:pos + ad]))
                    mat.data[r][c] = a
                    nz = nz or a != ring.zero()
                    pos += ad
            if nz:
                ch = out.component(s).copy()
                ch._set(i, ch.component(i) + mat)
                out.set_component(s, ch)
        return out

    def basis_structures(self):
        ring = self.C.ring
        ad = ring.add_dim
        for (s, i, rows, cols, off) in self.blocks:
            deg = Structure(self.kind, self.C, self.m).tensor_degree(s)
            for r in range(rows):
                for c in range(cols):
                    for t in range(ad):
                        mat = Matrix.zero(ring, rows, cols)
                        mat.data[r][c] = ring.from_add(
                            tuple(1 if u == t else 0 for u in range(ad)))
                        yield off + (r * cols + c) * ad + t, Structure(
                            self.kind, self.C, self.m,
                            {s: SlantChain(self.C, self.C, deg, {i: mat})})


def w_differential(kind, C, m):
    """Additive matrix of d: (W-total)_m -> (W-total)_{m-1}."""
    src = WSpace(kind, C, m)
    dst = WSpace(kind, C, m - 1)
    cols = [[0] * dst.dim for _ in range(src.dim)]
    for idx, basis in src.basis_structures():
        cols[idx] = dst.flatten(basis.d())
    return [[cols[j][i] for j in range(src.dim)] for i in range(dst.dim)], \
        src, dst


class QGroupData:
    """A structure group Q (of one kind) at dimension n, with witnesses."""

    def __init__(self, kind, C, n):
        self.kind = kind
        self.C = C
        self.n = n
        d_out, self.space, _ = w_differential(kind, C, n)
        d_in, self.space_above, _ = w_differential(kind, C, n + 1)
        self.hom = homology_data(
            d_out, d_in, self.space.dim, len(d_out), self.space_above.dim,
            exponent=C.ring.exponent)
        self.pres = self.hom.pres

    def classify(self, struct):
        return self.hom.classify(self.space.flatten(struct))

    def is_cycle(self, struct):
        return self.hom.is_cycle(self.space.flatten(struct))

    def lift(self, coords):
        return self.space.unflatten(self.hom.lift(coords))

    def generators(self):
        return [self.space.unflatten(g) for g in self.hom.generators]

    def solve_boundary(self, struct):
        """Xi of degree n+1 with d(Xi) = struct, or None."""
        sol = self.hom.solve_boundary(self.space.flatten(struct))
        if sol is None:
            return None
        return self.space_above.unflatten(sol)

    def __repr__(self):
        return f"Q({self.kind}, n={self.n}) = {self.pres}"


def q_group(kind, C, n):
    return QGroupData(kind, C, n)


# ---------------------------------------------------------------------------
# The maps 1+T, J, H of total complexes


def one_plus_T(psi: Structure) -> Structure:
    """W_total(quad) -> W_total(sym): s = 0 component symmetrized."""
    assert psi.kind == QUAD
    ch = psi.component(0)
    return Structure(SYM, psi.C, psi.n, {0: ch + ch.T()})


def J_map(phi: Structure) -> Structure:
    """Inclusion of symmetric chains into hyperquadratic chains."""
    assert phi.kind == SYM
    return Structure(HYPER, phi.C, phi.n, dict(phi.comps))


def H_map(theta: Structure) -> Structure:
    """(H theta)_s = theta_{-s-1}, a quadratic chain of degree n-1."""
    assert theta.kind == HYPER
    out = Structure(QUAD, theta.C, theta.n - 1)
    for s, ch in theta.comps.items():
        if s <= -1:
            out.set_component(-s - 1, ch)
    return out


def induced_matrix(src: QGroupData, dst: QGroupData, fun):
    """Matrix (columns = images of src generators) in dst coordinates."""
    cols = [dst.classify(fun(g)) for g in src.generators()]
    return [[col[i] for col in cols] for i in range(dst.pres.ngens)]


def exactness_at(src, mid, dst, fun_in, fun_out):
    """Check im(fun_in) = ker(fun_out) at `mid` (presentation level).

    All three are QGroupData-like objects with .pres, .generators(),
    .classify(); fun_* act on structures.
    """
    from .linalg import IntSolver, lattice_equal
    g = mid.pres.ngens
    rel = _relation_columns(mid.pres)
    img = [list(mid.classify(fun_in(x))) for x in src.generators()]
    # kernel of fun_out as a sublattice of Z^g
    out_cols = [list(dst.classify(fun_out(x))) for x in mid.generators()]
    gd = dst.pres.ngens
    rel_dst = _relation_columns(dst.pres)
    mat = [[out_cols[j][i] for j in range(g)] +
           [rel_dst[j][i] for j in range(len(rel_dst))] for i in range(gd)]
    ker = []
    solver = IntSolver(mat, gd, g + len(rel_dst))
    for v in solver.kernel():
        ker.append(v[:g])
    return lattice_equal([list(x) + [0] * 0 for x in img] + rel,
                         ker + rel, g)


def _relation_columns(pres):
    cols = []
    for j, t in enumerate(pres.torsion):
        col = [0] * pres.ngens
        col[pres.free_rank + j] = t
        cols.append(col)
    return cols


# ---------------------------------------------------------------------------
# Functoriality: pushforwards and homotopy pushforwards


def pushforward(f, struct: Structure) -> Structure:
    """f^%(struct): component-wise f . phi_s . f^* along a chain map f."""
    out = Structure(struct.kind, f.target, struct.n)
    for s, ch in struct.comps.items():
        out.set_component(s, ch.push(f))
    return out


def q_group_cached(kind, C, n):
    key = ("qgroup", kind, n)
    if key not in C._hom_cache:
        C._hom_cache[key] = QGroupData(kind, C, n)
    return C._hom_cache[key]


def homotopy_pushforward(g, f, fprime, struct: Structure) -> Structure:
    """A chain witnessing f^%(struct) ~ f'^%(struct): the output K has

        d(K) = f'^%(struct) - f^%(struct)

    exactly, for any structure cycle.  g is a chain homotopy f ~ f'
    (components g_r: C_r -> D_{r+1}, with dg + gd = f' - f); it
    guarantees the difference is a boundary.

    The witness is produced by a deterministic linear solve in the total
    complex of the target (no closed formula of the sandwich shape
    passes the exactness checker over Z in the symmetric and
    hyperquadratic cases; see SIGNS.md).  Solutions are linear in the
    input, so the witness is additive in `struct`.
    """
    D = f.target
    n = struct.n
    rhs = pushforward(fprime, struct) - pushforward(f, struct)
    if rhs.is_zero():
        return Structure(struct.kind, D, n + 1)
    qd = q_group_cached(struct.kind, D, n)
    out = qd.solve_boundary(rhs)
    if out is None:
        raise ValueError("input is not a structure cycle")
    return out


# ---------------------------------------------------------------------------
# Suspension


def suspend_hyper(theta: Structure, n: int) -> Structure:
    """S^n: (W-hat total C)_m -> (W-hat total S^nC)_{m+n}.

    (S^n theta)_s^(i) = (-1)^(n*i) theta_{s-n}^(i-n); a chain iso (the
    sign is forced by the transposition involution for odd n).
    """
    assert theta.kind == HYPER
    SC = theta.C.suspend(n)
    out = Structure(HYPER, SC, theta.n + n)
    for s, ch in theta.comps.items():
        deg = ch.deg + 2 * n
        comps = {}
        for i, m in ch.comps.items():
            sg = -1 if (n * (i + n)) % 2 else 1
            comps[i + n] = m.scale_int(sg)
        out.set_component(s + n, SlantChain(SC, SC, deg, comps))
    return out


def desuspend_hyper(theta: Structure, n: int) -> Structure:
    """Inverse of suspend_hyper."""
    assert theta.kind == HYPER
    SC = theta.C.suspend(-n)
    out = Structure(HYPER, SC, theta.n - n)
    for s, ch in theta.comps.items():
        comps = {}
        for i, m in ch.comps.items():
            sg = -1 if (n * i) % 2 else 1
            comps[i - n] = m.scale_int(sg)
        out.set_component(s - n, SlantChain(SC, SC, ch.deg - 2 * n, comps))
    return out


# ---------------------------------------------------------------------------
# The nonadditivity bracket


def bracket(f, fprime, theta: Structure, n: int) -> Structure:
    """The additivity-defect chain [f, f'] of suspension pushforwards.

    For chain maps f, f': S^nC -> D (as SuspendedMap, components on the
    unsuspended C) and an m-dimensional hyperquadratic cycle theta on C,
    returns a chain with

        d([f,f'] theta) = ((f+f')^% - f^% - f'^%)(S^n theta),

    the defining homotopy identity (machine-checked by construction).
    The witness is the canonical linear solve in the total complex of D;
    linearity in the right-hand side makes the twisted addition built on
    it strictly commutative and associative (see SIGNS.md).
    """
    assert theta.kind == HYPER
    D = f.target
    m = theta.n
    s_th = suspend_hyper(theta, n)
    SC = s_th.C
    fmap = _suspended_to_chain_map(f, SC)
    fpmap = _suspended_to_chain_map(fprime, SC)
    fsum = ChainMapPair(fmap, fpmap)
    rhs = pushforward(fsum, s_th) - pushforward(fmap, s_th) - \
        pushforward(fpmap, s_th)
    out_zero = Structure(HYPER, D, m + n + 1)
    if rhs.is_zero():
        return out_zero
    qd = q_group_cached(HYPER, D, m + n)
    sol = qd.solve_boundary(rhs)
    if sol is None:
        raise ValueError("input is not a hyperquadratic cycle")
    return sol


def _suspended_to_chain_map(f, SC):
    from .complexes import ChainMap
    comps = {}
    for r0, mat in f.comps.items():
        comps[r0 + f.n] = mat
    return ChainMap(SC, f.target, comps, check=False)


class ChainMapPair:
    """Componentwise sum of two chain maps (lazy)."""

    def __init__(self, a, b):
        self.source, self.target = a.source, a.target
        self.a, self.b = a, b

    def component(self, r):
        return self.a.component(r) + self.b.component(r)


class SuspendedMap:
    """A chain map S^nC -> D presented by components f_r: C_r -> D_{r+n}."""

    __slots__ = ("source", "target", "n", "comps")

    def __init__(self, source, target, n, comps):
        self.source = source
        self.target = target
        self.n = n
        self.comps = comps

    def component(self, r):
        """Component D_r <- C_{r-n} (indexed by the target degree)."""
        m = self.comps.get(r - self.n)
        if m is None:
            return Matrix.zero(self.source.ring, self.target.rank(r),
                               self.source.rank(r - self.n))
        return m


# ---------------------------------------------------------------------------
# Wu classes and the structure groups of spheres


def sphere_q_pres(ring, kind, n, r):
    """The structure group of S^r A by the closed formulas.

    Q^n  = H^(2r-n)(Z_2; A, (-1)^r)
    Q_n  = H_(n-2r)(Z_2; A, (-1)^r)
    Q-hat^n = H-hat^(2r-n)(Z_2; A, (-1)^r)

    (For the hyperquadratic case the evaluation exponent and the group
    exponent agree at 2r-n; see SIGNS.md.)
    """
    from .groups import (ring_cohomology, ring_homology,
                         tate_cohomology_of_ring)
    eps = -1 if r % 2 else 1
    if kind == SYM:
        return ring_cohomology(ring, eps, 2 * r - n)
    if kind == QUAD:
        return ring_homology(ring, eps, n - 2 * r)
    return tate_cohomology_of_ring(ring, eps, 2 * r - n)


def sphere_evaluation(struct: Structure, r):
    """The scalar phi_{2r-n}(1)(1) identifying Q(S^r A) with a subquotient
    of A (rank-1 sphere complexes only)."""
    n = struct.n
    s = n - 2 * r if struct.kind == QUAD else 2 * r - n
    ch = struct.comps.get(s)
    if ch is None:
        return struct.C.ring.zero()
    m = ch.comps.get(r)
    if m is None:
        return struct.C.ring.zero()
    return m.data[0][0]


def wu_class_value(struct: Structure, r, cocycle):
    """Evaluate the r-th Wu class on a cocycle z in C^(n-r).

    cocycle: list of ring elements (coordinates in C^(n-r), i.e. a map
    C_{n-r} -> A).  Returns the scalar (z (x) z)(component) in A; its
    class lives in sphere_q_pres(ring, kind, n, r-index) with the
    convention below:

      symmetric v_r:      component phi_{n-2r},  target Q^n(S^(n-r)A)
      quadratic v^r:      component psi_{2r-n},  target Q_n(S^(n-r)A)
      hyperquadratic v-hat_r: component theta_{n-2r}, target Q-hat^n.
    """
    n = struct.n
    C = struct.C
    ring = C.ring
    s = 2 * r - n if struct.kind == QUAD else n - 2 * r
    ch = struct.comps.get(s)
    if ch is None:
        return ring.zero()
    m = ch.comps.get(n - r)
    if m is None:
        return ring.zero()
    z = Matrix(ring, [list(cocycle)], 1, len(cocycle))
    val = z * m * z.star()
    return val.data[0][0]


def wu_class_map(struct: Structure, r):
    """The Wu class as a map on cohomology generators.

    Returns (target_group, values) where values[j] is the coordinate
    tuple of the Wu class on the j-th generator of H^(n-r)(C).
    """
    n = struct.n
    C = struct.C
    hom = C.cohomology_full(n - r)
    kind_index = r
    target = sphere_q_pres(C.ring, struct.kind, n, n - r)
    vals = []
    for gen in hom.generators:
        z = vector_from_add(C.ring, gen)
        vals.append(target.to_coords(wu_class_value(struct, kind_index, z)))
    return target, vals
