"""Rings with involution: Z, Z/m, and GF(2^k).

Every coefficient ring used by the library is commutative, carries an
involution a -> conj(a), and has a finitely generated additive group.
Elements are plain Python ints:

* Integers       -- arbitrary precision ints,
* IntegersMod(m) -- ints in [0, m),
* GaloisField2k  -- bitmasks of polynomials over F2 modulo a fixed
                    irreducible polynomial (see MODULUS_POLY).

The "additive" view (used by all homology computations) encodes each
element as a short vector of ints: length 1 for Z and Z/m, length k for
GF(2^k), together with an additive exponent (0 for Z, m for Z/m, 2 for
GF(2^k)).
"""

from __future__ import annotations

import random


# Irreducible (Conway) polynomials over F2, as bitmasks, degree 1..8.
MODULUS_POLY = {
    1: 0b11,          # x + 1
    2: 0b111,         # x^2 + x + 1
    3: 0b1011,        # x^3 + x + 1
    4: 0b10011,       # x^4 + x + 1
    5: 0b100101,      # x^5 + x^2 + 1
    6: 0b1011011,     # x^6 + x^4 + x^3 + x + 1
    7: 0b10000011,    # x^7 + x + 1
    8: 0b100011011,   # x^8 + x^4 + x^3 + x + 1
}


class UnsupportedRing(Exception):
    pass


class Ring:
    """Base interface; instances are immutable and hashable."""

    kind = None
    # Additive structure of the underlying abelian group A^+ = (Z/e)^dim.
    exponent = 0
    add_dim = 1

    def zero(self):
        return 0

    def one(self):
        return 1

    def is_zero(self, a):
        return a == 0

    def neg(self, a):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def conj(self, a):
        """The involution."""
        raise NotImplementedError

    def of_int(self, n):
        """Image of the integer n under Z -> A."""
        raise NotImplementedError

    def is_unit(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def elements(self):
        """All elements (finite rings only)."""
        raise NotImplementedError

    def rand(self, rng: random.Random, bound=9):
        raise NotImplementedError

    # -- additive encoding ------------------------------------------------

    def to_add(self, a):
        """Element -> tuple of ints of length add_dim."""
        return (a,)

    def from_add(self, coords):
        return coords[0]

    def mul_add_matrix(self, a):
        """Matrix of x -> a*x on the additive coordinates (row-major)."""
        return [[a]]

    def conj_add_matrix(self):
        """Matrix of the involution on the additive coordinates."""
        return [[1]]

    def __eq__(self, other):
        return isinstance(other, Ring) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def key(self):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class IntegerRing(Ring):
    kind = "Integers"
    exponent = 0
    name = "Z"

    def neg(self, a):
        return -a

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def conj(self, a):
        return a

    def of_int(self, n):
        return n

    def is_unit(self, a):
        return a in (1, -1)

    def inv(self, a):
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{a} is not a unit in Z")
        return a

    def rand(self, rng, bound=9):
        return rng.randint(-bound, bound)

    def key(self):
        return ("Z",)


class ModularRing(Ring):
    kind = "IntegersMod"

    def __init__(self, m):
        if m < 2:
            raise UnsupportedRing("modulus must be >= 2")
        self.m = m
        self.exponent = m
        self.name = f"Z/{m}"

    def neg(self, a):
        return (-a) % self.m

    def add(self, a, b):
        return (a + b) % self.m

    def mul(self, a, b):
        return (a * b) % self.m

    def conj(self, a):
        return a % self.m

    def of_int(self, n):
        return n % self.m

    def is_unit(self, a):
        from math import gcd
        return gcd(a, self.m) == 1

    def inv(self, a):
        return pow(a, -1, self.m)

    def elements(self):
        return range(self.m)

    def rand(self, rng, bound=None):
        return rng.randrange(self.m)

    def key(self):
        return ("Zmod", self.m)


class GF2k(Ring):
    """GF(2^k) with a fixed irreducible modulus polynomial.

    The involution is either the identity or the Frobenius power
    a -> a^(2^j); the latter is an involution only when 2j = 0 mod k.
    """

    kind = "GaloisField2k"
    exponent = 2

    def __init__(self, k, frobenius_power=0):
        if k not in MODULUS_POLY:
            raise UnsupportedRing(f"GF(2^{k}) not supported (k <= 8)")
        j = frobenius_power % k if k > 0 else 0
        if (2 * j) % k != 0:
            raise UnsupportedRing(
                f"a -> a^(2^{j}) is not an involution of GF(2^{k})")
        self.k = k
        self.add_dim = k
        self.frobenius_power = j
        self.poly = MODULUS_POLY[k]
        self.q = 1 << k
        self.name = f"GF({self.q})" + (f"^frob{j}" if j else "")

    def neg(self, a):
        return a

    def add(self, a, b):
        return a ^ b

    def mul(self, a, b):
        r = 0
        poly, k = self.poly, self.k
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> k:
                a ^= poly
        return r

    def conj(self, a):
        for _ in range(self.frobenius_power):
            a = self.mul(a, a)
        return a

    def of_int(self, n):
        return n & 1

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 is not a unit")
        return self.power(a, self.q - 2)

    def power(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def elements(self):
        return range(self.q)

    def rand(self, rng, bound=None):
        return rng.randrange(self.q)

    def to_add(self, a):
        return tuple((a >> i) & 1 for i in range(self.k))

    def from_add(self, coords):
        a = 0
        for i, c in enumerate(coords):
            if c % 2:
                a |= 1 << i
        return a

    def mul_add_matrix(self, a):
        cols = [self.to_add(self.mul(a, 1 << i)) for i in range(self.k)]
        return [[cols[j][i] for j in range(self.k)] for i in range(self.k)]

    def conj_add_matrix(self):
        cols = [self.to_add(self.conj(1 << i)) for i in range(self.k)]
        return [[cols[j][i] for j in range(self.k)] for i in range(self.k)]

    def key(self):
        return ("GF2k", self.k, self.frobenius_power)


ZZ = IntegerRing()
F2 = GF2k(1)


def ring_from_descriptor(desc):
    """Build a ring from a JSON-style descriptor.

    Accepted forms: "Z", {"kind": "Integers"}, {"kind": "IntegersMod",
    "m": 4}, {"kind": "GaloisField2k", "k": 2, "frobenius_power": 0}.
    """
    if desc == "Z":
        return ZZ
    if isinstance(desc, str):
        raise UnsupportedRing(f"unknown ring descriptor {desc!r}")
    kind = desc.get("kind")
    if kind == "Integers":
        return ZZ
    if kind == "IntegersMod":
        return ModularRing(int(desc["m"]))
    if kind == "GaloisField2k":
        return GF2k(int(desc["k"]), int(desc.get("frobenius_power", 0)))
    raise UnsupportedRing(f"unknown ring kind {kind!r}")


def ring_descriptor(ring):
    if ring.kind == "Integers":
        return {"kind": "Integers"}
    if ring.kind == "IntegersMod":
        return {"kind": "IntegersMod", "m": ring.m}
    return {"kind": "GaloisField2k", "k": ring.k,
            "frobenius_power": ring.frobenius_power}
