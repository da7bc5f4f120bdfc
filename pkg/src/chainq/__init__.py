"""chainq: exact chain-complex duality, Q-groups, and Witt invariants.

Chain complexes of finitely generated free modules over rings with
involution (Z, Z/m, GF(2^k)), symmetric / quadratic / hyperquadratic
structures and their groups, chain bundles and twisted quadratic groups,
algebraic boundaries, and the form/Witt layer (Arf invariant, signature,
Z4-valued quadratic forms) -- everything in exact arithmetic.
"""

from .rings import (IntegerRing, ModularRing, GF2k, ZZ, F2,
                    ring_from_descriptor, UnsupportedRing)
from .matrix import Matrix
from .groups import Presentation, tate_cohomology_of_ring

__version__ = "0.1.0"
