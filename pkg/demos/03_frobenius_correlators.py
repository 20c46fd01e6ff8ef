"""Symmetric Frobenius algebras and their correlators on open surfaces.

Run with ``python demos/03_frobenius_correlators.py``.
"""

from __future__ import annotations

from openmf.blocks import block_basis, rotate_disk
from openmf.category import builtin
from openmf.frobenius import (
    check_frobenius,
    contract_slots,
    correlator,
    correlator_disk,
    correlator_disk_dual,
    make_pair_algebra,
    mcg_invariance_suite,
    quantum_exterior_algebra,
)
from openmf.surface import disk, glue, make_surface

tl = builtin("TL", 2)
A = make_pair_algebra(tl, 1)  # V1^v ⊗ V1 = V0 + V2
print(A.name, "on", A.carrier, "passes:", check_frobenius(tl, A).passed)

# ξ_3 from the comultiplication and from raising the inputs of β(μ(...), η).
x = correlator_disk(tl, A, 3)
print("ξ_3 routes agree:", x == correlator_disk_dual(tl, A, 3))
for tree, c in sorted(x.items()):
    print("  ", [tl.label_name(l) for l in tree.leaves], c)

# Gluing two intervals of the disk correlator gives the annulus correlator.
xi = correlator(tl, A, disk(3))
print("contract(1, 2) == correlator(glue):", contract_slots(tl, A, xi, 1, 2) == correlator(tl, A, glue(disk(3), 1, 2)))

print("torus invariance:", mcg_invariance_suite(tl, A, make_surface(1, 1)))

# A Frobenius algebra that is not symmetric: its disk correlator is not rotation-fixed.
Q = quantum_exterior_algebra(tl, 2)
rep = check_frobenius(tl, Q)
x = correlator_disk(tl, Q, 2, check=False)
B = block_basis(tl, disk(2, labels={1: Q.carrier, 2: Q.carrier}))
v = B.coordinates({(): x})
print(Q.name, "frobenius:", rep.frobenius, "symmetric:", rep.symmetric,
      "rotation-fixed:", rotate_disk(tl, B).apply(v) == v)
