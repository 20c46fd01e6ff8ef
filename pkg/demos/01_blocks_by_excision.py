"""Block spaces of small open surfaces, computed two ways.

Run with ``python demos/01_blocks_by_excision.py``.
"""

from __future__ import annotations

from openmf.blocks import block_basis, block_dim, block_dim_by_excision, excision_check
from openmf.category import builtin
from openmf.surface import canonical_cut, disk, glue, make_surface

fib = builtin("Fib")

# The annulus without intervals: one coend slot, one block per simple.
annulus = make_surface(0, 2)
print("Fib annulus:", block_dim(fib, annulus).dimension)

# Punctured torus: the canonical cut is a disk with four auxiliary intervals,
# carrying (P^v, Q^v, P, Q) up to the order fixed by the cut.
torus = make_surface(1, 1)
cut = canonical_cut(torus)
print("canonical cut of the punctured torus:", cut.base, "steps", cut.steps)
print("Fib punctured torus:", block_dim(fib, torus).dimension)

# The same torus glued from a square: 1-3 and then 4-2.
print("by undoing the gluings of disk(4):", block_dim_by_excision(fib, disk(4), [(1, 3), (4, 2)]))

# Truncated families report the level they used. The annulus keeps growing with L,
# so its value is flagged stale; a labelled disk does not move.
for L in (2, 3):
    tl = builtin("TL", L)
    a = block_dim(tl, annulus)
    d = block_dim(tl, disk(4, labels={k: "V1" for k in range(1, 5)}))
    print(f"TL level {L}: annulus {a.dimension} (stale={a.stale}), disk V1^4 {d.dimension} (stale={d.stale})")

# excision_check pairs the glued basis with the cut bases summed over P.
S = disk(4, labels={1: "tau", 2: "tau"})
res = excision_check(fib, S, 3, 4)
print("excision bijection:", res.passed, "glued", res.glued_dim, "cut", res.cut_dims)

B = block_basis(fib, glue(S, 3, 4))
for (P, tree) in B.basis:
    print("  coend", [fib.label_name(p) for p in P], "leaves", [fib.label_name(x) for x in tree.leaves])
