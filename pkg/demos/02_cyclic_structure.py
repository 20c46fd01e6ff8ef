"""Copairing, snake identities and the (PB) condition, with and without mutations.

Run with ``python demos/02_cyclic_structure.py``.
"""

from __future__ import annotations

from openmf.category import builtin, check_axioms, load_category
from openmf.cli import DATA_DIR
from openmf.duality import check_pb, check_snake, copairing

tl = builtin("TL", 3)
print("copairing components of TL at level 3:")
for entry in copairing(tl).to_json(tl):
    print("  ", entry["pair"], entry["vector"])

print("snake identities:", all(check_snake(tl, p).passed for p in tl.window))
print("(PB) on all windowed pairs:", all(check_pb(tl, x, y).passed for x in tl.window for y in tl.window))

# Each mutation trips a different check and names a witness.
broken_f = load_category(DATA_DIR / "TL-broken.json")
print("F-symbol mutation, pentagon witness:", check_axioms(broken_f)["pentagon"].witness)

broken_coev = load_category({"generator": {"name": "TL", "level": 3}, "coev": {"V1": "v"}})
print("coev mutation, snake witness:", check_snake(broken_coev, 1).witness)

broken_twist = load_category(DATA_DIR / "Z3-broken.json")
print("twist mutation, (PB) witness:", check_pb(broken_twist, 1, 2).witness)
