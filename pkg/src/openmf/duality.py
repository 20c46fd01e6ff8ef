"""Cyclic structure on a semisimple category: the pairing κ, the copairing Δ and its checks.

``κ(X, Y) = Hom(I, X ⊗ Y)`` and ``Δ = ⊕_i dual(i) ⊠ i`` over the window. The component
of Δ at ``i`` is the unit-channel vector ``coev_{dual(i)} = c X^{dual(i), i}_I`` with
``c`` the category's coevaluation scale, so both snake composites are strict
identities for unmutated data.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coeff import ONE, ZERO
from .category.core import Category, I, TierError, as_obj
from .category.trees import (
    FusionTree,
    FusionTreeVector,
    apply_ev,
    apply_unary,
    fusion_tree_basis,
    hom_dim,
    insert_pair,
    make_tree,
)

__all__ = [
    "PairingValue",
    "Copairing",
    "SnakeResult",
    "PBResult",
    "kappa",
    "copairing",
    "check_snake",
    "check_pb",
    "pairing_dimension_via_word",
    "dual_pairing_dimension",
]


@dataclass(frozen=True)
class PairingValue:
    """κ(X, Y): its dimension and fusion-tree basis of Hom(I, X ⊗ Y)."""

    dimension: int
    basis: tuple


@dataclass(frozen=True)
class Copairing:
    window: tuple
    components: tuple  # (dual(i), i, FusionTreeVector) per window label

    def to_json(self, C: Category) -> list:
        out = []
        for a, b, vec in self.components:
            coeffs = [[list(t.leaves), str(c)] for t, c in sorted(vec.coeffs.items())]
            out.append({"pair": [C.label_name(a), C.label_name(b)], "vector": coeffs})
        return out


def kappa(C: Category, X, Y) -> PairingValue:
    """The pairing κ(X, Y) = Hom(I, X ⊗ Y) for objects given as multiplicity vectors."""
    basis = tuple(fusion_tree_basis(C, [as_obj(X), as_obj(Y)], I))
    return PairingValue(len(basis), basis)


def copairing(C: Category, level: int | None = None) -> Copairing:
    """Components of Δ over the window at ``level`` (the category's own window by default)."""
    if level is not None and C.level is not None and level != C.level:
        C = C.with_level(level)
    comps = []
    for i in C.window:
        di = C.dual(i)
        if i == I:
            vec = FusionTreeVector({FusionTree((), (), I, (), ()): ONE})
        else:
            vec = FusionTreeVector({make_tree((di, i), (di, I)): C.coev_scale(di)})
        comps.append((di, i, vec))
    return Copairing(tuple(C.window), tuple(comps))


def _delta_pairs(C: Category, window) -> list[tuple]:
    return [(C.dual(i), 0, i, 0, C.coev_scale(C.dual(i))) for i in window if i != I]


@dataclass
class SnakeResult:
    passed: bool
    label: int
    window: tuple
    witness: tuple | None = None  # (orientation, tree, scalar) of the first bad coefficient
    values: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed


def check_snake(C: Category, P: int) -> SnakeResult:
    """Both snake composites on the simple ``P``, through the whole windowed copairing.

    ``right``: P → P ⊗ Δ → (κ-pairing of P with Δ′) ⊗ Δ″; ``left``: P → Δ ⊗ P →
    Δ′ ⊗ (κ-pairing of Δ″ with P). Each must equal id_P on the P-component and vanish
    on every other component of Δ.
    """
    if C.tier < 2:
        raise TierError("snake identities need tier-2 data")
    C.check_label(P)
    window = tuple(C.window)
    leaf = make_tree((P,), (P,))
    start = {leaf: ONE}
    pairs = _delta_pairs(C, window)
    res = SnakeResult(True, P, window)
    # the unit component contributes only when P is the unit
    right = apply_ev(C, insert_pair(C, start, 1, pairs), 0) if P != I else dict(start)
    left = apply_ev(C, insert_pair(C, start, 0, pairs), 1) if P != I else dict(start)
    for name, out in (("right", right), ("left", left)):
        res.values[name] = out
        expected = {leaf: ONE}
        if out != expected:
            res.passed = False
            bad = next((t for t in set(out) | set(expected) if out.get(t) != expected.get(t)), None)
            res.witness = (name, bad.leaves if bad else None, out.get(bad, ZERO))
            break
    return res


@dataclass
class PBResult:
    passed: bool
    pair: tuple
    witness: tuple | None = None  # (tree, θ_X side, θ_Y side)

    def __bool__(self) -> bool:
        return self.passed


def check_pb(C: Category, X, Y) -> PBResult:
    """Compare θ_X ⊗ id_Y and id_X ⊗ θ_Y as automorphisms of κ(X, Y).

    Both maps are applied to every basis vector of Hom(I, X ⊗ Y) and the images compared.
    """
    if C.tier < 1:
        raise TierError("condition (PB) needs twists (tier 1)")
    X, Y = as_obj(X), as_obj(Y)
    res = PBResult(True, (X, Y))

    def theta(label, copy):
        return [(copy, C.twist(label))]

    for t in fusion_tree_basis(C, [X, Y], I):
        x = {t: ONE}
        lhs = apply_unary(C, x, 0, theta)
        rhs = apply_unary(C, x, 1, theta)
        if lhs != rhs:
            res.passed = False
            res.witness = (t.leaves, lhs.get(t), rhs.get(t))
            break
    return res


def pairing_dimension_via_word(C: Category, X, Y) -> int:
    """κ(X, Y) through the monoidal product: dim Hom(I, X ⊗ Y) by the prefix DP."""
    return hom_dim(C, [as_obj(X), as_obj(Y)], I)


def dual_pairing_dimension(C: Category, X, Y) -> int:
    """Σ_i X_i · Y_{dual(i)}, the closed form of dim κ(X, Y)."""
    X, Y = dict(as_obj(X)), dict(as_obj(Y))
    return sum(m * Y.get(C.dual(i), 0) for i, m in X.items())

