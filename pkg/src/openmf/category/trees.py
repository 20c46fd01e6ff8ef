"""Fusion-tree bases and the linear engine acting on them.

A tree with leaves ``l_0 .. l_{n-1}`` is left associated: its channels are
``c_0 = l_0``, ``c_j`` the label after fusing ``l_0 .. l_j`` and ``c_{n-1}`` the root.
Trees are splitting trees, i.e. basis vectors of ``Hom(root, l_0 ⊗ ... ⊗ l_{n-1})``.

Leaves may be summands of non-simple objects, recorded as a ``copies`` index next
to each leaf label. Vectors are plain dicts ``{FusionTree: Scalar}``; the
:class:`FusionTreeVector` wrapper is the public face.

Every engine move needs tier-2 data and multiplicity-free fusion on the vertices it
touches. Counting and enumeration work at every tier and with multiplicities.
"""

from __future__ import annotations

from itertools import product
from typing import Callable, Iterable, NamedTuple, Sequence

from ..coeff import ONE, ZERO, Scalar, as_scalar
from .core import Category, CategoryError, I, Obj, TierError, as_obj, obj_summands

__all__ = [
    "FusionTree",
    "FusionTreeVector",
    "hom_dim",
    "hom_dim_brute",
    "fusion_tree_basis",
    "channels",
    "make_tree",
    "f_move",
    "f_move_inverse",
    "r_move",
    "vec_add",
    "vec_scale",
    "vec_clean",
    "vec_equal",
    "insert_unit",
    "remove_unit",
    "fuse_pair",
    "split_leaf",
    "apply_unary",
    "apply_binary",
    "apply_split",
    "insert_pair",
    "insert_coev",
    "apply_ev",
    "apply_ev_right",
    "braid",
    "twist_run",
    "rotate",
    "word_of",
    "insert_vector",
    "vec_sum",
]


class FusionTree(NamedTuple):
    leaves: tuple
    internals: tuple
    root: int
    mults: tuple = ()
    copies: tuple = ()


def channels(t: FusionTree) -> tuple:
    n = len(t.leaves)
    if n == 0:
        return ()
    if n == 1:
        return (t.root,)
    return (t.leaves[0],) + t.internals + (t.root,)


def make_tree(leaves: Sequence[int], chans: Sequence[int], copies: Sequence[int] | None = None,
              mults: Sequence[int] | None = None) -> FusionTree:
    """Build a tree from its leaves and full channel list (``chans[-1]`` is the root)."""
    n = len(leaves)
    leaves = tuple(leaves)
    copies = tuple(copies) if copies is not None else (0,) * n
    mults = tuple(mults) if mults is not None else (0,) * max(n - 1, 0)
    if n == 0:
        return FusionTree((), (), I, (), ())
    return FusionTree(leaves, tuple(chans[1:-1]), chans[-1], mults, copies)


def word_of(t: FusionTree) -> tuple:
    return tuple(zip(t.leaves, t.copies))


# -- counting -----------------------------------------------------------------------


def _as_word(C: Category, word) -> list[Obj]:
    return [as_obj(x) for x in word]


def _forward(C: Category, word: list[Obj], root: int = I) -> list[dict[int, int]]:
    """Prefix channel multiplicity vectors, counting trees (leaf copies and vertex indices).

    Products are formed without bounds checks; only channels that can still reach
    ``root`` must lie inside the window cap.
    """
    if not word:
        return [{I: 1}]
    first: dict[int, int] = {}
    for lab, m in word[0]:
        C.check_label(lab)
        first[lab] = first.get(lab, 0) + m
    out = [first]
    for x in word[1:]:
        nxt: dict[int, int] = {}
        for c, cnt in out[-1].items():
            for lab, m in x:
                for k, n in C._fuse_free(c, lab).items():
                    nxt[k] = nxt.get(k, 0) + cnt * m * n
        out.append(nxt)
    reach = {root} & set(out[-1])
    for j in range(len(word) - 2, -1, -1):
        labs = [lab for lab, _ in word[j + 1]]
        reach = {c for c in out[j] if any(k in reach for lab in labs for k in C._fuse_free(c, lab))}
        for c in reach:
            C.check_label(c)
    if root in out[-1]:
        C.check_label(root)
    return out


def hom_dim(C: Category, word, root: int = I) -> int:
    """dim Hom(root, X_1 ⊗ ... ⊗ X_n) by dynamic programming over prefix channels.

    ``word`` entries are labels or objects (multiplicity vectors).
    """
    w = _as_word(C, word)
    if not w:
        return 1 if root == I else 0
    return _forward(C, w, root)[-1].get(root, 0)


def hom_dim_brute(C: Category, word, root: int = I) -> int:
    """Independent count by explicit enumeration of every channel sequence.

    Intermediate channels are not bounds-checked; only ``root`` must lie in the window.
    """
    w = _as_word(C, word)
    C.check_label(root)
    if not w:
        return 1 if root == I else 0
    total = 0
    for choice in product(*[obj_summands(x) for x in w]):
        labels = [lab for lab, _ in choice]
        partial = {labels[0]: 1}
        for lab in labels[1:]:
            nxt: dict[int, int] = {}
            for c, cnt in partial.items():
                for k, n in C._fuse_free(c, lab).items():
                    nxt[k] = nxt.get(k, 0) + cnt * n
            partial = nxt
        total += partial.get(root, 0)
    return total


def _backward(C: Category, labels: list[int], root: int) -> list[set[int]]:
    """reach[j] = channels c_j reachable from the prefix that can still fuse to ``root``.

    Every reachable channel is bounds-checked, so a genuine overflow still raises.
    """
    n = len(labels)
    fwd = [{labels[0]}]
    for lab in labels[1:]:
        fwd.append({k for c in fwd[-1] for k in C._fuse_free(c, lab)})
    reach: list[set[int]] = [set() for _ in range(n)]
    reach[n - 1] = {root} & fwd[n - 1]
    for j in range(n - 2, -1, -1):
        nxt = labels[j + 1]
        reach[j] = {c for c in fwd[j] if any(k in reach[j + 1] for k in C._fuse_free(c, nxt))}
    for layer in reach:
        for c in layer:
            C.check_label(c)
    return reach


def fusion_tree_basis(C: Category, word, root: int = I) -> list[FusionTree]:
    """All fusion trees in deterministic order.

    Order: leaf summand choices, then internal labels, then multiplicity indices,
    each lexicographic by label id.
    """
    w = _as_word(C, word)
    if not w:
        return [FusionTree((), (), I, (), ())] if root == I else []
    out: list[FusionTree] = []
    for choice in product(*[obj_summands(x) for x in w]):
        labels = [lab for lab, _ in choice]
        copies = tuple(c for _, c in choice)
        n = len(labels)
        if n == 1:
            if labels[0] == root:
                out.append(FusionTree((labels[0],), (), root, (), copies))
            continue
        reach = _backward(C, labels, root)
        if labels[0] not in reach[0]:
            continue
        trees: list[FusionTree] = []

        def rec(j: int, chans: list[int], mults: list[int]):
            if j == n:
                trees.append(FusionTree(tuple(labels), tuple(chans[1:-1]), chans[-1], tuple(mults), copies))
                return
            for k, m in C._fuse_free(chans[-1], labels[j]).items():
                if k not in reach[j]:
                    continue
                for mu in range(m):
                    chans.append(k)
                    mults.append(mu)
                    rec(j + 1, chans, mults)
                    chans.pop()
                    mults.pop()

        rec(1, [labels[0]], [])
        trees.sort(key=lambda t: (t.internals, t.mults))
        out.extend(trees)
    return out


# -- vectors --------------------------------------------------------------------------

Vec = dict


def vec_add(acc: Vec, t: FusionTree, c: Scalar) -> None:
    if c.is_zero():
        return
    old = acc.get(t)
    if old is None:
        acc[t] = c
    else:
        new = old + c
        if new.is_zero():
            del acc[t]
        else:
            acc[t] = new


def vec_scale(x: Vec, s) -> Vec:
    s = as_scalar(s)
    if s.is_zero():
        return {}
    return {t: c * s for t, c in x.items()}


def vec_clean(x: Vec) -> Vec:
    return {t: c for t, c in x.items() if not c.is_zero()}


def vec_equal(x: Vec, y: Vec) -> bool:
    return vec_clean(x) == vec_clean(y)


def vec_sum(*vs: Vec) -> Vec:
    acc: Vec = {}
    for x in vs:
        for t, c in x.items():
            vec_add(acc, t, c)
    return acc


class FusionTreeVector:
    """A vector in a Hom-space, as coefficients on fusion trees.

    ``shape`` is ``"left"`` for the left-associated basis, or ``("paired", k)`` after
    :func:`f_move` made leaves ``k, k+1`` siblings; in that case the channel slot
    ``k`` of each tree holds the label of the pair.
    """

    __slots__ = ("coeffs", "shape")

    def __init__(self, coeffs: dict | None = None, shape="left"):
        self.coeffs = vec_clean(coeffs or {})
        self.shape = shape

    @classmethod
    def basis_vector(cls, t: FusionTree) -> FusionTreeVector:
        return cls({t: ONE})

    def __add__(self, other: FusionTreeVector) -> FusionTreeVector:
        if self.shape != other.shape:
            raise CategoryError("adding vectors in different tree shapes")
        return FusionTreeVector(vec_sum(self.coeffs, other.coeffs), self.shape)

    def __sub__(self, other: FusionTreeVector) -> FusionTreeVector:
        return self + other * -1

    def __mul__(self, s) -> FusionTreeVector:
        return FusionTreeVector(vec_scale(self.coeffs, s), self.shape)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, FusionTreeVector) and self.shape == other.shape and self.coeffs == other.coeffs

    def __len__(self) -> int:
        return len(self.coeffs)

    def coordinates(self, basis: Sequence[FusionTree]) -> list[Scalar]:
        index = {t: i for i, t in enumerate(basis)}
        out = [ZERO] * len(basis)
        for t, c in self.coeffs.items():
            if t not in index:
                raise CategoryError(f"tree {t} is not in the given basis")
            out[index[t]] = c
        return out

    def __repr__(self) -> str:
        return f"FusionTreeVector({len(self.coeffs)} terms, shape={self.shape})"


# -- engine primitives ------------------------------------------------------------------


def _tier2(C: Category):
    if C.tier < 2:
        raise TierError(f"tree moves need tier 2; {C.name} is tier {C.tier}")


def _tree(leaves, chans, copies) -> FusionTree:
    return make_tree(leaves, chans, copies)


def fuse_pair(C: Category, t: FusionTree, k: int) -> list[tuple[Scalar, FusionTree]]:
    """Re-associate so that leaves ``k, k+1`` hang from one splitting vertex.

    Returns pairs ``(coefficient, tree)`` where ``tree`` has the two leaves replaced
    by a single leaf carrying the pair channel ``f`` (copy 0). The caller keeps the
    original leaf data. Uses ``((x a)_e b)_d = sum_f F^{xab}_d[e,f] (x (a b)_f)_d``.
    """
    leaves, cp = t.leaves, t.copies
    c = channels(t)
    if k == 0:
        f = c[1]
        return [(ONE, _tree((f,) + leaves[2:], c[1:], (0,) + cp[2:]))]
    x, a, b, e, d = c[k - 1], leaves[k], leaves[k + 1], c[k], c[k + 1]
    Fm = C.F(x, a, b, d)
    ei = Fm.es.index(e)
    out = []
    for fi, f in enumerate(Fm.fs):
        coef = Fm.mat[ei][fi]
        if not coef.is_zero():
            out.append((coef, _tree(leaves[:k] + (f,) + leaves[k + 2:], c[:k] + c[k + 1:], cp[:k] + (0,) + cp[k + 2:])))
    return out


def split_leaf(C: Category, t: FusionTree, k: int, a: int, b: int, ca: int = 0, cb: int = 0
               ) -> list[tuple[Scalar, FusionTree]]:
    """Replace leaf ``k`` (label x) by the splitting vertex X^{ab}_x and re-associate left."""
    leaves, cp = t.leaves, t.copies
    x = leaves[k]
    if not C.N(a, b, x):
        return []
    c = channels(t)
    if k == 0:
        return [(ONE, _tree((a, b) + leaves[1:], (a,) + c, (ca, cb) + cp[1:]))]
    y, d = c[k - 1], c[k]
    Fi = C.Finv(y, a, b, d)
    xi = Fi.es.index(x)
    out = []
    for ei, e in enumerate(Fi.fs):
        coef = Fi.mat[xi][ei]
        if not coef.is_zero():
            out.append((coef, _tree(leaves[:k] + (a, b) + leaves[k + 1:], c[:k] + (e,) + c[k:],
                                    cp[:k] + (ca, cb) + cp[k + 1:])))
    return out


def insert_unit(t: FusionTree, k: int) -> FusionTree:
    """Insert a unit leaf at position ``k`` (unit-gauge vertices are identities)."""
    c = channels(t)
    n = len(t.leaves)
    if n == 0:
        return _tree((I,), (I,), (0,))
    if k == 0:
        newc = (I,) + c
    else:
        newc = c[:k] + (c[k - 1],) + c[k:]
    return _tree(t.leaves[:k] + (I,) + t.leaves[k:], newc, t.copies[:k] + (0,) + t.copies[k:])


def remove_unit(t: FusionTree, k: int) -> FusionTree:
    if t.leaves[k] != I:
        raise CategoryError("removing a non-unit leaf")
    c = channels(t)
    n = len(t.leaves)
    if n == 1:
        return FusionTree((), (), I, (), ())
    newc = c[1:] if k == 0 else c[:k] + c[k + 1:]
    return _tree(t.leaves[:k] + t.leaves[k + 1:], newc, t.copies[:k] + t.copies[k + 1:])


def _map_trees(x: Vec, fn: Callable[[FusionTree], Iterable[tuple[Scalar, FusionTree]]]) -> Vec:
    acc: Vec = {}
    for t, c in x.items():
        for coef, t2 in fn(t):
            vec_add(acc, t2, c * coef)
    return acc


def apply_unary(C: Category, x: Vec, k: int, table: Callable) -> Vec:
    """Apply a morphism on leaf ``k``.

    ``table(label, copy)`` returns ``[(new_copy, scalar), ...]``; simple labels are
    preserved since Hom(a, b) = 0 for distinct simples.
    """
    def fn(t):
        for nc, s in table(t.leaves[k], t.copies[k]):
            yield as_scalar(s), t._replace(copies=t.copies[:k] + (nc,) + t.copies[k + 1:])
    return _map_trees(x, fn)


def apply_binary(C: Category, x: Vec, k: int, table: Callable) -> Vec:
    """Apply a morphism ``m: L_k ⊗ L_{k+1} → Z`` on leaves ``k, k+1``.

    ``table(a, ca, b, cb)`` returns ``[(f, cf, scalar), ...]`` meaning the component
    ``scalar · Y^{ab}_f`` landing in summand ``(f, cf)`` of the target. A target
    ``f = I`` with ``cf = None`` removes the leaf (a map to the unit object).
    """
    _tier2(C)

    def fn(t):
        a, b = t.leaves[k], t.leaves[k + 1]
        entries = table(a, t.copies[k], b, t.copies[k + 1])
        if not entries:
            return
        by_f: dict[int, list] = {}
        for f, cf, s in entries:
            by_f.setdefault(f, []).append((cf, as_scalar(s)))
        for coef, t2 in fuse_pair(C, t, k):
            f = t2.leaves[k]
            for cf, s in by_f.get(f, ()):
                if cf is None:
                    yield coef * s, remove_unit(t2, k)
                else:
                    yield coef * s, t2._replace(copies=t2.copies[:k] + (cf,) + t2.copies[k + 1:])
    return _map_trees(x, fn)


def apply_split(C: Category, x: Vec, k: int, table: Callable) -> Vec:
    """Apply ``m: L_k → A ⊗ B`` on leaf ``k``; ``table(x, cx)`` gives ``[(a, ca, b, cb, s), ...]``
    meaning ``s · X^{ab}_x``."""
    _tier2(C)

    def fn(t):
        for a, ca, b, cb, s in table(t.leaves[k], t.copies[k]):
            s = as_scalar(s)
            for coef, t2 in split_leaf(C, t, k, a, b, ca, cb):
                yield coef * s, t2
    return _map_trees(x, fn)


def insert_pair(C: Category, x: Vec, k: int, pairs: Sequence[tuple]) -> Vec:
    """Insert a vector of Hom(I, A ⊗ B) so that its legs become leaves ``k, k+1``.

    ``pairs`` lists ``(a, ca, b, cb, s)`` meaning ``s · X^{ab}_I`` with ``b = dual(a)``.
    """
    _tier2(C)

    def fn(t):
        u = insert_unit(t, k)
        for a, ca, b, cb, s in pairs:
            s = as_scalar(s)
            for coef, t2 in split_leaf(C, u, k, a, b, ca, cb):
                yield coef * s, t2
    return _map_trees(x, fn)


def insert_coev(C: Category, x: Vec, k: int, a: int, copy: int = 0) -> Vec:
    """Insert coev_a: I → a ⊗ ā at positions ``k, k+1`` (both legs tagged ``copy``)."""
    return insert_pair(C, x, k, [(a, copy, C.dual(a), copy, C.coev_scale(a))])


def apply_ev(C: Category, x: Vec, k: int) -> Vec:
    """Apply ev_a: ā ⊗ a → I at leaves ``k, k+1`` (a read off the tree)."""
    def table(p, cp, q, cq):
        if C.dual(p) != q or cp != cq:
            return []
        return [(I, None, C.ev_scale(q))]
    return apply_binary(C, x, k, table)


def apply_ev_right(C: Category, x: Vec, k: int) -> Vec:
    """Apply the right evaluation ẽv_a = ε_a ev_{ā}: a ⊗ ā → I at leaves ``k, k+1``."""
    def table(p, cp, q, cq):
        if C.dual(p) != q or cp != cq:
            return []
        return [(I, None, C.pivotal(p) * C.ev_scale(q))]
    return apply_binary(C, x, k, table)


def braid(C: Category, x: Vec, k: int, inverse: bool = False) -> Vec:
    """Apply c_{l_k, l_{k+1}} (or its inverse) at site ``k``."""
    _tier2(C)

    def fn(t):
        a, b, ca, cb = t.leaves[k], t.leaves[k + 1], t.copies[k], t.copies[k + 1]
        for coef, t2 in fuse_pair(C, t, k):
            f = t2.leaves[k]
            r = C.R(b, a, f).inv() if inverse else C.R(a, b, f)
            for coef2, t3 in split_leaf(C, t2, k, b, a, cb, ca):
                yield coef * r * coef2, t3
    return _map_trees(x, fn)


def _gather(C: Category, t: FusionTree, i: int, j: int):
    """Fuse leaves ``i..j`` into one leaf; yields (coef, tree, inner leaves, inner channels)."""
    states = [(ONE, t, [])]
    for _ in range(j - i):
        nxt = []
        for coef, tr, path in states:
            for c2, t2 in fuse_pair(C, tr, i):
                nxt.append((coef * c2, t2, path + [t2.leaves[i]]))
        states = nxt
    for coef, tr, path in states:
        yield coef, tr, path


def _scatter(C: Category, t: FusionTree, i: int, leaves: Sequence[int], copies: Sequence[int],
             path: Sequence[int]) -> list[tuple[Scalar, FusionTree]]:
    """Inverse of :func:`_gather`: expand the composite leaf at ``i``."""
    states = [(ONE, t)]
    m = len(leaves)
    # path[r] is the channel after fusing leaves[0..r+1]; peel from the top
    for r in range(m - 1, 0, -1):
        left = path[r - 2] if r >= 2 else leaves[0]
        lc = 0 if r >= 2 else copies[0]
        nxt = []
        for coef, tr in states:
            for c2, t2 in split_leaf(C, tr, i, left, leaves[r], lc, copies[r]):
                nxt.append((coef * c2, t2))
        states = nxt
    return states


def twist_run(C: Category, x: Vec, i: int, j: int, inverse: bool = False) -> Vec:
    """Act by θ on the sub-object ``l_i ⊗ ... ⊗ l_j`` (twist along a curve enclosing the run)."""
    if C.tier < 1:
        raise TierError("twists need tier 1")
    if i == 0 and C.tier < 2:
        # aligned with the canonical tree: diagonal in channel c_j
        def fn0(t):
            th = C.twist(channels(t)[j])
            yield (th.inv() if inverse else th), t
        return _map_trees(x, fn0)
    _tier2(C)

    def fn(t):
        leaves, cps = t.leaves[i:j + 1], t.copies[i:j + 1]
        for coef, tr, path in _gather(C, t, i, j):
            top = tr.leaves[i]
            th = C.twist(top)
            th = th.inv() if inverse else th
            for c2, t2 in _scatter(C, tr, i, leaves, cps, path):
                yield coef * th * c2, t2
    return _map_trees(x, fn)


def rotate(C: Category, x: Vec) -> Vec:
    """Move the last tensor factor to the front on Hom(I, W ⊗ z) → Hom(I, z ⊗ W).

    ρ(f) = (id_z ⊗ id_W ⊗ ẽv_z) ∘ (id_z ⊗ f ⊗ id_z̄) ∘ coev_z, built summand by summand.
    """
    _tier2(C)
    acc: Vec = {}
    for t, c in x.items():
        n = len(t.leaves)
        if n == 0:
            vec_add(acc, t, c)
            continue
        z, cz = t.leaves[-1], t.copies[-1]
        # coev_z ∈ Hom(I, z ⊗ z̄) with the original tree inserted between its legs
        base = {make_tree((z, C.dual(z)), (z, I), (cz, cz)): C.coev_scale(z)}
        v = insert_vector(C, base, 1, {t: c})
        v = apply_ev_right(C, v, n)
        for t2, c2 in v.items():
            vec_add(acc, t2, c2)
    return acc


def insert_vector(C: Category, x: Vec, k: int, y: Vec) -> Vec:
    """Tensor an I-rooted vector ``y`` into ``x`` so its leaves start at position ``k``."""
    acc: Vec = {}
    for ty, cy in y.items():
        m = len(ty.leaves)
        if m == 0:
            for tx, cx in x.items():
                vec_add(acc, tx, cx * cy)
            continue
        # insert a unit leaf, then grow the subtree of ty from it by successive splits
        cur = {insert_unit(tx, k): cx * cy for tx, cx in x.items()}
        yc = channels(ty)
        # build from the top channel down: I -> (c_{m-2}, l_{m-1}) -> ...
        for r in range(m - 1, 0, -1):
            left = yc[r - 1]
            lc = 0 if r >= 2 else ty.copies[0]
            cur = _map_trees(cur, lambda t, r=r, left=left, lc=lc: split_leaf(C, t, k, left, ty.leaves[r], lc, ty.copies[r]))
        for t2, c2 in cur.items():
            vec_add(acc, t2, c2)
    return acc


# -- public moves ---------------------------------------------------------------------


def f_move(C: Category, x: FusionTreeVector, position: int) -> FusionTreeVector:
    """Re-associate so leaves ``position, position+1`` are siblings.

    The result lives in the ``("paired", position)`` shape: channel slot ``position``
    holds the pair label. ``position = 0`` is already of that shape.
    """
    _tier2(C)
    if x.shape != "left":
        raise CategoryError("f_move expects a left-associated vector")
    k = position

    def fn(t):
        if k == 0:
            yield ONE, t
            return
        for coef, t2 in fuse_pair(C, t, k):
            f = t2.leaves[k]
            c = list(channels(t))
            c[k] = f
            yield coef, make_tree(t.leaves, c, t.copies, t.mults)
    return FusionTreeVector(_map_trees(x.coeffs, fn), ("paired", k))


def f_move_inverse(C: Category, x: FusionTreeVector) -> FusionTreeVector:
    """Inverse of :func:`f_move`."""
    _tier2(C)
    if x.shape == "left":
        return x
    k = x.shape[1]

    def fn(t):
        if k == 0:
            yield ONE, t
            return
        c = channels(t)
        f = c[k]
        composite = make_tree(t.leaves[:k] + (f,) + t.leaves[k + 2:], c[:k] + c[k + 1:],
                              t.copies[:k] + (0,) + t.copies[k + 2:])
        yield from split_leaf(C, composite, k, t.leaves[k], t.leaves[k + 1], t.copies[k], t.copies[k + 1])
    return FusionTreeVector(_map_trees(x.coeffs, fn), "left")


def r_move(C: Category, x: FusionTreeVector, site: int, inverse: bool = False) -> FusionTreeVector:
    """Braid the adjacent leaves ``site, site+1`` (left-associated in and out)."""
    if x.shape != "left":
        raise CategoryError("r_move expects a left-associated vector")
    return FusionTreeVector(braid(C, x.coeffs, site, inverse), "left")
