"""Open conformal-block spaces by excision, with explicit bases and generator actions.

For a connected surface with canonical cut ``(base, steps)`` the block space is

    ⊕_{P_1..P_r in window} Hom(I, w(P)),

where ``w(P)`` is the disk word: each original interval carries its label and the
``h``-th step pair carries ``(P_h^∨, P_h)``. A component without intervals first gets
one interval labelled ``I`` at the basepoint of its first circle.

Infinite families are summed over the current window only. Such answers carry the
level used and a staleness flag: whether the value moved between the last two levels.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from .coeff import ONE, ZERO, Scalar, mat_identity, mat_mul, mat_rank
from .category.core import Category, I, Obj, TierError, WindowExhausted
from .category.io import parse_object
from .category.trees import (
    FusionTree,
    fusion_tree_basis,
    hom_dim,
    insert_unit,
    make_tree,
    remove_unit,
    rotate,
    twist_run,
)
from .surface import Component, GluingWord, Surface, canonical_cut, glue

__all__ = [
    "BlockError",
    "BlockDimension",
    "BlockSpace",
    "BlockMap",
    "ExcisionResult",
    "with_unit_intervals",
    "resolve_labels",
    "block_dim",
    "block_dim_by_excision",
    "block_basis",
    "excision_check",
    "dehn_twist_enclosing",
    "annulus_flip",
    "rotate_disk",
]


class BlockError(ValueError):
    """Surface/labeling not usable for the requested block computation."""


# -- labels and normal forms --------------------------------------------------------------


def resolve_labels(C: Category, S: Surface, labels: Mapping | None = None) -> dict:
    """Interval id → object, from the surface's own labels updated by ``labels``."""
    raw = dict(S.labels)
    raw.update(labels or {})
    out = {}
    for x in S.intervals:
        if x not in raw:
            raise BlockError(f"interval {x!r} is unlabelled")
        out[x] = parse_object(C, raw[x])
    return out


def with_unit_intervals(S: Surface) -> Surface:
    """Insert an ``I``-labelled interval on every component that has none."""
    comps = []
    labels = dict(S.labels)
    nxt = S.fresh_id()
    for comp in S.components:
        if comp.intervals:
            comps.append(comp)
            continue
        circles = list(comp.boundaries)
        circles[0] = (nxt,)
        labels[nxt] = ((I, 1),)
        nxt += 1
        comps.append(Component(comp.genus, tuple(circles)))
    return Surface(tuple(comps), labels)


def _window(C: Category) -> tuple:
    return tuple(C.window)


def _disk_word(cut: GluingWord, objs: Mapping, P: Sequence[int], C: Category) -> list[Obj]:
    word = [objs.get(x) for x in cut.base]
    pos = {x: i for i, x in enumerate(cut.base)}
    for (x, y), p in zip(cut.steps, P):
        word[pos[x]] = ((C.dual(p), 1),)
        word[pos[y]] = ((p, 1),)
    return word


def _assignments(C: Category, r: int) -> list[tuple]:
    return list(product(_window(C), repeat=r))


def _map_ordered(fn, items, jobs: int) -> list:
    # canonical-order assembly: identical to the serial result for any job count
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# -- dimensions ----------------------------------------------------------------------------


@dataclass(frozen=True)
class BlockDimension:
    """A block dimension with its truncation report.

    ``summands[c]`` maps each coend assignment of component ``c`` to its dimension.
    ``level`` is ``None`` for finite label sets.
    """

    dimension: int
    level: int | None
    stale: bool
    summands: tuple = field(default=(), compare=False)

    def __int__(self) -> int:
        return self.dimension


def _component_dims(C: Category, S: Surface, objs: Mapping, jobs: int) -> list[dict]:
    out = []
    for ci in range(len(S.components)):
        cut = canonical_cut(S.component(ci))
        assignments = _assignments(C, cut.r)
        dims = _map_ordered(lambda P, cut=cut: hom_dim(C, _disk_word(cut, objs, P, C), I), assignments, jobs)
        out.append(dict(zip(assignments, dims)))
    return out


def _raw_dim(C: Category, S: Surface, objs: Mapping, jobs: int) -> tuple[int, list[dict]]:
    per = _component_dims(C, S, objs, jobs)
    total = 1
    for d in per:
        total *= sum(d.values())
    return total, per


def block_dim(C: Category, S: Surface, labels: Mapping | None = None, jobs: int = 1) -> BlockDimension:
    """dim A(S; X) as the normal-form coend sum, multiplied over components."""
    S = with_unit_intervals(S)
    objs = resolve_labels(C, S, labels)
    total, per = _raw_dim(C, S, objs, jobs)
    stale = False
    if C.is_lazy and C.level:
        lower = C.with_level(C.level - 1)
        try:
            stale = _raw_dim(lower, S, objs, jobs)[0] != total
        except WindowExhausted:
            stale = True
    return BlockDimension(total, C.level if C.is_lazy else None, stale, tuple(per))


def block_dim_by_excision(C: Category, base: Surface, steps: Sequence[tuple],
                          labels: Mapping | None = None) -> int:
    """Dimension of the surface glued from ``base`` along ``steps``, by undoing every gluing.

    ``base`` must be a disjoint union of disks. Each step ``(a, b)`` is cut open with
    ``(P^∨, P)`` on ``(a, b)``; the fully cut surface is a product of disk hom-spaces.
    No canonical cut is involved.

    A step that joins two different components is an exact, finite coend: its ``P``
    runs over the fusion support of the other leaves on one side, whatever the window.
    A step that closes a loop is summed over the window, like the normal form's ``r``
    coend slots.
    """
    for comp in base.components:
        if comp.genus or len(comp.boundaries) != 1:
            raise BlockError("excision recursion starts from disks")
    base = with_unit_intervals(base)
    free = {x: base.labels[x] for x in base.intervals if x in base.labels}
    glued = {x for st in steps for x in st}
    objs = {x: parse_object(C, v) for x, v in {**free, **(labels or {})}.items() if x not in glued}
    missing = [x for x in base.intervals if x not in glued and x not in objs]
    if missing or len(glued) != 2 * len(steps):
        raise BlockError(f"bad labelling or repeated step intervals: {missing}")
    disks = [comp.boundaries[0] for comp in base.components]
    home = {x: d for d, word in enumerate(disks) for x in word}

    parent = list(range(len(disks)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    loops, merges = [], []
    for k, (a, b) in enumerate(steps):
        ra, rb = find(home[a]), find(home[b])
        if ra == rb:
            loops.append(k)
        else:
            parent[ra] = rb
            merges.append(k)
    merge_steps = [steps[k] for k in merges]
    plan = _leaf_order(home, merge_steps)

    total = 0
    for P in product(_window(C), repeat=len(loops)):
        lab = dict(objs)
        for k, p in zip(loops, P):
            a, b = steps[k]
            lab[a], lab[b] = ((C.dual(p), 1),), ((p, 1),)
        total += _merge_sum(C, disks, [(merge_steps[m], d) for m, d in plan], lab)
    return total


def _leaf_order(home: Mapping, merge_steps: Sequence[tuple]) -> list[tuple[int, int]]:
    """Order merge steps leaf-first: ``(step, disk)`` where no other open step touches ``disk``.

    Merge steps form a forest on the disks, so a leaf always exists.
    """
    open_steps = list(range(len(merge_steps)))
    plan = []
    while open_steps:
        degree: dict = {}
        for n in open_steps:
            for x in merge_steps[n]:
                degree[home[x]] = degree.get(home[x], 0) + 1
        m, d = next((m, home[x]) for m in open_steps for x in merge_steps[m] if degree[home[x]] == 1)
        plan.append((m, d))
        open_steps.remove(m)
    return plan


def _support(C: Category, word: Sequence[Obj]) -> set[int]:
    acc = {I}
    for x in word:
        acc = {k for c in acc for lab, _ in x for k in C._fuse_free(c, lab)}
    return acc


def _merge_sum(C: Category, disks, plan: Sequence[tuple], lab: dict) -> int:
    """Σ over the merge-step labels of the product of disk dimensions, leaf disks first."""
    if not plan:
        term = 1
        for word in disks:
            term *= hom_dim(C, [lab[x] for x in word], I)
            if not term:
                return 0
        return term
    (a, b), d = plan[0]
    # every other leaf of a leaf disk is already labelled; Hom(I, W ⊗ P^∨) and
    # Hom(I, W ⊗ P) vanish unless P or its dual lies in supp(W)
    supp = _support(C, [lab[x] for x in disks[d] if x not in (a, b)])
    total = 0
    for p in sorted(supp | {C.dual(k) for k in supp}):
        C.check_label(p)
        nxt = dict(lab)
        nxt[a], nxt[b] = ((C.dual(p), 1),), ((p, 1),)
        total += _merge_sum(C, disks, plan[1:], nxt)
    return total


# -- bases ---------------------------------------------------------------------------------


@dataclass
class BlockSpace:
    """Block space of a connected surface in the canonical-cut basis.

    ``basis[k] = (P, tree)``: coend assignment (one label per step) and a fusion tree
    of the disk word, ordered by assignment then tree.
    """

    category: Category
    surface: Surface
    cut: GluingWord
    objects: dict
    basis: list
    level: int | None
    stale: bool
    index: dict = field(default_factory=dict, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def word(self, P: Sequence[int]) -> list[Obj]:
        return _disk_word(self.cut, self.objects, P, self.category)

    def __post_init__(self):
        self.index = {entry: k for k, entry in enumerate(self.basis)}

    def coordinates(self, blocks: Mapping[tuple, dict]) -> list[Scalar]:
        """Coordinates of ``{P: tree vector}`` in this basis."""
        out = [ZERO] * len(self.basis)
        for P, vec in blocks.items():
            for t, c in vec.items():
                out[self.index[(tuple(P), t)]] = c
        return out

    def vectors(self, coords: Sequence[Scalar]) -> dict:
        """Inverse of :meth:`coordinates`: ``{P: {tree: scalar}}`` (zero entries dropped)."""
        out: dict = {}
        for (P, t), c in zip(self.basis, coords):
            if not c.is_zero():
                out.setdefault(P, {})[t] = c
        return out

    def to_json(self) -> list:
        C = self.category
        return [{"coend": [C.label_name(p) for p in P],
                 "leaves": [C.label_name(x) for x in t.leaves],
                 "channels": [C.label_name(x) for x in (t.internals + (t.root,))] if t.leaves else []}
                for P, t in self.basis]


def block_basis(C: Category, S: Surface, labels: Mapping | None = None, jobs: int = 1) -> BlockSpace:
    """Explicit basis of A(S; X) for a connected surface."""
    if not S.connected:
        raise BlockError("block_basis needs a connected surface; use block_dim for products")
    S = with_unit_intervals(S)
    objs = resolve_labels(C, S, labels)
    cut = canonical_cut(S)
    assignments = _assignments(C, cut.r)
    trees = _map_ordered(lambda P: fusion_tree_basis(C, _disk_word(cut, objs, P, C), I), assignments, jobs)
    basis = [(P, t) for P, ts in zip(assignments, trees) for t in ts]
    dim = block_dim(C, S, objs, jobs)
    return BlockSpace(C, S, cut, objs, basis, dim.level, dim.stale)


def _basis_keys(C: Category, S: Surface, objs: Mapping) -> list[tuple]:
    """Basis labels of a possibly disconnected surface: products of component bases."""
    S = with_unit_intervals(S)
    objs = {**objs, **{x: v for x, v in S.labels.items() if x not in objs}}
    per = []
    for ci in range(len(S.components)):
        comp = S.component(ci)
        cut = canonical_cut(comp)
        per.append([(P, t) for P in _assignments(C, cut.r)
                    for t in fusion_tree_basis(C, _disk_word(cut, objs, P, C), I)])
    return [tuple(k) for k in product(*per)]


@dataclass
class ExcisionResult:
    passed: bool
    glued_dim: int
    cut_dims: dict  # P -> dim of the cut surface with (P^∨, P) inserted
    bijection: list  # (glued basis key, (P, cut basis key))

    def __bool__(self) -> bool:
        return self.passed


def excision_check(C: Category, S_cut: Surface, a, b, labels: Mapping | None = None) -> ExcisionResult:
    """Compare A(glue(S_cut, a, b)) with ⊕_P A(S_cut; P^∨ at a, P at b).

    The basis bijection matches both canonical orders position by position; it is
    checked to be one-to-one and onto.
    """
    live = set(S_cut.intervals)
    if a == b or a not in live or b not in live:
        raise BlockError(f"invalid cut ({a!r}, {b!r})")
    base_labels = {k: v for k, v in {**S_cut.labels, **(labels or {})}.items() if k not in (a, b)}
    S_cut = Surface(S_cut.components, base_labels)
    objs = {x: parse_object(C, v) for x, v in base_labels.items()}
    glued = glue(S_cut, a, b)
    lhs_keys = _basis_keys(C, glued, objs)
    rhs_keys: list = []
    cut_dims = {}
    if S_cut.locate(a)[0] == S_cut.locate(b)[0]:
        labels_p = _window(C)
    else:
        # joining two components is a finite coend, not truncated by the window
        labels_p = _cut_support(C, S_cut, a, objs)
    for p in labels_p:
        C.check_label(p)
        o = {**objs, a: ((C.dual(p), 1),), b: ((p, 1),)}
        keys = _basis_keys(C, S_cut, o)
        cut_dims[p] = len(keys)
        rhs_keys.extend((p, k) for k in keys)
    bijection = list(zip(lhs_keys, rhs_keys))
    one_to_one = (len(lhs_keys) == len(rhs_keys)
                  and len({x for x, _ in bijection}) == len(lhs_keys)
                  and len({y for _, y in bijection}) == len(rhs_keys))
    return ExcisionResult(one_to_one, len(lhs_keys), cut_dims, bijection)


def _cut_support(C: Category, S: Surface, a, objs: Mapping) -> list[int]:
    """Labels ``p`` for which the component of ``a`` can carry ``p^∨`` (or ``p``) at ``a``.

    Its block space at ``p`` is a sum of disk hom-spaces over its own window slots;
    each vanishes unless ``p`` or its dual lies in the fusion support of the other leaves.
    """
    S = with_unit_intervals(S)
    comp = S.component(S.locate(a)[0])
    cut = canonical_cut(comp)
    supp: set = set()
    for P in _assignments(C, cut.r):
        word = _disk_word(cut, {**S.labels, **objs, a: ((I, 1),)}, P, C)
        supp |= _support(C, [w for x, w in zip(cut.base, word) if x != a])
    return sorted(supp | {C.dual(k) for k in supp})


# -- generator actions ---------------------------------------------------------------------


@dataclass
class BlockMap:
    """Linear map between block spaces; ``matrix[i][j]`` is the i-th coordinate of the image of basis j."""

    name: str
    source: BlockSpace
    target: BlockSpace
    matrix: list

    def is_invertible(self) -> bool:
        n = len(self.matrix)
        return n == self.source.dimension == self.target.dimension and mat_rank(self.matrix) == n

    def __matmul__(self, other: BlockMap) -> BlockMap:
        return BlockMap(f"{self.name}*{other.name}", other.source, self.target, mat_mul(self.matrix, other.matrix))

    def power(self, k: int) -> BlockMap:
        out = BlockMap("id", self.source, self.source, mat_identity(self.source.dimension))
        for _ in range(k):
            out = self @ out
        return out

    def is_identity(self) -> bool:
        return self.matrix == mat_identity(len(self.matrix))

    def apply(self, coords: Sequence[Scalar]) -> list[Scalar]:
        return [sum((row[j] * coords[j] for j in range(len(coords))), ZERO) for row in self.matrix]

    def to_json(self) -> list:
        return [[str(x) for x in row] for row in self.matrix]


def _matrix_from_images(B: BlockSpace, images: list[dict]) -> list:
    n = B.dimension
    M = [[ZERO] * n for _ in range(n)]
    for j, img in enumerate(images):
        col = B.coordinates(img)
        for i in range(n):
            M[i][j] = col[i]
    return M


def dehn_twist_enclosing(C: Category, B: BlockSpace, i: int, j: int, inverse: bool = False) -> BlockMap:
    """Twist along a curve enclosing the canonical-word positions ``i..j``.

    Diagonal on channel ``c_j`` when ``i = 0`` (tier 1 suffices); other runs are
    gathered by F-moves first (tier 2).
    """
    n = len(B.cut.base)
    if not 0 <= i <= j < n:
        raise BlockError(f"run {i}..{j} outside the word of length {n}")
    if C.tier < 1 or (i > 0 and C.tier < 2):
        raise TierError("this enclosing twist needs tier 1 (aligned run) or tier 2")
    images = [{P: twist_run(C, {t: ONE}, i, j, inverse)} for P, t in B.basis]
    return BlockMap(f"twist[{i}..{j}]", B, B, _matrix_from_images(B, images))


def _is_bare_annulus(B: BlockSpace) -> bool:
    comp = B.surface.components[0]
    return (comp.genus == 0 and len(comp.boundaries) == 2 and len(B.cut.base) == 3
            and B.objects[B.cut.base[0]] == ((I, 1),))


def annulus_flip(C: Category, B: BlockSpace) -> BlockMap:
    """The Z2 generator of the bare annulus: the block at P goes to the block at dual(P).

    At tier 2 the coefficient is computed by the rotation ``Hom(I, P^∨ ⊗ P) → Hom(I, P ⊗ P^∨)``
    (the transpose f ↦ f^∨ in the coev normalization); below tier 2 it is the bare permutation.
    """
    if not _is_bare_annulus(B):
        raise BlockError("annulus_flip needs the annulus without intervals")
    images = []
    for P, t in B.basis:
        p = P[0]
        if C.tier < 2:
            images.append({(C.dual(p),): {make_unit_tree(C, C.dual(p)): ONE}})
            continue
        inner = {remove_unit(t, 0): ONE}
        rot = rotate(C, inner)
        images.append({(C.dual(p),): {insert_unit(u, 0): c for u, c in rot.items()}})
    return BlockMap("flip", B, B, _matrix_from_images(B, images))


def make_unit_tree(C: Category, p: int) -> FusionTree:
    """Basis tree ``[I, p^∨, p]`` of the bare annulus at coend label ``p``."""
    if p == I:
        return make_tree((I, I, I), (I, I, I))
    return make_tree((I, C.dual(p), p), (I, C.dual(p), I))


def rotate_disk(C: Category, B: BlockSpace) -> BlockMap:
    """ρ on Hom(I, F^{⊗n}): move the last factor to the front."""
    comp = B.surface.components[0]
    if comp.genus or len(comp.boundaries) != 1 or B.cut.steps:
        raise BlockError("rotate_disk needs a disk")
    objs = [B.objects[x] for x in B.cut.base]
    if len(set(objs)) > 1:
        raise BlockError("rotate_disk needs all intervals to carry the same object")
    if C.tier < 2:
        raise TierError("rotation needs tier-2 data")
    images = [{P: rotate(C, {t: ONE})} for P, t in B.basis]
    return BlockMap("rotate", B, B, _matrix_from_images(B, images))

