"""Frobenius algebras in a tier-2 category, open correlators and their gluing.

An algebra object lives on a carrier ``F = ⊕ (label, copy)``. Its structure maps are
stored on simple summands:

- ``mu[(a, ca), (b, cb), (c, cc)] = s``: the component ``s · Y^{ab}_c`` of μ,
- ``eta[(I, c)] = s``: the unit η lands in the ``c``-th copy of ``I``,
- ``beta[(a, ca), (b, cb)] = s``: the component ``s · Y^{ab}_I`` of β, with ``b = dual(a)``.

The correlator on a disk with ``n`` intervals is ``ξ_n = Δ^{n-1} η`` where
``Δ = (μ ⊗ id)(id ⊗ δ)`` and δ is the copairing inverse to β. On a general surface
the disk correlator of its canonical cut is pushed forward along every glued pair:
ψ on the first slot, then ``F^∨ ⊗ F`` is projected onto the coend components.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .coeff import ONE, ZERO, Scalar, as_scalar, mat_inverse, mat_rank
from .category.core import Category, CategoryError, I, Obj, TierError, as_obj, obj_summands
from .category.io import object_name, parse_object
from .category.trees import (
    FusionTree,
    apply_binary,
    apply_ev,
    apply_ev_right,
    apply_split,
    apply_unary,
    fusion_tree_basis,
    hom_dim,
    insert_pair,
    insert_unit,
    make_tree,
    rotate,
    twist_run,
    vec_add,
)
from .blocks import BlockSpace, annulus_flip, block_basis, with_unit_intervals
from .surface import Surface, canonical_cut, disk, glue

__all__ = [
    "FrobeniusError",
    "UnsupportedPresentation",
    "AlgebraObject",
    "FrobeniusReport",
    "Correlator",
    "ReaObject",
    "check_frobenius",
    "copairing_of",
    "psi_matrices",
    "make_pair_algebra",
    "unit_algebra",
    "group_algebra",
    "quantum_exterior_algebra",
    "algebra_from_spec",
    "correlator_disk",
    "correlator_disk_dual",
    "correlator",
    "contract_slots",
    "mcg_invariance_suite",
    "rea_object",
]


class FrobeniusError(ValueError):
    """Algebra data does not type-check or is not Frobenius where required."""


class UnsupportedPresentation(FrobeniusError):
    """The glued surface's canonical cut is not a cyclic rotation of the contracted word."""


Summand = tuple  # (label, copy)


@dataclass
class AlgebraObject:
    name: str
    carrier: Obj
    mu: dict
    eta: dict
    beta: dict

    def summands(self) -> list[Summand]:
        return obj_summands(self.carrier)

    def to_json(self, C: Category) -> dict:
        def s(x):
            return [C.label_name(x[0]), x[1]]
        return {
            "name": self.name,
            "carrier": object_name(C, self.carrier),
            "mu": [[s(a), s(b), s(c), str(v)] for (a, b, c), v in sorted(self.mu.items())],
            "eta": [[s(a), str(v)] for a, v in sorted(self.eta.items())],
            "beta": [[s(a), s(b), str(v)] for (a, b), v in sorted(self.beta.items())],
        }


def _typecheck(C: Category, A: AlgebraObject) -> None:
    if C.tier < 2:
        raise TierError(f"Frobenius structures need tier-2 data; {C.name} is tier {C.tier}")
    summ = set(A.summands())
    for (a, b, c) in A.mu:
        if not {a, b, c} <= summ:
            raise FrobeniusError(f"μ entry {(a, b, c)} is outside the carrier")
        if not C.N(a[0], b[0], c[0]):
            raise FrobeniusError(f"μ entry {(a, b, c)} is not an admissible vertex")
    for a in A.eta:
        if a not in summ or a[0] != I:
            raise FrobeniusError(f"η entry {a} must be a copy of I in the carrier")
    for (a, b) in A.beta:
        if not {a, b} <= summ or C.dual(a[0]) != b[0]:
            raise FrobeniusError(f"β entry {(a, b)} is not a dual pair of carrier summands")


# -- structure maps on tree vectors -----------------------------------------------------------


def _mu_table(A: AlgebraObject):
    table: dict = {}
    for (a, b, c), s in A.mu.items():
        table.setdefault((a, b), []).append((c[0], c[1], s))
    return lambda p, cp, q, cq: table.get(((p, cp), (q, cq)), [])


def _beta_table(A: AlgebraObject):
    table = {(a, b): s for (a, b), s in A.beta.items()}

    def fn(p, cp, q, cq):
        s = table.get(((p, cp), (q, cq)))
        return [(I, None, s)] if s is not None else []
    return fn


def apply_mu(C: Category, A: AlgebraObject, x: dict, k: int) -> dict:
    return apply_binary(C, x, k, _mu_table(A))


def apply_beta(C: Category, A: AlgebraObject, x: dict, k: int) -> dict:
    return apply_binary(C, x, k, _beta_table(A))


def insert_eta(C: Category, A: AlgebraObject, x: dict, k: int) -> dict:
    out: dict = {}
    for t, c in x.items():
        u = insert_unit(t, k)
        for (lab, cp), s in A.eta.items():
            vec_add(out, u._replace(copies=u.copies[:k] + (cp,) + u.copies[k + 1:]), c * s)
    return out


def _pair_scale(C: Category, p: int) -> Scalar:
    """(Y^{p p̄}_I ⊗ id)(id ⊗ X^{p̄ p}_I) on p, as a multiple of id_p."""
    leaf = make_tree((p,), (p,))
    x = insert_pair(C, {leaf: ONE}, 1, [(C.dual(p), 0, p, 0, ONE)])
    x = apply_binary(C, x, 0, lambda a, ca, b, cb: [(I, None, ONE)] if C.dual(a) == b else [])
    return x.get(leaf, ZERO)


def _copies(A: AlgebraObject, label: int) -> list[int]:
    return [c for lab, c in A.summands() if lab == label]


def copairing_of(C: Category, A: AlgebraObject) -> list[tuple]:
    """δ_β ∈ Hom(I, F ⊗ F) with (β ⊗ id)(id ⊗ δ_β) = id_F, by an exact solve per label.

    Returns ``insert_pair`` entries ``(a, ca, b, cb, s)``. Raises if β is degenerate.
    """
    pairs = []
    for p in sorted({lab for lab, _ in A.summands()}):
        pb = C.dual(p)
        rows, cols = _copies(A, p), _copies(A, pb)
        if len(rows) != len(cols):
            raise FrobeniusError(f"carrier multiplicities of {p} and its dual differ; β is degenerate")
        B = [[A.beta.get(((p, cp), (pb, ca)), ZERO) for ca in cols] for cp in rows]
        if mat_rank(B) < len(rows):
            raise FrobeniusError(f"β is degenerate on label {C.label_name(p)}")
        k = _pair_scale(C, p)
        # (β⊗id)(id⊗δ) on (p, cp) is Σ_ca B[cp][ca] k D[ca][cb]; solve k·B·D = 1
        D = mat_inverse([[x * k for x in row] for row in B])
        for i, ca in enumerate(cols):
            for j, cb in enumerate(rows):
                if not D[i][j].is_zero():
                    pairs.append((pb, ca, p, cb, D[i][j]))
    return pairs


def psi_matrices(C: Category, A: AlgebraObject) -> tuple[dict, dict]:
    """ψ = β(x, -) and the pivotal transpose β(-, x), both as maps F → F^∨.

    ``M[p][i][j]`` is the coefficient of copy ``i`` of ``p`` going to the ``F^∨`` summand
    dual to ``(dual(p), copies[j])``. The right map uses c̃oev_q = ε_q^{-1} coev_{q̄}.
    """
    left: dict = {}
    right: dict = {}
    beta = _beta_table(A)
    for p in sorted({lab for lab, _ in A.summands()}):
        pb = C.dual(p)
        rows, cols = _copies(A, p), _copies(A, pb)
        L = [[ZERO] * len(cols) for _ in rows]
        R = [[ZERO] * len(cols) for _ in rows]
        for i, cp in enumerate(rows):
            leaf = {make_tree((p,), (p,), (cp,)): ONE}
            for j, c in enumerate(cols):
                xl = insert_pair(C, leaf, 1, [(pb, c, p, c, C.coev_scale(pb))])
                xr = insert_pair(C, leaf, 0, [(p, c, pb, c, C.pivotal(pb).inv() * C.coev_scale(p))])
                yl = apply_binary(C, xl, 0, beta)
                yr = apply_binary(C, xr, 1, beta)
                L[i][j] = yl.get(make_tree((p,), (p,), (c,)), ZERO)
                R[i][j] = yr.get(make_tree((p,), (p,), (c,)), ZERO)
        left[p], right[p] = L, R
    return left, right


# -- verification ------------------------------------------------------------------------------


@dataclass
class FrobeniusReport:
    algebra: str
    checks: dict = field(default_factory=dict)  # name -> (passed, witness)

    @property
    def frobenius(self) -> bool:
        return all(ok for name, (ok, _) in self.checks.items() if name != "symmetry")

    @property
    def symmetric(self) -> bool:
        return self.checks.get("symmetry", (False, None))[0]

    @property
    def passed(self) -> bool:
        return self.frobenius and self.symmetric

    def to_dict(self) -> dict:
        return {"algebra": self.algebra, "passed": self.passed,
                "checks": {k: {"passed": ok, **({"witness": w if isinstance(w, dict) else str(w)} if not ok else {})}
                           for k, (ok, w) in sorted(self.checks.items())}}


def _first_diff(x: dict, y: dict):
    for t in sorted(set(x) | set(y)):
        if x.get(t, ZERO) != y.get(t, ZERO):
            return {"leaves": list(t.leaves), "lhs": str(x.get(t, ZERO)), "rhs": str(y.get(t, ZERO))}
    return None


def check_frobenius(C: Category, A: AlgebraObject) -> FrobeniusReport:
    """Associativity, both unit laws, invariance, non-degeneracy and symmetry.

    Maps out of ``F^{⊗k}`` are compared on every splitting tree of every simple into
    ``F^{⊗k}``; by semisimplicity that determines them.
    """
    _typecheck(C, A)
    rep = FrobeniusReport(A.name)
    F = A.carrier
    targets = sorted({lab for lab, _ in F})

    def run(name, word_len, root_set, lhs, rhs):
        for d in root_set:
            for t in fusion_tree_basis(C, [F] * word_len, d):
                x = {t: ONE}
                diff = _first_diff(lhs(x), rhs(x))
                if diff is not None:
                    rep.checks[name] = (False, diff)
                    return
        rep.checks[name] = (True, None)

    run("associativity", 3, targets,
        lambda x: apply_mu(C, A, apply_mu(C, A, x, 0), 0),
        lambda x: apply_mu(C, A, apply_mu(C, A, x, 1), 0))
    run("unit_left", 1, targets, lambda x: apply_mu(C, A, insert_eta(C, A, x, 0), 0), lambda x: x)
    run("unit_right", 1, targets, lambda x: apply_mu(C, A, insert_eta(C, A, x, 1), 0), lambda x: x)
    run("invariance", 3, [I],
        lambda x: apply_beta(C, A, apply_mu(C, A, x, 0), 0),
        lambda x: apply_beta(C, A, apply_mu(C, A, x, 1), 0))
    try:
        copairing_of(C, A)
        rep.checks["non_degenerate"] = (True, None)
    except FrobeniusError as exc:
        rep.checks["non_degenerate"] = (False, str(exc))
    left, right = psi_matrices(C, A)
    bad = next((p for p in left if left[p] != right[p]), None)
    rep.checks["symmetry"] = (bad is None, None if bad is None else {
        "label": C.label_name(bad),
        "psi": [[str(x) for x in row] for row in left[bad]],
        "pivotal_transpose": [[str(x) for x in row] for row in right[bad]],
    })
    return rep


# -- constructions ---------------------------------------------------------------------------


def unit_algebra(C: Category) -> AlgebraObject:
    u = (I, 0)
    return AlgebraObject("unit", ((I, 1),), {(u, u, u): ONE}, {u: ONE}, {(u, u): ONE})


def group_algebra(C: Category) -> AlgebraObject:
    """Group algebra of a pointed category with trivial data: ⊕ g, μ(g, h) = gh, β(g, h) = δ_{gh, e}."""
    labels = tuple(C.window)
    mu, beta = {}, {}
    for g in labels:
        for h in labels:
            prod = C.fuse(g, h)
            if len(prod) != 1 or list(prod.values()) != [1]:
                raise FrobeniusError("group algebra needs invertible simples")
            (k,) = prod
            mu[((g, 0), (h, 0), (k, 0))] = ONE
            if k == I:
                beta[((g, 0), (h, 0))] = ONE
    return AlgebraObject(f"group({C.name})", as_obj({g: 1 for g in labels}), mu, {(I, 0): ONE}, beta)


def quantum_exterior_algebra(C: Category, q=2) -> AlgebraObject:
    """Λ_q on 4·I: basis 1, x, y, xy with x² = y² = 0 and yx = q·xy; β reads the xy coefficient.

    Frobenius for every nonzero q and symmetric exactly when q = 1.
    """
    q = as_scalar(q)
    one, x, y, xy = ((I, c) for c in range(4))
    mu = {}
    for e in (one, x, y, xy):
        mu[(one, e, e)] = ONE
        mu[(e, one, e)] = ONE
    mu[(x, y, xy)] = ONE
    mu[(y, x, xy)] = q
    beta = {(one, xy): ONE, (xy, one): ONE, (x, y): ONE, (y, x): q}
    return AlgebraObject(f"qext({q})", ((I, 4),), mu, {one: ONE}, beta)


def make_pair_algebra(C: Category, P: int) -> AlgebraObject:
    """End(P) ≅ P ⊗ P^∨ for a simple ``P``: μ = id ⊗ ev ⊗ id, η = coev, β = ẽv ∘ μ.

    Every structure constant is read off the tree engine.
    """
    if C.tier < 2:
        raise TierError(f"the pair algebra needs tier-2 data; {C.name} is tier {C.tier}")
    C.check_label(P)
    Pb = C.dual(P)
    channels = sorted(C.fuse(P, Pb))
    carrier = as_obj({k: 1 for k in channels})

    def project(a, ca, b, cb):
        return [(f, 0, ONE) for f in channels] if (a, b) == (P, Pb) else []

    def split(x, cx):
        return [(P, 0, Pb, 0, ONE)]

    mu = {}
    for a in channels:
        for b in channels:
            for c in C.fuse(a, b):
                if c not in channels:
                    continue
                x = {make_tree((a, b), (a, c)): ONE}
                x = apply_split(C, x, 0, split)
                x = apply_split(C, x, 2, split)
                x = apply_ev(C, x, 1)
                x = apply_binary(C, x, 0, project)
                s = x.get(make_tree((c,), (c,)), ZERO)
                if not s.is_zero():
                    mu[((a, 0), (b, 0), (c, 0))] = s
    trace = apply_ev_right(C, {make_tree((P, Pb), (P, I)): ONE}, 0).get(FusionTree((), (), I, (), ()), ZERO)
    beta = {}
    for (a, b, c), s in mu.items():
        if c[0] == I:
            beta[(a, b)] = s * trace
    eta = {(I, 0): C.coev_scale(P)}
    return AlgebraObject(f"pair({C.label_name(P)})", carrier, mu, eta, beta)


def algebra_from_spec(C: Category, spec) -> AlgebraObject:
    """``unit``, ``group``, ``pair:<label>``, ``qext[:q]`` (alias ``group-nonsym``) or a JSON document."""
    if isinstance(spec, dict):
        return algebra_from_document(C, spec)
    s = str(spec)
    if s == "unit":
        return unit_algebra(C)
    if s == "group":
        return group_algebra(C)
    if s.startswith("pair:"):
        return make_pair_algebra(C, C.label_id(s[5:]))
    if s == "group-nonsym":
        return quantum_exterior_algebra(C, 2)
    if s.startswith("qext"):
        return quantum_exterior_algebra(C, s.split(":", 1)[1] if ":" in s else 2)
    raise FrobeniusError(f"unknown algebra spec {spec!r}")


def algebra_from_document(C: Category, doc: Mapping) -> AlgebraObject:
    def sm(x):
        return (C.label_id(x[0]), int(x[1]))
    try:
        return AlgebraObject(
            str(doc.get("name", "custom")),
            parse_object(C, doc["carrier"]),
            {(sm(a), sm(b), sm(c)): as_scalar(v) for a, b, c, v in doc["mu"]},
            {sm(a): as_scalar(v) for a, v in doc["eta"]},
            {(sm(a), sm(b)): as_scalar(v) for a, b, v in doc["beta"]},
        )
    except (KeyError, ValueError, TypeError, CategoryError) as exc:
        raise FrobeniusError(f"malformed algebra document: {exc}") from exc


# -- correlators ---------------------------------------------------------------------------------


@dataclass
class Correlator:
    """ξ on a connected surface: ``blocks[P]`` is the tree vector at coend assignment ``P``."""

    surface: Surface
    space: BlockSpace
    blocks: dict

    @property
    def vector(self) -> list[Scalar]:
        return self.space.coordinates(self.blocks)

    def __eq__(self, other) -> bool:
        return isinstance(other, Correlator) and self.vector == other.vector and \
            self.space.basis == other.space.basis


def _require_frobenius(C: Category, A: AlgebraObject) -> None:
    rep = check_frobenius(C, A)
    if not rep.frobenius:
        bad = [k for k, (ok, _) in rep.checks.items() if not ok and k != "symmetry"]
        raise FrobeniusError(f"{A.name} is not Frobenius: {bad}")


def _delta(C: Category, A: AlgebraObject, x: dict, k: int, pairs) -> dict:
    """Δ = (μ ⊗ id)(id ⊗ δ) on leaf ``k``."""
    return apply_mu(C, A, insert_pair(C, x, k + 1, pairs), k)


def correlator_disk(C: Category, A: AlgebraObject, n: int, check: bool = True) -> dict:
    """ξ_n ∈ Hom(I, F^{⊗n}) as a tree vector; ξ_0 is β(η, η) on the empty tree."""
    if check:
        _require_frobenius(C, A)
    empty = FusionTree((), (), I, (), ())
    x = insert_eta(C, A, {empty: ONE}, 0)
    if n == 0:
        return apply_beta(C, A, insert_eta(C, A, x, 1), 0)
    pairs = copairing_of(C, A)
    for k in range(n - 1):
        x = _delta(C, A, x, k, pairs)
    return x


def correlator_disk_dual(C: Category, A: AlgebraObject, n: int) -> dict:
    """ξ_n from the other side: raise every input of λ ∘ μ^{(n-1)} with nested copies of δ.

    λ = β(-, η). The copairings are nested so input ``i`` is paired with output
    ``n - 1 - i``; no comultiplication is used.
    """
    empty = FusionTree((), (), I, (), ())
    if n == 0:
        return correlator_disk(C, A, 0, check=False)
    pairs = copairing_of(C, A)
    x = insert_pair(C, {empty: ONE}, 0, pairs)
    for _ in range(n - 1):
        # μ right after each raise keeps the running product in leaf 0
        x = apply_mu(C, A, insert_pair(C, x, 1, pairs), 0)
    x = insert_eta(C, A, x, 1)
    return apply_beta(C, A, x, 0)


def _pushforward(C: Category, x: dict, i: int, j: int, psi: dict, A: AlgebraObject) -> dict:
    """ψ on slot ``i``, then keep the F^∨ ⊗ F pairs that match summand and copy.

    Slots ``i`` and ``j`` end up carrying (P^∨, P) with copy 0 and coefficient 1.
    """
    def table(p, cp):
        M = psi[p]
        rows, cols = _copies(A, p), _copies(A, C.dual(p))
        r = rows.index(cp)
        return [(cols[k], M[r][k]) for k in range(len(cols)) if not M[r][k].is_zero()]

    y = apply_unary(C, x, i, table)
    out: dict = {}
    for t, c in y.items():
        if C.dual(t.leaves[i]) != t.leaves[j] or t.copies[i] != t.copies[j]:
            continue
        cp = list(t.copies)
        cp[i] = cp[j] = 0
        vec_add(out, t._replace(copies=tuple(cp)), c)
    return out


def _blocks_from(x: dict, word_ids: Sequence, steps: Sequence[tuple]) -> dict:
    pos = {v: k for k, v in enumerate(word_ids)}
    out: dict = {}
    for t, c in x.items():
        P = tuple(t.leaves[pos[b]] for _, b in steps)
        out.setdefault(P, {})
        vec_add(out[P], t, c)
    return {P: v for P, v in out.items() if v}


def _labelled(S: Surface, A: AlgebraObject) -> Surface:
    return S.with_labels({x: A.carrier for x in S.intervals if x not in S.labels})


def correlator(C: Category, A: AlgebraObject, S: Surface) -> Correlator:
    """ξ_S: the disk correlator of the canonical cut pushed forward along each glued pair."""
    if not S.connected:
        raise FrobeniusError("correlators are computed per connected surface")
    for x in S.intervals:
        if x in S.labels and parse_object(C, S.labels[x]) != A.carrier:
            raise FrobeniusError(f"interval {x!r} is not labelled by the carrier")
    _require_frobenius(C, A)
    S = _labelled(S, A)
    B = block_basis(C, S)
    cut = B.cut
    unit_ids = set(B.surface.intervals) - set(S.intervals)
    units = [k for k, x in enumerate(cut.base) if x in unit_ids]
    n_f = len(cut.base) - len(units)
    x = correlator_disk(C, A, n_f, check=False)
    for k in units:
        x = {insert_unit(t, k): c for t, c in x.items()}
    left, _ = psi_matrices(C, A)
    for i, j in cut.slots():
        x = _pushforward(C, x, i, j, left, A)
    return Correlator(S, B, _blocks_from(x, cut.base, cut.steps))


def _rotate_k(C: Category, x: dict, k: int) -> dict:
    for _ in range(k):
        x = rotate(C, x)
    return x


def contract_slots(C: Category, A: AlgebraObject, xi: Correlator, a, b) -> Correlator:
    """Glue intervals ``a`` and ``b`` of ξ's surface by pushing ξ forward along them.

    The result is returned in the canonical basis of ``glue(S, a, b)``. Supported when
    that canonical word is a cyclic rotation of the contracted word, up to unit slots
    and the orientation of glued pairs; otherwise :class:`UnsupportedPresentation`.
    """
    S = xi.surface
    if a == b or a not in S.intervals or b not in S.intervals:
        raise FrobeniusError(f"invalid slots ({a!r}, {b!r})")
    cut = xi.space.cut
    word = list(cut.base)
    steps = list(cut.steps) + [(a, b)]
    i, j = word.index(a), word.index(b)
    left, _ = psi_matrices(C, A)
    x: dict = {}
    for P, vec in xi.blocks.items():
        for t, c in vec.items():
            vec_add(x, t, c)
    x = _pushforward(C, x, i, j, left, A)
    glued = glue(S, a, b)
    B2 = block_basis(C, glued)
    unit_ids = set(B2.surface.intervals) - set(glued.intervals)
    return Correlator(B2.surface, B2, _represent(C, B2, x, word, steps, unit_ids))


def _represent(C: Category, B2: BlockSpace, x: dict, word: list, steps: list, unit_ids: set) -> dict:
    """Move ``x`` (on ``word`` with glued ``steps``) into the canonical basis of ``B2``."""
    cut2 = B2.cut
    target = list(cut2.base)
    units = [k for k, y in enumerate(target) if y in unit_ids]
    reduced = [y for y in target if y not in unit_ids]
    aux_ours = {s for p in steps for s in p}
    aux_theirs = {s for p in cut2.steps for s in p}
    n = len(word)
    for k in range(n):
        rot = word[n - k:] + word[:n - k]
        phi = _match(rot, reduced, aux_ours, aux_theirs)
        if phi is None:
            continue
        pair_map = _pair_map(steps, cut2.steps, phi)
        if pair_map is None:
            continue
        y = _rotate_k(C, x, k)
        for u in units:
            y = {insert_unit(t, u): c for t, c in y.items()}
        return _blocks_from(y, target, cut2.steps)
    raise UnsupportedPresentation("the glued surface's canonical word is not a rotation of the contracted word")


def _match(rot: list, target: list, aux_ours: set, aux_theirs: set):
    if len(rot) != len(target):
        return None
    phi = {}
    for u, w in zip(rot, target):
        if u in aux_ours and w in aux_theirs:
            phi[u] = w
        elif u != w or u in aux_ours or w in aux_theirs:
            return None
    return phi


def _pair_map(ours: list, theirs: Sequence, phi: dict):
    theirs_set = {frozenset(p) for p in theirs}
    for p in ours:
        if frozenset(phi[s] for s in p) not in theirs_set:
            return None
    return True


# -- invariance ------------------------------------------------------------------------------


def _disk_all_carrier(xi: Correlator, A: AlgebraObject) -> bool:
    comp = xi.surface.components[0]
    return comp.genus == 0 and len(comp.boundaries) == 1 and bool(xi.surface.intervals) and \
        all(xi.space.objects[y] == A.carrier for y in xi.space.cut.base)


def mcg_invariance_suite(C: Category, A: AlgebraObject, S: Surface) -> dict:
    """Apply each available generator to ξ_S; ``{name: "fixed" | "not fixed" | "not tested: why"}``."""
    xi = correlator(C, A, S)
    B = xi.space
    x = {}
    for P, vec in xi.blocks.items():
        for t, c in vec.items():
            x[(P, t)] = c
    out: dict = {}
    n = len(B.cut.base)

    def verdict(img: dict) -> str:
        return "fixed" if _blocks_equal(img, xi.blocks) else "not fixed"

    if _disk_all_carrier(xi, A):
        out["rotation"] = verdict({P: rotate(C, v) for P, v in xi.blocks.items()})
    else:
        out["rotation"] = "not tested: needs a disk with every interval labelled by the carrier"
    if n:
        out["twist_total"] = verdict({P: twist_run(C, v, 0, n - 1) for P, v in xi.blocks.items()})
    comp = B.surface.components[0]
    if comp.genus == 0 and len(comp.boundaries) == 2 and n == 3 and B.objects[B.cut.base[0]] == ((I, 1),):
        flip = annulus_flip(C, B)
        out["flip"] = "fixed" if flip.apply(xi.vector) == xi.vector else "not fixed"
    else:
        out["flip"] = "not tested: defined on the bare annulus only"
    if B.cut.steps:
        out["twist_enclosing_circles"] = "not tested: mapping-class membership of interval-carrying circle twists is unresolved"
    return out


def _blocks_equal(x: dict, y: dict) -> bool:
    keys = set(x) | set(y)
    for P in keys:
        a, b = x.get(P, {}), y.get(P, {})
        if {t: c for t, c in a.items() if not c.is_zero()} != {t: c for t, c in b.items() if not c.is_zero()}:
            return False
    return True


# -- reflection equation algebra object -------------------------------------------------------------


@dataclass(frozen=True)
class ReaObject:
    window: tuple
    carrier: Obj
    invariants_dim: int


def rea_object(C: Category, level: int | None = None) -> ReaObject:
    """⊕_i dual(i) ⊗ i over the window, and dim Hom(I, ·) of it."""
    if level is not None and C.level is not None and level != C.level:
        C = C.with_level(level)
    acc: dict = {}
    inv = 0
    for i in C.window:
        for k, m in C.fuse(C.dual(i), i).items():
            acc[k] = acc.get(k, 0) + m
        inv += hom_dim(C, [C.dual(i), i], I)
    return ReaObject(tuple(C.window), as_obj(acc), inv)
