"""Axiom verification for skeletal category data.

Each check returns a :class:`CheckResult`; failures carry a witness tuple and the two
sides that disagreed. Checks run over the current window (channels may reach into the
lazy extension up to the cap).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from ..coeff import ONE, ZERO, Scalar
from .core import Category, I, WindowExhausted
from .trees import (
    apply_ev,
    apply_ev_right,
    braid,
    fuse_pair,
    fusion_tree_basis,
    insert_coev,
    make_tree,
    rotate,
    split_leaf,
    vec_add,
)

__all__ = ["CheckResult", "AxiomReport", "check_axioms", "snake_scalars", "twist_trace"]


@dataclass
class CheckResult:
    name: str
    passed: bool = True
    checked: int = 0
    witness: tuple | None = None
    detail: str = ""

    def record(self, ok: bool, witness: tuple, detail: str = "") -> None:
        self.checked += 1
        if not ok and self.passed:
            self.passed = False
            self.witness = witness
            self.detail = detail

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "checked": self.checked}
        if not self.passed:
            out["witness"] = [str(w) for w in self.witness]
            out["detail"] = self.detail
        return out


@dataclass
class AxiomReport:
    category: str
    window: tuple
    tier: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "category": self.category,
            "window": list(self.window),
            "tier": self.tier,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def _ne(a, b) -> str:
    return f"{a} != {b}"


def _structural(C: Category, W) -> list[CheckResult]:
    dual = CheckResult("dual_involution")
    for i in W:
        d = C.dual(i)
        dual.record(C.dual(d) == i, (i,), _ne(C.dual(d), i))
    dual.record(C.dual(I) == I, (I,), "dual of unit")

    unit = CheckResult("unit_fusion")
    for i in W:
        unit.record(C.fuse(i, I) == {i: 1}, (i, I), str(C.fuse(i, I)))
        unit.record(C.fuse(I, i) == {i: 1}, (I, i), str(C.fuse(I, i)))

    chan = CheckResult("unit_channel")
    for i, j in product(W, W):
        m = C.N(i, j, I)
        chan.record(m == (1 if j == C.dual(i) else 0), (i, j), f"N_ij^I = {m}")
    return [dual, unit, chan]


def _tier1(C: Category, W) -> list[CheckResult]:
    th_unit = CheckResult("twist_unit")
    th_unit.record(C.twist(I) == ONE, (I,), _ne(C.twist(I), 1))
    th_dual = CheckResult("twist_dual")
    d_dual = CheckResult("qdim_dual")
    d_char = CheckResult("qdim_character")
    d_char.record(C.qdim(I) == ONE, (I,), _ne(C.qdim(I), 1))
    for i in W:
        di = C.dual(i)
        th_dual.record(C.twist(i) == C.twist(di), (i, di), _ne(C.twist(i), C.twist(di)))
        d_dual.record(C.qdim(i) == C.qdim(di), (i, di), _ne(C.qdim(i), C.qdim(di)))
    for i, j in product(W, W):
        lhs = C.qdim(i) * C.qdim(j)
        rhs = ZERO
        for k, m in C.fuse(i, j).items():
            rhs = rhs + C.qdim(k) * m
        d_char.record(lhs == rhs, (i, j), _ne(lhs, rhs))
    return [th_unit, th_dual, d_dual, d_char]


def _pentagon(C: Category, W) -> CheckResult:
    res = CheckResult("pentagon")
    for a, b, c, d in product(W, repeat=4):
        for f in C.fuse(a, b):
            for g in C.fuse(f, c):
                for e in C.fuse(g, d):
                    for l in C.fuse(c, d):
                        for k in C.fuse(b, l):
                            if not C.N(a, k, e):
                                continue
                            lhs = C.F(f, c, d, e).entry(g, l) * C.F(a, b, l, e).entry(f, k)
                            rhs = ZERO
                            for h in C.fuse(b, c):
                                rhs = rhs + (C.F(a, b, c, g).entry(f, h) * C.F(a, h, d, e).entry(g, k)
                                             * C.F(b, c, d, k).entry(h, l))
                            res.record(lhs == rhs, (a, b, c, d, e, f, g, k, l), _ne(lhs, rhs))
    return res


def _unit_gauge(C: Category, W) -> CheckResult:
    res = CheckResult("unit_gauge")
    for a, b, c in product(W, repeat=3):
        if I not in (a, b, c):
            continue
        for e in C.fuse(a, b):
            for d in C.fuse(e, c):
                Fm = C.F(a, b, c, d)
                for ei, ee in enumerate(Fm.es):
                    for fi, ff in enumerate(Fm.fs):
                        x = Fm.mat[ei][fi]
                        res.record(x == ONE, (a, b, c, d, ee, ff), _ne(x, 1))
    for a in W:
        for pair in ((a, I), (I, a)):
            x = C.R(pair[0], pair[1], a)
            res.record(x == ONE, pair + (a,), _ne(x, 1))
    return res


def _hexagons(C: Category, W) -> tuple[CheckResult, CheckResult]:
    h1 = CheckResult("hexagon_1")
    h2 = CheckResult("hexagon_2")
    for a, b, c in product(W, repeat=3):
        roots = sorted({k for e in C.fuse(a, b) for k in C.fuse(e, c)})
        for d in roots:
            for t in fusion_tree_basis(C, (a, b, c), d):
                x = {t: ONE}
                # c_{a, b⊗c} = (id ⊗ c_{a,c}) (c_{a,b} ⊗ id)
                rhs = braid(C, braid(C, x, 0), 1)
                lhs: dict = {}
                for c1, t1 in fuse_pair(C, t, 1):
                    f = t1.leaves[1]
                    for c2, t2 in fuse_pair(C, t1, 0):
                        r = C.R(a, f, t2.leaves[0])
                        for c3, t3 in split_leaf(C, t2, 0, f, a):
                            for c4, t4 in split_leaf(C, t3, 0, b, c):
                                vec_add(lhs, t4, c1 * c2 * r * c3 * c4)
                h1.record(lhs == rhs, (a, b, c, d, t.internals), f"{lhs} != {rhs}")
                # c_{a⊗b, c} = (c_{a,c} ⊗ id) (id ⊗ c_{b,c})
                rhs = braid(C, braid(C, x, 1), 0)
                lhs = {}
                for c1, t1 in fuse_pair(C, t, 0):
                    g = t1.leaves[0]
                    for c2, t2 in fuse_pair(C, t1, 0):
                        r = C.R(g, c, t2.leaves[0])
                        for c3, t3 in split_leaf(C, t2, 0, c, g):
                            for c4, t4 in split_leaf(C, t3, 1, a, b):
                                vec_add(lhs, t4, c1 * c2 * r * c3 * c4)
                h2.record(lhs == rhs, (a, b, c, d, t.internals), f"{lhs} != {rhs}")
    return h1, h2


def _ribbon(C: Category, W) -> CheckResult:
    res = CheckResult("ribbon")
    for a, b in product(W, W):
        for c in C.fuse(a, b):
            lhs = C.R(a, b, c) * C.R(b, a, c)
            rhs = C.twist(c) / (C.twist(a) * C.twist(b))
            res.record(lhs == rhs, (a, b, c), _ne(lhs, rhs))
    return res


def twist_trace(C: Category, a: int) -> Scalar:
    """Right partial trace of c_{a,a}; equals θ_a in a ribbon category."""
    leaf = {make_tree((a,), (a,)): ONE}
    x = insert_coev(C, leaf, 1, a)
    x = braid(C, x, 0)
    x = apply_ev_right(C, x, 1)
    return x.get(make_tree((a,), (a,)), ZERO)


def snake_scalars(C: Category, a: int) -> tuple[Scalar, Scalar]:
    """The two zigzag composites on ``a`` as multiples of id_a.

    First: (id_a ⊗ ev_a)(coev_a ⊗ id_a). Second: (ev_{ā} ⊗ id_a)(id_a ⊗ coev_{ā}).
    """
    leaf_t = make_tree((a,), (a,))
    leaf = {leaf_t: ONE}
    x = apply_ev(C, insert_coev(C, leaf, 0, a), 1)
    y = apply_ev(C, insert_coev(C, leaf, 1, C.dual(a)), 0)
    return x.get(leaf_t, ZERO), y.get(leaf_t, ZERO)


def _tier2_extra(C: Category, W) -> list[CheckResult]:
    trace = CheckResult("twist_trace")
    zig = CheckResult("zigzag")
    piv = CheckResult("pivotal_rotation")
    for a in W:
        tr = twist_trace(C, a)
        trace.record(tr == C.twist(a), (a,), _ne(tr, C.twist(a)))
        s1, s2 = snake_scalars(C, a)
        zig.record(s1 == ONE, (a, "left"), _ne(s1, 1))
        zig.record(s2 == ONE, (a, "right"), _ne(s2, 1))
    skipped = 0
    for a, b in product(W, W):
        for c in C.fuse(a, b):
            word = (a, b, C.dual(c))
            try:
                for t in fusion_tree_basis(C, word, I):
                    x = {t: ONE}
                    for _ in range(3):
                        x = rotate(C, x)
                    piv.record(x == {t: ONE}, (a, b, c), f"rho^3 = {x}")
            except WindowExhausted:
                # intermediate channels of the rotation leave the cap
                skipped += 1
    if skipped:
        piv.detail = piv.detail or f"{skipped} triples skipped: rotation leaves the window cap"
    return [trace, zig, piv]


def check_axioms(C: Category) -> AxiomReport:
    """Verify everything the declared tier provides; failures are report entries."""
    W = tuple(C.window)
    rep = AxiomReport(C.name, W, C.tier)
    rep.checks.extend(_structural(C, W))
    if C.tier >= 1:
        rep.checks.extend(_tier1(C, W))
    if C.tier >= 2:
        mf = CheckResult("multiplicity_free")
        for i, j in product(W, W):
            m = max(C.fuse(i, j).values(), default=0)
            mf.record(m <= 1, (i, j), f"multiplicity {m}")
        rep.checks.append(mf)
        rep.checks.append(_unit_gauge(C, W))
        rep.checks.append(_pentagon(C, W))
        rep.checks.extend(_hexagons(C, W))
        rep.checks.append(_ribbon(C, W))
        rep.checks.extend(_tier2_extra(C, W))
    return rep
