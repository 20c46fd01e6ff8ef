from __future__ import annotations

import itertools
import random
import threading

import pytest

from openmf.category import (
    CategoryError,
    FusionTreeVector,
    TierError,
    WindowExhausted,
    builtin,
    check_axioms,
    f_move,
    f_move_inverse,
    fusion_tree_basis,
    hom_dim,
    hom_dim_brute,
    load_category,
    r_move,
)
from openmf.category.io import DocumentError
from openmf.category.trees import make_tree
from openmf.cli import DATA_DIR
from openmf.coeff import ONE, ZERO, Scalar, mat_identity, mat_mul, v


def kl_int(n):
    # unsigned quantum integer (v^{2n} - v^{-2n}) / (v^2 - v^{-2})
    return sum((v ** (2 * (n - 1 - 2 * k)) for k in range(n)), ZERO)


def loop(n):
    return (-1) ** n * kl_int(n + 1)


# -- loading ----------------------------------------------------------------------------


def test_z2_document_is_tier2():
    C = load_category(DATA_DIR / "Z2.json")
    assert C.tier == 2
    assert check_axioms(C).passed


def test_fib_document_without_fr_is_tier0(fib):
    C = load_category(DATA_DIR / "Fib.json")
    assert C.tier == 0
    assert C.fuse(1, 1) == {0: 1, 1: 1}


def test_tl_builtin_level4_is_tier2():
    C = load_category({"generator": {"name": "TL", "level": 4}})
    assert C.tier == 2
    assert [C.label_name(i) for i in C.window] == ["V0", "V1", "V2", "V3", "V4"]


def _doc(**kw):
    doc = {"labels": ["0", "1"], "tier": 1, "fusion": [["1", "1", "0", 1]],
           "dual": {"0": "0", "1": "1"}, "twist": {"0": "1", "1": "1"}, "qdim": {"0": "1", "1": "1"}}
    doc.update(kw)
    return doc


@pytest.mark.parametrize("doc, code", [
    (_doc(dual={"0": "0"}), "missing_dual"),
    (_doc(twist={"0": "v", "1": "1"}), "twist_unit"),
    (_doc(labels=["0", "1", "2"], fusion=[["1", "2", "0", 1], ["2", "1", "0", 1], ["2", "2", "0", 1]],
          dual={"0": "0", "1": "2", "2": "2"}, twist={"0": "1", "1": "1", "2": "1"},
          qdim={"0": "1", "1": "1", "2": "1"}), "dual_not_involutive"),
    (_doc(fusion=[["1", "x", "0", 1]]), "unknown_label"),
    (_doc(tier=2), "missing_FR"),
])
def test_load_diagnostics_are_distinct(doc, code):
    with pytest.raises(DocumentError) as err:
        load_category(doc)
    assert err.value.code == code


# -- fusion and counting -------------------------------------------------------------------


def test_fuse_examples(z2, fib):
    assert z2.fuse(1, 1) == {0: 1}
    assert fib.fuse(1, 1) == {0: 1, 1: 1}
    C = builtin("TL", 5)
    assert C.fuse(2, 3) == {1: 1, 3: 1, 5: 1}


def test_window_exhaustion_reports_level(tl2):
    C = builtin("TL", 2)
    with pytest.raises(WindowExhausted) as err:
        C.fuse(8, 1)
    assert err.value.needed_level == 3
    assert C.fuse(8, 0) == {8: 1}  # within the cap 4L


def test_hom_dim_examples(z2, fib, tl2):
    assert hom_dim(fib, [1, 1, 1, 1], 0) == 2
    assert hom_dim(z2, [1, 1, 1], 0) == 0
    assert hom_dim(tl2, [1, 1, 1, 1], 0) == 2


@pytest.mark.parametrize("name, level", [("Z2", None), ("Z3", None), ("Fib", None), ("TL", 2)])
def test_hom_dim_dp_matches_brute_force(name, level):
    C = builtin(name, level)
    W = list(C.window)
    for n in range(1, 6):
        for word in itertools.product(W, repeat=n):
            for root in W:
                assert hom_dim(C, list(word), root) == hom_dim_brute(C, list(word), root)


@pytest.mark.parametrize("name, level", [("Z2", None), ("Z3", None), ("Fib", None), ("TL", 3)])
def test_unit_channel_multiplicity_free(name, level):
    C = builtin(name, level)
    for x in C.window:
        assert hom_dim(C, [x, C.dual(x)], 0) == 1


def test_basis_examples(z2, fib):
    trees = fusion_tree_basis(fib, [1, 1, 1], 1)
    assert [t.internals for t in trees] == [(0,), (1,)]
    assert len(fusion_tree_basis(z2, [1, 1], 0)) == 1
    (empty,) = fusion_tree_basis(z2, [], 0)
    assert empty.leaves == ()


def test_basis_length_equals_hom_dim(tl3):
    for word in itertools.product(range(4), repeat=3):
        for root in range(4):
            assert len(fusion_tree_basis(tl3, list(word), root)) == hom_dim(tl3, list(word), root)


def test_concurrent_window_extension_is_idempotent():
    C = builtin("TL", 3)
    labels = list(range(13))

    def work():
        for a in labels:
            for b in labels[:4]:
                if a + b <= 12:
                    C.fuse(a, b)

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert C.extent == 12
    assert C.fuse(12, 0) == {12: 1}


# -- F and R data ---------------------------------------------------------------------------


def test_tl_f_symbol_hand_oracle(tl3):
    # id on V1 ⊗ V1 splits as (1/Δ_1) cup-cap plus the Jones-Wenzl projector
    Fm = tl3.F(1, 1, 1, 1)
    assert Fm.es == (0, 2) and Fm.fs == (0, 2)
    assert Fm.mat[0][0] == loop(1).inv()
    assert Fm.mat[0][0] == -v**2 / (v**4 + 1)
    assert Fm.mat[1][1] == v**2 / (v**4 + 1)
    assert Fm.mat[1][0] == loop(2) / loop(1) ** 2
    assert Fm.mat[0][1] == ONE


def test_f_matrices_invertible(tl2):
    W = list(tl2.window)
    for a, b, c, d in itertools.product(W, repeat=4):
        Fm = tl2.F(a, b, c, d)
        if not Fm.es:
            continue
        Fi = tl2.Finv(a, b, c, d)
        assert mat_mul([list(r) for r in Fm.mat], [list(r) for r in Fi.mat]) == mat_identity(len(Fm.es))


def test_f_move_trivial_for_z2(z2):
    for t in fusion_tree_basis(z2, [1, 1, 1, 1], 0):
        out = f_move(z2, FusionTreeVector({t: ONE}), 1)
        assert list(out.coeffs.values()) == [ONE]


def test_f_move_matches_loaded_table(tl3):
    Fm = tl3.F(1, 1, 1, 1)
    for ei, e in enumerate(Fm.es):
        x = FusionTreeVector({make_tree((1, 1, 1), (1, e, 1)): ONE})
        y = f_move(tl3, x, 1)
        for fi, f in enumerate(Fm.fs):
            assert y.coeffs.get(make_tree((1, 1, 1), (1, f, 1)), ZERO) == Fm.mat[ei][fi]


def test_f_move_inverse_on_random_vectors(tl3):
    rng = random.Random(7)
    for _ in range(20):
        word = [rng.randint(0, 3) for _ in range(4)]
        basis = fusion_tree_basis(tl3, word, rng.choice([0, 1, 2]))
        if not basis:
            continue
        x = FusionTreeVector({t: Scalar(rng.randint(-3, 3)) + v ** rng.randint(-2, 2) for t in basis})
        for pos in range(3):
            assert f_move_inverse(tl3, f_move(tl3, x, pos)) == x


def test_r_move_trivial_for_z2(z2):
    t = make_tree((1, 1), (1, 0))
    assert r_move(z2, FusionTreeVector({t: ONE}), 0).coeffs == {t: ONE}


def test_r_move_eigenvalues_tl(tl3):
    # documented convention R^{ab}_c = (-1)^{(a+b-c)/2} v^{(c(c+2) - a(a+2) - b(b+2))/2}
    for c, expected in ((0, -(v**-3)), (2, v)):
        t = make_tree((1, 1), (1, c))
        assert r_move(tl3, FusionTreeVector({t: ONE}), 0).coeffs == {t: expected}
        assert tl3.R(1, 1, c) == expected


def test_channelwise_ribbon_relation(tl3):
    W = list(tl3.window)
    for i, j in itertools.product(W, W):
        for k in tl3.fuse(i, j):
            if k > 3:
                continue
            t = make_tree((i, j), (i, k))
            x = FusionTreeVector({t: ONE})
            twice = r_move(tl3, r_move(tl3, x, 0), 0)
            assert twice.coeffs == {t: tl3.twist(k) / (tl3.twist(i) * tl3.twist(j))}


# -- axiom checks --------------------------------------------------------------------------


def test_check_axioms_z2_and_tl3(z2, tl3):
    assert check_axioms(z2).passed
    rep = check_axioms(tl3)
    assert rep.passed
    assert rep["pentagon"].checked > 0


def test_check_axioms_catches_f_mutation():
    C = load_category({"generator": {"name": "TL", "level": 3},
                       "overrides": {"F": [["V1", "V1", "V1", "V1", "V2", "V2", "v^3/(v^4 + 1)"]]}})
    rep = check_axioms(C)
    assert not rep["pentagon"].passed
    assert rep["pentagon"].witness is not None


def test_tier_gate(fib):
    with pytest.raises(TierError):
        f_move(fib, FusionTreeVector({make_tree((1, 1), (1, 0)): ONE}), 0)


def test_unknown_label_name(z2):
    with pytest.raises(CategoryError):
        z2.label_id("7")
