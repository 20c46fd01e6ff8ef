from __future__ import annotations

import itertools

import pytest

from openmf.blocks import (
    BlockError,
    annulus_flip,
    block_basis,
    block_dim,
    block_dim_by_excision,
    dehn_twist_enclosing,
    excision_check,
    rotate_disk,
)
from openmf.category import TierError, builtin, hom_dim, load_category
from openmf.coeff import ONE, ZERO
from openmf.surface import disjoint_union, disk, glue, make_surface


def fusion_count(C, word):
    """dim Hom(I, word) by summing products of fusion coefficients, left to right."""
    acc = {0: 1}
    for x in word:
        nxt = {}
        for c, m in acc.items():
            for k, n in C.fuse(c, x).items():
                nxt[k] = nxt.get(k, 0) + m * n
        acc = nxt
    return acc.get(0, 0)


def test_disk_dimension_is_hom_dim(tl3):
    for word in itertools.product(range(4), repeat=3):
        S = disk(3, labels={k + 1: f"V{w}" for k, w in enumerate(word)})
        assert block_dim(tl3, S).dimension == hom_dim(tl3, list(word), 0)


@pytest.mark.parametrize("name", ["Z2", "Z3", "Fib"])
def test_punctured_torus_closed_form(name):
    C = builtin(name)
    W = list(C.window)
    expected = sum(fusion_count(C, [C.dual(p), C.dual(q), p, q]) for p in W for q in W)
    assert block_dim(C, make_surface(1, 1)).dimension == expected


def test_examples(z2, fib):
    assert block_dim(z2, make_surface(1, 1)).dimension == 4
    assert block_dim(fib, make_surface(1, 1)).dimension == 5
    assert block_dim(fib, make_surface(0, 2)).dimension == 2


def test_annulus_with_interval(tl2):
    S = make_surface(0, 2, [[1], []], {1: "V2"})
    B = block_basis(tl2, S)
    assert B.dimension == 2 == block_dim(tl2, S).dimension
    assert [P for P, _ in B.basis] == [(1,), (2,)]


def test_truncation_report(tl2):
    assert block_dim(tl2, make_surface(0, 2)).stale
    D = block_dim(tl2, disk(2, labels={1: "V1", 2: "V1"}))
    assert D.level == 2 and not D.stale
    assert block_dim(builtin("Z2"), make_surface(0, 2)).level is None


def test_disconnected_product(z2):
    S = disjoint_union(make_surface(1, 1), disk(2, start=5, labels={5: "1", 6: "1"}))
    assert block_dim(z2, S).dimension == 4
    with pytest.raises(BlockError):
        block_basis(z2, S)


def test_parallel_matches_serial(tl3):
    S = make_surface(1, 1, [[1]], {1: "V2"})
    assert block_dim(tl3, S, jobs=4) == block_dim(tl3, S)
    assert block_basis(tl3, S, jobs=4).basis == block_basis(tl3, S).basis


def test_unlabelled_interval(z2):
    with pytest.raises(BlockError):
        block_dim(z2, disk(2))


def test_excision_recursion_matches_canonical_cut(z2):
    assert block_dim_by_excision(z2, disk(4), [(1, 3), (4, 2)]) == 4
    base = disk(5, labels={2: "0", 4: "0", 5: "1"})
    with pytest.raises(BlockError):
        block_dim_by_excision(z2, disk(5), [(1, 3)])
    assert block_dim_by_excision(z2, base, [(1, 3)]) == block_dim(z2, make_surface(0, 2, [[4, 5], [2]]),
                                                                  {2: "0", 4: "0", 5: "1"}).dimension


def test_excision_check(z2, fib):
    S = disk(4, labels={1: "1", 2: "1"})
    res = excision_check(z2, S, 3, 4)
    assert res.passed
    assert res.glued_dim == sum(res.cut_dims.values())
    res = excision_check(fib, disk(3, labels={1: "tau"}), 2, 3)
    assert res.passed and res.glued_dim == 1


def test_twist_single_position_is_theta(tl3):
    B = block_basis(tl3, disk(3, labels={1: "V1", 2: "V1", 3: "V2"}))
    T = dehn_twist_enclosing(tl3, B, 0, 0)
    n = B.dimension
    assert T.matrix == [[tl3.twist(1) if i == j else ZERO for j in range(n)] for i in range(n)]


def test_twist_whole_disk_is_identity(tl3):
    # the curve around the whole boundary of a disk bounds the unit channel
    B = block_basis(tl3, disk(4, labels={k: "V1" for k in range(1, 5)}))
    assert dehn_twist_enclosing(tl3, B, 0, 3).is_identity()
    T = dehn_twist_enclosing(tl3, B, 1, 2)
    assert T.is_invertible()
    assert (T @ dehn_twist_enclosing(tl3, B, 1, 2, inverse=True)).is_identity()


def test_twist_tier_gate(fib):
    C = load_category({"labels": ["0", "1"], "tier": 1, "fusion": [["1", "1", "0", 1]],
                       "dual": {"0": "0", "1": "1"}, "twist": {"0": "1", "1": "-1"}, "qdim": {"0": "1", "1": "1"}})
    B = block_basis(C, disk(3, labels={1: "1", 2: "1", 3: "0"}))
    assert dehn_twist_enclosing(C, B, 0, 1).is_identity()
    assert dehn_twist_enclosing(C, B, 0, 0).matrix == [[-ONE]]
    with pytest.raises(TierError):
        dehn_twist_enclosing(C, B, 1, 2)
    Bf = block_basis(fib, disk(2, labels={1: "tau", 2: "tau"}))
    with pytest.raises(TierError):
        dehn_twist_enclosing(fib, Bf, 0, 0)


def test_annulus_flip(tl2, fib):
    F = annulus_flip(tl2, block_basis(tl2, make_surface(0, 2)))
    assert [[str(x) for x in row] for row in F.matrix] == [["1", "0", "0"], ["0", "-1", "0"], ["0", "0", "1"]]
    assert F.power(2).is_identity()
    z3 = builtin("Z3")
    G = annulus_flip(z3, block_basis(z3, make_surface(0, 2)))
    assert G.power(2).is_identity() and not G.is_identity()
    with pytest.raises(BlockError):
        annulus_flip(tl2, block_basis(tl2, make_surface(0, 2, [[1], []], {1: "V2"})))


@pytest.mark.parametrize("name, level, obj", [("Z2", None, "0+1"), ("TL", 2, "V1"), ("TL", 2, "V0+V2")])
def test_rotation_has_order_n(name, level, obj):
    C = builtin(name, level)
    for n in range(2, 5):
        B = block_basis(C, disk(n, labels={k: obj for k in range(1, n + 1)}))
        if not B.dimension:
            continue
        R = rotate_disk(C, B)
        assert R.power(n).is_identity()


def test_rotation_requires_uniform_labels(tl2):
    with pytest.raises(BlockError):
        rotate_disk(tl2, block_basis(tl2, disk(2, labels={1: "V1", 2: "V1+V0"})))


def test_basis_coordinates_roundtrip(tl3):
    B = block_basis(tl3, make_surface(1, 1, [[1]], {1: "V2"}))
    coords = [ONE if k % 2 else ZERO for k in range(B.dimension)]
    assert B.coordinates(B.vectors(coords)) == coords
    assert len(B.to_json()) == B.dimension


def test_excision_joining_components_is_not_truncated(tl2):
    # the middle step joins the two disks; its coend runs past the window
    base = disjoint_union(disk(4), disk(3, start=5)).with_labels({3: "V0"})
    steps = [(4, 2), (6, 1), (5, 7)]
    S = base
    for a, b in steps:
        S = glue(S, a, b)
    for L in (2, 3, 4):
        C = builtin("TL", L)
        assert block_dim_by_excision(C, base, steps) == block_dim(C, S).dimension


def test_excision_check_joining_components(tl2):
    S = disjoint_union(disk(3, labels={2: "V2", 3: "V2"}), disk(3, start=4, labels={5: "V2", 6: "V2"}))
    res = excision_check(tl2, S, 1, 4)
    assert res.passed
    assert max(res.cut_dims) == 4  # V4 lies outside the level-2 window
    assert res.glued_dim == block_dim(tl2, glue(S, 1, 4)).dimension
