import json
from importlib import resources

import pytest
from hypothesis import given, strategies as st

from grothvex import bubbling as bb
from grothvex.bubbling import BubblingDiagram, Square
from grothvex.core import (
    Diagram,
    Permutation,
    dominated_subsets,
    length,
    rothe_diagram,
    vexillary_permutations,
)
from grothvex.poly import grothendieck

W1423 = Permutation.parse("1423")
BIG = Permutation.parse("178925(10)346")


def seed1423():
    return bb.rothe_bubbling(W1423)


def vex_upto(n):
    return [w for k in range(1, n + 1) for w in vexillary_permutations(k)]


def test_rothe_bubbling_examples(P):
    d = seed1423()
    assert d.squares == {Square(2, 2, 1, False), Square(2, 3, 1, False)}
    assert not bb.rothe_bubbling(P("1234")).squares
    d = bb.rothe_bubbling(P("321"))
    assert len(d.live_cells()) == 3 and {s.rank for s in d.squares} == {0}


def test_bubble_examples():
    d = bb.bubble(seed1423(), 2, 3)
    assert d.squares == {Square(1, 3, 0, False), Square(2, 2, 1, False)}
    d = bb.bubble(bb.bubble(seed1423(), 2, 2), 2, 3)
    assert d.squares == {Square(1, 2, 0, False), Square(1, 3, 0, False)}


def test_k_bubble_examples():
    d = bb.k_bubble(seed1423(), 2, 3)
    assert d.squares == {Square(1, 3, 0, False), Square(2, 3, 1, True), Square(2, 2, 1, False)}
    # the two squares of D(1423) are linked, so only one can be K-bubbled
    with pytest.raises(bb.IllegalMove):
        bb.k_bubble(d, 2, 2)


def test_illegal_moves():
    d = bb.k_bubble(seed1423(), 2, 3)
    with pytest.raises(bb.IllegalMove):
        bb.bubble(d, 2, 3)  # dead square
    top = bb.bubble(seed1423(), 2, 3)
    with pytest.raises(bb.IllegalMove):
        bb.k_bubble(top, 1, 3)
    with pytest.raises(bb.IllegalMove):
        bb.bubble(top, 1, 3)
    with pytest.raises(bb.IllegalMove):
        bb.bubble(seed1423(), 3, 3)  # empty cell


def test_enumerate_bd_1423():
    family = bb.enumerate_bd(seed1423())
    assert len(family) == 8
    assert {d.weight() for d in family} == {
        (0, 2, 0, 0), (1, 1, 0, 0), (2, 0, 0, 0), (1, 2, 0, 0), (2, 1, 0, 0)
    }
    assert {d.weight() for d in family} == grothendieck(W1423).support()


def test_enumerate_bd_trivial_and_bounded(P):
    empty = bb.rothe_bubbling(P("123"))
    assert bb.enumerate_bd(empty) == {empty}
    with pytest.raises(bb.BoundExceeded):
        bb.enumerate_bd(seed1423(), max_states=3)


def test_closure_defined_for_any_seed(P):
    # the move closure needs no pattern condition; only the theorems do
    family = bb.bd(P("2143"))
    assert bb.rothe_bubbling(P("2143")) in family


def test_linking():
    assert bb.linking_key(2, 1) == bb.linking_key(2, 1)
    assert bb.linking_key(3, 0) == bb.linking_key(5, 2) == 3
    classes = bb.linking_classes(bb.rothe_bubbling(BIG))
    assert any({(6, 3), (6, 4), (7, 6)} <= set(c) for c in classes.values())


def test_invalid_diagrams():
    with pytest.raises(ValueError):
        BubblingDiagram.build(3, 3, {(2, 2): 0}, {(1, 2): 0})  # dead with nothing above
    with pytest.raises(ValueError):
        BubblingDiagram.build(3, 3, {(1, 2): 0}, {(2, 2): 0})  # dead not linked
    with pytest.raises(ValueError):
        BubblingDiagram.build(2, 2, {(1, 1): -1})


def test_admissibility_examples():
    seed = seed1423()
    for d in bb.enumerate_bd(seed):
        assert bb.is_admissible(seed, d.cells(), d.dead_cells())
    # dead squares only, no live square anywhere
    kb = bb.k_bubble(seed, 2, 3)
    assert not bb.is_admissible(kb, kb.dead_cells(), kb.dead_cells())
    res = bb.is_admissible(seed, {(1, 2), (1, 3), (2, 2), (2, 3)}, {(2, 2), (2, 3)})
    assert not res and res.condition == 5


def test_admissible_targets_match_reachable():
    seed = seed1423()
    reach = {(d.cells(), d.dead_cells()) for d in bb.enumerate_bd(seed)}
    assert bb.admissible_targets(seed) == reach


def test_infer_ranks_recovers_members():
    seed = seed1423()
    for d in bb.enumerate_bd(seed):
        assert bb.infer_ranks(seed, d.cells(), d.dead_cells()) == d


def test_canonical_sequence_examples():
    seed = seed1423()
    seq = bb.canonical_sequence(seed, seed.cells(), seed.dead_cells())
    assert all(d == seed for d in seq) and len(seq) == seed.n + 1
    target = bb.k_bubble(seed, 2, 3)
    seq = bb.canonical_sequence(seed, target.cells(), target.dead_cells())
    assert seq[-1] == target
    assert len({d for d in seq}) == 2  # one K-bubble at row 2
    with pytest.raises(bb.ContractViolation):
        bb.canonical_sequence(seed, {(1, 2), (1, 3), (2, 2), (2, 3)}, {(2, 2), (2, 3)})


def test_canonical_steps_are_moves():
    seed = seed1423()
    for d in bb.enumerate_bd(seed):
        seq = bb.canonical_sequence(seed, d.cells(), d.dead_cells())
        assert seq[-1] == d
        for a, b in zip(seq, seq[1:]):
            assert a == b or b in bb.enumerate_bd(a)


def test_distinguished_examples(P):
    assert bb.distinguished_squares(W1423).cells() == [(2, 2)]
    assert not bb.distinguished_squares(P("1234")).cells()
    assert bb.distinguished_squares(P("146235")).cells() == [(3, 2), (3, 5)]
    with pytest.raises(bb.NotVexillary):
        bb.distinguished_squares(P("2143"))


def test_d_top_examples(P):
    top = bb.d_top(W1423)
    assert top.squares == {Square(1, 2, 0, False), Square(2, 2, 1, True), Square(2, 3, 1, False)}
    assert top.weight() == (1, 2, 0, 0)
    assert bb.f_top(W1423) == (0, 1, 0, 0)
    assert not bb.d_top(P("1234")).squares


def test_locked_large_example():
    lock = json.loads(
        resources.files("grothvex").joinpath("golden", "locked_178925_10_346.json").read_text()
    )
    assert [list(c) for c in bb.prec_order(BIG)] == lock["prec_order"]
    assert [list(c) for c in bb.distinguished_squares(BIG).cells()] == lock["distinguished"]
    assert bb.d_top(BIG).to_json() == lock["d_top"]


def test_sbd_examples(P):
    sbd = bb.enumerate_sbd(W1423)
    assert len(sbd) == 6
    seed = seed1423()
    A = bb.distinguished_squares(W1423).by_column()
    assert len(bb._column_states(seed, 2, A[2])) == 3
    assert len(bb._column_states(seed, 3, None)) == 2
    assert bb.enumerate_sbd(P("123")) == {bb.rothe_bubbling(P("123"))}
    assert len(bb.enumerate_sbd(P("146235"))) == 84


@pytest.mark.parametrize("n", range(1, 6))
def test_sbd_is_filtered_bd(n):
    for w in vexillary_permutations(n):
        A = bb.distinguished_squares(w)
        family = bb.bd(w)
        assert bb.enumerate_sbd(w) == {d for d in family if bb.is_sbd_member(d, A)}
        assert {d.weight() for d in bb.enumerate_sbd(w)} == {d.weight() for d in family}


def test_d_f_examples(P):
    D, _ = rothe_diagram(W1423)
    assert bb.d_f(W1423, (0, 0, 0, 0)) == D
    assert bb.d_f(W1423, bb.f_top(W1423)).columns()[1:3] == [frozenset({1, 2}), frozenset({2})]
    assert bb.d_f(W1423, bb.f_top(W1423)).cells == bb.d_top(W1423).cells()
    with pytest.raises(bb.ContractViolation):
        bb.d_f(W1423, (0, 2, 0, 0))


def test_remove_dead_examples():
    d = bb.k_bubble(seed1423(), 2, 3)
    got = bb.remove_dead_check(W1423, d, 2)
    assert got.weight() == (1, 1, 0, 0) and not got.dead_cells()
    assert got in {bb.bubble(seed1423(), 2, 3), bb.bubble(seed1423(), 2, 2)}
    with pytest.raises(bb.ContractViolation):
        bb.remove_dead_check(W1423, seed1423(), 3)


def test_top_witness_dominates():
    for d in bb.bd(W1423):
        t = bb.top_witness(W1423, d)
        assert t.dead_cells() == bb.d_top(W1423).dead_cells()
        assert all(a <= b for a, b in zip(d.weight(), t.weight()))


@pytest.mark.parametrize("n", range(1, 6))
def test_dead_count_of_top_is_degree_gap(n):
    for w in vexillary_permutations(n):
        assert sum(bb.f_top(w)) == grothendieck(w).degree() - length(w)


def test_json_and_render():
    d = bb.k_bubble(seed1423(), 2, 3)
    assert BubblingDiagram.from_json(d.to_json()) == d
    lines = d.render().splitlines()
    assert len(lines) == 4
    assert "L0" in lines[0] and "d1" in lines[1] and "L1" in lines[1]


@given(st.sampled_from(vex_upto(5)), st.data())
def test_random_walks_stay_admissible(w, data):
    seed = bb.rothe_bubbling(w)
    d = seed
    for _ in range(data.draw(st.integers(0, 6))):
        nxt = [x for _, _, x in bb.successors(d)]
        if not nxt:
            break
        d = data.draw(st.sampled_from(nxt))
        assert bb.is_admissible(seed, d.cells(), d.dead_cells())
        # weights only move up
        assert bb.infer_ranks(seed, d.cells(), d.dead_cells()) == d
