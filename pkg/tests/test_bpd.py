import pytest

from grothvex.bpd import (
    Bpd,
    MarkedBpd,
    blank_rank,
    bpds,
    decode_permutation,
    enumerate_all,
    enumerate_mbpds,
    is_reduced,
    mbpd_weight,
    rothe_bpd,
    weigandt_sum,
)
from grothvex.core import BoundExceeded, Permutation, all_permutations, rothe_diagram
from grothvex.poly import MultiPoly, grothendieck


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 7), (4, 42), (5, 429)])
def test_tiling_counts(n, count):
    # alternating sign matrix counts
    assert sum(1 for _ in enumerate_all(n)) == count


def test_small_rothe_bpds(P):
    R12 = rothe_bpd(P("12"))
    assert R12.cells_of("D") == {(1, 1), (2, 2)} and not R12.blanks()
    R21 = rothe_bpd(P("21"))
    assert R21.cells_of("D") == {(1, 2), (2, 1)}
    assert R21.cells_of("X") == {(2, 2)}
    assert R21.blanks() == {(1, 1)}
    assert decode_permutation(R12) == P("12")
    assert decode_permutation(Bpd(1, [["D"]])) == P("1")
    assert is_reduced(Bpd(1, [["D"]]))


@pytest.mark.parametrize("n", range(1, 6))
def test_rothe_round_trip_and_blanks(n):
    for w in all_permutations(n):
        R = rothe_bpd(w)
        assert decode_permutation(R) == w
        assert is_reduced(R)
        D, ranks = rothe_diagram(w)
        assert R.blanks() == D.cells
        for cell in D.cells:
            assert blank_rank(R, cell) == ranks[cell]


def test_blank_rank_edges():
    assert blank_rank(rothe_bpd(Permutation.parse("21")), (1, 1)) == 0
    for w in all_permutations(4):
        R = rothe_bpd(w)
        for i, j in R.blanks():
            if i == 1 or j == 1:
                assert blank_rank(R, (i, j)) == 0


def test_double_crossings_first_appear_at_n4():
    assert all(is_reduced(P) for P in enumerate_all(3))
    bad = [P for P in enumerate_all(4) if not is_reduced(P)]
    assert len(bad) == 1
    assert len(bad[0].cells_of("X")) >= 2


def test_every_tiling_decodes_to_some_permutation():
    perms = {decode_permutation(P) for P in enumerate_all(4)}
    assert perms == set(all_permutations(4))


def test_bpd_sets(P):
    assert bpds(P("12")) == [rothe_bpd(P("12"))]
    (only,) = bpds(P("21"))
    assert not only.up_elbows()
    assert len(list(enumerate_mbpds(P("21")))) == 1


def test_mbpd_weights(P):
    assert mbpd_weight(MarkedBpd(rothe_bpd(P("12")), frozenset())) == (0, 0)
    assert mbpd_weight(MarkedBpd(rothe_bpd(P("21")), frozenset())) == (1, 0)
    for w in all_permutations(4):
        for m in enumerate_mbpds(w):
            blanks = [0] * 4
            for r, _ in m.bpd.blanks():
                blanks[r - 1] += 1
            assert all(a >= b for a, b in zip(mbpd_weight(m), blanks))


def test_marks_must_be_up_elbows(P):
    with pytest.raises(ValueError):
        MarkedBpd(rothe_bpd(P("21")), frozenset({(1, 1)}))


def test_weigandt_small(P):
    assert weigandt_sum(P("12")) == MultiPoly.one(2)
    assert weigandt_sum(P("21")) == MultiPoly.var(1, 2)


@pytest.mark.parametrize("n", range(1, 5))
def test_weigandt_matches_grothendieck(n):
    for w in all_permutations(n):
        assert weigandt_sum(w) == grothendieck(w)


def test_bound_enforced(P):
    with pytest.raises(BoundExceeded):
        bpds(P("12345678"))
    with pytest.raises(BoundExceeded):
        list(enumerate_all(9, bound=20))


def test_invalid_grids():
    with pytest.raises(ValueError):
        Bpd(2, [["B", "B"], ["B", "B"]])
    with pytest.raises(ValueError):
        Bpd(2, [["D"]])


def test_json_round_trip(P):
    for m in enumerate_mbpds(P("1423")):
        assert MarkedBpd.from_json(m.to_json()) == m
