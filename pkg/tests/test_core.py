import itertools

import pytest
from hypothesis import given

from grothvex.core import (
    Diagram,
    Permutation,
    all_permutations,
    diagram_leq,
    dominated_subsets,
    inverse,
    is_vexillary,
    length,
    rothe_diagram,
    subset_leq,
    weight,
)

from conftest import permutations


def contains_2143(w):
    e = w.entries
    for a, b, c, d in itertools.combinations(range(len(e)), 4):
        if e[b] < e[a] < e[d] < e[c]:
            return True
    return False


def test_parse_compact_and_parenthesized():
    assert Permutation.parse("14253").entries == (1, 4, 2, 5, 3)
    w = Permutation.parse("2168534(10)79")
    assert w.entries == (2, 1, 6, 8, 5, 3, 4, 10, 7, 9)
    assert str(w) == "2168534(10)79"
    assert Permutation.parse("3, 1, 2").entries == (3, 1, 2)


@pytest.mark.parametrize("bad", ["", "1x2", "113", "(10)", "12(3"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        Permutation.parse(bad)


@pytest.mark.parametrize("w, inv", [("1234", "1234"), ("1423", "1342"), ("2143", "2143")])
def test_inverse_examples(P, w, inv):
    assert inverse(P(w)) == P(inv)


@given(permutations(max_n=7))
def test_inverse_composes_to_identity(w):
    assert w.compose(inverse(w)) == Permutation.identity(w.n)
    assert inverse(inverse(w)) == w


@pytest.mark.parametrize("w, ell", [("1234", 0), ("4321", 6), ("1423", 2)])
def test_length_examples(P, w, ell):
    assert length(P(w)) == ell


@given(permutations(max_n=7))
def test_length_counts_adjacent_swaps(w):
    # bubble sort performs exactly one swap per inversion
    e, swaps = list(w.entries), 0
    for i in range(len(e)):
        for j in range(len(e) - 1 - i):
            if e[j] > e[j + 1]:
                e[j], e[j + 1] = e[j + 1], e[j]
                swaps += 1
    assert swaps == length(w)


@pytest.mark.parametrize("w, vex", [("2143", False), ("14253", True), ("2168534(10)79", False)])
def test_vexillary_examples(P, w, vex):
    assert is_vexillary(P(w)) is vex


@pytest.mark.parametrize("n", range(1, 8))
def test_vexillary_matches_pattern_scan(n):
    for w in all_permutations(n):
        assert is_vexillary(w) is not contains_2143(w)


def test_rothe_examples(P):
    D, r = rothe_diagram(P("1234"))
    assert not D.cells and not r
    D, r = rothe_diagram(P("1423"))
    assert D.cells == {(2, 2), (2, 3)} and r == {(2, 2): 1, (2, 3): 1}
    D, r = rothe_diagram(P("321"))
    assert D.cells == {(1, 1), (1, 2), (2, 1)} and set(r.values()) == {0}


@given(permutations(max_n=7))
def test_rothe_size_is_length(w):
    D, _ = rothe_diagram(w)
    assert len(D) == length(w)


def test_subset_leq_examples():
    assert subset_leq({1, 3}, {2, 3})
    assert not subset_leq({1}, {1, 2})
    assert not subset_leq({2, 4}, {1, 4})


def test_diagram_leq():
    empty = Diagram(3, 2, frozenset())
    assert diagram_leq(empty, empty)
    A = Diagram.from_columns(3, [{1}, {1, 2}])
    B = Diagram.from_columns(3, [{2}, {1, 3}])
    assert diagram_leq(A, B)
    assert not diagram_leq(B, A)
    with pytest.raises(ValueError):
        diagram_leq(A, Diagram(3, 3, frozenset()))


def test_weight(P):
    assert weight(Diagram(4, 4, frozenset())) == (0, 0, 0, 0)
    assert weight(rothe_diagram(P("1423"))[0]) == (0, 2, 0, 0)
    assert weight(Diagram(4, 4, frozenset({(1, 2), (2, 2), (2, 3)}))) == (1, 2, 0, 0)


def test_dominated_subsets_bruteforce():
    for S in [{2, 4}, {3}, {1, 2, 5}, set()]:
        expect = [
            frozenset(c)
            for c in itertools.combinations(range(1, 6), len(S))
            if subset_leq(c, S)
        ]
        assert sorted(map(sorted, dominated_subsets(S, 5))) == sorted(map(sorted, expect))


def test_diagram_json_round_trip():
    D = Diagram(4, 3, frozenset({(1, 2), (3, 3)}))
    assert Diagram.from_json(D.to_json()) == D
    with pytest.raises(ValueError):
        Diagram(2, 2, frozenset({(3, 1)}))
