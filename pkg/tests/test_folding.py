import itertools
from collections import Counter

import pytest

from conftest import brute
from stampfold.folding import (
    LEFT,
    RIGHT,
    Arc,
    Folding,
    NotAFoldingError,
    arcs_of,
    brute_force_foldings,
    classify_ends,
    has_no_same_side_crossing,
    is_folding,
    leaf_out,
    satisfies_lemma,
)
from stampfold.perm import Permutation, complement, reverse, reverse_complement, roll


def arcset(arcs):
    return {(a.label_pair, a.lo, a.hi, a.side) for a in arcs}


def test_arcs_of_accordion():
    assert arcset(arcs_of((1, 2, 3, 4))) == {
        ((1, 2), 1, 2, RIGHT), ((2, 3), 2, 3, LEFT), ((3, 4), 3, 4, RIGHT)}


def test_arcs_of_nested():
    # positions of labels 1..4 in (1,4,3,2) are 1,4,3,2
    assert arcset(arcs_of((1, 4, 3, 2))) == {
        ((1, 2), 1, 4, RIGHT), ((2, 3), 3, 4, LEFT), ((3, 4), 2, 3, RIGHT)}


def test_arcs_of_single_stamp():
    assert arcs_of((1,)) == []


def test_arc_geometry():
    a = Arc((1, 2), 1, 4, RIGHT)
    assert a.encloses(2) and not a.encloses(4)
    assert a.crosses(Arc((3, 4), 2, 5, RIGHT))
    assert not a.crosses(Arc((2, 3), 2, 5, LEFT))
    assert not a.crosses(Arc((3, 4), 2, 3, RIGHT))


def test_1324_is_not_a_folding():
    assert not is_folding((1, 3, 2, 4))


def test_listing_reading_would_accept_crossing():
    # as a listing (2,4,1,3) makes arcs (1,2) and (3,4) cross on the right
    assert not is_folding((2, 4, 1, 3))


@pytest.mark.parametrize("n", range(1, 12))
def test_accordion_is_a_folding(n):
    assert is_folding(tuple(range(1, n + 1)))


@pytest.mark.parametrize("n, t", [(1, 1), (2, 2), (3, 6), (4, 16), (5, 50), (6, 144), (7, 462), (8, 1392)])
def test_brute_force_counts(n, t):
    # t(4) = 16 and t(5) = 5 r(5) = 50; the rest are n r(n) from the table
    assert len(brute(n)) == t


def test_brute_force_guard():
    with pytest.raises(ValueError):
        next(brute_force_foldings(10))
    assert len(list(brute_force_foldings(3, max_n=3))) == 6


def test_brute_force_is_lexicographic():
    listing = [f.listing for f in brute_force_foldings(5)]
    assert listing == sorted(listing)


def test_folding_constructor_validates():
    f = Folding([1, 4, 3, 2])
    assert f.positions == (1, 4, 3, 2)
    assert f.n == 4
    with pytest.raises(NotAFoldingError):
        Folding([1, 3, 2, 4])


def test_leaf_out_examples():
    assert leaf_out(Folding((1, 2, 3, 4)), "last")
    assert leaf_out(Folding((1, 2, 3, 4)), "first")
    # leaf 4 sits at position 3 inside the left arc (2,3) spanning 1..4
    assert not leaf_out(Folding((2, 1, 4, 3)), "last")
    with pytest.raises(ValueError):
        leaf_out(Folding((1, 2)), "middle")


def test_single_stamp_both_ends_out():
    e = classify_ends(Folding((1,)))
    assert e.leaf1_out and e.leafn_out


def _end_counts(n):
    c = Counter()
    for p in brute(n):
        e = classify_ends(p)
        c[e.leaf1_out, e.leafn_out] += 1
    return c


def test_leaf_n_out_aggregate_n5():
    c = _end_counts(5)
    assert c[True, True] + c[False, True] == 24
    assert c[True, False] + c[False, False] == 26


def test_classify_ends_aggregate_n4():
    c = _end_counts(4)
    assert (c[True, True], c[False, True], c[True, False], c[False, False]) == (6, 4, 4, 2)


def test_four_way_partition_n6():
    c = _end_counts(6)
    assert (c[True, True], c[False, True], c[False, False]) == (28, 38, 40)
    assert c[True, True] + 2 * c[False, True] + c[False, False] == 144


@pytest.mark.parametrize("n", range(1, 9))
def test_io_equals_oi(n):
    c = _end_counts(n)
    assert c[False, True] == c[True, False]


@pytest.mark.parametrize("n", range(1, 9))
def test_symmetric_foldings_have_matching_ends(n):
    for p in brute(n):
        if reverse_complement(Permutation(p)) == p:
            e = classify_ends(p)
            assert e.leaf1_out == e.leafn_out


@pytest.mark.parametrize("n", range(1, 9))
def test_criteria_agree_exhaustively(n):
    for p in itertools.permutations(range(1, n + 1)):
        assert satisfies_lemma(p) == has_no_same_side_crossing(p), p


@pytest.mark.parametrize("n", range(1, 9))
def test_closure_under_symmetry_and_roll(n):
    foldings = set(brute(n))
    for p in foldings:
        p = Permutation(p)
        assert reverse(p) in foldings
        assert complement(p) in foldings
        assert reverse_complement(p) in foldings
        assert roll(p) in foldings


@pytest.mark.parametrize("n", range(1, 9))
def test_roll_orbits_have_one_representative(n):
    foldings = set(brute(n))
    seen = set()
    for p in sorted(foldings):
        if p in seen:
            continue
        orbit = []
        q = Permutation(p)
        for _ in range(n):
            orbit.append(q)
            q = roll(q)
        assert len(set(orbit)) == n
        assert sum(1 for q in orbit if q[0] == 1) == 1
        seen.update(orbit)
    assert len(seen) == len(foldings)


@pytest.mark.parametrize("n", range(3, 9))
def test_non_foldings_stay_non_foldings_under_roll(n):
    foldings = set(brute(n))
    for p in itertools.islice(itertools.permutations(range(1, n + 1)), 2000):
        if p not in foldings:
            assert roll(Permutation(p)) not in foldings
