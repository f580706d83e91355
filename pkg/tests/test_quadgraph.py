import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_quadgraph_count
from spinecensus.quadgraph import (
    InvalidGraph,
    QuadGraph,
    canonical_code,
    code_text,
    enumerate_quadgraphs,
    filter_useful_bricks,
    filter_useful_closed,
    from_code_text,
)

# connected 4-regular multigraphs with loops and multiple edges
ALL_COUNTS = {1: 1, 2: 2, 3: 4, 4: 10, 5: 28, 6: 97, 7: 359}
USEFUL_CLOSED = {3: 2, 4: 4, 5: 12, 6: 39, 7: 138}
USEFUL_BRICKS = {3: 1, 4: 2, 5: 4, 6: 11, 7: 27}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_counts_match_brute_force(n):
    assert len(enumerate_quadgraphs(n)) == brute_quadgraph_count(n)


@pytest.mark.parametrize("n", sorted(ALL_COUNTS))
def test_counts_small(n):
    assert len(enumerate_quadgraphs(n)) == ALL_COUNTS[n]


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_nauty_and_own_certificate_agree(n):
    a = [g.code for g in enumerate_quadgraphs(n, use_nauty=True)]
    b = [g.code for g in enumerate_quadgraphs(n, use_nauty=False)]
    assert a == b


def test_output_is_sorted_and_distinct():
    codes = [g.code for g in enumerate_quadgraphs(6)]
    assert codes == sorted(codes)
    assert len(set(codes)) == len(codes)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.randoms(use_true_random=False))))
def test_canonical_code_ignores_labels(arg):
    n, r = arg
    g = r.choice(enumerate_quadgraphs(n))
    perm = list(range(n))
    r.shuffle(perm)
    assert canonical_code(g.relabel(perm)) == canonical_code(g)


def test_code_text_round_trip():
    for g in enumerate_quadgraphs(5):
        h = from_code_text(code_text(g.code))
        assert h.code == g.code
        assert str(h) == str(g)


@pytest.mark.parametrize("n", sorted(USEFUL_CLOSED))
def test_useful_filters(n):
    gs = enumerate_quadgraphs(n)
    assert sum(map(filter_useful_closed, gs)) == USEFUL_CLOSED[n]
    assert sum(map(filter_useful_bricks, gs)) == USEFUL_BRICKS[n]


def test_useful_filters_are_label_free():
    r = random.Random(7)
    for g in enumerate_quadgraphs(6):
        perm = list(range(6))
        r.shuffle(perm)
        h = g.relabel(perm)
        assert filter_useful_closed(h) == filter_useful_closed(g)
        assert filter_useful_bricks(h) == filter_useful_bricks(g)


def test_triple_edge_is_not_useful():
    g = QuadGraph(3, ((0, 1), (0, 1), (0, 1), (1, 2), (0, 2), (2, 2)))
    assert not filter_useful_closed(g)


@pytest.mark.parametrize(
    "n,edges",
    [
        (0, ()),
        (1, ((0, 0),)),
        (2, ((0, 0), (0, 0), (1, 1), (1, 1))),  # disconnected
        (2, ((0, 1), (0, 1), (0, 1), (0, 2))),  # out of range
    ],
)
def test_invalid_graphs(n, edges):
    with pytest.raises(InvalidGraph):
        QuadGraph(n, edges)


@pytest.mark.extended
@pytest.mark.parametrize("n,count", [(10, 48432), (11, 316520)])
def test_counts_extended(n, count):
    assert len(enumerate_quadgraphs(n)) == count
