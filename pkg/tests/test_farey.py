import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import bfs_distances
from spinecensus.farey import (
    ROOT,
    InvalidSlope,
    InvalidTriangle,
    Slope,
    apply,
    farey_distance,
    flip,
    neighbours,
    path_to_root,
    translation_length,
    triangle,
)

DIST = bfs_distances(9)
R = ((1, 1), (0, 1))
L = ((1, 0), (1, 1))


def _mul(x, y):
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def _word(w):
    m = ((1, 0), (0, 1))
    for ch in w:
        m = _mul(m, R if ch == "R" else L)
    return m


def walks(draw_len=12):
    """Random non-backtracking walks from the root, as triangle lists."""
    return st.lists(st.integers(0, 1), min_size=1, max_size=draw_len).map(_walk)


def _walk(choices):
    path = [ROOT, neighbours(ROOT)[choices[0] % 3]]
    for c in choices[1:]:
        nxt = [t for t in neighbours(path[-1]) if t != path[-2]]
        path.append(nxt[c])
    return path


def test_slope_normalization():
    assert Slope.of(-2, -4) == Slope(1, 2)
    assert Slope.of(3, 0) == Slope(1, 0)
    assert str(Slope.parse("-6/4")) == "-3/2"
    assert Slope.parse("oo") == Slope(1, 0)
    with pytest.raises(InvalidSlope):
        Slope(2, 4)
    with pytest.raises(InvalidSlope):
        Slope.of(0, 0)


def test_triangle_check():
    assert triangle("0", "1", "oo") == ROOT
    with pytest.raises(InvalidTriangle):
        triangle("0", "2", "oo")
    with pytest.raises(InvalidTriangle):
        flip(ROOT, [Slope(0, 1)])


@settings(max_examples=200, deadline=None)
@given(walks(), st.integers(0, 2))
def test_flip_is_an_involution(path, i):
    t = path[-1]
    s = sorted(t)
    kept = [s[j] for j in range(3) if j != i]
    once = flip(t, kept)
    assert once != t
    assert flip(once, kept) == t


def test_ball_is_a_tree():
    # a 3-regular tree has 3 * (2^d - 1) + 1 nodes within distance d
    for d in range(10):
        assert sum(1 for v in DIST.values() if v <= d) == 3 * (2**d - 1) + 1


@settings(max_examples=200, deadline=None)
@given(walks(20))
def test_non_backtracking_walks_never_return(path):
    assert len(set(path)) == len(path)
    assert farey_distance(path[0], path[-1]) == len(path) - 1


def test_distance_matches_bfs():
    for t, d in DIST.items():
        assert farey_distance(ROOT, t) == d
        assert len(path_to_root(t)) == d + 1


def test_pairwise_distances_match_bfs():
    starts = [t for t, d in DIST.items() if d == 3][:6] + [ROOT]
    for a in starts:
        local = bfs_distances(5, start=a)
        for b, d in local.items():
            assert farey_distance(a, b) == d == farey_distance(b, a)


@settings(max_examples=200, deadline=None)
@given(walks(10), walks(10), walks(10))
def test_triangle_inequality(p, q, r):
    a, b, c = p[-1], q[-1], r[-1]
    assert farey_distance(a, c) <= farey_distance(a, b) + farey_distance(b, c)


@settings(max_examples=100, deadline=None)
@given(walks(8), walks(8), st.sampled_from([R, L, ((0, -1), (1, 0)), ((1, 0), (0, -1)), ((2, 1), (1, 1))]))
def test_matrices_act_by_isometries(p, q, m):
    a, b = p[-1], q[-1]
    assert farey_distance(apply(m, a), apply(m, b)) == farey_distance(a, b)


@pytest.mark.parametrize("word", ["RL", "RRL", "RLL", "RRLL", "RLRL", "RRRLRL", "RLLLLR"])
def test_translation_length_of_positive_words(word):
    m = _word(word)
    assert translation_length(m) == len(word)
    neg = tuple(tuple(-x for x in row) for row in m)
    assert translation_length(neg) == len(word)
    # conjugation does not move it
    s = ((0, -1), (1, 0))
    s_inv = ((0, 1), (-1, 0))
    assert translation_length(_mul(_mul(s, m), s_inv)) == len(word)


@pytest.mark.parametrize("m", [((1, 0), (0, 1)), ((0, -1), (1, 0)), ((0, -1), (1, 1)), ((-1, 0), (0, -1))])
def test_finite_order_has_zero_length(m):
    assert translation_length(m) == 0
