"""Reviewed table of graph portions used by the useful-graph filters.

Closed census (Burton): a face-pairing graph of a minimal closed triangulation
with at least 3 tetrahedra contains none of

* ``triple-edge`` -- two vertices joined by three parallel edges;
* ``broken-double-ended-chain`` -- two disjoint one-ended chains whose end
  vertices are joined by exactly one edge;
* ``one-ended-chain-double-handle`` -- a one-ended chain whose end vertex is
  joined by single edges to two distinct vertices that are themselves joined
  by a double edge;

unless the whole graph is a ``double-ended-chain`` (a loop, a run of double
edges, a loop).

A *one-ended chain* of length k >= 0 is v0, ..., vk with a loop at v0 and a
double edge between v(i) and v(i+1); its end vk has two free edge ends.

Brick census (4-edge cuts): a side of a 4-edge cut is harmless when it is a
``single-vertex``, a ``bigon-chain`` (vertices joined in a path by double
edges) or a ``capped-bigon`` (a double edge whose ends are both joined to a
third vertex).

Each matcher takes the neighbour counters of a graph (``nbr[v][w]`` is the
number of edge ends at v leading to w; loops count twice).
"""

from __future__ import annotations

__all__ = [
    "BRICK_CUT_SIDES",
    "CLOSED_EXCEPTIONS",
    "CLOSED_FORBIDDEN",
    "one_ended_chains",
]


def one_ended_chains(nbr) -> list:
    """Every one-ended chain, as a vertex list ending at its free end."""
    chains = []
    for v0 in range(len(nbr)):
        if nbr[v0][v0] != 2:
            continue
        chain = [v0]
        while True:
            u = chain[-1]
            nxt = [w for w, c in nbr[u].items() if w != u and c == 2 and w not in chain]
            chains.append(list(chain))
            if not nxt:
                break
            chain.append(nxt[0])
    return chains


def _free_ends(nbr, chain) -> list:
    inside = set(chain)
    end = chain[-1]
    return [w for w, c in nbr[end].items() if w not in inside for _ in range(c)]


def triple_edge(nbr) -> bool:
    return any(c >= 3 for v in range(len(nbr)) for w, c in nbr[v].items() if w != v)


def broken_double_ended_chain(nbr) -> bool:
    chains = [c for c in one_ended_chains(nbr) if len(_free_ends(nbr, c)) == 2]
    for i, a in enumerate(chains):
        for b in chains[i + 1:]:
            if set(a) & set(b):
                continue
            if nbr[a[-1]][b[-1]] == 1:
                return True
    return False


def one_ended_chain_double_handle(nbr) -> bool:
    for chain in one_ended_chains(nbr):
        ends = _free_ends(nbr, chain)
        if len(ends) != 2 or ends[0] == ends[1]:
            continue
        x, y = ends
        if nbr[x][y] == 2:
            return True
    return False


def double_ended_chain(nbr) -> bool:
    """The whole graph is loop, double edges, loop."""
    n = len(nbr)
    if n < 2:
        return False
    for chain in one_ended_chains(nbr):
        if len(chain) == n and nbr[chain[-1]][chain[-1]] == 2:
            return True
    return False


CLOSED_FORBIDDEN = {
    "triple-edge": triple_edge,
    "broken-double-ended-chain": broken_double_ended_chain,
    "one-ended-chain-double-handle": one_ended_chain_double_handle,
}

CLOSED_EXCEPTIONS = {
    "double-ended-chain": double_ended_chain,
}


# -- sides of 4-edge cuts ----------------------------------------------------


def _inner_edges(nbr, side):
    """Multiset of edges inside ``side`` as {(u, w): multiplicity}, u <= w."""
    inner = {}
    for u in side:
        for w, c in nbr[u].items():
            if w in side and u <= w:
                inner[(u, w)] = c // 2 if u == w else c
    return inner


def _is_path_of_bigons(nbr, side) -> bool:
    inner = _inner_edges(nbr, side)
    if any(u == w or c != 2 for (u, w), c in inner.items()):
        return False
    if len(inner) != len(side) - 1:
        return False
    # a forest with |side|-1 edges is a tree; degree <= 2 makes it a path
    deg = {v: 0 for v in side}
    for u, w in inner:
        deg[u] += 1
        deg[w] += 1
    if any(d > 2 for d in deg.values()):
        return False
    seen, stack = {next(iter(side))}, [next(iter(side))]
    while stack:
        u = stack.pop()
        for (a, b) in inner:
            for x, y in ((a, b), (b, a)):
                if x == u and y not in seen:
                    seen.add(y)
                    stack.append(y)
    return len(seen) == len(side)


def single_vertex(nbr, side) -> bool:
    return len(side) == 1


def bigon_chain(nbr, side) -> bool:
    return len(side) >= 2 and _is_path_of_bigons(nbr, side)


def capped_bigon(nbr, side) -> bool:
    if len(side) != 3:
        return False
    for cap in side:
        rest = set(side) - {cap}
        x, y = sorted(rest)
        if nbr[x][y] == 2 and nbr[cap][x] == 1 and nbr[cap][y] == 1 and nbr[cap][cap] == 0:
            return True
    return False


BRICK_CUT_SIDES = {
    "single-vertex": single_vertex,
    "bigon-chain": bigon_chain,
    "capped-bigon": capped_bigon,
}
