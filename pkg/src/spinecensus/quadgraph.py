"""Connected 4-valent multigraphs: the face-pairing skeletons of triangulations.

A graph on ``n`` vertices has exactly ``2n`` edges; loops and parallel edges
are allowed (a loop contributes 2 to the degree of its vertex).  Graphs are
enumerated by vertex insertion: every connected 4-valent multigraph on
``n + 1 >= 2`` vertices arises from one on ``n`` vertices by removing two
edges ``{a, b}``, ``{c, d}`` and joining a new vertex to ``a, b, c, d``, or by
subdividing one edge and hanging a loop on the new vertex.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product

try:  # nauty is only used as a fast isomorphism certificate during generation
    import pynauty
except ImportError:  # pragma: no cover - exercised only without pynauty
    pynauty = None

__all__ = [
    "InvalidGraph",
    "QuadGraph",
    "canonical_code",
    "code_text",
    "edge_cuts",
    "enumerate_quadgraphs",
    "filter_useful_bricks",
    "filter_useful_closed",
    "forbidden_portions",
    "from_code",
    "from_code_text",
]

# printable alphabet for code_text; vertex labels must stay below 64
ALPHABET = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+-"


class InvalidGraph(ValueError):
    """Raised when edge data does not describe a connected 4-valent multigraph."""


@dataclass(frozen=True)
class QuadGraph:
    n: int
    edges: tuple = field()

    def __post_init__(self):
        edges = tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        object.__setattr__(self, "edges", edges)
        if self.n < 1:
            raise InvalidGraph("a QuadGraph needs at least one vertex")
        if len(edges) != 2 * self.n:
            raise InvalidGraph(f"expected {2 * self.n} edges, got {len(edges)}")
        deg = [0] * self.n
        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidGraph(f"edge {(u, v)} out of range")
            deg[u] += 1
            deg[v] += 1
        bad = [v for v in range(self.n) if deg[v] != 4]
        if bad:
            raise InvalidGraph(f"vertices {bad} do not have degree 4")
        if not _connected(self.n, edges):
            raise InvalidGraph("graph is not connected")

    @cached_property
    def adjacency(self) -> tuple:
        """Neighbour lists with multiplicity; a loop at v lists v twice."""
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def multiplicity(self, u: int, v: int) -> int:
        a, b = min(u, v), max(u, v)
        return sum(1 for e in self.edges if e == (a, b))

    def loops(self, v: int) -> int:
        return self.multiplicity(v, v)

    def relabel(self, perm) -> "QuadGraph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        return QuadGraph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges))

    @cached_property
    def code(self) -> bytes:
        return canonical_code(self)

    def __str__(self):
        return code_text(self.code)


def _connected(n, edges) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in range(n)}) == 1


# ---------------------------------------------------------------------------
# canonical code


def _vertex_colours(g: QuadGraph) -> list:
    """Isomorphism-invariant integer colour per vertex (colour refinement).

    Starts from the local loop/multi-edge pattern and the number of triangles
    through each vertex, then refines by neighbour colours until stable.
    """
    n, adj = g.n, g.adjacency
    nbr = [Counter(a) for a in adj]
    simple = [set(a) - {v} for v, a in enumerate(adj)]
    base = []
    for v in range(n):
        loops = nbr[v][v] // 2
        mults = tuple(sorted(c for w, c in nbr[v].items() if w != v))
        tri = sum(1 for a in simple[v] for b in simple[v] if a < b and b in simple[a])
        base.append((loops, mults, tri))
    colours = _rank(base)
    while True:
        sig = [
            (colours[v], tuple(sorted((colours[w], c) for w, c in nbr[v].items())))
            for v in range(n)
        ]
        new = _rank(sig)
        if len(set(new)) == len(set(colours)):
            return new
        colours = new


def _rank(values) -> list:
    order = {val: i for i, val in enumerate(sorted(set(values)))}
    return [order[val] for val in values]


def canonical_code(g: QuadGraph) -> bytes:
    """Least breadth-first serialization of ``g``.

    Every vertex labelling visited is a breadth-first traversal: the start
    vertex has minimal refined colour, and when a vertex is processed its
    unlabelled neighbours receive the next labels ordered by (colour, edge
    multiplicity), ties being tried in every order.  The code is the byte
    ``n`` followed by each vertex's sorted neighbour labels (4 per vertex,
    loops listed twice), minimised lexicographically.
    """
    n, adj = g.n, g.adjacency
    if any(len(a) != 4 for a in adj):
        raise InvalidGraph("all vertices must have degree 4")
    colours = _vertex_colours(g)
    nbr = [Counter(a) for a in adj]
    best: list = [None]

    def search(order, pos, i, rows, below):
        # rows[k] is final once vertex order[k] has been processed
        if i == n:
            if below or best[0] is None or rows < best[0]:
                best[0] = list(rows)
            return
        u = order[i]
        fresh = [w for w in nbr[u] if w not in pos]
        groups = {}
        for w in fresh:
            groups.setdefault((colours[w], -nbr[u][w]), []).append(w)
        keys = sorted(groups)
        for choice in product(*(permutations(groups[k]) for k in keys)):
            new_order = order[:]
            new_pos = dict(pos)
            for grp in choice:
                for w in grp:
                    new_pos[w] = len(new_order)
                    new_order.append(w)
            row = tuple(sorted(new_pos[w] for w in adj[u]))
            now_below = below
            if not below and best[0] is not None:
                ref = best[0][i]
                if row > ref:
                    continue
                now_below = row < ref
            rows.append(row)
            search(new_order, new_pos, i + 1, rows, now_below)
            rows.pop()

    low = min(colours)
    for s in range(n):
        if colours[s] == low:
            search([s], {s: 0}, 0, [], False)
    out = bytearray([n])
    for row in best[0]:
        out.extend(row)
    return bytes(out)


def code_text(code: bytes) -> str:
    """Printable form: one character per byte of the canonical code."""
    return "".join(ALPHABET[b] for b in code)


def from_code(code: bytes) -> QuadGraph:
    n = code[0]
    rows = [code[1 + 4 * i: 5 + 4 * i] for i in range(n)]
    edges = []
    for u, row in enumerate(rows):
        cnt = Counter(row)
        for v, c in cnt.items():
            if v > u:
                edges.extend([(u, v)] * c)
            elif v == u:
                edges.extend([(u, u)] * (c // 2))
    return QuadGraph(n, tuple(edges))


def from_code_text(text: str) -> QuadGraph:
    try:
        return from_code(bytes(ALPHABET.index(ch) for ch in text.strip()))
    except ValueError as exc:
        raise InvalidGraph(f"bad graph code {text!r}") from exc


# ---------------------------------------------------------------------------
# enumeration


def _children(edges: tuple, n: int):
    """Edge lists of all vertex-insertion extensions of a graph on n vertices."""
    m = len(edges)
    seen = set()
    for i in range(m):
        for j in range(i + 1, m):
            key = (edges[i], edges[j])
            if key in seen:
                continue
            seen.add(key)
            rest = edges[:i] + edges[i + 1:j] + edges[j + 1:]
            (a, b), (c, d) = edges[i], edges[j]
            yield rest + ((a, n), (b, n), (c, n), (d, n))
    for i in range(m):
        if i and edges[i] == edges[i - 1]:
            continue
        a, b = edges[i]
        yield edges[:i] + edges[i + 1:] + ((a, n), (b, n), (n, n))


def _nauty_key(n: int, edges) -> bytes:
    """Compact certificate of a multigraph via nauty on its 2-subdivision."""
    m = len(edges)
    adj = {v: [] for v in range(n + 2 * m)}
    for k, (a, b) in enumerate(edges):
        x, y = n + 2 * k, n + 2 * k + 1
        adj[a].append(x)
        adj[x].append(y)
        adj[y].append(b)
    g = pynauty.Graph(n + 2 * m, adjacency_dict=adj, vertex_coloring=[set(range(n))])
    lab = pynauty.canon_label(g)
    rank = {}
    for v in lab:
        if v < n:
            rank[v] = len(rank)
    return _pack(sorted((min(rank[a], rank[b]), max(rank[a], rank[b])) for a, b in edges))


def _pack(pairs) -> bytes:
    return bytes(x for p in pairs for x in p)


def _own_key(n: int, edges) -> bytes:
    return canonical_code(QuadGraph(n, edges))


def enumerate_quadgraphs(n: int, use_nauty: bool | None = None) -> list:
    """All connected 4-valent multigraphs on ``n`` vertices, one per class.

    The result is sorted by canonical code, so it is identical between runs.
    ``use_nauty`` selects the deduplication certificate used while growing
    the levels (default: nauty when available); the output does not depend
    on it.
    """
    if n < 1:
        return []
    if use_nauty is None:
        use_nauty = pynauty is not None
    key = _nauty_key if use_nauty else _own_key
    level = [((0, 0), (0, 0))]
    for k in range(1, n):
        found = {}
        for edges in level:
            for child in _children(edges, k):
                cert = key(k + 1, child)
                if cert not in found:
                    found[cert] = tuple(sorted(child))
        level = list(found.values())
    graphs = [QuadGraph(n, e) for e in level]
    graphs.sort(key=lambda g: g.code)
    return graphs


# ---------------------------------------------------------------------------
# useful-graph filters


def _counters(g: QuadGraph) -> list:
    return [Counter(a) for a in g.adjacency]


def forbidden_portions(g: QuadGraph) -> list:
    """Names of the closed-census forbidden portions present in ``g``."""
    from .portions import CLOSED_FORBIDDEN

    nbr = _counters(g)
    return [name for name, match in CLOSED_FORBIDDEN.items() if match(nbr)]


def filter_useful_closed(g: QuadGraph) -> bool:
    """True unless ``g`` cannot carry a minimal closed triangulation.

    Only meaningful for n >= 3; smaller graphs always pass.
    """
    from .portions import CLOSED_EXCEPTIONS

    if g.n < 3:
        return True
    nbr = _counters(g)
    if any(match(nbr) for match in CLOSED_EXCEPTIONS.values()):
        return True
    return not forbidden_portions(g)


def edge_cuts(g: QuadGraph):
    """Yield ``(side, size)`` for every vertex set avoiding the last vertex.

    Walks the subsets in Gray-code order so each step updates the cut size
    from the moved vertex only.
    """
    n = g.n
    nbr = _counters(g)
    inside = [False] * n
    size = 0
    for k in range(1, 1 << (n - 1)):
        v = (k & -k).bit_length() - 1
        across = sum(c for w, c in nbr[v].items() if w != v and inside[w])
        outside = sum(c for w, c in nbr[v].items() if w != v and not inside[w])
        if inside[v]:
            size += across - outside
        else:
            size += outside - across
        inside[v] = not inside[v]
        yield [u for u in range(n) if inside[u]], size


def filter_useful_bricks(g: QuadGraph) -> bool:
    """No 2-edge cut, and every 4-edge cut has a harmless side."""
    from .portions import BRICK_CUT_SIDES

    nbr = _counters(g)
    everyone = set(range(g.n))
    for side, size in edge_cuts(g):
        if size <= 2:
            return False
        if size == 4:
            a = set(side)
            b = everyone - a
            if not any(m(nbr, s) for s in (a, b) for m in BRICK_CUT_SIDES.values()):
                return False
    return True
