"""Local non-minimality tests, usable on partial gluings during the search.

Everything is phrased on the triangulation side: a face of the dual spine
is a triangulation edge class, a spine edge is a triangle and a spine
vertex is a tetrahedron.

Partial checks are monotone: identifications only ever merge edge classes,
so once a test fires every completion fires it too.
"""

from __future__ import annotations

from itertools import combinations

from .quadgraph import QuadGraph
from .triangulation import (
    EDGE_INDEX,
    EDGE_VERTS,
    Triangulation,
    graph_slots,
    inverse,
    slot_perm,
)

__all__ = [
    "CRITERIA",
    "PartialGluing",
    "check_disc_curve",
    "check_edge_incidence",
    "check_small_face",
]

CRITERIA = ("faces", "incidence", "disc")

# the three tet edges on each face, as (edge index, direction along the
# boundary cycle x -> y -> z -> x of the sorted face vertices: 0 forward)
_FACE_EDGES = []
for _f in range(4):
    _x, _y, _z = [v for v in range(4) if v != _f]
    _FACE_EDGES.append(
        ((EDGE_INDEX[(_x, _y)], 0), (EDGE_INDEX[(_y, _z)], 0), (EDGE_INDEX[(_x, _z)], 1))
    )
_FACE_EDGES = tuple(_FACE_EDGES)


class PartialGluing:
    """Tetrahedra of a face-pairing graph with some of its edges labelled.

    Tet edge ``(t, e)`` is the integer ``6 t + e``.  Edge classes live in a
    union-find with orientation parity and an undo log, so the search can
    label and unlabel edges in near-constant time.
    """

    def __init__(self, graph: QuadGraph):
        self.graph = graph
        self.n = n = graph.n
        self.slots = graph_slots(graph)
        self.labels = [None] * len(self.slots)
        self.adj = [[None] * 4 for _ in range(n)]
        self.parent = list(range(6 * n))
        self.flip = [0] * (6 * n)
        self.size = [1] * (6 * n)
        # unglued faces still around each class (two per tet edge at start)
        self.open = [2] * (6 * n)
        self.classes = 6 * n
        self.bad_edges = 0  # edges identified with themselves reversed
        self._undo = []

    # -- union-find with undo ---------------------------------------------

    def find(self, x):
        f = 0
        parent, flip = self.parent, self.flip
        while parent[x] != x:
            f ^= flip[x]
            x = parent[x]
        return x, f

    def _set(self, arr, i, val):
        self._undo.append((arr, i, arr[i]))
        arr[i] = val

    def _union(self, a, b, rel):
        ra, fa = self.find(a)
        rb, fb = self.find(b)
        if ra == rb:
            if fa ^ fb != rel:
                self._undo.append((None, "bad", None))
                self.bad_edges += 1
            return
        if self.size[ra] > self.size[rb]:
            ra, rb = rb, ra
        self._set(self.parent, ra, rb)
        self._set(self.flip, ra, fa ^ fb ^ rel)
        self._set(self.size, rb, self.size[ra] + self.size[rb])
        self._set(self.open, rb, self.open[ra] + self.open[rb])
        self._undo.append((None, "merge", None))
        self.classes -= 1

    def label(self, k: int, lab: int):
        """Glue along graph edge ``k`` with label ``lab``; returns an undo mark."""
        mark = len(self._undo)
        (u, fu), (v, fv) = self.slots[k]
        p = slot_perm(fu, fv, lab)
        self._undo.append((None, "label", k))
        self.labels[k] = lab
        self.adj[u][fu] = (v, p)
        self.adj[v][fv] = (u, inverse(p))
        for t, f in ((u, fu), (v, fv)):
            for e, _ in _FACE_EDGES[f]:
                r, _ = self.find(6 * t + e)
                self._set(self.open, r, self.open[r] - 1)
        for a, b in ((x, y) for x, y in EDGE_VERTS if fu not in (x, y)):
            a2, b2 = p[a], p[b]
            self._union(6 * u + EDGE_INDEX[(a, b)], 6 * v + EDGE_INDEX[(a2, b2)], int(a2 > b2))
        return mark

    def undo(self, mark):
        log = self._undo
        while len(log) > mark:
            arr, i, old = log.pop()
            if arr is not None:
                arr[i] = old
            elif i == "merge":
                self.classes += 1
            elif i == "bad":
                self.bad_edges -= 1
            elif i == "label":
                (u, fu), (v, fv) = self.slots[old]
                self.labels[old] = None
                self.adj[u][fu] = None
                self.adj[v][fv] = None

    def touched_roots(self, k: int) -> set:
        (u, fu), (v, fv) = self.slots[k]
        roots = set()
        for t, f in ((u, fu), (v, fv)):
            for e, _ in _FACE_EDGES[f]:
                roots.add(self.find(6 * t + e)[0])
        return roots

    def complete(self) -> bool:
        return all(lab is not None for lab in self.labels)

    def triangulation(self) -> Triangulation:
        return Triangulation(self.n, tuple(tuple(row) for row in self.adj))


# ---------------------------------------------------------------------------
# criteria


def _as_partial(p):
    """Accept a Triangulation wherever a PartialGluing is expected."""
    if isinstance(p, PartialGluing):
        return p, None
    return None, p


def _walk_tets(adj, t, e):
    """Tets met going once around tet edge ``(t, e)``; None if not closed up."""
    a, b = EDGE_VERTS[e]
    f = min(x for x in range(4) if x not in (a, b))
    start = (t, a, b, f)
    state = start
    tets = []
    while True:
        t, a, b, f = state
        tets.append(t)
        g = adj[t][f]
        if g is None:
            return None
        t2, p = g
        a2, b2, fin = p[a], p[b], p[f]
        state = (t2, a2, b2, next(x for x in range(4) if x not in (a2, b2, fin)))
        if state == start:
            return tets
        if len(tets) > 24 * len(adj):
            return None


def _small_face_in(adj, members) -> bool:
    if len(members) > 3:
        return False
    t, e = members[0]
    tets = _walk_tets(adj, t, e)
    return tets is not None and len(set(tets)) == len(tets)


def check_small_face(p, roots=None) -> bool:
    """True (violates) when some complete edge class of degree <= 3 is embedded.

    Embedded means the tetrahedra met going around the edge are distinct;
    dually, a spine face with at most 3 edges whose closure is an embedded
    disc.  On a partial gluing only complete classes are examined, and only
    those with root in ``roots`` when given.
    """
    pg, tri = _as_partial(p)
    if tri is not None:
        return any(_small_face_in(tri.adj, cls) for cls in tri.edge_classes)
    if roots is None:
        roots = {pg.find(x)[0] for x in range(6 * pg.n)}
    for r in roots:
        if pg.open[r] == 0 and pg.size[r] <= 3:
            x = next(y for y in range(6 * pg.n) if pg.find(y)[0] == r)
            if _small_face_in(pg.adj, [(x // 6, x % 6)]):
                return True
    return False


def _class_and_parity(p):
    pg, tri = _as_partial(p)
    if pg is not None:
        return pg.n, lambda t, e: pg.find(6 * t + e)
    uf, _ = tri._edge_uf
    return tri.n, lambda t, e: uf.find((t, e))


def check_edge_incidence(p, closed_orientable: bool = True) -> bool:
    """True (violates) when a triangle meets one edge class badly.

    Bad means all three sides lie in one class (a spine face incident three
    times to a spine edge), or two sides lie in one class and are traversed
    in opposite directions by the triangle's boundary.  Only applied to the
    closed orientable census; otherwise always clean.
    """
    if not closed_orientable:
        return False
    n, find = _class_and_parity(p)
    for t in range(n):
        for f in range(4):
            seen = {}
            for e, d in _FACE_EDGES[f]:
                r, par = find(t, e)
                direction = d ^ par
                if r in seen:
                    if len(seen[r]) == 2 or seen[r][0] != direction:
                        return True
                    seen[r].append(direction)
                else:
                    seen[r] = [direction]
    return False


def _link_graph(tri: Triangulation):
    """Vertex link 1-skeleton of a one-vertex triangulation.

    Returns (vertex -> tri edge class, link edges as (x, y), link triangles
    as frozensets of link-edge ids).
    """
    from .triangulation import _UF

    corners = [(t, v) for t in range(tri.n) for v in range(4)]
    lv = _UF([(t, v, w) for t, v in corners for w in range(4) if w != v])
    sides = _UF([(t, v, f) for t, v in corners for f in range(4) if f != v])
    for t, v in corners:
        for f in range(4):
            if f == v or tri.adj[t][f] is None:
                continue
            t2, p = tri.adj[t][f]
            sides.union((t, v, f), (t2, p[v], p[f]), 0)
            for w in range(4):
                if w not in (v, f):
                    lv.union((t, v, w), (t2, p[v], p[w]), 0)
    vid, eid = {}, {}
    for x in lv.parent:
        vid.setdefault(lv.find(x)[0], len(vid))
    owner = {}
    for t, v, w in lv.parent:
        owner[vid[lv.find((t, v, w))[0]]] = tri.edge_class_of[(t, EDGE_INDEX[(v, w)])]
    edges = []
    for t, v, f in sorted(sides.parent):
        r = sides.find((t, v, f))[0]
        if r in eid:
            continue
        eid[r] = len(edges)
        a, b = [w for w in range(4) if w not in (v, f)]
        edges.append((vid[lv.find((t, v, a))[0]], vid[lv.find((t, v, b))[0]]))
    triangles = []
    for t, v in corners:
        triangles.append(
            frozenset(eid[sides.find((t, v, f))[0]] for f in range(4) if f != v)
        )
    return owner, edges, set(triangles)


def check_disc_curve(tri: Triangulation) -> bool:
    """True (violates) when a short curve on the spine bounds a nontrivial disc.

    Such curves are cycles of length at most 3 in the vertex link whose
    link vertices sit over distinct triangulation edges (so their image in
    the spine is simple); the boundary of a single link triangle is the
    trivial curve around a spine vertex and is ignored.
    """
    if len(tri.vertex_classes) != 1:
        return False
    owner, edges, triangles = _link_graph(tri)
    between = {}
    for k, (x, y) in enumerate(edges):
        if x == y:
            return True
        between.setdefault(frozenset((x, y)), []).append(k)
    for (pair, ks) in between.items():
        x, y = tuple(pair)
        if len(ks) >= 2 and owner[x] != owner[y]:
            return True
    nbrs = {}
    for pair, ks in between.items():
        x, y = tuple(pair)
        nbrs.setdefault(x, set()).add(y)
        nbrs.setdefault(y, set()).add(x)
    for x in nbrs:
        for y, z in combinations(sorted(nbrs[x]), 2):
            if not (x < y and x < z) or z not in nbrs[y]:
                continue
            if len({owner[x], owner[y], owner[z]}) < 3:
                continue
            for e1 in between[frozenset((x, y))]:
                for e2 in between[frozenset((y, z))]:
                    for e3 in between[frozenset((x, z))]:
                        if frozenset((e1, e2, e3)) not in triangles:
                            return True
    return False
