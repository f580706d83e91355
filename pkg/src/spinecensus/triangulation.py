"""Triangulations built from tetrahedra glued along faces.

Tetrahedron vertices are 0..3 and face ``f`` is the face opposite vertex
``f``.  A gluing of face ``f`` of tet ``t`` is stored as ``(t2, p)`` where
``p`` is a permutation (a 4-tuple) sending vertices of ``t`` to vertices of
``t2``, with ``p[f]`` the face of ``t2``.  Faces of one tet must be glued to
faces of the same or other tets consistently: if ``adj[t][f] == (t2, p)``
then ``adj[t2][p[f]] == (t, p^-1)``.

Tet edges are numbered 0..5 as (0,1) (0,2) (0,3) (1,2) (1,3) (2,3).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations

from .quadgraph import ALPHABET, QuadGraph

__all__ = [
    "EDGE_VERTS",
    "PERMS",
    "LinkInfo",
    "Triangulation",
    "TriangulationError",
    "from_graph",
    "from_text",
    "from_signature",
    "isomorphism_signature",
    "pachner_23",
]

PERMS = tuple(permutations(range(4)))
PERM_INDEX = {p: i for i, p in enumerate(PERMS)}
EDGE_VERTS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX = {}
for _i, (_a, _b) in enumerate(EDGE_VERTS):
    EDGE_INDEX[(_a, _b)] = EDGE_INDEX[(_b, _a)] = _i
# the two faces containing an edge: the two vertices it misses
EDGE_FACES = tuple(tuple(sorted(set(range(4)) - set(e))) for e in EDGE_VERTS)


class TriangulationError(ValueError):
    pass


def inverse(p):
    q = [0] * 4
    for i, x in enumerate(p):
        q[x] = i
    return tuple(q)


def compose(p, q):
    """``p`` after ``q``."""
    return tuple(p[q[i]] for i in range(4))


def sign(p) -> int:
    s = 1
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] > p[j]:
                s = -s
    return s


class _UF:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        # flip[x]: orientation of x relative to its parent
        self.flip = {x: 0 for x in items}

    def find(self, x):
        f = 0
        while self.parent[x] != x:
            f ^= self.flip[x]
            x = self.parent[x]
        return x, f

    def union(self, a, b, rel):
        """Identify a and b with relative orientation ``rel``.

        Returns False when the identification contradicts an earlier one.
        """
        ra, fa = self.find(a)
        rb, fb = self.find(b)
        if ra == rb:
            return (fa ^ fb) == rel
        self.parent[ra] = rb
        self.flip[ra] = fa ^ fb ^ rel
        return True


@dataclass(frozen=True)
class LinkInfo:
    """Combinatorial summary of a vertex link."""

    triangles: int
    euler: int
    closed: bool
    orientable: bool

    @property
    def is_sphere(self) -> bool:
        return self.closed and self.euler == 2

    @property
    def is_torus(self) -> bool:
        return self.closed and self.euler == 0 and self.orientable

    @property
    def is_disc(self) -> bool:
        return not self.closed and self.euler == 1 and self.orientable


@dataclass(frozen=True)
class Triangulation:
    n: int
    adj: tuple = field(repr=False)

    def __post_init__(self):
        adj = tuple(tuple(None if g is None else (g[0], tuple(g[1])) for g in row) for row in self.adj)
        object.__setattr__(self, "adj", adj)
        if len(adj) != self.n or any(len(row) != 4 for row in adj):
            raise TriangulationError("need 4 face slots per tetrahedron")
        for t, row in enumerate(adj):
            for f, g in enumerate(row):
                if g is None:
                    continue
                t2, p = g
                if not 0 <= t2 < self.n or sorted(p) != [0, 1, 2, 3]:
                    raise TriangulationError(f"bad gluing at {t}:{f}")
                back = adj[t2][p[f]]
                if back is None or back[0] != t or back[1] != inverse(p):
                    raise TriangulationError(f"gluing at {t}:{f} is not symmetric")
                if t2 == t and p[f] == f:
                    raise TriangulationError(f"face {t}:{f} glued to itself")

    # -- structure ------------------------------------------------------

    @property
    def closed_faces(self) -> bool:
        return all(g is not None for row in self.adj for g in row)

    @cached_property
    def _edge_uf(self):
        uf = _UF([(t, e) for t in range(self.n) for e in range(6)])
        valid = True
        for t in range(self.n):
            for f in range(4):
                g = self.adj[t][f]
                if g is None:
                    continue
                t2, p = g
                for e, (a, b) in enumerate(EDGE_VERTS):
                    if f in (a, b):
                        continue
                    a2, b2 = p[a], p[b]
                    if not uf.union((t, e), (t2, EDGE_INDEX[(a2, b2)]), int(a2 > b2)):
                        valid = False
        return uf, valid

    @cached_property
    def edge_classes(self) -> list:
        """Edge classes as lists of ``(tet, edge)``, ordered by first member."""
        uf, _ = self._edge_uf
        groups = {}
        for t in range(self.n):
            for e in range(6):
                groups.setdefault(uf.find((t, e))[0], []).append((t, e))
        return list(groups.values())

    @cached_property
    def edge_class_of(self) -> dict:
        return {m: i for i, cls in enumerate(self.edge_classes) for m in cls}

    @property
    def valid_edges(self) -> bool:
        """No edge is identified with itself in reverse."""
        return self._edge_uf[1]

    @cached_property
    def vertex_classes(self) -> list:
        uf = _UF([(t, v) for t in range(self.n) for v in range(4)])
        for t in range(self.n):
            for f in range(4):
                g = self.adj[t][f]
                if g is None:
                    continue
                t2, p = g
                for v in range(4):
                    if v != f:
                        uf.union((t, v), (t2, p[v]), 0)
        groups = {}
        for t in range(self.n):
            for v in range(4):
                groups.setdefault(uf.find((t, v))[0], []).append((t, v))
        return list(groups.values())

    @cached_property
    def faces(self) -> list:
        """Triangles as ``((t, f), (t2, f2) | None)`` with the first side least."""
        out = []
        for t in range(self.n):
            for f in range(4):
                g = self.adj[t][f]
                if g is None:
                    out.append(((t, f), None))
                    continue
                t2, p = g
                if (t, f) <= (t2, p[f]):
                    out.append(((t, f), (t2, p[f])))
        return out

    def edge_degrees(self) -> list:
        return [len(c) for c in self.edge_classes]

    @cached_property
    def orientable(self) -> bool:
        side = [0] * self.n
        seen = [False] * self.n
        for start in range(self.n):
            if seen[start]:
                continue
            seen[start] = True
            side[start] = 1
            stack = [start]
            while stack:
                t = stack.pop()
                for g in self.adj[t]:
                    if g is None:
                        continue
                    t2, p = g
                    want = -sign(p) * side[t]
                    if not seen[t2]:
                        seen[t2] = True
                        side[t2] = want
                        stack.append(t2)
                    elif side[t2] != want:
                        return False
        return True

    @cached_property
    def links(self) -> list:
        """One :class:`LinkInfo` per vertex class (same order)."""
        return [self._link(cls) for cls in self.vertex_classes]

    def _link(self, corners) -> LinkInfo:
        corner_set = set(corners)
        # link vertices are (t, v, w): the end of edge vw of tet t near v
        lv = _UF([(t, v, w) for t, v in corners for w in range(4) if w != v])
        glued_sides = 0
        boundary = 0
        # orientation of link triangles: +1 means cyclic order of sorted others
        tri_or = {}
        orientable = True
        for t, v in corners:
            for f in range(4):
                if f == v:
                    continue
                g = self.adj[t][f]
                if g is None:
                    boundary += 1
                    continue
                glued_sides += 1
                t2, p = g
                for w in range(4):
                    if w not in (v, f):
                        lv.union((t, v, w), (t2, p[v], p[w]), 0)
        vertices = len({lv.find(x)[0] for x in lv.parent})
        edges = glued_sides // 2 + boundary
        euler = vertices - edges + len(corners)
        # orientability of the link surface by propagation
        start = corners[0]
        tri_or[start] = 1
        stack = [start]
        while stack and orientable:
            t, v = stack.pop()
            for f in range(4):
                if f == v or self.adj[t][f] is None:
                    continue
                t2, p = self.adj[t][f]
                a, b = [w for w in range(4) if w not in (v, f)]
                s1 = _cyc(v, a, b) * tri_or[(t, v)]
                nb = (t2, p[v])
                s2 = _cyc(p[v], p[a], p[b])
                want = -s1 * s2
                if nb not in tri_or:
                    tri_or[nb] = want
                    stack.append(nb)
                elif tri_or[nb] != want:
                    orientable = False
        assert set(tri_or) <= corner_set
        return LinkInfo(len(corners), euler, boundary == 0, orientable)

    # -- candidate tests --------------------------------------------------

    def is_candidate_closed(self) -> bool:
        """Closed one-vertex triangulation of a 3-manifold."""
        if not self.closed_faces or not self.valid_edges:
            return False
        return len(self.vertex_classes) == 1 and self.links[0].is_sphere

    def is_closed_manifold(self) -> bool:
        if not self.closed_faces or not self.valid_edges:
            return False
        return all(lk.is_sphere for lk in self.links)

    def is_candidate_ideal(self) -> bool:
        """Ideal triangulation whose vertex links are all tori or Klein bottles."""
        if not self.closed_faces or not self.valid_edges:
            return False
        return all(lk.closed and lk.euler == 0 for lk in self.links)

    # -- serialization ----------------------------------------------------

    def to_text(self) -> str:
        """One line per tet: four ``tet:perm`` entries, ``-`` when unglued."""
        lines = [str(self.n)]
        for row in self.adj:
            cells = ["-" if g is None else f"{g[0]}:{''.join(map(str, g[1]))}" for g in row]
            lines.append(" ".join(cells))
        return "\n".join(lines) + "\n"

    @cached_property
    def signature(self) -> str:
        return isomorphism_signature(self)

    def relabel(self, order, perms) -> "Triangulation":
        """Tet ``t`` becomes tet ``order[t]`` with vertices renamed by ``perms[t]``."""
        adj = [[None] * 4 for _ in range(self.n)]
        for t in range(self.n):
            for f in range(4):
                g = self.adj[t][f]
                if g is None:
                    continue
                t2, p = g
                q = compose(perms[t2], compose(p, inverse(perms[t])))
                adj[order[t]][perms[t][f]] = (order[t2], q)
        return Triangulation(self.n, tuple(map(tuple, adj)))


def _cyc(v, a, b) -> int:
    """+1 when a -> b follows the cyclic order of sorted({0..3} - {v})."""
    o = [w for w in range(4) if w != v]
    i, j = o.index(a), o.index(b)
    return 1 if (i + 1) % 3 == j else -1


def from_text(text: str) -> Triangulation:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    try:
        n = int(lines[0])
        adj = []
        for ln in lines[1:1 + n]:
            row = []
            for cell in ln.split():
                if cell == "-":
                    row.append(None)
                else:
                    t, p = cell.split(":")
                    row.append((int(t), tuple(int(c) for c in p)))
            adj.append(tuple(row))
    except (ValueError, IndexError) as exc:
        raise TriangulationError("malformed triangulation text") from exc
    return Triangulation(n, tuple(adj))


# ---------------------------------------------------------------------------
# building from a face-pairing graph


def graph_slots(g: QuadGraph) -> list:
    """Face slots for each graph edge: ``((u, fu), (v, fv))`` in edge order.

    Faces at a vertex are handed out 0..3 in the order its edge ends appear.
    """
    used = [0] * g.n
    out = []
    for u, v in g.edges:
        fu = used[u]
        used[u] += 1
        fv = used[v]
        used[v] += 1
        out.append(((u, fu), (v, fv)))
    return out


def slot_perm(fu: int, fv: int, label: int):
    """Gluing permutation for face ``fu`` onto face ``fv`` with label 0..5.

    The three vertices off ``fu`` (sorted) go to the three off ``fv`` (sorted)
    rearranged by the label-th permutation of three symbols.
    """
    src = [x for x in range(4) if x != fu]
    dst = [x for x in range(4) if x != fv]
    s3 = _S3[label]
    p = [0] * 4
    p[fu] = fv
    for i, a in enumerate(src):
        p[a] = dst[s3[i]]
    return tuple(p)


_S3 = tuple(permutations(range(3)))


def from_graph(g: QuadGraph, labels) -> Triangulation:
    """Triangulation with face-pairing graph ``g`` and one label per edge."""
    adj = [[None] * 4 for _ in range(g.n)]
    for ((u, fu), (v, fv)), lab in zip(graph_slots(g), labels):
        p = slot_perm(fu, fv, lab)
        adj[u][fu] = (v, p)
        adj[v][fv] = (u, inverse(p))
    return Triangulation(g.n, tuple(map(tuple, adj)))


# ---------------------------------------------------------------------------
# isomorphism signature


def _walk(tri: Triangulation, start: int, perm0) -> list:
    """Breadth-first relabelling from ``start`` whose vertices map by ``perm0``."""
    n = tri.n
    order = {start: 0}
    perms = {start: perm0}
    queue = [start]
    code = []
    i = 0
    while i < len(queue):
        t = queue[i]
        i += 1
        pt = perms[t]
        pinv = inverse(pt)
        for newf in range(4):
            f = pinv[newf]
            g = tri.adj[t][f]
            if g is None:
                code.append((n, 0))
                continue
            t2, p = g
            if t2 not in order:
                order[t2] = len(queue)
                # label the new tet so that this gluing reads as the identity
                perms[t2] = compose(pt, inverse(p))
                queue.append(t2)
            q = compose(perms[t2], compose(p, pinv))
            code.append((order[t2], PERM_INDEX[q]))
    if len(queue) != n:
        # disconnected: append the rest by plain index so the code is total
        raise TriangulationError("isomorphism signature needs a connected triangulation")
    return code


def isomorphism_signature(tri: Triangulation) -> str:
    """Text that is equal for two triangulations exactly when they are isomorphic."""
    best = None
    for start in range(tri.n):
        for p in PERMS:
            code = _walk(tri, start, p)
            if best is None or code < best:
                best = code
    chars = [ALPHABET[tri.n]]
    for t2, q in best:
        chars.append(ALPHABET[t2])
        chars.append(ALPHABET[q])
    return "".join(chars)


def from_signature(sig: str) -> Triangulation:
    vals = [ALPHABET.index(c) for c in sig]
    n = vals[0]
    adj = [[None] * 4 for _ in range(n)]
    k = 1
    for t in range(n):
        for f in range(4):
            t2, q = vals[k], vals[k + 1]
            k += 2
            if t2 < n:
                adj[t][f] = (t2, PERMS[q])
    return Triangulation(n, tuple(map(tuple, adj)))


# ---------------------------------------------------------------------------
# 2-3 move


def pachner_23(tri: Triangulation, tet: int, face: int) -> Triangulation:
    """Replace the two distinct tets meeting at ``(tet, face)`` by three.

    The new tets are appended after the surviving old ones; the result is
    a triangulation of the same space.
    """
    g = tri.adj[tet][face]
    if g is None:
        raise TriangulationError("face is on the boundary")
    b_tet, gp = g
    if b_tet == tet:
        raise TriangulationError("2-3 move needs two distinct tetrahedra")
    A, B = tet, b_tet
    fa, fb = face, gp[face]
    a = [x for x in range(4) if x != fa]  # face vertices in A
    # vertex names: ("A",) apex of A, ("B",) apex of B, 0..2 the face vertices
    keep = [t for t in range(tri.n) if t not in (A, B)]
    renum = {t: i for i, t in enumerate(keep)}
    base = len(keep)
    # new tet i has vertices [apexA, apexB, a_j, a_k] with {j, k} = {0,1,2} - {i}
    names = []
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        names.append(("A", "B", j, k))

    def to_a(i):
        """new vertex index -> vertex of A (the B apex plays the role of a_i)."""
        j, k = [x for x in range(3) if x != i]
        return (fa, a[i], a[j], a[k])

    def to_b(i):
        j, k = [x for x in range(3) if x != i]
        return (gp[a[i]], fb, gp[a[j]], gp[a[k]])

    # where each old face of A and B (other than the shared one) went:
    # old (X, x) -> (new tet, new face, map new vertex -> old vertex of X)
    moved = {}
    for i in range(3):
        moved[(A, a[i])] = (base + i, 1, to_a(i))
        moved[(B, gp[a[i]])] = (base + i, 0, to_b(i))

    adj = [[None] * 4 for _ in range(tri.n + 1)]
    for t in keep:
        for f in range(4):
            h = tri.adj[t][f]
            if h is None:
                continue
            t2, p = h
            if t2 in (A, B):
                nt, nf, phi = moved[(t2, p[f])]
                # vertex of t -> old vertex of t2 -> new vertex
                phinv = {old: new for new, old in enumerate(phi)}
                adj[renum[t]][f] = (nt, tuple(phinv[p[x]] for x in range(4)))
            else:
                adj[renum[t]][f] = (renum[t2], p)
    for (X, x), (nt, nf, phi) in moved.items():
        h = tri.adj[X][x]
        if h is None:
            continue
        Y, p = h
        if Y in (A, B):
            mt, mf, psi = moved[(Y, p[x])]
            psinv = {old: new for new, old in enumerate(psi)}
            adj[nt][nf] = (mt, tuple(psinv[p[phi[v]]] for v in range(4)))
        else:
            adj[nt][nf] = (renum[Y], tuple(p[phi[v]] for v in range(4)))
    # internal faces: tet i and tet j share {apexA, apexB, a_k}
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            k = 3 - i - j
            ni, nj = names[i], names[j]
            fi = ni.index(j)  # in tet i, face opposite a_j
            p = []
            for v in range(4):
                name = ni[v]
                if name == j:
                    name = i
                p.append(nj.index(name))
            adj[base + i][fi] = (base + j, tuple(p))
            assert k in ni and k in nj
    return Triangulation(tri.n + 1, tuple(map(tuple, adj)))
