"""Independent reference implementations used only by the tests.

Each one takes a deliberately different route from the package code:
brute force where the package is clever, sympy where the package has its
own integer algebra.
"""

import math
from collections import deque
from itertools import combinations_with_replacement, permutations, product

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from spinecensus.farey import ROOT, neighbours
from spinecensus.triangulation import EDGE_INDEX


# ---------------------------------------------------------------------------
# graphs


def brute_quadgraph_count(n):
    """Connected 4-regular multigraphs on n vertices, by exhaustive listing."""
    pairs = [(u, v) for u in range(n) for v in range(u, n)]
    seen = set()
    for edges in combinations_with_replacement(pairs, 2 * n):
        deg = [0] * n
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        if any(d != 4 for d in deg):
            continue
        if not _connected(n, edges):
            continue
        key = min(
            tuple(sorted((min(p[u], p[v]), max(p[u], p[v])) for u, v in edges)) for p in permutations(range(n))
        )
        seen.add(key)
    return len(seen)


def _connected(n, edges):
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    stack, seen = [0], {0}
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


# ---------------------------------------------------------------------------
# homology on the primal complex


def primal_h1(tri):
    """H1 of a closed triangulation from vertices, edges and triangles (sympy SNF)."""
    uf, _ = tri._edge_uf
    cls = tri.edge_class_of
    ne = len(tri.edge_classes)
    vclass = {}
    for i, group in enumerate(tri.vertex_classes):
        for m in group:
            vclass[m] = i
    nv = len(tri.vertex_classes)
    # orientation of each class: that of its union-find root
    d1 = [[0] * ne for _ in range(nv)]
    done = set()
    for t in range(tri.n):
        for e, (a, b) in enumerate(((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))):
            c = cls[(t, e)]
            if c in done:
                continue
            done.add(c)
            _, par = uf.find((t, e))
            head, tail = (b, a) if par == 0 else (a, b)
            d1[vclass[(t, head)]][c] += 1
            d1[vclass[(t, tail)]][c] -= 1
    rows = []
    for (t, f), _ in tri.faces:
        x, y, z = [v for v in range(4) if v != f]
        col = [0] * ne
        for (a, b), s in (((x, y), 1), ((y, z), 1), ((x, z), -1)):
            e = EDGE_INDEX[(a, b)]
            _, par = uf.find((t, e))
            col[cls[(t, e)]] += s * (1 if par == 0 else -1)
        rows.append(col)
    d2 = Matrix(rows).T if rows else Matrix.zeros(ne, 0)
    rank1 = Matrix(d1).rank() if nv else 0
    snf = smith_normal_form(d2, domain=ZZ) if d2.cols else d2
    diag = [abs(snf[i, i]) for i in range(min(snf.rows, snf.cols)) if snf[i, i] != 0]
    rank = ne - rank1 - len(diag)
    return rank, tuple(sorted(int(x) for x in diag if x > 1))


# ---------------------------------------------------------------------------
# Turaev-Viro by plain enumeration


def brute_turaev_viro(tri, r):
    """State sum over every colouring, with its own 6j evaluation."""
    q = math.pi / r

    def qn(k):
        return math.sin(k * q) / math.sin(q)

    def qf(k):
        out = 1.0
        for i in range(1, k + 1):
            out *= qn(i)
        return out

    def adm(a, b, c):
        return (a + b + c) % 2 == 0 and abs(a - b) <= c <= a + b and a + b + c <= 2 * (r - 2)

    def tri_coef(a, b, c):
        return math.sqrt(qf((a + b - c) // 2) * qf((a - b + c) // 2) * qf((b + c - a) // 2) / qf((a + b + c) // 2 + 1))

    def sixj(j1, j2, j3, j4, j5, j6):
        # faces (j1 j2 j3) (j1 j5 j6) (j2 j4 j6) (j3 j4 j5)
        tris = [(j1, j2, j3), (j1, j5, j6), (j2, j4, j6), (j3, j4, j5)]
        if not all(adm(*x) for x in tris):
            return 0.0
        a = [sum(x) // 2 for x in tris]
        b = [(j1 + j2 + j4 + j5) // 2, (j1 + j3 + j4 + j6) // 2, (j2 + j3 + j5 + j6) // 2]
        s = 0.0
        for z in range(max(a), min(b) + 1):
            den = 1.0
            for x in a:
                den *= qf(z - x)
            for y in b:
                den *= qf(y - z)
            s += (-1) ** z * qf(z + 1) / den
        out = s
        for x in tris:
            out *= tri_coef(*x)
        return out

    cls = tri.edge_class_of
    ne = len(tri.edge_classes)
    total = 0.0
    for col in product(range(r - 1), repeat=ne):
        w = 1.0
        for a in col:
            w *= (-1) ** a * qn(a + 1)
        for (t, f), _ in tri.faces:
            vs = [v for v in range(4) if v != f]
            cs = [col[cls[(t, EDGE_INDEX[(vs[i], vs[j])])]] for i, j in ((0, 1), (0, 2), (1, 2))]
            if not adm(*cs):
                w = 0.0
                break
            w *= (-1) ** (sum(cs) // 2)
        if w == 0.0:
            continue
        for t in range(tri.n):
            c = {e: col[cls[(t, e)]] for e in range(6)}
            w *= sixj(c[0], c[1], c[3], c[5], c[4], c[2])
        total += w
    finite = sum(1 for lk in tri.links if lk.is_sphere)
    big = sum(qn(i) ** 2 for i in range(1, r))
    return total / big ** finite


# ---------------------------------------------------------------------------
# Farey tree


def bfs_distances(depth, start=ROOT):
    """Triangle -> flip distance from ``start``, by breadth-first search."""
    dist = {start: 0}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        if dist[t] == depth:
            continue
        for nb in neighbours(t):
            if nb not in dist:
                dist[nb] = dist[t] + 1
                queue.append(nb)
    return dist


def subtractive_steps(p, q):
    """|p,q| by literally undoing (p+q, q) and (p, q+p) one step at a time."""
    steps = 0
    while (p, q) not in ((1, 0), (0, 1), (1, 1)):
        if p > q:
            p -= q
        else:
            q -= p
        steps += 1
    return steps
