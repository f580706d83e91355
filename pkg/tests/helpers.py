"""Small shared helpers for the test modules."""

from spinecensus.triangulation import pachner_23


def movable_faces(tri):
    return [(t, f) for t in range(tri.n) for f in range(4) if tri.adj[t][f] is not None and tri.adj[t][f][0] != t]


def random_moves(tri, k, rng):
    """Apply ``k`` random 2-3 moves (fewer if the triangulation gets stuck)."""
    for _ in range(k):
        opts = movable_faces(tri)
        if not opts:
            break
        tri = pachner_23(tri, *rng.choice(opts))
    return tri


def random_relabel(tri, rng):
    from spinecensus.triangulation import PERMS

    order = list(range(tri.n))
    rng.shuffle(order)
    perms = [rng.choice(PERMS) for _ in range(tri.n)]
    return tri.relabel(order, perms)


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))
