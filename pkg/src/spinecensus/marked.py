"""Marked manifolds, theta-graph markings and the assembly calculus.

A marking of a boundary torus is a Farey triangle (three slopes pairwise at
determinant +-1).  Slopes are written in (fiber, section) coordinates where
that makes sense: the vector (a, b) is a*h + b*s, i.e. the slope a/b, so the
fiber h is oo and the section curve s is 0.

Complexity bounds compose additively under assembly and by +6 under
self-assembly.  Layering a marked T x I brick (c = 1) performs one flip, so
gluing two marked tori through a chain of layers costs their flip distance.
"""

from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache

from . import farey
from .farey import ROOT, Slope, apply, farey_distance, path_to_root
from .seifert import SeifertData, lens_of, seifert_complexity

log = logging.getLogger(__name__)

__all__ = [
    "Brick",
    "InvalidAssembling",
    "InvalidSelfAssembling",
    "MarkedManifold",
    "ThetaMarking",
    "assemble_marked",
    "brick_catalogue",
    "closed_brick_for",
    "distance_to_fan",
    "fan_distance",
    "farey_distance",
    "flip",
    "layered_solid_torus",
    "layered_solid_torus_bound",
    "lens_assembly",
    "parse_expression",
    "seifert_assembly_bound",
    "self_assemble",
]


class InvalidAssembling(ValueError):
    pass


class InvalidSelfAssembling(ValueError):
    pass


IDENTITY = ((1, 0), (0, 1))


@dataclass(frozen=True)
class ThetaMarking:
    """A theta-graph on a torus, stored as its Farey triangle."""

    slopes: frozenset

    def __post_init__(self):
        if not farey.is_triangle(self.slopes):
            raise farey.InvalidTriangle(f"{self} is not a Farey triangle")

    @classmethod
    def of(cls, *slopes) -> "ThetaMarking":
        return cls(farey.triangle(*slopes))

    def __contains__(self, slope) -> bool:
        return slope in self.slopes

    def image(self, matrix) -> "ThetaMarking":
        return ThetaMarking(apply(matrix, self.slopes))

    def neighbours(self) -> list:
        return [ThetaMarking(t) for t in farey.neighbours(self.slopes)]

    def __str__(self):
        return "{" + ",".join(str(s) for s in sorted(self.slopes, key=lambda x: x.value)) + "}"


def flip(m: ThetaMarking, kept) -> ThetaMarking:
    kept = [k if isinstance(k, Slope) else Slope.parse(str(k)) for k in kept]
    return ThetaMarking(farey.flip(m.slopes, kept))


def theta(i: int) -> ThetaMarking:
    """The marking containing oo, i and i+1."""
    return ThetaMarking.of("oo", str(i), str(i + 1))


# ---------------------------------------------------------------------------
# marked manifolds and the calculus


def _matrix_text(m) -> str:
    (a, b), (c, d) = m
    return f"[{a} {b} {c} {d}]"


@dataclass(frozen=True)
class MarkedManifold:
    """A piece with marked torus boundary and a complexity upper bound.

    ``expr`` is the assembly expression; for a brick it is the brick id.
    """

    ident: str
    boundary: tuple
    bound: int
    expr: str = ""

    def __post_init__(self):
        if not self.expr:
            object.__setattr__(self, "expr", self.ident)

    @property
    def closed(self) -> bool:
        return not self.boundary

    def recoordinate(self, torus: int, matrix) -> "MarkedManifold":
        """Same manifold, with the chart on one boundary torus changed."""
        if matrix == IDENTITY:
            return self
        tori = list(self.boundary)
        tori[torus] = tori[torus].image(matrix)
        expr = f"(chart {self.expr} {torus} {_matrix_text(matrix)})"
        return MarkedManifold(self.ident, tuple(tori), self.bound, expr)


def _check_torus(m: MarkedManifold, t: int, exc):
    if not 0 <= t < len(m.boundary):
        raise exc(f"{m.ident} has no boundary torus {t}")


def assemble_marked(m1: MarkedManifold, t1: int, m2: MarkedManifold, t2: int, matrix=IDENTITY) -> MarkedManifold:
    """Glue torus ``t1`` of m1 to torus ``t2`` of m2; ``matrix`` maps the first chart to the second."""
    _check_torus(m1, t1, InvalidAssembling)
    _check_torus(m2, t2, InvalidAssembling)
    if _det(matrix) not in (1, -1):
        raise InvalidAssembling("gluing matrix must have determinant +-1")
    if m1.boundary[t1].image(matrix) != m2.boundary[t2]:
        raise InvalidAssembling(
            f"{m1.boundary[t1]} is sent to {m1.boundary[t1].image(matrix)}, not {m2.boundary[t2]}"
        )
    rest = m1.boundary[:t1] + m1.boundary[t1 + 1 :] + m2.boundary[:t2] + m2.boundary[t2 + 1 :]
    expr = f"(assemble {m1.expr} {t1} {m2.expr} {t2} {_matrix_text(matrix)})"
    return MarkedManifold(f"{m1.ident}+{m2.ident}", rest, m1.bound + m2.bound, expr)


def self_assemble(m: MarkedManifold, t1: int, t2: int, matrix) -> MarkedManifold:
    """Glue two tori of one piece; the image may miss the target by one flip."""
    _check_torus(m, t1, InvalidSelfAssembling)
    _check_torus(m, t2, InvalidSelfAssembling)
    if t1 == t2:
        raise InvalidSelfAssembling("need two distinct tori")
    if _det(matrix) not in (1, -1):
        raise InvalidSelfAssembling("gluing matrix must have determinant +-1")
    img = m.boundary[t1].image(matrix)
    target = m.boundary[t2]
    if img != target and img not in target.neighbours():
        raise InvalidSelfAssembling(f"{img} is not within one flip of {target}")
    rest = tuple(x for i, x in enumerate(m.boundary) if i not in (t1, t2))
    expr = f"(self {m.expr} {t1} {t2} {_matrix_text(matrix)})"
    return MarkedManifold(f"{m.ident}*", rest, m.bound + 6, expr)


def _det(m) -> int:
    (a, b), (c, d) = m
    return a * d - b * c


# ---------------------------------------------------------------------------
# expressions


_TOKEN = re.compile(r"\(|\)|\[[^\]]*\]|[^\s()\[\]]+")


def parse_expression(text: str, bricks: dict | None = None) -> MarkedManifold:
    """Rebuild a marked manifold from its assembly expression.

    Forms are ``(assemble A t1 B t2 [a b c d])``, ``(self A t1 t2 [a b c d])``
    and ``(chart A t [a b c d])`` for a change of chart on one torus.
    Leaves are brick ids looked up in ``bricks`` (default: the catalogue
    bricks with boundary).
    """
    if bricks is None:
        bricks = {b.name: b.marked() for b in brick_catalogue() if b.boundary}
    tokens = _TOKEN.findall(text)
    pos = 0

    def matrix(tok):
        vals = [int(x) for x in tok.strip("[]").split()]
        if len(vals) != 4:
            raise ValueError(f"bad matrix {tok}")
        return ((vals[0], vals[1]), (vals[2], vals[3]))

    def node():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        if tok != "(":
            if tok not in bricks:
                raise ValueError(f"unknown brick {tok}")
            return bricks[tok]
        head = tokens[pos]
        pos += 1
        if head == "assemble":
            a = node()
            ta = int(tokens[pos])
            pos += 1
            b = node()
            tb = int(tokens[pos])
            mtx = matrix(tokens[pos + 1])
            pos += 2
            out = assemble_marked(a, ta, b, tb, mtx)
        elif head == "self":
            a = node()
            t1, t2 = int(tokens[pos]), int(tokens[pos + 1])
            mtx = matrix(tokens[pos + 2])
            pos += 3
            out = self_assemble(a, t1, t2, mtx)
        elif head == "chart":
            a = node()
            t1 = int(tokens[pos])
            mtx = matrix(tokens[pos + 1])
            pos += 2
            out = a.recoordinate(t1, mtx)
        else:
            raise ValueError(f"unknown form {head}")
        if tokens[pos] != ")":
            raise ValueError("expected )")
        pos += 1
        return out

    def guarded():
        try:
            return node()
        except IndexError:
            raise ValueError("truncated expression") from None

    result = guarded()
    if pos != len(tokens):
        raise ValueError("trailing tokens")
    return result


# ---------------------------------------------------------------------------
# bricks


@dataclass(frozen=True)
class Brick:
    name: str
    c: int
    boundary: tuple = ()  # ThetaMarking per boundary torus, when known
    description: str = ""
    params: dict = field(default_factory=dict, hash=False, compare=False)
    tori: int | None = None  # defaults to len(boundary)
    opaque: bool = False  # markings known only from a picture

    def __post_init__(self):
        if self.tori is None:
            object.__setattr__(self, "tori", len(self.boundary))

    @property
    def closed(self) -> bool:
        return self.tori == 0

    @property
    def trivial(self) -> bool:
        """Solid tori and T x I layers (c <= 1): the layered solid torus kit."""
        return not self.closed and self.c <= 1

    def marked(self) -> MarkedManifold:
        return MarkedManifold(self.name, self.boundary, self.c)


_PLUS = theta(0)  # {0, 1, oo}
_MINUS = theta(-1)  # {-1, 0, oo}

# marked solid tori (meridian oo): the marking contains the meridian, or
# sits one flip away from every marking that does
SOLID_B0 = Brick("B0", 0, (theta(0),), "marked solid torus, meridian in the marking")
SOLID_B1 = Brick("B1", 0, (ThetaMarking.of("0", "1/2", "1"),), "marked solid torus, meridian one flip away")
TXI_0 = Brick("TxI0", 0, (_PLUS, _PLUS), "marked T x I, same marking on both ends")
TXI_1 = Brick("TxI1", 1, (_PLUS, ThetaMarking.of("0", "1/2", "1")), "marked T x I, ends differ by a flip")
PANTS = Brick("PxS1", 3, (_PLUS, _PLUS, _MINUS), "marked (pair of pants) x S^1, fiber oo, section 0")

# Marking of the (D, (2,1), (3,1)) brick in (fiber, section) coordinates,
# calibrated so that filling it with meridian p*s + (q + (t+1)*p)*h gives
# (S^2, (2,1), (3,1), (p,q), t) (see README).
D23_MARKING = ThetaMarking.of("0", "1/6", "1/5")

# The twisted I-bundle over the Klein bottle, fibred over the Moebius band.
# Not a brick by itself; used to cap non-orientable bases.  Its marking and
# Euler bookkeeping are calibrated (see README).
MOEBIUS = Brick("MxS1", 3, (_PLUS,), "(Moebius band) x~ S^1 piece")


def _closed_seifert_bricks() -> list:
    out = []
    for m in range(5, 11):
        if m != 6:
            out.append(SeifertData(0, True, ((2, 1), (3, 1), (m, 1)), -1))
    for n in range(2, 11):
        for m in range(n, 11):
            if n + m - 2 > 10 or (n == 3 and m >= 5) or (n, m) in ((3, 6), (4, 4)):
                continue
            out.append(SeifertData(0, True, ((2, 1), (n, 1), (m, 1)), -1))
    return out


def _n_brick(name, c, alpha, beta, gamma) -> Brick:
    def fmt(x):
        return f"theta({x[1]})" if isinstance(x, tuple) else str(x)

    args = (alpha, beta, gamma)
    tori = [theta(x[1]) for x in args if isinstance(x, tuple)]
    desc = "chain link, " + ", ".join(fmt(x) for x in args)
    return Brick(name, c, tuple(tori), desc, {"surgery": tuple(fmt(x) for x in args)})


def _th(i):
    return ("theta", i)


def brick_catalogue() -> list:
    return list(_catalogue())


@lru_cache(maxsize=1)
def _catalogue() -> tuple:
    """Closed bricks and bricks with boundary up to complexity 10.

    Bricks on the chain link store their surgery coefficients and the
    theta(i) markings; the three link complements drawn only in a figure
    are opaque (no marking).
    """
    out = []
    for s in _closed_seifert_bricks():
        out.append(Brick(f"S{s.fibers[1][0]}_{s.fibers[2][0]}", seifert_complexity(s), (), str(s), {"seifert": s}))
    out.append(Brick("N34", 10, (), "hyperbolic, H1 = Z/7, chain link surgery (1, -5, -3/2)", {"surgery": ("1", "-5", "-3/2")}))
    out += [SOLID_B0, SOLID_B1, TXI_0, TXI_1, PANTS]
    out.append(Brick("D23", 8, (D23_MARKING,), "(D, (2,1), (3,1)) with marked boundary", {"seifert_piece": ((2, 1), (3, 1))}))
    nb = [
        (8, (1, -4, _th(-1))),
        (9, (1, -5, _th(-1))),
        (9, (1, _th(-2), _th(-2))),
        (9, (_th(-3), _th(-2), _th(-2))),
        (9, (_th(-2), _th(-2), _th(-2))),
    ]
    nb += [(10, (1, 2, _th(i))) for i in (-3, -2, -1, 0)]
    nb += [
        (10, (1, -6, _th(-1))),
        (10, (-5, _th(-2), _th(-1))),
        (10, (-5, _th(-1), _th(-1))),
        (10, (1, _th(-1), _th(-1))),
        (10, (1, _th(-4), _th(-1))),
        (10, (2, _th(-2), _th(-2))),
        (10, (_th(-3), _th(-1), _th(-1))),
    ]
    for k, (c, args) in enumerate(nb):
        out.append(_n_brick(f"N{c}.{k}", c, *args))
    for k in range(3):
        out.append(Brick(f"L{k}", 10, (), "marked complement of the 4-component chain link, preferred markings not transcribed", tori=4, opaque=True))
    return tuple(out)


def closed_brick_for(s: SeifertData):
    for b in _catalogue():
        if b.params.get("seifert") in (s, s.normalized()):
            return b
    return None


# ---------------------------------------------------------------------------
# layered solid tori and lens spaces


def _to_infinity(slope: Slope):
    """An SL2(Z) matrix sending ``slope`` to oo."""
    a, b = slope.p, slope.q
    g, x, y = _egcd(a, b)
    return ((x, y), (-b, a))


def _egcd(a, b):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def _as_slope(x) -> Slope:
    if isinstance(x, Slope):
        return x
    if isinstance(x, tuple):
        return Slope.of(*x)
    return Slope.parse(str(x))


def distance_to_fan(m: ThetaMarking, slope) -> int:
    """Flips from ``m`` to the nearest marking containing ``slope``."""
    mu = _as_slope(slope)
    tri = apply(_to_infinity(mu), m.slopes)
    inf = Slope(1, 0)
    for k, t in enumerate(path_to_root(tri)):
        if inf in t:
            return k
    raise AssertionError("root contains oo")


def _birth_triangle(x: Slope) -> frozenset:
    """The triangle containing x that is nearest to the root."""
    if x.q <= 1:
        return farey.triangle(x, Slope.of(x.p + 1, 1) if x.q else Slope(0, 1), Slope(1, 0) if x.q else Slope(1, 1))
    d = pow(x.p % x.q, -1, x.q)
    c = (x.p * d - 1) // x.q
    u = Slope.of(c, d)
    v = Slope.of(x.p - c, x.q - d)
    return farey.triangle(u, x, v)


def fan_distance(s1, s2) -> int:
    """Flip distance between the markings through s1 and those through s2."""
    a, b = _as_slope(s1), _as_slope(s2)
    if a == b:
        return 0
    x = apply(_to_infinity(a), b)
    return distance_to_fan(ThetaMarking(_birth_triangle(x)), "oo")


def layered_solid_torus_bound(target: ThetaMarking, meridian="oo") -> int:
    """Cheapest marked solid torus with the given meridian and marking."""
    return max(0, distance_to_fan(target, meridian) - 1)


def layered_solid_torus(target: ThetaMarking, meridian="oo") -> MarkedManifold:
    """An explicit layered solid torus: a base brick plus one TxI1 per flip."""
    mu = _as_slope(meridian)
    to_inf = _to_infinity(mu)
    back = _inverse(to_inf)
    tri = apply(to_inf, target.slopes)
    path = path_to_root(tri)
    k = next(i for i, t in enumerate(path) if Slope(1, 0) in t)
    chain = [ThetaMarking(t) for t in reversed(path[: k + 1])]  # fan -> target
    if len(chain) == 1:
        cur = _place(SOLID_B0, chain[0])
    else:
        cur = _place(SOLID_B1, chain[1])
        for a, b in zip(chain[1:], chain[2:]):
            layer = _place_txi(a, b)
            cur = assemble_marked(cur, 0, layer, 0, IDENTITY)
    return cur.recoordinate(0, back)


def _inverse(m):
    (a, b), (c, d) = m
    det = a * d - b * c
    return ((d * det, -b * det), (-c * det, a * det))


def _charts_onto(source: ThetaMarking, target: ThetaMarking):
    """GL2(Z) matrices sending the triangle ``source`` onto ``target``."""
    src = sorted(source.slopes)
    for img in itertools.permutations(sorted(target.slopes)):
        for s0, s1 in itertools.product((1, -1), repeat=2):
            # solve g * src[i] = +-img[i] for i = 0, 1 using their 2x2 basis
            a = ((src[0].p, src[1].p), (src[0].q, src[1].q))
            b = ((s0 * img[0].p, s1 * img[1].p), (s0 * img[0].q, s1 * img[1].q))
            if abs(_det(a)) != 1:
                continue
            g = _mul(b, _inverse(a))
            if abs(_det(g)) == 1 and apply(g, source.slopes) == target.slopes:
                yield g


def _mul(x, y):
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def _place(brick: Brick, marking: ThetaMarking) -> MarkedManifold:
    """A solid-torus brick re-charted (fixing the meridian oo) to carry ``marking``."""
    inf = Slope(1, 0)
    for g in _charts_onto(brick.boundary[0], marking):
        if apply(g, inf) == inf:
            return brick.marked().recoordinate(0, g)
    raise InvalidAssembling(f"{brick.name} cannot carry {marking}")


def _place_txi(a: ThetaMarking, b: ThetaMarking) -> MarkedManifold:
    """A TxI1 brick re-charted so its ends carry a and b (adjacent markings)."""
    for g in _charts_onto(TXI_1.boundary[0], a):
        if TXI_1.boundary[1].image(g) == b:
            return TXI_1.marked().recoordinate(0, g).recoordinate(1, g)
    raise InvalidAssembling(f"{a} and {b} are not adjacent")


def lens_assembly(p: int, q: int) -> MarkedManifold:
    """L(p, q) as two layered solid tori glued by the identity.

    Meridians oo and q/p; the common marking is chosen between the two fans.
    """
    mu2 = Slope.of(q, p)
    path = path_to_root(_birth_triangle(mu2))
    k = next(i for i, t in enumerate(path) if Slope(1, 0) in t)
    target = ThetaMarking(path[1] if k >= 2 else path[0])
    a = layered_solid_torus(target, "oo")
    b = layered_solid_torus(target, mu2)
    return assemble_marked(a, 0, b, 0, IDENTITY)


# ---------------------------------------------------------------------------
# Seifert manifolds from pants, fillings and caps


WINDOW = 8  # Euler offsets explored on each side


@lru_cache(maxsize=None)
def _filling_costs(p, q, marking) -> dict:
    """Euler shift n -> cost of filling ``marking`` with meridian p*s + (q+n*p)*h."""
    out = {}
    for n in range(-WINDOW, WINDOW + 1):
        out[n] = layered_solid_torus_bound(marking, (q + n * p, p))
    return out


def _glue_map(c: int, sign: int = -1):
    return ((1, c), (0, sign))


@lru_cache(maxsize=None)
def _gluing_costs(ma: ThetaMarking, mb: ThetaMarking, sign: int = -1) -> dict:
    """Euler shift -c -> flip distance of the gluing h -> h, s -> sign*s + c*h."""
    out = {}
    for c in range(-WINDOW, WINDOW + 1):
        out[-c] = farey_distance(ma.image(_glue_map(c, sign)).slopes, mb.slopes)
    return out


def _convolve(f: dict, g: dict) -> dict:
    out = {}
    for a, x in f.items():
        for b, y in g.items():
            k = a + b
            if abs(k) <= 2 * WINDOW and (k not in out or x + y < out[k]):
                out[k] = x + y
    return out


_SIGNS = {1: (_PLUS, _PLUS, _MINUS), -1: (_MINUS, _MINUS, _PLUS)}


def _pants_variants():
    """Each pants piece: mirror choice and which of its tori is odd."""
    for mirror in (1, -1):
        base = _SIGNS[mirror]
        for rot in range(3):
            yield base[rot:] + base[:rot]


def _chain_costs(fibers, free: int) -> dict:
    """Euler offset -> min cost of a pants chain with the fibers filled.

    The chain has ``free`` unfilled tori left over (0, 1 or 2); their
    markings are returned keyed alongside so caps can be attached.
    Returns dict (tuple of free markings) -> {offset: cost}.
    """
    k = len(fibers)
    npants = k + free - 2
    results = {}
    if npants < 1:
        return results
    for order in set(itertools.permutations(fibers)):
        for variants in itertools.product(list(_pants_variants()), repeat=npants):
            # linear chain: pants i uses slot 0 for the previous joint and
            # slot 2 for the next one; the remaining slots take fibers or
            # stay free, first-come
            slots = []
            total = {0: 3 * npants}
            joints = []
            for i, v in enumerate(variants):
                left = v[0] if i > 0 else None
                open_slots = [v[1]] + ([v[0]] if i == 0 else []) + ([v[2]] if i == npants - 1 else [])
                slots += open_slots
                if i > 0:
                    joints.append((variants[i - 1][2], left))
            for ma, mb in joints:
                total = _convolve(total, _gluing_costs(ma, mb))
            fill, rest = slots[:k], slots[k:]
            for (p, q), mk in zip(order, fill):
                total = _convolve(total, _filling_costs(p, q, mk))
            key = tuple(rest)
            cur = results.setdefault(key, {})
            for off, c in total.items():
                if off not in cur or c < cur[off]:
                    cur[off] = c
    return results


def _min_merge(*dicts) -> dict:
    out = {}
    for d in dicts:
        for k, v in d.items():
            if k not in out or v < out[k]:
                out[k] = v
    return out


def _cap_costs(ma: ThetaMarking) -> dict:
    """Offsets for attaching the Moebius cap to a free torus (h -> h, s -> c*h - s)."""
    return _gluing_costs(MOEBIUS.boundary[0], ma)


@lru_cache(maxsize=None)
def _self_costs(ma: ThetaMarking, mb: ThetaMarking) -> dict:
    """Self-assembly of two free tori: +6, one flip of slack, layers beyond."""
    out = {}
    for c in range(-WINDOW, WINDOW + 1):
        d = farey_distance(ma.image(_glue_map(c, 1)).slopes, mb.slopes)
        out[-c] = 6 + max(0, d - 1)
    return out


def _assembly_costs(s: SeifertData) -> dict:
    base = s.base
    if base == "S2":
        return _min_merge(*_chain_costs(s.fibers, 0).values())
    if base == "RP2":
        if s.k == 0:
            return _convolve({0: MOEBIUS.c}, _min_merge(*[_filling_costs(1, 0, m) for m in (_PLUS, _MINUS)]))
        parts = [_convolve(c, _cap_costs(key[0])) for key, c in _chain_costs(s.fibers, 1).items()]
        return _convolve({0: MOEBIUS.c}, _min_merge(*parts))
    if base == "K":
        if s.k == 0:
            return _convolve({0: 2 * MOEBIUS.c}, _cap_costs(MOEBIUS.boundary[0]))
        parts = []
        for key, c in _chain_costs(s.fibers, 2).items():
            parts.append(_convolve(_convolve(c, _cap_costs(key[0])), _cap_costs(key[1])))
        return _convolve({0: 2 * MOEBIUS.c}, _min_merge(*parts))
    if base == "T":
        if s.k == 0:
            return _min_merge(_self_costs(_PLUS, _PLUS), _self_costs(_MINUS, _MINUS))
        # the two free tori must carry the same marking type to be self-glued
        parts = [_convolve(c, _self_costs(*key)) for key, c in _chain_costs(s.fibers, 2).items() if key[0] == key[1]]
        return _min_merge(*parts)
    raise NotImplementedError(f"base {base}")


# Seifert fibrations over S^2 that are also torus bundles (flat, finite
# order monodromy), with that monodromy
TORUS_BUNDLES = {
    SeifertData(0, True, ((3, 1), (3, 1), (3, 1)), -1): ((0, -1), (1, -1)),
    SeifertData(0, True, ((2, 1), (4, 1), (4, 1)), -1): ((0, -1), (1, 0)),
    SeifertData(0, True, ((2, 1), (3, 1), (6, 1)), -1): ((0, -1), (1, 1)),
}


def torus_bundle_assembly_bound(monodromy, radius: int = 6) -> int:
    """Self-assembled T x I plus layers: 6 + max(0, d(theta, A theta) - 1), best theta.

    theta ranges over markings within ``radius`` flips of the root.
    """
    best = None
    seen = {ROOT}
    frontier = [ROOT]
    for _ in range(radius + 1):
        nxt = []
        for tri in frontier:
            d = farey_distance(tri, apply(monodromy, tri))
            if best is None or d < best:
                best = d
            for nb in farey.neighbours(tri):
                if nb not in seen:
                    seen.add(nb)
                    nxt.append(nb)
        frontier = nxt
    return 6 + max(0, best - 1)


def seifert_assembly_bound(s: SeifertData) -> int | None:
    """Best bound found by assembling catalogue bricks.

    Generic manifolds use bricks with c <= 3 only; the c = 8 brick
    (D, (2,1), (3,1)) is tried on its fillings.  Lens spaces use two layered solid tori; closed bricks are their own
    bound; flat torus bundles also try a self-assembled T x I.  Either
    orientation of ``s`` may be assembled.
    """
    if s.base == "S2" and s.k <= 2:
        lens = lens_of(s)
        return max(0, fan_distance("oo", (lens.q, lens.p)) - 2) if lens.p else 0
    brick = closed_brick_for(s)
    if brick is not None:
        return brick.c
    vals = []
    if s.normalized() in TORUS_BUNDLES:
        vals.append(torus_bundle_assembly_bound(TORUS_BUNDLES[s.normalized()]))
    for x in (s, s.reversed()):
        if x.base == "S2" and x.k == 3 and x.fibers[:2] == ((2, 1), (3, 1)):
            p, q = x.fibers[2]
            vals.append(8 + layered_solid_torus_bound(D23_MARKING, (q + (x.t + 1) * p, p)))
        c = _assembly_costs(x).get(x.t)
        if c is not None:
            vals.append(c)
    return min(vals) if vals else None
