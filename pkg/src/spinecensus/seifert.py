"""Closed-form complexity of small geometric manifolds.

Lens spaces, Seifert fibred spaces (by normalized parameters) and Sol torus
bundles (by monodromy).  Geometry is decided with exact rationals.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .farey import translation_length

log = logging.getLogger(__name__)

__all__ = [
    "GEOMETRIES",
    "GeometricCensus",
    "InvalidPair",
    "LensSpace",
    "ROWS",
    "SeifertData",
    "TorusBundleData",
    "enumerate_geometric_census",
    "euler_number",
    "geometry_of",
    "lens_of",
    "lens_spaces",
    "orbifold_euler",
    "pq_norm",
    "seifert_complexity",
    "torus_bundle_complexity",
]

GEOMETRIES = ("S2xR", "E3", "H2xR", "S3", "Nil", "SL2R")
# census rows; "elliptic" means S^3 geometry but not a lens space
ROWS = ("lens", "elliptic", "flat", "Nil", "SL2R", "Sol", "H2xR")
_ROW_OF = {"S3": "elliptic", "E3": "flat", "Nil": "Nil", "SL2R": "SL2R", "H2xR": "H2xR"}

# the formulas are only known to be exact up to this complexity
FORMULA_LIMIT = 10


class InvalidPair(ValueError):
    pass


def pq_norm(p: int, q: int) -> int:
    """|p,q|: subtractive Euclid steps from (p, q) down to (1,0), (0,1) or (1,1)."""
    if p < 0 or q < 0 or (p, q) == (0, 0) or math.gcd(p, q) != 1:
        raise InvalidPair(f"({p}, {q}) is not a coprime non-negative pair")
    steps = 0
    while True:
        if p == 0 or q == 0 or p == q:
            return steps
        if q == 1:
            return steps + p - 1
        if p == 1:
            return steps + q - 1
        if p > q:
            steps += p // q
            p %= q
        else:
            steps += q // p
            q %= p


# ---------------------------------------------------------------------------
# lens spaces


@dataclass(frozen=True, order=True)
class LensSpace:
    """L(p, q) with the canonical q (q = 0 only for S^3 = L(1,0) and S^2 x S^1 = L(0,1))."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or math.gcd(self.p, self.q) != 1:
            raise InvalidPair(f"L({self.p},{self.q}) needs coprime p >= 0")

    @classmethod
    def canonical(cls, p: int, q: int) -> "LensSpace":
        """Representative with q minimal among +-q^(+-1) mod p, inside [0, p/2]."""
        p = abs(p)
        if p == 0:
            return cls(0, 1)
        if p == 1:
            return cls(1, 0)
        q %= p
        if math.gcd(p, q) != 1:
            raise InvalidPair(f"L({p},{q}) needs coprime p and q")
        inv = pow(q, -1, p)
        return cls(p, min(x for x in (q, p - q, inv, p - inv)))

    @property
    def complexity(self) -> int:
        return max(0, pq_norm(self.p, self.q) - 2)

    def __str__(self):
        return f"L({self.p},{self.q})"


def lens_spaces(max_c: int) -> list:
    """Canonical lens spaces (S^2 x S^1 excluded) with complexity <= max_c."""
    # the slowest growth of p against |p,q| is along Fibonacci pairs
    a, b = 1, 1
    for _ in range(max_c + 3):
        a, b = b, a + b
    out = set()
    for p in range(1, b + 1):
        for q in range(0, p // 2 + 1):
            if math.gcd(p, q) == 1 and pq_norm(p, q) - 2 <= max_c:
                out.add(LensSpace.canonical(p, q))
    return sorted(out, key=lambda x: (x.complexity, x.p, x.q))


# ---------------------------------------------------------------------------
# Seifert data


def _surface_name(genus: int, orientable: bool) -> str:
    if orientable:
        return {0: "S2", 1: "T"}.get(genus, f"F{genus}")
    return {1: "RP2", 2: "K"}.get(genus, f"N{genus}")


@dataclass(frozen=True, order=True)
class SeifertData:
    """(F, (p1,q1), ..., (pk,qk), t) with base F given by genus and orientability.

    For a non-orientable base ``genus`` counts cross-caps (RP^2 = 1, K = 2).
    Fibers are kept sorted; each satisfies p > q > 0 with gcd 1.
    """

    genus: int
    orientable_base: bool
    fibers: tuple = ()
    t: int = 0

    def __post_init__(self):
        fib = tuple(sorted((int(p), int(q)) for p, q in self.fibers))
        for p, q in fib:
            if not (p > q > 0) or math.gcd(p, q) != 1:
                raise InvalidPair(f"fiber ({p},{q}) needs p > q > 0 coprime")
        if self.genus < 0 or (not self.orientable_base and self.genus < 1):
            raise ValueError("bad base surface")
        object.__setattr__(self, "fibers", fib)

    @classmethod
    def on(cls, base: str, fibers=(), t: int = 0) -> "SeifertData":
        genus, orientable = {"S2": (0, True), "T": (1, True), "RP2": (1, False), "K": (2, False)}[base]
        return cls(genus, orientable, tuple(fibers), t)

    @property
    def base(self) -> str:
        return _surface_name(self.genus, self.orientable_base)

    @property
    def chi(self) -> int:
        return 2 - 2 * self.genus if self.orientable_base else 2 - self.genus

    @property
    def k(self) -> int:
        return len(self.fibers)

    def reversed(self) -> "SeifertData":
        """Same manifold with the opposite orientation."""
        return SeifertData(
            self.genus, self.orientable_base, tuple((p, p - q) for p, q in self.fibers), -self.t - self.k
        )

    def is_normalized(self) -> bool:
        if 2 * self.t > -self.k:
            return True
        return 2 * self.t == -self.k and self <= self.reversed()

    def normalized(self) -> "SeifertData":
        return self if self.is_normalized() else self.reversed()

    def __str__(self):
        parts = [self.base] + [f"({p},{q})" for p, q in self.fibers] + [str(self.t)]
        return "(" + ", ".join(parts) + ")"


def orbifold_euler(s: SeifertData) -> Fraction:
    return s.chi - sum(1 - Fraction(1, p) for p, _ in s.fibers)


def euler_number(s: SeifertData) -> Fraction:
    return s.t + sum(Fraction(q, p) for p, q in s.fibers)


def geometry_of(s: SeifertData) -> str:
    chi, e = orbifold_euler(s), euler_number(s)
    if chi > 0:
        return "S2xR" if e == 0 else "S3"
    if chi == 0:
        return "E3" if e == 0 else "Nil"
    return "H2xR" if e == 0 else "SL2R"


def lens_of(s: SeifertData) -> LensSpace | None:
    """The lens space of a fibration over S^2 with at most two exceptional fibers."""
    if s.base != "S2" or s.k > 2:
        return None
    fib = list(s.fibers) + [(1, 0)] * (2 - s.k)
    (p1, q1), (p2, q2) = fib
    q1 += s.t * p1
    # meridians p1*s1 + q1*h and p2*s2 + q2*h with s2 = -s1, in (s1, h) coordinates
    m1, m2 = (p1, q1), (-p2, q2)
    g, x, y = _egcd(p1, q1)
    l1 = (-y, x)  # det(m1, l1) = p1*x + q1*y = 1
    # m2 = a*m1 + b*l1
    b = m1[0] * m2[1] - m1[1] * m2[0]
    a = m2[0] * l1[1] - m2[1] * l1[0]
    return LensSpace.canonical(abs(b), a if b >= 0 else -a)


def _egcd(a, b):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


# ---------------------------------------------------------------------------
# torus bundles


@dataclass(frozen=True)
class TorusBundleData:
    monodromy: tuple

    def __post_init__(self):
        (a, b), (c, d) = self.monodromy
        m = ((int(a), int(b)), (int(c), int(d)))
        if abs(m[0][0] * m[1][1] - m[0][1] * m[1][0]) != 1:
            raise ValueError("monodromy must have determinant +-1")
        object.__setattr__(self, "monodromy", m)

    @property
    def trace(self) -> int:
        return self.monodromy[0][0] + self.monodromy[1][1]

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.monodromy
        return a * d - b * c

    def is_anosov(self) -> bool:
        return self.det == 1 and abs(self.trace) > 2

    def norm(self) -> int:
        """||A||: 0 for finite order, else the translation length on the Farey tree."""
        (a, b), (c, d) = self.monodromy
        if self.det == 1 and abs(self.trace) < 2 or self.monodromy in (((1, 0), (0, 1)), ((-1, 0), (0, -1))):
            return 0
        return translation_length(self.monodromy)


def torus_bundle_complexity(b: TorusBundleData) -> int:
    # max, not min: with min every torus bundle would sit at c <= 6 (see README)
    return max(b.norm() + 5, 6)


# ---------------------------------------------------------------------------
# complexity of Seifert manifolds


def seifert_complexity(s: SeifertData) -> int:
    """Complexity by the first matching case of the closed formula.

    Values above FORMULA_LIMIT are upper bounds only.
    """
    if not s.is_normalized():
        raise ValueError(f"{s} is not normalized")
    fib, t = s.fibers, s.t
    if s.base == "S2" and s.k <= 2:
        return lens_of(s).complexity
    if s.base == "T" and s.k == 0:
        return torus_bundle_complexity(TorusBundleData(((1, t), (0, 1))))
    if s.base == "S2" and fib == ((2, 1),) * 4:
        return torus_bundle_complexity(TorusBundleData(((-1, -t - 2), (0, -1))))
    if s.base == "S2" and s.k == 3 and t == -1 and fib[0] == (2, 1):
        (n, qn), (m, qm) = fib[1], fib[2]
        if qn == 1 and qm == 1:
            if n == 3 and m >= 5:
                return m
            return n + m - 2
        if fib[1] == (3, 1) and Fraction(m, qm) > 5:
            return pq_norm(m, qm) + 2
    chi = s.chi
    return max(0, t - 1 + chi) + 6 * (1 - chi) + sum(pq_norm(p, q) + 2 for p, q in fib)


def _pairs(max_norm: int) -> list:
    """Coprime p > q > 0 with |p,q| <= max_norm, by growing from (1,1)."""
    out = []
    level = [(1, 1)]
    for _ in range(max_norm):
        nxt = []
        for p, q in level:
            nxt += [(p + q, q), (p, q + p)]
        out += [x for x in nxt if x[0] > x[1]]
        level = nxt
    return sorted(out, key=lambda x: (pq_norm(*x), x))


def _seifert_candidates(max_c: int):
    """Normalized Seifert data that could have complexity <= max_c.

    Lens spaces (S^2 with <= 2 fibers) are left to the lens enumeration, and
    fibrations over RP^2 with <= 1 fiber are skipped: they are prism
    manifolds already fibred over S^2, or RP^3 # RP^3.
    """
    cost = {pr: pq_norm(*pr) + 2 for pr in _pairs(max_c)}
    pairs = sorted(cost, key=lambda x: (cost[x], x))
    bases = [("S2", 3), ("RP2", 2), ("T", 0), ("K", 0)]
    seen = set()
    for base, kmin in bases:
        genus, orientable = {"S2": (0, True), "T": (1, True), "RP2": (1, False), "K": (2, False)}[base]
        chi = 2 - 2 * genus if orientable else 2 - genus
        budget = max_c - 6 * (1 - chi)
        kmax = max(kmin, budget // 3)
        for k in range(kmin, kmax + 1):
            for fib in _fiber_sets(pairs, cost, k, budget):
                rest = budget - sum(cost[f] for f in fib)
                tmin = -(k // 2)
                tmax = rest + 1 - chi
                for t in range(tmin, tmax + 1):
                    s = SeifertData(genus, orientable, fib, t)
                    if s.is_normalized() and s not in seen:
                        seen.add(s)
                        yield s
    # families whose special cases beat the generic formula
    for n in range(2, max_c + 1):
        for m in range(n, max_c + 3):
            s = SeifertData(0, True, ((2, 1), (n, 1), (m, 1)), -1)
            if s not in seen:
                seen.add(s)
                yield s
    for p, q in pairs:
        if p > 5 * q:
            s = SeifertData(0, True, ((2, 1), (3, 1), (p, q)), -1)
            if s not in seen:
                seen.add(s)
                yield s


def _fiber_sets(pairs, cost, k, budget, start=0):
    """Multisets of k pairs (non-decreasing in ``pairs`` order) within budget."""
    if k == 0:
        yield ()
        return
    for i in range(start, len(pairs)):
        c = cost[pairs[i]]
        if c * k > budget:
            break  # pairs are sorted by cost
        for rest in _fiber_sets(pairs, cost, k - 1, budget - c, i):
            yield (pairs[i],) + rest


# ---------------------------------------------------------------------------
# Sol torus bundles


def _word_matrix(word: str):
    m = ((1, 0), (0, 1))
    for ch in word:
        g = ((1, 1), (0, 1)) if ch == "R" else ((1, 0), (1, 1))
        m = tuple(tuple(sum(m[i][x] * g[x][j] for x in range(2)) for j in range(2)) for i in range(2))
    return m


def _canonical_word(word: str) -> str:
    """Least representative under rotation, reversal and swapping R <-> L."""
    swap = word.translate(str.maketrans("RL", "LR"))
    variants = []
    for w in (word, word[::-1], swap, swap[::-1]):
        variants += [w[i:] + w[:i] for i in range(len(w))]
    return min(variants)


def sol_bundles(max_c: int) -> list:
    """Anosov torus bundles (up to homeomorphism) with complexity <= max_c.

    Each class is a cyclic word in R, L using both letters, up to rotation,
    reversal and swapping letters; the monodromy is +word or -word.
    """
    out = []
    for length in range(2, max_c - 4):
        words = set()
        for bits in range(1, 2 ** length - 1):
            w = "".join("R" if bits >> i & 1 else "L" for i in range(length))
            words.add(_canonical_word(w))
        for w in sorted(words):
            m = _word_matrix(w)
            for sgn in (1, -1):
                a = tuple(tuple(sgn * x for x in row) for row in m)
                out.append((torus_bundle_complexity(TorusBundleData(a)), ("+" if sgn > 0 else "-") + w, a))
    return out


# ---------------------------------------------------------------------------
# census


@dataclass
class GeometricCensus:
    max_c: int
    rows: Counter = field(default_factory=Counter)  # (row, c) -> count
    manifolds: list = field(default_factory=list)  # (row, c, description)

    def row(self, name: str) -> list:
        return [self.rows.get((name, c), 0) for c in range(self.max_c + 1)]


# (K, t=0) is the flat manifold also fibred as (S^2, (2,1)^4, -2); keep the
# S^2 entry.  Table-level note: the same manifold appears in two rows there.
_DUPLICATES = {SeifertData(2, False, (), 0): SeifertData(0, True, ((2, 1),) * 4, -2)}


def enumerate_geometric_census(max_c: int = FORMULA_LIMIT) -> GeometricCensus:
    """Counts of lens spaces, Seifert manifolds by geometry and Sol bundles.

    Sol torus semi-bundles are not enumerated (no formula available), so
    the Sol row counts bundles only.
    """
    if max_c > FORMULA_LIMIT:
        raise ValueError(f"formulas are only valid up to c = {FORMULA_LIMIT}")
    census = GeometricCensus(max_c)
    for lens in lens_spaces(max_c):
        census.rows[("lens", lens.complexity)] += 1
        census.manifolds.append(("lens", lens.complexity, str(lens)))
    for s in _seifert_candidates(max_c):
        if s in _DUPLICATES:
            continue
        c = seifert_complexity(s)
        if c > max_c:
            continue
        row = _ROW_OF[geometry_of(s)]
        census.rows[(row, c)] += 1
        census.manifolds.append((row, c, str(s)))
    for c, word, _ in sol_bundles(max_c):
        if c <= max_c:
            census.rows[("Sol", c)] += 1
            census.manifolds.append(("Sol", c, f"bundle {word}"))
    census.manifolds.sort(key=lambda x: (ROWS.index(x[0]), x[1], x[2]))
    return census
