"""Slopes on a torus and triangles of the Farey tessellation.

A slope is a primitive integer vector ``(p, q)`` up to sign, read as the
fraction p/q (so ``(1, 0)`` is infinity).  Three slopes form a triangle of
the tessellation when each pair has determinant +-1.  Triangles sharing an
edge differ by a flip; the flip graph is the trivalent dual tree.

Tree distances are computed by walking each triangle to the root
``{0, 1, oo}`` along the unique neighbour with smaller entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "InvalidSlope",
    "InvalidTriangle",
    "ROOT",
    "Slope",
    "apply",
    "farey_distance",
    "flip",
    "is_triangle",
    "neighbours",
    "path_to_root",
    "translation_length",
    "triangle",
]


class InvalidSlope(ValueError):
    pass


class InvalidTriangle(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Slope:
    """Reduced fraction p/q with q >= 0, and p = 1 when q = 0."""

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if (p, q) == (0, 0):
            raise InvalidSlope("0/0 is not a slope")
        if math.gcd(p, q) != 1:
            raise InvalidSlope(f"{p}/{q} is not reduced")
        if q < 0 or (q == 0 and p < 0):
            raise InvalidSlope(f"{p}/{q} is not normalized; use Slope.of")

    @classmethod
    def of(cls, p: int, q: int) -> "Slope":
        """Normalize any nonzero vector (dividing out the gcd)."""
        g = math.gcd(p, q)
        if g == 0:
            raise InvalidSlope("0/0 is not a slope")
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        return cls(p, q)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        text = text.strip()
        if text in ("oo", "inf", "1/0"):
            return cls(1, 0)
        if "/" in text:
            a, b = text.split("/")
            return cls.of(int(a), int(b))
        return cls(int(text), 1)

    @property
    def value(self):
        return math.inf if self.q == 0 else Fraction(self.p, self.q)

    def size(self) -> int:
        return abs(self.p) + abs(self.q)

    def __str__(self):
        if self.q == 0:
            return "oo"
        if self.q == 1:
            return str(self.p)
        return f"{self.p}/{self.q}"


def _det(a: Slope, b: Slope) -> int:
    return a.p * b.q - a.q * b.p


def is_triangle(slopes) -> bool:
    s = list(slopes)
    return len(set(s)) == 3 and all(abs(_det(s[i], s[j])) == 1 for i in range(3) for j in range(i + 1, 3))


def triangle(*slopes) -> frozenset:
    """A Farey triangle as a frozenset of three Slopes (strings accepted)."""
    s = [x if isinstance(x, Slope) else Slope.parse(str(x)) for x in slopes]
    if not is_triangle(s):
        raise InvalidTriangle(f"{', '.join(map(str, s))} is not a Farey triangle")
    return frozenset(s)


ROOT = triangle("0", "1", "oo")


def flip(tri: frozenset, kept) -> frozenset:
    """The other triangle on the edge ``kept`` (two slopes of ``tri``)."""
    kept = frozenset(kept)
    if len(kept) != 2 or not kept <= tri:
        raise InvalidTriangle("kept edge must be two slopes of the triangle")
    a, b = sorted(kept)
    (c,) = tri - kept
    plus = Slope.of(a.p + b.p, a.q + b.q)
    minus = Slope.of(a.p - b.p, a.q - b.q)
    return frozenset((a, b, minus if c == plus else plus))


def neighbours(tri: frozenset) -> list:
    s = sorted(tri)
    return [flip(tri, (s[i], s[j])) for i, j in ((0, 1), (0, 2), (1, 2))]


def _parent(tri: frozenset) -> frozenset:
    # drop the largest slope; the replacement is smaller
    big = max(tri, key=lambda x: (x.size(), x))
    return flip(tri, tri - {big})


def path_to_root(tri: frozenset) -> list:
    """Triangles from ``tri`` to ROOT inclusive, along the dual tree."""
    path = [tri]
    while path[-1] != ROOT:
        cur = path[-1]
        if max(x.size() for x in cur) <= 2:
            path.append(ROOT)  # {0, -1, oo} sits next to the root
            break
        path.append(_parent(cur))
    return path


def farey_distance(t1: frozenset, t2: frozenset) -> int:
    """Number of flips between two triangles (distance in the dual tree)."""
    p1, p2 = path_to_root(t1), path_to_root(t2)
    i, j = len(p1) - 1, len(p2) - 1
    while i > 0 and j > 0 and p1[i - 1] == p2[j - 1]:
        i -= 1
        j -= 1
    return i + j


def apply(matrix, x):
    """Act by a 2x2 integer matrix on a Slope or a triangle of Slopes."""
    (a, b), (c, d) = matrix
    if isinstance(x, Slope):
        return Slope.of(a * x.p + b * x.q, c * x.p + d * x.q)
    return frozenset(apply(matrix, s) for s in x)


def translation_length(matrix) -> int:
    """Translation length of a GL2(Z) matrix acting on the dual tree.

    Zero for elliptic elements; for the rest ``d(x, A^2 x) - d(x, A x)``
    at any triangle x.
    """
    (a, b), (c, d) = matrix
    sq = ((a * a + b * c, a * b + b * d), (c * a + d * c, c * b + d * d))
    d1 = farey_distance(ROOT, apply(matrix, ROOT))
    d2 = farey_distance(ROOT, apply(sq, ROOT))
    return max(0, d2 - d1)
