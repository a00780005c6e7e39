"""Exact dyadic rationals and piecewise-linear homeomorphisms of the circle.

The circle is the unit interval with 0 and 1 identified.  A :class:`PLMap`
stores the breakpoints of an orientation preserving homeomorphism as
``(domain, image)`` pairs; between consecutive pairs the map is linear
(the image arc may wrap through 1).  The canonical form always keeps the
point at domain 0 and drops every other point at which the slope does not
change, so two maps are equal exactly when their break lists are equal.
"""

from __future__ import annotations

import bisect
import json
import re
from functools import total_ordering
from typing import Iterable, Sequence

__all__ = [
    "Dyadic",
    "PLMap",
    "canonical",
    "two_adic_distance",
    "c_map",
    "x_map",
    "identity_map",
    "evaluate",
    "compose",
    "inverse",
    "plmap_equal",
    "parse_dyadic",
]


def _two_valuation(n: int) -> int:
    return (n & -n).bit_length() - 1


@total_ordering
class Dyadic:
    """The rational ``num / 2**exp`` kept in lowest terms.

    ``num`` is odd, or ``num == 0`` and ``exp == 0``.  Negative exponents are
    folded into the numerator, so every dyadic rational has exactly one
    representation.
    """

    __slots__ = ("num", "exp")

    def __init__(self, num: int, exp: int = 0):
        if num == 0:
            exp = 0
        elif exp < 0:
            num <<= -exp
            exp = 0
        else:
            v = min(_two_valuation(num), exp)
            num >>= v
            exp -= v
        self.num = num
        self.exp = exp

    @classmethod
    def coerce(cls, value) -> "Dyadic":
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, int):
            return cls(value)
        if isinstance(value, str):
            return parse_dyadic(value)
        raise TypeError(f"cannot interpret {value!r} as a dyadic rational")

    def _align(self, other: "Dyadic") -> tuple[int, int, int]:
        e = max(self.exp, other.exp)
        return self.num << (e - self.exp), other.num << (e - other.exp), e

    def __add__(self, other):
        if isinstance(other, int):
            other = Dyadic(other)
        a, b, e = self._align(other)
        return Dyadic(a + b, e)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = Dyadic(other)
        a, b, e = self._align(other)
        return Dyadic(a - b, e)

    def __rsub__(self, other):
        return Dyadic.coerce(other) - self

    def __neg__(self):
        return Dyadic(-self.num, self.exp)

    def __mul__(self, other):
        if isinstance(other, int):
            other = Dyadic(other)
        return Dyadic(self.num * other.num, self.exp + other.exp)

    __rmul__ = __mul__

    def scale(self, power: int) -> "Dyadic":
        """Multiply by ``2**power`` (``power`` may be negative)."""
        return Dyadic(self.num, self.exp - power)

    def ratio_log2(self, other: "Dyadic") -> int:
        """Return ``s`` with ``self == other * 2**s``; raise if the ratio is not a power of 2."""
        if self.num == 0 or other.num == 0 or (self.num < 0) != (other.num < 0):
            raise ValueError(f"{self} / {other} is not a positive power of 2")
        if abs(self.num) != abs(other.num):
            raise ValueError(f"{self} / {other} is not a power of 2")
        return other.exp - self.exp

    def wrap(self) -> "Dyadic":
        """Representative of this value in ``[0, 1)``."""
        if self.exp == 0:
            return Dyadic(0)
        return Dyadic(self.num % (1 << self.exp), self.exp)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Dyadic(other)
        if not isinstance(other, Dyadic):
            return NotImplemented
        return self.num == other.num and self.exp == other.exp

    def __lt__(self, other):
        if isinstance(other, int):
            other = Dyadic(other)
        a, b, _ = self._align(other)
        return a < b

    def __hash__(self):
        return hash((self.num, self.exp))

    def __repr__(self):
        return f"Dyadic({self.num}, {self.exp})"

    def __str__(self):
        if self.exp == 0:
            return str(self.num)
        return f"{self.num}/2^{self.exp}"

    def as_fraction(self):
        from fractions import Fraction

        return Fraction(self.num, 1 << self.exp)


_DYADIC_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(?:2\s*\^\s*(\d+)|(\d+)))?\s*$")


def parse_dyadic(text: str) -> Dyadic:
    """Parse ``a/2^e``, ``a/b`` with ``b`` a power of two, or an integer."""
    m = _DYADIC_RE.match(text)
    if not m:
        raise ValueError(f"not a dyadic rational: {text!r}")
    num = int(m.group(1))
    if m.group(2) is not None:
        return Dyadic(num, int(m.group(2)))
    if m.group(3) is not None:
        den = int(m.group(3))
        if den <= 0 or den & (den - 1):
            raise ValueError(f"denominator {den} is not a power of 2")
        return Dyadic(num, den.bit_length() - 1)
    return Dyadic(num)


def canonical(num: int, exp: int) -> Dyadic:
    """Canonical circle representative of ``num / 2**exp`` in ``[0, 1)``."""
    if exp < 0:
        raise ValueError("exponent must be non-negative")
    return Dyadic(num, exp).wrap()


def two_adic_distance(x, y) -> int:
    """2-adic distance between two points of the circle.

    If ``x - y`` is ``r / 2**k`` with ``r`` odd the distance is ``2**k``;
    coincident points are at distance 0.  Both arcs between the points give
    the same ``k`` because their lengths sum to 1.
    """
    d = (Dyadic.coerce(x) - Dyadic.coerce(y)).wrap()
    if d.num == 0:
        return 0
    return 1 << d.exp


class PLMap:
    """Dyadic piecewise-linear orientation preserving homeomorphism of the circle."""

    __slots__ = ("breaks",)

    def __init__(self, breaks: Iterable[tuple], *, _trusted: bool = False):
        pts = [(Dyadic.coerce(x).wrap(), Dyadic.coerce(y).wrap()) for x, y in breaks]
        if not _trusted:
            _validate(pts)
            pts = _canonicalize(pts)
        self.breaks: tuple[tuple[Dyadic, Dyadic], ...] = tuple(pts)

    def __call__(self, t) -> Dyadic:
        return evaluate(self, t)

    def __eq__(self, other):
        if not isinstance(other, PLMap):
            return NotImplemented
        return self.breaks == other.breaks

    def __hash__(self):
        return hash(self.breaks)

    def __matmul__(self, other: "PLMap") -> "PLMap":
        return compose(self, other)

    def __repr__(self):
        inner = ", ".join(f"{x}->{y}" for x, y in self.breaks)
        return f"PLMap([{inner}])"

    def pieces(self):
        """Yield ``(x0, y0, dx, dy)`` for each linear piece, ``dy`` measured along the image arc."""
        n = len(self.breaks)
        for k, (x0, y0) in enumerate(self.breaks):
            if k + 1 < n:
                x1, y1 = self.breaks[k + 1]
            else:
                x1, y1 = self.breaks[0][0] + 1, self.breaks[0][1]
            dy = (y1 - y0).wrap()
            if dy.num == 0:
                dy = Dyadic(1)
            yield x0, y0, x1 - x0, dy

    def slopes(self) -> list[int]:
        """Base-2 logarithms of the slopes of the pieces."""
        return [dy.ratio_log2(dx) for _, _, dx, dy in self.pieces()]

    def to_text(self) -> str:
        return "\n".join(f"{x}->{y}" for x, y in self.breaks)

    def to_json(self) -> str:
        return json.dumps([[str(x), str(y)] for x, y in self.breaks])

    @classmethod
    def from_text(cls, text: str) -> "PLMap":
        text = text.strip()
        if text.startswith("["):
            return cls([(parse_dyadic(x), parse_dyadic(y)) for x, y in json.loads(text)])
        pairs = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            left, sep, right = line.partition("->")
            if not sep:
                left, sep, right = line.partition("→")
            if not sep:
                raise ValueError(f"expected 'domain->image', got {line!r}")
            pairs.append((parse_dyadic(left), parse_dyadic(right)))
        return cls(pairs)


def _validate(pts: Sequence[tuple[Dyadic, Dyadic]]) -> None:
    if not pts:
        raise ValueError("a PL map needs at least one breakpoint")
    xs = [x for x, _ in pts]
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("domain coordinates must be strictly increasing")
    # images must go once around the circle in increasing cyclic order
    total = Dyadic(0)
    n = len(pts)
    for k in range(n):
        y0, y1 = pts[k][1], pts[(k + 1) % n][1]
        dy = (y1 - y0).wrap()
        if n > 1 and dy.num == 0:
            raise ValueError("images must be distinct")
        total = total + (dy if n > 1 else Dyadic(1))
    if total != 1:
        raise ValueError("images are not in cyclic increasing order")
    for x0, _, dx, dy in PLMap(pts, _trusted=True).pieces():
        dy.ratio_log2(dx)


def _canonicalize(pts: list[tuple[Dyadic, Dyadic]]) -> list[tuple[Dyadic, Dyadic]]:
    """Rotate so the list starts at domain 0 and drop collinear interior points."""
    m = PLMap(pts, _trusted=True)
    if pts[0][0] != 0:
        y0 = evaluate(m, Dyadic(0))
        pts = [(Dyadic(0), y0)] + list(pts)
        m = PLMap(pts, _trusted=True)
    slopes = m.slopes()
    keep = [pts[0]]
    for k in range(1, len(pts)):
        if slopes[k] != slopes[k - 1]:
            keep.append(pts[k])
    return keep


def evaluate(f: PLMap, t) -> Dyadic:
    """Exact image of ``t`` under ``f``."""
    t = Dyadic.coerce(t).wrap()
    xs = [x for x, _ in f.breaks]
    k = bisect.bisect_right(xs, t) - 1
    if k < 0:
        # only reachable before canonicalization, when the first break is not at 0
        k, t = len(xs) - 1, t + 1
    x0, y0 = f.breaks[k]
    if k + 1 < len(f.breaks):
        x1, y1 = f.breaks[k + 1]
    else:
        x1, y1 = f.breaks[0][0] + 1, f.breaks[0][1]
    dy = (y1 - y0).wrap()
    if dy.num == 0:
        dy = Dyadic(1)
    s = dy.ratio_log2(x1 - x0)
    return (y0 + (t - x0).scale(s)).wrap()


def inverse(f: PLMap) -> PLMap:
    pts = sorted((y, x) for x, y in f.breaks)
    return PLMap(pts)


def compose(*maps: PLMap) -> PLMap:
    """``compose(f, g, h)`` is ``f o g o h`` (``h`` applied first)."""
    if not maps:
        return identity_map()
    result = maps[-1]
    for f in reversed(maps[:-1]):
        result = _compose2(f, result)
    return result


def _compose2(f: PLMap, g: PLMap) -> PLMap:
    ginv = inverse(g)
    points = {x for x, _ in g.breaks}
    points.update(evaluate(ginv, x) for x, _ in f.breaks)
    points.add(Dyadic(0))
    pts = [(x, evaluate(f, evaluate(g, x))) for x in sorted(points)]
    return PLMap(pts)


def plmap_equal(f: PLMap, g: PLMap) -> bool:
    return f.breaks == g.breaks


def identity_map() -> PLMap:
    return PLMap([(Dyadic(0), Dyadic(0))])


def c_map(n: int) -> PLMap:
    """Torsion generator ``c_n`` built from its breakpoints.

    The domain is cut at 1/2, 3/4, ..., 1 - 2**-(n+1) and each of the n+2
    pieces is sent onto the previous one cyclically, so [0, 1/2] lands on
    the last piece.  For n = 1 this is t/2 + 3/4, 2t - 1, t - 1/4.
    """
    if n < 0:
        raise ValueError("generator index must be non-negative")
    cuts = [Dyadic(0)] + [Dyadic((1 << k) - 1, k) for k in range(1, n + 2)]
    m = len(cuts)
    return PLMap([(cuts[k], cuts[(k - 1) % m]) for k in range(m)])


def x_map(n: int) -> PLMap:
    """Generator ``x_n`` of F: identity on [0, 1 - 2**-n], then a rescaled ``x_0``.

    ``x_0`` sends [0, 1/2], [1/2, 3/4], [3/4, 1] onto [0, 1/4], [1/4, 1/2], [1/2, 1].
    """
    if n < 0:
        raise ValueError("generator index must be non-negative")
    start = Dyadic((1 << n) - 1, n)
    width = Dyadic(1, n)
    src = [Dyadic(0), Dyadic(1, 1), Dyadic(3, 2)]
    dst = [Dyadic(0), Dyadic(1, 2), Dyadic(1, 1)]
    pts = [(start + width * a, start + width * b) for a, b in zip(src, dst)]
    if n > 0:
        pts.insert(0, (Dyadic(0), Dyadic(0)))
    return PLMap(pts)
