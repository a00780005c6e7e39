"""Word metrics on F and T.

Exact word lengths come from breadth-first search over reduced diagrams,
deduplicated by their exact key (reduced diagrams are unique, so the key
is a perfect hash of the group element).  Alongside BFS there are the
cheap estimates: the caret count ``N`` and the ``D`` functional of a
normal form.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from multiprocessing import Pool

from . import diagram as _dg
from .diagram import MarkedPair, PcqForm
from .dyadic import Dyadic, two_adic_distance
from .tree import complete

__all__ = [
    "GenSet",
    "GENSETS",
    "gen_set",
    "D",
    "n_carets",
    "bfs_ball",
    "bfs_length",
    "ball_size_estimate",
    "distortion_report",
    "DistortionReport",
    "Rotation",
    "rotation_element",
    "rotation_qie_report",
    "RotationReport",
    "MAX_REPORT_RADIUS",
]

MAX_REPORT_RADIUS = 10


@dataclass(frozen=True)
class GenSet:
    """A named finite generating set, closed under inversion for BFS."""

    name: str
    letters: tuple[str, ...]

    @property
    def moves(self) -> list[tuple[str, MarkedPair]]:
        """``(label, diagram)`` for every generator and its inverse, in a fixed order."""
        out = []
        for s in self.letters:
            g = _dg.generator_diagram(s)
            out.append((s, g))
        for s in self.letters:
            out.append((s + "^-1", _dg.invert(_dg.generator_diagram(s))))
        return out


    def express(self, letter) -> "Word":
        """A word in this set's letters equal to ``x_i`` or ``c_i``.

        Uses ``x_n = x0^-(n-1) x1 x0^(n-1)``, ``c_0 = x_0 c_1`` and
        ``c_{n+1} = x_n^-1 c_n``.
        """
        from .rewrite import Word

        kind, i = _dg._parse_letter(letter)
        if kind == "x":
            if i < 2:
                return Word([("x", i, 1)])
            return Word([("x", 0, 1 - i), ("x", 1, 1), ("x", 0, i - 1)])
        base = next((int(s[1:]) for s in self.letters if s[0] == "c"), None)
        if base is None:
            raise ValueError(f"{self.name} has no torsion generator")
        if i < base:
            return self.express(("x", 0)) + self.express(("c", 1))  # only c_0 = x_0 c_1
        out = Word()
        for n in range(i - 1, base - 1, -1):
            out = out + self.express(("x", n)).inverse()
        return out + Word([("c", base, 1)])


GENSETS = {
    "x0x1": GenSet("x0x1", ("x0", "x1")),
    "x0x1c1": GenSet("x0x1c1", ("x0", "x1", "c1")),
    "x0x1c0": GenSet("x0x1c0", ("x0", "x1", "c0")),
}


def gen_set(gens) -> GenSet:
    if isinstance(gens, GenSet):
        return gens
    try:
        return GENSETS[gens]
    except KeyError:
        raise ValueError(f"unknown generating set {gens!r}; choose from {', '.join(GENSETS)}") from None


# ---------------------------------------------------------------- estimates


def D(f) -> int:
    """Sum of all exponents plus the largest p and q indices plus the c index.

    Missing parts contribute nothing.  Accepts a :class:`PcqForm`, a
    diagram or anything :func:`~thompson.diagram.word_to_diagram` takes.
    """
    if not isinstance(f, PcqForm):
        g = f if isinstance(f, MarkedPair) else _dg.word_to_diagram(f)
        f = _dg.pcq_factorization(g)
    total = sum(e for _, e in f.p) + sum(e for _, e in f.q)
    if f.p:
        total += max(i for i, _ in f.p)
    if f.q:
        total += max(i for i, _ in f.q)
    if f.c is not None:
        total += f.c[0]
    return total


def n_carets(w) -> int:
    """Carets in the reduced diagram of a word (or of a diagram)."""
    g = w if isinstance(w, MarkedPair) else _dg.word_to_diagram(w)
    return _dg.reduce(g).n_carets


# ---------------------------------------------------------------- breadth-first search


def _neighbours(args):
    g, moves = args
    return [_dg.multiply(g, h) for h in moves]


def _expand_frontier(frontier, moves, pool, chunk):
    if pool is None:
        for g in frontier:
            yield [_dg.multiply(g, h) for h in moves]
    else:
        yield from pool.imap(_neighbours, ((g, moves) for g in frontier), chunksize=chunk)


def bfs_ball(gens, radius: int, jobs: int = 1, stop_at=None) -> dict:
    """All elements of word length at most ``radius``.

    Returns an insertion-ordered dict ``key -> (length, diagram)``.  The
    traversal order is fixed (frontier order, then generator order), so
    the result does not depend on ``jobs``.  If ``stop_at`` is a key the
    search ends as soon as it is found.
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    moves = [g for _, g in gen_set(gens).moves]
    e = _dg.identity()
    seen = {e.key(): (0, e)}
    if stop_at == e.key():
        return seen
    frontier = [e]
    pool = Pool(jobs) if jobs and jobs > 1 else None
    try:
        for r in range(1, radius + 1):
            nxt = []
            chunk = max(1, len(frontier) // (8 * jobs)) if pool else 1
            for products in _expand_frontier(frontier, moves, pool, chunk):
                for p in products:
                    k = p.key()
                    if k not in seen:
                        seen[k] = (r, p)
                        nxt.append(p)
                        if k == stop_at:
                            return seen
            frontier = nxt
            if not frontier:
                break
    finally:
        if pool is not None:
            pool.terminate()
    return seen


def bfs_length(g, gens, radius: int, jobs: int = 1) -> int | None:
    """Exact word length of ``g`` over ``gens`` if it is at most ``radius``, else ``None``."""
    g = g if isinstance(g, MarkedPair) else _dg.word_to_diagram(g)
    k = _dg.reduce(g).key()
    ball = bfs_ball(gens, radius, jobs=jobs, stop_at=k)
    hit = ball.get(k)
    return None if hit is None else hit[0]


def ball_size_estimate(gens, radius: int, probe: int = 6) -> int:
    """Extrapolated ball size, from the growth of the exact ball of radius ``probe``."""
    sizes = [0] * (probe + 1)
    for length, _ in bfs_ball(gens, probe).values():
        sizes[length] += 1
    total = sum(sizes)
    if radius <= probe:
        return sum(sizes[: radius + 1])
    rate = sizes[probe] / max(1, sizes[probe - 1])
    return int(total + sizes[probe] * sum(rate**k for k in range(1, radius - probe + 1)))


# ---------------------------------------------------------------- distortion of F in T


@dataclass
class DistortionReport:
    radius: int
    tgens: str
    rows: list = field(default_factory=list)  # (word, lenF, lenT, N, D)

    def violations(self) -> dict:
        """Counts of rows breaking each proved inequality."""
        return {
            "lenT<=lenF": sum(1 for _, f, t, _, _ in self.rows if t > f),
            "N<=3lenT": sum(1 for _, _, t, n, _ in self.rows if n > 3 * t),
            "D<=5N": sum(1 for _, _, _, n, d in self.rows if d > 5 * n),
        }

    def max_ratios(self) -> dict:
        """Empirical maxima over nonidentity rows; they bound the constants at this radius only."""
        rows = [r for r in self.rows if r[1] > 0]
        if not rows:
            return {"lenF/lenT": 0.0, "N/lenT": 0.0, "D/N": 0.0, "lenT/D": 0.0}
        return {
            "lenF/lenT": max(f / t for _, f, t, _, _ in rows),
            "N/lenT": max(n / t for _, _, t, n, _ in rows),
            "D/N": max(d / n for _, _, _, n, d in rows),
            "lenT/D": max(t / d for _, _, t, _, d in rows),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["word", "lenF", "lenT", "N", "D"])
        w.writerows(self.rows)
        return buf.getvalue()


def distortion_report(radius: int, tgens="x0x1c1", jobs: int = 1) -> DistortionReport:
    """Compare F-length and T-length on the whole F-ball of ``radius``.

    Radii above ``MAX_REPORT_RADIUS`` are refused with an estimate of the
    ball sizes involved.
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    if radius > MAX_REPORT_RADIUS:
        est_f = ball_size_estimate("x0x1", radius)
        est_t = ball_size_estimate(tgens, radius)
        raise ValueError(
            f"radius {radius} exceeds {MAX_REPORT_RADIUS}: the F-ball would hold about {est_f:.3g} "
            f"elements and the T-ball about {est_t:.3g}"
        )
    tg = gen_set(tgens)
    fball = bfs_ball("x0x1", radius, jobs=jobs)
    tball = bfs_ball(tg, radius, jobs=jobs)
    rep = DistortionReport(radius, tg.name)
    for key, (len_f, g) in fball.items():
        len_t = tball[key][0]
        f = _dg.pcq_factorization(g)
        rep.rows.append((str(f) or "1", len_f, len_t, g.n_carets, D(f)))
    return rep


# ---------------------------------------------------------------- rotations


@dataclass(frozen=True)
class Rotation:
    """Rotation of the circle by ``a / 2**n``, in lowest terms."""

    a: int
    n: int

    def __post_init__(self):
        if self.n < 0 or not 0 <= self.a < (1 << self.n):
            raise ValueError(f"need 0 <= a < 2^n, got a={self.a}, n={self.n}")
        if self.a == 0 and self.n != 0 or self.a != 0 and self.a % 2 == 0:
            raise ValueError(f"{self.a}/2^{self.n} is not in lowest terms")

    @classmethod
    def of(cls, d) -> "Rotation":
        """Rotation by a dyadic amount, reduced mod 1."""
        d = Dyadic.coerce(d).wrap()
        return cls(d.num, d.exp)

    @property
    def amount(self) -> Dyadic:
        return Dyadic(self.a, self.n)


def rotation_element(r, n: int | None = None) -> MarkedPair:
    """Diagram of a pure rotation: ``complete(n)`` on both sides, marked at leaf ``a``.

    Takes a :class:`Rotation` or the pair ``a, n``.
    """
    if not isinstance(r, Rotation):
        r = Rotation(r, n)
    t = complete(r.n)
    return MarkedPair(t, t, r.a)


@dataclass
class RotationReport:
    max_n: int
    radius: int
    rows: list = field(default_factory=list)  # (a, n, two_adic, carets, bfs_len or None)

    @property
    def carets_match(self) -> bool:
        """``N = d - 1`` on every row, with ``d`` the 2-adic distance to the identity."""
        return all(c == max(d - 1, 0) for _, _, d, c, _ in self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["a", "n", "two_adic", "carets", "bfs_len"])
        for a, n, d, c, length in self.rows:
            w.writerow([a, n, d, c, "" if length is None else length])
        return buf.getvalue()


def rotation_qie_report(max_n: int, radius: int = 8, gens="x0x1c0", jobs: int = 1) -> RotationReport:
    """Carets, 2-adic size and word length of every rotation ``a/2^n`` with ``n <= max_n``."""
    if not 0 <= max_n <= 8:
        raise ValueError("max_n must be between 0 and 8")
    ball = bfs_ball(gens, radius, jobs=jobs) if radius >= 0 else {}
    rep = RotationReport(max_n, radius)
    for n in range(max_n + 1):
        for a in ([0] if n == 0 else range(1, 1 << n, 2)):
            g = _dg.reduce(rotation_element(Rotation(a, n)))
            d = two_adic_distance(Dyadic(a, n), Dyadic(0, 0))
            hit = ball.get(g.key())
            rep.rows.append((a, n, d, g.n_carets, None if hit is None else hit[0]))
    return rep
