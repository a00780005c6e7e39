"""Words in the infinite generators of T and their normal forms.

Two independent routes lead to the normal form of a word:

* geometric: build the reduced diagram and read its pcq factorization off
  the leaf exponents (authoritative);
* algebraic: rewrite with the defining relators into pcq form, pump the
  torsion letter until the factorization condition holds, then apply the
  four caret-pair reductions until none is left.

Relators used throughout (``i < j`` in the first one)::

    (1) x_j x_i = x_i x_{j+1}          (2) x_k c_{n+1} = c_n x_{k+1}, k < n
    (3) c_n x_0 = c_{n+1}^2            (4) c_n = x_n c_{n+1}
    (5) c_n^(n+2) = 1
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from . import diagram as _dg
from . import tree as _tree
from .diagram import MarkedPair, PcqForm

__all__ = [
    "Letter",
    "Word",
    "WordSyntaxError",
    "NormalFormMismatch",
    "parse_word",
    "format_word",
    "pump",
    "pq_form",
    "to_pcq_algebraic",
    "n_carets_positive",
    "factorization_condition",
    "pump_to_factorization",
    "pcq_diagram",
    "reduction_step",
    "algebraic_normal_form",
    "algebraic_run",
    "AlgebraicRun",
    "VerifyReport",
    "RewriteCapExceeded",
    "normal_form",
    "normal_form_f",
    "verify_normal_form",
    "word_to_plmap",
    "finite_relators",
    "infinite_relators",
    "check_relators",
    "RelatorCheck",
]


class Letter(NamedTuple):
    kind: str  # "x" or "c"
    index: int
    exp: int

    def __str__(self):
        return f"{self.kind}{self.index}" if self.exp == 1 else f"{self.kind}{self.index}^{self.exp}"


class Word(tuple):
    """Immutable sequence of :class:`Letter`; ``str`` gives the text form."""

    def __new__(cls, letters: Iterable = ()):
        return super().__new__(cls, (Letter(*l) for l in letters))

    def __str__(self):
        return format_word(self)

    def __add__(self, other):
        return Word(tuple(self) + tuple(other))

    def inverse(self) -> "Word":
        return Word(Letter(l.kind, l.index, -l.exp) for l in reversed(self))


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NormalFormMismatch(AssertionError):
    """The algebraic and geometric normal forms of a word disagree."""


_TOKEN = re.compile(r"([xc])(\d+)(?:\^(-?\d+))?")


def parse_word(text: str) -> Word:
    """Parse ``x0^-1 c1 x3 c3^2 x1^-1``; the empty string (or ``1``) is the identity."""
    letters = []
    pos = 0
    n = len(text)
    if text.strip() == "1":
        return Word()
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise WordSyntaxError(f"expected a letter like 'x3' or 'c1^2', got {text[pos]!r}", pos)
        end = m.end()
        if end < n and not text[end].isspace():
            raise WordSyntaxError(f"unexpected {text[end]!r}", end)
        exp = 1 if m.group(3) is None else int(m.group(3))
        if exp == 0:
            raise WordSyntaxError("exponent 0 is not allowed", m.start(3))
        letters.append(Letter(m.group(1), int(m.group(2)), exp))
        pos = end
    return Word(letters)


def format_word(letters: Iterable) -> str:
    """Text form; adjacent equal generators are collected into one power."""
    out: list[list] = []
    for kind, index, exp in letters:
        if out and out[-1][0] == kind and out[-1][1] == index and kind == "x":
            out[-1][2] += exp
            if out[-1][2] == 0:
                out.pop()
            continue
        out.append([kind, index, exp])
    return " ".join(str(Letter(*l)) for l in out)


def _as_word(w) -> Word:
    if isinstance(w, str):
        return parse_word(w)
    if isinstance(w, PcqForm):
        return Word(w.letters())
    return Word(w)


# ---------------------------------------------------------------- F words


def _units(letters: Iterable) -> list[Letter]:
    """Split x powers into unit letters and bring c exponents into 1..i+1."""
    out = []
    for kind, index, exp in letters:
        if kind == "x":
            s = 1 if exp > 0 else -1
            out.extend([Letter("x", index, s)] * abs(exp))
        else:
            e = exp % (index + 2)
            if e:
                out.append(Letter("c", index, e))
    return out


def pq_form(letters: Sequence) -> tuple[list[Letter], list[Letter]]:
    """Rewrite an x-word into positive letters followed by negative ones.

    Unit letters in, unit letters out: positives with non-decreasing index,
    then negatives with non-increasing index.  Only relator (1), its
    inverted forms and free cancellation are used.
    """
    w = [Letter("x", l[1], 1 if l[2] > 0 else -1) for l in _units(letters)]
    changed = True
    while changed:
        changed = False
        k = 0
        while k < len(w) - 1:
            a, b = w[k], w[k + 1]
            i, j = a.index, b.index
            if a.index == b.index and a.exp == -b.exp:
                del w[k : k + 2]
                changed = True
                k = max(k - 1, 0)
                continue
            new = None
            if a.exp < 0 and b.exp > 0:
                # x_i^-1 x_j = x_{j+1} x_i^-1 (i < j);  x_i^-1 x_j = x_j x_{i+1}^-1 (i > j)
                new = (Letter("x", j + 1, 1), a) if i < j else (b, Letter("x", i + 1, -1))
            elif a.exp > 0 and b.exp > 0 and i > j:
                # x_i x_j = x_j x_{i+1} (j < i)
                new = (b, Letter("x", i + 1, 1))
            elif a.exp < 0 and b.exp < 0 and i < j:
                # x_i^-1 x_j^-1 = x_{j+1}^-1 x_i^-1 (i < j)
                new = (Letter("x", j + 1, -1), a)
            if new is not None:
                w[k : k + 2] = new
                changed = True
                k = max(k - 1, 0)
                continue
            k += 1
    split = next((k for k, l in enumerate(w) if l.exp < 0), len(w))
    return w[:split], w[split:]


def _collect(units: Sequence[Letter]) -> tuple[tuple[int, int], ...]:
    """``(index, count)`` pairs in increasing index order."""
    counts: dict[int, int] = {}
    for l in units:
        counts[l.index] = counts.get(l.index, 0) + 1
    return tuple(sorted(counts.items()))


def _positive_units(part: Sequence[tuple[int, int]], sign: int) -> list[Letter]:
    out = []
    for i, e in part:
        out.extend([Letter("x", i, sign)] * e)
    return out


def _sorted_positive(part: Sequence[tuple[int, int]], extra: int, at_end: bool):
    """Positive normal form of ``part * x_extra`` (``at_end``) or ``x_extra * part``."""
    units = _positive_units(part, 1)
    units = units + [Letter("x", extra, 1)] if at_end else [Letter("x", extra, 1)] + units
    p, q = pq_form(units)
    assert not q
    return _collect(p)


def _bg_reduce(p, q):
    """Cancel ``x_i ... x_i^-1`` pairs with no ``x_{i+1}^{+-1}`` present (F normal form)."""
    p, q = dict(p), dict(q)
    while True:
        hit = next(
            (i for i in sorted(p) if i in q and (i + 1) not in p and (i + 1) not in q),
            None,
        )
        if hit is None:
            break
        for part in (p, q):
            part[hit] -= 1
            if not part[hit]:
                del part[hit]
            shifted = {(i - 1 if i > hit else i): e for i, e in part.items()}
            part.clear()
            part.update(shifted)
    return tuple(sorted(p.items())), tuple(sorted(q.items()))


# ---------------------------------------------------------------- torsion letters


def pump(n: int, m: int, side: str = "left") -> Word:
    """Pumping identities for ``c_n^m`` with ``1 <= m < n + 2``.

    ``left``: ``x_{n-m+1} c_{n+1}^m``; ``right``: ``c_{n+1}^{m+1} x_{m-1}^-1``.
    """
    if not 1 <= m < n + 2:
        raise ValueError(f"pumping needs 1 <= m < n + 2, got n={n}, m={m}")
    if side == "left":
        return Word([("x", n - m + 1, 1), ("c", n + 1, m)])
    if side == "right":
        return Word([("c", n + 1, m + 1), ("x", m - 1, -1)])
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def _move_left(c: Letter, x: Letter) -> list[Letter]:
    """Rewrite ``c_n^m x_a`` as positive letters followed by at most one c letter."""
    n, m, a = c.index, c.exp, x.index
    prefix = []
    while a > n:
        prefix.append(Letter("x", n - m + 1, 1))
        n += 1
    if a >= m:
        # m applications of relator (2)
        return prefix + [Letter("x", a - m, 1), Letter("c", n + 1, m)]
    # relator (2) a times, then relator (3) swallows the x_0
    rest = m - a - 1
    if rest == 0:
        return prefix + [Letter("c", n + 1, a + 2)]
    # c_n^rest c_{n+1}^(a+2): pump the left factor up to index n+1
    return prefix + [Letter("x", n - rest + 1, 1), Letter("c", n + 1, m + 1)]


def _move_right(x: Letter, c: Letter) -> list[Letter]:
    """Rewrite ``x_a^-1 c_k^l`` as at most one c letter followed by negative letters."""
    a, k, l = x.index, c.index, c.exp
    suffix: list[Letter] = []
    while a > k:
        suffix.insert(0, Letter("x", l - 1, -1))
        k += 1
        l += 1
    if a + l <= k:
        # l applications of x_b^-1 c_k = c_{k+1} x_{b+1}^-1 (b < k)
        return [Letter("c", k + 1, l), Letter("x", a + l, -1)] + suffix
    # after k - a steps x_k^-1 c_k = c_{k+1} absorbs the letter
    t = k - a
    rest = l - t - 1
    if rest == 0:
        return [Letter("c", k + 1, t + 1)] + suffix
    # c_{k+1}^(t+1) c_k^rest: pump the right factor up to index k+1
    return [Letter("c", k + 1, l + 1), Letter("x", rest - 1, -1)] + suffix


def _merge(c1: Letter, c2: Letter) -> list[Letter]:
    """Rewrite ``c_n^m c_k^l`` as a single power, pumping the smaller index."""
    n, m = c1.index, c1.exp
    k, l = c2.index, c2.exp
    prefix, suffix = [], []
    while n < k:
        prefix.append(Letter("x", n - m + 1, 1))
        n += 1
    while k < n:
        suffix.insert(0, Letter("x", l - 1, -1))
        k += 1
        l += 1
    e = (m + l) % (n + 2)
    mid = [Letter("c", n, e)] if e else []
    return prefix + mid + suffix


def _normalize_c(w: list[Letter]) -> list[Letter]:
    out: list[Letter] = []
    for l in w:
        if l.kind == "c":
            e = l.exp % (l.index + 2)
            if not e:
                continue
            if out and out[-1].kind == "c" and out[-1].index == l.index:
                e = (out[-1].exp + e) % (l.index + 2)
                out.pop()
                if e:
                    out.append(Letter("c", l.index, e))
                continue
            l = Letter("c", l.index, e)
        out.append(l)
    return out


class RewriteCapExceeded(RuntimeError):
    pass


def to_pcq_algebraic(word, trace: list | None = None, max_steps: int = 100_000) -> PcqForm:
    """Rewrite a word into algebraic pcq form using relators only.

    Torsion letters are merged pairwise from the left (clearing the x-letters
    between them first), then the remaining positive letters to the right of
    the single torsion letter are moved left and negative letters on its left
    are moved right.  If ``trace`` is a list, every intermediate word is
    appended to it as text.
    """
    w = _normalize_c(_units(_as_word(word)))

    def record(state):
        if trace is not None:
            text = format_word(state)
            if not trace or trace[-1] != text:
                trace.append(text)

    record(w)
    for _ in range(max_steps):
        w = _normalize_c(w)
        cpos = [k for k, l in enumerate(w) if l.kind == "c"]
        if not cpos:
            p, q = pq_form(w)
            record(p + q)
            return PcqForm(_collect(p), None, _collect(q))
        if len(cpos) >= 2:
            a, b = cpos[0], cpos[1]
            p, q = pq_form(w[a + 1 : b])
            if p + q != w[a + 1 : b]:
                w = w[: a + 1] + p + q + w[b:]
            elif p:
                w = w[:a] + _move_left(w[a], p[0]) + w[a + 2 :]
            elif q:
                w = w[: b - 1] + _move_right(q[-1], w[b]) + w[b + 1 :]
            else:
                w = w[:a] + _merge(w[a], w[b]) + w[b + 1 :]
            record(w)
            continue
        a = cpos[0]
        lp, lq = pq_form(w[:a])
        rp, rq = pq_form(w[a + 1 :])
        if lp + lq != w[:a] or rp + rq != w[a + 1 :]:
            w = lp + lq + [w[a]] + rp + rq
        elif rp:
            w = w[:a] + _move_left(w[a], rp[0]) + w[a + 2 :]
        elif lq:
            w = w[: a - 1] + _move_right(lq[-1], w[a]) + w[a + 1 :]
        else:
            c = w[a]
            return PcqForm(_collect(lp), (c.index, c.exp), _collect(rq))
        record(w)
    raise RewriteCapExceeded(f"pcq rewriting did not finish within {max_steps} steps")


# ---------------------------------------------------------------- factorization condition


def n_carets_positive(p: Sequence[tuple[int, int]]) -> int:
    """Carets of the reduced diagram of ``x_{i1}^{r1} ... x_{in}^{rn}`` (normal form)."""
    p = list(p)
    best = 0
    tail = 0
    for i, r in reversed(p):
        tail += r
        best = max(best, i + tail + 1)
    return best


def factorization_condition(f: PcqForm) -> bool:
    """``i + 1 >= max(N(p), N(q))``; forms without a torsion letter pass."""
    if f.c is None:
        return True
    i = f.c[0]
    return i + 1 >= max(n_carets_positive(f.p), n_carets_positive(f.q))


def pump_left(f: PcqForm) -> PcqForm:
    i, j = f.c
    return PcqForm(_sorted_positive(f.p, i - j + 1, at_end=True), (i + 1, j), f.q)


def pump_right(f: PcqForm) -> PcqForm:
    i, j = f.c
    # q is read as x^-1 letters; prepending x_{j-1}^-1 to q means appending x_{j-1} to q^-1
    return PcqForm(f.p, (i + 1, j + 1), _sorted_positive(f.q, j - 1, at_end=True))


def pump_to_factorization(f: PcqForm, cap: int | None = None) -> PcqForm | None:
    """Pump the torsion letter until the factorization condition holds.

    A positive part that is too large is handled by pumping on the right
    (which leaves it untouched while the torsion index grows), a negative
    part that is too large by pumping on the left.  Returns ``None`` if
    ``cap`` pumps do not suffice.
    """
    if f.c is None:
        return f
    if cap is None:
        cap = n_carets_positive(f.p) + n_carets_positive(f.q) + f.c[0] + 1 + 4
    for _ in range(cap + 1):
        i = f.c[0]
        if n_carets_positive(f.p) > i + 1:
            f = pump_right(f)
        elif n_carets_positive(f.q) > i + 1:
            f = pump_left(f)
        else:
            return f
    return None


# ---------------------------------------------------------------- reductions


def _tree_for_positive(p: Sequence[tuple[int, int]], carets: int) -> _tree.Tree:
    """Target tree of the diagram of the positive word ``p`` padded with right carets."""
    if not p:
        return _tree.all_right(carets) if carets else _tree.leaf()
    g = _dg.word_to_diagram([("x", i, e) for i, e in p])
    t = g.target
    caret = _tree.all_right(1)
    while t.n_carets < carets:
        t = _tree.graft(t, t.n_leaves - 1, caret)
    return t


def pcq_diagram(f: PcqForm) -> MarkedPair:
    """The (possibly unreduced) diagram whose pcq factorization is ``f``.

    ``f`` must satisfy the factorization condition.
    """
    if not factorization_condition(f):
        raise ValueError(f"{f} does not satisfy the factorization condition")
    if f.c is None:
        n = max(n_carets_positive(f.p), n_carets_positive(f.q))
        return MarkedPair(_tree_for_positive(f.q, n), _tree_for_positive(f.p, n), 0)
    i, j = f.c
    n = i + 1
    return MarkedPair(_tree_for_positive(f.q, n), _tree_for_positive(f.p, n), (n + 1 - j) % (n + 1))


def _remove_power(part, index):
    """Drop one ``x_index`` and shift the higher letters down by one."""
    out = []
    for i, e in part:
        if i == index:
            if e > 1:
                out.append((i, e - 1))
        elif i > index:
            out.append((i - 1, e))
        else:
            out.append((i, e))
    return tuple(out)


def _reduction_case(f: PcqForm, k: int):
    """Algebraic reduction for the caret pair whose source leaves are ``k, k+1``.

    Returns ``(case, new_form)`` or ``None`` when the word does not meet the
    algebraic condition of that case.
    """
    i, j = f.c
    p, q = dict(f.p), dict(f.q)
    if 0 <= k < j - 2:
        a = k + i - j + 2
        if a in p and k in q and (a + 1) not in p and (k + 1) not in q:
            return 3, PcqForm(_remove_power(f.p, a), (i - 1, j - 1), _remove_power(f.q, k))
    elif k == j - 2:
        if k in q and (k + 1) not in q:
            return 4, PcqForm(f.p, (i - 1, j - 1), _remove_power(f.q, k))
    elif j <= k < i:
        a = k - j
        if a in p and k in q and (a + 1) not in p and (k + 1) not in q:
            return 1, PcqForm(_remove_power(f.p, a), (i - 1, j), _remove_power(f.q, k))
    elif k == i:
        a = i - j
        if a in p and (a + 1) not in p:
            return 2, PcqForm(_remove_power(f.p, a), (i - 1, j), f.q)
    return None


def reduction_step(f: PcqForm) -> PcqForm | None:
    """Remove one caret pair, or return ``None`` if the form is already reduced.

    The algebraic conditions are necessary but not sufficient for a caret
    pair to be removable, so each candidate is confirmed on the diagram
    built from ``f``.
    """
    if not factorization_condition(f):
        raise ValueError(f"{f} does not satisfy the factorization condition")
    if f.c is None:
        return None
    g = pcq_diagram(f)
    for k in _dg.reducible_pairs(g):
        hit = _reduction_case(f, k)
        if hit is None:
            raise AssertionError(f"caret pair at leaf {k} of {f} is reducible but no algebraic case applies")
        return hit[1]
    return None


# ---------------------------------------------------------------- normal forms


@dataclass
class AlgebraicRun:
    """Record of one pass of the algebraic pipeline."""

    pcq: PcqForm
    pumped: PcqForm | None
    result: PcqForm
    trace: list[str] = field(default_factory=list)
    reductions: int = 0
    fell_back: bool = False


def algebraic_run(word, max_steps: int = 100_000) -> AlgebraicRun:
    trace: list[str] = []
    w = _as_word(word)
    f = to_pcq_algebraic(w, trace=trace, max_steps=max_steps)
    if f.c is None:
        p, q = _bg_reduce(f.p, f.q)
        result = PcqForm(p, None, q)
        return AlgebraicRun(f, f, result, trace)
    pumped = pump_to_factorization(f)
    if pumped is None:
        return AlgebraicRun(f, None, normal_form(w), trace, fell_back=True)
    g = pumped
    count = 0
    while True:
        nxt = reduction_step(g)
        if nxt is None:
            break
        g = nxt
        count += 1
    return AlgebraicRun(f, pumped, g, trace, reductions=count)


def algebraic_normal_form(word) -> PcqForm:
    return algebraic_run(word).result


def normal_form(word, verify: bool = False) -> PcqForm:
    """Unique normal form, read off the reduced diagram.

    With ``verify=True`` the algebraic pipeline and the PL-map oracle are run
    as well and any disagreement raises :class:`NormalFormMismatch`.
    """
    w = _as_word(word)
    g = _dg.word_to_diagram(w)
    nf = _dg.pcq_factorization(g)
    if verify:
        report = verify_normal_form(w)
        if not report.agree:
            raise NormalFormMismatch(str(report))
    return nf


@dataclass
class VerifyReport:
    word: str
    geometric: PcqForm
    algebraic: PcqForm
    algebraic_fell_back: bool
    plmap_agree: bool

    @property
    def agree(self) -> bool:
        return self.geometric == self.algebraic and self.plmap_agree and not self.algebraic_fell_back


def word_to_plmap(word):
    """Circle map of a word, composed letter by letter from the generator formulas."""
    from .dyadic import c_map, compose, identity_map, inverse, x_map

    maps = []
    for kind, index, exp in _as_word(word):
        base = x_map(index) if kind == "x" else c_map(index)
        if exp < 0:
            base = inverse(base)
        maps.extend([base] * abs(exp))
    return compose(*maps) if maps else identity_map()


def verify_normal_form(word) -> VerifyReport:
    w = _as_word(word)
    g = _dg.word_to_diagram(w)
    geo = _dg.pcq_factorization(g)
    run = algebraic_run(w)
    plmap_ok = word_to_plmap(w) == word_to_plmap(geo.letters()) == _dg.to_plmap(g)
    return VerifyReport(str(w), geo, run.result, run.fell_back, plmap_ok)


def normal_form_f(word) -> PcqForm:
    """Normal form of a word in the x generators only."""
    w = _as_word(word)
    if any(l.kind == "c" for l in w):
        raise ValueError("normal_form_f takes words in the x generators only")
    return _dg.pcq_factorization(_dg.word_to_diagram(w))


# ---------------------------------------------------------------- presentations


def finite_relators() -> list[tuple[str, Word, Word]]:
    """The six relators of the presentation on ``x0, x1, c = c1``, as ``(name, lhs, rhs)``.

    Relators 3 to 5 are given twice: in the infinite generators and spelled
    out in ``x0, x1, c1`` using ``x2 = x0^-1 x1 x0``, ``c2 = x0^-1 c1 x1``
    and ``c3 = x0^-2 c1 x1^2``.
    """
    w = parse_word
    return [
        ("F1", w("x0 x1^-1 x0^-1 x1 x0"), w("x0^-1 x1 x0 x0 x1^-1")),
        ("F2", w("x0 x1^-1 x0^-2 x1 x0^2"), w("x0^-2 x1 x0^2 x0 x1^-1")),
        ("F3", w("x1 c3"), w("c2 x2")),
        ("F3'", w("x1 x0^-2 c1 x1^2"), w("x0^-1 c1 x1 x0^-1 x1 x0")),
        ("F4", w("c1 x0"), w("c2^2")),
        ("F4'", w("c1 x0"), w("x0^-1 c1 x1 x0^-1 c1 x1")),
        ("F5", w("x1 c2"), w("c1")),
        ("F5'", w("x1 x0^-1 c1 x1"), w("c1")),
        ("F6", w("c1^3"), Word()),
    ]


def infinite_relators(max_index: int = 8) -> list[tuple[str, Word, Word]]:
    """Every instance of relator families (1) to (5) with indices at most ``max_index``."""
    out = []
    for j in range(max_index + 1):
        for i in range(j):
            out.append((f"(1) i={i} j={j}", Word([("x", j, 1), ("x", i, 1)]), Word([("x", i, 1), ("x", j + 1, 1)])))
    for n in range(max_index + 1):
        for k in range(n):
            out.append((f"(2) k={k} n={n}", Word([("x", k, 1), ("c", n + 1, 1)]), Word([("c", n, 1), ("x", k + 1, 1)])))
    for n in range(max_index + 1):
        out.append((f"(3) n={n}", Word([("c", n, 1), ("x", 0, 1)]), Word([("c", n + 1, 2)])))
        out.append((f"(4) n={n}", Word([("c", n, 1)]), Word([("x", n, 1), ("c", n + 1, 1)])))
        out.append((f"(5) n={n}", Word([("c", n, n + 2)]), Word()))
    return out


@dataclass
class RelatorCheck:
    name: str
    lhs: Word
    rhs: Word
    diagram_ok: bool
    plmap_ok: bool

    @property
    def ok(self) -> bool:
        return self.diagram_ok and self.plmap_ok


def check_relators(relators=None) -> list[RelatorCheck]:
    """Check that ``lhs rhs^-1`` reduces to the identity diagram and is the identity map."""
    from .dyadic import identity_map

    if relators is None:
        relators = finite_relators() + infinite_relators()
    e = _dg.identity().key()
    ident = identity_map()
    out = []
    for name, lhs, rhs in relators:
        r = lhs + rhs.inverse()
        out.append(RelatorCheck(name, lhs, rhs, _dg.word_to_diagram(r).key() == e, word_to_plmap(r) == ident))
    return out
