"""Marked tree pair diagrams for elements of F and T.

A :class:`MarkedPair` ``(source, target, mark)`` sends source leaf ``k`` to
target leaf ``(mark + k) % n``; equivalently the target leaf at position
``mark`` carries the cyclic label 0 and labels increase to the right with
wraparound.  Elements of F are exactly the diagrams with ``mark == 0``.

Products follow composition of maps: ``multiply(v, u)`` is ``v o u``, so
``u`` acts first.  All public constructors return reduced diagrams.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import tree as _tree
from .dyadic import Dyadic, PLMap
from .tree import Leaf, Tree, all_right, parse_tree, serialize_tree

__all__ = [
    "MarkedPair",
    "PcqForm",
    "identity",
    "generator_diagram",
    "cyclic_labels",
    "reduce",
    "is_reduced",
    "multiply",
    "invert",
    "power",
    "equals",
    "to_plmap",
    "pcq_factorization",
    "pq_from_exponents",
    "word_to_diagram",
    "from_json",
    "to_json",
    "to_dot",
]


@dataclass(frozen=True)
class MarkedPair:
    source: Tree
    target: Tree
    mark: int = 0

    def __post_init__(self):
        n = len(self.source.leaves)
        if len(self.target.leaves) != n:
            raise ValueError("source and target must have the same number of leaves")
        if not 0 <= self.mark < n:
            raise ValueError(f"mark {self.mark} out of range for {n} leaves")

    @property
    def n_carets(self) -> int:
        return len(self.source.leaves) - 1

    @property
    def in_f(self) -> bool:
        return self.mark == 0

    def key(self) -> tuple:
        """Hashable exact identity of the diagram (trees and mark)."""
        return (self.source.leaves, self.target.leaves, self.mark)

    def __mul__(self, other: "MarkedPair") -> "MarkedPair":
        return multiply(self, other)

    def __invert__(self) -> "MarkedPair":
        return invert(self)

    def __str__(self):
        return f"({serialize_tree(self.source)}, {serialize_tree(self.target)}, {self.mark})"


@dataclass(frozen=True)
class PcqForm:
    """Word ``p c q`` with ``p``/``q`` positive/negative F-words and ``c = c_i^j``.

    ``p`` lists ``(index, exponent)`` for ``x_index^exponent`` in increasing
    index order; ``q`` lists ``(index, exponent)`` meaning
    ``x_index^-exponent`` and is also stored in increasing index order (it
    is printed in decreasing order).  ``c`` is ``(i, j)`` or ``None``.
    """

    p: tuple[tuple[int, int], ...] = ()
    c: tuple[int, int] | None = None
    q: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(tuple(t) for t in self.p))
        object.__setattr__(self, "q", tuple(tuple(t) for t in self.q))
        if self.c is not None:
            object.__setattr__(self, "c", tuple(self.c))
        for part in (self.p, self.q):
            idx = [i for i, _ in part]
            if any(b <= a for a, b in zip(idx, idx[1:])):
                raise ValueError("indices must be strictly increasing")
            if any(i < 0 or e < 1 for i, e in part):
                raise ValueError("indices must be >= 0 and exponents >= 1")
        if self.c is not None:
            i, j = self.c
            if not (i >= 0 and 1 <= j < i + 2):
                raise ValueError(f"torsion part c_{i}^{j} needs 1 <= j < i + 2")

    @property
    def is_identity(self) -> bool:
        return not self.p and not self.q and self.c is None

    def letters(self) -> list[tuple[str, int, int]]:
        """The word as ``(kind, index, exponent)`` letters, left to right."""
        out = [("x", i, e) for i, e in self.p]
        if self.c is not None:
            out.append(("c", self.c[0], self.c[1]))
        out.extend(("x", i, -e) for i, e in reversed(self.q))
        return out

    def __str__(self):
        return " ".join(_letter_text(*l) for l in self.letters())


def _letter_text(kind: str, index: int, exp: int) -> str:
    return f"{kind}{index}" if exp == 1 else f"{kind}{index}^{exp}"


# ---------------------------------------------------------------- construction


def identity() -> MarkedPair:
    t = _tree.leaf()
    return MarkedPair(t, t, 0)


def _pair(src: Sequence[Leaf], dst: Sequence[Leaf], mark: int) -> MarkedPair:
    return MarkedPair(Tree(tuple(src)), Tree(tuple(dst)), mark)


def generator_diagram(letter) -> MarkedPair:
    """Reduced diagram of ``x_i`` or ``c_i``.

    ``letter`` is ``("x", i)``, ``("c", i)`` or text such as ``"x3"``.
    ``x_i`` has the all-right source tree with ``i + 2`` carets and a
    target whose last caret is replaced by a left-leaning pair;
    ``c_i`` has ``all_right(i + 1)`` on both sides, marked on the rightmost leaf.
    """
    kind, i = _parse_letter(letter)
    if i < 0:
        raise ValueError("generator index must be non-negative")
    if kind == "c":
        t = all_right(i + 1)
        return MarkedPair(t, t, i + 1)
    src = all_right(i + 2)
    spine = list(src.leaves[:i])
    d, idx = i, (1 << i) - 1
    # the subtree at the end of the spine is ((.,.),.) instead of (.,(.,.))
    spine += [(d + 2, idx << 2), (d + 2, (idx << 2) + 1), (d + 1, (idx << 1) + 1)]
    return MarkedPair(src, Tree(tuple(spine)), 0)


def _parse_letter(letter) -> tuple[str, int]:
    if isinstance(letter, str):
        kind, rest = letter[0], letter[1:]
        if kind not in "xc" or not rest.isdigit():
            raise ValueError(f"not a generator: {letter!r}")
        return kind, int(rest)
    kind, i = letter
    if kind not in ("x", "c"):
        raise ValueError(f"not a generator: {letter!r}")
    return kind, int(i)


def cyclic_labels(t: Tree, mark: int) -> list[int]:
    """Cyclic label of every leaf of a marked target tree."""
    n = len(t.leaves)
    if not 0 <= mark < n:
        raise IndexError(f"mark {mark} out of range for {n} leaves")
    return [(k - mark) % n for k in range(n)]


# ---------------------------------------------------------------- reduction


def _reduce_lists(src: list, dst: list, mark: int) -> int:
    """Reduce in place; returns the new mark.

    Source leaves ``k, k+1`` paired with target leaves ``t, t+1`` (no wrap)
    form a removable caret pair when both are sibling leaves.  Removing one
    pair can only create a new candidate next to it, so a single sweep that
    steps back after each removal finds everything.
    """
    k = 0
    while k < len(src) - 1:
        n = len(src)
        d, i = src[k]
        if i & 1 == 0 and src[k + 1] == (d, i + 1):
            t = (mark + k) % n
            if t != n - 1:
                e, j = dst[t]
                if j & 1 == 0 and dst[t + 1] == (e, j + 1):
                    src[k : k + 2] = [(d - 1, i >> 1)]
                    dst[t : t + 2] = [(e - 1, j >> 1)]
                    if mark > t:
                        mark -= 1
                    if k:
                        k -= 1
                    continue
        k += 1
    return mark


def reduce(g: MarkedPair) -> MarkedPair:
    """Unique reduced diagram equivalent to ``g``."""
    src, dst = list(g.source.leaves), list(g.target.leaves)
    mark = _reduce_lists(src, dst, g.mark)
    if len(src) == len(g.source.leaves):
        return g
    return _pair(src, dst, mark)


def reducible_pairs(g: MarkedPair) -> list[int]:
    """Source positions ``k`` of every currently removable caret pair."""
    src, dst, m = g.source.leaves, g.target.leaves, g.mark
    n = len(src)
    out = []
    for k in range(n - 1):
        d, i = src[k]
        t = (m + k) % n
        if i & 1 == 0 and src[k + 1] == (d, i + 1) and t != n - 1:
            e, j = dst[t]
            if j & 1 == 0 and dst[t + 1] == (e, j + 1):
                out.append(k)
    return out


def remove_pair(g: MarkedPair, k: int) -> MarkedPair:
    """Remove the removable caret pair whose source caret sits on leaves ``k, k+1``."""
    if k not in reducible_pairs(g):
        raise ValueError(f"no removable caret pair at source leaf {k}")
    src, dst = list(g.source.leaves), list(g.target.leaves)
    n = len(src)
    t = (g.mark + k) % n
    d, i = src[k]
    e, j = dst[t]
    src[k : k + 2] = [(d - 1, i >> 1)]
    dst[t : t + 2] = [(e - 1, j >> 1)]
    return _pair(src, dst, g.mark - 1 if g.mark > t else g.mark)


def is_reduced(g: MarkedPair) -> bool:
    return not reducible_pairs(g)


# ---------------------------------------------------------------- products


def _expand(src, dst, mark, parts_by_target):
    """Expand ``(src, dst, mark)`` by grafting ``parts_by_target[p]`` under target leaf ``p``.

    Returns the new source leaves, new target leaves and new mark.
    """
    n = len(src)
    new_src = []
    for k in range(n):
        new_src.extend(_tree._attach(src[k], parts_by_target[(mark + k) % n]))
    new_dst = []
    new_mark = 0
    for p in range(n):
        if p == mark:
            new_mark = len(new_dst)
        new_dst.extend(_tree._attach(dst[p], parts_by_target[p]))
    return new_src, new_dst, new_mark


def multiply(v: MarkedPair, u: MarkedPair) -> MarkedPair:
    """Reduced diagram of ``v o u`` (``u`` applied first)."""
    a, b, mu = u.source.leaves, u.target.leaves, u.mark
    s, t, mv = v.source.leaves, v.target.leaves, v.mark
    if b == s:
        src, dst = list(a), list(t)
        mark = (mu + mv) % len(a)
    else:
        e = _tree._refine(b, s)
        n_v = len(s)
        below_b = _tree.split_over(b, e)
        below_s = _tree.split_over(s, e)
        src, _, mark_u = _expand(a, b, mu, below_b)
        # v's parts are indexed by source leaf; re-index by target leaf
        by_target = [below_s[(p - mv) % n_v] for p in range(n_v)]
        _, dst, mark_v = _expand(s, t, mv, by_target)
        mark = (mark_u + mark_v) % len(e)
    mark = _reduce_lists(src, dst, mark)
    return _pair(src, dst, mark)


def invert(g: MarkedPair) -> MarkedPair:
    n = len(g.source.leaves)
    return MarkedPair(g.target, g.source, (-g.mark) % n)


def power(g: MarkedPair, k: int) -> MarkedPair:
    if k < 0:
        g, k = invert(g), -k
    result = identity()
    base = g
    while k:
        if k & 1:
            result = multiply(result, base)
        base = multiply(base, base)
        k >>= 1
    return result


def equals(g: MarkedPair, h: MarkedPair) -> bool:
    return reduce(g).key() == reduce(h).key()


def image_tree(g: MarkedPair, t: Tree, check: bool = True) -> tuple[Tree, int] | None:
    """``(g(t), mark)`` when ``t`` is an expansion of the source tree of ``g``, else ``None``.

    The result pairs ``t`` with the expanded target tree; no reduction is done.
    Pass ``check=False`` when ``t`` is known to be an expansion.
    """
    a = g.source.leaves
    if check and not _tree.is_expansion(t, g.source):
        return None
    below_a = _tree.split_over(a, t.leaves)
    n = len(a)
    by_target = [below_a[(p - g.mark) % n] for p in range(n)]
    _, dst, mark = _expand(a, g.target.leaves, g.mark, by_target)
    return Tree(tuple(dst)), mark


# ---------------------------------------------------------------- analytic form


def _left_end(leaf: Leaf) -> Dyadic:
    d, i = leaf
    return Dyadic(i, d)


def to_plmap(g: MarkedPair) -> PLMap:
    """Circle homeomorphism: source leaf ``k`` maps linearly onto the target leaf labelled ``k``."""
    src, dst, m = g.source.leaves, g.target.leaves, g.mark
    n = len(src)
    return PLMap([(_left_end(src[k]), _left_end(dst[(m + k) % n])) for k in range(n)])


# ---------------------------------------------------------------- words


def pq_from_exponents(exps: Iterable[int]) -> tuple[tuple[int, int], ...]:
    return tuple((k, r) for k, r in enumerate(exps) if r)


def pcq_factorization(g: MarkedPair) -> PcqForm:
    """The ``p c_i^j q`` word read off the diagram with leaf exponents.

    With ``i + 1`` carets, ``p`` comes from the target tree, ``q`` from the
    source tree and ``j = (leaves - mark) % leaves``.  On a reduced diagram
    this is the normal form.
    """
    n = len(g.source.leaves)
    p = pq_from_exponents(_tree.leaf_exponents(g.target))
    q = pq_from_exponents(_tree.leaf_exponents(g.source))
    j = (n - g.mark) % n
    c = (n - 2, j) if j else None
    return PcqForm(p, c, q)


def word_to_diagram(word) -> MarkedPair:
    """Reduced diagram of a word; the rightmost letter acts first.

    ``word`` is text in the word grammar, a :class:`PcqForm`, or an iterable
    of ``(kind, index, exponent)`` letters.
    """
    if isinstance(word, str):
        from .rewrite import parse_word

        word = parse_word(word)
    if isinstance(word, PcqForm):
        word = word.letters()
    result = identity()
    cache: dict = {}
    for kind, index, exp in reversed(list(_letters(word))):
        key = (kind, index)
        if key not in cache:
            gen = generator_diagram(key)
            cache[key] = (gen, invert(gen))
        gen, gen_inv = cache[key]
        step = gen if exp > 0 else gen_inv
        for _ in range(abs(exp)):
            result = multiply(step, result)
    return result


def _letters(word):
    for letter in word:
        if hasattr(letter, "kind"):
            yield letter.kind, letter.index, letter.exp
        else:
            yield tuple(letter)


# ---------------------------------------------------------------- external formats


def to_json(g: MarkedPair) -> str:
    return json.dumps(
        {"source": serialize_tree(g.source), "target": serialize_tree(g.target), "mark": g.mark}
    )


def from_json(text: str | dict) -> MarkedPair:
    data = json.loads(text) if isinstance(text, str) else text
    return MarkedPair(parse_tree(data["source"]), parse_tree(data["target"]), int(data["mark"]))


def to_dot(g: MarkedPair) -> str:
    """Graphviz digraph with both trees; source leaves numbered 0.., target leaves by cyclic label."""
    src = _tree.to_dot(g.source, "source").splitlines()
    labels = cyclic_labels(g.target, g.mark)
    dst = _tree.to_dot(g.target, "target", labels).splitlines()
    body = ["digraph pair {", "  subgraph cluster_source {", '    label="source";']
    body += ["  " + line for line in src[1:-1]]
    body += ["  }", "  subgraph cluster_target {", '    label="target";']
    body += ["  " + line for line in dst[1:-1]]
    body += ["  }", "}"]
    return "\n".join(body)
