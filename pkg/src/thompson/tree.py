"""Finite rooted binary trees.

A tree is stored as the left-to-right tuple of its leaves, each leaf being
the standard dyadic interval it cuts out of [0, 1]: the pair ``(depth,
index)`` stands for ``[index / 2**depth, (index + 1) / 2**depth]`` and the
binary digits of ``index`` spell the path from the root (0 = left, 1 =
right).  The shape is determined by this subdivision, so structural
equality is tuple equality, and grafting or merging trees never needs
recursion (deep trees such as ``all_right(4096)`` are routine).

Text form: ``tree := "." | "(" tree "," tree ")"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

Leaf = tuple[int, int]

__all__ = [
    "Tree",
    "TreeSyntaxError",
    "leaf",
    "all_right",
    "complete",
    "counts",
    "graft",
    "is_expansion",
    "minimal_common_expansion",
    "leaf_exponents",
    "parse_tree",
    "serialize_tree",
    "to_dot",
]


class TreeSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Tree:
    leaves: tuple[Leaf, ...]

    @classmethod
    def from_leaves(cls, leaves: Sequence[Leaf]) -> "Tree":
        """Build a tree from its leaf intervals, checking that they tile [0, 1]."""
        leaves = tuple((int(d), int(i)) for d, i in leaves)
        if not leaves:
            raise ValueError("a tree has at least one leaf")
        depth = max(d for d, _ in leaves)
        pos = 0
        for d, i in leaves:
            if d < 0 or not 0 <= i < (1 << d):
                raise ValueError(f"invalid leaf {(d, i)}")
            if i << (depth - d) != pos:
                raise ValueError("leaves do not tile the unit interval in order")
            pos += 1 << (depth - d)
        if pos != 1 << depth:
            raise ValueError("leaves do not cover the unit interval")
        return cls(leaves)

    @property
    def n_leaves(self) -> int:
        return len(self.leaves)

    @property
    def n_carets(self) -> int:
        return len(self.leaves) - 1

    def __str__(self):
        return serialize_tree(self)

    def __repr__(self):
        return f"Tree({serialize_tree(self)!r})"


def leaf() -> Tree:
    return Tree(((0, 0),))


def all_right(n: int) -> Tree:
    """Root caret followed by ``n - 1`` right carets (``n`` carets in all)."""
    if n <= 0:
        raise ValueError("an all-right tree needs at least one caret")
    return Tree(_all_right_leaves(n))


def _all_right_leaves(n: int) -> tuple[Leaf, ...]:
    if n == 0:
        return ((0, 0),)
    out = [(k + 1, (1 << (k + 1)) - 2) for k in range(n)]
    out.append((n, (1 << n) - 1))
    return tuple(out)


def complete(depth: int) -> Tree:
    if depth < 0:
        raise ValueError("depth must be non-negative")
    return Tree(tuple((depth, i) for i in range(1 << depth)))


def counts(t: Tree) -> tuple[int, int]:
    """``(carets, leaves)``."""
    return len(t.leaves) - 1, len(t.leaves)


def _attach(at: Leaf, sub: Sequence[Leaf]) -> list[Leaf]:
    d0, i0 = at
    return [(d0 + d, (i0 << d) + i) for d, i in sub]


def _relative(at: Leaf, leaves: Sequence[Leaf]) -> tuple[Leaf, ...]:
    d0, i0 = at
    return tuple((d - d0, i - (i0 << (d - d0))) for d, i in leaves)


def graft(t: Tree, leaf_index: int, s: Tree) -> Tree:
    """Attach the root of ``s`` at leaf ``leaf_index`` of ``t`` (0-based, left to right)."""
    if not 0 <= leaf_index < len(t.leaves):
        raise IndexError(f"leaf index {leaf_index} out of range for {len(t.leaves)} leaves")
    out = list(t.leaves[:leaf_index])
    out.extend(_attach(t.leaves[leaf_index], s.leaves))
    out.extend(t.leaves[leaf_index + 1 :])
    return Tree(tuple(out))


def _remainder(big: Leaf, small: Leaf) -> list[Leaf]:
    """Pieces of ``big`` to the right of its leftmost descendant ``small``, right to left."""
    db, _ = big
    ds, i = small
    # right siblings of the all-left path from big down to small
    return [(L, (i >> (ds - L)) + 1) for L in range(db + 1, ds + 1)]


def _refine(a: Sequence[Leaf], b: Sequence[Leaf]) -> list[Leaf]:
    """Leaves of the common refinement of two subdivisions."""
    sa = list(reversed(a))
    sb = list(reversed(b))
    out = []
    while sa:
        x = sa.pop()
        y = sb.pop()
        if x == y:
            out.append(x)
        elif x[0] > y[0]:
            out.append(x)
            sb.extend(_remainder(y, x))
        else:
            out.append(y)
            sa.extend(_remainder(x, y))
    return out


def split_over(coarse: Sequence[Leaf], fine: Sequence[Leaf]) -> list[tuple[Leaf, ...]]:
    """For each leaf of ``coarse`` the subtree of ``fine`` hanging below it, as relative leaves.

    ``fine`` must be an expansion of ``coarse``.
    """
    out = []
    k = 0
    n = len(fine)
    for d0, i0 in coarse:
        if fine[k] == (d0, i0):
            out.append(((0, 0),))
            k += 1
            continue
        start = k
        # the subtree ends at the first leaf that is the rightmost descendant of (d0, i0)
        while True:
            d, i = fine[k]
            k += 1
            if d >= d0 and (i + 1) == (i0 + 1) << (d - d0):
                break
            if k >= n:
                raise ValueError("not an expansion")
        out.append(_relative((d0, i0), fine[start:k]))
    return out


def minimal_common_expansion(s: Tree, t: Tree) -> Tree:
    """Smallest tree that is an expansion of both ``s`` and ``t``."""
    if s.leaves == t.leaves:
        return s
    return Tree(tuple(_refine(s.leaves, t.leaves)))


def is_expansion(big: Tree, small: Tree) -> bool:
    """True iff ``big`` is obtained from ``small`` by grafting trees onto leaves."""
    a, b = big.leaves, small.leaves
    if len(a) < len(b):
        return False
    depth = max(max(d for d, _ in a), max(d for d, _ in b))
    breaks_big = {i << (depth - d) for d, i in a}
    return all(i << (depth - d) in breaks_big for d, i in b)


def leaf_exponents(t: Tree) -> list[int]:
    """Leaf exponent of every leaf, left to right.

    The exponent of a leaf is the length of the longest path of left edges
    going up from it that stays off the right side of the tree (the root
    caret and the carets reached from it by right edges only).
    """
    out = []
    for d, i in t.leaves:
        if d == 0:
            out.append(0)
            continue
        tz = d if i == 0 else (i & -i).bit_length() - 1
        if tz == 0:
            out.append(0)
            continue
        top = i >> tz
        top_len = d - tz
        on_right_side = top == (1 << top_len) - 1
        out.append(tz - 1 if on_right_side else tz)
    return out


def serialize_tree(t: Tree) -> str:
    parts = []
    n = len(t.leaves)
    for k, (d, i) in enumerate(t.leaves):
        opens = d if i == 0 else (i & -i).bit_length() - 1
        closes = d if i == (1 << d) - 1 else (~i & (i + 1)).bit_length() - 1
        parts.append("(" * opens + "." + ")" * closes)
        if k + 1 < n:
            parts.append(",")
    return "".join(parts)


def parse_tree(text: str) -> Tree:
    """Parse the ``.`` / ``(l,r)`` grammar; whitespace is ignored."""
    leaves: list[Leaf] = []
    d, i = 0, 0
    # expect: 'node' (a subtree starts), 'comma', 'close-or-end'
    state = "node"
    done = False
    for pos, ch in enumerate(text):
        if ch.isspace():
            continue
        if done:
            raise TreeSyntaxError(f"unexpected {ch!r} after complete tree", pos)
        if state == "node":
            if ch == "(":
                d, i = d + 1, i << 1
            elif ch == ".":
                leaves.append((d, i))
                state = "after"
            else:
                raise TreeSyntaxError(f"expected '(' or '.', got {ch!r}", pos)
        else:
            if ch == "," and d > 0 and i % 2 == 0:
                i += 1
                state = "node"
            elif ch == ")" and d > 0 and i % 2 == 1:
                d, i = d - 1, i >> 1
            else:
                raise TreeSyntaxError(f"unexpected {ch!r}", pos)
        if state == "after" and d == 0:
            done = True
    if not done:
        raise TreeSyntaxError("unexpected end of input", len(text))
    return Tree(tuple(leaves))


def iter_carets(t: Tree) -> Iterator[Leaf]:
    """Addresses ``(depth, index)`` of all carets in prefix order."""
    seen = set()
    for d, i in t.leaves:
        for L in range(d):
            node = (L, i >> (d - L))
            if node not in seen:
                seen.add(node)
                yield node


def to_dot(t: Tree, name: str = "T", labels: Sequence | None = None) -> str:
    """Graphviz description with one node per caret and per leaf."""
    lines = [f"digraph {name} {{", "  node [shape=point];"]
    for d, i in iter_carets(t):
        for child in ((d + 1, 2 * i), (d + 1, 2 * i + 1)):
            lines.append(f'  "{name}_{d}_{i}" -> "{name}_{child[0]}_{child[1]}";')
    for k, (d, i) in enumerate(t.leaves):
        label = str(k if labels is None else labels[k])
        lines.append(f'  "{name}_{d}_{i}" [shape=plaintext, label="{label}"];')
    lines.append("}")
    return "\n".join(lines)
