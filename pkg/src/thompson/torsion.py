"""Torsion in T: element orders, balanced diagrams and conjugators.

A torsion element has a diagram whose source and target trees coincide;
it is found by repeatedly taking the minimal common expansion of the
source tree with the latest image tree.  F is torsion free and the
search has no a priori size bound, so failure is always reported as
"exceeds the cap", never as a proof of infinite order.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import diagram as _dg
from .diagram import MarkedPair
from .rewrite import Word
from .tree import Tree, minimal_common_expansion

__all__ = ["order", "BalancedForm", "balanced_form", "conjugator"]


def _as_diagram(g) -> MarkedPair:
    return _dg.reduce(g) if isinstance(g, MarkedPair) else _dg.word_to_diagram(g)


def order(g, max_order: int = 64) -> int | None:
    """Smallest ``m <= max_order`` with ``g^m = 1``, or ``None`` if there is none that small."""
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    g = _as_diagram(g)
    e = _dg.identity().key()
    h = g
    for m in range(1, max_order + 1):
        if h.key() == e:
            return m
        h = _dg.multiply(h, g)
    return None


@dataclass(frozen=True)
class BalancedForm:
    """Diagram ``(tree, tree)`` of a torsion element.

    Source leaf ``k`` goes to target leaf ``k - shift`` (mod the number of leaves).
    """

    tree: Tree
    shift: int
    order: int

    def diagram(self) -> MarkedPair:
        n = len(self.tree.leaves)
        return MarkedPair(self.tree, self.tree, (-self.shift) % n)


def balanced_form(g, caret_cap: int = 4096, max_steps: int | None = None) -> BalancedForm | None:
    """Find a diagram of ``g`` with equal source and target trees.

    ``E_k`` is the minimal common expansion of the source tree ``A`` of the
    reduced diagram and the current image tree ``B_k``; the next image is
    ``B_{k+1} = g(E_k)``.  For an element of order ``m`` this stops with
    ``g(E) = E`` after at most ``m - 1`` expansions.  Returns ``None`` once
    ``E`` has more than ``caret_cap`` carets or after ``max_steps``
    expansions (default: ``caret_cap``).
    """
    g = _as_diagram(g)
    a = g.source
    b = g.target
    steps = caret_cap if max_steps is None else max_steps
    for _ in range(max(steps, 1)):
        e = minimal_common_expansion(a, b)
        if e.n_carets > caret_cap:
            return None
        img, mark = _dg.image_tree(g, e, check=False)
        if img == e:
            n = len(e.leaves)
            shift = (-mark) % n
            return BalancedForm(e, shift, n // gcd(n, shift))
        b = img
    return None


def conjugator(g, caret_cap: int = 4096) -> tuple[Word, int, int] | None:
    """``(p, i, j)`` with ``g = p c_i^j p^-1`` and ``p`` positive, or ``None``.

    The identity gives ``(1, 0, 0)``.
    """
    bal = balanced_form(g, caret_cap)
    if bal is None:
        return None
    f = _dg.pcq_factorization(bal.diagram())
    p = Word(("x", i, e) for i, e in f.p)
    if f.c is None:
        return p, 0, 0
    return p, f.c[0], f.c[1]
