import random
from math import gcd

import pytest

from thompson import diagram as dg
from thompson.diagram import equals, generator_diagram, word_to_diagram
from thompson.rewrite import Word
from thompson.torsion import balanced_form, conjugator, order
from thompson.tree import all_right

W = word_to_diagram


def test_order_examples():
    assert order("c1") == 3
    assert order("c3") == 5
    assert order("c2^2") == 2
    assert order("") == 1
    assert order("x0", 20) is None
    with pytest.raises(ValueError):
        order("c1", 0)


@pytest.mark.parametrize("n", range(9))
def test_order_of_c_powers(n):
    for j in range(1, n + 2):
        assert order(f"c{n}^{j}") == (n + 2) // gcd(n + 2, j)


@pytest.mark.parametrize("i", range(6))
def test_balanced_form_of_generators(i):
    bal = balanced_form(generator_diagram(("c", i)))
    assert bal.tree == all_right(i + 1)
    assert (bal.shift, bal.order) == (1, i + 2)
    assert equals(bal.diagram(), generator_diagram(("c", i)))


def _conjugate(s, i, j):
    return dg.multiply(dg.multiply(W(s), W(Word([("c", i, j)]))), dg.invert(W(s)))


def test_balanced_form_on_conjugates():
    rng = random.Random(2)
    for _ in range(40):
        s = Word(("x", rng.randint(0, 3), 1) for _ in range(rng.randint(0, 3)))
        g = _conjugate(s, 2, 1)
        bal = balanced_form(g)
        assert bal.order == order(g) == 4
        n = bal.tree.n_leaves
        assert bal.order == n // gcd(n, bal.shift)
        assert equals(bal.diagram(), g)


def test_conjugator_examples():
    assert conjugator("c2") == (Word(), 2, 1)
    p, i, j = conjugator("x0 c1 x0^-1")
    assert equals(W(p + Word([("c", i, j)]) + p.inverse()), W("x0 c1 x0^-1"))
    assert order(W(Word([("c", i, j)]))) == 3
    assert conjugator("x0", caret_cap=64) is None
    assert conjugator("") == (Word(), 0, 0)


def test_non_torsion_exceeds_the_cap():
    assert balanced_form("x0", caret_cap=128) is None
    assert balanced_form("x1 x0^-1", caret_cap=128) is None
    assert balanced_form("x0", caret_cap=10_000, max_steps=50) is None


def test_random_conjugates_within_the_step_bound():
    rng = random.Random(9)
    for _ in range(60):
        s = Word((rng.choice("xc"), rng.randint(0, 4), rng.choice((1, -1))) for _ in range(rng.randint(0, 4)))
        i = rng.randint(0, 4)
        j = rng.randint(1, i + 1)
        g = _conjugate(s, i, j)
        m = order(g)
        # the construction must stop within m - 1 expansions
        assert balanced_form(g, max_steps=max(m - 1, 1)) is not None
        p, ii, jj = conjugator(g)
        assert all(l.exp > 0 and l.kind == "x" for l in p)
        h = W(p + Word([("c", ii, jj)]) + p.inverse()) if jj else dg.identity()
        assert equals(g, h)
