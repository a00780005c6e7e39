"""
Torsion and balanced diagrams
=============================

Every finite-order element of T is conjugate to a power of some c_i.  A
torsion element has a diagram with the same tree on both sides, and that
diagram both gives the order and writes down the conjugator.
"""

from thompson import diagram as dg
from thompson.rewrite import Word
from thompson.torsion import balanced_form, conjugator, order

# %%
# Orders of powers of c_n follow (n+2)/gcd(n+2, j).
for n in range(4):
    print(n, [order(f"c{n}^{j}") for j in range(1, n + 2)])

# %%
# Conjugate c2 by a word in F and recover the balanced diagram.
s = dg.word_to_diagram("x1 x0^-1 x2")
g = dg.multiply(dg.multiply(s, dg.word_to_diagram("c2")), dg.invert(s))
bal = balanced_form(g)
print(bal.tree, "shift", bal.shift, "order", bal.order)

# %%
# The conjugator writes g as p c_i^j p^-1 with p positive.
p, i, j = conjugator(g)
print(p, f"c{i}^{j}", p.inverse())
print(dg.equals(dg.word_to_diagram(p + Word([("c", i, j)]) + p.inverse()), g))

# %%
# F is torsion-free, so x0 never balances; the search gives up at the cap.
print(order("x0", 32), balanced_form("x0", caret_cap=64))
