"""
Normal forms in T
=================

Words in the generators x_i and c_i are turned into reduced marked tree
pair diagrams, and the diagram is read back as a word p c_i^j q^-1.  A
second, purely algebraic rewriter reaches the same word, and both are
checked against the exact piecewise-linear map of the circle.
"""

from thompson import diagram as dg
from thompson.rewrite import normal_form, pump, to_pcq_algebraic, verify_normal_form

# %%
# A word and its reduced diagram.  The mark names the target leaf that
# source leaf 0 lands on.
w = "x0^-1 c1 x3 c3^2 x1^-1"
g = dg.word_to_diagram(w)
print(g)
print("carets:", g.n_carets)

# %%
# Reading the diagram back gives the normal form.
print(normal_form(w))

# %%
# The algebraic pipeline moves x's to the left, pumps the c letter up when
# the word is too short to be realised by a diagram, then removes caret
# pairs.  Every intermediate word is the same group element.
trace = []
to_pcq_algebraic(w, trace=trace)
for step in trace:
    print("  ", step or "1")

# %%
# Pumping raises the index of a power of c without changing the element.
for side in ("left", "right"):
    print(side, pump(4, 3, side))

# %%
# Verification runs both pipelines and compares the PL maps exactly.
rep = verify_normal_form("x1 c1")
print(rep.geometric, rep.agree)

# %%
# Since c1 has order 3, a cube collapses to the empty word.
print(repr(str(normal_form("c1 c1 c1"))))
