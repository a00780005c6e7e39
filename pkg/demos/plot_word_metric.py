"""
Word length and caret count
===========================

The number of carets N of a reduced diagram controls word length in T up
to constants.  Here a breadth-first ball is grown and the two inequalities
D <= 5N and N <= 3|w| are checked on every element, then F-length is set
against T-length.
"""

from collections import Counter

from thompson.metric import D, bfs_ball, distortion_report, rotation_qie_report

# %%
# Ball of radius 6 over {x0, x1, c1}; keys are reduced diagrams.
ball = bfs_ball("x0x1c1", 6)
print(len(ball), "elements")
print(sorted(Counter(length for length, _ in ball.values()).items()))

# %%
# The sandwich inequalities, with the worst ratios seen.
worst_d = max(D(g) / g.n_carets for length, g in ball.values() if length)
worst_n = max(g.n_carets / length for length, g in ball.values() if length)
print(f"max D/N = {worst_d:.3f}, max N/|w| = {worst_n:.3f}")

# %%
# Elements of the F-ball, measured again with the T generators.  On this
# ball lenF/lenT never exceeds 1, so adding c1 shortens nothing.
rep = distortion_report(5)
print(rep.violations())
print({k: round(v, 3) for k, v in rep.max_ratios().items()})

# %%
# Pure rotations by a/2^n need 2^n - 1 carets, which matches their
# 2-adic size.
for row in rotation_qie_report(3, radius=7).rows:
    print(row)
