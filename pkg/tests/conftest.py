import random

from hypothesis import settings, strategies as st

from thompson.rewrite import Word
from thompson.tree import Tree

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def letters(max_index=5, exps=(1, -1, 2, -2)):
    return st.tuples(st.sampled_from("xc"), st.integers(0, max_index), st.sampled_from(exps))


def words(max_len=12, max_index=5):
    return st.lists(letters(max_index), max_size=max_len).map(Word)


def x_words(max_len=10, max_index=4):
    return st.lists(st.tuples(st.just("x"), st.integers(0, max_index), st.sampled_from((1, -1))), max_size=max_len).map(Word)


@st.composite
def trees(draw, max_carets=6):
    n = draw(st.integers(0, max_carets))
    leaves = [(0, 0)]
    for _ in range(n):
        k = draw(st.integers(0, len(leaves) - 1))
        d, i = leaves[k]
        leaves[k : k + 1] = [(d + 1, 2 * i), (d + 1, 2 * i + 1)]
    return Tree(tuple(leaves))


def random_tree(rng: random.Random, carets: int) -> Tree:
    leaves = [(0, 0)]
    for _ in range(carets):
        k = rng.randrange(len(leaves))
        d, i = leaves[k]
        leaves[k : k + 1] = [(d + 1, 2 * i), (d + 1, 2 * i + 1)]
    return Tree(tuple(leaves))


def random_word(rng: random.Random, max_len=12, max_index=5) -> Word:
    n = rng.randint(0, max_len)
    return Word((rng.choice("xc"), rng.randint(0, max_index), rng.choice((1, -1, 2, -2))) for _ in range(n))
