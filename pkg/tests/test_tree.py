import pytest
from hypothesis import given, strategies as st

from conftest import trees
from thompson.rewrite import _tree_for_positive
from thompson.tree import (
    Tree,
    TreeSyntaxError,
    all_right,
    complete,
    counts,
    graft,
    is_expansion,
    leaf,
    leaf_exponents,
    minimal_common_expansion,
    parse_tree,
    serialize_tree,
    to_dot,
)


# nested-tuple oracle: None is a leaf, (l, r) a caret
def nested(t: Tree):
    s = serialize_tree(t).replace(".", "None")
    return eval(s)


def nested_expands(big, small):
    if small is None:
        return True
    return big is not None and nested_expands(big[0], small[0]) and nested_expands(big[1], small[1])


def all_trees(carets):
    if carets == 0:
        return [None]
    out = []
    for k in range(carets):
        out += [(l, r) for l in all_trees(k) for r in all_trees(carets - 1 - k)]
    return out


def from_nested(n):
    text = repr(n).replace("None", ".").replace(" ", "")
    return parse_tree(text)


def test_all_right():
    assert counts(all_right(1)) == (1, 2)
    assert counts(all_right(3)) == (3, 4)
    assert all_right(11).n_carets == 11
    assert serialize_tree(all_right(2)) == "(.,(.,.))"
    with pytest.raises(ValueError):
        all_right(0)


def test_complete():
    assert complete(0) == leaf()
    assert complete(1).n_carets == 1
    assert complete(3).n_carets == 7
    assert counts(complete(4)) == (15, 16) == (len(list(_carets(nested(complete(4))))), 16)
    with pytest.raises(ValueError):
        complete(-1)


def _carets(n):
    if n is not None:
        yield n
        yield from _carets(n[0])
        yield from _carets(n[1])


def test_counts():
    assert counts(leaf()) == (0, 1)
    assert counts(all_right(5)) == (5, 6)


def test_graft():
    t = parse_tree("((.,.),.)")
    assert graft(leaf(), 0, t) == t
    assert graft(all_right(1), 1, all_right(1)) == all_right(2)
    g = graft(all_right(1), 0, all_right(1))
    assert serialize_tree(g) == "((.,.),.)" and g.n_carets == 2
    with pytest.raises(IndexError):
        graft(leaf(), 1, leaf())


def test_graft_example_shape():
    g = graft(all_right(1), 0, all_right(2))
    assert serialize_tree(g) == "((.,(.,.)),.)"
    assert g.n_carets == 3


@given(trees(), trees(3), st.data())
def test_graft_adds_carets_and_expands(t, s, data):
    k = data.draw(st.integers(0, t.n_leaves - 1))
    g = graft(t, k, s)
    assert g.n_carets == t.n_carets + s.n_carets
    assert is_expansion(g, t)


def test_is_expansion_examples():
    t = complete(2)
    assert is_expansion(t, t)
    assert is_expansion(all_right(3), all_right(2))
    assert not is_expansion(all_right(2), complete(2))


@given(trees(5), trees(5))
def test_is_expansion_matches_nested_oracle(a, b):
    assert is_expansion(a, b) == nested_expands(nested(a), nested(b))


def test_minimal_common_expansion_examples():
    t = parse_tree("((.,.),.)")
    m = minimal_common_expansion(all_right(2), t)
    assert serialize_tree(m) == "((.,.),(.,.))" and m.n_carets == 3
    assert minimal_common_expansion(t, t) == t
    assert minimal_common_expansion(leaf(), t) == t


def test_minimal_common_expansion_by_brute_force():
    # every pair of trees with at most 3 carets, against the smallest common expansion with at most 6
    small = [t for c in range(4) for t in all_trees(c)]
    pool = [t for c in range(7) for t in all_trees(c)]
    for a in small:
        for b in small:
            common = [t for t in pool if nested_expands(t, a) and nested_expands(t, b)]
            best = min(len(list(_carets(t))) for t in common)
            winners = [t for t in common if len(list(_carets(t))) == best]
            assert len(winners) == 1
            assert minimal_common_expansion(from_nested(a), from_nested(b)) == from_nested(winners[0])


@given(trees(), trees(), trees())
def test_minimal_common_expansion_laws(a, b, c):
    m = minimal_common_expansion
    assert is_expansion(m(a, b), a) and is_expansion(m(a, b), b)
    assert m(a, b) == m(b, a)
    assert m(a, a) == a
    assert m(m(a, b), c) == m(a, m(b, c))


def test_leaf_exponents_of_the_figure_tree():
    # positive part x0 x2^3 x4 x8^2 on 12 leaves
    t = _tree_for_positive(((0, 1), (2, 3), (4, 1), (8, 2)), 11)
    assert t.n_leaves == 12
    assert leaf_exponents(t) == [1, 0, 3, 0, 1, 0, 0, 0, 2, 0, 0, 0]


def test_leaf_exponents_simple():
    assert leaf_exponents(all_right(6)) == [0] * 7
    assert leaf_exponents(complete(2)) == [1, 0, 0, 0]
    assert leaf_exponents(leaf()) == [0]


@pytest.mark.parametrize("text,expected", [(".", leaf()), ("(.,(.,.))", all_right(2)), ("((.,.),(.,.))", complete(2))])
def test_parse_examples(text, expected):
    assert parse_tree(text) == expected
    assert serialize_tree(expected) == text


@given(trees(8))
def test_serialization_round_trip(t):
    assert parse_tree(serialize_tree(t)) == t
    assert Tree.from_leaves(t.leaves) == t
    assert t.n_leaves == t.n_carets + 1


@pytest.mark.parametrize("bad,pos", [("", 0), ("(.,.", 4), ("(..)", 2), ("(.,.))", 5), ("x", 0), (".,", 1)])
def test_parse_errors_carry_a_position(bad, pos):
    with pytest.raises(TreeSyntaxError) as info:
        parse_tree(bad)
    assert info.value.position == pos


def test_from_leaves_rejects_gaps():
    with pytest.raises(ValueError):
        Tree.from_leaves([(1, 0), (2, 3)])


def test_deep_trees_need_no_recursion():
    t = all_right(5000)
    assert parse_tree(serialize_tree(t)) == t
    assert minimal_common_expansion(t, complete(3)).n_carets == 5000 + 6 - 2


def test_dot_export():
    dot = to_dot(complete(1), "T")
    assert dot.startswith("digraph T {") and dot.count("->") == 2
