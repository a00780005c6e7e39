import random

import pytest
from hypothesis import given, strategies as st

from conftest import random_word, words, x_words
from thompson import diagram as dg
from thompson.diagram import PcqForm, equals, word_to_diagram
from thompson.rewrite import (
    Letter,
    NormalFormMismatch,
    RewriteCapExceeded,
    Word,
    WordSyntaxError,
    algebraic_run,
    check_relators,
    factorization_condition,
    finite_relators,
    format_word,
    infinite_relators,
    n_carets_positive,
    normal_form,
    normal_form_f,
    parse_word,
    pcq_diagram,
    pump,
    pump_to_factorization,
    reduction_step,
    to_pcq_algebraic,
    verify_normal_form,
    word_to_plmap,
)

W = word_to_diagram


def test_parse_examples():
    w = parse_word("x0^-1 c1 x3 c3^2 x1^-1")
    assert len(w) == 5 and w[0] == Letter("x", 0, -1) and w[3] == Letter("c", 3, 2)
    assert parse_word("") == Word() == parse_word("1")
    assert parse_word("c1^3") == Word([("c", 1, 3)])


@pytest.mark.parametrize("bad,pos", [("x", 0), ("x1^0", 3), ("x1x2", 2), ("y2", 0), ("x1 ^2", 3)])
def test_parse_errors(bad, pos):
    with pytest.raises(WordSyntaxError) as info:
        parse_word(bad)
    assert info.value.position == pos


@given(words())
def test_parse_print_round_trip(w):
    # printing collects adjacent equal letters, so compare the elements and re-parse
    text = format_word(w)
    assert parse_word(text) == parse_word(format_word(parse_word(text)))
    assert W(parse_word(text)) == W(w)


def test_pump_examples():
    assert str(pump(1, 1, "left")) == "x1 c2"
    assert str(pump(1, 1, "right")) == "c2^2 x0^-1"
    assert str(pump(4, 3, "right")) == "c5^4 x2^-1"
    assert equals(W("c4^3"), W(pump(4, 3, "right")))
    for m in (0, 3):
        with pytest.raises(ValueError):
            pump(1, m)


@pytest.mark.parametrize("n", range(9))
def test_pumping_identities(n):
    for m in range(1, n + 2):
        c = W(Word([("c", n, m)]))
        assert equals(c, W(pump(n, m, "left")))
        assert equals(c, W(pump(n, m, "right")))


def test_worked_example_trace():
    trace = []
    f = to_pcq_algebraic("x0^-1 c1 x3 c3^2 x1^-1", trace=trace)
    assert str(f) == "x2 x3^2 c5^4 x4^-1 x1^-2"
    assert "x0^-1 x1 x2^2 c4^4 x1^-2" in trace


def test_pcq_input_is_unchanged():
    assert str(to_pcq_algebraic("x1 x3^2 c4^2 x2^-1")) == "x1 x3^2 c4^2 x2^-1"


@given(words())
def test_algebraic_pcq_is_the_same_element(w):
    assert W(to_pcq_algebraic(w)) == W(w)


def test_n_carets_positive():
    assert n_carets_positive(((0, 1), (2, 3), (4, 1), (8, 2))) == 11
    assert n_carets_positive(((1, 1),)) == 3 == dg.generator_diagram("x1").n_carets
    assert n_carets_positive(()) == 0


def test_caret_formula_on_random_positive_words():
    rng = random.Random(5)
    for _ in range(100):
        idx = sorted(rng.sample(range(7), rng.randint(1, 4)))
        p = tuple((i, rng.randint(1, 4)) for i in idx)
        assert n_carets_positive(p) == W(PcqForm(p, None, ())).n_carets


def test_factorization_condition():
    assert not factorization_condition(PcqForm(((1, 1),), (1, 1), ()))
    assert factorization_condition(PcqForm(((1, 1),), (2, 1), ((1, 1),)))
    assert factorization_condition(PcqForm(((0, 3),), None, ((2, 1),)))


def test_pump_to_factorization_reaches_the_condition():
    f = pump_to_factorization(PcqForm(((1, 1),), (1, 1), ()))
    assert factorization_condition(f)
    assert W(f) == W("x1 c1")


def test_reduction_step_examples():
    assert str(reduction_step(PcqForm(((0, 1),), (2, 2), ((0, 1),)))) == "x0 c1"
    assert reduction_step(PcqForm(((1, 1),), (2, 1), ((1, 1),))) is None
    assert reduction_step(PcqForm(((0, 2), (3, 1)), None, ((1, 1),))) is None
    with pytest.raises(ValueError):
        reduction_step(PcqForm(((1, 1),), (1, 1), ()))


def test_reduction_cases_match_caret_removal():
    # every geometrically removable caret pair of a random diagram is one of the four cases
    from conftest import random_tree

    rng = random.Random(3)
    for _ in range(1500):
        n = rng.randint(1, 7)
        g = dg.MarkedPair(random_tree(rng, n), random_tree(rng, n), rng.randint(1, n))
        f = dg.pcq_factorization(g)
        assert pcq_diagram(f) == g
        if dg.reducible_pairs(g):
            nxt = reduction_step(f)
            assert W(nxt) == dg.reduce(g)
            assert nxt.c is None or nxt.c[0] == f.c[0] - 1


def test_normal_form_examples():
    assert str(normal_form("x0^-1 c1 x3 c3^2 x1^-1")) == "x2 x3^2 c5^4 x4^-1 x1^-2"
    assert str(normal_form("c1 c1 c1")) == ""
    assert str(normal_form("x1 c1")) == "x1 c2^2 x0^-1"


def test_normal_form_f_examples():
    assert str(normal_form_f("x1 x0")) == "x0 x2"
    assert str(normal_form_f("x0 x0^-1")) == ""
    assert str(normal_form_f("x0 x1 x1^-1 x0^-1")) == ""
    with pytest.raises(ValueError):
        normal_form_f("c1")


@given(x_words())
def test_f_normal_forms_satisfy_the_uniqueness_condition(w):
    f = normal_form_f(w)
    p, q = dict(f.p), dict(f.q)
    for i in set(p) & set(q):
        assert i + 1 in p or i + 1 in q


def test_dual_pipelines_agree_on_random_words():
    rng = random.Random(1)
    for _ in range(500):
        w = random_word(rng)
        run = algebraic_run(w)
        nf = normal_form(w)
        assert not run.fell_back
        assert run.result == nf
        assert W(nf) == W(w)
        assert factorization_condition(nf)
        assert nf.c is None or reduction_step(nf) is None


@given(words(8), words(8))
def test_normal_forms_are_canonical(u, v):
    if W(u) == W(v):
        assert normal_form(u) == normal_form(v)
    else:
        assert normal_form(u) != normal_form(v)


@given(words(10, 4))
def test_verify_mode(w):
    rep = verify_normal_form(w)
    assert rep.agree
    assert normal_form(w, verify=True) == rep.geometric


def test_mismatch_and_cap_types():
    assert issubclass(NormalFormMismatch, AssertionError)
    with pytest.raises(RewriteCapExceeded):
        to_pcq_algebraic("x0^-1 c1 x3 c3^2 x1^-1", max_steps=1)


def test_relators_hold():
    results = check_relators(finite_relators() + infinite_relators(8))
    assert len(results) == 9 + 36 + 36 + 27
    bad = [r.name for r in results if not r.ok]
    assert bad == []


def test_relator_check_detects_non_relators():
    (r,) = check_relators([("commutator", parse_word("x0 x1"), parse_word("x1 x0"))])
    assert not r.diagram_ok and not r.plmap_ok


@given(st.integers(0, 6), st.integers(1, 8))
def test_c_exponent_normalisation(i, m):
    assert W(Word([("c", i, m)])) == W(Word([("c", i, m % (i + 2) or i + 2)]))
    assert word_to_plmap(Word([("c", i, m)])) == dg.to_plmap(W(Word([("c", i, m)])))
