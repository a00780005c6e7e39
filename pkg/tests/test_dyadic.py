import pytest
from hypothesis import given, strategies as st

from thompson.dyadic import (
    Dyadic,
    PLMap,
    c_map,
    canonical,
    compose,
    evaluate,
    identity_map,
    inverse,
    parse_dyadic,
    plmap_equal,
    two_adic_distance,
    x_map,
)

dyadics = st.builds(lambda n, e: canonical(n, e), st.integers(0, 2**10), st.integers(0, 10))


def test_canonical_examples():
    assert canonical(2, 2) == Dyadic(1, 1)
    assert canonical(5, 2) == Dyadic(1, 2)
    z = canonical(0, 7)
    assert (z.num, z.exp) == (0, 0)


def test_text_forms():
    assert str(Dyadic(3, 2)) == "3/2^2"
    assert parse_dyadic("3/2^2") == parse_dyadic("3/4") == Dyadic(3, 2)
    assert parse_dyadic("0") == Dyadic(0)
    with pytest.raises(ValueError):
        parse_dyadic("1/3")


def test_two_adic_distance_examples():
    assert two_adic_distance(Dyadic(1, 1), Dyadic(1, 2)) == 4
    assert two_adic_distance(Dyadic(3, 4), Dyadic(3, 4)) == 0
    assert two_adic_distance(Dyadic(3, 2), Dyadic(1, 2)) == 2


@given(dyadics, dyadics, dyadics)
def test_two_adic_is_an_ultrametric(x, y, z):
    d = two_adic_distance
    assert d(x, y) == d(y, x)
    assert (d(x, y) == 0) == (x == y)
    assert d(x, z) <= max(d(x, y), d(y, z)) <= d(x, y) + d(y, z)


@given(dyadics, dyadics)
def test_two_adic_does_not_depend_on_the_arc(x, y):
    if x != y:
        arc = (x - y).wrap()
        other = (Dyadic(1) - arc).wrap()
        assert arc.exp == other.exp == two_adic_distance(x, y).bit_length() - 1


def test_c1_formula():
    c = c_map(1)
    # c(t) = t/2 + 3/4, 2t - 1, t - 1/4 on the three pieces
    assert evaluate(c, Dyadic(0)) == Dyadic(3, 2)
    assert evaluate(c, Dyadic(1, 1)) == Dyadic(0)
    assert evaluate(c, Dyadic(7, 3)) == Dyadic(5, 3)
    assert evaluate(c, Dyadic(3, 2)) == Dyadic(1, 1)
    for t in (Dyadic(k, 5) for k in range(32)):
        v = t.num / 2**t.exp
        expect = v / 2 + 0.75 if v < 0.5 else (2 * v - 1 if v < 0.75 else v - 0.25)
        assert evaluate(c, t).num / 2 ** evaluate(c, t).exp == expect


def test_c2_sends_zero_to_seven_eighths():
    # [0, 1/2] goes onto the last interval [7/8, 1] of the subdivision, as for c_1
    assert evaluate(c_map(2), Dyadic(0)) == Dyadic(7, 3)
    assert evaluate(c_map(2), Dyadic(1, 1)) == Dyadic(0)


def test_identity_evaluation():
    assert evaluate(identity_map(), Dyadic(5, 3)) == Dyadic(5, 3)


@pytest.mark.parametrize("n", range(11))
def test_c_n_has_order_n_plus_2(n):
    c = c_map(n)
    assert compose(*[c] * (n + 2)) == identity_map()
    assert compose(*[c] * (n + 1)) != identity_map()


def test_compose_examples():
    c = c_map(1)
    assert plmap_equal(compose(c, c, c), identity_map())
    assert compose(c, identity_map()) == c
    assert compose(c, inverse(c)) == identity_map()
    assert not plmap_equal(c_map(1), c_map(2))
    assert plmap_equal(compose(x_map(1), c_map(2)), c_map(1))


def test_compose_applies_rightmost_first():
    f, g = x_map(0), c_map(1)
    t = Dyadic(1, 3)
    assert evaluate(compose(f, g), t) == evaluate(f, evaluate(g, t))


maps = st.lists(st.sampled_from([x_map(0), x_map(1), x_map(2), c_map(0), c_map(1), c_map(2)]), min_size=1, max_size=4).map(
    lambda ms: compose(*ms)
)


@given(maps, maps, maps)
def test_compose_is_associative(f, g, h):
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


@given(maps, dyadics)
def test_maps_are_dyadic_bijections_with_power_of_two_slopes(f, t):
    y = evaluate(f, t)
    assert isinstance(y, Dyadic) and Dyadic(0) <= y < Dyadic(1)
    assert evaluate(inverse(f), y) == t
    for s in f.slopes():
        assert isinstance(s, int)


def test_canonical_breaks_merge_collinear_points():
    f = PLMap([(Dyadic(0), Dyadic(0)), (Dyadic(1, 2), Dyadic(1, 2)), (Dyadic(3, 2), Dyadic(3, 2))])
    assert f == identity_map()
    assert len(f.breaks) == 1


def test_plmap_text_round_trip():
    f = compose(c_map(2), x_map(1))
    assert PLMap.from_text(f.to_text()) == f
    assert PLMap.from_text(f.to_json()) == f
    assert PLMap.from_text("0→3/4\n1/2→0\n3/4→1/2") == c_map(1)


def test_invalid_maps_are_rejected():
    h = Dyadic(1, 1)
    q = Dyadic(1, 2)
    with pytest.raises(ValueError):
        PLMap([(Dyadic(0), Dyadic(0)), (q, h), (h, q)])  # not orientation preserving
    with pytest.raises(ValueError):
        PLMap([(Dyadic(0), Dyadic(0)), (h, q)])  # slope 3/2 on the second piece
    with pytest.raises(ValueError):
        c_map(-1)


@given(st.integers(-64, 64), st.integers(0, 6), st.integers(-64, 64), st.integers(0, 6))
def test_dyadic_arithmetic_is_exact(a, b, c, d):
    from fractions import Fraction

    x, y = Dyadic(a, b), Dyadic(c, d)
    fx, fy = Fraction(a, 2**b), Fraction(c, 2**d)
    for got, want in ((x + y, fx + fy), (x - y, fx - fy), (x * y, fx * fy)):
        assert Fraction(got.num, 2**got.exp) == want
    assert (x < y) == (fx < fy)
    for v in (x, y, x + y, x * y):
        assert v.num % 2 == 1 or v.exp == 0
        assert v.num != 0 or v.exp == 0
