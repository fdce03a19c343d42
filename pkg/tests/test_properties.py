import random

from hypothesis import given, settings, strategies as st

from houghton.core import (Character, apply, chi_eval, compose, decode, deficiency_f, down_options,
                           encode, identity, is_bijection, morse_height)
from houghton.morse import ray_germ_invariant

from oracles import as_function, random_injection, up_by_composition, window_f


@st.composite
def injections(draw, n=None, W=3):
    n = draw(st.integers(1, 3)) if n is None else n
    return random_injection(random.Random(draw(st.integers(0, 2 ** 32))), n, W)


@st.composite
def triples(draw):
    n = draw(st.integers(1, 3))
    return tuple(draw(injections(n=n)) for _ in range(3))


@settings(max_examples=150, deadline=None)
@given(triples())
def test_compose_associative(abc):
    a, b, c = abc
    assert compose(compose(a, b), c) == compose(a, compose(b, c))
    assert compose(identity(a.n), a) == a == compose(a, identity(a.n))


@settings(max_examples=150, deadline=None)
@given(triples())
def test_deficiency_additive(abc):
    a, b, _ = abc
    ab = compose(a, b)
    assert deficiency_f(ab) == deficiency_f(a) + deficiency_f(b) == window_f(ab)
    assert ab.translations == tuple(x + y for x, y in zip(a.translations, b.translations))


@settings(max_examples=150, deadline=None)
@given(injections())
def test_encoding_and_function(v):
    assert decode(encode(v)) == v
    f = as_function(v, 10)
    assert len(set(f.values())) == len(f)
    assert is_bijection(v) == (deficiency_f(v) == 0)


@settings(max_examples=150, deadline=None)
@given(injections(), st.data())
def test_edges(v, data):
    i = data.draw(st.integers(1, v.n))
    w = v.up(i)
    assert w == up_by_composition(v, i)
    assert deficiency_f(w) == deficiency_f(v) + 1
    assert v in down_options(w, i)
    for j in range(1, v.n + 1):
        assert w.translations[j - 1] - v.translations[j - 1] == (j == i)
        if j != i:
            assert ray_germ_invariant(w, j) == ray_germ_invariant(v, j)
    coeffs = tuple(data.draw(st.integers(-3, 3)) for _ in range(v.n))
    if v.n > 1 and len(set(coeffs)) > 1:
        chi = Character(coeffs)
        hv, hw = morse_height(chi, v), morse_height(chi, w)
        assert hw[0] - hv[0] == coeffs[i - 1] and hv != hw
        assert chi_eval(chi, w) == hw[0]


@settings(max_examples=100, deadline=None)
@given(injections())
def test_points_stay_on_rays(v):
    for p, q in as_function(v, 6).items():
        assert 1 <= q[0] <= v.n and q[1] >= 1
        assert apply(v, p) == q
