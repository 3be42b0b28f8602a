import itertools

import pytest
from hypothesis import given, strategies as st

from narrowcomb.words import (GENERATORS, X, Y, Z, WordSyntaxError, commutator, cyclic_reduce,
                              format_word, free_reduce, inverse, inverse_word, parse_word, word_w_n)

words = st.lists(st.sampled_from(GENERATORS), max_size=20).map(tuple)


def test_inverse_is_involution():
    for a in GENERATORS:
        assert inverse(inverse(a)) == a


@pytest.mark.parametrize("w, expected", [
    ((X, -X), ()),
    ((X, Y, -Y, Z), (X, Z)),
    ((X, Y, Z), (X, Y, Z)),
])
def test_free_reduce_examples(w, expected):
    assert free_reduce(w) == expected


@pytest.mark.parametrize("w, expected", [
    ((X, Y, -X), (Y,)),
    ((), ()),
    ((X, Z, Y, -Z, -X), (Y,)),
])
def test_cyclic_reduce_examples(w, expected):
    assert cyclic_reduce(w) == expected


def test_cyclic_reduce_ends_differ():
    r = cyclic_reduce((Y, X, Z, -X, Y, -Y, -Y))
    assert r and r[0] != -r[-1]


def test_commutator_examples():
    assert commutator((X,), (Y,)) == (X, Y, -X, -Y)
    assert commutator((X,), (X,)) == ()
    assert commutator((X,), (Y, Y)) == (X, Y, Y, -X, -Y, -Y)


def test_w_n_small_cases():
    assert word_w_n(1, 1) == (X, Y, -X, -Y, -Y, -X, Y, X)
    assert len(word_w_n(1, 2)) == 12
    assert word_w_n(1, 2) == free_reduce(commutator((X,), (Y, Y)) + commutator((-Y, -Y), (-X,)))
    assert len(word_w_n(2, 1)) == 16


def test_w_n_length_formula():
    for n, q in itertools.product(range(1, 6), repeat=2):
        assert len(word_w_n(n, q)) == 4 * n * (q + 1)


def test_free_reduce_exhaustive_up_to_length_7():
    # 6^12 words are out of reach; lengths <= 7 exhaustively, 12 by sampling below
    for length in range(8):
        for w in itertools.product(GENERATORS, repeat=length):
            r = free_reduce(w)
            assert len(r) <= len(w)
            assert free_reduce(r) == r


@pytest.mark.slow
def test_free_reduce_idempotent_length_12_sample():
    import random
    rng = random.Random(12)
    for _ in range(50000):
        w = tuple(rng.choice(GENERATORS) for _ in range(12))
        r = free_reduce(w)
        assert free_reduce(r) == r and len(r) <= 12


def test_word_times_inverse_is_empty_up_to_length_5():
    for length in range(6):
        for w in itertools.product(GENERATORS, repeat=length):
            assert free_reduce(w + inverse_word(w)) == ()


@given(words)
def test_free_reduce_properties(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert free_reduce(w + inverse_word(w)) == ()
    assert all(r[i] != -r[i + 1] for i in range(len(r) - 1))


@given(words)
def test_cyclic_reduce_is_conjugate(w):
    r = cyclic_reduce(w)
    full = free_reduce(w)
    # the stripped prefix u satisfies full = u r u^-1
    k = (len(full) - len(r)) // 2
    assert full[k:k + len(r)] == r
    assert full[:k] == inverse_word(full[len(full) - k:])


@given(words)
def test_format_parse_round_trip(w):
    w = free_reduce(w)
    assert parse_word(format_word(w)) == w


@pytest.mark.parametrize("text, expected", [
    ("x y z", (X, Y, Z)),
    ("X Y Z", (-X, -Y, -Z)),
    ("x^3", (X, X, X)),
    ("y^-2", (-Y, -Y)),
    ("X^2", (-X, -X)),
    ("X^-1", (X,)),
    ("  x\ty ", (X, Y)),
    ("1", ()),
    ("", ()),
])
def test_parse_word(text, expected):
    assert parse_word(text) == expected


@pytest.mark.parametrize("text", ["a", "x+y", "x^", "x^y", "x**2", "1^2", "w"])
def test_parse_word_rejects(text):
    with pytest.raises(WordSyntaxError):
        parse_word(text)


def test_format_word():
    assert format_word(()) == "1"
    assert format_word((Y, X, X, Y, -X, -Z)) == "y x^2 y X Z"
