"""Free-word layer: reduction, algebra, text grammar."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cakelab.words import (
    Alphabet,
    Letter,
    Word,
    concat,
    free_reduce,
    parse_word,
    random_reduced_word,
    seam_reduced,
    word_sort_key,
)

ABC = Alphabet(("a", "b", "c"))


def naive_reduce(letters):
    """Independent oracle: repeatedly delete adjacent inverse pairs until stable."""
    out = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            if out[i] == out[i + 1].inverse():
                del out[i : i + 2]
                changed = True
                break
    return tuple(out)


letters_st = st.lists(
    st.builds(Letter, st.integers(0, 2), st.sampled_from((1, -1))), max_size=24
)


@given(letters_st)
def test_free_reduce_matches_naive(raw):
    assert free_reduce(ABC, raw).letters == naive_reduce(raw)


@given(letters_st, letters_st)
def test_concat_is_reduce_of_concatenation(xs, ys):
    a = free_reduce(ABC, xs)
    b = free_reduce(ABC, ys)
    assert concat(a, b).letters == naive_reduce(a.letters + b.letters)


@given(letters_st)
def test_inverse_cancels(raw):
    w = free_reduce(ABC, raw)
    assert len(w * ~w) == 0
    assert len(~w * w) == 0
    assert ~~w == w


@given(letters_st)
def test_text_round_trip(raw):
    w = free_reduce(ABC, raw)
    assert parse_word(ABC, str(w)) == w


@given(letters_st, st.integers(-3, 3))
def test_power(raw, k):
    w = free_reduce(ABC, raw)
    expect = Word(ABC, ())
    base = w if k >= 0 else ~w
    for _ in range(abs(k)):
        expect = expect * base
    assert w ** k == expect


@given(letters_st)
def test_cyclic_reduce_conjugacy(raw):
    w = free_reduce(ABC, raw)
    core, conj = w.cyclic_reduce()
    assert core.is_cyclically_reduced
    assert conj * core * ~conj == w


@given(letters_st)
def test_slices_are_words(raw):
    w = free_reduce(ABC, raw)
    for i in range(len(w) + 1):
        for j in range(i, len(w) + 1):
            piece = w[i:j]
            assert isinstance(piece, Word)
            # any contiguous run of a reduced word is reduced
            assert free_reduce(ABC, piece.letters) == piece


def test_word_validation_rejects_unreduced():
    with pytest.raises(ValueError):
        Word(ABC, (Letter(0, 1), Letter(0, -1)))


def test_word_validation_rejects_foreign_letters():
    with pytest.raises(ValueError):
        Word(ABC, (Letter(7, 1),))
    with pytest.raises(ValueError):
        Word(ABC, (Letter(0, 2),))


def test_alphabet_name_rules():
    with pytest.raises(ValueError):
        Alphabet(("a", "a"))
    with pytest.raises(ValueError):
        Alphabet(("1",))
    for bad in ("x y", "x^", "x=", "x@", "x:", "x#"):
        with pytest.raises(ValueError):
            Alphabet((bad,))


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_word(ABC, "z")
    with pytest.raises(ValueError):
        parse_word(ABC, "a^0")
    with pytest.raises(ValueError):
        parse_word(ABC, "a^x")


def test_empty_word_prints_and_parses_as_one():
    e = Word(ABC, ())
    assert str(e) == "1"
    assert parse_word(ABC, "1") == e
    assert parse_word(ABC, "  1  ") == e


def test_run_length_format():
    w = parse_word(ABC, "a a a b^-1 b^-1 c")
    assert str(w) == "a^3 b^-2 c"


def test_parse_applies_free_reduction():
    assert parse_word(ABC, "a b b^-1 a^-1") == Word(ABC, ())


def test_seam_reduced_two_relator_pair():
    x = Alphabet(("x1", "x2", "x3"))
    a = parse_word(x, "x1^2 x2 x3^2 x2^-1")
    b = parse_word(x, "x2^2 x3 x1^2 x3^-1")
    assert seam_reduced(a, b) is False
    assert seam_reduced(b, a) is True


def test_seam_reduced_requires_nonempty():
    w = parse_word(ABC, "a")
    with pytest.raises(ValueError):
        seam_reduced(w, Word(ABC, ()))


def test_sort_key_orders_by_length_then_letters():
    ws = [parse_word(ABC, t) for t in ("b", "a^-1", "a", "a b", "c", "a^2")]
    got = sorted(ws, key=word_sort_key)
    assert [str(w) for w in got] == ["a", "a^-1", "b", "c", "a^2", "a b"]


def test_random_reduced_word_properties():
    rng = random.Random(5)
    for length in (0, 1, 5, 40):
        w = random_reduced_word(ABC, length, rng)
        assert len(w) == length
    # restricted generator support
    w = random_reduced_word(ABC, 30, rng, gens=(0, 2))
    assert {l.gen for l in w.letters} <= {0, 2}


def test_random_reduced_word_deterministic():
    a = random_reduced_word(ABC, 12, random.Random(9))
    b = random_reduced_word(ABC, 12, random.Random(9))
    assert a == b


def test_extended_preserves_prefix():
    bigger = ABC.extended(("d",))
    assert bigger.names == ("a", "b", "c", "d")
    with pytest.raises(ValueError):
        ABC.extended(("a",))


@settings(max_examples=40)
@given(letters_st, letters_st, letters_st)
def test_concat_associative(xs, ys, zs):
    a, b, c = (free_reduce(ABC, t) for t in (xs, ys, zs))
    assert (a * b) * c == a * (b * c)
