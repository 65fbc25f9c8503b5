"""Presentations, symmetrized closures, Tietze splitting, files."""

import pytest

from cakelab.presentations import (
    Presentation,
    alternating_word,
    braid_presentation,
    format_history,
    format_presentation,
    include_word,
    lift_word,
    parse_history,
    parse_presentation,
    shorten_all,
    symmetrize,
    tietze_split,
)
from cakelab.words import Alphabet, Word, parse_word

X = Alphabet(("x1", "x2", "x3"))
R1 = parse_word(X, "x1^2 x2 x3^2 x2^-1")
R2 = parse_word(X, "x2^2 x3 x1^2 x3^-1")
P = Presentation(X, (R1, R2))


def closure_oracle(relators):
    """Independent closure: all cyclic rotations of each relator and its inverse."""
    out = set()
    for r in relators:
        for base in (r, ~r):
            ls = base.letters
            for k in range(len(ls)):
                out.add(ls[k:] + ls[:k])
    return out


def test_symmetrize_matches_rotation_oracle():
    s = symmetrize(P)
    assert {w.letters for w in s.elements} == closure_oracle(P.relators)
    assert len(s) == 24


def test_symmetrize_closed_under_inverse_and_rotation():
    s = symmetrize(P)
    for w in s.elements:
        assert ~w in s
        rot = Word(X, w.letters[1:] + w.letters[:1])
        assert rot in s


def test_symmetrize_ordered_is_deterministic():
    from cakelab.words import word_sort_key

    a = symmetrize(P).ordered
    b = symmetrize(Presentation(X, (R1, R2))).ordered
    assert a == b
    assert list(a) == sorted(a, key=word_sort_key)
    assert set(a) == symmetrize(P).elements


def test_presentation_rejects_bad_relators():
    with pytest.raises(ValueError):
        Presentation(X, (Word(X, ()),))
    with pytest.raises(ValueError):
        Presentation(X, (parse_word(X, "x1 x2 x1^-1"),))  # not cyclically reduced
    with pytest.raises(ValueError):
        Presentation(X, (R1, R1))


def test_tietze_split_shape():
    q, st = tietze_split(P, 0)
    assert st.new_gen == "t1"
    assert q.alphabet.names == ("x1", "x2", "x3", "t1")
    # replaced relator keeps its slot, definition relator appended
    assert str(q.relators[0]) == "t1 x2 x3^2 x2^-1"
    assert str(q.relators[-1]) == "t1^-1 x1^2"
    assert st.replaced_relator_index == 0
    assert st.old_relator == R1
    assert len(st.defined_as) == 2


def test_tietze_split_requires_length_four():
    tri = Presentation(X, (parse_word(X, "x1 x2 x3"),))
    with pytest.raises(ValueError):
        tietze_split(tri, 0)


def test_tietze_fresh_names_skip_taken():
    taken = Alphabet(("t1", "x2"))
    p = Presentation(taken, (parse_word(taken, "t1^2 x2^2"),))
    q, st = tietze_split(p, 0)
    assert st.new_gen == "t2"


def shorten_oracle_steps(p):
    return sum(max(0, len(r) - 3) for r in p.relators)


@pytest.mark.parametrize(
    "pres,expected",
    [
        (P, 6),
        (braid_presentation(3), 3),
        (braid_presentation(4), 7),
        (braid_presentation(6), 18),
    ],
)
def test_shorten_all_step_count(pres, expected):
    assert shorten_oracle_steps(pres) == expected
    h = shorten_all(pres)
    assert len(h.steps) == expected
    assert all(len(r) <= 3 for r in h.end.relators)


def test_shorten_all_on_short_presentation_is_identity():
    tri = Presentation(X, (parse_word(X, "x1 x2 x3"),))
    h = shorten_all(tri)
    assert h.steps == ()
    assert h.end == tri


def test_lift_undoes_include():
    h = shorten_all(P)
    for text in ("x1 x2^-1 x3", "x1^2 x2 x3^2 x2^-1", "1"):
        w = parse_word(X, text)
        assert lift_word(include_word(w, h), h) == w


def test_lift_of_definition_relators_is_trivial_or_original():
    h = shorten_all(P)
    lifted = [lift_word(r, h) for r in h.end.relators]
    # the two rewritten relators lift back to the originals
    assert lifted[0] == R1
    assert lifted[1] == R2
    # every appended definition relator lifts to the empty word
    assert all(len(w) == 0 for w in lifted[2:])


def test_history_replay_is_validated():
    h = shorten_all(P)
    from cakelab.presentations import PresentationHistory

    with pytest.raises(ValueError):
        PresentationHistory(h.start, h.steps[:-1], h.end)


def test_alternating_word_shape():
    w = alternating_word(X, 0, 1, 5)
    assert str(w) == "x1 x2 x1 x2 x1"
    w = alternating_word(X, 2, 0, 4)
    assert str(w) == "x3 x1 x3 x1"


def test_braid_presentation_structure():
    p = braid_presentation(4)
    assert p.alphabet.names == ("s1", "s2", "s3")
    lens = sorted(len(r) for r in p.relators)
    assert lens == [4, 6, 6]
    for r in p.relators:
        assert r.is_cyclically_reduced
    assert braid_presentation(2).relators == ()


def test_presentation_file_round_trip():
    text = format_presentation(P)
    assert parse_presentation(text) == P
    # comments and blank lines are ignored
    noisy = "# header\n\n" + text.replace("\n", "  # trailing\n", 1)
    assert parse_presentation(noisy) == P


def test_parse_presentation_rejects_malformed():
    with pytest.raises(ValueError):
        parse_presentation("rel: x1 x2\n")  # relator before gens
    with pytest.raises(ValueError):
        parse_presentation("gens: x1\nwat: x1\n")


def test_history_file_round_trip():
    h = shorten_all(P)
    text = format_history(h)
    back = parse_history(text)
    assert back == h
    assert format_history(back) == text


def test_history_step_lines_use_letter_pairs():
    h = shorten_all(P)
    line = format_history(h).splitlines()[3]  # gens + two relators, then steps
    assert line == "step: t1 = x1 x1 @ 0"


def test_parse_history_rejects_mismatched_definition():
    h = shorten_all(P)
    text = format_history(h).replace("t1 = x1 x1", "t1 = x1 x2")
    with pytest.raises(ValueError):
        parse_history(text)
