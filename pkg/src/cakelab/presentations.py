"""Finite group presentations, symmetrized closures, and Tietze splitting.

The splitting move introduces a fresh generator naming the first two letters
of a long relator; iterating it drives every relator down to length <= 3
while keeping the group isomorphic.  Histories record each split so that
words over the final presentation can be translated back to the original
generators (``lift_word``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .words import (
    Alphabet,
    Letter,
    Word,
    free_reduce,
    parse_word,
    word_sort_key,
)

__all__ = [
    "Presentation",
    "SymmetrizedSet",
    "TietzeStep",
    "PresentationHistory",
    "symmetrize",
    "tietze_split",
    "shorten_all",
    "lift_word",
    "include_word",
    "braid_presentation",
    "alternating_word",
    "format_presentation",
    "parse_presentation",
    "format_history",
    "parse_history",
]


@dataclass(frozen=True)
class Presentation:
    """Generators plus cyclically reduced, pairwise distinct relators."""

    alphabet: Alphabet
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        relators = tuple(self.relators)
        object.__setattr__(self, "relators", relators)
        seen = set()
        for r in relators:
            if r.alphabet != self.alphabet:
                raise ValueError("relator uses a different alphabet")
            if not r:
                raise ValueError("empty relator")
            if not r.is_cyclically_reduced:
                raise ValueError(f"relator {str(r)!r} is not cyclically reduced")
            if r in seen:
                raise ValueError(f"duplicate relator {str(r)!r}")
            seen.add(r)


@dataclass(frozen=True)
class SymmetrizedSet:
    """All cyclic rotations of the relators and of their inverses."""

    alphabet: Alphabet
    elements: frozenset

    def __post_init__(self):
        for w in self.elements:
            if not w or not w.is_cyclically_reduced:
                raise ValueError("symmetrized elements must be non-empty and cyclically reduced")
            if w.inverse() not in self.elements:
                raise ValueError("set is not closed under inversion")
            if not w.cyclic_permutations() <= self.elements:
                raise ValueError("set is not closed under rotation")

    def __len__(self):
        return len(self.elements)

    def __contains__(self, w: Word) -> bool:
        return w in self.elements

    @property
    def ordered(self) -> tuple[Word, ...]:
        """Elements in the canonical (length, letters) order."""
        return tuple(sorted(self.elements, key=word_sort_key))


@lru_cache(maxsize=None)
def symmetrize(p: Presentation) -> SymmetrizedSet:
    """Smallest rotation- and inversion-closed superset of the relators."""
    closure = set()
    for r in p.relators:
        closure |= r.cyclic_permutations()
        closure |= r.inverse().cyclic_permutations()
    return SymmetrizedSet(p.alphabet, frozenset(closure))


@dataclass(frozen=True)
class TietzeStep:
    """One split: ``old_relator = l1 l2 u`` becomes ``new_gen u`` plus ``new_gen^-1 l1 l2``."""

    new_gen: str
    defined_as: tuple[Letter, Letter]
    replaced_relator_index: int
    old_relator: Word
    new_relator: Word


def _fresh_name(alphabet: Alphabet) -> str:
    k = 1
    while f"t{k}" in alphabet:
        k += 1
    return f"t{k}"


def _retag(w: Word, alphabet: Alphabet) -> Word:
    # indices are stable because alphabets only ever grow by appending
    return Word(alphabet, w.letters)


def tietze_split(p: Presentation, idx: int, new_name: str | None = None):
    """Split relator ``idx`` (length >= 4) by naming its first two letters.

    Returns ``(new_presentation, step)``.  The new presentation has one more
    generator, the target relator shortened by one letter, and a length-3
    defining relator appended; the presented group is unchanged.
    """
    if not (0 <= idx < len(p.relators)):
        raise ValueError(f"relator index {idx} out of range")
    r = p.relators[idx]
    if len(r) < 4:
        raise ValueError(f"relator {str(r)!r} too short to split")
    name = new_name if new_name is not None else _fresh_name(p.alphabet)
    if name in p.alphabet:
        raise ValueError(f"generator {name!r} already exists")
    bigger = p.alphabet.extended([name])
    t = len(p.alphabet.names)
    l1, l2 = r.letters[0], r.letters[1]
    replacement = Word(bigger, (Letter(t, 1),) + r.letters[2:])
    definition = Word(bigger, (Letter(t, -1), l1, l2))
    relators = [_retag(old, bigger) for old in p.relators]
    relators[idx] = replacement
    out: list[Word] = []
    for w in relators + [definition]:
        if w not in out:  # operations drop duplicates silently
            out.append(w)
    step = TietzeStep(name, (l1, l2), idx, r, replacement)
    return Presentation(bigger, tuple(out)), step


@dataclass(frozen=True)
class PresentationHistory:
    """A replayable chain of splits from ``start`` to ``end``."""

    start: Presentation
    steps: tuple[TietzeStep, ...]
    end: Presentation

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if _replay(self.start, self.steps) != self.end:
            raise ValueError("steps do not replay from start to end")


def _replay(start: Presentation, steps: Iterable[TietzeStep]) -> Presentation:
    cur = start
    for st in steps:
        cur, redo = tietze_split(cur, st.replaced_relator_index, new_name=st.new_gen)
        if redo.defined_as != st.defined_as or redo.old_relator != st.old_relator:
            raise ValueError(f"step for {st.new_gen!r} does not match its presentation")
    return cur


def shorten_all(p: Presentation) -> PresentationHistory:
    """Split the first over-long relator until every relator has length <= 3.

    Terminates in exactly sum(max(0, len(r) - 3)) steps: each split trims one
    unit of excess and appends a length-3 relator with none.
    """
    steps = []
    cur = p
    while True:
        idx = next((i for i, r in enumerate(cur.relators) if len(r) > 3), None)
        if idx is None:
            break
        cur, st = tietze_split(cur, idx)
        steps.append(st)
    return PresentationHistory(p, tuple(steps), cur)


def _definition_table(h: PresentationHistory) -> dict:
    """Map every end-alphabet generator name to its word over the start alphabet."""
    end_names = h.end.alphabet.names
    table = {name: h.start.alphabet.letter(name) for name in h.start.alphabet.names}

    def resolve(lt: Letter) -> Word:
        base = table[end_names[lt.gen]]
        return base if lt.sign > 0 else base.inverse()

    for st in h.steps:
        l1, l2 = st.defined_as
        table[st.new_gen] = resolve(l1) * resolve(l2)
    return table


def lift_word(w: Word, h: PresentationHistory) -> Word:
    """Rewrite a word over ``h.end`` in the original generators.

    Every introduced generator is replaced by its two-letter definition,
    iterated down to the start alphabet, then freely reduced.  Lifting is a
    homomorphism, and on words that never mention the new generators it is
    the identity.
    """
    if w.alphabet != h.end.alphabet:
        raise ValueError("word is not over the end alphabet of this history")
    table = _definition_table(h)
    end_names = h.end.alphabet.names
    out: list[Letter] = []
    for lt in w.letters:
        img = table[end_names[lt.gen]]
        if lt.sign < 0:
            img = img.inverse()
        out.extend(img.letters)
    return free_reduce(h.start.alphabet, out)


def include_word(w: Word, h: PresentationHistory) -> Word:
    """View a word over ``h.start`` as a word over ``h.end`` (indices are stable)."""
    if w.alphabet != h.start.alphabet:
        raise ValueError("word is not over the start alphabet of this history")
    return _retag(w, h.end.alphabet)


def alternating_word(alphabet: Alphabet, i: int, j: int, m: int) -> Word:
    """The length-m word ``a_i a_j a_i ...`` (positive letters, alternating)."""
    if m < 1:
        raise ValueError("length must be positive")
    if i == j:
        raise ValueError("alternating word needs two distinct generators")
    letters = tuple(Letter(i if k % 2 == 0 else j, 1) for k in range(m))
    return Word(alphabet, letters)


def braid_presentation(n: int) -> Presentation:
    """The braid group on n strands: generators s1..s(n-1).

    Adjacent generators satisfy s_i s_j s_i = s_j s_i s_j, distant ones
    commute.
    """
    if n < 2:
        raise ValueError("need at least 2 strands")
    alphabet = Alphabet(tuple(f"s{i}" for i in range(1, n)))
    relators = []
    for i in range(n - 1):
        for j in range(i + 1, n - 1):
            m = 3 if j - i == 1 else 2
            rel = alternating_word(alphabet, i, j, m) * alternating_word(alphabet, j, i, m).inverse()
            if rel not in relators:
                relators.append(rel)
    return Presentation(alphabet, tuple(relators))


# -- text formats -------------------------------------------------------

def format_presentation(p: Presentation) -> str:
    lines = ["gens: " + " ".join(p.alphabet.names)]
    lines.extend(f"rel: {r}" for r in p.relators)
    return "\n".join(lines) + "\n"


def _content_lines(text: str):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def _split_key(line: str):
    key, sep, rest = line.partition(":")
    if not sep:
        raise ValueError(f"malformed line {line!r}")
    return key.strip(), rest.strip()


def parse_presentation(text: str) -> Presentation:
    """Inverse of format_presentation; '#' starts a comment, blank lines ignored."""
    alphabet = None
    relators: list[Word] = []
    for line in _content_lines(text):
        key, rest = _split_key(line)
        if key == "gens":
            if alphabet is not None:
                raise ValueError("duplicate gens line")
            alphabet = Alphabet(tuple(rest.split()))
        elif key == "rel":
            if alphabet is None:
                raise ValueError("rel line before gens line")
            relators.append(parse_word(alphabet, rest))
        else:
            raise ValueError(f"unexpected {key!r} line in presentation file")
    if alphabet is None:
        raise ValueError("missing gens line")
    return Presentation(alphabet, tuple(relators))


def _format_step(st: TietzeStep) -> str:
    # two letters printed separately, never run-length merged
    names = st.old_relator.alphabet.names
    pair = " ".join(
        names[l.gen] + ("" if l.sign > 0 else "^-1") for l in st.defined_as
    )
    return f"step: {st.new_gen} = {pair} @ {st.replaced_relator_index}"


def format_history(h: PresentationHistory) -> str:
    """Start presentation followed by one line per split."""
    lines = [format_presentation(h.start).rstrip("\n")]
    lines.extend(_format_step(st) for st in h.steps)
    return "\n".join(lines) + "\n"


def parse_history(text: str) -> PresentationHistory:
    pres_lines = []
    raw_steps = []
    for line in _content_lines(text):
        key, rest = _split_key(line)
        if key == "step":
            raw_steps.append(rest)
        else:
            pres_lines.append(line)
    start = parse_presentation("\n".join(pres_lines))
    cur = start
    steps = []
    for rest in raw_steps:
        head, sep, tail = rest.partition("=")
        if not sep:
            raise ValueError(f"malformed step line {rest!r}")
        name = head.strip()
        word_text, sep, idx_text = tail.rpartition("@")
        if not sep:
            raise ValueError(f"malformed step line {rest!r}")
        idx = int(idx_text.strip())
        pair = parse_word(cur.alphabet, word_text.strip())
        if len(pair) != 2:
            raise ValueError(f"step definition must have exactly two letters: {rest!r}")
        cur, st = tietze_split(cur, idx, new_name=name)
        if st.defined_as != pair.letters:
            raise ValueError(f"step {name!r} does not match relator {idx} of its presentation")
        steps.append(st)
    return PresentationHistory(start, tuple(steps), cur)
