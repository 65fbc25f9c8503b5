"""Freely reduced words over a named generator alphabet.

Every ``Word`` is immutable and freely reduced by construction: the only
sanctioned ways to build one are ``free_reduce``, the arithmetic on existing
words, and the text parser.  Raw letter sequences exist only as transient
input.  Letters are signed generator references; a power like ``x^3`` is
stored as three letters, which keeps subword matching trivial.

>>> X = Alphabet(("a", "b"))
>>> w = X.word("a b^-2 a")
>>> str(w * w.inverse())
'1'
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

__all__ = [
    "Alphabet",
    "Letter",
    "Word",
    "free_reduce",
    "concat",
    "seam_reduced",
    "parse_word",
    "word_sort_key",
    "random_reduced_word",
]

# Characters that would collide with the word grammar or the line-based file
# formats if they appeared inside a generator name.
_FORBIDDEN_IN_NAMES = set("^=@:#")


class Letter(NamedTuple):
    """A signed generator: ``gen`` indexes an Alphabet, ``sign`` is +1 or -1."""

    gen: int
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.sign)


@dataclass(frozen=True)
class Alphabet:
    """An ordered tuple of distinct generator names.

    Names may not contain whitespace or any of ``^ = @ : #`` and may not be
    the literal string ``1``; those are reserved by the textual word grammar
    and the file formats built on top of it.
    """

    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        seen = set()
        for name in names:
            if not name:
                raise ValueError("generator names must be non-empty")
            if name == "1":
                raise ValueError("'1' is reserved for the empty word")
            if any(ch.isspace() or ch in _FORBIDDEN_IN_NAMES for ch in name):
                raise ValueError(f"illegal character in generator name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate generator name {name!r}")
            seen.add(name)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __repr__(self) -> str:
        return f"Alphabet({' '.join(self.names)!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown generator {name!r}") from None

    def extended(self, extra: Iterable[str]) -> "Alphabet":
        """A new alphabet with ``extra`` names appended (indices preserved)."""
        return Alphabet(self.names + tuple(extra))

    def letter(self, name: str, sign: int = 1) -> "Word":
        """One-letter word. ``sign`` must be +1 or -1."""
        return Word(self, (Letter(self.index(name), sign),))

    def word(self, text: str) -> "Word":
        """Parse ``text`` in the word grammar; see :func:`parse_word`."""
        return parse_word(self, text)


def _check_letters(alphabet: Alphabet, letters: Sequence[Letter]) -> None:
    n = len(alphabet.names)
    prev = None
    for lt in letters:
        if not (0 <= lt.gen < n):
            raise ValueError(f"generator index {lt.gen} out of range")
        if lt.sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {lt.sign}")
        if prev is not None and prev.gen == lt.gen and prev.sign == -lt.sign:
            raise ValueError("letter sequence is not freely reduced")
        prev = lt


@dataclass(frozen=True)
class Word:
    """A freely reduced word.  Construction validates the reduced invariant.

    >>> X = Alphabet(("x", "y"))
    >>> Word(X, (Letter(0, 1), Letter(0, -1)))
    Traceback (most recent call last):
        ...
    ValueError: letter sequence is not freely reduced
    """

    alphabet: Alphabet
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple(Letter(lt[0], lt[1]) for lt in self.letters)
        object.__setattr__(self, "letters", letters)
        _check_letters(self.alphabet, letters)

    # -- basic container behaviour ------------------------------------

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, item):
        """Contiguous slices of a reduced word are reduced, so they are Words."""
        if isinstance(item, slice):
            if item.step not in (None, 1):
                raise ValueError("words only support contiguous slices")
            return Word(self.alphabet, self.letters[item])
        return self.letters[item]

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __str__(self) -> str:
        return _format_letters(self.letters, self.alphabet.names)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    # -- group arithmetic ----------------------------------------------

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        out = Word(self.alphabet)
        for _ in range(k):
            out = out * self
        return out

    def inverse(self) -> "Word":
        return Word(self.alphabet, tuple(lt.inverse() for lt in reversed(self.letters)))

    def __invert__(self) -> "Word":
        return self.inverse()

    # -- cyclic structure ----------------------------------------------

    @property
    def is_cyclically_reduced(self) -> bool:
        lts = self.letters
        return len(lts) < 2 or lts[0] != lts[-1].inverse()

    def cyclic_reduce(self) -> tuple["Word", "Word"]:
        """Return ``(core, conjugator)`` with ``self == conjugator * core * conjugator**-1``.

        >>> X = Alphabet(("x", "y"))
        >>> core, conj = X.word("x y x^-1").cyclic_reduce()
        >>> str(core), str(conj)
        ('y', 'x')
        """
        lts = self.letters
        i, j = 0, len(lts)
        while j - i >= 2 and lts[i] == lts[j - 1].inverse():
            i += 1
            j -= 1
        return Word(self.alphabet, lts[i:j]), Word(self.alphabet, lts[:i])

    def cyclic_permutations(self) -> frozenset["Word"]:
        """All rotations of a cyclically reduced word, deduplicated.

        Raises ``ValueError`` if the word is not cyclically reduced.  The
        result always contains the word itself (also for the empty word).
        """
        if not self.is_cyclically_reduced:
            raise ValueError("word is not cyclically reduced")
        lts = self.letters
        rotations = {self}
        for k in range(1, len(lts)):
            rotations.add(Word(self.alphabet, lts[k:] + lts[:k]))
        return frozenset(rotations)


def free_reduce(alphabet: Alphabet, letters: Iterable[Letter]) -> Word:
    """Freely reduce a raw letter sequence into a Word.

    >>> X = Alphabet(("x", "y"))
    >>> free_reduce(X, [Letter(0, 1), Letter(1, 1), Letter(1, -1)])
    Word('x')
    """
    out: list[Letter] = []
    n = len(alphabet.names)
    for lt in letters:
        gen, sign = lt[0], lt[1]
        if not (0 <= gen < n):
            raise ValueError(f"generator index {gen} out of range")
        if sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {sign}")
        if out and out[-1].gen == gen and out[-1].sign == -sign:
            out.pop()
        else:
            out.append(Letter(gen, sign))
    return Word(alphabet, tuple(out))


def concat(a: Word, b: Word) -> Word:
    """Product in the free group: concatenate, then cancel across the seam."""
    if a.alphabet != b.alphabet:
        raise ValueError("alphabet mismatch")
    out = list(a.letters)
    for lt in b.letters:
        if out and out[-1] == lt.inverse():
            out.pop()
        else:
            out.append(lt)
    return Word(a.alphabet, tuple(out))


def seam_reduced(a: Word, b: Word) -> bool:
    """True when the product ``a*b`` has no cancellation at the seam.

    Both inputs must be non-empty; asking the question of an empty word is
    almost always a bug upstream, so it is an error here.
    """
    if not a.letters or not b.letters:
        raise ValueError("seam_reduced needs non-empty words")
    return a.letters[-1] != b.letters[0].inverse()


def _format_letters(letters: tuple[Letter, ...], names: tuple[str, ...]) -> str:
    if not letters:
        return "1"
    parts = []
    i = 0
    n = len(letters)
    while i < n:
        j = i
        while j < n and letters[j] == letters[i]:
            j += 1
        k = (j - i) * letters[i].sign
        name = names[letters[i].gen]
        parts.append(name if k == 1 else f"{name}^{k}")
        i = j
    return " ".join(parts)


def parse_word(alphabet: Alphabet, text: str) -> Word:
    """Parse the word grammar: whitespace-separated ``name`` or ``name^k`` tokens.

    ``k`` is a non-zero integer; ``name^-2`` means two inverse letters.  The
    token ``1`` denotes the empty word.  Unknown names and ``^0`` are errors.
    The parsed sequence is freely reduced, so any spelling of a word is
    accepted and normalised.
    """
    letters: list[Letter] = []
    for token in text.split():
        if token == "1":
            continue
        name, caret, power = token.partition("^")
        if caret:
            try:
                k = int(power)
            except ValueError:
                raise ValueError(f"bad exponent in token {token!r}") from None
            if k == 0:
                raise ValueError(f"zero exponent in token {token!r}")
        else:
            k = 1
        gen = alphabet.index(name)
        sign = 1 if k > 0 else -1
        letters.extend([Letter(gen, sign)] * abs(k))
    return free_reduce(alphabet, letters)


def word_sort_key(w: Word):
    """Canonical ordering key: by length, then letterwise (generator, sign)."""
    return (len(w.letters), tuple((lt.gen, 0 if lt.sign > 0 else 1) for lt in w.letters))


def random_reduced_word(alphabet: Alphabet, length: int, rng, gens: Sequence[int] | None = None) -> Word:
    """Uniform reduced word of exactly ``length`` letters.

    Each letter is drawn uniformly from the signed generators (restricted to
    ``gens`` when given), rejecting only the inverse of the previous letter.
    """
    pool = tuple(gens) if gens is not None else tuple(range(len(alphabet.names)))
    if not pool and length > 0:
        raise ValueError("no generators to draw from")
    letters: list[Letter] = []
    while len(letters) < length:
        lt = Letter(pool[rng.randrange(len(pool))], rng.choice((1, -1)))
        if letters and letters[-1] == lt.inverse():
            continue
        letters.append(lt)
    return Word(alphabet, tuple(letters))
