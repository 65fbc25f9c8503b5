"""Piece enumeration, cancellation-condition verdicts, Dehn reduction, and a
bounded word-problem oracle.

A piece is a non-empty common prefix of two *distinct* elements of the
symmetrized relator set (rotations and inverses count as distinct elements).
Everything downstream is exact: C'(lambda) compares with Fraction arithmetic
because interesting presentations sit exactly on the boundary.

The oracle searches breadth-first over relator insertions and subword swaps.
It can answer Trivial (with a replayable witness) or Unknown, never a false
Trivial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .presentations import Presentation, SymmetrizedSet, symmetrize
from .words import Word, concat, parse_word, seam_reduced, word_sort_key

__all__ = [
    "PieceSet",
    "CancellationReport",
    "WspWitness",
    "enumerate_pieces",
    "min_piece_count",
    "check_C",
    "check_Cprime",
    "cprime_sup",
    "check_T4",
    "build_report",
    "dehn_reduce",
    "bounded_wp_oracle",
    "replay_witness",
    "witness_matches",
    "format_witness",
    "parse_witness",
]


@dataclass(frozen=True)
class PieceSet:
    """All pieces of a symmetrized set, plus the maximal ones.

    The set is prefix-closed and inversion-closed; ``maximal`` holds the
    pieces that are not a proper prefix of another piece.
    """

    pieces: frozenset
    maximal: frozenset

    def __len__(self):
        return len(self.pieces)

    def __contains__(self, w: Word) -> bool:
        return w in self.pieces

    @property
    def ordered(self) -> tuple[Word, ...]:
        return tuple(sorted(self.pieces, key=word_sort_key))


def _common_prefix_len(a: Word, b: Word) -> int:
    n = min(len(a), len(b))
    for k in range(n):
        if a.letters[k] != b.letters[k]:
            return k
    return n


def enumerate_pieces(s: SymmetrizedSet) -> PieceSet:
    """Common prefixes of distinct symmetrized elements, prefix-closed."""
    elems = s.ordered
    pieces = set()
    for i, r1 in enumerate(elems):
        for r2 in elems[i + 1 :]:
            k = _common_prefix_len(r1, r2)
            for take in range(1, k + 1):
                pieces.add(r1[:take])
    maximal = {
        u for u in pieces
        if not any(len(v) == len(u) + 1 and v[: len(u)] == u for v in pieces)
    }
    return PieceSet(frozenset(pieces), frozenset(maximal))


def min_piece_count(r: Word, ps: PieceSet) -> Optional[int]:
    """Fewest pieces whose concatenation is literally r; None if impossible.

    Shortest path over positions 0..len(r).  Prefix-closure makes the piece
    lengths available at each position a contiguous range 1..L, so only the
    longest match needs finding.
    """
    n = len(r)
    if n == 0:
        return 0
    by_length: dict[int, set] = {}
    for u in ps.pieces:
        by_length.setdefault(len(u), set()).add(u.letters)
    if not by_length:
        return None
    max_len = max(by_length)
    INF = n + 1
    dist = [INF] * (n + 1)
    dist[0] = 0
    for pos in range(n):
        if dist[pos] == INF:
            continue
        longest = 0
        for take in range(min(max_len, n - pos), 0, -1):
            if r.letters[pos : pos + take] in by_length.get(take, ()):
                longest = take
                break
        for take in range(1, longest + 1):
            if dist[pos] + 1 < dist[pos + take]:
                dist[pos + take] = dist[pos] + 1
    return dist[n] if dist[n] < INF else None


def check_C(p: Presentation, pbound: int) -> bool:
    """C(pbound): no symmetrized relator is a product of < pbound pieces.

    Relators that are not piece products at all satisfy the condition
    vacuously.
    """
    if pbound < 2:
        raise ValueError("pbound must be at least 2")
    s = symmetrize(p)
    ps = enumerate_pieces(s)
    for r in s.ordered:
        k = min_piece_count(r, ps)
        if k is not None and k < pbound:
            return False
    return True


def _prefix_piece_ratios(p: Presentation):
    s = symmetrize(p)
    ps = enumerate_pieces(s)
    for r in s.ordered:
        for u in ps.pieces:
            if len(u) <= len(r) and r[: len(u)] == u:
                yield Fraction(len(u), len(r))


def check_Cprime(p: Presentation, lam: Fraction) -> bool:
    """C'(lam): every piece prefix u of a symmetrized relator r has |u| < lam|r|.

    Exact rational comparison; the strict inequality matters on the boundary.
    """
    lam = Fraction(lam)
    if not 0 < lam <= 1:
        raise ValueError("lambda must be in (0, 1]")
    return all(ratio < lam for ratio in _prefix_piece_ratios(p))


def cprime_sup(p: Presentation) -> Optional[Fraction]:
    """Largest |u|/|r| over piece prefixes, or None when no relator has one."""
    return max(_prefix_piece_ratios(p), default=None)


def check_T4(p: Presentation) -> bool:
    """T(4): among any admissible triple of symmetrized relators, some
    adjacent product has no seam cancellation.

    Triples (r1, r2, r3) range over the symmetrized set with the adjacency
    constraint r1 != r2^-1, r2 != r3^-1, r3 != r1^-1; the products checked
    are r1 r2, r2 r3, r3 r1.
    """
    elems = symmetrize(p).ordered
    if not elems:
        return True
    firsts = [w.letters[0] for w in elems]
    lasts = [w.letters[-1] for w in elems]
    inv = [w.inverse() for w in elems]
    index = {w: i for i, w in enumerate(elems)}
    n = len(elems)
    for i in range(n):
        for j in range(n):
            if inv[j] == elems[i]:
                continue
            if lasts[i] != firsts[j].inverse():
                continue  # r1 r2 already seam-reduced, triple can't violate
            for k in range(n):
                if inv[k] == elems[j] or inv[i] == elems[k]:
                    continue
                if lasts[j] == firsts[k].inverse() and lasts[k] == firsts[i].inverse():
                    return False
    return True


@dataclass(frozen=True)
class CancellationReport:
    source: Presentation
    piece_count: int
    min_piece_decomposition: tuple  # per original relator: int or None
    c_verdicts: dict
    cprime_sup: Optional[Fraction]
    t4: bool


def build_report(p: Presentation, c_bounds: Iterable[int] = (4,)) -> CancellationReport:
    s = symmetrize(p)
    ps = enumerate_pieces(s)
    return CancellationReport(
        source=p,
        piece_count=len(ps),
        min_piece_decomposition=tuple(min_piece_count(r, ps) for r in p.relators),
        c_verdicts={b: check_C(p, b) for b in c_bounds},
        cprime_sup=cprime_sup(p),
        t4=check_T4(p),
    )


# -- Dehn's algorithm ----------------------------------------------------

def _majority_table(s: SymmetrizedSet):
    """prefix u -> replacement v^-1, for every s-element u v with 2|u| > |u v|.

    Ties on the same prefix keep the earliest element in canonical order.
    """
    table: dict[tuple, Word] = {}
    for r in s.ordered:
        n = len(r)
        for take in range(n, n // 2, -1):
            key = r.letters[:take]
            if key not in table:
                table[key] = r[take:].inverse()
    return table


def dehn_reduce(w: Word, p: Presentation) -> Word:
    """Replace relator-majority subwords u by the shorter complement v^-1
    until none remain.  Leftmost match first, longer matches preferred.

    Never increases length; for C'(1/6) presentations the fixed point is
    empty exactly when w represents the identity.
    """
    s = symmetrize(p)
    table = _majority_table(s)
    if not table:
        return w
    max_take = max(len(k) for k in table)
    cur = w
    changed = True
    while changed:
        changed = False
        n = len(cur)
        for pos in range(n):
            for take in range(min(max_take, n - pos), 0, -1):
                repl = table.get(cur.letters[pos : pos + take])
                if repl is not None:
                    cur = concat(concat(cur[:pos], repl), cur[pos + take :])
                    changed = True
                    break
            if changed:
                break
    return cur


# -- bounded word-problem oracle ------------------------------------------

@dataclass(frozen=True)
class WspWitness:
    """Factors (conjugator, relator, exponent) whose product, freely reduced,
    is the witnessed word."""

    factors: tuple  # of (Word, Word, int)


def replay_witness(witness: WspWitness, alphabet=None) -> Word:
    if not witness.factors and alphabet is None:
        raise ValueError("cannot replay an empty witness without an alphabet")
    if alphabet is None:
        alphabet = witness.factors[0][0].alphabet
    out = Word(alphabet)
    for conj, rel, exp in witness.factors:
        out = out * conj * (rel ** exp) * conj.inverse()
    return out


def witness_matches(witness: WspWitness, w: Word) -> bool:
    return replay_witness(witness, w.alphabet) == w


def _swap_moves(x: Word, elems: tuple):
    """All (post, conjugator, relator, exponent) from one subword swap."""
    n = len(x)
    for pos in range(n):
        for r in elems:
            limit = min(len(r), n - pos)
            for take in range(limit, 0, -1):
                if x.letters[pos : pos + take] == r.letters[:take]:
                    post = concat(concat(x[:pos], r[take:].inverse()), x[pos + take :])
                    yield post, x[:pos], r, -1


def _insert_moves(x: Word, elems: tuple):
    for pos in range(len(x) + 1):
        prefix = x[:pos]
        suffix = x[pos:]
        for r in elems:
            yield concat(concat(prefix, r), suffix), prefix, r, 1


def _moves(x: Word, elems: tuple):
    # swaps first: they are the shrinking direction and reach the goal sooner
    yield from _swap_moves(x, elems)
    yield from _insert_moves(x, elems)


def bounded_wp_oracle(
    w: Word,
    p: Presentation,
    depth: int,
    max_len: int | None = None,
    node_budget: int = 50_000,
) -> Optional[WspWitness]:
    """Search for a proof that w is trivial modulo the relators.

    Breadth-first over at most ``depth`` moves, each move either inserting a
    symmetrized relator at some position or swapping a matched relator prefix
    for the inverted complement.  Intermediate words are capped at
    ``max_len`` (default 2|w| + longest relator) and the whole search at
    ``node_budget`` generated candidates.

    Returns a witness whose replay equals w, or None (unknown).  Sound by
    construction: every move multiplies by a conjugated relator, so a word
    reaching the empty word is genuinely trivial.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if not w:
        return WspWitness(())
    s = symmetrize(p)
    elems = s.ordered
    if not elems:
        return None
    if max_len is None:
        max_len = 2 * len(w) + max(len(r) for r in elems)
    seen = {w}
    frontier: list[tuple[Word, tuple]] = [(w, ())]
    budget = node_budget
    for _ in range(depth):
        if not frontier:
            break
        nxt: list[tuple[Word, tuple]] = []
        for x, path in frontier:
            for post, conj, rel, exp in _moves(x, elems):
                budget -= 1
                if not post:
                    return _finish_witness(path + ((conj, rel, exp),))
                if len(post) <= max_len and post not in seen:
                    seen.add(post)
                    nxt.append((post, path + ((conj, rel, exp),)))
                if budget <= 0:
                    return None
        frontier = nxt
    return None


def _finish_witness(path: tuple) -> WspWitness:
    # moves took w to the empty word: w_i = C r^e C^-1 w_{i-1}, so
    # w = (C_1 r_1^{-e_1} C_1^-1)(C_2 r_2^{-e_2} C_2^-1) ...
    return WspWitness(tuple((conj, rel, -exp) for conj, rel, exp in path))


# -- witness text format --------------------------------------------------

def format_witness(witness: WspWitness) -> str:
    lines = [
        f"factor: conj={conj} rel={rel} exp={exp}"
        for conj, rel, exp in witness.factors
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_witness(text: str, alphabet) -> WspWitness:
    factors = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        if key.strip() != "factor":
            raise ValueError(f"unexpected line {line!r} in witness")
        body = rest.strip()
        if not body.startswith("conj="):
            raise ValueError(f"malformed factor line {line!r}")
        conj_text, sep, tail = body[len("conj=") :].partition(" rel=")
        if not sep:
            raise ValueError(f"malformed factor line {line!r}")
        rel_text, sep, exp_text = tail.partition(" exp=")
        if not sep:
            raise ValueError(f"malformed factor line {line!r}")
        exp = int(exp_text.strip())
        if exp not in (1, -1):
            raise ValueError("factor exponent must be 1 or -1")
        factors.append(
            (parse_word(alphabet, conj_text), parse_word(alphabet, rel_text), exp)
        )
    return WspWitness(tuple(factors))
