"""Disguise a word, then let the oracle uncover and certify it.

Disguise multiplies in conjugated relators and swaps relator halves: the
text changes, the group element does not. The move log converts into a
witness whose factors multiply to disguised * original^-1, and the bounded
oracle can re-derive such a witness from scratch.
"""

from cakelab import (
    Alphabet,
    DisguiseBudget,
    Presentation,
    bounded_wp_oracle,
    disguise,
    format_move_log,
    move_log_to_witness,
    parse_word,
    replay_witness,
)

x = Alphabet(("x1", "x2", "x3"))
p = Presentation(
    x,
    (parse_word(x, "x1^2 x2 x3^2 x2^-1"), parse_word(x, "x2^2 x3 x1^2 x3^-1")),
)

w = parse_word(x, "x3 x1 x2^-1")
v, log = disguise(w, p, DisguiseBudget(moves=2, max_conjugator_len=1), seed=42)
print(f"original:  {w}")
print(f"disguised: {v}")
print(format_move_log(log), end="")

# the log IS a proof that v and w are the same group element
wit = move_log_to_witness(log)
assert replay_witness(wit, x) == v * ~w

# and the oracle can find its own proof without seeing the log
fresh = bounded_wp_oracle(v * ~w, p, depth=len(log) + 1)
assert fresh is not None
assert replay_witness(fresh, x) == v * ~w
print(f"oracle re-derived a {len(fresh.factors)}-factor witness")

# that re-derivation is what the disguise is designed to make expensive:
# already at three moves the same search outruns its default node budget
v3, log3 = disguise(w, p, DisguiseBudget(moves=3), seed=42)
blind = bounded_wp_oracle(v3 * ~w, p, depth=len(log3) + 1)
print(f"3-move disguise, blind search: {'found' if blind else 'unknown (budget exhausted)'}")
