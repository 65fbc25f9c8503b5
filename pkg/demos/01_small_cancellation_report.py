"""Walk a two-relator presentation through the small-cancellation checkers.

The presentation has 24 words in its symmetrized closure and exactly ten
pieces; both relators decompose into four pieces and no fewer, so C(4)
holds while C(5) and the metric condition C'(1/6) fail.
"""

from fractions import Fraction

from cakelab import (
    Alphabet,
    Presentation,
    build_report,
    check_C,
    check_Cprime,
    cprime_sup,
    dehn_reduce,
    parse_word,
    symmetrize,
)

x = Alphabet(("x1", "x2", "x3"))
p = Presentation(
    x,
    (parse_word(x, "x1^2 x2 x3^2 x2^-1"), parse_word(x, "x2^2 x3 x1^2 x3^-1")),
)

closure = symmetrize(p)
print(f"symmetrized closure: {len(closure)} words")

report = build_report(p)
print(f"pieces: {report.piece_count}")
print(f"min piece decomposition per relator: {report.min_piece_decomposition}")
print(f"C(4): {check_C(p, 4)}   C(5): {check_C(p, 5)}")
print(f"C'(1/6): {check_Cprime(p, Fraction(1, 6))}   sup ratio: {cprime_sup(p)}")
print(f"T(4): {report.t4}")

# Dehn reduction erases conjugates of relators even without C'(1/6):
w = parse_word(x, "x2 x1^2 x2 x3^2 x2^-2")
print(f"dehn_reduce({w}) = {dehn_reduce(w, p)}")
