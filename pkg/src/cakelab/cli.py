"""Command-line front end.

Exit codes: 0 success, 1 verification failure (key mismatch, oracle unknown
where a decision was required, bit mismatch), 2 input errors.  Every
randomized command takes an explicit --seed; repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .artin import artin_from_graph, format_tree, random_tree
from .cake import (
    ProtocolIntegrityError,
    ProtocolSetupError,
    bitstream_decode,
    bitstream_encode,
    config_digest,
    equality_dehn,
    equality_free,
    equality_oracle,
    format_transcript,
    run_exchange,
    sandwich_exchange,
)
from .diffusion import DisguiseBudget, disguise, format_move_log
from .presentations import (
    Presentation,
    format_history,
    format_presentation,
    include_word,
    parse_presentation,
    shorten_all,
)
from .smallcancel import (
    bounded_wp_oracle,
    build_report,
    check_Cprime,
    format_witness,
)
from .words import Alphabet, parse_word

__all__ = ["main"]


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise ValueError(f"cannot read {path}: {e.strerror or e}") from None


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise ValueError(f"cannot write {path}: {e.strerror or e}") from None


def _bool_text(b: bool) -> str:
    return "true" if b else "false"


def _cmd_gen(args) -> int:
    tree = random_tree(args.levels, args.max_degree, args.label_hi, args.seed)
    pres = artin_from_graph(tree.graph)
    tree_text = format_tree(tree)
    pres_text = format_presentation(pres)
    sys.stdout.write(tree_text)
    sys.stdout.write(pres_text)
    if args.out_tree:
        _write(args.out_tree, tree_text)
    if args.out_pres:
        _write(args.out_pres, pres_text)
    return 0


def _cmd_check(args) -> int:
    p = parse_presentation(_read(args.presentation))
    report = build_report(p)
    print(f"C(4): {_bool_text(report.c_verdicts[4])}")
    print(f"C'(1/6): {_bool_text(check_Cprime(p, Fraction(1, 6)))}")
    print(f"T(4): {_bool_text(report.t4)}")
    print(f"pieces: {report.piece_count}")
    for k in report.min_piece_decomposition:
        print(f"min-pieces: {k if k is not None else 'not-a-piece-product'}")
    return 0


def _cmd_tietze(args) -> int:
    p = parse_presentation(_read(args.presentation))
    h = shorten_all(p)
    history_text = format_history(h)
    for line in history_text.splitlines():
        if line.startswith("step:"):
            print(line)
    sys.stdout.write(format_presentation(h.end))
    if args.lift:
        from .presentations import lift_word

        w = parse_word(h.end.alphabet, args.lift)
        print(f"lift: {lift_word(w, h)}")
    if args.out:
        _write(args.out, history_text)
    return 0


def _cmd_cake_run(args) -> int:
    transcript, key_a, key_b = run_exchange(
        args.seed, args.seed_a, args.seed_b,
        levels=args.levels, max_degree=args.max_degree,
        label_hi=args.label_hi, word_len=args.word_len,
    )
    # reconstruct the public config deterministically for display
    from .cake import setup

    config = setup(args.seed, args.levels, args.max_degree, args.label_hi, args.word_len)
    sys.stdout.write(format_tree(config.platform.tree))
    sys.stdout.write(format_presentation(config.platform.presentation))
    print(f"word: {config.public_word}")
    for i, (sender, payload) in enumerate(transcript.messages, 1):
        print(f"msg {i} {sender}: {payload}")
    print(f"key-a: {key_a.key_bytes.hex()}")
    print(f"key-b: {key_b.key_bytes.hex()}")
    if args.transcript:
        alphabet = config.platform.presentation.alphabet
        _write(args.transcript, format_transcript(alphabet, transcript, key_a, key_b))
    if key_a != key_b:
        print("error: key mismatch", file=sys.stderr)
        return 1
    return 0


def _cmd_sandwich_run(args) -> int:
    from .cake import sandwich_setup

    transcript, key_a, key_b = sandwich_exchange(
        args.seed, args.seed_a, args.seed_b,
        size_a=args.size_a, size_b=args.size_b, word_len=args.word_len,
    )
    config = sandwich_setup(args.seed, args.size_a, args.size_b, args.word_len)
    print(f"gens: {' '.join(config.graph.vertices)}")
    print(f"word: {config.public_word}")
    for i, (sender, payload) in enumerate(transcript.messages, 1):
        print(f"msg {i} {sender}: {payload}")
    print(f"key-a: {key_a.key_bytes.hex()}")
    print(f"key-b: {key_b.key_bytes.hex()}")
    if args.transcript:
        alphabet = config.presentation.alphabet
        _write(args.transcript, format_transcript(alphabet, transcript, key_a, key_b))
    if key_a != key_b:
        print("error: key mismatch", file=sys.stderr)
        return 1
    return 0


def _cmd_disguise(args) -> int:
    p = parse_presentation(_read(args.presentation))
    w = parse_word(p.alphabet, args.word)
    if args.length3:
        h = shorten_all(p)
        p = h.end
        w = include_word(w, h)
        print(f"gens: {' '.join(p.alphabet.names)}")
    budget = DisguiseBudget(args.moves, args.max_conj, args.max_len)
    word, log = disguise(w, p, budget, args.seed)
    print(f"disguised: {word}")
    if args.witness:
        sys.stdout.write(format_move_log(log))
    return 0


def _cmd_wp(args) -> int:
    p = parse_presentation(_read(args.presentation))
    w = parse_word(p.alphabet, args.word)
    witness = bounded_wp_oracle(w, p, args.depth, max_len=args.max_len,
                                node_budget=args.node_budget)
    if witness is None:
        print("unknown")
        return 1
    print("trivial")
    text = format_witness(witness)
    sys.stdout.write(text)
    if args.witness:
        _write(args.witness, text)
    return 0


def _cmd_bits(args) -> int:
    if (args.presentation is None) == (args.gens is None):
        raise ValueError("give exactly one of --presentation or --gens")
    if args.presentation:
        p = parse_presentation(_read(args.presentation))
    else:
        p = Presentation(Alphabet(tuple(args.gens.split())), ())
    u = parse_word(p.alphabet, args.word)
    if any(c not in "01" for c in args.bits) or not args.bits:
        raise ValueError("bits must be a non-empty string of 0s and 1s")
    bits = [int(c) for c in args.bits]
    sent = bitstream_encode(u, bits, p, args.seed)
    for i, w in enumerate(sent, 1):
        print(f"sent {i}: {w}")
    if args.strategy == "free":
        oracle = equality_free()
    elif args.strategy == "dehn":
        oracle = equality_dehn(p)
    else:
        oracle = equality_oracle(p, args.depth)
    decoded = bitstream_decode(u, sent, oracle)
    print("decoded: " + "".join("?" if b is None else str(b) for b in decoded))
    if decoded != bits:
        print("bits: mismatch", file=sys.stderr)
        return 1
    print("bits: ok")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cakelab",
        description="Small-cancellation checkers and commuting-endomorphism key exchange over Artin platforms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random extra-large tree and its presentation")
    g.add_argument("--levels", type=int, required=True)
    g.add_argument("--max-degree", type=int, required=True)
    g.add_argument("--label-hi", type=int, default=7)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out-tree")
    g.add_argument("--out-pres")
    g.set_defaults(func=_cmd_gen)

    c = sub.add_parser("check", help="small-cancellation report for a presentation file")
    c.add_argument("--presentation", required=True)
    c.set_defaults(func=_cmd_check)

    t = sub.add_parser("tietze", help="split relators down to length <= 3")
    t.add_argument("--presentation", required=True)
    t.add_argument("--out", help="write the replayable history file here")
    t.add_argument("--lift", help="word over the end alphabet to lift back")
    t.set_defaults(func=_cmd_tietze)

    cake = sub.add_parser("cake", help="key-exchange protocols")
    cakesub = cake.add_subparsers(dest="cake_command", required=True)
    r = cakesub.add_parser("run", help="one full seeded exchange")
    r.add_argument("--levels", type=int, default=3)
    r.add_argument("--max-degree", type=int, default=4)
    r.add_argument("--label-hi", type=int, default=7)
    r.add_argument("--word-len", type=int, default=16)
    r.add_argument("--seed", type=int, required=True)
    r.add_argument("--seed-a", type=int, required=True)
    r.add_argument("--seed-b", type=int, required=True)
    r.add_argument("--transcript")
    r.set_defaults(func=_cmd_cake_run)

    s = sub.add_parser("sandwich-run", help="two-sided multiplication exchange on a commuting platform")
    s.add_argument("--size-a", type=int, default=2)
    s.add_argument("--size-b", type=int, default=2)
    s.add_argument("--word-len", type=int, default=8)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--seed-a", type=int, required=True)
    s.add_argument("--seed-b", type=int, required=True)
    s.add_argument("--transcript")
    s.set_defaults(func=_cmd_sandwich_run)

    d = sub.add_parser("disguise", help="rewrite a word with equality-preserving moves")
    d.add_argument("--presentation", required=True)
    d.add_argument("--word", required=True)
    d.add_argument("--moves", type=int, required=True)
    d.add_argument("--seed", type=int, required=True)
    d.add_argument("--max-conj", type=int, default=2)
    d.add_argument("--max-len", type=int, default=256)
    d.add_argument("--length3", action="store_true",
                   help="first split all relators to length <= 3")
    d.add_argument("--witness", action="store_true", help="print the move log")
    d.set_defaults(func=_cmd_disguise)

    w = sub.add_parser("wp", help="bounded word-problem oracle")
    w.add_argument("--presentation", required=True)
    w.add_argument("--word", required=True)
    w.add_argument("--depth", type=int, required=True)
    w.add_argument("--max-len", type=int, default=None)
    w.add_argument("--node-budget", type=int, default=50_000)
    w.add_argument("--witness", help="write the witness file here")
    w.set_defaults(func=_cmd_wp)

    b = sub.add_parser("bits", help="encode and decode a bit sequence as words")
    b.add_argument("--presentation")
    b.add_argument("--gens", help="generator names for a relator-free presentation")
    b.add_argument("--word", required=True)
    b.add_argument("--bits", required=True)
    b.add_argument("--seed", type=int, required=True)
    b.add_argument("--strategy", choices=("free", "dehn", "oracle"), default="free")
    b.add_argument("--depth", type=int, default=3)
    b.set_defaults(func=_cmd_bits)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ProtocolIntegrityError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (ValueError, ProtocolSetupError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
