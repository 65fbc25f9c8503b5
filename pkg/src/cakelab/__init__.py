"""Free-group words, small-cancellation presentations, and commuting-endomorphism key exchange."""

from .words import (
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
from .presentations import (
    Presentation,
    PresentationHistory,
    SymmetrizedSet,
    TietzeStep,
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
from .smallcancel import (
    CancellationReport,
    PieceSet,
    WspWitness,
    bounded_wp_oracle,
    build_report,
    check_C,
    check_Cprime,
    check_T4,
    cprime_sup,
    dehn_reduce,
    enumerate_pieces,
    format_witness,
    min_piece_count,
    parse_witness,
    replay_witness,
    witness_matches,
)
from .artin import (
    ElementaryMove,
    GraphMorphism,
    GroupEndomorphism,
    LabeledGraph,
    RootedTree,
    SplitPlatform,
    apply_endo,
    artin_from_graph,
    compose,
    endos_commute,
    enumerate_side_moves,
    format_tree,
    identity_endo,
    induce_endomorphism,
    induced_subgraph,
    is_extra_large,
    move_endomorphism,
    parse_tree,
    random_endo,
    random_tree,
    split_at_root,
    validate_morphism,
)
from .diffusion import (
    DisguiseBudget,
    RewriteMove,
    disguise,
    find_growth_swaps,
    format_move_log,
    insert_conjugate,
    move_log_to_witness,
    parse_move_log,
    subword_swap,
)
from .cake import (
    ProtocolConfig,
    ProtocolIntegrityError,
    ProtocolSetupError,
    SandwichConfig,
    SessionKey,
    Transcript,
    bitstream_decode,
    bitstream_encode,
    derive_key,
    equality_dehn,
    equality_free,
    equality_oracle,
    finalize,
    format_transcript,
    parse_transcript,
    party_step,
    run_exchange,
    sandwich_exchange,
    sandwich_key,
    sandwich_message,
    sandwich_normal_form,
    sandwich_setup,
    setup,
)

__version__ = "0.1.0"
