"""Labeled trees, induced endomorphisms, elementary moves."""

import random
import warnings

import pytest

from cakelab.artin import (
    ElementaryMove,
    GraphMorphism,
    GroupEndomorphism,
    LabeledGraph,
    RootedTree,
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
from cakelab.presentations import alternating_word
from cakelab.words import Alphabet, Word, parse_word


def small_tree():
    """Fixed 5-vertex tree: root r with children u, v; u has leaves p, q
    whose parent edges carry the same label so p/q can merge or swap."""
    g = LabeledGraph(("r", "u", "v", "p", "q"),
                     frozenset({(0, 1, 4), (0, 2, 5), (1, 3, 6), (1, 4, 6)}))
    return RootedTree(g, 0, (-1, 0, 0, 1, 1), 3)


# ----------------------------------------------------------------- graphs

def test_graph_validation():
    with pytest.raises(ValueError):
        LabeledGraph(("a", "a"), frozenset())
    with pytest.raises(ValueError):
        LabeledGraph(("a", "b"), frozenset({(1, 0, 4)}))
    with pytest.raises(ValueError):
        LabeledGraph(("a", "b"), frozenset({(0, 1, 1)}))


def test_artin_relators_are_alternating():
    g = LabeledGraph(("a", "b", "c"), frozenset({(0, 1, 3), (1, 2, 2)}))
    p = artin_from_graph(g)
    assert p.alphabet.names == ("a", "b", "c")
    alpha = p.alphabet
    expect = {
        str(alternating_word(alpha, 0, 1, 3) * ~alternating_word(alpha, 1, 0, 3)),
        str(alternating_word(alpha, 1, 2, 2) * ~alternating_word(alpha, 2, 1, 2)),
    }
    assert {str(r) for r in p.relators} == expect
    for r in p.relators:
        assert r.is_cyclically_reduced


def test_is_extra_large():
    assert is_extra_large(LabeledGraph(("a", "b"), frozenset({(0, 1, 4)})))
    assert not is_extra_large(LabeledGraph(("a", "b"), frozenset({(0, 1, 3)})))


# ------------------------------------------------------------------ trees

def test_tree_validation_rejects_bad_root_degree():
    g = LabeledGraph(("r", "u", "v", "w"),
                     frozenset({(0, 1, 4), (0, 2, 4), (0, 3, 4)}))
    with pytest.raises(ValueError):
        RootedTree(g, 0, (-1, 0, 0, 0), 2)


def test_tree_validation_rejects_small_labels():
    g = LabeledGraph(("r", "u", "v"), frozenset({(0, 1, 3), (0, 2, 4)}))
    with pytest.raises(ValueError):
        RootedTree(g, 0, (-1, 0, 0), 2)


def test_tree_validation_rejects_wrong_levels():
    g = LabeledGraph(("r", "u", "v"), frozenset({(0, 1, 4), (0, 2, 4)}))
    with pytest.raises(ValueError):
        RootedTree(g, 0, (-1, 0, 0), 3)
    t = RootedTree(g, 0, (-1, 0, 0), 2)
    assert t.levels == 2


def test_random_tree_invariants():
    for seed in range(25):
        levels = 2 + seed % 4
        t = random_tree(levels, 4, 7, seed=seed)
        g = t.graph
        assert t.levels == levels
        assert g.degree(t.root) == 2
        assert is_extra_large(g)
        assert all(4 <= m <= 7 for _, _, m in g.edges)
        assert len(g.edges) == len(g.vertices) - 1
        # names follow breadth-first discovery order
        assert g.vertices == tuple(f"a{i+1}" for i in range(len(g.vertices)))


def test_random_tree_deterministic():
    assert random_tree(3, 4, 7, seed=2) == random_tree(3, 4, 7, seed=2)


def test_random_tree_rejects_bad_arguments():
    with pytest.raises(ValueError):
        random_tree(1, 4)
    with pytest.raises(ValueError):
        random_tree(3, 1)
    with pytest.raises(ValueError):
        random_tree(3, 4, label_hi=3)


def test_tree_file_round_trip():
    for seed in (0, 5, 9):
        t = random_tree(3, 4, 7, seed=seed)
        text = format_tree(t)
        back = parse_tree(text)
        assert back == t
        assert format_tree(back) == text


def test_parse_tree_rejects_forests():
    with pytest.raises(ValueError):
        parse_tree("root: a\nedge: b c 4\nedge: b d 4\n")


# ------------------------------------------------------------ morphisms

def test_split_at_root_partitions_vertices():
    t = small_tree()
    plat = split_at_root(t)
    assert set(plat.side_a) | {t.root} | set(plat.side_b) == set(range(5))
    assert not set(plat.side_a) & set(plat.side_b)
    # each side is one child's whole subtree
    assert sorted(plat.side_a) == [1, 3, 4]
    assert sorted(plat.side_b) == [2]


def test_validate_morphism():
    t = small_tree()
    side = induced_subgraph(t.graph, (1, 3, 4))
    # collapsing p and q onto p preserves the labels
    assert validate_morphism(side, (0, 1, 1))
    # sending p to u does not: no edge u-u
    assert not validate_morphism(side, (0, 0, 1))


def test_induce_endomorphism_fixes_root_and_far_side():
    t = small_tree()
    plat = split_at_root(t)
    side = induced_subgraph(t.graph, tuple(sorted(plat.side_a)))
    e = induce_endomorphism(plat, "A", GraphMorphism(side, (0, 1, 1)))
    names = plat.presentation.alphabet
    assert e.images[0] == names.letter("r")
    assert e.images[2] == names.letter("v")
    assert e.images[4] == names.letter("p")  # q collapsed onto p


def test_induce_rejects_label_breaking_map():
    t = small_tree()
    plat = split_at_root(t)
    side = induced_subgraph(t.graph, tuple(sorted(plat.side_a)))
    with pytest.raises(ValueError):
        induce_endomorphism(plat, "A", GraphMorphism(side, (0, 0, 1)))


# ------------------------------------------------------ elementary moves

def test_enumerate_side_moves_small_tree():
    plat = split_at_root(small_tree())
    moves = enumerate_side_moves(plat, "A")
    kinds = {(m.kind, m.a, m.b) for m in moves}
    assert kinds == {("merge", 3, 4), ("merge", 4, 3), ("swap", 3, 4)}
    assert enumerate_side_moves(plat, "B") == ()


def test_merge_endomorphism_identifies_leaves():
    plat = split_at_root(small_tree())
    e = move_endomorphism(plat, ElementaryMove("merge", 3, 4))
    a = plat.presentation.alphabet
    assert e.images[3] == a.letter("q")
    assert e.images[4] == a.letter("q")


def test_swap_endomorphism_exchanges_subtrees():
    plat = split_at_root(small_tree())
    e = move_endomorphism(plat, ElementaryMove("swap", 3, 4))
    a = plat.presentation.alphabet
    assert e.images[3] == a.letter("q")
    assert e.images[4] == a.letter("p")
    # involution
    assert compose(e, e) == identity_endo(a)


def test_move_endomorphism_rejects_illegal_move():
    plat = split_at_root(small_tree())
    with pytest.raises(ValueError):
        move_endomorphism(plat, ElementaryMove("merge", 1, 2))


def test_swap_requires_matching_shapes():
    # p and q hang on labels 6 and 7: merge and swap both impossible
    g = LabeledGraph(("r", "u", "v", "p", "q"),
                     frozenset({(0, 1, 4), (0, 2, 5), (1, 3, 6), (1, 4, 7)}))
    t = RootedTree(g, 0, (-1, 0, 0, 1, 1), 3)
    plat = split_at_root(t)
    assert enumerate_side_moves(plat, "A") == ()


def test_deeper_swap_pairs_whole_subtrees():
    # two label-isomorphic depth-2 branches under the root's first child
    g = LabeledGraph(
        ("r", "u", "v", "s1", "s2", "l1", "l2"),
        frozenset({(0, 1, 4), (0, 2, 5), (1, 3, 6), (1, 4, 6), (3, 5, 4), (4, 6, 4)}),
    )
    t = RootedTree(g, 0, (-1, 0, 0, 1, 1, 3, 4), 4)
    plat = split_at_root(t)
    moves = enumerate_side_moves(plat, "A")
    swaps = [m for m in moves if m.kind == "swap"]
    assert [(m.a, m.b) for m in swaps] == [(3, 4)]
    e = move_endomorphism(plat, swaps[0])
    a = plat.presentation.alphabet
    assert e.images[3] == a.letter("s2")
    assert e.images[5] == a.letter("l2")
    # merges of non-leaf vertices are not offered
    assert all(m.kind == "swap" or {m.a, m.b} != {3, 4} for m in moves)


# ----------------------------------------------------------- commutation

def test_apply_endo_is_homomorphism():
    plat = split_at_root(small_tree())
    a = plat.presentation.alphabet
    e = move_endomorphism(plat, ElementaryMove("swap", 3, 4))
    rng = random.Random(4)
    from cakelab.words import random_reduced_word

    for _ in range(30):
        x = random_reduced_word(a, rng.randint(0, 6), rng)
        y = random_reduced_word(a, rng.randint(0, 6), rng)
        assert apply_endo(x * y, e) == apply_endo(x, e) * apply_endo(y, e)


def test_opposite_side_endos_commute_fuzz():
    checked = 0
    seed = 0
    while checked < 60:
        t = random_tree(3 + seed % 3, 4, 7, seed=seed)
        plat = split_at_root(t)
        ma = enumerate_side_moves(plat, "A")
        mb = enumerate_side_moves(plat, "B")
        seed += 1
        if not ma or not mb:
            continue
        rng = random.Random(seed)
        ea = move_endomorphism(plat, rng.choice(ma))
        eb = move_endomorphism(plat, rng.choice(mb))
        assert endos_commute(ea, eb)
        assert endos_commute(compose(ea, ea), eb)
        checked += 1


def test_same_side_composition_stays_on_side():
    plat = split_at_root(small_tree())
    a = plat.presentation.alphabet
    moves = enumerate_side_moves(plat, "A")
    e = move_endomorphism(plat, moves[0])
    for m in moves[1:]:
        e = compose(move_endomorphism(plat, m), e)
    for v in (0, 2):  # root and side B never move
        assert e.images[v] == a.letter(a.names[v])


def test_random_endo_deterministic_and_nontrivial():
    plat = split_at_root(small_tree())
    e1 = random_endo(plat, "A", seed=13)
    e2 = random_endo(plat, "A", seed=13)
    assert e1 == e2
    assert e1 != identity_endo(plat.presentation.alphabet)


def test_random_endo_warns_when_side_is_rigid():
    plat = split_at_root(small_tree())
    with warnings.catch_warnings(record=True) as log:
        warnings.simplefilter("always")
        e = random_endo(plat, "B", seed=1)
    assert e == identity_endo(plat.presentation.alphabet)
    assert any("no" in str(w.message).lower() for w in log)


def test_endo_certification_against_relators():
    # every move endo must send every relator to a trivial word; spot check
    plat = split_at_root(small_tree())
    p = plat.presentation
    from cakelab.smallcancel import bounded_wp_oracle

    e = move_endomorphism(plat, ElementaryMove("merge", 3, 4))
    for r in p.relators:
        img = apply_endo(r, e)
        if len(img) == 0:
            continue
        assert bounded_wp_oracle(img, p, 3) is not None
