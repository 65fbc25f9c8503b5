"""Labeled graphs, rooted trees, Artin presentations, and the endomorphisms
induced by label-preserving graph self-maps.

A labeled graph stands for the group with one relator per edge equating the
two alternating words of the edge's length.  Trees whose labels all sit at 4
or above ("extra large") split at a degree-2 root into two disjoint sides;
self-maps touching only one side induce group endomorphisms that commute
with those of the other side, which is what the key exchange runs on.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property
from random import Random
from typing import Optional

from .presentations import Presentation, alternating_word, symmetrize
from .words import Alphabet, Letter, Word, free_reduce

__all__ = [
    "LabeledGraph",
    "RootedTree",
    "GraphMorphism",
    "GroupEndomorphism",
    "SplitPlatform",
    "ElementaryMove",
    "artin_from_graph",
    "is_extra_large",
    "random_tree",
    "split_at_root",
    "validate_morphism",
    "induced_subgraph",
    "induce_endomorphism",
    "identity_endo",
    "apply_endo",
    "compose",
    "endos_commute",
    "enumerate_side_moves",
    "move_endomorphism",
    "random_endo",
    "format_tree",
    "parse_tree",
]


@dataclass(frozen=True)
class LabeledGraph:
    """Vertices are generator names; an edge (i, j, m) relates them with
    alternating words of length m >= 2.  No loops, no multiple edges."""

    vertices: tuple[str, ...]
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", frozenset(self.edges))
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise ValueError("duplicate vertex names")
        seen_pairs = set()
        for i, j, m in self.edges:
            if not (0 <= i < j < n):
                raise ValueError(f"bad edge endpoints ({i}, {j})")
            if m < 2:
                raise ValueError(f"edge label {m} below 2")
            if (i, j) in seen_pairs:
                raise ValueError(f"multiple edges between {i} and {j}")
            seen_pairs.add((i, j))

    @cached_property
    def _labels(self) -> dict:
        return {(i, j): m for i, j, m in self.edges}

    def label(self, a: int, b: int) -> Optional[int]:
        return self._labels.get((min(a, b), max(a, b)))

    @cached_property
    def _adjacency(self) -> tuple:
        adj = [[] for _ in self.vertices]
        for i, j, _ in sorted(self.edges):
            adj[i].append(j)
            adj[j].append(i)
        return tuple(tuple(sorted(x)) for x in adj)

    def neighbors(self, v: int) -> tuple:
        return self._adjacency[v]

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def alphabet(self) -> Alphabet:
        return Alphabet(self.vertices)


def artin_from_graph(g: LabeledGraph) -> Presentation:
    """One relator per edge: the alternating word a_i a_j a_i ... of length m
    times the inverse of its mirror a_j a_i a_j ...; length 2m, cyclically
    reduced."""
    alphabet = g.alphabet()
    relators = []
    for i, j, m in sorted(g.edges):
        rel = alternating_word(alphabet, i, j, m) * alternating_word(alphabet, j, i, m).inverse()
        if rel not in relators:
            relators.append(rel)
    return Presentation(alphabet, tuple(relators))


def is_extra_large(g: LabeledGraph) -> bool:
    return all(m >= 4 for _, _, m in g.edges)


@dataclass(frozen=True)
class RootedTree:
    """A tree whose root has degree exactly 2 and whose labels are all >= 4.

    ``parent[v]`` is v's parent index, -1 for the root.  ``levels`` counts
    vertex levels, the root being level 1.
    """

    graph: LabeledGraph
    root: int
    parent: tuple[int, ...]
    levels: int

    def __post_init__(self):
        object.__setattr__(self, "parent", tuple(self.parent))
        g = self.graph
        n = len(g.vertices)
        if not (0 <= self.root < n) or len(self.parent) != n:
            raise ValueError("root or parent table out of shape")
        if self.parent[self.root] != -1:
            raise ValueError("root must have parent -1")
        if len(g.edges) != n - 1:
            raise ValueError("edge count does not match a tree")
        parent_edges = set()
        for v in range(n):
            if v == self.root:
                continue
            p = self.parent[v]
            if not (0 <= p < n):
                raise ValueError(f"vertex {v} has no parent")
            parent_edges.add((min(v, p), max(v, p)))
        if parent_edges != {(i, j) for i, j, _ in g.edges}:
            raise ValueError("parent table disagrees with the edge set")
        if not self._reaches_root():
            raise ValueError("parent chains do not reach the root")
        if g.degree(self.root) != 2:
            raise ValueError("root degree must be exactly 2")
        if not is_extra_large(g):
            raise ValueError("tree labels must all be >= 4")
        deepest = max(self.level(v) for v in range(n))
        if deepest != self.levels:
            raise ValueError(f"levels field says {self.levels} but depth is {deepest}")

    def _reaches_root(self) -> bool:
        # cycle guard: every vertex must reach the root in < n steps
        n = len(self.graph.vertices)
        for v in range(n):
            hops = 0
            while v != self.root:
                v = self.parent[v]
                hops += 1
                if hops >= n:
                    return False
        return True

    def level(self, v: int) -> int:
        k = 1
        while v != self.root:
            v = self.parent[v]
            k += 1
        return k

    @cached_property
    def _children(self) -> tuple:
        kids = [[] for _ in self.graph.vertices]
        for v, p in enumerate(self.parent):
            if p >= 0:
                kids[p].append(v)
        return tuple(tuple(sorted(k)) for k in kids)

    def children(self, v: int) -> tuple:
        return self._children[v]

    def is_leaf(self, v: int) -> bool:
        return not self._children[v]

    def subtree(self, v: int) -> tuple:
        out = [v]
        stack = [v]
        while stack:
            for c in self.children(stack.pop()):
                out.append(c)
                stack.append(c)
        return tuple(sorted(out))

    def edge_label(self, a: int, b: int) -> int:
        m = self.graph.label(a, b)
        if m is None:
            raise ValueError(f"no edge between {a} and {b}")
        return m


def random_tree(levels: int, max_degree: int, label_hi: int = 7, seed: int = 0) -> RootedTree:
    """Seed-deterministic rooted tree: root degree 2, internal degrees at most
    max_degree, vertex levels exactly ``levels``, labels uniform in [4, label_hi].
    Vertices are named a1, a2, ... in breadth-first order."""
    if levels < 2:
        raise ValueError("need at least 2 levels")
    if max_degree < 2:
        raise ValueError("max_degree must be at least 2")
    if label_hi < 4:
        raise ValueError("label_hi must be at least 4")
    rng = Random(seed)
    parent = [-1]
    level_of = [1]

    def add_child(p: int) -> int:
        v = len(parent)
        parent.append(p)
        level_of.append(level_of[p] + 1)
        return v

    current = [add_child(0), add_child(0)]  # root degree exactly 2
    for lvl in range(2, levels):
        cap = max_degree - 1  # one slot is taken by the parent edge
        for _ in range(1000):
            counts = [rng.randint(0, cap) for _ in current]
            if any(counts):
                break
        else:
            raise ValueError("could not extend the tree to the requested depth")
        nxt = []
        for v, k in zip(current, counts):
            nxt.extend(add_child(v) for _ in range(k))
        current = nxt
    names = tuple(f"a{i + 1}" for i in range(len(parent)))
    edges = frozenset(
        (min(v, p), max(v, p), rng.randint(4, label_hi))
        for v, p in enumerate(parent)
        if p >= 0
    )
    return RootedTree(LabeledGraph(names, edges), 0, tuple(parent), levels)


@dataclass(frozen=True)
class SplitPlatform:
    """A rooted tree split at its root: two connected sides plus the shared
    Artin presentation of the whole tree."""

    tree: RootedTree
    side_a: tuple[int, ...]
    side_b: tuple[int, ...]
    presentation: Presentation

    def __post_init__(self):
        t = self.tree
        all_verts = set(range(len(t.graph.vertices)))
        a, b = set(self.side_a), set(self.side_b)
        if a & b or a | b | {t.root} != all_verts or t.root in a | b:
            raise ValueError("sides must partition the non-root vertices")

    def side(self, which: str) -> tuple[int, ...]:
        if which == "A":
            return self.side_a
        if which == "B":
            return self.side_b
        raise ValueError(f"side must be 'A' or 'B', not {which!r}")


def split_at_root(t: RootedTree) -> SplitPlatform:
    c1, c2 = t.children(t.root)
    return SplitPlatform(t, t.subtree(c1), t.subtree(c2), artin_from_graph(t.graph))


@dataclass(frozen=True)
class GraphMorphism:
    """A total vertex self-map of ``domain`` meant to preserve edges and labels."""

    domain: LabeledGraph
    vertex_map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertex_map", tuple(self.vertex_map))
        n = len(self.domain.vertices)
        if len(self.vertex_map) != n or not all(0 <= v < n for v in self.vertex_map):
            raise ValueError("vertex map must be total on the domain")


def validate_morphism(g: LabeledGraph, vertex_map) -> bool:
    """True iff every edge maps to an edge with the same label and no edge
    collapses to a loop."""
    vm = tuple(vertex_map)
    for i, j, m in g.edges:
        a, b = vm[i], vm[j]
        if a == b:
            return False
        if g.label(a, b) != m:
            return False
    return True


def induced_subgraph(g: LabeledGraph, verts: tuple[int, ...]) -> LabeledGraph:
    """Subgraph on ``verts`` (names kept, indices compacted in given order)."""
    index = {v: k for k, v in enumerate(verts)}
    if len(index) != len(verts):
        raise ValueError("duplicate vertices")
    edges = frozenset(
        (min(index[i], index[j]), max(index[i], index[j]), m)
        for i, j, m in g.edges
        if i in index and j in index
    )
    return LabeledGraph(tuple(g.vertices[v] for v in verts), edges)


@dataclass(frozen=True)
class GroupEndomorphism:
    """Generator-wise substitution map; images indexed like the alphabet."""

    alphabet: Alphabet
    images: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != len(self.alphabet.names):
            raise ValueError("one image per generator required")
        for img in self.images:
            if img.alphabet != self.alphabet:
                raise ValueError("image over a different alphabet")

    @property
    def moved(self) -> frozenset:
        """Generators whose image is not themselves."""
        return frozenset(
            g for g, img in enumerate(self.images)
            if img.letters != (Letter(g, 1),)
        )


def identity_endo(alphabet: Alphabet) -> GroupEndomorphism:
    images = tuple(Word(alphabet, (Letter(g, 1),)) for g in range(len(alphabet.names)))
    return GroupEndomorphism(alphabet, images)


def apply_endo(w: Word, e: GroupEndomorphism) -> Word:
    """Homomorphic substitution: inverse letters get inverted images."""
    if w.alphabet != e.alphabet:
        raise ValueError("alphabet mismatch")
    out = []
    for lt in w.letters:
        img = e.images[lt.gen]
        out.extend(img.letters if lt.sign > 0 else img.inverse().letters)
    return free_reduce(e.alphabet, out)


def compose(e1: GroupEndomorphism, e2: GroupEndomorphism) -> GroupEndomorphism:
    """e1 after e2: apply_endo(w, compose(e1, e2)) = apply_endo(apply_endo(w, e2), e1)."""
    if e1.alphabet != e2.alphabet:
        raise ValueError("alphabet mismatch")
    return GroupEndomorphism(
        e1.alphabet, tuple(apply_endo(img, e1) for img in e2.images)
    )


def endos_commute(e1: GroupEndomorphism, e2: GroupEndomorphism) -> bool:
    if e1.alphabet != e2.alphabet:
        raise ValueError("alphabet mismatch")
    return all(
        apply_endo(e1.images[g], e2) == apply_endo(e2.images[g], e1)
        for g in range(len(e1.alphabet.names))
    )


def _endo_from_vertex_map(p: Presentation, vertex_map) -> GroupEndomorphism:
    alphabet = p.alphabet
    images = tuple(
        Word(alphabet, (Letter(vertex_map[g], 1),))
        for g in range(len(alphabet.names))
    )
    return GroupEndomorphism(alphabet, images)


def induce_endomorphism(platform: SplitPlatform, side: str, morphism: GraphMorphism) -> GroupEndomorphism:
    """Extend a side-subtree self-map to the whole group: the chosen side's
    generators move per the morphism, the root and the other side stay fixed.

    Certification: the image of every relator must be syntactically trivial
    (empty or a symmetrized relator); anything unresolved goes to the bounded
    oracle at depth 3, and failure rejects the morphism naming the relator.
    """
    side_verts = platform.side(side)
    expected = induced_subgraph(platform.tree.graph, side_verts)
    if morphism.domain != expected:
        raise ValueError("morphism domain must be the chosen side's subtree")
    if not validate_morphism(morphism.domain, morphism.vertex_map):
        raise ValueError("vertex map is not label- and edge-preserving")
    full_map = list(range(len(platform.tree.graph.vertices)))
    for local, v in enumerate(side_verts):
        full_map[v] = side_verts[morphism.vertex_map[local]]
    endo = _endo_from_vertex_map(platform.presentation, full_map)
    _certify(endo, platform.presentation)
    return endo


def _certify(endo: GroupEndomorphism, p: Presentation) -> None:
    from .smallcancel import bounded_wp_oracle  # local import, module layering

    s = symmetrize(p)
    for r in p.relators:
        img = apply_endo(r, endo)
        if not img or img in s:
            continue
        if bounded_wp_oracle(img, p, depth=3) is None:
            raise ValueError(f"image of relator {str(r)!r} is not certified trivial")


@dataclass(frozen=True)
class ElementaryMove:
    """Either merge leaf a onto leaf b (same parent, equal edge labels) or
    swap the label-isomorphic sibling subtrees rooted at a and b."""

    kind: str  # "merge" | "swap"
    a: int
    b: int

    def __post_init__(self):
        if self.kind not in ("merge", "swap"):
            raise ValueError(f"unknown move kind {self.kind!r}")
        if self.a == self.b:
            raise ValueError("move endpoints must differ")


def _shape(tree: RootedTree, v: int):
    return tuple(sorted((tree.edge_label(v, c), _shape(tree, c)) for c in tree.children(v)))


def enumerate_side_moves(platform: SplitPlatform, side: str) -> tuple[ElementaryMove, ...]:
    """Every legal elementary move whose support lies in the chosen side."""
    t = platform.tree
    moves = []
    for p in platform.side(side):
        kids = t.children(p)
        for x in kids:
            for y in kids:
                if x != y and t.is_leaf(x) and t.is_leaf(y) \
                        and t.edge_label(p, x) == t.edge_label(p, y):
                    moves.append(ElementaryMove("merge", x, y))
        for ix, x in enumerate(kids):
            for y in kids[ix + 1 :]:
                if t.edge_label(p, x) == t.edge_label(p, y) \
                        and _shape(t, x) == _shape(t, y):
                    moves.append(ElementaryMove("swap", x, y))
    return tuple(sorted(moves, key=lambda m: (m.kind, m.a, m.b)))


def _pair_subtrees(tree: RootedTree, a: int, b: int, out: list) -> None:
    out[a], out[b] = b, a
    key = lambda c: (tree.edge_label(c, tree.parent[c]), _shape(tree, c), tree.graph.vertices[c])
    for ca, cb in zip(sorted(tree.children(a), key=key), sorted(tree.children(b), key=key)):
        _pair_subtrees(tree, ca, cb, out)


def move_endomorphism(platform: SplitPlatform, move: ElementaryMove) -> GroupEndomorphism:
    t = platform.tree
    vmap = list(range(len(t.graph.vertices)))
    if move.kind == "merge":
        if not (t.is_leaf(move.a) and t.is_leaf(move.b)):
            raise ValueError("merge endpoints must be leaves")
        if t.parent[move.a] != t.parent[move.b]:
            raise ValueError("merge endpoints must be siblings")
        p = t.parent[move.a]
        if t.edge_label(p, move.a) != t.edge_label(p, move.b):
            raise ValueError("merge needs equal parent edge labels")
        vmap[move.a] = move.b
    else:
        if t.parent[move.a] != t.parent[move.b]:
            raise ValueError("swap endpoints must be siblings")
        p = t.parent[move.a]
        if t.edge_label(p, move.a) != t.edge_label(p, move.b) \
                or _shape(t, move.a) != _shape(t, move.b):
            raise ValueError("swap needs label-isomorphic subtrees")
        _pair_subtrees(t, move.a, move.b, vmap)
    return _endo_from_vertex_map(platform.presentation, vmap)


def random_endo(platform: SplitPlatform, side: str, seed: int, move_budget: int = 3) -> GroupEndomorphism:
    """Compose up to move_budget random side moves; guaranteed to move some
    side generator whenever the side has any legal move.  With no legal moves
    it warns and returns the identity."""
    if move_budget < 1:
        raise ValueError("move_budget must be at least 1")
    moves = enumerate_side_moves(platform, side)
    alphabet = platform.presentation.alphabet
    if not moves:
        warnings.warn(f"side {side} has no legal elementary moves; returning identity")
        return identity_endo(alphabet)
    rng = Random(seed)
    side_set = frozenset(platform.side(side))
    for _ in range(64):
        k = rng.randint(1, move_budget)
        endo = identity_endo(alphabet)
        for _ in range(k):
            endo = compose(move_endomorphism(platform, rng.choice(moves)), endo)
        if endo.moved & side_set:
            return endo
    return move_endomorphism(platform, moves[0])  # single moves never fix the whole side


# -- tree text format ------------------------------------------------------

def format_tree(t: RootedTree) -> str:
    names = t.graph.vertices
    lines = [f"root: {names[t.root]}"]
    order = [t.root]
    queue = [t.root]
    while queue:
        v = queue.pop(0)
        for c in t.children(v):
            lines.append(f"edge: {names[v]} {names[c]} {t.edge_label(v, c)}")
            queue.append(c)
    return "\n".join(lines) + "\n"


def parse_tree(text: str) -> RootedTree:
    root_name = None
    raw_edges = []
    order: list[str] = []

    def note(name: str):
        if name not in order:
            order.append(name)

    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        key, rest = key.strip(), rest.strip()
        if key == "root":
            if root_name is not None:
                raise ValueError("duplicate root line")
            root_name = rest
            note(root_name)
        elif key == "edge":
            parts = rest.split()
            if len(parts) != 3:
                raise ValueError(f"malformed edge line {line!r}")
            note(parts[0])
            note(parts[1])
            raw_edges.append((parts[0], parts[1], int(parts[2])))
        else:
            raise ValueError(f"unexpected {key!r} line in tree file")
    if root_name is None:
        raise ValueError("missing root line")
    index = {name: k for k, name in enumerate(order)}
    edges = frozenset(
        (min(index[a], index[b]), max(index[a], index[b]), m) for a, b, m in raw_edges
    )
    graph = LabeledGraph(tuple(order), edges)
    root = index[root_name]
    parent = [-2] * len(order)
    parent[root] = -1
    queue = [root]
    while queue:
        v = queue.pop(0)
        for u in graph.neighbors(v):
            if parent[u] == -2:
                parent[u] = v
                queue.append(u)
    if any(p == -2 for p in parent):
        raise ValueError("tree file is not connected")
    levels = 1
    for v in range(len(order)):
        k, u = 1, v
        while u != root:
            u = parent[u]
            k += 1
        levels = max(levels, k)
    return RootedTree(graph, root, tuple(parent), levels)
