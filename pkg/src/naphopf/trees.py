"""Canonical rooted trees and forests, plus the NAP and Comm set-operads.

Trees are immutable canonical values: children are kept sorted by
(size, canonical string), so structural equality coincides with equality of
canonical strings and multisets deduplicate by sorting.  Labeled trees are
root + parent-map data with arbitrary hashable labels; the standard ground
set is the strings "1".."n".
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product as cartesian
from math import factorial
from typing import Callable, Hashable, Iterable, Iterator, Sequence

Label = Hashable


class TreeSyntaxError(ValueError):
    """Malformed tree literal; ``offset`` is the byte position of the error."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


def _key(t: "RootedTree") -> tuple[int, str]:
    return (t.size, t.string)


class RootedTree:
    """Unlabeled rooted tree in canonical form.

    The canonical string is ``"(" + children + ")"`` with children sorted
    ascending by (size, string); two trees are equal exactly when their
    canonical strings are equal.
    """

    __slots__ = ("children", "size", "string", "_hash")

    def __init__(self, children: Iterable["RootedTree"] = ()) -> None:
        kids = tuple(sorted(children, key=_key))
        self.children = kids
        self.size = 1 + sum(c.size for c in kids)
        self.string = "(%s)" % "".join(c.string for c in kids)
        self._hash = hash(self.string)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return isinstance(other, RootedTree) and self.string == other.string

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "RootedTree") -> bool:
        return _key(self) < _key(other)

    def __le__(self, other: "RootedTree") -> bool:
        return _key(self) <= _key(other)

    def __repr__(self) -> str:
        return "RootedTree(%r)" % self.string

    @property
    def root_valence(self) -> int:
        return len(self.children)

    def is_corolla(self) -> bool:
        """True iff every non-root vertex is a child of the root."""
        return all(c.size == 1 for c in self.children)

    def is_chain(self) -> bool:
        """True iff the tree is linear (every vertex has at most one child)."""
        node = self
        while node.children:
            if len(node.children) > 1:
                return False
            node = node.children[0]
        return True


LEAF = RootedTree()


def leaf() -> RootedTree:
    """The single-vertex tree."""
    return LEAF


def chain(n: int) -> RootedTree:
    """The linear tree with n vertices."""
    if n < 1:
        raise ValueError("chain needs at least one vertex")
    t = LEAF
    for _ in range(n - 1):
        t = RootedTree((t,))
    return t


def corolla(k: int) -> RootedTree:
    """The tree whose root carries k leaf children (k+1 vertices)."""
    if k < 0:
        raise ValueError("corolla needs a nonnegative leaf count")
    return RootedTree((LEAF,) * k)


def graft(branches: Iterable[RootedTree]) -> RootedTree:
    """B(r, t_1, ..., t_k): a new root with the given branch multiset."""
    return RootedTree(branches)


def graft_onto(s: RootedTree, t: RootedTree) -> RootedTree:
    """The NAP product s ◁ t: attach t as one more branch of the root of s."""
    return RootedTree(s.children + (t,))


def parse_tree(text: str) -> RootedTree:
    """Parse the grammar ``tree := "(" tree* ")"`` into a canonical tree.

    Leading and trailing whitespace is ignored; anything else malformed
    raises :class:`TreeSyntaxError` with the offending byte offset.
    """
    n = len(text)

    def skip_ws(i: int) -> int:
        while i < n and text[i].isspace():
            i += 1
        return i

    def parse(i: int) -> tuple[RootedTree, int]:
        if i >= n:
            raise TreeSyntaxError("unexpected end of input, expected '('", i)
        if text[i] != "(":
            raise TreeSyntaxError(f"expected '(' but found {text[i]!r}", i)
        i += 1
        kids = []
        while True:
            if i >= n:
                raise TreeSyntaxError("unclosed '('", i)
            if text[i] == ")":
                return RootedTree(kids), i + 1
            child, i = parse(i)
            kids.append(child)

    i = skip_ws(0)
    tree, i = parse(i)
    i = skip_ws(i)
    if i != n:
        raise TreeSyntaxError("trailing input after tree", i)
    return tree


def render_tree(t: RootedTree) -> str:
    """Canonical string form; inverse of :func:`parse_tree` on canonical input."""
    return t.string


class Forest:
    """Canonical multiset of rooted trees, sorted like tree children.

    The empty forest is allowed; it is the unit monomial in the Hopf-algebra
    modules.
    """

    __slots__ = ("components", "size", "_hash")

    def __init__(self, components: Iterable[RootedTree] = ()) -> None:
        comps = tuple(sorted(components, key=_key))
        self.components = comps
        self.size = sum(t.size for t in comps)
        self._hash = hash(tuple(t.string for t in comps))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Forest) and self.components == other.components

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Forest") -> bool:
        return self.sort_key() < other.sort_key()

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[RootedTree]:
        return iter(self.components)

    def __repr__(self) -> str:
        return "Forest(%r)" % (self.render(),)

    def sort_key(self) -> tuple:
        return (self.size, len(self.components), tuple(t.string for t in self.components))

    def render(self) -> str:
        """Whitespace-separated canonical tree strings (empty string if empty)."""
        return " ".join(t.string for t in self.components)

    def multiplicities(self) -> dict[RootedTree, int]:
        return dict(Counter(self.components))

    def drop_units(self) -> "Forest":
        """The forest with single-vertex components removed."""
        return Forest(t for t in self.components if t.size > 1)


def parse_forest(text: str) -> Forest:
    """Parse whitespace-separated tree literals into a canonical forest."""
    return Forest(parse_tree(tok) for tok in text.split())


@lru_cache(maxsize=None)
def enumerate_trees(n: int) -> tuple[RootedTree, ...]:
    """All unlabeled rooted trees with exactly n vertices, canonically sorted."""
    if n < 1:
        raise ValueError("tree size must be >= 1")
    if n == 1:
        return (LEAF,)
    return tuple(sorted((RootedTree(f) for f in _forest_tuples(n - 1, None)),
                        key=_key))


@lru_cache(maxsize=None)
def _forest_tuples(total: int,
                   bound: tuple[int, str] | None) -> tuple[tuple[RootedTree, ...], ...]:
    # Multisets of trees with the given total size, listed with components in
    # non-increasing (size, string) order; every component key <= bound.
    if total == 0:
        return ((),)
    out = []
    top = total if bound is None else min(total, bound[0])
    for s in range(top, 0, -1):
        for t in reversed(enumerate_trees(s)):
            k = _key(t)
            if bound is not None and k > bound:
                continue
            for rest in _forest_tuples(total - s, k):
                out.append((t,) + rest)
    return tuple(out)


def enumerate_forests(total: int) -> tuple[Forest, ...]:
    """All forests (multisets of trees) with the given total vertex count."""
    if total < 0:
        raise ValueError("forest size must be >= 0")
    return tuple(Forest(f) for f in _forest_tuples(total, None))


def enumerate_forests_with_components(total: int, k: int) -> tuple[Forest, ...]:
    """All forests with exactly k components and the given total size."""
    return tuple(f for f in enumerate_forests(total) if len(f) == k)


@lru_cache(maxsize=None)
def aut_order(t: RootedTree) -> int:
    """Order of the automorphism group of t.

    Satisfies aut(t) = prod over distinct child classes c of
    mult(c)! * aut(c)^mult(c).
    """
    out = 1
    for child, mult in Counter(t.children).items():
        out *= factorial(mult) * aut_order(child) ** mult
    return out


def aut0_order(f: Forest) -> int:
    """Order of the component-permutation group: prod over classes of mult!."""
    out = 1
    for mult in Counter(f.components).values():
        out *= factorial(mult)
    return out


def forest_aut_order(f: Forest) -> int:
    """Full automorphism order of a forest: aut0 times the component auts."""
    out = aut0_order(f)
    for t in f.components:
        out *= aut_order(t)
    return out


class LabeledTree:
    """Rooted tree with distinct hashable vertex labels.

    Stored as the root label plus the parent map of every non-root vertex;
    the constructor checks that the parent map reaches the root acyclically
    (connected and simply connected).
    """

    __slots__ = ("root", "parents", "labels", "_children", "_hash")

    def __init__(self, root: Label, parents: dict[Label, Label]) -> None:
        if root in parents:
            raise ValueError("root must not have a parent")
        self.root = root
        self.parents = dict(parents)
        labels = set(parents)
        for p in parents.values():
            labels.add(p)
        labels.add(root)
        if len(labels) != len(parents) + 1:
            raise ValueError("parent map mentions a label with no parent entry")
        reached: set[Label] = {root}
        for v in parents:
            path = []
            w = v
            while w not in reached:
                path.append(w)
                if w not in self.parents:
                    raise ValueError(f"vertex {w!r} is disconnected from the root")
                w = self.parents[w]
                if len(path) > len(labels):
                    raise ValueError("cycle in parent map")
            reached.update(path)
        self.labels = frozenset(labels)
        children: dict[Label, list[Label]] = {v: [] for v in labels}
        for child, parent in self.parents.items():
            children[parent].append(child)
        self._children = children
        self._hash = hash((self.root, frozenset(self.parents.items())))

    @property
    def size(self) -> int:
        return len(self.labels)

    def children(self, v: Label) -> list[Label]:
        return self._children[v]

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, LabeledTree)
                and self.root == other.root
                and self.parents == other.parents)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return "LabeledTree(%r, %r)" % (self.root, self.parents)

    def shape(self) -> RootedTree:
        """The underlying unlabeled canonical tree."""

        def build(v: Label) -> RootedTree:
            return RootedTree(build(c) for c in self._children[v])

        return build(self.root)

    def relabel(self, mapping: dict[Label, Label]) -> "LabeledTree":
        """Apply a label bijection (must cover every vertex)."""
        return LabeledTree(mapping[self.root],
                           {mapping[c]: mapping[p] for c, p in self.parents.items()})

    def subtree_labels(self, v: Label) -> frozenset:
        """v together with all of its descendants."""
        out = {v}
        stack = [v]
        while stack:
            w = stack.pop()
            for c in self._children[w]:
                out.add(c)
                stack.append(c)
        return frozenset(out)

    def restrict(self, keep: frozenset) -> "LabeledTree":
        """Restriction to an ancestor-closed vertex set containing the root."""
        if self.root not in keep:
            raise ValueError("restriction must contain the root")
        parents = {}
        for v in keep:
            if v == self.root:
                continue
            p = self.parents.get(v)
            if p is None or p not in keep:
                raise ValueError("restriction set is not ancestor-closed")
            parents[v] = p
        return LabeledTree(self.root, parents)

    def render(self) -> str:
        """``label:(child child ...)`` with children sorted deterministically."""

        def fmt(v: Label) -> str:
            kids = sorted(self._children[v], key=lambda c: (str(c)))
            return "%s:(%s)" % (v, " ".join(fmt(c) for c in kids))

        return fmt(self.root)


class LabeledForest:
    """Set of labeled trees with pairwise-disjoint label sets."""

    __slots__ = ("components", "labels", "_hash")

    def __init__(self, components: Iterable[LabeledTree]) -> None:
        comps = frozenset(components)
        total = 0
        labels: set[Label] = set()
        for c in comps:
            total += c.size
            labels.update(c.labels)
        if len(labels) != total:
            raise ValueError("components must have disjoint label sets")
        self.components = comps
        self.labels = frozenset(labels)
        self._hash = hash(comps)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LabeledForest) and self.components == other.components

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[LabeledTree]:
        return iter(self.components)

    def partition(self) -> frozenset:
        """The induced partition of the ground set: one block per component."""
        return frozenset(c.labels for c in self.components)

    def shape_forest(self) -> Forest:
        """The multiset of component shapes."""
        return Forest(c.shape() for c in self.components)


def nap_compose(t: LabeledTree, subs: dict[Label, LabeledTree]) -> LabeledTree:
    """NAP composition: substitute subs[i] at each vertex i of t.

    The result is the disjoint union of the substituted trees with one extra
    edge root(subs[i]) -> root(subs[i']) for every edge i -> i' of t; its
    root is the root of the tree substituted at the root of t.
    """
    missing = [v for v in t.labels if v not in subs]
    if missing:
        raise ValueError(f"missing substitution for vertices {missing!r}")
    total = sum(subs[v].size for v in t.labels)
    union: set[Label] = set()
    for v in t.labels:
        union.update(subs[v].labels)
    if len(union) != total:
        raise ValueError("label collision between substituted trees")
    parents: dict[Label, Label] = {}
    for v in t.labels:
        parents.update(subs[v].parents)
    for child, parent in t.parents.items():
        parents[subs[child].root] = subs[parent].root
    return LabeledTree(subs[t.root].root, parents)


def singleton(label: Label) -> LabeledTree:
    """The one-vertex labeled tree."""
    return LabeledTree(label, {})


def canonical_representative(t: RootedTree) -> LabeledTree:
    """Labeled copy of t with integer labels 1..n assigned in BFS order."""
    parents: dict[Label, Label] = {}
    queue = [(t, 1)]
    next_label = 2
    head = 0
    while head < len(queue):
        node, lbl = queue[head]
        head += 1
        for child in node.children:
            parents[next_label] = lbl
            queue.append((child, next_label))
            next_label += 1
    return LabeledTree(1, parents)


def dfs_representative(t: RootedTree) -> LabeledTree:
    """Labeled copy of t with labels 1..n assigned in preorder DFS.

    Children are visited in reversed canonical order, so the labeling
    genuinely differs from :func:`canonical_representative` on most trees.
    """
    parents: dict[Label, Label] = {}
    counter = [1]

    def visit(node: RootedTree, lbl: int) -> None:
        for child in reversed(node.children):
            counter[0] += 1
            c_lbl = counter[0]
            parents[c_lbl] = lbl
            visit(child, c_lbl)

    visit(t, 1)
    return LabeledTree(1, parents)


_COMPOSE_CACHE: dict[tuple, RootedTree] = {}


def compose_shapes(outer: RootedTree, inner: Sequence[RootedTree],
                   representative: Callable[[RootedTree], LabeledTree] | None = None,
                   ) -> RootedTree:
    """Class of the NAP composition of outer with the given inner trees.

    ``inner[i]`` is substituted at the vertex labeled i+1 of the chosen
    labeled representative of ``outer``.  With the default (BFS)
    representative, results are memoized.
    """
    inner = tuple(inner)
    if len(inner) != outer.size:
        raise ValueError("need one inner tree per vertex of the outer tree")
    cached = representative is None
    if cached:
        key = (outer, inner)
        hit = _COMPOSE_CACHE.get(key)
        if hit is not None:
            return hit
        rep = canonical_representative(outer)
    else:
        rep = representative(outer)
    subs = {}
    for i, t in enumerate(inner):
        sub_rep = canonical_representative(t)
        subs[i + 1] = sub_rep.relabel({v: (i, v) for v in sub_rep.labels})
    shape = nap_compose(rep, subs).shape()
    if cached:
        _COMPOSE_CACHE[key] = shape
    return shape


_SLOT_CACHE: dict[tuple[RootedTree, RootedTree], tuple[tuple[RootedTree, int], ...]] = {}


def slot_compositions(s: RootedTree, t: RootedTree) -> tuple[tuple[RootedTree, int], ...]:
    """The sum s ∘ t over single slots: substitute t at one vertex of s,
    units elsewhere, and collect resulting classes with multiplicities."""
    hit = _SLOT_CACHE.get((s, t))
    if hit is not None:
        return hit
    counts: Counter[RootedTree] = Counter()
    for v in range(1, s.size + 1):
        inner = tuple(t if i + 1 == v else LEAF for i in range(s.size))
        counts[compose_shapes(s, inner)] += 1
    out = tuple(sorted(counts.items(), key=lambda kv: _key(kv[0])))
    _SLOT_CACHE[(s, t)] = out
    return out


def _prufer_edges(seq: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    # Decode a Prufer sequence over {0..n-1} into the n-1 edges of a tree.
    degree = [1] * n
    for s in seq:
        degree[s] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for s in seq:
        v = heapq.heappop(leaves)
        edges.append((v, s))
        degree[s] -= 1
        if degree[s] == 1:
            heapq.heappush(leaves, s)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def labeled_trees(labels: Sequence[Label]) -> list[LabeledTree]:
    """All rooted labeled trees on the given labels (n^(n-1) of them).

    Enumerated by decoding every Prufer sequence and rooting the resulting
    free tree at every vertex; independent of the canonical-tree machinery.
    """
    labels = list(labels)
    n = len(labels)
    if n == 0:
        raise ValueError("need at least one label")
    if n == 1:
        return [LabeledTree(labels[0], {})]
    out = []
    for seq in cartesian(range(n), repeat=n - 2):
        edges = _prufer_edges(seq, n)
        adjacency: dict[int, list[int]] = {v: [] for v in range(n)}
        for a, b in edges:
            adjacency[a].append(b)
            adjacency[b].append(a)
        for root in range(n):
            parents: dict[Label, Label] = {}
            stack = [root]
            seen = {root}
            while stack:
                w = stack.pop()
                for nb in adjacency[w]:
                    if nb not in seen:
                        seen.add(nb)
                        parents[labels[nb]] = labels[w]
                        stack.append(nb)
            out.append(LabeledTree(labels[root], parents))
    return out


def set_partitions(items: Sequence[Label]) -> list[list[list[Label]]]:
    """All partitions of the given sequence into nonempty unordered blocks."""
    items = list(items)
    if not items:
        return [[]]
    first, rest = items[0], items[1:]
    out = []
    for partial in set_partitions(rest):
        for i in range(len(partial)):
            out.append(partial[:i] + [[first] + partial[i]] + partial[i + 1:])
        out.append([[first]] + partial)
    return out


def labeled_forests(labels: Sequence[Label]) -> list[LabeledForest]:
    """All labeled forests on the given ground set ((n+1)^(n-1) of them)."""
    out = []
    for blocks in set_partitions(labels):
        pools = [labeled_trees(block) for block in blocks]
        for combo in cartesian(*pools):
            out.append(LabeledForest(combo))
    return out


def labeled_isomorphisms(a: LabeledTree, b: LabeledTree,
                         targets: Sequence[Label] | None = None) -> list[dict]:
    """All bijections from a's labels onto b's (or ``targets``) carrying a to b.

    Exhaustive over permutations; intended for small ground sets only.
    """
    source = list(a.labels)
    image = list(b.labels) if targets is None else list(targets)
    if len(source) != len(image):
        return []
    out = []
    for perm in permutations(image):
        mapping = dict(zip(source, perm))
        if a.relabel(mapping) == b:
            out.append(mapping)
    return out


def find_shape_isomorphism(a: LabeledTree, b: LabeledTree) -> dict | None:
    """One label bijection carrying a onto b, or None if shapes differ.

    Built recursively by matching children with equal shapes; linear-ish,
    unlike the exhaustive :func:`labeled_isomorphisms`.
    """
    if a.shape() != b.shape():
        return None

    def shape_of(tree: LabeledTree, v: Label) -> RootedTree:
        return RootedTree(shape_of(tree, c) for c in tree.children(v))

    mapping: dict = {}

    def match(va: Label, vb: Label) -> None:
        mapping[va] = vb
        by_shape: dict[RootedTree, list[Label]] = {}
        for cb in b.children(vb):
            by_shape.setdefault(shape_of(b, cb), []).append(cb)
        for ca in a.children(va):
            match(ca, by_shape[shape_of(a, ca)].pop())

    match(a.root, b.root)
    return mapping


@dataclass(frozen=True)
class OperadInstance:
    """A set-operad given by enumerators and a labeled composition rule.

    ``classes(n)`` lists the coinvariant classes of size n;
    ``labeled_structures(labels)`` lists the structures on a label tuple;
    ``compose(x, subs)`` substitutes a structure for every vertex/label of x;
    ``class_of`` projects a labeled structure to its class; ``label_set``
    returns the underlying ground set of a structure.
    """

    name: str
    classes: Callable[[int], tuple]
    class_size: Callable[[object], int]
    labeled_structures: Callable[[Sequence[Label]], list]
    compose: Callable[[object, dict], object]
    class_of: Callable[[object], object]
    label_set: Callable[[object], frozenset]


def nap_instance() -> OperadInstance:
    """The NAP operad: rooted trees with root-joining composition."""
    return OperadInstance(
        name="nap",
        classes=enumerate_trees,
        class_size=lambda t: t.size,
        labeled_structures=labeled_trees,
        compose=nap_compose,
        class_of=lambda x: x.shape(),
        label_set=lambda x: x.labels,
    )


def comm_instance() -> OperadInstance:
    """The Comm operad: one structure per finite set, composition by union."""

    def compose(x: frozenset, subs: dict) -> frozenset:
        out: set = set()
        for i in x:
            out.update(subs[i])
        return frozenset(out)

    return OperadInstance(
        name="comm",
        classes=lambda n: (n,),
        class_size=lambda c: c,
        labeled_structures=lambda labels: [frozenset(labels)],
        compose=compose,
        class_of=lambda x: len(x),
        label_set=lambda x: x,
    )
