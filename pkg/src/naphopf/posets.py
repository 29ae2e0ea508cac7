"""Operad posets: tree-ideal interval lattices, Mobius functions, and the
brute-force poset of structured partitions that validates them.

An interval [0,t] is stored on the lower ideals of a labeled copy of t:
the full vertex set is the bottom element, the root alone is the top, and
x <= y holds exactly when ideal(x) contains ideal(y).
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import product as cartesian
from typing import Iterable, Sequence

from .trees import (
    Forest,
    Label,
    LabeledTree,
    OperadInstance,
    RootedTree,
    canonical_representative,
    find_shape_isomorphism,
    set_partitions,
)


class FinitePoset:
    """Finite poset on indices 0..n-1 with an explicit boolean relation."""

    def __init__(self, leq: Sequence[Sequence[bool]], check: bool = True) -> None:
        self.n = len(leq)
        self.leq = tuple(tuple(bool(v) for v in row) for row in leq)
        self._covers: tuple[tuple[int, int], ...] | None = None
        self._meet: list[list[int | None]] | None = None
        self._join: list[list[int | None]] | None = None
        if check:
            self.validate()

    def validate(self) -> None:
        leq = self.leq
        n = self.n
        for i in range(n):
            if not leq[i][i]:
                raise ValueError(f"relation is not reflexive at {i}")
            for j in range(n):
                if i != j and leq[i][j] and leq[j][i]:
                    raise ValueError(f"relation is not antisymmetric at ({i},{j})")
                if leq[i][j]:
                    for k in range(n):
                        if leq[j][k] and not leq[i][k]:
                            raise ValueError(f"relation is not transitive at ({i},{j},{k})")

    @classmethod
    def from_covers(cls, n: int, covers: Iterable[tuple[int, int]]) -> "FinitePoset":
        """Build the reflexive-transitive closure of the given cover pairs."""
        leq = [[i == j for j in range(n)] for i in range(n)]
        for a, b in covers:
            leq[a][b] = True
        for k in range(n):
            for i in range(n):
                if leq[i][k]:
                    row_k = leq[k]
                    row_i = leq[i]
                    for j in range(n):
                        if row_k[j]:
                            row_i[j] = True
        return cls(leq)

    def covers(self) -> tuple[tuple[int, int], ...]:
        """All pairs (i, j) with j covering i."""
        if self._covers is None:
            out = []
            leq = self.leq
            for i in range(self.n):
                for j in range(self.n):
                    if i == j or not leq[i][j]:
                        continue
                    if any(k != i and k != j and leq[i][k] and leq[k][j]
                           for k in range(self.n)):
                        continue
                    out.append((i, j))
            self._covers = tuple(out)
        return self._covers

    def down_set(self, i: int) -> list[int]:
        return [j for j in range(self.n) if self.leq[j][i]]

    def up_set(self, i: int) -> list[int]:
        return [j for j in range(self.n) if self.leq[i][j]]

    def minimal_elements(self) -> list[int]:
        return [i for i in range(self.n)
                if all(not self.leq[j][i] for j in range(self.n) if j != i)]

    def maximal_elements(self) -> list[int]:
        return [i for i in range(self.n)
                if all(not self.leq[i][j] for j in range(self.n) if j != i)]

    def bottom(self) -> int | None:
        mins = self.minimal_elements()
        return mins[0] if len(mins) == 1 else None

    def top(self) -> int | None:
        maxs = self.maximal_elements()
        return maxs[0] if len(maxs) == 1 else None

    def _bound_tables(self) -> tuple[list[list[int | None]], list[list[int | None]]]:
        if self._meet is None:
            n = self.n
            leq = self.leq
            meet: list[list[int | None]] = [[None] * n for _ in range(n)]
            join: list[list[int | None]] = [[None] * n for _ in range(n)]
            for i in range(n):
                for j in range(n):
                    lower = [k for k in range(n) if leq[k][i] and leq[k][j]]
                    glb = [k for k in lower if all(leq[m][k] for m in lower)]
                    meet[i][j] = glb[0] if len(glb) == 1 else None
                    upper = [k for k in range(n) if leq[i][k] and leq[j][k]]
                    lub = [k for k in upper if all(leq[k][m] for m in upper)]
                    join[i][j] = lub[0] if len(lub) == 1 else None
            self._meet = meet
            self._join = join
        return self._meet, self._join

    def meet(self, i: int, j: int) -> int | None:
        return self._bound_tables()[0][i][j]

    def join(self, i: int, j: int) -> int | None:
        return self._bound_tables()[1][i][j]

    def is_lattice(self) -> bool:
        meet, join = self._bound_tables()
        return all(meet[i][j] is not None and join[i][j] is not None
                   for i in range(self.n) for j in range(self.n))

    def mobius_from_bottom(self) -> list[int]:
        """The vector mu(bottom, x); requires a unique minimal element."""
        bottom = self.bottom()
        if bottom is None:
            raise ValueError("poset has no unique minimal element")
        order = sorted(range(self.n), key=lambda i: len(self.down_set(i)))
        mu = [0] * self.n
        for i in order:
            if i == bottom:
                mu[i] = 1
            else:
                mu[i] = -sum(mu[j] for j in self.down_set(i) if j != i)
        return mu


class IntervalPoset:
    """The interval [0,t] on the lower ideals of a labeled copy of t.

    ``elements[i]`` is a vertex set of ``representative`` (labels 1..n in BFS
    order) containing the root and closed under taking parents.  The stored
    orientation has the full vertex set at the bottom and {root} at the top;
    each element carries the forest of branches hanging under its ideal and
    the restriction of t to the ideal.
    """

    __slots__ = ("tree", "representative", "elements", "poset",
                 "bottom_index", "top_index", "forests", "thetas")

    def __init__(self, tree: RootedTree) -> None:
        rep = canonical_representative(tree)
        ideals = _ideals_of(rep)
        n = tree.size
        # bottom (rank 0) is the full vertex set; rank = vertices removed
        ideals.sort(key=lambda s: (n - len(s), tuple(sorted(s))))
        leq = [[s2 <= s1 for s2 in ideals] for s1 in ideals]
        self.tree = tree
        self.representative = rep
        self.elements = tuple(ideals)
        self.poset = FinitePoset(leq, check=False)
        self.bottom_index = 0
        self.top_index = len(ideals) - 1
        pairs = [_ideal_split(rep, s) for s in ideals]
        self.forests = tuple(p[0] for p in pairs)
        self.thetas = tuple(p[1] for p in pairs)

    def __len__(self) -> int:
        return len(self.elements)

    def covers(self) -> tuple[tuple[int, int], ...]:
        return self.poset.covers()

    def index_of(self, ideal: frozenset) -> int:
        return self.elements.index(ideal)


def _ideals_of(rep: LabeledTree) -> list[frozenset]:
    # Lower ideals containing the root; one ideal per choice of an ideal (or
    # nothing) in each root branch, recursively.
    def sub(v: Label) -> list[frozenset]:
        pools = []
        for c in rep.children(v):
            pools.append([frozenset()] + sub(c))
        out = []
        for combo in cartesian(*pools):
            s = {v}
            for part in combo:
                s.update(part)
            out.append(frozenset(s))
        return out

    return sub(rep.root)


def _ideal_split(rep: LabeledTree, ideal: frozenset) -> tuple[Forest, RootedTree]:
    # Branches hanging under the ideal, and the restriction of the tree to it.
    def full_shape(v: Label) -> RootedTree:
        return RootedTree(full_shape(c) for c in rep.children(v))

    def branch_shape(v: Label) -> RootedTree:
        return RootedTree(full_shape(c) for c in rep.children(v) if c not in ideal)

    forest = Forest(branch_shape(v) for v in ideal)
    theta = rep.restrict(ideal).shape()
    return forest, theta


@lru_cache(maxsize=None)
def interval_of(t: RootedTree) -> IntervalPoset:
    """The interval poset of t, with per-element forest and theta data."""
    return IntervalPoset(t)


def _validate_ideal(t: RootedTree, ideal: frozenset) -> LabeledTree:
    rep = canonical_representative(t)
    if not ideal or not ideal <= rep.labels or rep.root not in ideal:
        raise ValueError("not an ideal of the canonical representative")
    for v in ideal:
        if v != rep.root and rep.parents[v] not in ideal:
            raise ValueError("ideal is not closed under taking parents")
    return rep


def forest_below(t: RootedTree, ideal: "frozenset | Iterable") -> Forest:
    """Multiset of branch shapes hanging under the vertices of the ideal."""
    ideal = frozenset(ideal)
    rep = _validate_ideal(t, ideal)
    return _ideal_split(rep, ideal)[0]


def theta_of(t: RootedTree, ideal: "frozenset | Iterable") -> RootedTree:
    """Shape of the restriction of t to the ideal."""
    ideal = frozenset(ideal)
    rep = _validate_ideal(t, ideal)
    return _ideal_split(rep, ideal)[1]


@lru_cache(maxsize=None)
def mobius(t: RootedTree) -> int:
    """mu(0,1) of the interval of t, by the defining recursion."""
    ip = interval_of(t)
    return ip.poset.mobius_from_bottom()[ip.top_index]


def mobius_closed_form(t: RootedTree) -> int:
    """(-1)^n for the corolla with n+1 vertices, 0 for every other tree."""
    if t.is_corolla():
        return (-1) ** (t.size - 1)
    return 0


def _as_poset(p: "FinitePoset | IntervalPoset") -> FinitePoset:
    return p.poset if isinstance(p, IntervalPoset) else p


def check_total_semimodularity(p: "FinitePoset | IntervalPoset") -> bool:
    """True iff any two elements covering a common element share a cover."""
    poset = _as_poset(p)
    above: dict[int, list[int]] = {}
    for a, b in poset.covers():
        above.setdefault(a, []).append(b)
    for ups in above.values():
        for i, x in enumerate(ups):
            for y in ups[i + 1:]:
                if not any(w in above.get(y, ()) for w in above.get(x, ())):
                    return False
    return True


def check_distributive_lattice(p: "FinitePoset | IntervalPoset") -> bool:
    """True iff p is a lattice satisfying x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z).

    For an interval poset the meet and join are additionally required to
    coincide with ideal union and ideal intersection.
    """
    poset = _as_poset(p)
    if not poset.is_lattice():
        return False
    if isinstance(p, IntervalPoset):
        index = {s: i for i, s in enumerate(p.elements)}
        for i, si in enumerate(p.elements):
            for j, sj in enumerate(p.elements):
                if poset.meet(i, j) != index[si | sj]:
                    return False
                if poset.join(i, j) != index[si & sj]:
                    return False
    n = poset.n
    meet = poset.meet
    join = poset.join
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if meet(x, join(y, z)) != join(meet(x, y), meet(x, z)):
                    return False
    return True


def pentagon_poset() -> FinitePoset:
    """N5: two atoms cover the bottom but share no upper cover."""
    # 0 < 1 < 2 < 4 and 0 < 3 < 4
    return FinitePoset.from_covers(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])


def diamond_poset() -> FinitePoset:
    """M3: three incomparable atoms between bottom and top (not distributive)."""
    return FinitePoset.from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])


def _label_key(label: Label):
    if isinstance(label, frozenset):
        return ("set", tuple(sorted(_label_key(x) for x in label)))
    return ("atom", str(label))


def _part_key(part: frozenset):
    return tuple(sorted(_label_key(x) for x in part))


_PI_ELEMENTS_CACHE: dict[tuple, list[frozenset]] = {}


def pi_elements(instance: OperadInstance, labels: Sequence[Label]) -> list[frozenset]:
    """All structured partitions of the ground set: a set partition together
    with one labeled structure of the operad on each block."""
    labels = tuple(labels)
    key = (instance.name, labels)
    hit = _PI_ELEMENTS_CACHE.get(key)
    if hit is not None:
        return hit
    out = []
    for blocks in set_partitions(list(labels)):
        pools = [instance.labeled_structures(tuple(block)) for block in blocks]
        for combo in cartesian(*pools):
            out.append(frozenset(combo))
    _PI_ELEMENTS_CACHE[key] = out
    return out


def element_parts(instance: OperadInstance, element: frozenset) -> tuple[frozenset, ...]:
    """The partition induced by an element, as a deterministically sorted tuple."""
    return tuple(sorted((instance.label_set(c) for c in element), key=_part_key))


def compose_pi(instance: OperadInstance, theta: frozenset, x: frozenset) -> frozenset:
    """Compose a structured partition of the parts of x into x itself."""
    by_part = {instance.label_set(c): c for c in x}
    out = []
    for comp in theta:
        subs = {part: by_part[part] for part in instance.label_set(comp)}
        out.append(instance.compose(comp, subs))
    return frozenset(out)


class BruteForcePoset:
    """The poset of structured partitions of a ground set, by exhaustive search.

    The order is computed from the definition: x <= y iff some structured
    partition theta of the parts of x composes x into y.  The witnessing
    theta of every comparable pair is retained, and its uniqueness (the
    `basic' property of the operad) is asserted during construction.
    """

    def __init__(self, instance: OperadInstance, labels: Sequence[Label]) -> None:
        self.instance = instance
        self.labels = tuple(labels)
        self.elements = tuple(pi_elements(instance, self.labels))
        self.index = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        leq = [[i == j for j in range(n)] for i in range(n)]
        theta_witness: dict[tuple[int, int], frozenset] = {}
        self.parts = tuple(element_parts(instance, e) for e in self.elements)
        for i in range(n):
            x = self.elements[i]
            for theta in pi_elements(instance, self.parts[i]):
                y = compose_pi(instance, theta, x)
                j = self.index[y]
                prior = theta_witness.get((i, j))
                if prior is not None and prior != theta:
                    raise ValueError("operad is not basic: theta is not unique")
                theta_witness[(i, j)] = theta
                leq[i][j] = True
        self.poset = FinitePoset(leq)
        self.theta = theta_witness

    def __len__(self) -> int:
        return len(self.elements)

    def bottom_index(self) -> int | None:
        return self.poset.bottom()


_PI_CACHE: dict[tuple, BruteForcePoset] = {}

BRUTE_FORCE_LIMIT = 4


def brute_force_pi(instance: OperadInstance, ground: "int | Sequence[Label]",
                   limit: int = BRUTE_FORCE_LIMIT) -> BruteForcePoset:
    """Poset of structured partitions on {1..n} (or an explicit label tuple).

    The search is exponential; ground sets larger than ``limit`` are refused
    unless the caller raises the limit explicitly.
    """
    if isinstance(ground, int):
        labels: tuple[Label, ...] = tuple(str(i) for i in range(1, ground + 1))
    else:
        labels = tuple(ground)
    if len(labels) > limit:
        raise ValueError(f"ground set of size {len(labels)} exceeds limit {limit}")
    key = (instance.name, labels)
    hit = _PI_CACHE.get(key)
    if hit is None:
        hit = BruteForcePoset(instance, labels)
        _PI_CACHE[key] = hit
    return hit


def f_structure_constants(alpha: RootedTree) -> dict[tuple[Forest, RootedTree], int]:
    """Incidence-coproduct structure constants of a tree.

    Each interval element contributes the pair (branch forest with
    single-vertex components dropped, restriction class); the value counts
    the ideals realizing the pair, so the values sum to the interval size.
    """
    ip = interval_of(alpha)
    out: Counter[tuple[Forest, RootedTree]] = Counter()
    for forest, theta in zip(ip.forests, ip.thetas):
        out[(forest.drop_units(), theta)] += 1
    return dict(out)


def _restrict_element(instance: OperadInstance, element: frozenset,
                      block: frozenset) -> frozenset:
    return frozenset(c for c in element if instance.label_set(c) <= block)


def check_upset_isomorphism(bp: BruteForcePoset, i: int) -> bool:
    """The up-set of element i must be order-isomorphic to the poset of
    structured partitions of its parts, via the witnessing thetas."""
    target = brute_force_pi(bp.instance, bp.parts[i], limit=len(bp.parts[i]))
    upset = bp.poset.up_set(i)
    if len(upset) != len(target):
        return False
    image = {}
    for j in upset:
        theta = bp.theta.get((i, j))
        if theta is None or theta not in target.index:
            return False
        image[j] = target.index[theta]
    if sorted(image.values()) != list(range(len(target))):
        return False
    for a in upset:
        for b in upset:
            if bp.poset.leq[a][b] != target.poset.leq[image[a]][image[b]]:
                return False
    return True


def check_interval_factorization(bp: BruteForcePoset, i: int, j: int) -> bool:
    """[x,y] must factor as the product over the parts u of y of the
    intervals [0, theta(x_u, y_u)], via componentwise thetas."""
    instance = bp.instance
    if not bp.poset.leq[i][j]:
        raise ValueError("need x <= y")
    x = bp.elements[i]
    y = bp.elements[j]
    interval = [k for k in range(len(bp))
                if bp.poset.leq[i][k] and bp.poset.leq[k][j]]

    factors = []
    for u in element_parts(instance, y):
        x_u = _restrict_element(instance, x, u)
        y_u = _restrict_element(instance, y, u)
        ground_u = tuple(sorted(u, key=_label_key))
        bp_u = brute_force_pi(instance, ground_u, limit=len(ground_u))
        xi = bp_u.index[x_u]
        parts_xu = element_parts(instance, x_u)
        sub = brute_force_pi(instance, parts_xu, limit=len(parts_xu))
        theta_top = bp_u.theta.get((xi, bp_u.index[y_u]))
        if theta_top is None:
            return False
        factors.append((u, bp_u, xi, sub, sub.index[theta_top]))

    coords = {}
    for k in interval:
        z = bp.elements[k]
        cs = []
        for u, bp_u, xi, sub, top_idx in factors:
            z_u = _restrict_element(instance, z, u)
            theta = bp_u.theta.get((xi, bp_u.index[z_u]))
            if theta is None:
                return False
            ci = sub.index[theta]
            if not sub.poset.leq[ci][top_idx]:
                return False
            cs.append(ci)
        coords[k] = tuple(cs)

    down_sets = [[d for d in range(len(sub)) if sub.poset.leq[d][top_idx]]
                 for (_, __, ___, sub, top_idx) in factors]
    expected = set(cartesian(*down_sets))
    if len(coords) != len(expected) or set(coords.values()) != expected:
        return False
    subs = [f[3] for f in factors]
    for a in interval:
        for b in interval:
            componentwise = all(s.poset.leq[ca][cb]
                                for s, ca, cb in zip(subs, coords[a], coords[b]))
            if bp.poset.leq[a][b] != componentwise:
                return False
    return True


def check_maximal_interval_model(bp: BruteForcePoset, i: int) -> bool:
    """A maximal element's down-set must realize the ideal-lattice model.

    Checks that the sets of component roots of the elements below a labeled
    tree x are exactly the ideals of x ordered by reverse inclusion, that
    branch forests match, and that a shape isomorphism transports everything
    onto the interval of the unlabeled class.
    """
    element = bp.elements[i]
    if len(element) != 1:
        raise ValueError("element is not maximal (more than one component)")
    tree = next(iter(element))
    if not isinstance(tree, LabeledTree):
        raise ValueError("model check applies to the NAP instance")
    ip = interval_of(tree.shape())
    down = bp.poset.down_set(i)
    if len(down) != len(ip):
        return False

    roots = {j: frozenset(c.root for c in bp.elements[j]) for j in down}
    if len(set(roots.values())) != len(down):
        return False
    for a in down:
        for b in down:
            if bp.poset.leq[a][b] != (roots[a] >= roots[b]):
                return False

    phi = find_shape_isomorphism(tree, ip.representative)
    if phi is None:
        return False
    ideal_index = {s: k for k, s in enumerate(ip.elements)}
    for j in down:
        mapped = frozenset(phi[v] for v in roots[j])
        k = ideal_index.get(mapped)
        if k is None:
            return False
        if Forest(c.shape() for c in bp.elements[j]) != ip.forests[k]:
            return False
    return True


def interval_dot(ip: IntervalPoset) -> str:
    """Hasse diagram of an interval in DOT format, one node per ideal,
    labeled by the canonical string of the ideal restriction."""
    lines = ["digraph interval {", "  rankdir=BT;"]
    for idx in range(len(ip.elements)):
        lines.append('  n%d [label="%s"];' % (idx, ip.thetas[idx].string))
    for a, b in ip.covers():
        lines.append("  n%d -> n%d;" % (a, b))
    lines.append("}")
    return "\n".join(lines)
