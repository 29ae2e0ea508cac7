"""The group of tree-indexed series under operadic substitution.

A truncated series assigns a rational coefficient to every tree of size at
most N; group elements have coefficient 1 on the single vertex.  The product
substitutes the right series into every vertex of every labeled
representative drawn from the left one.  The classical Zeta, Mobius,
corolla and ladder series live here, together with the three projections
onto one-variable power series groups.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Iterable

from .hopf import HopfElement
from .trees import (
    LEAF,
    LabeledTree,
    RootedTree,
    aut_order,
    chain,
    compose_shapes,
    corolla,
    enumerate_trees,
    slot_compositions,
)


class TreeSeries:
    """Truncated formal series indexed by canonical rooted trees."""

    __slots__ = ("truncation", "coeffs")

    def __init__(self, truncation: int, coeffs: dict | None = None) -> None:
        if truncation < 1:
            raise ValueError("truncation must be >= 1")
        clean: dict[RootedTree, Fraction] = {}
        for t, c in (coeffs or {}).items():
            if t.size > truncation:
                continue
            c = Fraction(c)
            if c:
                clean[t] = c
        self.truncation = truncation
        self.coeffs = clean

    def coefficient(self, t: RootedTree) -> Fraction:
        return self.coeffs.get(t, Fraction(0))

    def is_group_element(self) -> bool:
        return self.coeffs.get(LEAF) == 1

    def support(self) -> list[RootedTree]:
        return sorted(self.coeffs, key=lambda t: (t.size, t.string))

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, TreeSeries)
                and self.truncation == other.truncation
                and self.coeffs == other.coeffs)

    def __add__(self, other: "TreeSeries") -> "TreeSeries":
        n = min(self.truncation, other.truncation)
        out = dict(self.coeffs)
        for t, c in other.coeffs.items():
            out[t] = out.get(t, Fraction(0)) + c
        return TreeSeries(n, out)

    def __sub__(self, other: "TreeSeries") -> "TreeSeries":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "TreeSeries":
        c = Fraction(scalar)
        return TreeSeries(self.truncation, {t: c * v for t, v in self.coeffs.items()})

    def truncate(self, n: int) -> "TreeSeries":
        if n > self.truncation:
            raise ValueError("cannot extend a truncated series")
        return TreeSeries(n, self.coeffs)

    def to_json(self) -> dict:
        return {
            "truncation": self.truncation,
            "coeffs": {t.string: str(c) for t, c in
                       sorted(self.coeffs.items(),
                              key=lambda kv: (kv[0].size, kv[0].string))},
        }

    @classmethod
    def from_json(cls, data: dict) -> "TreeSeries":
        from .trees import parse_tree

        return cls(int(data["truncation"]),
                   {parse_tree(s): Fraction(c) for s, c in data["coeffs"].items()})

    def __repr__(self) -> str:
        bits = [f"{c}*{t.string}" for t, c in
                sorted(self.coeffs.items(), key=lambda kv: (kv[0].size, kv[0].string))]
        return f"TreeSeries(N={self.truncation}, {' + '.join(bits) or '0'})"


def unit_series(n: int) -> TreeSeries:
    """The group unit: the single-vertex tree with coefficient 1."""
    return TreeSeries(n, {LEAF: Fraction(1)})


def _require_group(a: TreeSeries) -> None:
    if not a.is_group_element():
        raise ValueError("series is not a group element (unit coefficient must be 1)")


def _pool_by_size(b: TreeSeries) -> dict[int, list[tuple[RootedTree, Fraction]]]:
    pool: dict[int, list[tuple[RootedTree, Fraction]]] = {}
    for t, c in b.coeffs.items():
        pool.setdefault(t.size, []).append((t, c))
    return pool


def _assignments(slots: int, budget: int, pool: dict):
    # ordered `slots`-tuples drawn from the pool with total size <= budget,
    # yielded with the product of their coefficients
    if slots == 0:
        yield (), Fraction(1)
        return
    for size, entries in pool.items():
        if size > budget - (slots - 1):
            continue
        for t, c in entries:
            for rest, prod in _assignments(slots - 1, budget - size, pool):
                yield (t,) + rest, c * prod


def series_multiply(a: TreeSeries, b: TreeSeries,
                    representative: Callable[[RootedTree], LabeledTree] | None = None,
                    ) -> TreeSeries:
    """Substitution product of two group elements.

    The coefficient of a class c collects, over every tree t in the support
    of a and every assignment of support trees of b to the vertices of a
    labeled representative of t, the product of the coefficients whose
    composition lands in c.  The result is exact through the common
    truncation.
    """
    _require_group(a)
    _require_group(b)
    n = min(a.truncation, b.truncation)
    return _multiply_raw(a, b, n, representative)


def _multiply_raw(a: TreeSeries, b: TreeSeries, n: int,
                  representative=None) -> TreeSeries:
    pool = _pool_by_size(b)
    out: dict[RootedTree, Fraction] = {}
    for t, at in a.coeffs.items():
        if t.size > n:
            continue
        for assignment, prod in _assignments(t.size, n, pool):
            c = compose_shapes(t, assignment, representative)
            out[c] = out.get(c, Fraction(0)) + at * prod
    return TreeSeries(n, out)


def series_inverse(a: TreeSeries) -> TreeSeries:
    """Two-sided inverse of a group element, solved degree by degree.

    The unknown coefficient of each size-n class enters a left product h*a
    only through the all-singleton assignment, so each degree is solved by
    one subtraction; the right identity a*h = unit is then verified.
    """
    _require_group(a)
    n = a.truncation
    inv = {LEAF: Fraction(1)}
    for d in range(2, n + 1):
        h = TreeSeries(d, inv)
        residue = _multiply_raw(h, a, d)
        for t in enumerate_trees(d):
            c = residue.coefficient(t)
            if c:
                inv[t] = -c
    h = TreeSeries(n, inv)
    if _multiply_raw(h, a, n) != unit_series(n):
        raise ArithmeticError("left inverse failed to verify")
    if _multiply_raw(a, h, n) != unit_series(n):
        raise ArithmeticError("inverse is not two-sided to this truncation")
    return h


def series_graft(a: TreeSeries, b: TreeSeries) -> TreeSeries:
    """Bilinear extension of the graft s ◁ t (t becomes a new root branch of s)."""
    n = min(a.truncation, b.truncation)
    out: dict[RootedTree, Fraction] = {}
    for s, ca in a.coeffs.items():
        for t, cb in b.coeffs.items():
            if s.size + t.size > n:
                continue
            g = RootedTree(s.children + (t,))
            out[g] = out.get(g, Fraction(0)) + ca * cb
    return TreeSeries(n, out)


def lie_bracket(a: TreeSeries, b: TreeSeries) -> TreeSeries:
    """[a,b] = sum over supports of a_s b_t (s∘t - t∘s), where x∘y grafts y
    into one vertex of x at a time with units elsewhere."""
    n = min(a.truncation, b.truncation)
    out: dict[RootedTree, Fraction] = {}

    def add(s: RootedTree, t: RootedTree, coeff: Fraction) -> None:
        if s.size + t.size - 1 > n:
            return
        for shape, mult in slot_compositions(s, t):
            out[shape] = out.get(shape, Fraction(0)) + coeff * mult

    for s, ca in a.coeffs.items():
        for t, cb in b.coeffs.items():
            add(s, t, ca * cb)
            add(t, s, -ca * cb)
    return TreeSeries(n, out)


def zeta_series(n: int) -> TreeSeries:
    """Every tree weighted by the inverse of its automorphism-group order."""
    out = {}
    for size in range(1, n + 1):
        for t in enumerate_trees(size):
            out[t] = Fraction(1, aut_order(t))
    return TreeSeries(n, out)


def mobius_series(n: int) -> TreeSeries:
    """Mobius weights: (-1)^k/k! on the corolla with k leaves, zero elsewhere."""
    out = {}
    for k in range(0, n):
        if k + 1 > n:
            break
        out[corolla(k)] = Fraction((-1) ** k, factorial(k))
    return TreeSeries(n, out)


def corolla_series(n: int) -> TreeSeries:
    """The sum of all corollas with coefficient 1."""
    return TreeSeries(n, {corolla(k): Fraction(1) for k in range(0, n)})


def ladder_series(n: int) -> TreeSeries:
    """The alternating sum of linear trees."""
    return TreeSeries(n, {chain(k): Fraction((-1) ** (k - 1)) for k in range(1, n + 1)})


def spec_membership(a: TreeSeries) -> tuple[bool, RootedTree | None]:
    """Whether a group element comes from a character of the incidence algebra.

    The criterion is multiplicativity over root branches: for every tree,
    #Aut(t) a_t must equal the product over branches t_i of
    #Aut(B(r,t_i)) a_{B(r,t_i)}.  Returns the first failing tree as witness.
    """
    _require_group(a)
    for size in range(1, a.truncation + 1):
        for t in enumerate_trees(size):
            lhs = aut_order(t) * a.coefficient(t)
            rhs = Fraction(1)
            for branch in t.children:
                single = RootedTree((branch,))
                rhs *= aut_order(single) * a.coefficient(single)
            if lhs != rhs:
                return False, t
    return True, None


# ---------------------------------------------------------------------------
# one-variable power series (exact, truncated)


class PowerSeries:
    """Truncated power series with exact rational coefficients c_0..c_N."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable) -> None:
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("need at least the constant coefficient")

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, n: int) -> Fraction:
        return self.coeffs[n] if n < len(self.coeffs) else Fraction(0)

    def truncate(self, n: int) -> "PowerSeries":
        cs = list(self.coeffs[:n + 1])
        cs += [Fraction(0)] * (n + 1 - len(cs))
        return PowerSeries(cs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PowerSeries) and self.coeffs == other.coeffs

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    def __repr__(self) -> str:
        return "PowerSeries(%s)" % ", ".join(str(c) for c in self.coeffs)


def ps_one(n: int) -> PowerSeries:
    return PowerSeries([Fraction(1)] + [Fraction(0)] * n)


def ps_x(n: int) -> PowerSeries:
    cs = [Fraction(0)] * (n + 1)
    if n >= 1:
        cs[1] = Fraction(1)
    return PowerSeries(cs)


def ps_multiply(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = min(a.truncation, b.truncation)
    out = [Fraction(0)] * (n + 1)
    for i in range(n + 1):
        for j in range(n + 1 - i):
            out[i + j] += a.coefficient(i) * b.coefficient(j)
    return PowerSeries(out)


def ps_mul_inverse(a: PowerSeries) -> PowerSeries:
    """Multiplicative inverse; needs an invertible constant term."""
    if a.coefficient(0) == 0:
        raise ValueError("constant term must be nonzero")
    n = a.truncation
    out = [Fraction(0)] * (n + 1)
    out[0] = 1 / a.coefficient(0)
    for m in range(1, n + 1):
        acc = Fraction(0)
        for i in range(1, m + 1):
            acc += a.coefficient(i) * out[m - i]
        out[m] = -acc / a.coefficient(0)
    return PowerSeries(out)


def ps_compose(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """a(b(x)); b must have zero constant term."""
    if b.coefficient(0) != 0:
        raise ValueError("inner series must have zero constant term")
    n = min(a.truncation, b.truncation)
    out = [Fraction(0)] * (n + 1)
    out[0] = a.coefficient(0)
    power = ps_one(n)
    for m in range(1, n + 1):
        power = ps_multiply(power, b.truncate(n))
        am = a.coefficient(m)
        if am:
            for i in range(n + 1):
                out[i] += am * power.coefficient(i)
    return PowerSeries(out)


def ps_comp_inverse(a: PowerSeries) -> PowerSeries:
    """Compositional inverse of x + higher order (linear term must be invertible)."""
    if a.coefficient(0) != 0:
        raise ValueError("series must have zero constant term")
    if a.coefficient(1) == 0:
        raise ValueError("linear term must be invertible")
    n = a.truncation
    inv = [Fraction(0)] * (n + 1)
    if n >= 1:
        inv[1] = 1 / a.coefficient(1)
    for m in range(2, n + 1):
        g = PowerSeries(inv[:m] + [Fraction(0)] * (n + 1 - m))
        residue = ps_compose(g, a).coefficient(m)
        inv[m] = -residue / (a.coefficient(1) ** m)
    g = PowerSeries(inv)
    if ps_compose(g, a) != ps_x(n) or ps_compose(a, g) != ps_x(n):
        raise ArithmeticError("compositional inverse failed to verify")
    return g


def ps_exp_neg_x_times_x(n: int) -> PowerSeries:
    """The truncation of x exp(-x)."""
    cs = [Fraction(0)] * (n + 1)
    for m in range(1, n + 1):
        cs[m] = Fraction((-1) ** (m - 1), factorial(m - 1))
    return PowerSeries(cs)


# ---------------------------------------------------------------------------
# projections to power-series groups


def project_corolla(a: TreeSeries) -> PowerSeries:
    """Corolla coefficients as a multiplicative-group series (c_0 = 1)."""
    n = a.truncation - 1
    return PowerSeries([a.coefficient(corolla(k)) for k in range(n + 1)])


def project_ladder(a: TreeSeries) -> PowerSeries:
    """Linear-tree coefficients as a multiplicative-group series (c_0 = 1)."""
    n = a.truncation - 1
    return PowerSeries([a.coefficient(chain(k + 1)) for k in range(n + 1)])


def project_comm(a: TreeSeries) -> PowerSeries:
    """Sum of same-size coefficients, as a composition-group series."""
    cs = [Fraction(0)] * (a.truncation + 1)
    for t, c in a.coeffs.items():
        cs[t.size] += c
    return PowerSeries(cs)


def gcomm_product(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Substitution product in the one-class-per-degree operad.

    Computed operadically: a degree-m term of a composes with every ordered
    tuple of degrees from b; this must agree with ps_compose(a, b)
    coefficientwise.
    """
    if a.coefficient(0) != 0 or a.coefficient(1) != 1:
        raise ValueError("composition-group element needs c0 = 0, c1 = 1")
    if b.coefficient(0) != 0 or b.coefficient(1) != 1:
        raise ValueError("composition-group element needs c0 = 0, c1 = 1")
    n = min(a.truncation, b.truncation)
    out = [Fraction(0)] * (n + 1)

    def tuples(slots: int, budget: int):
        if slots == 0:
            if budget == 0:
                yield Fraction(1)
            return
        for s in range(1, budget - (slots - 1) + 1):
            cs = b.coefficient(s)
            if not cs:
                continue
            for prod in tuples(slots - 1, budget - s):
                yield cs * prod

    for m in range(1, n + 1):
        am = a.coefficient(m)
        if not am:
            continue
        for d in range(m, n + 1):
            for prod in tuples(m, d):
                out[d] += am * prod
    return PowerSeries(out)


def faa_generators(n: int) -> HopfElement:
    """The degree-n generator of the diffeomorphism subalgebra inside the
    incidence algebra: the sum of F_[t]/#Aut(t) over trees with n+1 vertices."""
    if n < 1:
        raise ValueError("generator index must be >= 1")
    terms = {t: Fraction(1, aut_order(t)) for t in enumerate_trees(n + 1)}
    return HopfElement("hnap", terms)


def random_group_element(rng, n: int, denominator_bound: int = 3,
                         numerator_bound: int = 3) -> TreeSeries:
    """Seeded random group element with small rational coefficients."""
    out = {LEAF: Fraction(1)}
    for size in range(2, n + 1):
        for t in enumerate_trees(size):
            num = rng.randint(-numerator_bound, numerator_bound)
            den = rng.randint(1, denominator_bound)
            if num:
                out[t] = Fraction(num, den)
    return TreeSeries(n, out)
