import pytest

from naphopf.posets import (
    FinitePoset,
    brute_force_pi,
    check_distributive_lattice,
    check_interval_factorization,
    check_maximal_interval_model,
    check_total_semimodularity,
    check_upset_isomorphism,
    diamond_poset,
    f_structure_constants,
    forest_below,
    interval_dot,
    interval_of,
    mobius,
    mobius_closed_form,
    pentagon_poset,
    theta_of,
)
from naphopf.trees import (
    Forest,
    LEAF,
    canonical_representative,
    chain,
    comm_instance,
    corolla,
    enumerate_trees,
    nap_compose,
    nap_instance,
    parse_tree,
)

T1200 = parse_tree("((()()))")  # root -> inner vertex -> two leaves
T2100 = parse_tree("(()(()))")  # root -> {leaf, 2-chain}


# --- interval structure --------------------------------------------------------


def test_interval_sizes():
    assert len(interval_of(LEAF)) == 1
    for k in range(1, 5):
        assert len(interval_of(corolla(k))) == 2 ** k
    assert len(interval_of(T1200)) == 5


def test_interval_elements_for_valence_one_tree():
    ip = interval_of(T1200)
    assert set(ip.elements) == {frozenset({1}), frozenset({1, 2}),
                                frozenset({1, 2, 3}), frozenset({1, 2, 4}),
                                frozenset({1, 2, 3, 4})}
    assert ip.elements[ip.bottom_index] == frozenset({1, 2, 3, 4})
    assert ip.elements[ip.top_index] == frozenset({1})


def test_ideal_enumeration_against_subset_filter():
    # oracle: filter every vertex subset for the ideal property
    from itertools import combinations

    for n in range(1, 8):
        for t in enumerate_trees(n):
            rep = canonical_representative(t)
            labels = sorted(rep.labels)
            expected = set()
            for r in range(len(labels) + 1):
                for subset in combinations(labels, r):
                    s = frozenset(subset)
                    if rep.root not in s:
                        continue
                    if all(v == rep.root or rep.parents[v] in s for v in s):
                        expected.add(s)
            assert set(interval_of(t).elements) == expected


def test_cover_relations_remove_one_leaf():
    for n in range(1, 7):
        for t in enumerate_trees(n):
            ip = interval_of(t)
            for a, b in ip.covers():
                small, large = ip.elements[a], ip.elements[b]
                assert large < small and len(small) - len(large) == 1
                (removed,) = tuple(small - large)
                assert all(ip.representative.parents.get(v) != removed
                           for v in large)


def test_forest_below_and_theta_examples():
    full = frozenset({1, 2, 3, 4})
    assert forest_below(T1200, full) == Forest((LEAF,) * 4)
    assert theta_of(T1200, full) == T1200
    assert forest_below(T1200, {1}) == Forest((T1200,))
    assert theta_of(T1200, {1}) == LEAF
    # removing one deep leaf: branches are two singletons and a 2-chain
    assert forest_below(T1200, {1, 2, 3}) == Forest((LEAF, LEAF, chain(2)))
    assert theta_of(T1200, {1, 2, 3}) == chain(3)


def test_invalid_ideals_rejected():
    with pytest.raises(ValueError):
        forest_below(T1200, {2, 3})  # missing the root
    with pytest.raises(ValueError):
        theta_of(T1200, {1, 3})  # not parent-closed
    with pytest.raises(ValueError):
        forest_below(T1200, {1, 9})


def test_ideal_decomposition_recomposes():
    # composing the restriction with the labeled branches reproduces the tree
    for n in range(1, 7):
        for t in enumerate_trees(n):
            ip = interval_of(t)
            rep = ip.representative
            for ideal in ip.elements:
                subs = {}
                for v in ideal:
                    keep = {v}
                    stack = [c for c in rep.children(v) if c not in ideal]
                    while stack:
                        w = stack.pop()
                        keep.add(w)
                        stack.extend(rep.children(w))
                    subs[v] = rep.__class__(
                        v, {c: p for c, p in rep.parents.items()
                            if c in keep and p in keep})
                assert nap_compose(rep.restrict(ideal), subs) == rep


# --- Mobius ---------------------------------------------------------------------


def test_mobius_examples():
    assert mobius(LEAF) == 1
    assert mobius(chain(2)) == -1
    assert mobius(corolla(4)) == 1
    assert mobius(corolla(3)) == -1
    assert mobius(T2100) == 0
    assert mobius(T1200) == 0


def test_mobius_matches_closed_form():
    for n in range(1, 7):
        for t in enumerate_trees(n):
            assert mobius(t) == mobius_closed_form(t)


def test_mobius_sums_to_zero_over_intervals():
    for n in range(2, 7):
        for t in enumerate_trees(n):
            assert sum(interval_of(t).poset.mobius_from_bottom()) == 0


def test_mobius_multiplies_over_branch_products():
    from naphopf.trees import RootedTree

    for n in range(2, 7):
        for t in enumerate_trees(n):
            prod = 1
            for branch in t.children:
                prod *= mobius(RootedTree((branch,)))
            assert mobius(t) == prod


# --- lattice checks -------------------------------------------------------------


def test_intervals_are_totally_semimodular_and_distributive():
    for n in range(1, 7):
        for t in enumerate_trees(n):
            ip = interval_of(t)
            assert check_total_semimodularity(ip)
            assert check_distributive_lattice(ip)


def test_two_chain_interval_is_trivially_semimodular():
    assert check_total_semimodularity(interval_of(chain(2)))


def test_negative_controls():
    assert not check_total_semimodularity(pentagon_poset())
    assert check_total_semimodularity(diamond_poset())
    assert not check_distributive_lattice(diamond_poset())
    assert not check_distributive_lattice(pentagon_poset())


def test_finite_poset_validation():
    with pytest.raises(ValueError):
        FinitePoset([[True, True], [True, True]])  # not antisymmetric
    with pytest.raises(ValueError):
        FinitePoset([[False]])  # not reflexive


# --- brute-force poset of structured partitions ----------------------------------


def test_brute_force_nap_two():
    bp = brute_force_pi(nap_instance(), 2)
    assert len(bp) == 3
    bottom = bp.bottom_index()
    assert bottom is not None
    trees = [i for i in range(3) if len(bp.elements[i]) == 1]
    assert len(trees) == 2
    for i in trees:
        assert bp.poset.leq[bottom][i]
        for j in trees:
            assert bp.poset.leq[i][j] == (i == j)


def test_brute_force_counts():
    for n in range(1, 5):
        assert len(brute_force_pi(nap_instance(), n)) == (n + 1) ** (n - 1)


def test_brute_force_limit():
    with pytest.raises(ValueError):
        brute_force_pi(nap_instance(), 5)
    # explicit override is allowed (comm stays tiny)
    assert len(brute_force_pi(comm_instance(), 5, limit=5)) == 52  # Bell(5)


def test_comm_is_the_partition_lattice():
    bp = brute_force_pi(comm_instance(), 3)
    assert len(bp) == 5
    for i in range(5):
        for j in range(5):
            refines = all(any(a <= b for b in bp.parts[j]) for a in bp.parts[i])
            assert bp.poset.leq[i][j] == refines


def test_upset_isomorphisms():
    for n in range(1, 5):
        bp = brute_force_pi(nap_instance(), n)
        for i in range(len(bp)):
            assert check_upset_isomorphism(bp, i)


def test_interval_factorization_at_three():
    bp = brute_force_pi(nap_instance(), 3)
    for i in range(len(bp)):
        for j in range(len(bp)):
            if bp.poset.leq[i][j]:
                assert check_interval_factorization(bp, i, j)


def test_maximal_interval_models():
    for n in range(1, 5):
        bp = brute_force_pi(nap_instance(), n)
        for i in bp.poset.maximal_elements():
            assert check_maximal_interval_model(bp, i)


# --- structure constants ----------------------------------------------------------


def test_f_structure_constants_single_vertex():
    assert f_structure_constants(LEAF) == {(Forest(), LEAF): 1}


def test_f_structure_constants_three_chain():
    got = f_structure_constants(chain(3))
    assert got == {
        (Forest((chain(3),)), LEAF): 1,
        (Forest((chain(2),)), chain(2)): 1,
        (Forest(), chain(3)): 1,
    }


def test_f_structure_constants_valence_one_example():
    got = f_structure_constants(T1200)
    assert got[(Forest((corolla(2),)), chain(2))] == 1
    assert got[(Forest((chain(2),)), chain(3))] == 2
    assert got[(Forest(), T1200)] == 1
    assert got[(Forest((T1200,)), LEAF)] == 1
    assert sum(got.values()) == len(interval_of(T1200))


def test_f_values_sum_to_interval_size():
    for n in range(1, 7):
        for t in enumerate_trees(n):
            assert sum(f_structure_constants(t).values()) == len(interval_of(t))


# --- DOT export --------------------------------------------------------------------


def test_interval_dot_output():
    dot = interval_dot(interval_of(chain(3)))
    assert dot.startswith("digraph interval {")
    assert dot.count("->") == 2
    assert '"((()))"' in dot and '"()"' in dot
