import oracle
import pytest
from flint import fmpq_mat

from taufan import PairCatalog, catalog
from taufan.algebra import build_algebra, presentation_from_spec
from taufan.errors import CapExceeded
from taufan.modules import direct_sum, hom_dim, indecomposable_projective, is_brick, is_isomorphic, simple_module, top_dim_vector
from taufan.tautilt import (
    TauRigidPair,
    enumerate_support_tau_tilting,
    in_wide,
    is_tau_rigid_pair,
    pair_is_tau_rigid,
    torsion_membership,
)


def _key(pair: TauRigidPair) -> tuple:
    return (tuple(sorted((M.dim_vector, top_dim_vector(M)) for M in pair.modules)), tuple(pair.projective_part))


def _iso_list(xs, ys) -> bool:
    if len(xs) != len(ys):
        return False
    left = list(ys)
    for x in xs:
        hit = next((y for y in left if is_isomorphic(x, y)[0]), None)
        if hit is None:
            return False
        left.remove(hit)
    return True


@pytest.fixture(scope="module")
def rx(running):
    S1, S2 = simple_module(running, 1), simple_module(running, 2)
    P1, P2 = indecomposable_projective(running, 1), indecomposable_projective(running, 2)
    return S1, S2, P1, P2


# -- worked values ------------------------------------------------------------------------
def test_rigidity_examples(running, rx):
    S1, S2, _, _ = rx
    assert is_tau_rigid_pair(running, [S1], [], cross_check=True)
    assert not is_tau_rigid_pair(running, [S1, S2], [], cross_check=True)
    assert is_tau_rigid_pair(running, [], [1, 2], cross_check=True)


def test_running_example_counts(running_catalog):
    ranks = [p.rank for p in running_catalog.pairs]
    assert len(running_catalog.tilting) == 6
    assert len(running_catalog.pairs) == 13
    assert (ranks.count(0), ranks.count(1), ranks.count(2)) == (1, 6, 6)


def test_a2_counts(a2):
    cat = PairCatalog(a2, checked=True, cross_check=True)
    ranks = [p.rank for p in cat.pairs]
    assert len(cat.tilting) == 5
    # one empty pair, five rank-one pairs (three modules, two shifted projectives), five completions
    assert (ranks.count(0), ranks.count(1), ranks.count(2)) == (1, 5, 5)


def test_single_vertex_pairs(point):
    cat = PairCatalog(point)
    assert sorted(p.label for p in cat.pairs) == ["(0, 0)", "(0, P1)", "(1, 0)"]


def test_kronecker_exceeds_cap(kron):
    with pytest.raises(CapExceeded):
        enumerate_support_tau_tilting(kron, cap=50)


def test_bongartz_completions(running_catalog, rx):
    S1, _, P1, P2 = rx
    cat = running_catalog
    assert _iso_list(cat.bongartz(cat.pair()).modules, [P1, P2])
    assert _iso_list(cat.bongartz(cat.pair([S1])).modules, [S1, P1])
    assert _iso_list(cat.bongartz(cat.pair([P1])).modules, [P1, P2])
    assert _iso_list(cat.complement(cat.pair([P1])), [P2])
    assert _iso_list(cat.complement(cat.pair()), [P1, P2])
    for T in cat.tilting:
        assert cat.complement(T) == []


def test_wide_subcategory_examples(running_catalog, rx):
    S1, S2, P1, _ = rx
    cat = running_catalog
    W = cat.wide(cat.pair([P1]))
    assert _iso_list(W.modules, [S2]) and W.endo_dims == (1,)
    assert _iso_list(cat.wide(cat.pair()).modules, [S1, S2])
    for T in cat.tilting:
        assert cat.wide(T).rank == 0


def test_in_wide_examples(running_catalog, rx):
    S1, S2, P1, _ = rx
    cat = running_catalog
    assert in_wide(cat.pair([P1]), S2)
    assert not in_wide(cat.pair([S1]), S1)
    assert in_wide(cat.pair(), P1)


def test_torsion_membership_examples(running_catalog, rx):
    S1, _, P1, P2 = rx
    cat = running_catalog
    assert torsion_membership(cat.pair([S1]), S1) == (True, True)
    # P(2) has top S(2) = tau S(1), so it lies outside both classes
    assert torsion_membership(cat.pair([S1]), P2) == (False, False)
    assert torsion_membership(cat.pair([S1]), P1) == (False, True)
    assert torsion_membership(cat.pair([], [1, 2]), S1) == (False, False)


# -- invariants ---------------------------------------------------------------------------
@pytest.mark.parametrize("name", ["running", "A2", "A3", "point"])
def test_pair_invariants(small_bundles, name):
    cat = small_bundles[name].catalog
    n = cat.n
    for p in cat.pairs:
        assert pair_is_tau_rigid(p, cross_check=True)
        assert p.rank <= n and p.is_tau_tilting == (p.rank == n)
        assert fmpq_mat([list(g) for g in p.g_rays]).rank() == p.rank if p.rank else True
        completion = cat.bongartz(p)
        assert completion.is_tau_tilting and completion.contains(p)
        W = cat.wide(p)
        assert W.rank == n - p.rank


@pytest.mark.parametrize("name", ["running", "A2", "A3"])
def test_simples_are_orthogonal_bricks(small_bundles, name):
    cat = small_bundles[name].catalog
    for p in cat.pairs:
        X = cat.wide(p).modules
        for i, Xi in enumerate(X):
            assert is_brick(Xi) and in_wide(p, Xi)
            for j, Xj in enumerate(X):
                if i != j:
                    assert hom_dim(Xi, Xj) == 0


@pytest.mark.parametrize("name", ["running", "A2", "A3"])
def test_mutation_graph_is_regular(small_bundles, name):
    cat = small_bundles[name].catalog
    for T in cat.tilting:
        nbrs = cat.mutation_neighbours(T)
        assert len(nbrs) == cat.n
        assert len({U.key for U in nbrs.values()}) == cat.n
        for s, U in nbrs.items():
            assert U.is_tau_tilting and U.key != T.key
            assert len(set(U.summands) & set(T.summands)) == cat.n - 1


@pytest.mark.parametrize(
    "hand,make",
    [
        (oracle.running_example_hand(), catalog.running_example),
        (oracle.linear_a_hand(2), lambda: catalog.linear_a(2)),
        (oracle.linear_a_hand(3), lambda: catalog.linear_a(3)),
    ],
)
def test_enumeration_matches_brute_force(hand, make):
    rigid, tilting = oracle.brute_force_pairs(hand)
    cat = PairCatalog(make())
    assert {_key(p) for p in cat.tilting} == tilting
    assert {_key(p) for p in cat.pairs} == rigid


def test_brute_force_counts():
    assert [len(oracle.brute_force_pairs(h)[1]) for h in (oracle.linear_a_hand(2), oracle.linear_a_hand(3))] == [5, 14]


def test_enumeration_is_deterministic(running):
    a = [p.key for p in PairCatalog(running).pairs]
    b = [p.key for p in PairCatalog(running).pairs]
    assert a == b


def test_checked_and_unchecked_enumeration_agree(a3):
    fast = PairCatalog(a3)
    slow = PairCatalog(a3, checked=True, cross_check=True)
    assert [p.key for p in fast.pairs] == [p.key for p in slow.pairs]
    assert fast.edges == slow.edges


def test_nakayama_three_cycle_radical_square_zero():
    A = build_algebra(
        presentation_from_spec(3, [("a", 1, 2), ("b", 2, 3), ("c", 3, 1)], [[(1, ["a", "b"])], [(1, ["b", "c"])], [(1, ["c", "a"])]])
    )
    cat = PairCatalog(A, checked=True)
    assert all(pair_is_tau_rigid(p, cross_check=True) for p in cat.pairs)
    assert len({p.key for p in cat.tilting}) == len(cat.tilting)


def test_direct_sum_pair_equals_summand_pair(running, rx):
    S1, _, P1, _ = rx
    a = TauRigidPair.from_module(running, direct_sum([S1, P1, S1]))
    b = TauRigidPair.from_modules(running, [P1, S1])
    assert a.key == b.key
