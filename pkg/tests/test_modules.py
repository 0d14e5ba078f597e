import oracle
import pytest
from flint import fmpq_mat
from hypothesis import given, settings
from hypothesis import strategies as st

from taufan import catalog
from taufan.algebra import build_algebra, presentation_from_spec
from taufan.modules import (
    Representation,
    decompose,
    direct_sum,
    hom_basis,
    hom_dim,
    indecomposable_projective,
    is_isomorphic,
    regular_module,
    simple_module,
    trace_in,
    zero_module,
)
from taufan.projective import g_vector, minimal_presentation, tau

RUNNING = oracle.running_example_hand()
A3_HAND = oracle.linear_a_hand(3)
A3 = catalog.linear_a(3)
KRON = catalog.kronecker()
A3_OP = build_algebra(presentation_from_spec(3, [("a1", 2, 1), ("a2", 3, 2)], []))
TWO_CYCLE = catalog.running_example()


def hand(name, alg=RUNNING, A=TWO_CYCLE) -> Representation:
    return oracle.to_representation(A, alg.module(name))


@st.composite
def free_reps(draw, A, max_dim=2):
    """Random representations of an algebra without relations."""
    dims = [draw(st.integers(0, max_dim)) for _ in range(A.n)]
    mats = []
    for a in A.quiver.arrows:
        r, c = dims[a.target - 1], dims[a.source - 1]
        entries = draw(st.lists(st.integers(-2, 2), min_size=r * c, max_size=r * c))
        mats.append(fmpq_mat(r, c, entries) if r and c else fmpq_mat(r, c))
    return Representation(A, dims, mats)


running_indecomposables = st.sampled_from([M.name for M in RUNNING.modules])


@st.composite
def running_sums(draw):
    names = draw(st.lists(running_indecomposables, min_size=1, max_size=3))
    return direct_sum([hand(n) for n in names])


# -- worked values ------------------------------------------------------------------------
def test_projectives_of_running_example():
    assert indecomposable_projective(TWO_CYCLE, 1).dim_vector == (1, 1)
    assert indecomposable_projective(TWO_CYCLE, 2).dim_vector == (1, 2)
    assert is_isomorphic(indecomposable_projective(TWO_CYCLE, 1), hand("1\\2"))[0]
    assert is_isomorphic(indecomposable_projective(TWO_CYCLE, 2), hand("2\\1\\2"))[0]


def test_projective_of_base_field(point):
    assert indecomposable_projective(point, 1).dim_vector == (1,)


def test_worked_hom_dimensions():
    P1, P2 = indecomposable_projective(TWO_CYCLE, 1), indecomposable_projective(TWO_CYCLE, 2)
    assert hom_dim(P2, P1) == 1
    assert hom_dim(simple_module(TWO_CYCLE, 1), simple_module(TWO_CYCLE, 2)) == 0
    assert hom_dim(P2, P2) == 2


def test_isomorphism_examples():
    S1, S2 = simple_module(TWO_CYCLE, 1), simple_module(TWO_CYCLE, 2)
    assert is_isomorphic(S1, S1)[0]
    assert not is_isomorphic(S1, S2)[0]
    split = Representation(TWO_CYCLE, (1, 1), [fmpq_mat(1, 1), fmpq_mat(1, 1)])
    assert not is_isomorphic(indecomposable_projective(TWO_CYCLE, 1), split)[0]


def test_isomorphism_witness_is_invertible_map():
    M = hand("2\\1\\2")
    ok, f = is_isomorphic(M, indecomposable_projective(TWO_CYCLE, 2))
    assert ok and f.commutes() and f.is_isomorphism()


def test_decompose_examples():
    P1 = indecomposable_projective(TWO_CYCLE, 1)
    parts = decompose(direct_sum([P1, P1]))
    assert len(parts) == 1 and parts[0][1] == 2 and is_isomorphic(parts[0][0], P1)[0]
    reg = decompose(regular_module(TWO_CYCLE))
    assert sorted(M.dim_vector for M, _ in reg) == [(1, 1), (1, 2)]
    assert [m for _, m in reg] == [1, 1]
    assert len(decompose(simple_module(TWO_CYCLE, 1))) == 1


def test_minimal_presentations():
    S1, S2 = simple_module(TWO_CYCLE, 1), simple_module(TWO_CYCLE, 2)
    assert (minimal_presentation(S1).p0, minimal_presentation(S1).p1) == ((1,), (2,))
    assert (minimal_presentation(S2).p0, minimal_presentation(S2).p1) == ((2,), (1,))
    P2 = indecomposable_projective(TWO_CYCLE, 2)
    assert (minimal_presentation(P2).p0, minimal_presentation(P2).p1) == ((2,), ())


def test_g_vectors_match_figure():
    assert g_vector(simple_module(TWO_CYCLE, 1)) == (1, -1)
    assert g_vector(indecomposable_projective(TWO_CYCLE, 2)) == (0, 1)
    assert g_vector(zero_module(TWO_CYCLE)) == (0, 0)


def test_tau_examples():
    assert is_isomorphic(tau(simple_module(TWO_CYCLE, 1)), simple_module(TWO_CYCLE, 2))[0]
    assert tau(indecomposable_projective(TWO_CYCLE, 1)).is_zero()
    assert is_isomorphic(tau(hand("2\\1")), hand("1\\2"))[0]


@pytest.mark.parametrize("alg,A", [(RUNNING, TWO_CYCLE), (A3_HAND, A3), (oracle.linear_a_hand(2), catalog.linear_a(2))])
def test_tau_agrees_with_hand_translates(alg, A):
    for M in alg.modules:
        t = tau(oracle.to_representation(A, M))
        if M.tau is None:
            assert t.is_zero()
        else:
            assert is_isomorphic(t, oracle.to_representation(A, alg.module(M.tau)))[0]


def test_fac_examples():
    P1, P2 = indecomposable_projective(TWO_CYCLE, 1), indecomposable_projective(TWO_CYCLE, 2)
    S1, S2 = simple_module(TWO_CYCLE, 1), simple_module(TWO_CYCLE, 2)
    assert trace_in(P2, P2)
    assert trace_in(P2, S2)
    assert not trace_in(direct_sum([S1, P1]), P2)


# -- properties ---------------------------------------------------------------------------
@settings(max_examples=40)
@given(st.one_of(free_reps(A3), free_reps(KRON), running_sums()))
def test_hom_from_projective_is_vertex_space(M):
    for i in range(1, M.n + 1):
        assert hom_dim(indecomposable_projective(M.algebra, i), M) == M.dims[i - 1]


@settings(max_examples=40)
@given(free_reps(A3), free_reps(A3))
def test_hom_dimension_matches_independent_solver(M, N):
    def as_hand(X):
        rows = tuple(tuple(tuple(int(m[r, c]) for c in range(m.ncols())) for r in range(m.nrows())) for m in X.maps)
        return oracle.HandModule("x", X.dims, rows, (), None)

    assert hom_dim(M, N) == oracle.hom_dim(A3_HAND, as_hand(M), as_hand(N))


@settings(max_examples=30)
@given(free_reps(A3), free_reps(A3))
def test_hom_basis_maps_commute_and_are_independent(M, N):
    basis = hom_basis(M, N)
    assert all(f.commutes() for f in basis)
    flat = [f.flat() for f in basis]
    if flat:
        assert fmpq_mat(flat).rank() == len(basis)


@settings(max_examples=30)
@given(st.one_of(free_reps(A3), running_sums()), st.one_of(free_reps(A3), running_sums()))
def test_g_vector_is_additive(M, N):
    if M.algebra is not N.algebra:
        return
    s = direct_sum([M, N])
    assert g_vector(s) == tuple(x + y for x, y in zip(g_vector(M), g_vector(N)))


def _opposite(M: Representation, Aop) -> Representation:
    return Representation(Aop, M.dims, [m.transpose() for m in M.maps])


@settings(max_examples=30)
@given(free_reps(A3), free_reps(A3))
def test_hom_dimension_is_preserved_by_duality(M, N):
    Aop = A3_OP
    assert hom_dim(M, N) == hom_dim(_opposite(N, Aop), _opposite(M, Aop))


@settings(max_examples=25)
@given(st.one_of(free_reps(A3), free_reps(KRON), running_sums()))
def test_decompose_is_idempotent(M):
    for X, _ in decompose(M):
        again = decompose(X)
        assert len(again) == 1 and again[0][1] == 1 and is_isomorphic(again[0][0], X)[0]


@settings(max_examples=25)
@given(st.one_of(free_reps(A3), running_sums()))
def test_decompose_preserves_dimension(M):
    total = [0] * M.n
    for X, m in decompose(M):
        total = [t + m * d for t, d in zip(total, X.dims)]
    assert tuple(total) == M.dim_vector


@settings(max_examples=25)
@given(running_sums())
def test_tau_vanishes_exactly_on_projectives(M):
    projective = all(_is_running_projective(X) for X, _ in decompose(M))
    assert tau(M).is_zero() == projective


def _is_running_projective(X: Representation) -> bool:
    return any(is_isomorphic(X, indecomposable_projective(TWO_CYCLE, i))[0] for i in (1, 2))


@settings(max_examples=15)
@given(st.one_of(free_reps(A3), running_sums()), st.one_of(free_reps(A3), running_sums()))
def test_operations_are_deterministic(M, N):
    if M.algebra is not N.algebra:
        return
    assert [f.flat() for f in hom_basis(M, N)] == [f.flat() for f in hom_basis(M, N)]
    assert [(X.key(), m) for X, m in decompose(M)] == [(X.key(), m) for X, m in decompose(M)]
