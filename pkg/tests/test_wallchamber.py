from dataclasses import replace

import pytest
from flint import fmpq, fmpq_mat
from hypothesis import given, settings
from hypothesis import strategies as st

from taufan.errors import DependentRays
from taufan.modules import indecomposable_projective, simple_module
from taufan.wallchamber import (
    Cone,
    closed_cone_contains,
    check_pi_identity,
    in_N,
    nu_matrix,
    nu_project,
    nu_project_cone,
    open_cone_contains,
    pi_project,
    pi_project_cone,
    rho_map,
    simples_basis_check,
    tf_leq,
    verify_fan,
    walls_for_render,
)

NAMES = ["running", "A2", "A3", "point"]


@pytest.fixture(scope="module")
def rc(running_bundle, running):
    """Running-example classes looked up by the pair's summands."""
    cat = running_bundle.catalog
    S1, S2 = simple_module(running, 1), simple_module(running, 2)
    P1, P2 = indecomposable_projective(running, 1), indecomposable_projective(running, 2)
    by_key = {E.pair.key: E for E in running_bundle.classes}

    def cls(modules=(), projectives=()):
        return by_key[cat.pair(modules, projectives).key]

    return cls, (S1, S2, P1, P2)


# -- cones --------------------------------------------------------------------------------
def test_cones_of_running_example(rc):
    cls, (S1, _, P1, P2) = rc
    assert set(cls([P1, P2]).cone.rays) == {(1, 0), (0, 1)}
    assert cls().cone.rays == ()
    assert set(cls([S1, P1]).cone.rays) == {(1, -1), (1, 0)}


def test_six_rays_match_figure(running_bundle):
    rays = {E.cone.rays[0] for E in running_bundle.classes if E.dim == 1}
    assert rays == {(0, 1), (0, -1), (1, 0), (-1, 0), (1, -1), (-1, 1)}


def test_a2_has_five_rays(small_bundles):
    assert len({E.cone.rays for E in small_bundles["A2"].classes if E.dim == 1}) == 5


def test_point_rays(small_bundles):
    assert {E.cone.rays for E in small_bundles["point"].classes if E.dim == 1} == {((1,),), ((-1,),)}


def test_membership_examples(rc, running_bundle):
    cls, (_, _, P1, P2) = rc
    C = cls([P1, P2]).cone
    assert all(closed_cone_contains(E.cone, (0, 0)) for E in running_bundle.classes)
    assert open_cone_contains(C, (1, 1))
    assert not open_cone_contains(C, (1, 0))
    assert closed_cone_contains(C, (1, 0))
    assert not closed_cone_contains(C, (-1, 1))


def test_dependent_rays_rejected():
    with pytest.raises(DependentRays):
        Cone.from_generators([(1, 0), (2, 0)], 2)


def test_rays_are_primitive():
    assert Cone.from_generators([(2, -4), (0, 3)], 2).rays == ((0, 1), (1, -2))


@pytest.mark.parametrize("name", NAMES)
def test_verify_fan(small_bundles, name):
    report = verify_fan(small_bundles[name].classes)
    assert report.ok, report.violations
    k = len(small_bundles[name].classes)
    assert report.checked_pairs == k * (k - 1) // 2


def test_verify_fan_single_cone(running_bundle):
    assert verify_fan(running_bundle.classes[:1]).ok


def test_verify_fan_reports_duplicate(running_bundle):
    top = [E for E in running_bundle.classes if E.dim == 2]
    fake = replace(top[1], cone=top[0].cone)
    report = verify_fan([top[0], fake])
    assert [v["kind"] for v in report.violations] == ["duplicate"]


def test_verify_fan_reports_overlap(running_bundle):
    E = [E for E in running_bundle.classes if E.dim == 2][0]
    a = replace(E, cone=Cone.from_generators([(1, 0), (0, 1)], 2))
    b = replace(E, cone=Cone.from_generators([(1, 1), (0, 1)], 2))
    kinds = {v["kind"] for v in verify_fan([a, b]).violations}
    assert kinds == {"not a common face", "open cones overlap"}


def test_verify_fan_reports_bad_face(running_bundle):
    E = [E for E in running_bundle.classes if E.dim == 2][0]
    a = replace(E, cone=Cone.from_generators([(1, 0), (0, 1)], 2))
    b = replace(E, cone=Cone.from_generators([(1, 1)], 2))
    kinds = {v["kind"] for v in verify_fan([a, b]).violations}
    assert "open cones overlap" in kinds and "not a common face" in kinds


vectors2 = st.tuples(st.integers(-20, 20), st.integers(-20, 20))
vectors3 = st.tuples(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9))


@settings(max_examples=200)
@given(vectors2)
def test_open_cones_partition_the_plane(running_bundle, v):
    hits = [E.id for E in running_bundle.classes if E.cone.open_contains(v)]
    assert len(hits) == 1


@settings(max_examples=200)
@given(vectors3)
def test_open_cones_partition_space_a3(small_bundles, v):
    hits = [E.id for E in small_bundles["A3"].classes if E.cone.open_contains(v)]
    assert len(hits) == 1


@settings(max_examples=100)
@given(vectors2)
def test_open_cone_lies_in_closed_cone(running_bundle, v):
    for E in running_bundle.classes:
        if E.cone.open_contains(v):
            assert E.cone.closed_contains(v)


# -- TF order -----------------------------------------------------------------------------
def test_tf_order_examples(rc, running_bundle):
    cls, (_, _, P1, _) = rc
    origin = cls()
    assert all(tf_leq(origin, E) for E in running_bundle.classes)
    assert all(tf_leq(E, E) for E in running_bundle.classes)
    assert not tf_leq(cls([P1]), cls([], [1]))


@pytest.mark.parametrize("name", NAMES)
def test_tf_order_is_partial_order(small_bundles, name):
    cl = small_bundles[name].classes
    leq = {(E.id, F.id): tf_leq(E, F, checked=True) for E in cl for F in cl}
    for E in cl:
        assert leq[E.id, E.id]
        for F in cl:
            if E is not F:
                assert not (leq[E.id, F.id] and leq[F.id, E.id])
            for G in cl:
                if leq[E.id, F.id] and leq[F.id, G.id]:
                    assert leq[E.id, G.id]


def test_in_N_examples(rc):
    cls, (S1, S2, P1, _) = rc
    base = cls([P1])
    assert in_N(base.pair, cls([S1, P1]))
    assert in_N(base.pair, base)
    assert not in_N(base.pair, cls([S2], [1]))


@pytest.mark.parametrize("name", NAMES)
def test_tf_order_agrees_with_neighbourhoods(small_bundles, name):
    cl = small_bundles[name].classes
    for E in cl:
        for F in cl:
            assert tf_leq(E, F, checked=False) == in_N(E.pair, F), (E.id, F.id)


@pytest.mark.parametrize("name", NAMES)
def test_class_dimension_is_pair_rank(small_bundles, name):
    for E in small_bundles[name].classes:
        assert E.dim == E.pair.rank


# -- projections --------------------------------------------------------------------------
def test_nu_examples(rc):
    cls, (S1, _, P1, _) = rc
    E = cls([P1])
    assert nu_project(E, (3, 5)) == (0, 5)
    assert nu_project_cone(E, cls([S1, P1])).rays == ((0, -1),)
    assert nu_project_cone(E, E).rays == ()


def test_pi_examples(rc):
    cls, (_, _, P1, _) = rc
    E = cls([P1])
    assert pi_project(E, (3, 5)) == (5,)
    assert pi_project(E, (7, 0)) == (0,)
    origin = cls()
    assert sorted([pi_project(origin, (1, 0)), pi_project(origin, (0, 1))]) == [(0, 1), (1, 0)]


def test_simples_basis_examples(rc, running_bundle):
    cls, (_, _, P1, P2) = rc
    assert sorted(cls().wide.dim_vectors()) == [(0, 1), (1, 0)]
    assert cls([P1, P2]).wide.dim_vectors() == []
    assert cls([P1]).wide.dim_vectors() == [(0, 1)]
    assert all(simples_basis_check(E) for E in running_bundle.classes)


@pytest.mark.parametrize("name", NAMES)
def test_projection_identities(small_bundles, name):
    for E in small_bundles[name].classes:
        assert simples_basis_check(E)
        assert check_pi_identity(E)
        nu = nu_matrix(E)
        assert nu * nu == nu and nu.transpose() == nu
        for r in E.cone.rays:
            assert all(x == 0 for x in nu_project(E, r))


@pytest.mark.parametrize("name", ["running", "A3"])
def test_pairing_identity(small_bundles, name):
    for E in small_bundles[name].classes:
        dims, ds = E.wide.dim_vectors(), E.wide.endo_dims
        for i, g in enumerate(E.wide.complement_g):
            for j, d in enumerate(dims):
                assert sum(x * y for x, y in zip(g, d)) == (ds[j] if i == j else 0)
        for g in E.pair.g_rays:
            assert all(sum(x * y for x, y in zip(g, d)) == 0 for d in dims)


@settings(max_examples=60)
@given(st.data())
def test_pi_factors_through_nu(small_bundles, data):
    cl = small_bundles["A3"].classes
    E = data.draw(st.sampled_from(cl))
    v = data.draw(vectors3)
    rho = rho_map(E)
    nv = fmpq_mat(3, 1, [fmpq(x) for x in nu_project(E, v)])
    lhs = tuple(rho * nv)
    assert lhs == tuple(fmpq(x) for x in pi_project(E, v))


@pytest.mark.parametrize("name", NAMES)
def test_equivalent_classes_share_projection(small_bundles, name):
    groups: dict = {}
    for E in small_bundles[name].classes:
        groups.setdefault(E.wide_key, []).append(E)
    for group in groups.values():
        assert len({tuple(nu_matrix(E).entries()) for E in group}) == 1


@pytest.mark.parametrize("name", ["running", "A3"])
def test_nu_and_pi_projections_agree_on_equality(small_bundles, name):
    cl = small_bundles[name].classes
    for E in cl:
        above = [F for F in cl if tf_leq(E, F, checked=False)]
        for F in above:
            for G in above:
                same_nu = nu_project_cone(E, F).rays == nu_project_cone(E, G).rays
                same_pi = pi_project_cone(E, F).rays == pi_project_cone(E, G).rays
                assert same_nu == same_pi


# -- walls --------------------------------------------------------------------------------
def test_walls_of_running_example(running_bundle):
    walls = walls_for_render(running_bundle.classes)
    assert len(walls) == 6
    assert sorted(w.dim_vector for w in walls) == [(0, 1), (0, 1), (1, 0), (1, 0), (1, 1), (1, 1)]
    square = [w for w in walls if w.dim_vector == (1, 1)]
    assert square[0].arrow_data != square[1].arrow_data
    assert {w.brick for w in walls} == {"1", "2", "1\\2", "2\\1"}
    for w in walls:
        assert w.cone.dim == 1


def test_walls_of_a2(small_bundles):
    assert len(walls_for_render(small_bundles["A2"].classes)) == 5
