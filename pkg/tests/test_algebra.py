import pytest

from taufan import build_algebra, catalog
from taufan.algebra import presentation_from_spec
from taufan.errors import InconsistentRelation, NotAdmissible, NotFiniteDimensional


def test_running_example_dimension(running):
    # e1, e2, alpha, beta and beta-then-alpha survive; alpha-then-beta is killed
    assert running.dimension == 5


def test_base_field_and_a2_dimensions(point, a2, a3):
    assert point.dimension == 1
    assert a2.dimension == 3
    assert a3.dimension == 6


def test_kronecker_dimension(kron):
    assert kron.dimension == 4


def test_short_relation_is_not_admissible():
    p = presentation_from_spec(2, [("a", 1, 2)], [[(1, ["a"])]])
    with pytest.raises(NotAdmissible):
        build_algebra(p)


def test_non_parallel_relation_is_inconsistent():
    p = presentation_from_spec(3, [("a", 1, 2), ("b", 2, 3), ("c", 2, 1)], [[(1, ["a", "b"]), (1, ["a", "c"])]])
    with pytest.raises(InconsistentRelation):
        build_algebra(p)


def test_cycle_without_relations_is_infinite():
    p = presentation_from_spec(1, [("x", 1, 1)], [], length_bound=4)
    with pytest.raises(NotFiniteDimensional) as info:
        build_algebra(p)
    assert "4" in str(info.value)


def test_loop_with_nilpotency_relation():
    p = presentation_from_spec(1, [("x", 1, 1)], [[(1, ["x", "x", "x"])]])
    assert build_algebra(p).dimension == 3


def test_commutative_square_kills_difference():
    p = presentation_from_spec(
        4,
        [("a", 1, 2), ("b", 2, 4), ("c", 1, 3), ("d", 3, 4)],
        [[(1, ["a", "b"]), (-1, ["c", "d"])]],
    )
    # 4 trivial paths, 4 arrows, one surviving length-two path
    assert build_algebra(p).dimension == 9


def test_presentations_are_deterministic():
    assert catalog.running_example().dimension == catalog.running_example().dimension
    assert catalog.running_example_presentation() == catalog.running_example_presentation()
