"""Small algebras used throughout the tests, demos and bundled data files."""

from __future__ import annotations

from .algebra import AlgebraPresentation, build_algebra, presentation_from_spec


def running_example_presentation() -> AlgebraPresentation:
    """Two-cycle ``1 <-> 2`` (alpha: 1->2, beta: 2->1) with alpha then beta killed."""
    return presentation_from_spec(
        2,
        [("alpha", 1, 2), ("beta", 2, 1)],
        [[(1, ["alpha", "beta"])]],
        name="two-cycle with alpha.beta = 0",
    )


def linear_a_presentation(n: int) -> AlgebraPresentation:
    """Linearly oriented ``A_n``: ``1 -> 2 -> ... -> n`` without relations."""
    arrows = [(f"a{i}", i, i + 1) for i in range(1, n)]
    return presentation_from_spec(n, arrows, [], name=f"A{n} linear")


def kronecker_presentation() -> AlgebraPresentation:
    return presentation_from_spec(2, [("a", 1, 2), ("b", 1, 2)], [], name="Kronecker")


def single_vertex_presentation() -> AlgebraPresentation:
    return presentation_from_spec(1, [], [], name="base field")


def running_example():
    return build_algebra(running_example_presentation())


def linear_a(n: int):
    return build_algebra(linear_a_presentation(n))


def kronecker():
    return build_algebra(kronecker_presentation())


def single_vertex():
    return build_algebra(single_vertex_presentation())
