"""Support tau-tilting pairs, g-vector fans and the categories they determine.

Typical use::

    from taufan import running_example, PairCatalog, build_categories

    catalog = PairCatalog(running_example())
    bundle = build_categories(catalog)
"""

from .algebra import Algebra, AlgebraPresentation, Arrow, Quiver, build_algebra
from .catalog import kronecker, linear_a, running_example, single_vertex
from .categories import CategoryBundle, CategoryTable, build_categories, functor_F, functor_G, verify_category_axioms, verify_functor_equivalence
from .checks import run_checks
from .errors import CapExceeded, PresentationError, SVGUnsupportedRank, TaufanError, TheoryViolation
from .formats import load_algebra_file, parse_algebra
from .tautilt import PairCatalog, TauRigidPair, enumerate_support_tau_tilting
from .wallchamber import Cone, TFClass, build_classes, tf_leq, verify_fan

__all__ = [
    "Algebra",
    "AlgebraPresentation",
    "Arrow",
    "CapExceeded",
    "CategoryBundle",
    "CategoryTable",
    "Cone",
    "PairCatalog",
    "PresentationError",
    "Quiver",
    "SVGUnsupportedRank",
    "TFClass",
    "TauRigidPair",
    "TaufanError",
    "TheoryViolation",
    "build_algebra",
    "build_categories",
    "build_classes",
    "enumerate_support_tau_tilting",
    "functor_F",
    "functor_G",
    "kronecker",
    "linear_a",
    "load_algebra_file",
    "parse_algebra",
    "run_checks",
    "running_example",
    "single_vertex",
    "tf_leq",
    "verify_category_axioms",
    "verify_functor_equivalence",
    "verify_fan",
]
