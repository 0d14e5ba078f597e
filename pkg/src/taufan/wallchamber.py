"""Cones of tau-rigid pairs, the g-vector fan and the projections nu, rho and pi."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from flint import fmpq, fmpq_mat
import cdd

from . import linalg as la
from .errors import CrossCheckMismatch, DependentProjection, DependentRays, IdentityCheckFailed, TheoryViolation
from .modules import trace_in
from .registry import registry_for
from .tautilt import PairCatalog, TauRigidPair, WideSubcategory, torsion_membership


def _ray_matrix(rays: Sequence[Sequence], n: int) -> fmpq_mat:
    return la.from_columns([list(r) for r in rays], n) if rays else la.zeros(n, 0)


@dataclass(frozen=True)
class Cone:
    """Relatively open simplicial cone spanned by primitive integer rays."""

    rays: tuple[tuple[int, ...], ...]
    ambient: int

    @classmethod
    def from_generators(cls, vectors: Sequence[Sequence], ambient: int) -> "Cone":
        rays = sorted({la.primitive_integer(v) for v in vectors})
        if len(rays) != len(vectors) or la.rank(_ray_matrix(rays, ambient)) != len(rays):
            raise DependentRays("cone generators are not linearly independent", {"generators": [list(map(str, v)) for v in vectors]})
        return cls(tuple(rays), ambient)

    @property
    def dim(self) -> int:
        return len(self.rays)

    def matrix(self) -> fmpq_mat:
        return _ray_matrix(self.rays, self.ambient)

    def coefficients(self, v: Sequence) -> list[fmpq] | None:
        """Coordinates of ``v`` on the rays, or ``None`` when ``v`` is outside their span."""
        if not self.rays:
            return [] if all(la.to_q(x) == 0 for x in v) else None
        sol = la.solve(self.matrix(), la.from_rows([[la.to_q(x)] for x in v]))
        if sol is None:
            return None
        return [sol[i, 0] for i in range(self.dim)]

    def closed_contains(self, v: Sequence) -> bool:
        c = self.coefficients(v)
        return c is not None and all(x >= 0 for x in c)

    def open_contains(self, v: Sequence) -> bool:
        c = self.coefficients(v)
        return c is not None and all(x > 0 for x in c)

    def face_rays(self, other: "Cone") -> tuple:
        return tuple(r for r in self.rays if r in other.rays)


def closed_cone_contains(C: Cone, v: Sequence) -> bool:
    return C.closed_contains(v)


def open_cone_contains(C: Cone, v: Sequence) -> bool:
    return C.open_contains(v)


def cone_of_pair(pair: TauRigidPair) -> Cone:
    return Cone.from_generators(pair.g_rays, pair.algebra.n)


@dataclass(frozen=True)
class TFClass:
    """The TF-equivalence class ``C(M, P)`` with its wide subcategory and Bongartz completion."""

    pair: TauRigidPair
    cone: Cone
    wide: WideSubcategory
    completion: TauRigidPair = field(compare=False)

    @property
    def id(self) -> str:
        return self.pair.label

    @property
    def dim(self) -> int:
        return self.cone.dim

    @property
    def n(self) -> int:
        return self.cone.ambient

    @property
    def wide_key(self) -> tuple:
        return self.wide.key

    def __repr__(self):
        return f"TFClass{self.id}"


def build_classes(catalog: PairCatalog) -> list[TFClass]:
    """One class per basic tau-rigid pair, in canonical pair order."""
    return [TFClass(p, cone_of_pair(p), catalog.wide(p), catalog.bongartz(p)) for p in catalog.pairs]


# -- fan validity ---------------------------------------------------------------------
@dataclass
class FanReport:
    checked_pairs: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _lp(objective: Sequence[int], ineq: Sequence[tuple], eq: Sequence[tuple]):
    """Exact LP ``max objective . x`` over ``x >= 0`` with rows ``(b, a)`` meaning ``a . x <= b`` or ``= b``.

    Returns ``(status, value, x)`` with status ``"optimal"``, ``"infeasible"`` or
    ``"unbounded"``; a returned point is re-checked against every constraint.
    """
    k = len(objective)
    rows = [[b] + [-x for x in a] for b, a in eq]
    rows += [[b] + [-x for x in a] for b, a in ineq]
    rows += [[0] + [1 if j == i else 0 for j in range(k)] for i in range(k)]
    m = cdd.Matrix(rows, number_type="fraction")
    m.lin_set = frozenset(range(len(eq)))
    m.obj_type = cdd.LPObjType.MAX
    m.obj_func = [0] + list(objective)
    lp = cdd.LinProg(m)
    lp.solve()
    if lp.status == cdd.LPStatusType.OPTIMAL:
        x = [Fraction(v) for v in lp.primal_solution]
        good = all(v >= 0 for v in x)
        good = good and all(sum(c * v for c, v in zip(a, x)) == b for b, a in eq)
        good = good and all(sum(c * v for c, v in zip(a, x)) <= b for b, a in ineq)
        if not good:
            raise TheoryViolation("linear program returned an infeasible point", {"x": [str(v) for v in x]})
        return "optimal", Fraction(lp.obj_value), x
    if lp.status in (cdd.LPStatusType.INCONSISTENT, cdd.LPStatusType.STRUC_INCONSISTENT):
        return "infeasible", None, None
    if lp.status in (cdd.LPStatusType.DUAL_INCONSISTENT, cdd.LPStatusType.STRUC_DUAL_INCONSISTENT, cdd.LPStatusType.UNBOUNDED):
        return "unbounded", None, None
    raise TheoryViolation("linear program left undecided", {"status": int(lp.status)})


def _difference_rows(C: Cone, D: Cone, rhs: Sequence[int]) -> list[tuple]:
    """Rows of ``sum a_i c_i - sum b_j d_j = rhs``."""
    return [(rhs[i], [r[i] for r in C.rays] + [-r[i] for r in D.rays]) for i in range(C.ambient)]


def _closures_meet_in_face(C: Cone, D: Cone) -> bool:
    """Every point of both closures has zero weight on the rays the cones do not share."""
    if not C.rays or not D.rays:
        return True
    common = set(C.rays) & set(D.rays)
    obj = [0 if r in common else 1 for r in C.rays] + [0 if r in common else 1 for r in D.rays]
    if not any(obj):
        return True
    k = len(obj)
    status, value, _ = _lp(obj, [(1, [1] * k)], _difference_rows(C, D, [0] * C.ambient))
    return status == "optimal" and value == 0


def open_cones_meet(C: Cone, D: Cone) -> bool:
    """Is there ``x = sum a_i c_i = sum b_j d_j`` with every ``a_i, b_j >= 1``?"""
    if not C.rays and not D.rays:
        return True
    shift = [sum(r[i] for r in C.rays) - sum(r[i] for r in D.rays) for i in range(C.ambient)]
    k = len(C.rays) + len(D.rays)
    status, _, _ = _lp([0] * k, [], _difference_rows(C, D, [-x for x in shift]))
    return status == "optimal"


def verify_fan(classes: Sequence[TFClass]) -> FanReport:
    """Pairwise: closures meet in a common face and relatively open cones are disjoint."""
    report = FanReport()
    for E, F in combinations(classes, 2):
        report.checked_pairs += 1
        C, D = E.cone, F.cone
        if C.rays == D.rays:
            report.violations.append({"kind": "duplicate", "classes": [E.id, F.id]})
            continue
        if not _closures_meet_in_face(C, D):
            report.violations.append({"kind": "not a common face", "classes": [E.id, F.id]})
        if open_cones_meet(C, D):
            report.violations.append({"kind": "open cones overlap", "classes": [E.id, F.id]})
    return report


# -- the poset TF_A and the neighbourhoods N_E ------------------------------------------
def geometric_leq(E: TFClass, F: TFClass) -> bool:
    """``E`` lies in the closure of ``F``: every ray of ``E`` is in the closed cone of ``F``."""
    return all(F.cone.closed_contains(r) for r in E.cone.rays)


def tf_leq(E: TFClass, F: TFClass, checked: bool = True) -> bool:
    """Summand order on the underlying pairs, optionally cross-checked against geometry."""
    ok = F.pair.contains(E.pair)
    if checked and geometric_leq(E, F) != ok:
        raise CrossCheckMismatch(
            "summand order and cone closure disagree", {"E": E.id, "F": F.id, "summand": ok}
        )
    return ok


def in_N(base: TauRigidPair, target: TFClass) -> bool:
    """``T(M,P) in T_v in Tbar_v in Tbar(M,P)`` for ``v`` in the target cone."""
    if base.module_ids:
        if not target.pair.module_ids or not trace_in(target.pair.module, base.module):
            return False
    upper = target.completion.modules
    return all(torsion_membership(base, X)[1] for X in upper)


# -- projections ------------------------------------------------------------------------
@lru_cache(maxsize=None)
def nu_matrix(E: TFClass) -> fmpq_mat:
    """Orthogonal projection onto ``span(E)^perp``: ``I - R (R^T R)^{-1} R^T``."""
    n = E.n
    if not E.cone.rays:
        return la.identity(n)
    R = E.cone.matrix()
    gram = R.transpose() * R
    return la.identity(n) - R * gram.inv() * R.transpose()


def _apply(m: fmpq_mat, v: Sequence) -> tuple:
    col = m * la.from_rows([[la.to_q(x)] for x in v])
    return tuple(col[i, 0] for i in range(col.nrows()))


def nu_project(E: TFClass, v: Sequence) -> tuple:
    return _apply(nu_matrix(E), v)


def nu_project_cone(E: TFClass, F: TFClass) -> Cone:
    """``nu_E(F)`` in ambient coordinates; requires ``E <= F``."""
    if not F.pair.contains(E.pair):
        raise ValueError(f"{E.id} is not below {F.id}")
    images = [nu_project(E, r) for r in F.cone.rays if r not in E.cone.rays]
    if any(all(x == 0 for x in v) for v in images):
        raise DependentProjection("a ray outside span(E) projected to zero", {"E": E.id, "F": F.id})
    try:
        return Cone.from_generators(images, E.n)
    except DependentRays as exc:
        raise DependentProjection("projected rays are dependent", {"E": E.id, "F": F.id}) from exc


@lru_cache(maxsize=None)
def pi_matrix(E: TFClass) -> fmpq_mat:
    """Rows ``dim X_i / d_i`` for the simples ``X_i`` of the wide subcategory."""
    rows = [[fmpq(x, d) for x in dims] for dims, d in zip(E.wide.dim_vectors(), E.wide.endo_dims)]
    return la.from_rows(rows, E.n) if rows else la.zeros(0, E.n)


def pi_project(E: TFClass, v: Sequence) -> tuple:
    return _apply(pi_matrix(E), v)


def pi_project_cone(E: TFClass, F: TFClass) -> Cone:
    """``pi_E(F)`` in the coordinates of the wide subcategory; requires ``E <= F``."""
    if not F.pair.contains(E.pair):
        raise ValueError(f"{E.id} is not below {F.id}")
    images = [pi_project(E, r) for r in F.cone.rays if r not in E.cone.rays]
    if any(all(x == 0 for x in v) for v in images):
        raise DependentProjection("a ray outside span(E) has zero pi-image", {"E": E.id, "F": F.id})
    try:
        return Cone.from_generators(images, E.wide.rank)
    except DependentRays as exc:
        raise DependentProjection("pi-images of rays are dependent", {"E": E.id, "F": F.id}) from exc


@lru_cache(maxsize=None)
def rho_map(E: TFClass) -> fmpq_mat:
    """``(B^T B)^{-1} B^T`` with ``B = [nu(g_1) ... nu(g_m)]`` for the complement g-vectors."""
    m = E.wide.rank
    if m == 0:
        return la.zeros(0, E.n)
    B = la.from_columns([list(nu_project(E, g)) for g in E.wide.complement_g], E.n)
    gram = B.transpose() * B
    if la.rank(gram) != m:
        raise DependentProjection("projected complement g-vectors are dependent", {"E": E.id})
    return gram.inv() * B.transpose()


def check_pi_identity(E: TFClass) -> bool:
    """``pi_E = rho_E nu_E`` as matrices and on every ray generator of the classes above ``E``."""
    lhs = pi_matrix(E)
    rhs = rho_map(E) * nu_matrix(E)
    if lhs != rhs:
        raise IdentityCheckFailed(
            "pi differs from rho composed with nu",
            {"E": E.id, "pi": [[la.q_str(x) for x in r] for r in la.rows_of(lhs)], "rho_nu": [[la.q_str(x) for x in r] for r in la.rows_of(rhs)]},
        )
    return True


def simples_basis_check(E: TFClass) -> bool:
    """Dimension vectors of the simples form a basis of ``span(E)^perp``."""
    dims = E.wide.dim_vectors()
    if len(dims) != E.n - E.dim:
        return False
    if dims and la.rank(la.from_rows([list(d) for d in dims], E.n)) != len(dims):
        return False
    return all(sum(a * b for a, b in zip(r, d)) == 0 for r in E.cone.rays for d in dims)


# -- walls ------------------------------------------------------------------------------
@dataclass(frozen=True)
class Wall:
    """Closure of a codimension-one class, labelled by the unique simple of its wide subcategory."""

    cone: Cone
    brick: str
    dim_vector: tuple[int, ...]
    arrow_data: tuple
    classes: tuple[str, ...]


def walls_for_render(classes: Sequence[TFClass]) -> list[Wall]:
    out: dict[tuple, Wall] = {}
    for E in classes:
        if E.dim != E.n - 1 or E.wide.rank != 1:
            continue
        (brick, _), = E.wide.simples
        X = registry_for(E.pair.algebra).representative(brick)
        arrows = tuple(la.matrix_key(m) for m in X.maps)
        key = (E.cone.rays, brick)
        prev = out.get(key)
        ids = (prev.classes if prev else ()) + (E.id,)
        out[key] = Wall(E.cone, brick, X.dims, arrows, ids)
    return sorted(out.values(), key=lambda w: (w.cone.rays, w.brick))
