"""The complete verification suite behind ``taufan check``."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .algebra import Algebra
from .categories import CategoryBundle, build_categories, functor_F, functor_G, verify_category_axioms, verify_functor_equivalence
from .errors import TheoryViolation
from .modules import DEFAULT_SEED
from .tautilt import DEFAULT_CAP, PairCatalog, pair_is_tau_rigid
from .wallchamber import (
    check_pi_identity,
    in_N,
    nu_matrix,
    nu_project_cone,
    open_cones_meet,
    simples_basis_check,
    tf_leq,
    verify_fan,
)


@dataclass
class CheckLine:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0


@dataclass
class RunReport:
    algebra: str
    lines: list[CheckLine] = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(line.passed for line in self.lines)

    @property
    def first_failure(self) -> CheckLine | None:
        return next((line for line in self.lines if not line.passed), None)

    def run(self, name: str, fn: Callable[[], dict | bool]) -> bool:
        t0 = time.perf_counter()
        try:
            out = fn()
        except TheoryViolation as exc:
            out = {"ok": False, "error": type(exc).__name__, "message": str(exc), "details": exc.details}
        if isinstance(out, bool):
            out = {"ok": out}
        passed = bool(out.pop("ok"))
        self.lines.append(CheckLine(name, passed, out, time.perf_counter() - t0))
        return passed

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "ok": self.ok,
            "counts": self.counts,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail, "seconds": round(c.seconds, 3)} for c in self.lines],
        }


def _mutation_regular(cat: PairCatalog) -> dict:
    n = cat.n
    bad = []
    for T in cat.tilting:
        seen = set()
        for s in T.summands:
            U_key = cat.edges.get((T.key, s))
            U = cat.by_key.get(U_key)
            if U is None or U == T or not U.is_tau_tilting or len(set(U.summands) & set(T.summands)) != n - 1:
                bad.append({"pair": T.label, "summand": str(s)})
            seen.add(U_key)
        if len(seen) != len(T.summands):
            bad.append({"pair": T.label, "detail": "neighbours not distinct"})
    return {"ok": not bad, "violations": bad[:10]}


def _poset_axioms(b: CategoryBundle) -> dict:
    cl = b.classes
    leq = {(E.id, F.id): tf_leq(E, F, checked=True) for E in cl for F in cl}
    bad = []
    for E in cl:
        if not leq[(E.id, E.id)]:
            bad.append({"reflexive": E.id})
        for F in cl:
            if E is not F and leq[(E.id, F.id)] and leq[(F.id, E.id)]:
                bad.append({"antisymmetric": [E.id, F.id]})
            if leq[(E.id, F.id)]:
                for G in cl:
                    if leq[(F.id, G.id)] and not leq[(E.id, G.id)]:
                        bad.append({"transitive": [E.id, F.id, G.id]})
    origin = [E for E in cl if E.dim == 0]
    if len(origin) != 1 or not all(leq[(origin[0].id, F.id)] for F in cl):
        bad.append({"initial object": [E.id for E in origin]})
    return {"ok": not bad, "violations": bad[:10]}


def _order_is_neighbourhood(b: CategoryBundle) -> dict:
    bad = [
        {"E": E.id, "F": F.id}
        for E in b.classes
        for F in b.classes
        if tf_leq(E, F, checked=False) != in_N(E.pair, F)
    ]
    return {"ok": not bad, "violations": bad[:10], "pairs": len(b.classes) ** 2}


def _pairing(b: CategoryBundle) -> dict:
    bad = []
    for E in b.classes:
        dims = E.wide.dim_vectors()
        ds = E.wide.endo_dims
        for i, g in enumerate(E.wide.complement_g):
            for j, d in enumerate(dims):
                if sum(x * y for x, y in zip(g, d)) != (ds[j] if i == j else 0):
                    bad.append({"class": E.id, "i": i, "j": j})
        for g in E.pair.g_rays:
            for d in dims:
                if sum(x * y for x, y in zip(g, d)) != 0:
                    bad.append({"class": E.id, "ray": list(g), "dim": list(d)})
    return {"ok": not bad, "violations": bad[:10]}


def _same_span_in_class(b: CategoryBundle) -> dict:
    bad = []
    by_obj: dict = {}
    for E in b.classes:
        by_obj.setdefault(E.wide_key, []).append(E)
    for group in by_obj.values():
        first = nu_matrix(group[0])
        for E in group[1:]:
            if nu_matrix(E) != first:
                bad.append({"classes": [group[0].id, E.id]})
    return {"ok": not bad, "violations": bad[:10]}


def _disjoint_or_equal(b: CategoryBundle) -> dict:
    bad = []
    by_obj: dict = {}
    for E in b.classes:
        by_obj.setdefault(E.wide_key, []).append(E)
    for group in by_obj.values():
        images = []
        for E in group:
            for F in b.classes:
                if F.pair.contains(E.pair):
                    images.append((E.id, F.id, nu_project_cone(E, F)))
        for k, (e1, f1, c1) in enumerate(images):
            for e2, f2, c2 in images[k + 1:]:
                if c1.rays != c2.rays and open_cones_meet(c1, c2):
                    bad.append({"first": [e1, f1], "second": [e2, f2]})
    return {"ok": not bad, "violations": bad[:10]}


def _geom_endomorphisms(b: CategoryBundle) -> dict:
    g = b.geom
    bad = [a for a in g.objects if g.homset(a, a) != [g.identity[a]]]
    return {"ok": not bad, "objects": bad}


def _axioms(c) -> dict:
    r = verify_category_axioms(c)
    return {"ok": r.ok, **r.counts, "failures": r.failures}


def _equivalence(make, C, D) -> dict:
    r = verify_functor_equivalence(make(C, D))
    return {"ok": r.ok, "failures": r.failures}


def run_checks(A: Algebra, cap: int = DEFAULT_CAP, seed: int = DEFAULT_SEED) -> RunReport:
    """Enumerate with every cross-check on, then run each verification in turn."""
    report = RunReport(A.presentation.name)
    holder: dict = {}

    def enumerate_all():
        holder["catalog"] = PairCatalog(A, cap, seed, checked=True, cross_check=True)
        cat = holder["catalog"]
        report.counts.update({"tau_tilting": len(cat.tilting), "pairs": len(cat.pairs)})
        return True

    if not report.run("enumeration with rigidity cross-check", enumerate_all):
        return report
    cat = holder["catalog"]
    report.run("mutation graph is n-regular", lambda: _mutation_regular(cat))
    report.run("every pair is tau-rigid (module and complex level)", lambda: all(pair_is_tau_rigid(p, cross_check=True) for p in cat.pairs))

    def categories():
        holder["bundle"] = build_categories(cat, checked=True)
        return True

    if not report.run("cones, wide subcategories and categories built", categories):
        return report
    b: CategoryBundle = holder["bundle"]

    def fan():
        r = verify_fan(b.classes)
        return {"ok": r.ok, "pairs": r.checked_pairs, "violations": r.violations[:10]}

    report.run("g-vector cones form a fan", fan)
    report.run("TF order is a partial order with initial origin", lambda: _poset_axioms(b))
    report.run("tf_leq agrees with N-membership", lambda: _order_is_neighbourhood(b))
    report.run("simples of each wide subcategory give a basis of span(E)^perp", lambda: all(simples_basis_check(E) for E in b.classes))
    report.run("pairing <g_i, dim X_j> = d_j delta_ij", lambda: _pairing(b))
    report.run("pi = rho nu", lambda: all(check_pi_identity(E) for E in b.classes))
    report.run("equivalent classes share nu", lambda: _same_span_in_class(b))
    report.run("projected cones are disjoint or equal", lambda: _disjoint_or_equal(b))
    report.run("geometric endomorphisms are identities", lambda: _geom_endomorphisms(b))
    for c in (b.tf, b.pairs, b.geom, b.pairquot, b.tcm):
        report.run(f"category axioms: {c.name}", lambda c=c: _axioms(c))
    report.run("functor F is an equivalence", lambda: _equivalence(functor_F, b.pairquot, b.tcm))
    report.run("functor G is an equivalence", lambda: _equivalence(functor_G, b.pairquot, b.geom))
    report.counts.update({f"objects_{c.name}": len(c.objects) for c in (b.geom, b.pairquot, b.tcm)})
    return report
