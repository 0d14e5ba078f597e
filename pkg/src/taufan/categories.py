"""Finite categories built from the fan: posets, their quotients, and the functors between them."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Sequence

from . import linalg as la
from .errors import (
    CompositionAmbiguous,
    CompositionRepresentativeNotFound,
    MapUndefined,
    RepresentativeDependence,
)
from .tautilt import PairCatalog
from .wallchamber import TFClass, build_classes, nu_project_cone, pi_project, pi_project_cone, tf_leq


@dataclass
class CategoryTable:
    """A finite category given by explicit tables.

    ``compose[(g, f)]`` is ``g o f`` for ``f: a -> b`` and ``g: b -> c``.
    ``members`` lists the representatives behind each object and ``reps`` the
    representative pairs ``(E, F)`` behind each morphism.
    """

    name: str
    objects: list[str]
    hom: dict[tuple[str, str], list[str]]
    compose: dict[tuple[str, str], str]
    identity: dict[str, str]
    source: dict[str, str]
    target: dict[str, str]
    members: dict[str, list[str]] = field(default_factory=dict)
    reps: dict[str, list[tuple[str, str]]] = field(default_factory=dict)

    @property
    def morphisms(self) -> list[str]:
        return [m for a in self.objects for b in self.objects for m in self.hom.get((a, b), [])]

    def homset(self, a: str, b: str) -> list[str]:
        return self.hom.get((a, b), [])

    def object_of(self, member: str) -> str:
        for obj, ms in self.members.items():
            if member in ms:
                return obj
        raise KeyError(member)

    def hom_matrix(self) -> list[list[int]]:
        return [[len(self.homset(a, b)) for b in self.objects] for a in self.objects]


def _wide_label(key: tuple) -> str:
    return "J{" + ", ".join(key) + "}"


def _rays_label(rays) -> str:
    return "<" + "; ".join("(" + ",".join(la.q_str(x) for x in r) + ")" for r in rays) + ">"


# -- posets -------------------------------------------------------------------------------
def _poset(name: str, items: Sequence[str], leq: Callable[[int, int], bool]) -> CategoryTable:
    objects = list(items)
    hom: dict = {}
    source, target, identity = {}, {}, {}
    reps = {}
    for i, a in enumerate(objects):
        for j, b in enumerate(objects):
            if leq(i, j):
                m = f"{a} -> {b}"
                hom[(a, b)] = [m]
                source[m], target[m] = a, b
                reps[m] = [(a, b)]
                if i == j:
                    identity[a] = m
    compose = {}
    for f in source:
        for g in hom_out(hom, objects, target[f]):
            compose[(g, f)] = hom[(source[f], target[g])][0]
    return CategoryTable(name, objects, hom, compose, identity, source, target, {a: [a] for a in objects}, reps)


def hom_out(hom: dict, objects: Sequence[str], a: str) -> list[str]:
    return [m for b in objects for m in hom.get((a, b), [])]


def build_tf_poset(classes: Sequence[TFClass], checked: bool = True) -> CategoryTable:
    """``E <= F`` iff ``E`` lies in the closure of ``F``."""
    return _poset("TF", [E.id for E in classes], lambda i, j: tf_leq(classes[i], classes[j], checked))


def build_pair_poset(classes: Sequence[TFClass]) -> CategoryTable:
    """Basic tau-rigid pairs ordered by direct-summand inclusion."""
    pairs = [E.pair for E in classes]
    return _poset("pairs", [p.label for p in pairs], lambda i, j: pairs[j].contains(pairs[i]))


def hasse_edges(cat: CategoryTable) -> list[tuple[str, str]]:
    """Covering relations of a poset category."""
    out = []
    for (a, b) in cat.hom:
        if a == b:
            continue
        if not any(c not in (a, b) and cat.hom.get((a, c)) and cat.hom.get((c, b)) for c in cat.objects):
            out.append((a, b))
    return sorted(out, key=lambda e: (cat.objects.index(e[0]), cat.objects.index(e[1])))


# -- quotients of the poset -----------------------------------------------------------------
def _quotient(
    name: str,
    classes: Sequence[TFClass],
    object_key: Callable[[TFClass], str],
    data: Callable[[TFClass, TFClass], tuple],
    morph_label: Callable[[str, str, tuple], str],
) -> CategoryTable:
    """Objects are classes of ``object_key``; morphisms from ``E <= F`` are identified by ``data``.

    Composition of ``[E -> F]`` with ``[F' -> G']`` searches for ``G >= F`` with
    ``data(F, G) = data(F', G')``; the result ``[E -> G]`` must be unique and
    independent of every representative choice.
    """
    memo: dict = {}
    raw = data

    def data(E: TFClass, F: TFClass) -> tuple:
        got = memo.get((E.id, F.id))
        if got is None:
            got = memo[(E.id, F.id)] = raw(E, F)
        return got

    members: dict[str, list[str]] = defaultdict(list)
    for E in classes:
        members[object_key(E)].append(E.id)
    objects = list(members)
    above = {E.id: [F for F in classes if F.pair.contains(E.pair)] for E in classes}
    by_id = {E.id: E for E in classes}

    hom: dict = defaultdict(list)
    reps: dict = defaultdict(list)
    source, target, identity = {}, {}, {}
    for E in classes:
        for F in above[E.id]:
            a, b, d = object_key(E), object_key(F), data(E, F)
            m = morph_label(a, b, d)
            if m not in source:
                source[m], target[m] = a, b
                hom[(a, b)].append(m)
            elif (source[m], target[m]) != (a, b):
                raise RepresentativeDependence("one morphism key joins two different object pairs", {"morphism": m})
            reps[m].append((E.id, F.id))
            if E is F:
                if identity.setdefault(a, m) != m:
                    raise RepresentativeDependence("identity depends on the representative", {"object": a})

    # for each F: data(F, G) -> list of G above F
    lookup = {}
    for F in classes:
        table = defaultdict(list)
        for G in above[F.id]:
            table[(data(F, G), object_key(G))].append(G)
        lookup[F.id] = table

    compose = {}
    for f in list(source):
        for g in hom_out(hom, objects, target[f]):
            results = set()
            for (e, fid), (fid2, gid2) in product(reps[f], reps[g]):
                want = (data(by_id[fid2], by_id[gid2]), object_key(by_id[gid2]))
                found = lookup[fid].get(want, [])
                if not found:
                    raise CompositionRepresentativeNotFound(
                        f"no cone above {fid} matching {fid2} -> {gid2}", {"f": f, "g": g}
                    )
                if len(found) > 1:
                    raise CompositionAmbiguous(
                        f"several cones above {fid} match {fid2} -> {gid2}", {"candidates": [G.id for G in found]}
                    )
                E, G = by_id[e], found[0]
                results.add(morph_label(object_key(E), object_key(G), data(E, G)))
            if len(results) != 1:
                raise RepresentativeDependence(
                    f"composite of {g} after {f} depends on representatives", {"results": sorted(results)}
                )
            compose[(g, f)] = results.pop()
    for k in hom:
        hom[k].sort()
    return CategoryTable(name, objects, dict(hom), compose, identity, source, target, dict(members), dict(reps))


def build_geom_category(classes: Sequence[TFClass]) -> CategoryTable:
    """Classes grouped by wide subcategory; ``[E -> F]`` identified by ``nu_E(F)``."""
    return _quotient(
        "geom",
        classes,
        lambda E: "[C" + _first_member(classes, E) + "]",
        lambda E, F: nu_project_cone(E, F).rays,
        lambda a, b, d: f"nu: {a} -> {b} {_rays_label(d)}",
    )


def _first_member(classes: Sequence[TFClass], E: TFClass) -> str:
    for F in classes:
        if F.wide_key == E.wide_key:
            return F.id
    raise MapUndefined("class not among the given classes", {"class": E.id})


def build_pair_quotient(classes: Sequence[TFClass]) -> CategoryTable:
    """Pairs grouped by perpendicular category; ``[h]`` identified by the pi-projected extension cone."""
    return _quotient(
        "pairquot",
        classes,
        lambda E: "[" + _first_member(classes, E) + "]",
        lambda E, F: pi_project_cone(E, F).rays,
        lambda a, b, d: f"pi: {a} -> {b} {_rays_label(d)}",
    )


def _reduced_g(E: TFClass, F: TFClass) -> tuple:
    """g-vectors in the perpendicular category of ``E`` of the summands ``F`` adds to ``E``."""
    added = [g for g in F.pair.g_rays if g not in E.pair.g_rays]
    return tuple(sorted(tuple(pi_project(E, g)) for g in added))


def build_tcm(classes: Sequence[TFClass]) -> CategoryTable:
    """Objects are perpendicular categories; ``g^W_(N,Q)`` is recorded by the g-vectors of ``(N, Q)`` in ``W``."""
    return _quotient(
        "tcm",
        classes,
        lambda E: _wide_label(E.wide_key),
        _reduced_g,
        lambda a, b, d: f"g: {a} -> {b} {_rays_label(d)}",
    )


# -- functors -------------------------------------------------------------------------------
@dataclass
class Functor:
    name: str
    source: CategoryTable
    target: CategoryTable
    object_map: dict[str, str]
    morphism_map: dict[str, str]
    faithful: bool = False
    full: bool = False
    essentially_surjective: bool = False
    functorial: bool = False

    @property
    def is_equivalence(self) -> bool:
        return self.faithful and self.full and self.essentially_surjective and self.functorial


def _representative_functor(name: str, C: CategoryTable, D: CategoryTable) -> Functor:
    """Send each object and morphism of ``C`` to the class of its representatives in ``D``."""
    obj_map = {}
    for a in C.objects:
        images = {D.object_of(x) for x in C.members[a]}
        if len(images) != 1:
            raise MapUndefined(f"{name} sends representatives of {a} to several objects", {"images": sorted(images)})
        obj_map[a] = images.pop()
    d_index = {}
    for m, rs in D.reps.items():
        for r in rs:
            d_index[r] = m
    mor_map = {}
    for m in C.source:
        images = set()
        for r in C.reps[m]:
            if r not in d_index:
                raise MapUndefined(f"{name} has no image for the representative {r}", {"morphism": m})
            images.add(d_index[r])
        if len(images) != 1:
            raise MapUndefined(f"{name} sends representatives of {m} to several morphisms", {"images": sorted(images)})
        mor_map[m] = images.pop()
    return Functor(name, C, D, obj_map, mor_map)


def functor_F(pairquot: CategoryTable, tcm: CategoryTable) -> Functor:
    return _representative_functor("F", pairquot, tcm)


def functor_G(pairquot: CategoryTable, geom: CategoryTable) -> Functor:
    return _representative_functor("G", pairquot, geom)


# -- verification --------------------------------------------------------------------------
@dataclass
class CheckReport:
    name: str
    checks: dict[str, bool] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values()) and not self.failures

    def fail(self, check: str, **details):
        self.checks[check] = False
        if len(self.failures) < 20:
            self.failures.append({"check": check, **details})


def verify_category_axioms(cat: CategoryTable) -> CheckReport:
    """Identities, closure and associativity over every composable pair and triple."""
    rep = CheckReport(cat.name, {"identity": True, "closure": True, "associativity": True})
    morphs = cat.morphisms
    for a in cat.objects:
        i = cat.identity.get(a)
        if i is None or i not in cat.homset(a, a):
            rep.fail("identity", object=a)
    for f in morphs:
        a, b = cat.source[f], cat.target[f]
        if cat.compose.get((cat.identity.get(b), f)) != f or cat.compose.get((f, cat.identity.get(a))) != f:
            rep.fail("identity", morphism=f)
    pairs = 0
    for f in morphs:
        for g in hom_out(cat.hom, cat.objects, cat.target[f]):
            pairs += 1
            h = cat.compose.get((g, f))
            if h is None or h not in cat.homset(cat.source[f], cat.target[g]):
                rep.fail("closure", f=f, g=g)
    if len(cat.compose) != pairs:
        rep.fail("closure", detail="composition defined on non-composable pairs")
    triples = 0
    for f in morphs:
        for g in hom_out(cat.hom, cat.objects, cat.target[f]):
            gf = cat.compose.get((g, f))
            for h in hom_out(cat.hom, cat.objects, cat.target[g]):
                triples += 1
                hg = cat.compose.get((h, g))
                left = cat.compose.get((h, gf))
                if left is None or left != cat.compose.get((hg, f)):
                    rep.fail("associativity", f=f, g=g, h=h)
    rep.counts = {"objects": len(cat.objects), "morphisms": len(morphs), "composable_pairs": pairs, "triples": triples}
    return rep


def verify_functor_equivalence(F: Functor) -> CheckReport:
    """Functoriality plus bijectivity on objects and on every Hom set (both categories are skeletal)."""
    C, D = F.source, F.target
    rep = CheckReport(F.name, {"functorial": True, "objects bijective": True, "faithful": True, "full": True})
    for a in C.objects:
        if F.morphism_map[C.identity[a]] != D.identity[F.object_map[a]]:
            rep.fail("functorial", object=a)
    for f in C.morphisms:
        if (D.source[F.morphism_map[f]], D.target[F.morphism_map[f]]) != (F.object_map[C.source[f]], F.object_map[C.target[f]]):
            rep.fail("functorial", morphism=f)
    for (g, f), h in C.compose.items():
        if D.compose.get((F.morphism_map[g], F.morphism_map[f])) != F.morphism_map[h]:
            rep.fail("functorial", f=f, g=g)
    images = [F.object_map[a] for a in C.objects]
    if len(set(images)) != len(images) or set(images) != set(D.objects):
        rep.fail("objects bijective", images=images)
    for a in C.objects:
        for b in C.objects:
            src = C.homset(a, b)
            img = [F.morphism_map[m] for m in src]
            tgt = D.homset(F.object_map[a], F.object_map[b])
            if len(set(img)) != len(img):
                rep.fail("faithful", a=a, b=b)
            if set(img) != set(tgt):
                rep.fail("full", a=a, b=b)
    F.functorial = rep.checks["functorial"]
    F.essentially_surjective = rep.checks["objects bijective"]
    F.faithful = rep.checks["faithful"]
    F.full = rep.checks["full"]
    return rep


# -- everything at once ---------------------------------------------------------------------
@dataclass
class CategoryBundle:
    catalog: PairCatalog
    classes: list[TFClass]
    tf: CategoryTable
    pairs: CategoryTable
    geom: CategoryTable
    pairquot: CategoryTable
    tcm: CategoryTable

    def by_name(self, which: str) -> CategoryTable:
        return {"tf": self.tf, "pairs": self.pairs, "geom": self.geom, "pairquot": self.pairquot, "tcm": self.tcm}[which]


def build_categories(catalog: PairCatalog, checked: bool = True) -> CategoryBundle:
    classes = build_classes(catalog)
    return CategoryBundle(
        catalog,
        classes,
        build_tf_poset(classes, checked),
        build_pair_poset(classes),
        build_geom_category(classes),
        build_pair_quotient(classes),
        build_tcm(classes),
    )
