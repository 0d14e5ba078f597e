"""Tau-rigid pairs, mutation, Bongartz completion and tau-perpendicular categories."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg as la
from .algebra import Algebra
from .errors import AmbiguousMaximum, CapExceeded, CrossCheckMismatch, MutationFailed, PairingCheckFailed, TheoryViolation
from .modules import (
    DEFAULT_SEED,
    ModuleMap,
    Representation,
    combine,
    direct_sum,
    endomorphism_radical_dim,
    hom_basis,
    indecomposable_projective,
    indecomposable_parts,
    is_brick,
    quotient,
    trace_in,
)
from .projective import (
    TwoTermComplex,
    direct_sum_two_term,
    g_vector,
    hom_shift_vanishes,
    hom_to_tau_vanishes,
    left_mutation_complex,
    right_mutation_complex,
)
from .registry import registry_for

DEFAULT_CAP = 10000


class TauRigidPair:
    """Basic pair ``(M, P)`` stored by canonical module ids and projective vertices."""

    __slots__ = ("algebra", "module_ids", "projective_part", "__dict__")

    def __init__(self, algebra: Algebra, module_ids: Iterable[str], projective_part: Iterable[int]):
        reg = registry_for(algebra)
        self.algebra = algebra
        self.module_ids = tuple(sorted(set(module_ids), key=reg.sort_key))
        self.projective_part = tuple(sorted(set(projective_part)))

    @classmethod
    def from_modules(cls, algebra: Algebra, modules: Iterable[Representation], projective_part: Iterable[int] = ()):
        """Pair from indecomposable module summands and projective vertices."""
        reg = registry_for(algebra)
        return cls(algebra, [reg.register(M) for M in modules], projective_part)

    @classmethod
    def from_module(cls, algebra: Algebra, module: Representation, projective_part: Iterable[int] = (), seed: int = DEFAULT_SEED):
        """Pair whose module part is the basic version of ``module``, split into indecomposables."""
        return cls.from_modules(algebra, indecomposable_parts(module, seed), projective_part)

    # -- identity ----------------------------------------------------------
    @property
    def key(self) -> tuple:
        return (self.module_ids, self.projective_part)

    def __eq__(self, other):
        return isinstance(other, TauRigidPair) and other.algebra is self.algebra and other.key == self.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"TauRigidPair({self.label})"

    @property
    def label(self) -> str:
        m = " + ".join(self.module_ids) or "0"
        p = " + ".join(f"P{i}" for i in self.projective_part) or "0"
        return f"({m}, {p})"

    def sort_key(self) -> tuple:
        reg = registry_for(self.algebra)
        return (self.rank, [reg.sort_key(m) for m in self.module_ids], self.projective_part)

    # -- data --------------------------------------------------------------
    @property
    def modules(self) -> list[Representation]:
        reg = registry_for(self.algebra)
        return [reg.representative(m) for m in self.module_ids]

    @property
    def module(self) -> Representation:
        return direct_sum(self.modules, algebra=self.algebra)

    @property
    def rank(self) -> int:
        return len(self.module_ids) + len(self.projective_part)

    @property
    def is_tau_tilting(self) -> bool:
        return self.rank == self.algebra.n

    @property
    def summands(self) -> list[tuple[str, object]]:
        """``("M", id)`` for module summands and ``("P", i)`` for projective ones."""
        return [("M", m) for m in self.module_ids] + [("P", i) for i in self.projective_part]

    @cached_property
    def g_rays(self) -> tuple[tuple[int, ...], ...]:
        n = self.algebra.n
        rays = [g_vector(M) for M in self.modules]
        for i in self.projective_part:
            rays.append(tuple(-1 if j == i else 0 for j in range(1, n + 1)))
        return tuple(rays)

    @property
    def g_vector(self) -> tuple[int, ...]:
        n = self.algebra.n
        return tuple(sum(r[i] for r in self.g_rays) for i in range(n))

    def summand_complexes(self) -> list[TwoTermComplex]:
        out = [TwoTermComplex.of_module(M) for M in self.modules]
        out += [TwoTermComplex.shifted_projective(self.algebra, i) for i in self.projective_part]
        return out

    @property
    def two_term(self) -> TwoTermComplex:
        return direct_sum_two_term(self.algebra, self.summand_complexes())

    def contains(self, other: "TauRigidPair") -> bool:
        return set(other.module_ids) <= set(self.module_ids) and set(other.projective_part) <= set(self.projective_part)

    def without(self, summand) -> "TauRigidPair":
        kind, x = summand
        mods = [m for m in self.module_ids if not (kind == "M" and m == x)]
        proj = [p for p in self.projective_part if not (kind == "P" and p == x)]
        return TauRigidPair(self.algebra, mods, proj)

    def sub_pairs(self) -> list["TauRigidPair"]:
        items = self.summands
        out = []
        for r in range(len(items) + 1):
            for combo in combinations(items, r):
                out.append(
                    TauRigidPair(self.algebra, [x for k, x in combo if k == "M"], [x for k, x in combo if k == "P"])
                )
        return out


# -- rigidity tests -------------------------------------------------------------
def is_tau_rigid_pair(A: Algebra, modules: Sequence[Representation], projectives: Sequence[int], cross_check: bool = False) -> bool:
    """``Hom(M, tau M) = 0`` and ``Hom(P, M) = 0``.

    With ``cross_check`` the two-term presilting condition is evaluated as
    well and a disagreement raises :class:`CrossCheckMismatch`.
    """
    modules = [M for M in modules if not M.is_zero()]
    ok = all(M.dims[i - 1] == 0 for M in modules for i in projectives)
    if ok:
        ok = all(hom_to_tau_vanishes(N, M) for N in modules for M in modules)
    if cross_check:
        cx = [TwoTermComplex.of_module(M) for M in modules] + [TwoTermComplex.shifted_projective(A, i) for i in projectives]
        other = all(hom_shift_vanishes(X, Y) for X in cx for Y in cx)
        if other != ok:
            raise CrossCheckMismatch(
                "module-level and complex-level rigidity disagree",
                {"modules": [M.dims for M in modules], "projectives": list(projectives), "module_level": ok},
            )
    return ok


def pair_is_tau_rigid(pair: TauRigidPair, cross_check: bool = False) -> bool:
    return is_tau_rigid_pair(pair.algebra, pair.modules, pair.projective_part, cross_check)


# -- mutation -------------------------------------------------------------------------
def _candidate(pair: TauRigidPair, summand, Z: TwoTermComplex, seed: int):
    """Translate a two-term complex ``Z = Y + (copies of other summands)`` into the new pair."""
    A = pair.algebra
    rest = pair.without(summand)
    reg = registry_for(A)
    H = Z.h0()
    leftover = [X for X in indecomposable_parts(H, seed) if reg.register(X) not in rest.module_ids]
    if len(leftover) > 1:
        return None
    if leftover:
        return TauRigidPair.from_modules(A, rest.modules + leftover, rest.projective_part)
    gh = g_vector(H) if not H.is_zero() else (0,) * A.n
    q = [gh[i] - Z.g_vector[i] for i in range(A.n)]
    verts = [i + 1 for i, x in enumerate(q) if x > 0 and (i + 1) not in rest.projective_part]
    if len(verts) != 1:
        return None
    return TauRigidPair(A, rest.module_ids, rest.projective_part + (verts[0],))


def _presilting_with(cand: TauRigidPair, new, others: Sequence[TwoTermComplex], cross_check: bool) -> bool:
    """Two-term presilting test for ``cand``, whose summands other than ``new`` are already rigid.

    For minimal presentations ``Hom_K(P_M, P_N[1]) = 0`` iff ``Hom(N, tau M) = 0``,
    so the module-level test is used; ``cross_check`` also evaluates the
    homotopy-category condition directly.
    """
    kind, x = new
    mods = cand.modules
    if kind == "P":
        ok = all(M.dims[x - 1] == 0 for M in mods)
    else:
        Y = registry_for(cand.algebra).representative(x)
        ok = all(Y.dims[i - 1] == 0 for i in cand.projective_part)
        ok = ok and all(hom_to_tau_vanishes(Y, M) and hom_to_tau_vanishes(M, Y) for M in mods)
    if cross_check:
        new_cx = _summand_complex(cand, new)
        direct = hom_shift_vanishes(new_cx, new_cx) and all(
            hom_shift_vanishes(new_cx, U) and hom_shift_vanishes(U, new_cx) for U in others
        )
        if direct != ok:
            raise CrossCheckMismatch(
                "presilting and tau-rigidity disagree on a mutation candidate", {"pair": cand.label, "new": str(new)}
            )
    return ok


def flip(pair: TauRigidPair, summand, seed: int = DEFAULT_SEED, cross_check: bool = False, checked: bool = True) -> TauRigidPair:
    """The unique other completion of ``pair`` minus ``summand``.

    Exactly one of the left and right mutation cones is two-term. Unless
    ``checked`` is set, the rigidity test on the candidate is only run when
    both cones survive the two-term and rank filters.
    """
    items = pair.summands
    k = items.index(summand)
    cx = pair.summand_complexes()
    X, others = cx[k], cx[:k] + cx[k + 1:]
    found = []
    left = left_mutation_complex(X, others)
    if not left.term(-2):
        found.append(("left", TwoTermComplex.from_complex(left, -1)))
    right = right_mutation_complex(X, others)
    if not right.term(0):
        found.append(("right", TwoTermComplex.from_complex(right, -2)))
    shaped = []
    for side, Z in found:
        cand = _candidate(pair, summand, Z, seed)
        if cand is None or cand == pair or cand.rank != pair.rank:
            continue
        new = [s for s in cand.summands if s not in items]
        if len(new) == 1:
            shaped.append((side, cand, new[0]))
    if len(shaped) == 1 and not (checked or cross_check):
        return shaped[0][1]
    qualified = [(side, cand) for side, cand, new in shaped if _presilting_with(cand, new, others, cross_check)]
    if len(qualified) != 1:
        raise MutationFailed(
            f"expected exactly one two-term presilting mutation of {pair.label} at {summand}, found {len(qualified)}",
            {"pair": pair.label, "summand": str(summand), "candidates": [(s, c.label) for s, c in qualified]},
        )
    return qualified[0][1]


def _summand_complex(pair: TauRigidPair, summand) -> TwoTermComplex:
    kind, x = summand
    if kind == "P":
        return TwoTermComplex.shifted_projective(pair.algebra, x)
    return TwoTermComplex.of_module(registry_for(pair.algebra).representative(x))


@dataclass
class MutationGraph:
    pairs: list[TauRigidPair]
    edges: dict = field(default_factory=dict)  # (pair key, summand) -> pair key


def _enumerate(A: Algebra, cap: int, seed: int, verify: bool, cross_check: bool) -> MutationGraph:
    if cap < 1:
        raise ValueError("cap must be at least 1")
    start = TauRigidPair.from_modules(A, [indecomposable_projective(A, i) for i in range(1, A.n + 1)])
    visited = {start.key: start}
    order = [start]
    edges: dict = {}
    queue = deque([start])
    if len(visited) > cap:
        raise CapExceeded(cap)
    while queue:
        T = queue.popleft()
        for s in T.summands:
            if (T.key, s) in edges:
                continue
            U = flip(T, s, seed, cross_check, verify)
            edges[(T.key, s)] = U.key
            back = [x for x in U.summands if x not in T.summands]
            edges[(U.key, back[0])] = T.key
            if U.key in visited:
                continue
            if verify and not (pair_is_tau_rigid(U, cross_check) and U.is_tau_tilting):
                raise TheoryViolation(f"mutation produced a non-tau-tilting pair {U.label}", {"pair": U.label})
            visited[U.key] = U
            order.append(U)
            if len(visited) > cap:
                raise CapExceeded(cap)
            queue.append(U)
    pairs = sorted(order, key=lambda p: p.sort_key())
    return MutationGraph(pairs, edges)


def enumerate_support_tau_tilting(A: Algebra, cap: int = DEFAULT_CAP, seed: int = DEFAULT_SEED, verify: bool = False, cross_check: bool = False) -> list[TauRigidPair]:
    """All support tau-tilting pairs, by breadth-first mutation from ``(A, 0)``.

    ``verify`` re-checks tau-rigidity of every mutation candidate and of every
    new pair; ``cross_check`` also compares with the presilting condition.
    """
    return _enumerate(A, cap, seed, verify, cross_check).pairs


def mutation_graph(A: Algebra, cap: int = DEFAULT_CAP, seed: int = DEFAULT_SEED, verify: bool = False) -> MutationGraph:
    return _enumerate(A, cap, seed, verify, False)


def all_basic_tau_rigid_pairs(A: Algebra, cap: int = DEFAULT_CAP, seed: int = DEFAULT_SEED, tilting: Sequence[TauRigidPair] | None = None) -> list[TauRigidPair]:
    if tilting is None:
        tilting = enumerate_support_tau_tilting(A, cap, seed)
    seen = {}
    for T in tilting:
        for p in T.sub_pairs():
            seen.setdefault(p.key, p)
    return sorted(seen.values(), key=lambda p: p.sort_key())


# -- Bongartz completion and perpendicular categories ---------------------------------------
def _in_upper_torsion(pair: TauRigidPair, X: Representation) -> bool:
    if any(X.dims[i - 1] for i in pair.projective_part):
        return False
    return all(hom_to_tau_vanishes(X, M) for M in pair.modules)


def bongartz_completion(pair: TauRigidPair, tilting: Sequence[TauRigidPair]) -> TauRigidPair:
    """The completion whose module part generates the largest torsion class ``perp(tau M) cap P^perp``."""
    cands = [T for T in tilting if T.contains(pair) and all(_in_upper_torsion(pair, N) for N in T.modules)]
    maxima = []
    for C in cands:
        gen = C.module
        if all(all(trace_in(gen, N) for N in D.modules) for D in cands):
            maxima.append(C)
    if len(maxima) != 1:
        raise AmbiguousMaximum(
            f"{len(maxima)} maximal completions of {pair.label}",
            {"pair": pair.label, "candidates": [c.label for c in cands], "maxima": [c.label for c in maxima]},
        )
    return maxima[0]


def bongartz_complement(pair: TauRigidPair, tilting: Sequence[TauRigidPair]) -> list[Representation]:
    comp = bongartz_completion(pair, tilting)
    if comp.projective_part != pair.projective_part:
        raise TheoryViolation(
            "Bongartz completion changed the projective part", {"pair": pair.label, "completion": comp.label}
        )
    reg = registry_for(pair.algebra)
    return [reg.representative(m) for m in comp.module_ids if m not in pair.module_ids]


@dataclass(frozen=True)
class WideSubcategory:
    """The tau-perpendicular category of a pair, recorded by its simple objects."""

    simples: tuple  # ((module id, d), ...) in canonical order
    complement_g: tuple  # g-vectors of the complement summands matched to the simples
    algebra: Algebra = field(compare=False, repr=False)

    @property
    def rank(self) -> int:
        return len(self.simples)

    @property
    def key(self) -> tuple:
        return tuple(m for m, _ in self.simples)

    @property
    def modules(self) -> list[Representation]:
        reg = registry_for(self.algebra)
        return [reg.representative(m) for m, _ in self.simples]

    @property
    def endo_dims(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.simples)

    def dim_vectors(self) -> list[tuple[int, ...]]:
        return [M.dims for M in self.modules]


def _radical_endomorphisms(T: Representation) -> list[ModuleMap]:
    basis = hom_basis(T, T)
    k = len(basis)
    if endomorphism_radical_dim(T, basis) == 0:
        return []
    gram = la.zeros(k, k)
    for a in range(k):
        for b in range(a, k):
            t = basis[a].compose(basis[b]).trace()
            gram[a, b] = t
            gram[b, a] = t
    null = la.nullspace(gram)
    return [combine(basis, [null[i, j] for i in range(k)]) for j in range(null.ncols())]


def in_wide(pair: TauRigidPair, X: Representation) -> bool:
    """``X`` lies in ``M^perp cap perp(tau M) cap P^perp``."""
    if any(X.dims[i - 1] for i in pair.projective_part):
        return False
    for M in pair.modules:
        if hom_basis(M, X):
            return False
        if not hom_to_tau_vanishes(X, M):
            return False
    return True


def torsion_membership(pair: TauRigidPair, X: Representation) -> tuple[bool, bool]:
    """``(X in Fac M, X in perp(tau M) cap P^perp)``."""
    in_t = X.is_zero() or (bool(pair.module_ids) and trace_in(pair.module, X))
    in_tbar = _in_upper_torsion(pair, X)
    if in_t and not in_tbar:
        raise TheoryViolation("Fac M is not contained in the upper torsion class", {"pair": pair.label, "X": X.dims})
    return in_t, in_tbar


def wide_subcategory(pair: TauRigidPair, tilting: Sequence[TauRigidPair]) -> WideSubcategory:
    """Simples ``X_i = T_i / (images of radical maps from M + T)``, certified by the g-pairing."""
    A = pair.algebra
    reg = registry_for(A)
    comp = bongartz_complement(pair, tilting)
    M = pair.modules
    found = []
    for i, Ti in enumerate(comp):
        maps = []
        for Mj in M:
            maps.extend(hom_basis(Mj, Ti))
        for j, Tj in enumerate(comp):
            if j != i:
                maps.extend(hom_basis(Tj, Ti))
        maps.extend(_radical_endomorphisms(Ti))
        bases = []
        for v in range(A.n):
            cols = [f.mats[v] for f in maps if f.mats[v].ncols()]
            if cols and Ti.dims[v]:
                bases.append(la.column_space(la.hstack(*cols, nrows=Ti.dims[v])))
            else:
                bases.append(la.zeros(Ti.dims[v], 0))
        X, _ = quotient(Ti, bases)
        if X.is_zero() or not is_brick(X) or not in_wide(pair, X):
            raise PairingCheckFailed(
                f"radical quotient of complement summand {i} of {pair.label} is not a brick in the perpendicular category",
                {"pair": pair.label, "summand": Ti.dims, "quotient": X.dims},
            )
        d = len(hom_basis(X, X))
        found.append((reg.register(X), d, g_vector(Ti), X))
    found.sort(key=lambda t: reg.sort_key(t[0]))
    gs = [t[2] for t in found]
    xs = [t[3] for t in found]
    ds = [t[1] for t in found]
    for i, g in enumerate(gs):
        for j, X in enumerate(xs):
            val = sum(a * b for a, b in zip(g, X.dims))
            want = ds[j] if i == j else 0
            if val != want:
                raise PairingCheckFailed(
                    f"<g_{i}, dim X_{j}> = {val}, expected {want} for {pair.label}",
                    {"pair": pair.label, "g": list(g), "dimX": list(X.dims)},
                )
    for g in pair.g_rays:
        for j, X in enumerate(xs):
            if sum(a * b for a, b in zip(g, X.dims)) != 0:
                raise PairingCheckFailed(
                    f"pair ray {g} pairs nontrivially with simple {j} of {pair.label}",
                    {"pair": pair.label, "g": list(g), "dimX": list(X.dims)},
                )
    return WideSubcategory(tuple((t[0], t[1]) for t in found), tuple(gs), A)


class PairCatalog:
    """Enumeration of all pairs of an algebra plus cached completions and perpendicular categories."""

    def __init__(self, A: Algebra, cap: int = DEFAULT_CAP, seed: int = DEFAULT_SEED, checked: bool = False, cross_check: bool = False):
        self.algebra = A
        self.seed = seed
        self.checked = checked
        graph = _enumerate(A, cap, seed, checked, cross_check)
        self.tilting = graph.pairs
        self.edges = graph.edges
        self.pairs = all_basic_tau_rigid_pairs(A, tilting=self.tilting)
        self.by_key = {p.key: p for p in self.pairs}
        self._bongartz: dict = {}
        self._wide: dict = {}

    @property
    def n(self) -> int:
        return self.algebra.n

    def bongartz(self, pair: TauRigidPair) -> TauRigidPair:
        got = self._bongartz.get(pair.key)
        if got is None:
            got = self._bongartz[pair.key] = bongartz_completion(pair, self.tilting)
        return got

    def complement(self, pair: TauRigidPair) -> list[Representation]:
        comp = self.bongartz(pair)
        reg = registry_for(self.algebra)
        return [reg.representative(m) for m in comp.module_ids if m not in pair.module_ids]

    def wide(self, pair: TauRigidPair) -> WideSubcategory:
        got = self._wide.get(pair.key)
        if got is None:
            got = self._wide[pair.key] = wide_subcategory(pair, self.tilting)
        return got

    def pair(self, modules: Iterable[Representation] = (), projectives: Iterable[int] = ()) -> TauRigidPair:
        p = TauRigidPair.from_modules(self.algebra, modules, projectives)
        if p.key not in self.by_key:
            raise KeyError(f"{p.label} is not a basic tau-rigid pair of this algebra")
        return self.by_key[p.key]

    def mutation_neighbours(self, pair: TauRigidPair) -> dict:
        return {s: self.by_key[self.edges[(pair.key, s)]] for s in pair.summands if (pair.key, s) in self.edges}
