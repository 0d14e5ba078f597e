"""Bound quiver algebras and their path bases.

Conventions: vertices are numbered ``1..n``; a path is written in traversal
order; modules are covariant representations, so the indecomposable projective
``P(i)`` is spanned by the paths starting at ``i``.  Elements of the algebra are
sparse dicts ``{basis index: coefficient}``.  ``Algebra.then(x, y)`` is the
product "first x, then y" (path concatenation).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from flint import fmpq

from . import linalg as la
from .errors import InconsistentRelation, NotAdmissible, NotFiniteDimensional, PresentationError

Element = dict  # {basis index: fmpq}


@dataclass(frozen=True)
class Arrow:
    id: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        if self.vertex_count < 1:
            raise PresentationError("a quiver needs at least one vertex")
        object.__setattr__(self, "arrows", tuple(self.arrows))
        seen = set()
        for a in self.arrows:
            if a.id in seen:
                raise PresentationError(f"duplicate arrow id {a.id!r}")
            seen.add(a.id)
            for v in (a.source, a.target):
                if not 1 <= v <= self.vertex_count:
                    raise PresentationError(f"arrow {a.id!r} uses vertex {v} outside 1..{self.vertex_count}")

    @property
    def n(self) -> int:
        return self.vertex_count

    def arrow_index(self, arrow_id: str) -> int:
        for k, a in enumerate(self.arrows):
            if a.id == arrow_id:
                return k
        raise PresentationError(f"unknown arrow {arrow_id!r}")


@dataclass(frozen=True)
class AlgebraPresentation:
    """Quiver with relations.

    Each relation is a sequence of ``(coefficient, path)`` terms where ``path``
    lists arrow ids in traversal order.
    """

    quiver: Quiver
    relations: tuple = ()
    length_bound: int = 12
    name: str = ""

    def __post_init__(self):
        rels = tuple(tuple((la.to_q(c), tuple(p)) for c, p in rel) for rel in self.relations)
        object.__setattr__(self, "relations", rels)
        if self.length_bound < 1:
            raise PresentationError("length_bound must be positive")


@dataclass(frozen=True, order=True)
class Path:
    """Path in traversal order; trivial paths have ``arrows == ()``."""

    source: int
    target: int
    arrows: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.arrows)


def _check_path(quiver: Quiver, ids: Sequence[str]) -> Path:
    if not ids:
        raise NotAdmissible("relation term is a trivial path")
    idx = [quiver.arrow_index(a) for a in ids]
    for a, b in zip(idx, idx[1:]):
        if quiver.arrows[a].target != quiver.arrows[b].source:
            raise InconsistentRelation(
                f"path {'.'.join(ids)} is not composable at {quiver.arrows[a].id}->{quiver.arrows[b].id}"
            )
    return Path(quiver.arrows[idx[0]].source, quiver.arrows[idx[-1]].target, tuple(idx))


class Algebra:
    """Finite-dimensional quotient ``KQ/I`` with a reduced path basis."""

    def __init__(self, presentation: AlgebraPresentation, basis: list[Path], reduce_table: dict, length_bound: int):
        self.presentation = presentation
        self.quiver = presentation.quiver
        self.n = self.quiver.vertex_count
        self.basis = basis
        self.index = {p: k for k, p in enumerate(basis)}
        self._reduce = reduce_table  # non-basis path -> Element
        self.length_bound = length_bound
        self._between: dict[tuple[int, int], list[int]] = {}
        for k, p in enumerate(basis):
            self._between.setdefault((p.source, p.target), []).append(k)
        self._mul: dict[tuple[int, int], Element] = {}

    # -- basis bookkeeping -------------------------------------------------
    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def name(self) -> str:
        return self.presentation.name

    def between(self, source: int, target: int) -> list[int]:
        """Basis indices of paths from ``source`` to ``target``."""
        return self._between.get((source, target), [])

    def trivial(self, v: int) -> int:
        return self.index[Path(v, v, ())]

    def idempotent(self, v: int) -> Element:
        return {self.trivial(v): fmpq(1)}

    def arrow_element(self, arrow: int) -> Element:
        a = self.quiver.arrows[arrow]
        return self.normal_form(Path(a.source, a.target, (arrow,)))

    def path_label(self, k: int) -> str:
        p = self.basis[k]
        if not p.arrows:
            return f"e{p.source}"
        return ".".join(self.quiver.arrows[a].id for a in p.arrows)

    # -- arithmetic --------------------------------------------------------
    def normal_form(self, path: Path) -> Element:
        if len(path) > self.length_bound:
            return {}
        k = self.index.get(path)
        if k is not None:
            return {k: fmpq(1)}
        return dict(self._reduce.get(path, {}))

    def basis_then(self, i: int, j: int) -> Element:
        key = (i, j)
        got = self._mul.get(key)
        if got is None:
            p, q = self.basis[i], self.basis[j]
            if p.target != q.source:
                got = {}
            else:
                got = self.normal_form(Path(p.source, q.target, p.arrows + q.arrows))
            self._mul[key] = got
        return got

    def then(self, x: Element, y: Element) -> Element:
        """Product "first x, then y"."""
        out: dict[int, fmpq] = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.basis_then(i, j).items():
                    v = out.get(k, 0) + a * b * c
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    @staticmethod
    def add(x: Element, y: Element, scale=1) -> Element:
        out = dict(x)
        for k, c in y.items():
            v = out.get(k, 0) + c * scale
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return out

    @staticmethod
    def scale(x: Element, c) -> Element:
        if not c:
            return {}
        return {k: v * c for k, v in x.items()}

    def trivial_coefficient(self, x: Element, v: int) -> fmpq:
        return x.get(self.trivial(v), fmpq(0))

    def local_inverse(self, x: Element, v: int) -> Element:
        """Inverse of a unit of ``e_v A e_v`` (trivial coefficient nonzero)."""
        lam = self.trivial_coefficient(x, v)
        if not lam:
            raise ValueError("element is not a unit of the local ring at this vertex")
        inv_lam = 1 / lam
        nil = self.add(self.scale(x, -inv_lam), self.idempotent(v))  # e_v - x/lam, nilpotent
        total = self.idempotent(v)
        power = self.idempotent(v)
        for _ in range(self.length_bound + 1):
            power = self.then(power, nil)
            if not power:
                break
            total = self.add(total, power)
        return self.scale(total, inv_lam)

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Algebra{label} n={self.n} dim={self.dimension}>"


def _path_sort_key(quiver: Quiver, p: Path):
    return (len(p), tuple(quiver.arrows[a].id for a in p.arrows), p.source)


def _all_paths(quiver: Quiver, max_len: int) -> list[Path]:
    out = [Path(v, v, ()) for v in range(1, quiver.n + 1)]
    frontier = [p for p in out]
    for _ in range(max_len):
        nxt = []
        for p in frontier:
            for k, a in enumerate(quiver.arrows):
                if a.source == p.target:
                    nxt.append(Path(p.source, a.target, p.arrows + (k,)))
        if not nxt:
            break
        out.extend(nxt)
        frontier = nxt
    return out


def build_algebra(p: AlgebraPresentation) -> Algebra:
    """Reduce the path space modulo the relation ideal.

    Works modulo paths longer than ``length_bound`` and certifies that every
    path of exactly that length lies in the ideal; the basis is then the set of
    standard paths (smallest in length-lex order within their residue class).
    """
    quiver = p.quiver
    L = p.length_bound
    paths = _all_paths(quiver, L)
    paths.sort(key=lambda q: _path_sort_key(quiver, q))
    # Column order is reversed so that pivots land on the largest paths.
    col = {q: len(paths) - 1 - k for k, q in enumerate(paths)}
    ncols = len(paths)

    rel_rows = []
    for rel in p.relations:
        if not rel:
            continue
        vec = {}
        ends = set()
        for c, ids in rel:
            path = _check_path(quiver, ids)
            if len(path) < 2:
                raise NotAdmissible(f"relation term {'.'.join(ids)} has length {len(path)} < 2")
            ends.add((path.source, path.target))
            if len(path) <= L and c:
                vec[col[path]] = vec.get(col[path], 0) + c
        if len(ends) > 1:
            raise InconsistentRelation(f"relation mixes non-parallel paths: {sorted(ends)}")
        vec = {k: v for k, v in vec.items() if v}
        if vec:
            rel_rows.append(vec)

    by_col = {v: q for q, v in col.items()}

    def shift(row: dict, arrow: int, right: bool) -> dict:
        out = {}
        a = quiver.arrows[arrow]
        for c, x in row.items():
            q = by_col[c]
            if right:
                if q.target != a.source or len(q) + 1 > L:
                    continue
                r = Path(q.source, a.target, q.arrows + (arrow,))
            else:
                if a.target != q.source or len(q) + 1 > L:
                    continue
                r = Path(a.source, q.target, (arrow,) + q.arrows)
            out[col[r]] = out.get(col[r], 0) + x
        return {k: v for k, v in out.items() if v}

    def to_matrix(rows: list[dict]):
        m = la.zeros(len(rows), ncols)
        for i, r in enumerate(rows):
            for c, x in r.items():
                m[i, c] = x
        return m

    def echelon(rows: list[dict]) -> tuple[list[dict], list[int]]:
        if not rows:
            return [], []
        r, pivots = la.rref(to_matrix(rows))
        out = []
        for i in range(len(pivots)):
            out.append({j: r[i, j] for j in range(ncols) if r[i, j] != 0})
        return out, pivots

    ideal, pivots = echelon(rel_rows)
    while True:
        grown = list(ideal)
        for row in ideal:
            for k in range(len(quiver.arrows)):
                for right in (True, False):
                    s = shift(row, k, right)
                    if s:
                        grown.append(s)
        new_ideal, new_pivots = echelon(grown)
        if len(new_pivots) == len(pivots):
            break
        ideal, pivots = new_ideal, new_pivots

    pivot_set = set(pivots)
    survivors = [q for q in paths if len(q) == L and col[q] not in pivot_set]
    if survivors:
        names = [".".join(quiver.arrows[a].id for a in q.arrows) for q in survivors]
        raise NotFiniteDimensional(L, names)

    basis = [q for q in paths if col[q] not in pivot_set]
    index = {q: k for k, q in enumerate(basis)}
    reduce_table = {}
    for row, pc in zip(ideal, pivots):
        q = by_col[pc]
        nf = {}
        for c, x in row.items():
            if c == pc:
                continue
            nf[index[by_col[c]]] = -x
        reduce_table[q] = nf
    return Algebra(p, basis, reduce_table, L)


def presentation_from_spec(
    vertex_count: int,
    arrows: Iterable[tuple[str, int, int]],
    relations: Iterable = (),
    length_bound: int = 12,
    name: str = "",
) -> AlgebraPresentation:
    """Convenience constructor from plain tuples."""
    quiver = Quiver(vertex_count, tuple(Arrow(i, s, t) for i, s, t in arrows))
    return AlgebraPresentation(quiver, tuple(relations), length_bound, name)
