"""Projective modules, minimal presentations, tau, and complexes of projectives.

A map ``f: P(v_1) + ... + P(v_m) -> P(u_1) + ... + P(u_k)`` is stored as a
sparse matrix of algebra elements ``f[s, t]``, each a combination of paths from
``u_s`` to ``v_t``.  With this convention ``(g o f)[r, t] = sum_s then(g[r, s], f[s, t])``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from flint import fmpq, fmpq_mat

from . import linalg as la
from .algebra import Algebra
from .modules import (
    ModuleMap,
    Representation,
    direct_sum,
    hom_basis,
    indecomposable_projective,
    quotient,
    top_generators,
    zero_module,
)

Verts = tuple


class ProjMap:
    """Homomorphism between direct sums of indecomposable projectives."""

    __slots__ = ("algebra", "src", "tgt", "entries")

    def __init__(self, algebra: Algebra, src: Sequence[int], tgt: Sequence[int], entries: dict | None = None):
        self.algebra = algebra
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.entries = {k: v for k, v in (entries or {}).items() if v}

    @classmethod
    def zero(cls, A: Algebra, src, tgt) -> "ProjMap":
        return cls(A, src, tgt, {})

    @classmethod
    def identity(cls, A: Algebra, verts) -> "ProjMap":
        return cls(A, verts, verts, {(t, t): A.idempotent(v) for t, v in enumerate(verts)})

    def __getitem__(self, key) -> dict:
        return self.entries.get(key, {})

    def is_zero(self) -> bool:
        return not self.entries

    def compose(self, first: "ProjMap") -> "ProjMap":
        """``self o first``."""
        A = self.algebra
        by_src: dict[int, list] = {}
        for (r, s), g in self.entries.items():
            by_src.setdefault(s, []).append((r, g))
        out: dict = {}
        for (s, t), f in first.entries.items():
            for r, g in by_src.get(s, ()):
                out[(r, t)] = A.add(out.get((r, t), {}), A.then(g, f))
        return ProjMap(A, first.src, self.tgt, out)

    def __add__(self, other: "ProjMap") -> "ProjMap":
        A = self.algebra
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = A.add(out.get(k, {}), v)
        return ProjMap(A, self.src, self.tgt, out)

    def scaled(self, c) -> "ProjMap":
        c = la.to_q(c)
        return ProjMap(self.algebra, self.src, self.tgt, {k: self.algebra.scale(v, c) for k, v in self.entries.items()})

    def __neg__(self) -> "ProjMap":
        return self.scaled(-1)

    def restrict(self, rows: Sequence[int], cols: Sequence[int]) -> "ProjMap":
        rpos = {r: i for i, r in enumerate(rows)}
        cpos = {c: j for j, c in enumerate(cols)}
        out = {}
        for (r, c), v in self.entries.items():
            if r in rpos and c in cpos:
                out[(rpos[r], cpos[c])] = v
        return ProjMap(self.algebra, [self.src[c] for c in cols], [self.tgt[r] for r in rows], out)

    def key(self) -> tuple:
        items = []
        for (r, c), v in sorted(self.entries.items()):
            items.append((r, c, tuple(sorted((k, int(x.p), int(x.q)) for k, x in v.items()))))
        return (self.src, self.tgt, tuple(items))

    def __eq__(self, other):
        return isinstance(other, ProjMap) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_module_map(self) -> ModuleMap:
        A = self.algebra
        P, Q = proj_rep(A, self.src), proj_rep(A, self.tgt)
        src_coords, tgt_coords = proj_coords(A, self.src), proj_coords(A, self.tgt)
        by_col: dict[int, list] = {}
        for (s, t), f in self.entries.items():
            by_col.setdefault(t, []).append((s, f))
        mats = []
        for j in range(1, A.n + 1):
            m = la.zeros(Q.dims[j - 1], P.dims[j - 1])
            tpos = tgt_coords[1][j]
            for c, (t, k) in enumerate(src_coords[0][j]):
                for s, f in by_col.get(t, ()):
                    for k2, x in A.then(f, {k: fmpq(1)}).items():
                        m[tpos[(s, k2)], c] += x
            mats.append(m)
        return ModuleMap(P, Q, mats)


def stack_rows(A: Algebra, maps: Sequence[ProjMap], src) -> ProjMap:
    """Map into the direct sum of the targets (block column)."""
    out, off, tgt = {}, 0, []
    for f in maps:
        for (r, c), v in f.entries.items():
            out[(off + r, c)] = v
        off += len(f.tgt)
        tgt.extend(f.tgt)
    return ProjMap(A, src, tgt, out)


def stack_cols(A: Algebra, maps: Sequence[ProjMap], tgt) -> ProjMap:
    """Map out of the direct sum of the sources (block row)."""
    out, off, src = {}, 0, []
    for f in maps:
        for (r, c), v in f.entries.items():
            out[(r, off + c)] = v
        off += len(f.src)
        src.extend(f.src)
    return ProjMap(A, src, tgt, out)


def block_diagonal(A: Algebra, maps: Sequence[ProjMap]) -> ProjMap:
    out, ro, co, src, tgt = {}, 0, 0, [], []
    for f in maps:
        for (r, c), v in f.entries.items():
            out[(ro + r, co + c)] = v
        ro += len(f.tgt)
        co += len(f.src)
        src.extend(f.src)
        tgt.extend(f.tgt)
    return ProjMap(A, src, tgt, out)


# -- projective modules as representations ------------------------------------------
@lru_cache(maxsize=None)
def proj_coords(A: Algebra, verts: Verts):
    """Per vertex ``j``: the coordinates ``(summand, path index)`` and their positions."""
    coords, pos = {}, {}
    for j in range(1, A.n + 1):
        lst = [(t, k) for t, v in enumerate(verts) for k in A.between(v, j)]
        coords[j] = lst
        pos[j] = {c: i for i, c in enumerate(lst)}
    return coords, pos


@lru_cache(maxsize=None)
def proj_rep(A: Algebra, verts: Verts) -> Representation:
    return direct_sum([indecomposable_projective(A, v) for v in verts], algebra=A)


class HomSpace:
    """Coordinates on ``Hom(P_src, P_tgt)``: one per path ``u_s -> v_t``."""

    def __init__(self, A: Algebra, src: Verts, tgt: Verts):
        self.algebra = A
        self.src, self.tgt = tuple(src), tuple(tgt)
        self.basis = [(s, t, k) for s, u in enumerate(self.tgt) for t, v in enumerate(self.src) for k in A.between(u, v)]
        self.index = {b: i for i, b in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vector(self, f: ProjMap) -> dict:
        out = {}
        for (s, t), v in f.entries.items():
            for k, x in v.items():
                out[self.index[(s, t, k)]] = x
        return out

    def element(self, col: fmpq_mat, j: int = 0, offset: int = 0) -> ProjMap:
        entries: dict = {}
        for i, (s, t, k) in enumerate(self.basis):
            x = col[offset + i, j]
            if x:
                entries.setdefault((s, t), {})[k] = x
        return ProjMap(self.algebra, self.src, self.tgt, entries)


@lru_cache(maxsize=None)
def hom_space(A: Algebra, src: Verts, tgt: Verts) -> HomSpace:
    return HomSpace(A, src, tgt)


# -- minimal presentations and g-vectors -------------------------------------------
class Presentation:
    """Minimal projective presentation ``P1 --f--> P0 --> M --> 0``."""

    __slots__ = ("module", "p1", "p0", "f", "cover")

    def __init__(self, module, p1, p0, f, cover):
        self.module = module
        self.p1 = tuple(p1)
        self.p0 = tuple(p0)
        self.f = f
        self.cover = cover

    @property
    def g_vector(self) -> tuple[int, ...]:
        n = self.module.n
        return tuple(self.p0.count(i) - self.p1.count(i) for i in range(1, n + 1))


def _cover(M: Representation, gens) -> tuple[Verts, ModuleMap]:
    A = M.algebra
    verts = tuple(v for v, _ in gens)
    P = proj_rep(A, verts)
    coords = proj_coords(A, verts)[0]
    mats = []
    for j in range(1, A.n + 1):
        cols = []
        for t, k in coords[j]:
            cols.append(M.basis_matrix(k) * gens[t][1])
        mats.append(la.hstack(*cols, nrows=M.dims[j - 1]) if cols else la.zeros(M.dims[j - 1], 0))
    return verts, ModuleMap(P, M, mats)


def _vector_to_column(A: Algebra, p0: Verts, w: int, vec: fmpq_mat) -> dict:
    """Read a vector of ``(P0)_w`` as a column of a map ``P(w) -> P0``."""
    coords = proj_coords(A, p0)[0][w]
    col: dict = {}
    for i, (s, k) in enumerate(coords):
        x = vec[i, 0]
        if x:
            col.setdefault(s, {})[k] = x
    return col


@lru_cache(maxsize=100000)
def minimal_presentation(M: Representation) -> Presentation:
    A = M.algebra
    p0, cover = _cover(M, top_generators(M))
    K, incl = cover.kernel()
    cols = []
    p1 = []
    for w, vec in top_generators(K):
        cols.append(_vector_to_column(A, p0, w, incl.mats[w - 1] * vec))
        p1.append(w)
    entries = {(s, t): x for t, col in enumerate(cols) for s, x in col.items()}
    return Presentation(M, p1, p0, ProjMap(A, p1, p0, entries), cover)


def g_vector(M: Representation) -> tuple[int, ...]:
    return minimal_presentation(M).g_vector


def g_vector_pair(modules: Sequence[Representation], projectives: Sequence[int], n: int) -> tuple[int, ...]:
    g = [0] * n
    for M in modules:
        for i, x in enumerate(g_vector(M)):
            g[i] += x
    for p in projectives:
        g[p - 1] -= 1
    return tuple(g)


def projective_dimension_at_most_one_witness(M: Representation) -> bool:
    """True when the minimal presentation map is injective."""
    pres = minimal_presentation(M)
    if not pres.p1:
        return True
    return pres.f.to_module_map().kernel()[0].is_zero()


# -- Auslander-Reiten translate --------------------------------------------------------
@lru_cache(maxsize=100000)
def tau(M: Representation) -> Representation:
    """``tau M = D Tr M`` computed from the minimal presentation."""
    A = M.algebra
    pres = minimal_presentation(M)
    p1, p0, f = pres.p1, pres.p0, pres.f
    # Hom(P_k, P(j)) has coordinates (component, path j -> vertex).
    def coords(verts, j):
        return [(t, k) for t, v in enumerate(verts) for k in A.between(j, v)]

    f_by_row: dict[int, list] = {}
    for (s, t), x in f.entries.items():
        f_by_row.setdefault(s, []).append((t, x))
    quot, sect, h1 = {}, {}, {}
    for j in range(1, A.n + 1):
        c0, c1 = coords(p0, j), coords(p1, j)
        pos1 = {c: i for i, c in enumerate(c1)}
        h1[j] = (c1, pos1)
        m = la.zeros(len(c1), len(c0))
        for col, (s, k) in enumerate(c0):
            for t, x in f_by_row.get(s, ()):
                for k2, y in A.then({k: fmpq(1)}, x).items():
                    m[pos1[(t, k2)], col] += y
        image = la.column_space(m)
        quot[j] = la.quotient_map(image, len(c1))
        sect[j] = la.right_inverse(quot[j])
    dims = [quot[j].nrows() for j in range(1, A.n + 1)]
    maps = []
    for ai, a in enumerate(A.quiver.arrows):
        j, k = a.source, a.target
        arrow = A.arrow_element(ai)
        c1k = h1[k][0]
        c1j, pos1j = h1[j]
        lift = la.zeros(len(c1j), len(c1k))
        for col, (t, q) in enumerate(c1k):
            for k2, y in A.then(arrow, {q: fmpq(1)}).items():
                lift[pos1j[(t, k2)], col] += y
        induced = quot[j] * lift * sect[k]  # Tr_k -> Tr_j
        maps.append(induced.transpose())
    return Representation(A, dims, maps, check=False)


def _presentation_matrix(pres: Presentation, N: Representation) -> tuple[list[dict], int, list[int]]:
    """Sparse rows of ``Hom(P0, N) -> Hom(P1, N)``, ``psi -> psi o f``, in the coordinates ``Hom(P(u), N) = N_u``.

    Returns the rows, the number of columns and the column offset of each ``P0`` summand.
    """
    row_off, off = [], 0
    for v in pres.p1:
        row_off.append(off)
        off += N.dims[v - 1]
    rows: list[dict] = [dict() for _ in range(off)]
    col_off, off = [], 0
    for u in pres.p0:
        col_off.append(off)
        off += N.dims[u - 1]
    for (s, t), x in pres.f.entries.items():
        block = N.element_matrix(x, pres.p0[s], pres.p1[t])
        for r in range(block.nrows()):
            row = rows[row_off[t] + r]
            for c in range(block.ncols()):
                y = block[r, c]
                if y:
                    k = col_off[s] + c
                    v = row.get(k, 0) + y
                    if v:
                        row[k] = v
                    else:
                        del row[k]
    return rows, off, col_off


def presentation_system_size(M: Representation, N: Representation) -> int:
    """Unknowns needed to compute ``Hom(M, N)`` from the presentation of ``M``."""
    return sum(N.dims[v - 1] for v in minimal_presentation(M).p0)


@lru_cache(maxsize=100000)
def _cover_section(M: Representation) -> tuple:
    return tuple(la.right_inverse(c) for c in minimal_presentation(M).cover.mats)


def hom_basis_via_presentation(M: Representation, N: Representation) -> list[ModuleMap]:
    """``Hom(M, N)`` as the maps ``P0 -> N`` vanishing on the image of ``P1``."""
    A = M.algebra
    pres = minimal_presentation(M)
    rows, ncols, col_off = _presentation_matrix(pres, N)
    null = la.sparse_nullspace(rows, ncols)
    if null.ncols() == 0:
        return []
    coords = proj_coords(A, pres.p0)[0]
    section = _cover_section(M)
    out = []
    for b in range(null.ncols()):
        psi = []
        for s, u in enumerate(pres.p0):
            vec = la.zeros(N.dims[u - 1], 1)
            for r in range(N.dims[u - 1]):
                vec[r, 0] = null[col_off[s] + r, b]
            psi.append(vec)
        mats = []
        for j in range(1, A.n + 1):
            if M.dims[j - 1] == 0 or N.dims[j - 1] == 0:
                mats.append(la.zeros(N.dims[j - 1], M.dims[j - 1]))
                continue
            cols = [N.basis_matrix(k) * psi[s] for s, k in coords[j]]
            mats.append(la.hstack(*cols, nrows=N.dims[j - 1]) * section[j - 1])
        out.append(ModuleMap(M, N, mats))
    return out


@lru_cache(maxsize=200000)
def hom_to_tau_vanishes(N: Representation, M: Representation) -> bool:
    """``Hom(N, tau M) == 0`` iff ``Hom(P0, N) -> Hom(P1, N)`` is onto for the presentation of ``M``."""
    if N.is_zero() or M.is_zero():
        return True
    pres = minimal_presentation(M)
    if not pres.p1:
        return True
    rows, ncols, _ = _presentation_matrix(pres, N)
    return la.sparse_rank(rows, ncols) == len(rows)


# -- complexes of projectives ---------------------------------------------------------------
class Complex:
    """Bounded complex of projectives with ``terms[d]`` and ``diffs[d]: terms[d] -> terms[d+1]``."""

    __slots__ = ("algebra", "terms", "diffs")

    def __init__(self, algebra: Algebra, terms: dict, diffs: dict):
        self.algebra = algebra
        self.terms = {d: tuple(v) for d, v in terms.items()}
        self.diffs = dict(diffs)
        for d in self.terms:
            if d + 1 in self.terms and d not in self.diffs:
                self.diffs[d] = ProjMap.zero(algebra, self.terms[d], self.terms[d + 1])

    def degrees(self) -> list[int]:
        return sorted(d for d, v in self.terms.items() if v)

    def term(self, d: int) -> Verts:
        return self.terms.get(d, ())

    def diff(self, d: int) -> ProjMap:
        got = self.diffs.get(d)
        if got is None:
            return ProjMap.zero(self.algebra, self.term(d), self.term(d + 1))
        return got

    def is_two_term(self) -> bool:
        return all(d in (-1, 0) for d in self.degrees())

    def minimized(self) -> "Complex":
        return minimize(self)


class TwoTermComplex:
    """``X1 --d--> X0`` in degrees -1 and 0."""

    __slots__ = ("algebra", "x1", "x0", "d", "module")

    def __init__(self, algebra: Algebra, x1, x0, d: ProjMap | None = None, module: Representation | None = None):
        self.algebra = algebra
        self.x1, self.x0 = tuple(x1), tuple(x0)
        self.d = d if d is not None else ProjMap.zero(algebra, self.x1, self.x0)
        self.module = module  # set when this is the minimal presentation of ``module``

    @classmethod
    def of_module(cls, M: Representation) -> "TwoTermComplex":
        pres = minimal_presentation(M)
        return cls(M.algebra, pres.p1, pres.p0, pres.f, module=M)

    @classmethod
    def shifted_projective(cls, A: Algebra, i: int) -> "TwoTermComplex":
        return cls(A, (i,), ())

    @classmethod
    def from_complex(cls, C: Complex, low: int) -> "TwoTermComplex":
        return cls(C.algebra, C.term(low), C.term(low + 1), C.diff(low))

    def as_complex(self) -> Complex:
        return Complex(self.algebra, {-1: self.x1, 0: self.x0}, {-1: self.d})

    @property
    def g_vector(self) -> tuple[int, ...]:
        n = self.algebra.n
        return tuple(self.x0.count(i) - self.x1.count(i) for i in range(1, n + 1))

    def h0(self) -> Representation:
        if not self.x0:
            return zero_module(self.algebra)
        fm = self.d.to_module_map()
        return quotient(fm.target, fm.image_bases())[0]

    def is_minimal(self) -> bool:
        return all(not _unit_entry(self.d, (r, c)) for (r, c) in self.d.entries)


def direct_sum_two_term(A: Algebra, parts: Sequence[TwoTermComplex]) -> TwoTermComplex:
    if not parts:
        return TwoTermComplex(A, (), ())
    return TwoTermComplex(A, sum((p.x1 for p in parts), ()), sum((p.x0 for p in parts), ()), block_diagonal(A, [p.d for p in parts]))


def _unit_entry(f: ProjMap, key) -> bool:
    r, c = key
    v = f.tgt[r]
    if f.src[c] != v:
        return False
    return bool(f.algebra.trivial_coefficient(f[key], v))


def minimize(C: Complex) -> Complex:
    """Cancel isomorphism entries of the differentials (Gaussian elimination)."""
    A = C.algebra
    terms = {d: list(v) for d, v in C.terms.items()}
    diffs = {d: C.diff(d) for d in terms if d + 1 in terms}
    changed = True
    while changed:
        changed = False
        for d in sorted(diffs):
            D = diffs[d]
            unit = next((k for k in sorted(D.entries) if _unit_entry(D, k)), None)
            if unit is None:
                continue
            b2, b = unit
            v = D.tgt[b2]
            inv = A.local_inverse(D[unit], v)
            delta = {c: D[(b2, c)] for c in range(len(D.src)) if c != b and (b2, c) in D.entries}
            gamma = {r: D[(r, b)] for r in range(len(D.tgt)) if r != b2 and (r, b) in D.entries}
            entries = {}
            for (r, c), x in D.entries.items():
                if r != b2 and c != b:
                    entries[(r, c)] = x
            for c, dx in delta.items():
                right = A.then(inv, dx)
                for r, gx in gamma.items():
                    entries[(r, c)] = A.add(entries.get((r, c), {}), A.then(gx, right), -1)
            rows = [r for r in range(len(D.tgt)) if r != b2]
            cols = [c for c in range(len(D.src)) if c != b]
            new_d = ProjMap(A, [D.src[c] for c in cols], [D.tgt[r] for r in rows], {})
            rpos = {r: i for i, r in enumerate(rows)}
            cpos = {c: j for j, c in enumerate(cols)}
            new_d.entries = {(rpos[r], cpos[c]): x for (r, c), x in entries.items() if x}
            diffs[d] = new_d
            if d - 1 in diffs:
                prev = diffs[d - 1]
                diffs[d - 1] = prev.restrict(cols, range(len(prev.src)))
            if d + 1 in diffs:
                nxt = diffs[d + 1]
                diffs[d + 1] = nxt.restrict(range(len(nxt.tgt)), rows)
            terms[d] = [terms[d][c] for c in cols]
            terms[d + 1] = [terms[d + 1][r] for r in rows]
            changed = True
            break
    return Complex(A, terms, diffs)


# -- Hom in the homotopy category -------------------------------------------------------------
def _sparse_matrix(columns: list[dict], nrows: int) -> fmpq_mat:
    m = la.zeros(nrows, len(columns))
    for j, col in enumerate(columns):
        for i, x in col.items():
            if x:
                m[i, j] = x
    return m


def _by_row(f: ProjMap) -> dict:
    out: dict[int, list] = {}
    for (r, c), x in f.entries.items():
        out.setdefault(r, []).append((c, x))
    return out


def _by_col(f: ProjMap) -> dict:
    out: dict[int, list] = {}
    for (r, c), x in f.entries.items():
        out.setdefault(c, []).append((r, x))
    return out


def _pre_compose_columns(A: Algebra, space: HomSpace, x: ProjMap, target: HomSpace, sign=1, offset=0) -> list[dict]:
    """Columns of ``phi -> sign * phi o x`` for ``phi`` over the basis of ``space``."""
    rows_x = _by_row(x)
    cols = []
    for s, t, k in space.basis:
        col: dict = {}
        for t2, xv in rows_x.get(t, ()):
            for k2, c in A.then({k: fmpq(1)}, xv).items():
                i = offset + target.index[(s, t2, k2)]
                col[i] = col.get(i, 0) + sign * c
        cols.append(col)
    return cols


def _post_compose_columns(A: Algebra, space: HomSpace, y: ProjMap, target: HomSpace, sign=1, offset=0) -> list[dict]:
    """Columns of ``phi -> sign * y o phi``."""
    cols_y = _by_col(y)
    cols = []
    for s, t, k in space.basis:
        col: dict = {}
        for r, yv in cols_y.get(s, ()):
            for k2, c in A.then(yv, {k: fmpq(1)}).items():
                i = offset + target.index[(r, t, k2)]
                col[i] = col.get(i, 0) + sign * c
        cols.append(col)
    return cols


def _chain_system(X: TwoTermComplex, Y: TwoTermComplex):
    A = X.algebra
    h11 = hom_space(A, X.x1, Y.x1)
    h00 = hom_space(A, X.x0, Y.x0)
    h10 = hom_space(A, X.x1, Y.x0)
    # (phi1, phi0) -> phi0 o x - y o phi1
    cols = _post_compose_columns(A, h11, Y.d, h10, sign=-1) + _pre_compose_columns(A, h00, X.d, h10)
    return h11, h00, h10, _sparse_matrix(cols, h10.dim)


def hom_shift_vanishes(X: TwoTermComplex, Y: TwoTermComplex) -> bool:
    """``Hom_K(X, Y[1]) == 0``: every ``X1 -> Y0`` is ``a o x + y o b``."""
    h11, h00, h10, m = _chain_system(X, Y)
    return la.rank(m) == h10.dim


def is_presilting(T: TwoTermComplex) -> bool:
    return hom_shift_vanishes(T, T)


@lru_cache(maxsize=100000)
def _presentation_data(N: Representation):
    """Section of the cover of ``N`` and the differential as a module map, or ``None`` if not injective."""
    pres = minimal_presentation(N)
    ymod = pres.f.to_module_map()
    injective = all(la.rank(m) == m.ncols() for m in ymod.mats)
    return _cover_section(N), (ymod if injective else None)


def _lift_to_chain_map(X: TwoTermComplex, Y: TwoTermComplex, g: ModuleMap) -> tuple[ProjMap, ProjMap]:
    """Lift ``g: H0 X -> H0 Y`` through the presentations (``Y``'s differential injective)."""
    A = X.algebra
    M, N = X.module, Y.module
    cover_m = minimal_presentation(M).cover
    section_n, ymod = _presentation_data(N)
    coords_x0 = proj_coords(A, X.x0)[1]
    coords_y0 = proj_coords(A, Y.x0)[0]
    coords_y1 = proj_coords(A, Y.x1)[0]
    e0 = {}
    for s, u in enumerate(X.x0):
        col = la.column(cover_m.mats[u - 1], coords_x0[u][(s, A.trivial(u))])
        z = section_n[u - 1] * (g.mats[u - 1] * col)
        for i, (r, k) in enumerate(coords_y0[u]):
            if z[i, 0]:
                e0.setdefault((r, s), {})[k] = z[i, 0]
    phi0 = ProjMap(A, X.x0, Y.x0, e0)
    target = phi0.compose(X.d)
    e1 = {}
    pos_y0 = proj_coords(A, Y.x0)[1]
    for t, v in enumerate(X.x1):
        w = la.zeros(len(coords_y0[v]), 1)
        for (r, c), x in target.entries.items():
            if c == t:
                for k, val in x.items():
                    w[pos_y0[v][(r, k)], 0] += val
        z = la.solve(ymod.mats[v - 1], w)
        if z is None:
            raise ArithmeticError("lift through an injective differential failed")
        for i, (q, k) in enumerate(coords_y1[v]):
            if z[i, 0]:
                e1.setdefault((q, t), {})[k] = z[i, 0]
    phi1 = ProjMap(A, X.x1, Y.x1, e1)
    return phi1, phi0


def homotopy_hom_basis(X: TwoTermComplex, Y: TwoTermComplex) -> list[tuple[ProjMap, ProjMap]]:
    """Chain maps ``(phi1, phi0)`` whose classes form a basis of ``Hom_K(X, Y)``.

    When both complexes are minimal presentations and ``Y``'s differential is
    injective, ``Hom_K(X, Y) = Hom_A(H0 X, H0 Y)`` (the kernel of the comparison
    map is ``Hom(X1, ker y)`` modulo homotopy), so a module Hom basis is lifted.
    """
    if X.module is not None and Y.module is not None and _presentation_data(Y.module)[1] is not None:
        return [_lift_to_chain_map(X, Y, g) for g in hom_basis(X.module, Y.module)]
    return homotopy_hom_basis_general(X, Y)


def homotopy_hom_basis_general(X: TwoTermComplex, Y: TwoTermComplex) -> list[tuple[ProjMap, ProjMap]]:
    """Chain maps modulo null-homotopic ones, from the full linear system."""
    A = X.algebra
    h11, h00, h10, m = _chain_system(X, Y)
    nvars = h11.dim + h00.dim
    if nvars == 0:
        return []
    z = la.nullspace(m)
    if z.ncols() == 0:
        return []
    h01 = hom_space(A, X.x0, Y.x1)
    # h -> (h o x, y o h)
    hcols = _pre_compose_columns(A, h01, X.d, h11) + []
    post = _post_compose_columns(A, h01, Y.d, h00, offset=h11.dim)
    for c, extra in zip(hcols, post):
        c.update(extra)
    hm = _sparse_matrix(hcols, nvars)
    both = la.hstack(hm, z, nrows=nvars)
    _, pivots = la.rref(both)
    chosen = [p - hm.ncols() for p in pivots if p >= hm.ncols()]
    out = []
    for j in chosen:
        out.append((h11.element(z, j), h00.element(z, j, offset=h11.dim)))
    return out


def homotopy_hom_dim(X: TwoTermComplex, Y: TwoTermComplex) -> int:
    return len(homotopy_hom_basis(X, Y))


def cone(X: TwoTermComplex, Y: TwoTermComplex, phi1: ProjMap, phi0: ProjMap) -> Complex:
    """Mapping cone of ``(phi1, phi0): X -> Y`` in degrees -2, -1, 0."""
    A = X.algebra
    mid = X.x0 + Y.x1
    d2 = stack_rows(A, [-X.d, phi1], X.x1)
    d1 = stack_cols(A, [phi0, Y.d], Y.x0)
    return Complex(A, {-2: X.x1, -1: mid, 0: Y.x0}, {-2: d2, -1: d1})


def approximation(X: TwoTermComplex, others: Sequence[TwoTermComplex], left: bool):
    """Left (``X -> V``) or right (``V -> X``) approximation by sums of ``others``.

    Returns ``(V, phi1, phi0)`` where ``V`` is the direct sum of one copy of
    ``others[j]`` per basis element of the relevant homotopy Hom space.
    """
    A = X.algebra
    parts, f1, f0 = [], [], []
    for U in others:
        basis = homotopy_hom_basis(X, U) if left else homotopy_hom_basis(U, X)
        for p1, p0 in basis:
            parts.append(U)
            f1.append(p1)
            f0.append(p0)
    V = direct_sum_two_term(A, parts)
    if left:
        phi1 = stack_rows(A, f1, X.x1) if f1 else ProjMap.zero(A, X.x1, ())
        phi0 = stack_rows(A, f0, X.x0) if f0 else ProjMap.zero(A, X.x0, ())
    else:
        phi1 = stack_cols(A, f1, X.x1) if f1 else ProjMap.zero(A, (), X.x1)
        phi0 = stack_cols(A, f0, X.x0) if f0 else ProjMap.zero(A, (), X.x0)
    return V, phi1, phi0


def left_mutation_complex(X: TwoTermComplex, others: Sequence[TwoTermComplex]) -> Complex:
    V, phi1, phi0 = approximation(X, others, left=True)
    return minimize(cone(X, V, phi1, phi0))


def right_mutation_complex(X: TwoTermComplex, others: Sequence[TwoTermComplex]) -> Complex:
    """Cocone of the right approximation, returned shifted into degrees -2, -1, 0 (cone of ``V -> X``)."""
    V, phi1, phi0 = approximation(X, others, left=False)
    return minimize(cone(V, X, phi1, phi0))
