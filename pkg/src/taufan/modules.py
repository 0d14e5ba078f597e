"""Representations, module maps and Hom spaces over a bound quiver algebra."""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterable, Sequence

from flint import fmpq, fmpq_mat, fmpq_poly

from . import linalg as la
from .algebra import Algebra, Path
from .errors import DecompositionUncertain, PresentationError

FITTING_TRIALS = 8
DEFAULT_SEED = 20240917


class Representation:
    """Covariant representation: a space per vertex and a matrix per arrow.

    For an arrow ``a: i -> j`` the matrix has shape ``dim_j x dim_i``.
    Instances are immutable and hash by their exact data.
    """

    __slots__ = ("algebra", "dims", "maps", "_key", "_hash", "name", "_paths")

    def __init__(self, algebra: Algebra, dims: Sequence[int], maps: Sequence[fmpq_mat], check: bool = True, name: str = ""):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        self.maps = tuple(maps)
        self.name = name
        self._key = None
        self._hash = None
        self._paths = {}
        if check:
            self._validate()

    def _validate(self):
        A = self.algebra
        if len(self.dims) != A.n or any(d < 0 for d in self.dims):
            raise PresentationError(f"dimension vector {self.dims} does not fit {A.n} vertices")
        if len(self.maps) != len(A.quiver.arrows):
            raise PresentationError("one matrix per arrow is required")
        for a, m in zip(A.quiver.arrows, self.maps):
            want = (self.dims[a.target - 1], self.dims[a.source - 1])
            if la.shape(m) != want:
                raise PresentationError(f"arrow {a.id!r}: matrix shape {la.shape(m)} != {want}")
        for rel in A.presentation.relations:
            total = None
            for c, ids in rel:
                idx = tuple(A.quiver.arrow_index(i) for i in ids)
                first, last = A.quiver.arrows[idx[0]], A.quiver.arrows[idx[-1]]
                m = self.path_matrix(Path(first.source, last.target, idx)) * c
                total = m if total is None else total + m
            if total is not None and not la.is_zero(total):
                raise PresentationError("representation violates a relation")

    # -- data --------------------------------------------------------------
    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return self.dims

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def key(self) -> tuple:
        if self._key is None:
            self._key = (id(self.algebra), self.dims, tuple(la.matrix_key(m) for m in self.maps))
        return self._key

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __eq__(self, other):
        return isinstance(other, Representation) and self.key() == other.key()

    def __repr__(self):
        label = self.name or loewy_label(self)
        return f"<Representation {label} dims={self.dims}>"

    # -- actions -----------------------------------------------------------
    def path_matrix(self, path: Path) -> fmpq_mat:
        m = la.identity(self.dims[path.source - 1])
        for a in path.arrows:
            m = self.maps[a] * m
        return m

    def basis_matrix(self, k: int) -> fmpq_mat:
        """Action of the k-th basis path of the algebra."""
        got = self._paths.get(k)
        if got is None:
            got = self._paths[k] = self.path_matrix(self.algebra.basis[k])
        return got

    def element_matrix(self, x: dict, source: int, target: int) -> fmpq_mat:
        """Action ``M_source -> M_target`` of an element of ``e_target A e_source``."""
        out = la.zeros(self.dims[target - 1], self.dims[source - 1])
        for k, c in x.items():
            p = self.algebra.basis[k]
            if p.source == source and p.target == target:
                out = out + self.basis_matrix(k) * c
        return out


class ModuleMap:
    """Homomorphism given by one matrix per vertex."""

    __slots__ = ("source", "target", "mats")

    def __init__(self, source: Representation, target: Representation, mats: Sequence[fmpq_mat], check: bool = False):
        self.source = source
        self.target = target
        self.mats = tuple(mats)
        if check and not self.commutes():
            raise PresentationError("vertex maps do not commute with the arrow actions")

    def commutes(self) -> bool:
        for k, a in enumerate(self.source.algebra.quiver.arrows):
            i, j = a.source - 1, a.target - 1
            if self.mats[j] * self.source.maps[k] != self.target.maps[k] * self.mats[i]:
                return False
        return True

    def compose(self, first: "ModuleMap") -> "ModuleMap":
        """``self o first``."""
        return ModuleMap(first.source, self.target, [g * f for g, f in zip(self.mats, first.mats)])

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, [a + b for a, b in zip(self.mats, other.mats)])

    def scaled(self, c) -> "ModuleMap":
        c = la.to_q(c)
        return ModuleMap(self.source, self.target, [m * c for m in self.mats])

    def is_zero(self) -> bool:
        return all(la.is_zero(m) for m in self.mats)

    def is_isomorphism(self) -> bool:
        if self.source.dims != self.target.dims:
            return False
        return all(m.nrows() == 0 or m.det() != 0 for m in self.mats)

    def trace(self) -> fmpq:
        return sum((la.trace(m) for m in self.mats), fmpq(0))

    def flat(self) -> list[fmpq]:
        out = []
        for m in self.mats:
            out.extend(m.entries())
        return out

    def kernel(self) -> tuple[Representation, "ModuleMap"]:
        return subrepresentation(self.source, [la.nullspace(m) for m in self.mats])

    def image_bases(self) -> list[fmpq_mat]:
        return [la.column_space(m) for m in self.mats]


def combine(maps: Sequence[ModuleMap], coeffs: Sequence) -> ModuleMap:
    src, tgt = maps[0].source, maps[0].target
    mats = [la.zeros(*la.shape(m)) for m in maps[0].mats]
    for f, c in zip(maps, coeffs):
        if c:
            mats = [a + b * la.to_q(c) for a, b in zip(mats, f.mats)]
    return ModuleMap(src, tgt, mats)


# -- constructors -------------------------------------------------------------
def zero_module(A: Algebra) -> Representation:
    return Representation(A, [0] * A.n, [la.zeros(0, 0) for _ in A.quiver.arrows], check=False)


def simple_module(A: Algebra, i: int) -> Representation:
    dims = [1 if v == i else 0 for v in range(1, A.n + 1)]
    maps = [la.zeros(dims[a.target - 1], dims[a.source - 1]) for a in A.quiver.arrows]
    return Representation(A, dims, maps, check=False, name=str(i))


@lru_cache(maxsize=None)
def _projective_cached(A: Algebra, i: int) -> Representation:
    spaces = {j: A.between(i, j) for j in range(1, A.n + 1)}
    pos = {j: {k: r for r, k in enumerate(spaces[j])} for j in spaces}
    maps = []
    for ai, a in enumerate(A.quiver.arrows):
        m = la.zeros(len(spaces[a.target]), len(spaces[a.source]))
        arrow = A.arrow_element(ai)
        for c, k in enumerate(spaces[a.source]):
            for t, x in A.then({k: fmpq(1)}, arrow).items():
                m[pos[a.target][t], c] = x
        maps.append(m)
    return Representation(A, [len(spaces[j]) for j in range(1, A.n + 1)], maps, check=False)


def indecomposable_projective(A: Algebra, i: int) -> Representation:
    """``P(i)``: spanned by the basis paths starting at ``i``."""
    if not 1 <= i <= A.n:
        raise PresentationError(f"vertex {i} outside 1..{A.n}")
    return _projective_cached(A, i)


def direct_sum(modules: Iterable[Representation], algebra: Algebra | None = None) -> Representation:
    modules = list(modules)
    if not modules:
        if algebra is None:
            raise ValueError("empty direct sum needs the algebra")
        return zero_module(algebra)
    A = modules[0].algebra
    dims = [sum(M.dims[v] for M in modules) for v in range(A.n)]
    maps = [la.block_diag(*[M.maps[k] for M in modules]) for k in range(len(A.quiver.arrows))]
    return Representation(A, dims, maps, check=False)


def regular_module(A: Algebra) -> Representation:
    return direct_sum([indecomposable_projective(A, i) for i in range(1, A.n + 1)])


def subrepresentation(M: Representation, bases: Sequence[fmpq_mat]) -> tuple[Representation, ModuleMap]:
    """Submodule spanned per vertex by the (independent) columns of ``bases``."""
    A = M.algebra
    bases = [b if b.ncols() else la.zeros(M.dims[v], 0) for v, b in enumerate(bases)]
    lefts = []
    for b in bases:
        if b.ncols() == 0:
            lefts.append(la.zeros(0, b.nrows()))
        else:
            bt = b.transpose()
            lefts.append((bt * b).inv() * bt)
    maps = []
    for k, a in enumerate(A.quiver.arrows):
        i, j = a.source - 1, a.target - 1
        maps.append(lefts[j] * (M.maps[k] * bases[i]))
    sub = Representation(A, [b.ncols() for b in bases], maps, check=False)
    return sub, ModuleMap(sub, M, bases)


def quotient(M: Representation, bases: Sequence[fmpq_mat]) -> tuple[Representation, ModuleMap]:
    """``M / U`` where ``U`` is spanned per vertex by ``bases``; returns (quotient, projection)."""
    A = M.algebra
    cs = [la.quotient_map(b if b.ncols() else la.zeros(M.dims[v], 0), M.dims[v]) for v, b in enumerate(bases)]
    ss = [la.right_inverse(c) for c in cs]
    maps = []
    for k, a in enumerate(A.quiver.arrows):
        i, j = a.source - 1, a.target - 1
        maps.append(cs[j] * (M.maps[k] * ss[i]))
    Q = Representation(A, [c.nrows() for c in cs], maps, check=False)
    return Q, ModuleMap(M, Q, cs)


def radical_bases(M: Representation) -> list[fmpq_mat]:
    """Per-vertex bases of ``rad M``, the sum of the images of all arrows."""
    A = M.algebra
    out = []
    for v in range(1, A.n + 1):
        ims = [M.maps[k] for k, a in enumerate(A.quiver.arrows) if a.target == v]
        if ims:
            out.append(la.column_space(la.hstack(*ims, nrows=M.dims[v - 1])))
        else:
            out.append(la.zeros(M.dims[v - 1], 0))
    return out


def top_generators(M: Representation) -> list[tuple[int, fmpq_mat]]:
    """Vectors (vertex, column) whose classes form a basis of ``M / rad M``."""
    gens = []
    for v, rad in enumerate(radical_bases(M), start=1):
        for k in la.complement_columns(rad, M.dims[v - 1]):
            e = la.zeros(M.dims[v - 1], 1)
            e[k, 0] = 1
            gens.append((v, e))
    return gens


def top_dim_vector(M: Representation) -> tuple[int, ...]:
    rad = radical_bases(M)
    return tuple(M.dims[v] - rad[v].ncols() for v in range(M.n))


def loewy_layers(M: Representation) -> list[tuple[int, ...]]:
    """Dimension vectors of the radical layers ``rad^k M / rad^(k+1) M``."""
    A = M.algebra
    current = [la.identity(d) for d in M.dims]
    layers = []
    while any(b.ncols() for b in current):
        nxt = []
        for v in range(1, A.n + 1):
            ims = [M.maps[k] * current[a.source - 1] for k, a in enumerate(A.quiver.arrows) if a.target == v]
            if ims:
                nxt.append(la.column_space(la.hstack(*ims, nrows=M.dims[v - 1])))
            else:
                nxt.append(la.zeros(M.dims[v - 1], 0))
        layers.append(tuple(c.ncols() - x.ncols() for c, x in zip(current, nxt)))
        current = nxt
    return layers


def loewy_label(M: Representation) -> str:
    """Radical-layer label such as ``2\\1\\2``; ``0`` for the zero module."""
    if M.is_zero():
        return "0"
    sep = "" if M.n < 10 else ","
    parts = []
    for layer in loewy_layers(M):
        parts.append(sep.join(str(v + 1) for v in range(M.n) for _ in range(layer[v])))
    return "\\".join(parts)


# -- Hom spaces -----------------------------------------------------------------
def _hom_system(M: Representation, N: Representation) -> tuple[list[dict], int, list[int]]:
    """Sparse equations ``N_a f_s = f_t M_a`` on the blocks of ``f``, with the variable count and block offsets."""
    A = M.algebra
    d, e = M.dims, N.dims
    offsets, off = [], 0
    for v in range(A.n):
        offsets.append(off)
        off += e[v] * d[v]
    nvars = off
    rows = []
    for k, a in enumerate(A.quiver.arrows):
        i, j = a.source - 1, a.target - 1
        Ma, Na = M.maps[k], N.maps[k]
        Ma_nz = [(p, q, Ma[p, q]) for p in range(d[j]) for q in range(d[i]) if Ma[p, q] != 0]
        Na_nz = [(p, q, Na[p, q]) for p in range(e[j]) for q in range(e[i]) if Na[p, q] != 0]
        for r in range(e[j]):
            for c in range(d[i]):
                row = {}
                # (f_j M_a)[r, c] = sum_p f_j[r, p] M_a[p, c]
                for p, q, x in Ma_nz:
                    if q == c:
                        idx = offsets[j] + r * d[j] + p
                        row[idx] = row.get(idx, 0) + x
                # (N_a f_i)[r, c] = sum_p N_a[r, p] f_i[p, c]
                for p, q, x in Na_nz:
                    if p == r:
                        idx = offsets[i] + q * d[i] + c
                        row[idx] = row.get(idx, 0) - x
                row = {k2: v for k2, v in row.items() if v}
                if row:
                    rows.append(row)
    return rows, nvars, offsets


@lru_cache(maxsize=200000)
def _hom_basis_cached(M: Representation, N: Representation) -> tuple:
    from .projective import hom_basis_via_presentation, presentation_system_size

    A = M.algebra
    d, e = M.dims, N.dims
    if presentation_system_size(M, N) < sum(x * y for x, y in zip(d, e)):
        return tuple(hom_basis_via_presentation(M, N))
    rows, nvars, offsets = _hom_system(M, N)
    null = la.sparse_nullspace(rows, nvars)
    maps = []
    for k in range(null.ncols()):
        mats = []
        for v in range(A.n):
            m = la.zeros(e[v], d[v])
            for r in range(e[v]):
                for c in range(d[v]):
                    x = null[offsets[v] + r * d[v] + c, k]
                    if x:
                        m[r, c] = x
            mats.append(m)
        maps.append(ModuleMap(M, N, mats))
    return tuple(maps)


def hom_basis(M: Representation, N: Representation) -> list[ModuleMap]:
    """Basis of ``Hom_A(M, N)`` (deterministic, from the reduced echelon form)."""
    if M.algebra is not N.algebra:
        raise ValueError("modules over different algebras")
    if M.is_zero() or N.is_zero():
        return []
    return list(_hom_basis_cached(M, N))


def hom_dim(M: Representation, N: Representation) -> int:
    return len(hom_basis(M, N))


def hom_vanishes(M: Representation, N: Representation) -> bool:
    return hom_dim(M, N) == 0


def sum_of_images(M: Representation, N: Representation) -> list[fmpq_mat]:
    """Per-vertex bases of the trace of ``M`` in ``N``."""
    maps = hom_basis(M, N)
    out = []
    for v in range(N.n):
        cols = [f.mats[v] for f in maps]
        if cols and N.dims[v]:
            out.append(la.column_space(la.hstack(*cols, nrows=N.dims[v])))
        else:
            out.append(la.zeros(N.dims[v], 0))
    return out


def trace_in(M: Representation, N: Representation) -> bool:
    """``N`` lies in ``Fac M`` iff the images of all maps ``M -> N`` span ``N``."""
    return all(b.ncols() == d for b, d in zip(sum_of_images(M, N), N.dims))


# -- isomorphism and decomposition ------------------------------------------------
def is_isomorphic(M: Representation, N: Representation, seed: int = DEFAULT_SEED, trials: int = FITTING_TRIALS):
    """Return ``(True, witness)`` if an invertible map ``M -> N`` is found, else ``(False, None)``."""
    if M.dims != N.dims:
        return False, None
    if M == N:
        return True, ModuleMap(M, N, [la.identity(d) for d in M.dims])
    if M.is_zero():
        return True, ModuleMap(M, N, [la.zeros(0, 0) for _ in M.dims])
    basis = hom_basis(M, N)
    if not basis or hom_dim(N, M) != len(basis):
        return False, None
    rng = random.Random(seed)
    for t in range(trials):
        coeffs = [1] * len(basis) if t == 0 else [rng.randint(-997, 997) for _ in basis]
        f = combine(basis, coeffs)
        if f.is_isomorphism():
            return True, f
    return False, None


def endomorphism_radical_dim(M: Representation, basis: Sequence[ModuleMap] | None = None) -> int:
    """Dimension of the Jacobson radical of ``End(M)``.

    In characteristic zero the radical is the kernel of the trace form
    ``(x, y) -> tr_M(x y)`` on the faithful module ``M``.
    """
    basis = list(hom_basis(M, M) if basis is None else basis)
    k = len(basis)
    if k == 0:
        return 0
    gram = la.zeros(k, k)
    for a in range(k):
        for b in range(a, k):
            t = basis[a].compose(basis[b]).trace()
            gram[a, b] = t
            gram[b, a] = t
    return k - la.rank(gram)


def is_brick(M: Representation) -> bool:
    """Endomorphism ring has no radical and is local (at desk scale: ``End = Q`` or a field)."""
    if M.is_zero():
        return False
    basis = hom_basis(M, M)
    if endomorphism_radical_dim(M, basis) != 0:
        return False
    if len(basis) == 1:
        return True
    rng = random.Random(DEFAULT_SEED)
    for _ in range(FITTING_TRIALS):
        f = combine(basis, [rng.randint(-97, 97) for _ in basis])
        if not f.is_isomorphism():
            return False
    return True


def _charpoly(f: ModuleMap) -> fmpq_poly:
    p = fmpq_poly([1])
    for m in f.mats:
        if m.nrows():
            p = p * m.charpoly()
    return p


def _fitting_split(M: Representation, f: ModuleMap) -> list[Representation] | None:
    content, factors = _charpoly(f).factor()
    if len(factors) < 2:
        return None
    parts = []
    for poly, mult in factors:
        pe = poly ** mult
        bases = [la.nullspace(la.poly_eval(pe, m)) if m.nrows() else la.zeros(0, 0) for m in f.mats]
        sub, _ = subrepresentation(M, bases)
        parts.append(sub)
    if sum(p.total_dim for p in parts) != M.total_dim:
        raise DecompositionUncertain("generalised eigenspaces do not span the module")
    return parts


def _top_rank_one_trials(M: Representation, basis: Sequence[ModuleMap]) -> list[ModuleMap]:
    """Endomorphisms acting with rank one on a multi-dimensional top at some vertex."""
    out = []
    rad = radical_bases(M)
    for v in range(M.n):
        d = M.dims[v]
        t = d - rad[v].ncols()
        if t < 2:
            continue
        c = la.quotient_map(rad[v], d)
        s = la.right_inverse(c)
        induced = [c * f.mats[v] * s for f in basis]
        for w in range(t):
            rows = []
            rhs = []
            for r in range(t):
                for col in range(t):
                    if r == w:
                        if col == w:
                            rows.append([m[r, col] for m in induced])
                            rhs.append(1)
                        continue
                    rows.append([m[r, col] for m in induced])
                    rhs.append(0)
            sol = la.solve(la.from_rows(rows), la.from_rows([[x] for x in rhs]))
            if sol is not None:
                out.append(combine(basis, [sol[k, 0] for k in range(len(basis))]))
                break
    return out


def _split_once(M: Representation, seed: int, trials: int) -> list[Representation] | None:
    basis = hom_basis(M, M)
    if len(basis) - endomorphism_radical_dim(M, basis) == 1:
        return None  # End(M) is local with residue field Q
    rng = random.Random(seed)
    candidates = list(basis) + _top_rank_one_trials(M, basis)
    candidates += [combine(basis, [rng.randint(-9, 9) for _ in basis]) for _ in range(trials)]
    for f in candidates:
        parts = _fitting_split(M, f)
        if parts is not None:
            return parts
    raise DecompositionUncertain(
        f"no splitting endomorphism found for module with dims {M.dims} "
        f"after {len(candidates)} deterministic trials"
    )


def indecomposable_parts(M: Representation, seed: int = DEFAULT_SEED, trials: int = FITTING_TRIALS) -> list[Representation]:
    if M.is_zero():
        return []
    parts = _split_once(M, seed, trials)
    if parts is None:
        return [M]
    out = []
    for p in parts:
        out.extend(indecomposable_parts(p, seed, trials))
    return out


def is_indecomposable(M: Representation, seed: int = DEFAULT_SEED) -> bool:
    return not M.is_zero() and len(indecomposable_parts(M, seed)) == 1


def decompose(M: Representation, seed: int = DEFAULT_SEED, trials: int = FITTING_TRIALS) -> list[tuple[Representation, int]]:
    """Krull-Schmidt decomposition as ``[(indecomposable, multiplicity), ...]``.

    Factors are grouped up to isomorphism and ordered by dimension vector, then
    by a Hom-dimension fingerprint.
    """
    groups: list[list] = []
    for part in indecomposable_parts(M, seed, trials):
        for g in groups:
            if is_isomorphic(g[0], part, seed)[0]:
                g[1] += 1
                break
        else:
            groups.append([part, 1])
    groups.sort(key=lambda g: (g[0].dims, basic_fingerprint(g[0]), loewy_label(g[0])))
    return [(g[0], g[1]) for g in groups]


def basic_fingerprint(M: Representation) -> tuple:
    """Iso-invariant data computable without projective presentations."""
    A = M.algebra
    return (
        M.dims,
        hom_dim(M, M),
        tuple(hom_dim(M, indecomposable_projective(A, i)) for i in range(1, A.n + 1)),
        top_dim_vector(M),
    )
