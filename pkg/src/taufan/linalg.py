"""Exact rational matrix helpers.

Thin layer over :mod:`flint` so the rest of the package never touches floating
point.  Matrices are ``fmpq_mat`` instances and are treated as immutable once
handed out.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from flint import fmpq, fmpq_mat, fmpq_poly

Q = fmpq
Matrix = fmpq_mat


def to_q(x) -> fmpq:
    """Coerce int, Fraction, fmpq or a ``"p/q"`` string to ``fmpq``."""
    if isinstance(x, fmpq):
        return x
    if isinstance(x, int):
        return fmpq(x)
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    if isinstance(x, str):
        f = Fraction(x.strip())
        return fmpq(f.numerator, f.denominator)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def q_str(x: fmpq) -> str:
    """Serialise a rational as ``"p/q"`` (``"p"`` when integral)."""
    x = to_q(x)
    p, q = int(x.p), int(x.q)
    return str(p) if q == 1 else f"{p}/{q}"


def zeros(r: int, c: int) -> fmpq_mat:
    return fmpq_mat(r, c)


def identity(n: int) -> fmpq_mat:
    m = fmpq_mat(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def from_rows(rows: Sequence[Sequence], ncols: int | None = None) -> fmpq_mat:
    rows = list(rows)
    if not rows:
        return fmpq_mat(0, ncols or 0)
    return fmpq_mat([[to_q(x) for x in r] for r in rows])


def from_columns(cols: Sequence[Sequence], nrows: int) -> fmpq_mat:
    m = fmpq_mat(nrows, len(cols))
    for j, col in enumerate(cols):
        for i, x in enumerate(col):
            if x:
                m[i, j] = x
    return m


def copy(m: fmpq_mat) -> fmpq_mat:
    return fmpq_mat(m)


def shape(m: fmpq_mat) -> tuple[int, int]:
    return m.nrows(), m.ncols()


def is_zero(m: fmpq_mat) -> bool:
    return all(x == 0 for x in m.entries())


def rows_of(m: fmpq_mat) -> list[list[fmpq]]:
    r, c = shape(m)
    e = m.entries()
    return [list(e[i * c:(i + 1) * c]) for i in range(r)]


def column(m: fmpq_mat, j: int) -> fmpq_mat:
    out = fmpq_mat(m.nrows(), 1)
    for i in range(m.nrows()):
        out[i, 0] = m[i, j]
    return out


def columns(m: fmpq_mat, idx: Iterable[int]) -> fmpq_mat:
    idx = list(idx)
    out = fmpq_mat(m.nrows(), len(idx))
    for k, j in enumerate(idx):
        for i in range(m.nrows()):
            out[i, k] = m[i, j]
    return out


def rows(m: fmpq_mat, idx: Iterable[int]) -> fmpq_mat:
    idx = list(idx)
    out = fmpq_mat(len(idx), m.ncols())
    for k, i in enumerate(idx):
        for j in range(m.ncols()):
            out[k, j] = m[i, j]
    return out


def hstack(*ms: fmpq_mat, nrows: int | None = None) -> fmpq_mat:
    ms = [m for m in ms]
    if not ms:
        return fmpq_mat(nrows or 0, 0)
    r = ms[0].nrows() if nrows is None else nrows
    c = sum(m.ncols() for m in ms)
    out = fmpq_mat(r, c)
    off = 0
    for m in ms:
        if m.nrows() != r:
            raise ValueError("row count mismatch in hstack")
        for i in range(r):
            for j in range(m.ncols()):
                x = m[i, j]
                if x:
                    out[i, off + j] = x
        off += m.ncols()
    return out


def vstack(*ms: fmpq_mat, ncols: int | None = None) -> fmpq_mat:
    ms = [m for m in ms]
    if not ms:
        return fmpq_mat(0, ncols or 0)
    c = ms[0].ncols() if ncols is None else ncols
    r = sum(m.nrows() for m in ms)
    out = fmpq_mat(r, c)
    off = 0
    for m in ms:
        if m.ncols() != c:
            raise ValueError("column count mismatch in vstack")
        for i in range(m.nrows()):
            for j in range(c):
                x = m[i, j]
                if x:
                    out[off + i, j] = x
        off += m.nrows()
    return out


def block_diag(*ms: fmpq_mat) -> fmpq_mat:
    r = sum(m.nrows() for m in ms)
    c = sum(m.ncols() for m in ms)
    out = fmpq_mat(r, c)
    ro = co = 0
    for m in ms:
        for i in range(m.nrows()):
            for j in range(m.ncols()):
                x = m[i, j]
                if x:
                    out[ro + i, co + j] = x
        ro += m.nrows()
        co += m.ncols()
    return out


def rref(m: fmpq_mat) -> tuple[fmpq_mat, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    if m.nrows() == 0 or m.ncols() == 0:
        return fmpq_mat(m.nrows(), m.ncols()), []
    r, rank = m.rref()
    pivots = []
    c = m.ncols()
    for i in range(rank):
        for j in range(c):
            if r[i, j] != 0:
                pivots.append(j)
                break
    return r, pivots


def rank(m: fmpq_mat) -> int:
    if m.nrows() == 0 or m.ncols() == 0:
        return 0
    return m.rank()


def nullspace(m: fmpq_mat) -> fmpq_mat:
    """Basis of ``{x : m x = 0}`` as the columns of the returned matrix."""
    c = m.ncols()
    r, pivots = rref(m)
    pivset = set(pivots)
    free = [j for j in range(c) if j not in pivset]
    out = fmpq_mat(c, len(free))
    for k, f in enumerate(free):
        out[f, k] = 1
        for i, p in enumerate(pivots):
            x = r[i, f]
            if x:
                out[p, k] = -x
    return out


SparseRow = dict  # column index -> nonzero fmpq


def sparse_echelon(rows: Iterable[SparseRow], ncols: int) -> dict[int, SparseRow]:
    """Fully reduced echelon form of a sparse system, keyed by pivot column.

    Rows are ``{column: value}`` dicts with no zero values. Pivots are taken
    left to right, choosing the sparsest available row, so fill-in stays small
    on the very sparse systems that Hom computations produce.
    """
    work = [dict(r) for r in rows if r]
    where: dict[int, set[int]] = {}
    for k, row in enumerate(work):
        for c in row:
            where.setdefault(c, set()).add(k)
    free_rows = set(range(len(work)))
    pivot_of: dict[int, int] = {}
    for j in range(ncols):
        cands = [k for k in where.get(j, ()) if k in free_rows]
        if not cands:
            continue
        p = min(cands, key=lambda k: (len(work[k]), k))
        free_rows.discard(p)
        prow = work[p]
        inv = 1 / prow[j]
        for c in prow:
            prow[c] *= inv
        for k in list(where[j]):
            if k == p:
                continue
            row = work[k]
            f = row[j]
            for c, v in prow.items():
                nv = row.get(c, 0) - f * v
                if nv == 0:
                    row.pop(c, None)
                    where[c].discard(k)
                else:
                    if c not in row:
                        where.setdefault(c, set()).add(k)
                    row[c] = nv
        pivot_of[j] = p
    return {j: work[p] for j, p in pivot_of.items()}


def sparse_rank(rows: Iterable[SparseRow], ncols: int) -> int:
    return len(sparse_echelon(rows, ncols))


def sparse_nullspace(rows: Iterable[SparseRow], ncols: int) -> fmpq_mat:
    """Same basis as :func:`nullspace` of the dense matrix with these rows."""
    ech = sparse_echelon(rows, ncols)
    free = [j for j in range(ncols) if j not in ech]
    slot = {f: k for k, f in enumerate(free)}
    out = fmpq_mat(ncols, len(free))
    for f, k in slot.items():
        out[f, k] = 1
    for p, row in ech.items():
        for c, v in row.items():
            if c != p:
                out[p, slot[c]] = -v
    return out


def left_nullspace(m: fmpq_mat) -> fmpq_mat:
    """Rows spanning ``{y : y m = 0}``."""
    return nullspace(m.transpose()).transpose()


def column_space(m: fmpq_mat) -> fmpq_mat:
    """Independent columns of ``m`` spanning its image (pivot columns)."""
    _, pivots = rref(m)
    return columns(m, pivots)


def row_basis(m: fmpq_mat) -> fmpq_mat:
    """Nonzero rows of the reduced echelon form."""
    r, pivots = rref(m)
    return rows(r, range(len(pivots)))


def solve(a: fmpq_mat, b: fmpq_mat) -> fmpq_mat | None:
    """A particular solution ``x`` of ``a x = b`` or ``None`` if inconsistent."""
    n = a.ncols()
    if a.nrows() == 0:
        return fmpq_mat(n, b.ncols()) if is_zero(b) else None
    aug = hstack(a, b)
    r, pivots = rref(aug)
    if any(p >= n for p in pivots):
        return None
    x = fmpq_mat(n, b.ncols())
    for i, p in enumerate(pivots):
        for j in range(b.ncols()):
            x[p, j] = r[i, n + j]
    return x


def in_span(basis_cols: fmpq_mat, v: fmpq_mat) -> bool:
    if basis_cols.ncols() == 0:
        return is_zero(v)
    return solve(basis_cols, v) is not None


def complement_columns(sub: fmpq_mat, dim: int) -> list[int]:
    """Indices of standard basis vectors completing the columns of ``sub`` to a basis."""
    chosen: list[int] = []
    current = sub if sub.ncols() else fmpq_mat(dim, 0)
    rk = rank(current)
    for k in range(dim):
        e = fmpq_mat(dim, 1)
        e[k, 0] = 1
        trial = hstack(current, e, nrows=dim)
        r2 = rank(trial)
        if r2 > rk:
            chosen.append(k)
            current, rk = trial, r2
        if rk == dim:
            break
    return chosen


def right_inverse(c: fmpq_mat) -> fmpq_mat:
    """Right inverse of a full-row-rank matrix."""
    if c.nrows() == 0:
        return fmpq_mat(c.ncols(), 0)
    ct = c.transpose()
    return ct * (c * ct).inv()


def quotient_map(sub: fmpq_mat, dim: int) -> fmpq_mat:
    """Full-row-rank matrix whose kernel is the column span of ``sub``."""
    if sub.ncols() == 0:
        return identity(dim)
    return left_nullspace(sub)


def trace(m: fmpq_mat) -> fmpq:
    t = fmpq(0)
    for i in range(min(m.nrows(), m.ncols())):
        t += m[i, i]
    return t


def poly_eval(p: fmpq_poly, m: fmpq_mat) -> fmpq_mat:
    """Evaluate ``p`` at the square matrix ``m`` by Horner's rule."""
    n = m.nrows()
    coeffs = p.coeffs()
    out = fmpq_mat(n, n)
    ident = identity(n)
    for c in reversed(coeffs):
        out = out * m + ident * c
    return out


def matrix_key(m: fmpq_mat) -> tuple:
    """Hashable exact fingerprint of a matrix."""
    return (m.nrows(), m.ncols(), tuple((int(x.p), int(x.q)) for x in m.entries()))


def primitive_integer(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector in its direction."""
    qs = [to_q(x) for x in v]
    den = 1
    for x in qs:
        den = den * int(x.q) // math.gcd(den, int(x.q))
    ints = [int(x * den) for x in qs]
    g = 0
    for k in ints:
        g = math.gcd(g, abs(k))
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(k // g for k in ints)
