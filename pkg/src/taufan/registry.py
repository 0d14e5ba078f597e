"""Canonical labels for isomorphism classes of modules."""

from __future__ import annotations

import threading
from functools import lru_cache

from .algebra import Algebra
from .modules import DEFAULT_SEED, Representation, hom_dim, indecomposable_projective, is_isomorphic, loewy_label
from .projective import g_vector


@lru_cache(maxsize=100000)
def fingerprint(M: Representation) -> tuple:
    """``(dims, dim End, (dim Hom(P(i), M))_i, (dim Hom(M, P(i)))_i, g)``."""
    A = M.algebra
    return (
        M.dims,
        hom_dim(M, M),
        M.dims,
        tuple(hom_dim(M, indecomposable_projective(A, i)) for i in range(1, A.n + 1)),
        g_vector(M),
    )


class ModuleRegistry:
    """Assigns each isomorphism class a stable id such as ``2\\1\\2`` (``#k`` on label clashes)."""

    def __init__(self, algebra: Algebra, seed: int = DEFAULT_SEED):
        self.algebra = algebra
        self.seed = seed
        self._by_fp: dict[tuple, list[tuple[str, Representation]]] = {}
        self._by_id: dict[str, Representation] = {}
        self._fp_of: dict[str, tuple] = {}
        self._labels: dict[str, int] = {}
        self._exact: dict[Representation, str] = {}
        self._lock = threading.RLock()

    def register(self, M: Representation) -> str:
        with self._lock:
            got = self._exact.get(M)
            if got is not None:
                return got
            fp = fingerprint(M)
            bucket = self._by_fp.setdefault(fp, [])
            for mid, rep in bucket:
                if is_isomorphic(rep, M, self.seed)[0]:
                    self._exact[M] = mid
                    return mid
            label = loewy_label(M)
            k = self._labels.get(label, 0)
            self._labels[label] = k + 1
            mid = label if k == 0 else f"{label}#{k + 1}"
            bucket.append((mid, M))
            self._by_id[mid] = M
            self._fp_of[mid] = fp
            self._exact[M] = mid
            return mid

    def representative(self, mid: str) -> Representation:
        return self._by_id[mid]

    def fingerprint_of(self, mid: str) -> tuple:
        return self._fp_of[mid]

    def sort_key(self, mid: str) -> tuple:
        fp = self._fp_of[mid]
        return (sum(fp[0]), fp[0], fp[4], mid)

    def ids(self) -> list[str]:
        return sorted(self._by_id, key=self.sort_key)


_REGISTRIES: dict[int, ModuleRegistry] = {}
_REG_LOCK = threading.Lock()


def registry_for(A: Algebra) -> ModuleRegistry:
    with _REG_LOCK:
        reg = _REGISTRIES.get(id(A))
        if reg is None or reg.algebra is not A:
            reg = ModuleRegistry(A)
            _REGISTRIES[id(A)] = reg
        return reg
