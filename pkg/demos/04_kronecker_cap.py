"""Negative control: the Kronecker algebra is tau-tilting infinite.

Enumeration stops with CapExceeded once the cap is passed, and nothing is
returned.
"""

import time

from taufan import CapExceeded, PairCatalog, catalog

A = catalog.kronecker()
start = time.perf_counter()
try:
    PairCatalog(A, cap=50)
except CapExceeded as exc:
    print(f"CapExceeded after {time.perf_counter() - start:.2f}s: {exc}")
else:
    raise SystemExit("expected CapExceeded")
