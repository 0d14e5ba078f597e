"""Walk through the running example: alpha: 1 -> 2, beta: 2 -> 1, alpha.beta = 0.

Builds the algebra, lists its indecomposable projectives, enumerates the
support tau-tilting pairs by mutation from A, and prints each pair with its
g-vectors and Bongartz completion.
"""

from taufan import PairCatalog, catalog

A = catalog.running_example()
print(A)
print("path basis:", [A.path_label(k) for k in range(A.dimension)])

cat = PairCatalog(A, checked=True)
print(f"\n{len(cat.tilting)} support tau-tilting pairs (mutation graph has {len(cat.edges)} edges):")
for p in cat.tilting:
    print(f"  {p.label:<24} g-vectors {list(p.g_rays)}")

print(f"\n{len(cat.pairs)} basic tau-rigid pairs with their Bongartz completions:")
for p in cat.pairs:
    print(f"  {p.label:<24} -> {cat.bongartz(p).label}")
