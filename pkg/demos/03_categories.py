"""The finite categories of the running example and the functors between them.

The geometric category has one object per equivalence class of projected
cones.  F sends the pair quotient to the tau-cluster morphism category and G
sends it to the geometric category; both are checked to be equivalences.
"""

from taufan import (
    PairCatalog,
    build_categories,
    catalog,
    functor_F,
    functor_G,
    verify_category_axioms,
    verify_functor_equivalence,
)

b = build_categories(PairCatalog(catalog.running_example()))
g = b.geom
print("objects of the geometric category:", g.objects)
print("\nHom-set sizes (rows = source):")
width = max(len(o) for o in g.objects)
for a, row in zip(g.objects, g.hom_matrix()):
    print(f"  {a:<{width}}  {row}")

U, X = "[C(0, 0)]", "[C(0, P1)]"
print(f"\nHom({U}, {X}):")
for m in g.homset(U, X):
    print("  ", m)

for c in (b.tf, b.pairs, b.geom, b.pairquot, b.tcm):
    r = verify_category_axioms(c)
    print(f"{c.name:<9} {len(c.objects):>2} objects, {len(c.morphisms):>3} morphisms, axioms {'ok' if r.ok else r.failures}")

for make, target in ((functor_F, b.tcm), (functor_G, b.geom)):
    r = verify_functor_equivalence(make(b.pairquot, target))
    print(f"{make.__name__}: pairquot -> {target.name} is an equivalence: {r.ok}")
