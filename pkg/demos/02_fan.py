"""The g-vector fan of the running example and of A3.

Prints rays and maximal cones, checks that the cones form a fan, and writes
the labelled rank-two picture to ``running_fan.svg`` in the working directory.
"""

from taufan import PairCatalog, build_classes, catalog, verify_fan
from taufan.formats import fan_to_svg
from taufan.wallchamber import walls_for_render

for name, A in (("running example", catalog.running_example()), ("A3", catalog.linear_a(3))):
    classes = build_classes(PairCatalog(A))
    rays = sorted({E.cone.rays[0] for E in classes if E.dim == 1})
    chambers = [E for E in classes if E.dim == E.n]
    report = verify_fan(classes)
    print(f"{name}: {len(rays)} rays, {len(chambers)} chambers, fan check {'ok' if report.ok else report.violations}")
    print("  rays:", rays)

classes = build_classes(PairCatalog(catalog.running_example()))
walls = walls_for_render(classes)
print("\nwalls of the running example, labelled by the brick of their wide subcategory:")
for w in walls:
    print(f"  ray {w.cone.rays[0]}  brick {w.brick}  dim {w.dim_vector}")
with open("running_fan.svg", "w", encoding="utf-8") as fh:
    fh.write(fan_to_svg(classes, walls))
print("wrote running_fan.svg")
