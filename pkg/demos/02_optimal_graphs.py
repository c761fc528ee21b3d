"""Optimal 1-planar graphs: a quadrangulation with both diagonals in every face.

Run: python demos/02_optimal_graphs.py
"""

from bpr.generators import cube, gen_optimal_1planar, pseudo_double_wheel
from bpr.recognizer import check_maximum_optimal, recognize

for name, q in [("cube", cube()), ("double wheel k=4", pseudo_double_wheel(4)), ("double wheel k=5", pseudo_double_wheel(5))]:
    g = gen_optimal_1planar(q)
    r = recognize(g, "1p")
    print(f"{name:18s} n={g.n:2d} m={g.m:2d} 4n-8={4 * g.n - 8:2d} "
          f"accepted={r.accepted} crossings={len(r.witness.crossings)}")

g = gen_optimal_1planar(cube())
print("\nclassification of the cube instance:", check_maximum_optimal(g, "1p"))

# every vertex sits in several kites, so neither restricted class fits
for mode in ("ic", "nic"):
    r = recognize(g, mode)
    print(f"{mode}: {'accepted' if r.accepted else 'rejected (' + r.reason + ')'}")
