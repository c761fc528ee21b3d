"""K5 needs exactly one crossing; fixing the outer face leaves three drawings.

Run: python demos/01_k5_embeddings.py
"""

from bpr.graph import complete_graph
from bpr.oracle import Constraints, census, enumerate_embeddings
from bpr.recognizer import recognize

k5 = complete_graph(5)

embs = enumerate_embeddings(k5)
print(f"K5 has {len(embs)} labeled triangulated 1-planar embeddings:")
for e in embs:
    print("  crossing", e.crossings[0])

# every labeled embedding is a relabeling of the same drawing
print("classes up to symmetry:", census(k5)["classes"])

# pin triangle 0-1-2 as uncrossed outer face: the crossing must avoid one of 0, 1, 2
fixed = census(k5, Constraints.build(planar=[(0, 1), (1, 2), (0, 2)]))
print("with 0-1-2 planar:", fixed["classes"], "classes", fixed["representatives"])

r = recognize(k5, "ic")
print("\nrecognize(K5, ic):", "accepted" if r.accepted else r.reason)
print("witness crossing:", r.witness.crossings)
