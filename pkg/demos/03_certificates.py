"""What a run leaves behind: an edge coloring, a formula and a witness.

K5 stars stack several K5s around one center.  Each K5 may put its kite
anywhere, so for IC the only question is whether the center can be kept
out of all but one kite; the certificate answers that.

Run: python demos/03_certificates.py
"""

from collections import Counter

from bpr.formula import to_sexpr
from bpr.generators import gen_k5_star
from bpr.recognizer import recognize

g = gen_k5_star(3)
print(f"K5 star with 3 blocks: n={g.n} m={g.m}")

for mode in ("1p", "ic", "nic"):
    r = recognize(g, mode)
    colors = Counter(c.value for _, c in r.coloring.items())
    print(f"\n[{mode}] accepted={r.accepted} satisfiable={r.satisfiable}")
    print("  steps:", [s[0] for s in r.trace])
    print("  colors:", dict(colors))
    print("  blocks:", [b.kind for b in r.certificate.blocks])
    text = to_sexpr(r.formula())
    print("  formula:", text if len(text) < 160 else text[:157] + "...")
    print("  kites in witness:", [tuple(sorted({*e, *f})) for e, f in r.witness.crossings])
