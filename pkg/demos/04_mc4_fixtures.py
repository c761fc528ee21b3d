"""Two K4 configurations that only 1-planarity tolerates.

The refined kite-covered tetrahedron must cross all six tetrahedron
edges, so kites meet at every corner and IC fails at the K4 step.  The
central K4 of the SC fixture only has readings whose kites overlap more
than IC or NIC allow, while plain 1-planarity accepts it.

Run: python demos/04_mc4_fixtures.py
"""

from bpr.generators import kite_covered_tetrahedron, sc_graph
from bpr.recognizer import recognize

for name, g in [("refined tetrahedron", kite_covered_tetrahedron(refine=True)), ("SC fixture", sc_graph())]:
    print(f"{name}: n={g.n} m={g.m}")
    for mode in ("1p", "ic", "nic"):
        r = recognize(g, mode)
        where = [s for s in r.trace if s[0] == "mc4"][-1:] if r.trace else []
        status = "accepted" if r.accepted else f"rejected: {r.reason}"
        print(f"  {mode:3s} {status:28s} last K4 step {where}")
