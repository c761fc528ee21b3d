"""Runtime on growing optimal 1-planar cylinders, with a log-log slope.

Run: python demos/05_scaling.py [max_n]
"""

import sys
import time

import numpy as np

from bpr.generators import cylinder_quadrangulation, gen_optimal_1planar
from bpr.recognizer import recognize

top = int(sys.argv[1]) if len(sys.argv) > 1 else 800
sizes = [n for n in (100, 200, 400, 800, 1600) if n <= top]
times = []
for n in sizes:
    g = gen_optimal_1planar(cylinder_quadrangulation(n // 4, 4))
    t = time.perf_counter()
    r = recognize(g, "1p")
    times.append(time.perf_counter() - t)
    print(f"n={g.n:5d} m={g.m:5d} accepted={r.accepted} {times[-1]:.2f}s checks={r.stats['gadget_checks']}")

slope = np.polyfit(np.log(sizes), np.log(times), 1)[0]
print(f"fitted exponent: {slope:.2f}")
