"""Complete two initial walls to a consistent diagram and read off the rays.

    python demos/scattering.py [D]
"""

import sys

from rank2scatter.scattering import check_consistency, complete

D = int(sys.argv[1]) if len(sys.argv) > 1 else 10

for walls in ([((0, 1), 2), ((1, 0), 2)], [((0, 1), 4), ((1, 0), 1)], [((0, 1), 3), ((1, 0), 3)]):
    d = complete(walls, D)
    print("incoming:", " ".join(f"[{n[0]},{n[1]}]^{c}" for n, c in walls))
    for p in d.directions():
        X = d.rays[p]
        head = ", ".join(f"{c} at {list(n)}" for n, c in list(X)[:3])
        more = " ..." if len(X) > 3 else ""
        print(f"  ray {list(p)} slope {p.slope}: {head}{more}")
    print("  consistent:", check_consistency(d).equal, " rays:", len(d.directions()))

# with exponent 3 on both walls the number of rays keeps growing with D
for cut in sorted({4, 6, 8, D}):
    print(f"[0,1]^3 [1,0]^3 at D={cut}: {len(complete([((0, 1), 3), ((1, 0), 3)], cut).directions())} rays")
