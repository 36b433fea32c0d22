"""Both rank-2 affine identities, verified at growing truncation degree.

Each side is an infinite product written with families; truncation keeps
only factors of degree <= D, so every check is a finite exact computation.

    python demos/affine_identities.py
"""

import time

from rank2scatter import catalog, dsl

for id in ("a11", "a22"):
    inst = catalog.build(id)
    print(f"{id}:")
    print("   ", dsl.to_text(inst.lhs), "=")
    print("   ", dsl.to_text(inst.rhs))
    for D in (4, 8, 12, 16):
        t0 = time.perf_counter()
        r = catalog.verify(id, cutoff=D)
        print(f"    D={D:>2}  {r.result.to_json()['status']}  {time.perf_counter() - t0:.3f}s"
              f"  ({len(inst.rhs.expand(D))} factors on the right)")

# the generic families, on a few random parameter choices
for id in ("thm31", "thm41"):
    for p in catalog.enumerate_random_instances(id, 3, seed=1):
        r = catalog.verify(id, p, 10)
        print(f"{id} n={list(p.n)} n'={list(p.nprime)} c={p.c}: {r.result.to_json()['status']}")
