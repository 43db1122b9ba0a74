"""P ⋊ K for K <= SL(2,3): expansive trivial-core subgroups appear exactly when K is in a Borel.

Run with ``python3 demos/borel_dichotomy.py [cache-dir]``; the order-648 lattice is cached
when a directory is given.
"""

from __future__ import annotations

import sys
import time

from roquette.constructors import standard_sl2_subgroups
from roquette.expansive import scan_expansive_trivial_core
from roquette.harness.cache import load_or_enumerate
from roquette.harness.groupdef import build_from_def


def main(cache_dir: str | None = None) -> None:
    orders = {k: S.order for k, S in standard_sl2_subgroups(3).items()}
    print(f"{'K':6s} {'|K|':>4s} {'|G|':>5s} {'subgroups':>9s} {'classes':>7s} {'expansive':>9s}  {'orders':14s} source")
    for k in ("1", "C2", "Cp", "C6", "Borel", "C4", "Q8", "SL"):
        t0 = time.perf_counter()
        G = build_from_def(f"pk p:3 i:1 k:{k}")
        L, src = load_or_enumerate(G, cache_dir)
        scan = scan_expansive_trivial_core(G, L)
        exp = sorted({r.subgroup.order for r in scan if r.expansive})
        print(f"{k:6s} {orders[k]:4d} {G.order:5d} {len(L):9d} {len(scan):7d} "
              f"{sum(r.expansive for r in scan):9d}  {str(exp):14s} {src} ({time.perf_counter() - t0:.2f}s)")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else None)
