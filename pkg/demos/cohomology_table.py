"""Print H^1 and H^2 of <alpha_p> acting on C_n, flagging the exceptional rows.

Run with ``python3 demos/cohomology_table.py [max_n]``.
"""

from __future__ import annotations

import argparse

from roquette.theorems import cohomology_rows


def fmt(factors):
    return "x".join(f"C{f}" for f in factors) or "1"


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("max_n", nargs="?", type=int, default=64)
    args = ap.parse_args()
    rows = cohomology_rows(args.max_n)
    for r in rows:
        flag = "  <- 2-part is 4" if r.h1 else ""
        print(f"n={r.n:4d} p={r.p} k={r.k}  H1={fmt(r.h1):4s} H2={fmt(r.h2):4s}{flag}")
    print(f"{sum(r.ok for r in rows)}/{len(rows)} rows as expected")


if __name__ == "__main__":
    main()
