"""Walk through expansive subgroups on a few small groups.

Run with ``python3 demos/expansive_tour.py``.
"""

from __future__ import annotations

from roquette.expansive import is_expansive, scan_expansive_trivial_core
from roquette.group import closure, normalizer
from roquette.harness.groupdef import build_from_def
from roquette.lattice import enumerate_subgroups
from roquette.structure import fitting, is_roquette


def show_scan(definition: str) -> None:
    G = build_from_def(definition)
    L = enumerate_subgroups(G)
    v = is_roquette(G, L)
    scan = scan_expansive_trivial_core(G, L)
    hits = [r for r in scan if r.expansive]
    print(f"{definition:32s} |G|={G.order:4d} subgroups={len(L):4d} roquette={v.is_roquette!s:5s} "
          f"trivial-core classes={len(scan):3d} expansive={len(hits)}")
    for r in hits[:2]:
        print(f"    expansive: order {r.subgroup.order}, generated by "
              f"{[G.label(g) for g in r.subgroup.generators]}")


def main() -> None:
    print("Roquette groups against non-Roquette ones\n")
    for d in ["quaternion 16", "dihedral 16", "semidihedral 32", "dihedral 8",
              "semidirect cyclic:9 units:[4]", "semidirect cyclic:9 units:[8]", "q8s3"]:
        show_scan(d)

    print("\nWhy the reflection in D_32 fails")
    G = build_from_def("dihedral 32")
    T = closure(G, [G.named["s"]])
    r = is_expansive(G, T, trace=True)
    N = normalizer(G, T)
    print(f"  N(T) has order {N.order}; witness g = {G.label(r.witness_g)}")
    print("  core order for the first few g outside N(T):",
          [(G.label(g), c) for g, c in r.per_g_trace[:6]])

    print("\nQ_8 ⋊ S_3")
    G = build_from_def("q8s3")
    print(f"  F(G) has order {fitting(G).order}; S_3 complement expansive: "
          f"{is_expansive(G, G.part('K')).expansive}")


if __name__ == "__main__":
    main()
