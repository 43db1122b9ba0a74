"""Expansive subgroups.

T <= G is expansive when, for every g outside N_G(T), the N_G(T)-core of
``(gTg^-1 ∩ N_G(T)) T`` is strictly larger than T.  The core always
contains T (T is normal in N_G(T)), so T fails to be expansive exactly when
some g gives a core equal to T; that g is reported as the witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .group import GroupError, GroupTable, SubgroupSet, _core, conjugate_subgroup, normalizer
from .lattice import SubgroupLattice, enumerate_subgroups, trivial_core_classes


@dataclass
class ExpansivityResult:
    subgroup: SubgroupSet
    expansive: bool
    witness_g: int | None = None
    per_g_trace: list[tuple[int, int]] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.expansive != (self.witness_g is None):
            raise ValueError("witness present iff not expansive")


def expansion_core(G: GroupTable, T: SubgroupSet, g: int, N: SubgroupSet | None = None) -> SubgroupSet:
    """``core_{N_G(T)}((gTg^-1 ∩ N_G(T)) T)``."""
    N = normalizer(G, T) if N is None else N
    X = _expansion_subgroup(G, T, g, N)
    return _core(G, N.generators, X)


def _expansion_subgroup(G: GroupTable, T: SubgroupSet, g: int, N: SubgroupSet) -> SubgroupSet:
    gT = conjugate_subgroup(G, g, T)
    inter = gT & N
    prods = np.unique(G.mul[np.ix_(inter.elements, T.elements)])
    return SubgroupSet(G, prods)


def is_expansive(G: GroupTable, T: SubgroupSet, trace: bool = False) -> ExpansivityResult:
    """Decide expansivity of T, scanning g in increasing index order.

    Stops at the first witness unless ``trace`` is set, in which case every
    g outside N_G(T) is recorded with the order of its core.  A subgroup
    with N_G(T) = G is vacuously expansive.
    """
    if T.group is not G and T.group.order != G.order:
        raise GroupError("subgroup belongs to another group")
    N = normalizer(G, T)
    nmask = N.mask
    ngens = N.generators
    # the expansion subgroup only depends on the left coset gN
    seen = np.zeros(G.order, dtype=bool)
    seen[N.elements] = True
    witness = None
    rows: list[tuple[int, int]] | None = [] if trace else None
    core_of_coset: dict[int, int] = {}
    for g in range(G.order):
        if nmask[g]:
            continue
        if seen[g]:
            if trace:
                rep = core_of_coset[g]
                rows.append((g, rep))
            continue
        coset = G.mul[g, N.elements]
        seen[coset] = True
        X = _expansion_subgroup(G, T, g, N)
        C = _core(G, ngens, X)
        if not T <= C:
            raise AssertionError("core fell below T")
        if trace:
            for x in coset:
                core_of_coset[int(x)] = C.order
            rows.append((g, C.order))
        if C.bits == T.bits and witness is None:
            witness = g
            if not trace:
                break
    if trace:
        rows.sort()
    return ExpansivityResult(T, witness is None, witness, rows)


def scan_expansive_trivial_core(G: GroupTable, lattice: SubgroupLattice | None = None,
                                trace: bool = False) -> list[ExpansivityResult]:
    """Expansivity of one representative per class of nontrivial trivial-core subgroups.

    Conjugate subgroups are expansive together, so representatives suffice.
    """
    L = enumerate_subgroups(G) if lattice is None else lattice
    return [is_expansive(G, T, trace=trace) for T in trivial_core_classes(L)]


def expansive_entries(results: list[ExpansivityResult]) -> list[ExpansivityResult]:
    return [r for r in results if r.expansive]
