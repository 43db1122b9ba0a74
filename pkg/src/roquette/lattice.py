"""Exhaustive subgroup enumeration up to and including conjugacy.

Subgroups are found by layered closure: starting from the trivial group,
each conjugacy-class representative ``H`` is extended by one cyclic
subgroup of prime-power order not in ``H``, and the closure is
deduplicated by its membership bit-set.  Only one representative per
conjugacy class is ever extended, and candidates are taken up to
conjugation by ``N_G(H)``; a new subgroup immediately brings its whole
conjugacy class into the table.  Completeness: every subgroup is generated
by prime-power elements, so it is reached by a chain of single-element
extensions, and each link of the chain is conjugate to one starting from a
listed representative.
"""

from __future__ import annotations

import logging
import time
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .group import (
    GroupError,
    GroupTable,
    SubgroupSet,
    _extend,
    closure,
    mask_bits,
    normal_core,
    normalizer,
    prime_factors,
)

log = logging.getLogger(__name__)


class LatticeBudgetError(RuntimeError):
    """Enumeration stopped at the configured subgroup budget."""

    def __init__(self, message: str, found: int, classes: int, pending: int):
        super().__init__(f"{message} (found {found} subgroups in {classes} classes, {pending} reps pending)")
        self.found = found
        self.classes = classes
        self.pending = pending


@dataclass
class SubgroupLattice:
    """All subgroups of ``group`` with their conjugacy classes.

    ``subgroups`` is sorted by (order, element list); ``classes[c]`` lists the
    subgroup indices of class ``c``, ``class_reps[c]`` is its least member and
    ``class_of[i]`` the class of subgroup ``i``.  Classes are ordered by
    their representative.
    """

    group: GroupTable
    subgroups: list[SubgroupSet]
    classes: list[list[int]]
    class_reps: list[int] = field(init=False)
    class_of: list[int] = field(init=False)
    restricted_to_avoid: int | None = None

    def __post_init__(self) -> None:
        self.classes = sorted((sorted(c) for c in self.classes), key=lambda c: c[0])
        self.class_reps = [c[0] for c in self.classes]
        self.class_of = [0] * len(self.subgroups)
        for ci, members in enumerate(self.classes):
            for i in members:
                self.class_of[i] = ci
        self._index = {S.bits: i for i, S in enumerate(self.subgroups)}

    def __len__(self) -> int:
        return len(self.subgroups)

    def index(self, S: SubgroupSet) -> int:
        return self._index[S.bits]

    def __contains__(self, S: SubgroupSet) -> bool:
        return S.bits in self._index

    def reps(self) -> list[SubgroupSet]:
        return [self.subgroups[i] for i in self.class_reps]

    def stats(self) -> dict:
        return {"subgroups": len(self.subgroups), "classes": len(self.classes)}


def cyclic_subgroup_ids(G: GroupTable) -> np.ndarray:
    """``ids[x]`` is the least index generating the same cyclic subgroup as x."""
    n = G.order
    ids = np.full(n, -1, dtype=np.int64)
    orders = G.element_orders
    for x in range(n):
        if ids[x] >= 0:
            continue
        o = int(orders[x])
        pw = [0] * o
        cur = 0
        for k in range(o):
            pw[k] = cur
            cur = int(G.mul[cur, x])
        gens = [pw[k] for k in range(1, o) if np.gcd(k, o) == 1] or [0]
        ids[gens] = min(gens + [x])
    return ids


def _is_prime_power(k: int) -> bool:
    return k > 1 and len(prime_factors(k)) == 1


def enumerate_subgroups(
    G: GroupTable,
    *,
    max_subgroups: int | None = None,
    avoid: SubgroupSet | None = None,
    progress: bool = False,
) -> SubgroupLattice:
    """Every subgroup of G, grouped into conjugacy classes.

    With ``avoid`` (a normal subgroup) only subgroups meeting it trivially
    are enumerated; that family is closed under conjugation and under taking
    subgroups, so the same layered closure reaches all of it.
    ``max_subgroups`` bounds memory; exceeding it raises
    :class:`LatticeBudgetError` carrying partial-progress counts.
    """
    t0 = time.perf_counter()
    n = G.order
    ct = G.conj_table
    cyc = cyclic_subgroup_ids(G)
    orders = G.element_orders
    cand_ids = np.unique(cyc[[x for x in range(n) if _is_prime_power(int(orders[x]))]])
    avoid_mask = None
    if avoid is not None:
        avoid_mask = avoid.mask
        avoid_mask[0] = False
        cand_ids = np.array([c for c in cand_ids if not avoid_mask[c]], dtype=np.int64)
    ggens = list(G.generators)

    subgroups: list[SubgroupSet] = []
    index: dict[int, int] = {}
    classes: list[list[int]] = []

    def add_class(elems: np.ndarray, mask: np.ndarray, gens: list[int]) -> int:
        """Register the conjugacy class of a new subgroup; returns its index."""
        bits = mask_bits(mask)
        rep = SubgroupSet(G, elems, gens, bits=bits)
        members = [len(subgroups)]
        index[bits] = len(subgroups)
        subgroups.append(rep)
        queue = deque([rep])
        while queue:
            S = queue.popleft()
            for s in ggens:
                row = ct[s]
                img = row[S.elements]
                m = np.zeros(n, dtype=bool)
                m[img] = True
                b = mask_bits(m)
                if b not in index:
                    T = SubgroupSet(G, np.flatnonzero(m), [int(row[g]) for g in S.generators], bits=b)
                    index[b] = len(subgroups)
                    members.append(len(subgroups))
                    subgroups.append(T)
                    queue.append(T)
        classes.append(members)
        if max_subgroups is not None and len(subgroups) > max_subgroups:
            raise LatticeBudgetError("subgroup budget exceeded", len(subgroups), len(classes), len(frontier))
        return members[0]

    frontier: deque[int] = deque()
    triv = np.zeros(n, dtype=bool)
    triv[0] = True
    frontier.append(add_class(np.zeros(1, dtype=np.int64), triv, []))
    processed = 0
    while frontier:
        hi = frontier.popleft()
        H = subgroups[hi]
        processed += 1
        hmask = H.mask
        cands = [int(c) for c in cand_ids if not hmask[c]]
        if not cands:
            continue
        # one candidate per N_G(H)-orbit of cyclic subgroups
        NH = normalizer(G, H)
        ngens = list(H.extend_generators_to(NH))
        chosen = _orbit_reps(cands, ngens, ct, cyc)
        hgens = list(H.generators)
        for c in chosen:
            elems, mask = _extend(G, H.elements, hmask, hgens + [c])
            if avoid_mask is not None and (mask & avoid_mask).any():
                continue
            b = mask_bits(mask)
            if b in index:
                continue
            frontier.append(add_class(elems, mask, hgens + [c]))
        if progress and processed % 200 == 0:
            log.info("processed %d reps, %d subgroups, %d classes", processed, len(subgroups), len(classes))
    log.debug("enumerated %d subgroups of %s in %.2fs", len(subgroups), G.name, time.perf_counter() - t0)
    return _finalize(G, subgroups, classes, avoid)


def _orbit_reps(cands: list[int], ngens: list[int], ct: np.ndarray, cyc: np.ndarray) -> list[int]:
    if not ngens:
        return cands
    pos = {c: i for i, c in enumerate(cands)}
    parent = list(range(len(cands)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    arr = np.array(cands, dtype=np.int64)
    for g in ngens:
        imgs = cyc[ct[g][arr]]
        for i, c2 in enumerate(imgs):
            j = pos.get(int(c2))
            if j is not None:
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    return [c for i, c in enumerate(cands) if find(i) == i]


def _finalize(G: GroupTable, subgroups: list[SubgroupSet], classes: list[list[int]],
              avoid: SubgroupSet | None) -> SubgroupLattice:
    order = sorted(range(len(subgroups)), key=lambda i: subgroups[i].key())
    new_pos = {old: new for new, old in enumerate(order)}
    subs = [subgroups[i] for i in order]
    cls = [[new_pos[i] for i in c] for c in classes]
    return SubgroupLattice(G, subs, cls, restricted_to_avoid=None if avoid is None else avoid.bits)


def lattice_from_subgroups(G: GroupTable, subgroups: list[SubgroupSet]) -> SubgroupLattice:
    """Rebuild class structure for a known complete list of subgroups."""
    index = {S.bits: i for i, S in enumerate(subgroups)}
    parent = list(range(len(subgroups)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    ct = G.conj_table
    n = G.order
    for i, S in enumerate(subgroups):
        for s in G.generators:
            m = np.zeros(n, dtype=bool)
            m[ct[s][S.elements]] = True
            j = index.get(mask_bits(m))
            if j is None:
                raise GroupError("subgroup list is not closed under conjugation")
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for i in range(len(subgroups)):
        groups.setdefault(find(i), []).append(i)
    return _finalize(G, list(subgroups), list(groups.values()), None)


def conjugacy_classes(L: SubgroupLattice) -> list[list[SubgroupSet]]:
    """The conjugacy classes of ``L`` as lists of subgroups, rep first."""
    return [[L.subgroups[i] for i in c] for c in L.classes]


def normal_subgroups(L: SubgroupLattice) -> list[SubgroupSet]:
    return [L.subgroups[c[0]] for c in L.classes if len(c) == 1]


def trivial_core_classes(L: SubgroupLattice) -> list[SubgroupSet]:
    """Representatives T != 1 of the classes with ``core_G(T) = 1``."""
    G = L.group
    out = []
    for ci, c in enumerate(L.classes):
        T = L.subgroups[c[0]]
        if T.is_trivial():
            continue
        if len(c) == 1:
            continue  # normal and nontrivial
        if normal_core(G, T).is_trivial():
            out.append(T)
    return out


def sylow_subgroup(G: GroupTable, p: int) -> SubgroupSet:
    """A Sylow p-subgroup, grown one normalizer step at a time.

    While ``[G:P]`` is divisible by p, some element of p-power order in
    ``N_G(P) \\ P`` exists and ``P<x>`` is a larger p-group.
    """
    if G.order % p:
        raise GroupError(f"{p} does not divide |G| = {G.order}")
    full = 1
    while G.order % (full * p) == 0:
        full *= p
    orders = G.element_orders
    ppow = np.array([_is_power_of(int(o), p) for o in orders])
    P = G.trivial
    while P.order < full:
        N = normalizer(G, P)
        pm = P.mask
        cands = [int(x) for x in N.elements if ppow[x] and not pm[x]]
        if not cands:
            raise AssertionError("Sylow growth stalled")
        P = closure(G, [cands[0]], start=P)
    return P


def _is_power_of(o: int, p: int) -> bool:
    while o % p == 0:
        o //= p
    return o == 1
