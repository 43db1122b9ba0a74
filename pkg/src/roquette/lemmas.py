"""Exhaustive property checks for the structural lemmas behind the main results.

Two families of groups are covered:

* ``P ⋊ SL(2, p)`` with ``P = E ∘ C_{p^i}`` (normalizers of subgroups of the
  acting group, subgroups meeting P trivially, the normalizer of <f1>);
* split extensions ``C_n ⋊ S`` (normalizers of complements, fixed points of
  projections, the order-2 computation in ``C_{2^k} ⋊ C_2``);

plus the Roquette 2-group facts used in the p-group result.  Each function
returns a list of :class:`Check` records and never raises on a failed
property.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .checks import Check, subgroup_witness
from .constructors import (
    _p_part,
    build_cyclic_extension,
    build_pk,
    build_two_group,
    build_units_mod_n,
)
from .group import (
    GroupTable,
    SubgroupSet,
    are_isomorphic,
    center,
    centralizer,
    closure,
    is_normal,
    normalizer,
    prime_factors,
    subgroup_from_elements,
    subgroup_properties,
)
from .lattice import SubgroupLattice, conjugacy_classes, enumerate_subgroups, sylow_subgroup


def _product_set(G: GroupTable, A: SubgroupSet, B: SubgroupSet) -> np.ndarray:
    return np.unique(G.mul[np.ix_(A.elements, B.elements)])


def _same(S: SubgroupSet, elems: np.ndarray) -> bool:
    return S.order == elems.size and bool(np.array_equal(S.elements, elems))


# ---------------------------------------------------------------------------
# P ⋊ SL(2, p)


@dataclass
class PKView:
    """Coordinates on ``G = P ⋊ K``: ``x = e*|K| + m`` means ``x = e m``."""

    G: GroupTable

    @property
    def p(self) -> int:
        return self.G.meta["p"]

    @property
    def nk(self) -> int:
        return self.G.meta["K_order"]

    @property
    def Ptab(self) -> GroupTable:
        return self.G.meta["N_table"]

    @property
    def Ktab(self) -> GroupTable:
        return self.G.meta["K_table"]

    @property
    def A(self) -> np.ndarray:
        """``A[m, e]`` is the image of e under m."""
        return self.G.meta["action"].auto_of

    @cached_property
    def P(self) -> SubgroupSet:
        return self.G.part("N")

    @cached_property
    def K(self) -> SubgroupSet:
        return self.G.part("K")

    @cached_property
    def Z(self) -> SubgroupSet:
        return self.emb_P(center(self.Ptab).elements)

    @cached_property
    def E(self) -> SubgroupSet:
        Pt = self.Ptab
        return self.emb_P(closure(Pt, [Pt.named["f1"], Pt.named["f2"]]).elements)

    @cached_property
    def Zmask_P(self) -> np.ndarray:
        return center(self.Ptab).mask

    def emb_P(self, elems) -> SubgroupSet:
        return SubgroupSet(self.G, np.asarray(elems, dtype=np.int64) * self.nk)

    def split(self, x: int) -> tuple[int, int]:
        return divmod(int(x), self.nk)

    def meets_P_trivially(self, S: SubgroupSet) -> bool:
        return not np.any((S.elements % self.nk == 0) & (S.elements != 0))

    def cocycle_of(self, S: SubgroupSet) -> tuple[np.ndarray, dict[int, int]]:
        """For S with S ∩ P = 1: the projection H to K and ``phi: H -> P``."""
        e, m = np.divmod(S.elements, self.nk)
        return np.sort(m), {int(mm): int(ee) for ee, mm in zip(e, m)}


def check_lemma_fixed_mod_center(G: GroupTable) -> Check:
    """An element of SL acting trivially on e Z fixes e."""
    V = PKView(G)
    Pt, A = V.Ptab, V.A
    e = np.arange(Pt.order)
    moved_mod_z = V.Zmask_P[Pt.mul[Pt.inv[e][None, :], A]]  # e^-1 s(e) in Z
    bad = np.argwhere(moved_mod_z & (A != e[None, :]))
    w = None if bad.size == 0 else {"s": int(bad[0][0]), "e": int(bad[0][1])}
    return Check("fixed-mod-center", bad.size == 0,
                 f"{int(moved_mod_z.sum())} (s, e) pairs with s fixing e mod Z",
                 cases=int(A.size), witness=w)


def check_normalizer_splits(G: GroupTable) -> Check:
    """``N_G(S) = N_P(S) ⋊ N_SL(S)`` for every S <= SL."""
    V = PKView(G)
    bad = None
    Hs = [SubgroupSet(G, H.elements) for H in enumerate_subgroups(V.Ktab).subgroups]
    for S in Hs:
        NG = normalizer(G, S)
        NP, NK = NG & V.P, NG & V.K
        ok = (_same(NG, _product_set(G, NP, NK)) and NG.order == NP.order * NK.order
              and is_normal(G, NP, within=NG))
        if not ok:
            bad = subgroup_witness(S)
            break
    return Check("lemngp-normalizer-splits", bad is None, "S over all subgroups of SL(2,p)",
                 cases=len(Hs), witness=bad)


def check_normalizer_in_P(G: GroupTable, L: SubgroupLattice | None = None) -> Check:
    """``N_P(S) = N_E(S) Z`` for every subgroup S of G."""
    V = PKView(G)
    L = enumerate_subgroups(G) if L is None else L
    bad = None
    for S in L.subgroups:
        NP = normalizer(G, S, within=V.P)
        NE = normalizer(G, S, within=V.E)
        if not _same(NP, _product_set(G, NE, V.Z)):
            bad = subgroup_witness(S)
            break
    return Check("lemnps-normalizer-in-P", bad is None, f"|E| = {V.E.order}, |P| = {V.P.order}",
                 cases=len(L.subgroups), witness=bad)


def check_trivial_action_iff_normalizes(G: GroupTable) -> Check:
    """e in P normalizes H <= SL iff H fixes e."""
    V = PKView(G)
    A = V.A
    Hs = [SubgroupSet(G, H.elements) for H in enumerate_subgroups(V.Ktab).subgroups]
    cases = 0
    bad = None
    for H in Hs:
        fixes = (A[H.elements] == np.arange(V.Ptab.order)[None, :]).all(axis=0)
        normalizes = normalizer(G, H, within=V.P).mask[np.arange(V.Ptab.order) * V.nk]
        cases += fixes.size
        if not np.array_equal(fixes, normalizes):
            e = int(np.flatnonzero(fixes != normalizes)[0])
            bad = subgroup_witness(H, e=e)
            break
    return Check("lemat-trivial-action-iff-normalizes", bad is None, "all H <= SL, all e in P",
                 cases=cases, witness=bad)


def _complement_type(V: PKView, L: SubgroupLattice) -> list[SubgroupSet]:
    return [S for S in L.subgroups if not S.is_trivial() and V.meets_P_trivially(S)]


def check_cocycle_normalizer(G: GroupTable, L: SubgroupLattice | None = None) -> Check:
    """Normalizer criterion for ``S = {phi(h) h}`` with phi a 1-cocycle.

    ``x = e m`` normalizes S iff m normalizes H and
    ``e * m(phi(h)) * (m h m^-1)(e^-1) = phi(m h m^-1)`` for all h in H.
    """
    V = PKView(G)
    L = enumerate_subgroups(G) if L is None else L
    Pt, Kt, A = V.Ptab, V.Ktab, V.A
    e_all = np.arange(Pt.order)
    cases = 0
    bad = None
    for S in _complement_type(V, L):
        H, phi = V.cocycle_of(S)
        if H.size != S.order:
            bad = subgroup_witness(S, reason="projection not injective")
            break
        # phi is a 1-cocycle: phi(hk) = phi(h) h(phi(k))
        for h in H:
            for k in H:
                if phi[int(Kt.mul[h, k])] != Pt.mul[phi[int(h)], A[h, phi[int(k)]]]:
                    bad = subgroup_witness(S, reason="phi is not a cocycle")
                    break
            if bad:
                break
        if bad:
            break
        NG = normalizer(G, S).mask
        predicted = np.zeros(G.order, dtype=bool)
        for m in range(Kt.order):
            ct = Kt.conj_table[m]
            if not np.isin(ct[H], H).all():
                continue
            ok = np.ones(Pt.order, dtype=bool)
            for h in H:
                h2 = int(ct[h])
                lhs = Pt.mul[Pt.mul[e_all, A[m, phi[int(h)]]], A[h2][Pt.inv[e_all]]]
                ok &= lhs == phi[h2]
            predicted[e_all * V.nk + m] = ok
        cases += G.order
        if not np.array_equal(predicted, NG):
            x = int(np.flatnonzero(predicted != NG)[0])
            bad = subgroup_witness(S, x=x)
            break
    return Check("lemngs-cocycle-normalizer", bad is None, "all S with S ∩ P = 1, all x in G",
                 cases=cases, witness=bad)


def check_cocycle_centralizers(G: GroupTable, L: SubgroupLattice | None = None) -> Check:
    """``N_P(S) = C_P(S) <= C_P(H) = N_P(H)`` for S with S ∩ P = 1."""
    V = PKView(G)
    L = enumerate_subgroups(G) if L is None else L
    subs = _complement_type(V, L)
    bad = None
    for S in subs:
        H = SubgroupSet(G, np.unique(S.elements % V.nk))
        NPS, CPS = normalizer(G, S, within=V.P), centralizer(G, S, within=V.P)
        CPH, NPH = centralizer(G, H, within=V.P), normalizer(G, H, within=V.P)
        if not (NPS == CPS and CPS <= CPH and CPH == NPH):
            bad = subgroup_witness(S)
            break
    return Check("cebceh-centralizer-chain", bad is None, "all S with S ∩ P = 1",
                 cases=len(subs), witness=bad)


def check_normalizer_of_line(G: GroupTable, x: int, check_id: str) -> Check:
    """``N_G(<x>) = (<x> x Z) ⋊ {upper triangular}`` with a normal Sylow p-subgroup."""
    V = PKView(G)
    T = closure(G, [x])
    NG = normalizer(G, T)
    mats = V.Ktab.meta["matrices"]
    upper = SubgroupSet(G, np.flatnonzero(mats[:, 1, 0] == 0))
    TZ = SubgroupSet(G, _product_set(G, T, V.Z))
    expected = _product_set(G, TZ, upper)
    H, _ = _induced(G, NG)
    sylow_normal = is_normal(H, sylow_subgroup(H, V.p))
    NP, NK = NG & V.P, NG & V.K
    ok = (_same(NG, expected) and NP == TZ and NK == upper
          and NG.order == TZ.order * upper.order and sylow_normal)
    detail = (f"T = <{G.label(x)}>: |N_G(T)| = {NG.order}, |N_P(T)| = {NP.order}, "
              f"|N_SL(T)| = {NK.order} (upper triangular: {upper.order}), Sylow normal: {sylow_normal}")
    return Check(check_id, ok, detail, cases=1,
                 witness=None if ok else subgroup_witness(NK, normalizer_order=NG.order))


def check_normalizer_of_f1(G: GroupTable) -> Check:
    """The statement for ``T = <f1>`` with f1 the basis element the action is written in."""
    V = PKView(G)
    return check_normalizer_of_line(G, V.Ptab.named["f1"] * V.nk, "lemngtsp-normalizer-of-f1")


def borel_stable_line(G: GroupTable) -> int:
    """The element ``f1 z^c`` whose cyclic group is normalized by every upper triangular matrix.

    Exactly one c in [0, p) works; with the transvection formulas it is
    ``c = (p + 1) / 2``, not 0.
    """
    V = PKView(G)
    Pt, A = V.Ptab, V.A
    zE = Pt.commutator(Pt.named["f1"], Pt.named["f2"])
    upper = np.flatnonzero(V.Ktab.meta["matrices"][:, 1, 0] == 0)
    found = []
    for c in range(V.p):
        x = Pt.m(Pt.named["f1"], Pt.power(zE, c))
        T = closure(Pt, [x])
        if all(T.mask[A[m][T.elements]].all() for m in upper):
            found.append(x)
    if len(found) != 1:
        raise AssertionError(f"expected one Borel-stable line over f1, found {len(found)}")
    return found[0]


def check_normalizer_of_borel_line(G: GroupTable) -> Check:
    """The same statement for the Borel-stable order-p subgroup of <f1> Z."""
    V = PKView(G)
    return check_normalizer_of_line(G, borel_stable_line(G) * V.nk, "lemngtsp-borel-stable-line")


def _induced(G: GroupTable, S: SubgroupSet):
    from .group import induced_table

    return induced_table(G, S)


def check_conjugate_intersection(G: GroupTable, L: SubgroupLattice | None = None) -> Check:
    """For S ∩ P = 1, N_P(S) = Z and g in E: elements of gSg^-1 ∩ N_G(S) come from h fixing g."""
    V = PKView(G)
    L = enumerate_subgroups(G) if L is None else L
    A = V.A
    subs = [S for S in _complement_type(V, L) if normalizer(G, S, within=V.P) == V.Z]
    cases = 0
    bad = None
    for S in subs:
        NG = normalizer(G, S)
        for g in V.E.elements:
            gS = G.conj_table[g][S.elements]
            inter = gS[NG.mask[gS]]
            gP = int(g) // V.nk
            for x in inter:
                s = int(G.conj_table[G.inv[g], x])
                h = s % V.nk
                cases += 1
                if A[h, gP] != gP:
                    bad = subgroup_witness(S, g=int(g), x=int(x))
                    break
            if bad:
                break
        if bad:
            break
    return Check("lemhactstriv-conjugate-intersection", bad is None,
                 f"{len(subs)} subgroups S with S ∩ P = 1 and N_P(S) = Z", cases=cases, witness=bad)


def pk_lemma_checks(G: GroupTable | None = None, L: SubgroupLattice | None = None) -> list[Check]:
    G = build_pk(3, 1) if G is None else G
    L = enumerate_subgroups(G) if L is None else L
    return [
        check_lemma_fixed_mod_center(G),
        check_normalizer_splits(G),
        check_normalizer_in_P(G, L),
        check_trivial_action_iff_normalizes(G),
        check_cocycle_normalizer(G, L),
        check_cocycle_centralizers(G, L),
        check_normalizer_of_f1(G),
        check_normalizer_of_borel_line(G),
        check_conjugate_intersection(G, L),
    ]


# ---------------------------------------------------------------------------
# C_n ⋊ S


def check_complement_normalizers(G: GroupTable, L: SubgroupLattice | None = None) -> Check:
    """``N_{C_n}(D) = C_{C_n}(D) = C_{C_n}(pi(D))`` whenever D ∩ C_n = 1."""
    L = enumerate_subgroups(G) if L is None else L
    n, units, nk = G.meta["n"], G.meta["units"], G.meta["K_order"]
    N = G.part("N")
    cases = 0
    bad = None
    c = np.arange(n)
    for D in L.subgroups:
        if not (D & N).is_trivial():
            continue
        cases += 1
        us = {units[int(x) % nk] for x in D.elements}
        fixed = np.ones(n, dtype=bool)
        for u in us:
            fixed &= ((u - 1) * c) % n == 0
        CpiD = SubgroupSet(G, c[fixed] * nk)
        NND, CND = normalizer(G, D, within=N), centralizer(G, D, within=N)
        if not (NND == CND == CpiD):
            bad = subgroup_witness(D)
            break
    return Check("lemngcd-complement-normalizer", bad is None, G.name, cases=cases, witness=bad)


def check_fixed_points_factor(n: int) -> Check:
    """``C_{C_n}(H)`` is the product of the fixed points of the projections H_i."""
    A = build_units_mod_n(n)
    subs = enumerate_subgroups(A.table).subgroups
    c = np.arange(n)
    bad = None
    for H in subs:
        us = [A.units[int(x)] for x in H.elements]
        whole = np.ones(n, dtype=bool)
        for u in us:
            whole &= ((u - 1) * c) % n == 0
        prod = {0}
        for p in prime_factors(n) if n > 1 else []:
            _, pk = _p_part(n, p)
            j = np.arange(pk)
            fix = np.ones(pk, dtype=bool)
            for u in {u % pk for u in us}:
                fix &= ((u - 1) * j) % pk == 0
            comp = ((n // pk) * j[fix]) % n  # C_{p^k} inside C_n
            prod = {(a + int(b)) % n for a in prod for b in comp}
        if set(c[whole].tolist()) != prod:
            bad = {"n": n, "units": sorted(us)}
            break
    return Check("cproj-fixed-points-factor", bad is None, f"n = {n}", cases=len(subs), witness=bad)


def check_order_two_commutators(k: int) -> Check:
    """In ``C_{2^k} ⋊ <beta>``, beta in {-1, -1 + 2^(k-1)}: ``g b(g^-1)`` centralized forces b = 1."""
    n = 2 ** k
    cases = 0
    bad = None
    for beta in (n - 1, n // 2 - 1):
        G = build_cyclic_extension(n, [beta])
        N, K = G.part("N"), G.part("K")
        C = centralizer(G, K, within=N)
        involutions = SubgroupSet(G, [x for x in N.elements if G.mul[x, x] == 0])
        if C != involutions:
            bad = {"beta": beta, "reason": "centralizer is not Omega_1"}
            break
        nk = G.meta["K_order"]
        for j in range(1, n, 2):  # every generator g of C_{2^k}
            g = j * nk
            for b in K.elements:
                y = G.m(g, int(G.conj_table[b, G.inv[g]]))
                cases += 1
                if y in C and b != 0:
                    bad = {"beta": beta, "g": int(g), "b": int(b)}
                    break
    return Check(f"p2-order-two-commutators-k{k}", bad is None, f"k = {k}", cases=cases, witness=bad)


def cyclic_extension_lemma_checks(ns=(8, 9, 16, 24, 27), ks=(3, 4)) -> list[Check]:
    out = []
    for n in ns:
        A = build_units_mod_n(n)
        total, failed = 0, None
        for H in enumerate_subgroups(A.table).subgroups:
            gens = [A.units[int(x)] for x in H.generators]
            c = check_complement_normalizers(build_cyclic_extension(n, gens))
            total += c.cases
            if not c.passed:
                failed = c
                break
        out.append(failed or Check("lemngcd-complement-normalizer", True,
                                   f"all S <= Aut(C_{n})", cases=total))
        out.append(check_fixed_points_factor(n))
    out.extend(check_order_two_commutators(k) for k in ks)
    return out


# ---------------------------------------------------------------------------
# Roquette 2-groups


def roquette_two_group_facts(kind: str, order: int, L: SubgroupLattice | None = None) -> list[Check]:
    """Involutions, noncentral order-2 classes and their normalizer towers."""
    from .constructors import build_cyclic

    G = build_cyclic(order) if kind == "cyclic" else build_two_group(kind, order)
    L = enumerate_subgroups(G) if L is None else L
    name = f"{kind}-{order}"
    census = subgroup_properties(G).element_orders
    out = []
    if kind in ("cyclic", "quaternion"):
        out.append(Check(f"{name}-unique-involution", census.get(2, 0) == 1,
                         f"{census.get(2, 0)} involutions"))
        Z = closure(G, [int(np.flatnonzero(G.element_orders == 2)[0])])
        missing = [S for S in L.subgroups if not S.is_trivial() and not Z <= S]
        out.append(Check(f"{name}-every-subgroup-contains-Z", not missing,
                         f"{len(L.subgroups)} subgroups", cases=len(L.subgroups)))
        return out
    Z = center(G)
    out.append(Check(f"{name}-center-order-2", Z.order == 2, f"|Z| = {Z.order}"))
    expected_classes = 2 if kind == "dihedral" else 1
    avoiding = [cls for cls in conjugacy_classes(L) if not cls[0].is_trivial() and not Z <= cls[0]]
    all_order2 = all(S.order == 2 for cls in avoiding for S in cls)
    out.append(Check(f"{name}-noncentral-involution-classes",
                     all_order2 and len(avoiding) == expected_classes,
                     f"{len(avoiding)} classes of subgroups avoiding Z (sizes {[len(c) for c in avoiding]})",
                     cases=len(L.subgroups)))
    D8 = build_two_group("dihedral", 8)
    tower_ok = True
    for cls in avoiding:
        T = cls[0]
        S = normalizer(G, T)
        NS = normalizer(G, S)
        props = subgroup_properties(G, S)
        H, _ = _induced(G, NS)
        ok = (S == subgroup_from_elements(G, _product_set(G, T, Z)) and props.order == 4
              and props.is_elementary_abelian and NS.order == 8 and are_isomorphic(H, D8))
        tower_ok &= ok
    out.append(Check(f"{name}-normalizer-tower", tower_ok and bool(avoiding),
                     "N(T) = TZ Klein, N(N(T)) dihedral of order 8", cases=len(avoiding)))
    return out


ROQUETTE_TWO_GROUPS = [("cyclic", 8), ("cyclic", 16), ("quaternion", 8), ("quaternion", 16),
                       ("quaternion", 32), ("dihedral", 16), ("dihedral", 32),
                       ("semidihedral", 16), ("semidihedral", 32)]
