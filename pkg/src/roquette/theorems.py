"""Theorem-level verification cases, each returning :class:`Check` records."""

from __future__ import annotations

from dataclasses import dataclass

from .checks import Check, subgroup_witness
from .cohomology import CyclicModuleAction, h1_cyclic, h1_linear, h2_cyclic, sl2_natural_action
from .constructors import (
    _p_part,
    alpha_p,
    build_cyclic,
    build_cyclic_extension,
    build_pk,
    build_q8_s3,
    build_SL2,
    build_two_group,
    build_units_mod_n,
    standard_sl2_subgroups,
)
from .expansive import is_expansive, scan_expansive_trivial_core
from .group import GroupError, GroupTable, prime_factors
from .lattice import SubgroupLattice, enumerate_subgroups
from .structure import classify_roquette_p_group, is_roquette, nonroquette_witness_for_alpha


def expansive_summary(results) -> list[dict]:
    return [subgroup_witness(r.subgroup) for r in results if r.expansive]


# ---------------------------------------------------------------------------
# Roquette p-groups


def build_roquette_p_group(kind: str, order: int) -> GroupTable:
    return build_cyclic(order) if kind == "cyclic" else build_two_group(kind, order)


def roquette_p_group_checks(kind: str, order: int, G: GroupTable | None = None,
                            L: SubgroupLattice | None = None) -> list[Check]:
    G = build_roquette_p_group(kind, order) if G is None else G
    L = enumerate_subgroups(G) if L is None else L
    name = f"{kind}-{order}"
    got = classify_roquette_p_group(G)
    v = is_roquette(G, L)
    scan = scan_expansive_trivial_core(G, L)
    exp = expansive_summary(scan)
    return [
        Check(f"{name}-classification", got == kind, f"classified as {got}"),
        Check(f"{name}-is-roquette", v.is_roquette and v.method_agreement,
              f"roquette={v.is_roquette}, agreement={v.method_agreement}"),
        Check(f"{name}-no-expansive-trivial-core", not exp,
              f"{len(scan)} trivial-core classes, {len(exp)} expansive", cases=len(scan),
              witness={"expansive": exp} if exp else None),
    ]


# ---------------------------------------------------------------------------
# groups with cyclic Fitting subgroup


def two_part(n: int) -> int:
    return _p_part(n, 2)[1] if n % 2 == 0 else 1


def hypothesis_filter(n: int) -> bool:
    """The 2-part of n must not be exactly 4."""
    return two_part(n) != 4


def unit_subgroups(n: int) -> list[tuple[int, ...]]:
    """Generators (as units) of every subgroup of Aut(C_n), in lattice order."""
    A = build_units_mod_n(n)
    L = enumerate_subgroups(A.table)
    return [tuple(A.units[int(x)] for x in S.generators) for S in L.subgroups]


def squareful_primes(n: int) -> list[int]:
    return [p for p in prime_factors(n) if n % (p * p) == 0] if n > 1 else []


def alpha_in(n: int, units: set[int]) -> list[int]:
    """Primes p (with p^2 | n) such that alpha_p lies in S."""
    return [p for p in squareful_primes(n) if alpha_p(n, p) in units]


def alpha_in_projection(n: int, units: set[int]) -> list[int]:
    """Primes p such that the projection of S to Aut(C_{p^k}) contains alpha_p's component."""
    out = []
    for p in squareful_primes(n):
        k, pk = _p_part(n, p)
        if (1 + p ** (k - 1)) % pk in {u % pk for u in units}:
            out.append(p)
    return out


@dataclass
class CyclicFittingCase:
    n: int
    unit_gens: tuple[int, ...]
    units: list[int]
    roquette: bool
    method_agreement: bool
    alpha_primes: list[int]
    projection_alpha_primes: list[int]
    expansive: list[dict]
    trivial_core_classes: int
    checks: list[Check]


def cyclic_fitting_case(n: int, unit_gens, G: GroupTable | None = None,
                        L: SubgroupLattice | None = None) -> CyclicFittingCase:
    """Parts 1 to 3 for one split extension C_n ⋊ S."""
    if not hypothesis_filter(n):
        raise GroupError(f"2-part of {n} is 4; excluded by hypothesis")
    G = build_cyclic_extension(n, list(unit_gens)) if G is None else G
    L = enumerate_subgroups(G) if L is None else L
    units = list(G.meta["units"])
    uset = set(units)
    v = is_roquette(G, L)
    scan = scan_expansive_trivial_core(G, L)
    exp = expansive_summary(scan)
    a_primes, proj_primes = alpha_in(n, uset), alpha_in_projection(n, uset)
    tag = f"C{n}:<{','.join(map(str, unit_gens))}>"
    checks = [Check("method-agreement", v.method_agreement, tag, group=tag)]
    for p in a_primes:
        try:
            E = nonroquette_witness_for_alpha(G, p)
            checks.append(Check("part1-alpha-witness", not v.is_roquette,
                                f"alpha_{p} in S: rank-2 normal elementary abelian E of order {E.order}",
                                witness=subgroup_witness(E, p=p), group=tag))
        except (GroupError, AssertionError) as exc:
            checks.append(Check("part1-alpha-witness", False, f"alpha_{p}: {exc}", group=tag))
    if not proj_primes:
        checks.append(Check("part2-no-expansive", not exp,
                            f"no projection contains alpha_p; {len(scan)} trivial-core classes, "
                            f"{len(exp)} expansive", cases=len(scan),
                            witness={"expansive": exp} if exp else None, group=tag))
    if not v.is_roquette:
        checks.append(Check("part3-nonroquette-has-expansive", bool(exp),
                            f"not Roquette; {len(exp)} expansive trivial-core classes",
                            cases=len(scan),
                            witness={"expansive": exp[:1],
                                     "normal_noncyclic": subgroup_witness(v.witness)}, group=tag))
    return CyclicFittingCase(n, tuple(unit_gens), units, v.is_roquette, v.method_agreement,
                             a_primes, proj_primes, exp, len(scan), checks)


DEFAULT_N_LIST = (5, 7, 8, 9, 15, 16, 20, 21, 24, 27, 32, 33)


# ---------------------------------------------------------------------------
# cohomology of <alpha_p> on C_n


@dataclass
class CohomologyRow:
    n: int
    p: int
    k: int
    h1: list[int]
    h2: list[int]
    expected: list[int]

    @property
    def ok(self) -> bool:
        return self.h1 == self.expected and self.h2 == self.expected


def cohomology_rows(max_n: int = 200, min_n: int = 2) -> list[CohomologyRow]:
    """H^1 and H^2 of <alpha_p> on C_n for every n <= max_n and p with p^2 | n.

    Expected: trivial, except C_2 when p = 2 and the 2-part of n is 4.
    """
    rows = []
    for n in range(max(min_n, 2), max_n + 1):
        for p in squareful_primes(n):
            k, pk = _p_part(n, p)
            act = CyclicModuleAction(n, alpha_p(n, p))
            expected = [2] if (p == 2 and pk == 4) else []
            rows.append(CohomologyRow(n, p, k, h1_cyclic(act).factors, h2_cyclic(act).factors, expected))
    return rows


def sl2_h1_check(p: int = 3) -> Check:
    r = h1_linear(sl2_natural_action(build_SL2(p)))
    ok = r.is_trivial() and r.coboundary_dim == 2
    return Check("lemh1-sl2-natural-module", ok,
                 f"H^1 factors {r.factors}, cocycle_dim {r.cocycle_dim}, coboundary_dim {r.coboundary_dim}")


# ---------------------------------------------------------------------------
# P ⋊ K


PK_EXPECT_EXPANSIVE = {"1": True, "C2": True, "Cp": True, "C6": True, "Borel": True,
                       "C4": False, "Q8": False, "SL": False}


def pk_group(p: int, i: int, kname: str) -> GroupTable:
    subs = standard_sl2_subgroups(p)
    if kname not in subs:
        raise GroupError(f"unknown subgroup {kname!r} of SL(2,{p}); choose from {sorted(subs)}")
    K = subs[kname]
    G = build_pk(p, i, None if K.order == build_SL2(p).order else K)
    G.meta["K_name"] = kname
    return G


def pk_checks(p: int, i: int, kname: str, G: GroupTable | None = None,
              L: SubgroupLattice | None = None) -> list[Check]:
    """Expansive trivial-core subgroups exist exactly when K lies in a Borel subgroup."""
    G = pk_group(p, i, kname) if G is None else G
    L = enumerate_subgroups(G) if L is None else L
    scan = scan_expansive_trivial_core(G, L)
    exp = expansive_summary(scan)
    tag = f"P{p}^{2 + i}:{kname}"
    want = PK_EXPECT_EXPANSIVE[kname]
    checks = [Check("borel-dichotomy", bool(exp) == want,
                    f"K={kname}: {len(exp)} expansive of {len(scan)} trivial-core classes "
                    f"(expected {'some' if want else 'none'})",
                    cases=len(scan), witness={"expansive": exp} if exp else None, group=tag)]
    if want:
        orders = sorted({e["order"] for e in exp})
        checks.append(Check("expansive-order-p", p in orders, f"expansive orders {orders}", group=tag))
    return checks


def psl2_checks(p: int = 3, i: int = 1, G: GroupTable | None = None,
                L: SubgroupLattice | None = None) -> list[Check]:
    G = build_pk(p, i) if G is None else G
    L = enumerate_subgroups(G) if L is None else L
    scan = scan_expansive_trivial_core(G, L)
    exp = expansive_summary(scan)
    return [Check("no-expansive-trivial-core", not exp,
                  f"|G| = {G.order}: {len(L)} subgroups, {len(scan)} trivial-core classes, {len(exp)} expansive",
                  cases=len(scan), witness={"expansive": exp} if exp else None, group=G.name)]


# ---------------------------------------------------------------------------
# Q_8 ⋊ S_3


def q8s3_checks(G: GroupTable | None = None, L: SubgroupLattice | None = None) -> list[Check]:
    G = build_q8_s3() if G is None else G
    L = enumerate_subgroups(G) if L is None else L
    v = is_roquette(G, L)
    S3 = G.part("K")
    r = is_expansive(G, S3)
    return [
        Check("q8s3-roquette", v.is_roquette and v.method_agreement,
              f"roquette={v.is_roquette}, agreement={v.method_agreement}", group=G.name),
        Check("q8s3-s3-expansive", r.expansive, f"S3 complement expansive={r.expansive}",
              witness=subgroup_witness(S3), group=G.name),
    ]
