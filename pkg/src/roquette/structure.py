"""p-cores, the Fitting subgroup and Roquette tests."""

from __future__ import annotations

from dataclasses import dataclass

from .group import (
    GroupError,
    GroupTable,
    SubgroupSet,
    closure,
    is_normal,
    join,
    normal_core,
    prime_factors,
    quotient,
    subgroup_properties,
)
from .lattice import SubgroupLattice, enumerate_subgroups, normal_subgroups, sylow_subgroup


def p_core(G: GroupTable, p: int) -> SubgroupSet:
    """O_p(G), the G-core of a Sylow p-subgroup."""
    if G.order % p:
        return G.trivial
    return normal_core(G, sylow_subgroup(G, p))


def fitting(G: GroupTable) -> SubgroupSet:
    """F(G), generated by the O_p(G) over primes p dividing |G|."""
    return join(G, [p_core(G, p) for p in G.prime_factors])


def is_nilpotent_subgroup(G: GroupTable, S: SubgroupSet) -> bool:
    """Every Sylow subgroup of S is normal in S."""
    from .group import induced_table

    H, _ = induced_table(G, S)
    return all(is_normal(H, sylow_subgroup(H, p)) for p in H.prime_factors)


@dataclass
class RoquetteVerdict:
    is_roquette: bool
    witness: SubgroupSet | None
    method_agreement: bool


def is_roquette(G: GroupTable, lattice: SubgroupLattice | None = None) -> RoquetteVerdict:
    """Whether every normal abelian subgroup of G is cyclic.

    Method A scans all normal abelian subgroups for a non-cyclic one (the
    least such is the witness).  Method B scans normal elementary abelian
    subgroups of rank at least 2 lying in F(G).  The two agree on every
    finite group; ``method_agreement`` records that they did.
    """
    L = enumerate_subgroups(G) if lattice is None else lattice
    if L.restricted_to_avoid is not None:
        raise GroupError("Roquette test needs the full lattice")
    normals = normal_subgroups(L)
    witness_a = None
    for S in normals:
        props = subgroup_properties(G, S)
        if props.is_abelian and not props.is_cyclic:
            witness_a = S
            break
    F = fitting(G)
    found_b = False
    for S in normals:
        if S <= F:
            props = subgroup_properties(G, S)
            if props.is_elementary_abelian and props.rank >= 2:
                found_b = True
                break
    return RoquetteVerdict(witness_a is None, witness_a, (witness_a is None) == (not found_b))


def classify_roquette_p_group(G: GroupTable) -> str:
    """One of ``cyclic``, ``quaternion``, ``dihedral``, ``semidihedral``, ``not_roquette``.

    Uses the element-order census: a non-cyclic 2-group with one involution
    is generalized quaternion; a nonabelian group of order 2^n >= 16 with an
    element of order 2^(n-1) is dihedral with 2^(n-1)+1 involutions and
    semidihedral with 2^(n-2)+1.
    """
    pf = prime_factors(G.order)
    if len(pf) > 1:
        raise GroupError("not a p-group")
    if G.order == 1:
        return "cyclic"
    props = subgroup_properties(G)
    if props.is_cyclic:
        return "cyclic"
    if pf[0] != 2:
        return "not_roquette"
    census = props.element_orders
    inv = census.get(2, 0)
    if inv == 1 and not props.is_abelian:
        return "quaternion"
    n = G.order
    if n >= 16 and not props.is_abelian and census.get(n // 2, 0) > 0:
        if inv == n // 2 + 1:
            return "dihedral"
        if inv == n // 4 + 1:
            return "semidihedral"
    return "not_roquette"


def cyclic_normal_subgroup(G: GroupTable) -> SubgroupSet:
    return G.part("N")


def nonroquette_witness_for_alpha(G: GroupTable, p: int) -> SubgroupSet:
    """A rank-2 normal elementary abelian subgroup of ``C_n ⋊ S`` when alpha_p is in S.

    G must come from :func:`build_cyclic_extension`.  A complement D to C_n
    over <alpha_p> is searched for in the extension, then
    ``E = <g_p^(p^(k-1))> x D`` is formed and verified to be normal and
    elementary abelian of rank 2.
    """
    from .cohomology import find_complement
    from .constructors import _p_part, alpha_p

    if G.meta.get("kind") != "cyclic_extension":
        raise GroupError("expected a cyclic extension C_n ⋊ S")
    n, units = G.meta["n"], G.meta["units"]
    k, pk = _p_part(n, p)
    if k < 2:
        raise GroupError(f"{p}^2 does not divide {n}")
    if _p_part(n, 2)[1] == 4:
        raise GroupError("2-part of n is 4, outside the hypothesis")
    u = alpha_p(n, p)
    if u not in units:
        raise GroupError(f"alpha_{p} (u={u}) is not in S")
    N = G.part("N")
    Q, proj = quotient(G, N)
    k_elem = units.index(u)  # K-element (0, k) has index k
    H_image = closure(Q, [proj(k_elem)])
    D = find_complement(G, N, H_image, proj)
    if D is None:
        raise GroupError("no complement found; hypothesis violated")
    nk = G.meta["K_order"]
    z = (n // p) * nk  # g_p^(p^(k-1)) = g^(n/p)
    E = closure(G, [z, *D.generators])
    props = subgroup_properties(G, E)
    if not (is_normal(G, E) and props.is_elementary_abelian and props.rank == 2):
        raise AssertionError("constructed subgroup is not a rank-2 normal elementary abelian group")
    return E
