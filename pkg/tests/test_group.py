from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import SMALL_DEFS, group
from roquette.constructors import build_cyclic, build_extraspecial, build_extraspecial_central, build_two_group
from roquette.group import (
    GroupError,
    GroupTable,
    are_isomorphic,
    center,
    centralizer,
    closure,
    core_in,
    is_normal,
    join,
    normal_core,
    normalizer,
    prime_factors,
    quotient,
    subgroup_from_elements,
    subgroup_properties,
)
from roquette.lattice import enumerate_subgroups


def as_set(S):
    return frozenset(int(x) for x in S.elements)


# ---------------------------------------------------------------------------
# table validation


def test_rejects_non_latin_square():
    with pytest.raises(GroupError):
        GroupTable(np.array([[0, 1], [1, 1]]))


def test_rejects_nonassociative_loop():
    # a Latin square with identity 0 that is not associative (order 5 loop)
    t = np.array([[0, 1, 2, 3, 4],
                  [1, 0, 3, 4, 2],
                  [2, 4, 0, 1, 3],
                  [3, 2, 4, 0, 1],
                  [4, 3, 1, 2, 0]])
    with pytest.raises(GroupError):
        GroupTable(t)


def test_order_bound_enforced():
    with pytest.raises(GroupError):
        build_cyclic(10, bound=8)


def test_table_is_read_only():
    G = build_cyclic(4)
    with pytest.raises(ValueError):
        G.mul[0, 0] = 1


@pytest.mark.parametrize("d", SMALL_DEFS)
def test_element_orders_match_brute_force(d):
    G = group(d)
    assert [int(o) for o in G.element_orders] == [oracles.element_order(G, x) for x in range(G.order)]


# ---------------------------------------------------------------------------
# closure


def test_closure_examples():
    C6 = build_cyclic(6)
    assert closure(C6, [2]).order == 3
    Q8 = build_two_group("quaternion", 8)
    assert closure(Q8, [Q8.named["r"], Q8.named["s"]]).order == 8
    D16 = build_two_group("dihedral", 16)
    assert closure(D16, [D16.named["s"]]).order == 2


@pytest.mark.parametrize("d", ["dihedral 16", "sl2 3", "semidirect cyclic:12 units:[5]", "q8s3"])
@given(data=st.data())
def test_closure_agrees_with_oracle_and_is_idempotent(d, data):
    G = group(d)
    gens = data.draw(st.lists(st.integers(0, G.order - 1), max_size=3))
    S = closure(G, gens)
    assert as_set(S) == oracles.close(G, gens)
    assert closure(G, S.generators) == S
    assert closure(G, list(S.elements)) == S
    assert G.order % S.order == 0


@given(data=st.data())
def test_closure_is_monotone(data):
    G = group("sl2 3")
    a = data.draw(st.lists(st.integers(0, G.order - 1), max_size=3))
    b = data.draw(st.lists(st.integers(0, G.order - 1), max_size=2))
    assert closure(G, a) <= closure(G, a + b)


def test_subgroup_from_elements_rejects_non_subgroup():
    G = build_cyclic(6)
    with pytest.raises(GroupError):
        subgroup_from_elements(G, [0, 1])


# ---------------------------------------------------------------------------
# normality, normalizers, centralizers, cores


def test_normality_examples():
    Q8 = build_two_group("quaternion", 8)
    assert is_normal(Q8, center(Q8))
    D16 = build_two_group("dihedral", 16)
    T = closure(D16, [D16.named["s"]])
    assert not is_normal(D16, T)
    assert is_normal(D16, T, within=T)


@pytest.mark.parametrize("d", ["dihedral 16", "semidihedral 16", "sl2 3", "semidirect cyclic:7 units:[2]"])
def test_normalizer_centralizer_core_against_oracle(d):
    G = group(d)
    L = enumerate_subgroups(G)
    Z = as_set(center(G))
    assert Z == oracles.centralizer(G, range(G.order))
    for S in L.subgroups:
        s = as_set(S)
        N, C = normalizer(G, S), centralizer(G, S)
        assert as_set(N) == oracles.normalizer(G, s)
        assert as_set(C) == oracles.centralizer(G, s)
        assert C <= N and Z <= as_set(C)
        assert as_set(normal_core(G, S)) == oracles.core(G, range(G.order), s)
        assert is_normal(G, S) == oracles.is_normal(G, s)


def test_core_examples():
    D16 = build_two_group("dihedral", 16)
    assert normal_core(D16, D16.whole) == D16.whole
    T = closure(D16, [D16.named["s"]])
    assert normal_core(D16, T).is_trivial()


def test_core_in_requires_containment():
    G = build_two_group("dihedral", 16)
    s, r = closure(G, [G.named["s"]]), closure(G, [G.named["r"]])
    with pytest.raises(GroupError):
        core_in(G, r, s)


@given(data=st.data())
def test_core_contains_normal_subgroups_of_x(data):
    """T <= core_N(X) whenever T <= X and T is normal in N."""
    G = group("q8s3")
    t = data.draw(st.integers(0, G.order - 1))
    x = data.draw(st.integers(0, G.order - 1))
    T = closure(G, [t])
    N = normalizer(G, T)
    X = join(G, [T, closure(G, [x]) & N])
    assert X <= N
    assert T <= core_in(G, N, X)


def test_center_examples():
    assert center(build_two_group("quaternion", 8)).order == 2
    C9 = build_cyclic(9)
    assert center(C9) == C9.whole


# ---------------------------------------------------------------------------
# quotients


def test_q8_mod_center_is_klein():
    Q8 = build_two_group("quaternion", 8)
    Q, proj = quotient(Q8, center(Q8))
    klein = group("direct (cyclic 2) (cyclic 2)")
    assert Q.order == 4 and are_isomorphic(Q, klein)
    # oracle: cosets built by brute force
    Z = as_set(center(Q8))
    cosets = {frozenset(oracles.mul(Q8, g, z) for z in Z) for g in range(8)}
    assert len(cosets) == 4
    for c in cosets:
        assert len({proj(x) for x in c}) == 1


def test_quotient_by_trivial_is_isomorphic():
    G = group("sl2 3")
    Q, proj = quotient(G, G.trivial)
    assert Q.order == G.order and are_isomorphic(Q, G)


def test_extraspecial_mod_center_is_elementary_abelian():
    E = build_extraspecial(3)
    Q, _ = quotient(E, center(E))
    props = subgroup_properties(Q)
    assert props.order == 9 and props.is_elementary_abelian and props.rank == 2


def test_quotient_rejects_non_normal():
    D16 = build_two_group("dihedral", 16)
    with pytest.raises(GroupError):
        quotient(D16, closure(D16, [D16.named["s"]]))


@pytest.mark.parametrize("d", ["dihedral 16", "sl2 3", "q8s3"])
def test_projection_is_surjective_with_kernel_n(d):
    G = group(d)
    for S in enumerate_subgroups(G).subgroups:
        if is_normal(G, S):
            Q, proj = quotient(G, S)
            assert proj.is_surjective()
            assert proj.kernel() == S
            assert Q.order * S.order == G.order


# ---------------------------------------------------------------------------
# properties and isomorphism


def test_subgroup_properties_examples():
    K = group("direct (cyclic 2) (cyclic 2)")
    p = subgroup_properties(K)
    assert p.is_abelian and not p.is_cyclic and p.is_elementary_abelian and p.rank == 2
    p = subgroup_properties(build_cyclic(9))
    assert p.is_cyclic and p.exponent == 9
    p = subgroup_properties(build_extraspecial(3))
    assert p.element_orders == {1: 1, 3: 26}


@pytest.mark.parametrize("d", SMALL_DEFS)
def test_properties_against_oracle(d):
    G = group(d)
    for S in enumerate_subgroups(G).subgroups:
        s = as_set(S)
        p = subgroup_properties(G, S)
        assert p.is_abelian == oracles.is_abelian(G, s)
        assert p.is_cyclic == oracles.is_cyclic(G, s)


def test_isomorphism_examples():
    assert not are_isomorphic(build_cyclic(4), group("direct (cyclic 2) (cyclic 2)"))
    E = build_extraspecial(3)
    assert are_isomorphic(build_extraspecial_central(3, 1), E)
    G = group("sl2 3")
    assert are_isomorphic(G, G)


def test_two_groups_pairwise_non_isomorphic():
    for order in (16, 32):
        gs = [build_two_group(k, order) for k in ("dihedral", "semidihedral", "quaternion")]
        for i in range(3):
            for j in range(i + 1, 3):
                assert not are_isomorphic(gs[i], gs[j])


def test_prime_factors():
    assert prime_factors(1) == []
    assert prime_factors(648) == [2, 3]
    assert prime_factors(97) == [97]
