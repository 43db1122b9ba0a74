from __future__ import annotations

import numpy as np
import pytest

import oracles
from roquette.constructors import build_pk, build_SL2
from roquette.group import closure, normalizer
from roquette.lattice import enumerate_subgroups
from roquette.lemmas import (
    ROQUETTE_TWO_GROUPS,
    PKView,
    borel_stable_line,
    check_fixed_points_factor,
    check_lemma_fixed_mod_center,
    check_normalizer_of_borel_line,
    check_normalizer_of_f1,
    check_order_two_commutators,
    cyclic_extension_lemma_checks,
    pk_lemma_checks,
    roquette_two_group_facts,
)


@pytest.fixture(scope="module")
def pk():
    G = build_pk(3, 1)
    return G, enumerate_subgroups(G)


@pytest.fixture(scope="module")
def pk_results(pk):
    return {c.id: c for c in pk_lemma_checks(*pk)}


PK_PASSING = [
    "fixed-mod-center", "lemngp-normalizer-splits", "lemnps-normalizer-in-P",
    "lemat-trivial-action-iff-normalizes", "lemngs-cocycle-normalizer", "cebceh-centralizer-chain",
    "lemngtsp-borel-stable-line", "lemhactstriv-conjugate-intersection",
]


@pytest.mark.parametrize("cid", PK_PASSING)
def test_pk_lemma_holds(pk_results, cid):
    c = pk_results[cid]
    assert c.passed, c.detail
    assert c.cases > 0


def test_fixed_mod_center_count_matches_burnside(pk):
    # SL(2,3) has two orbits on F_3^2 (zero and nonzero vectors), so the number of
    # (s, v) with s v = v is 2 * 24; each v lifts to |Z| = 3 elements of P
    G, _ = pk
    c = check_lemma_fixed_mod_center(G)
    assert c.detail.startswith(f"{2 * 24 * 3} ")


def _upper(V):
    return {int(m) for m in np.flatnonzero(V.Ktab.meta["matrices"][:, 1, 0] == 0)}


def _k_part_of_normalizer(G, x):
    V = PKView(G)
    T = frozenset(int(t) for t in closure(G, [x]).elements)
    N = oracles.normalizer(G, T)
    return {y for y in N if y < V.nk}


def test_normalizer_of_literal_f1_is_unipotent(pk):
    """With the transvection formulas as written, only the unipotent matrices stabilize <f1>."""
    G, _ = pk
    V = PKView(G)
    K_part = _k_part_of_normalizer(G, V.Ptab.named["f1"] * V.nk)
    assert len(_upper(V)) == 6
    assert len(K_part) == 3 and K_part < _upper(V)
    c = check_normalizer_of_f1(G)
    assert not c.passed
    assert "|N_SL(T)| = 3 (upper triangular: 6)" in c.detail
    assert c.witness is not None


def test_borel_stable_line_has_full_upper_triangular_normalizer(pk):
    G, _ = pk
    V = PKView(G)
    x = borel_stable_line(G)
    assert x != V.Ptab.named["f1"]
    assert V.Ptab.element_orders[x] == 3
    assert _k_part_of_normalizer(G, x * V.nk) == _upper(V)
    c = check_normalizer_of_borel_line(G)
    assert c.passed, c.detail
    # the oracle agrees on the whole normalizer order: (<x> x Z) ⋊ B has order 9 * 6
    T = frozenset(int(t) for t in closure(G, [x * V.nk]).elements)
    assert len(oracles.normalizer(G, T)) == normalizer(G, closure(G, [x * V.nk])).order == 54


def test_borel_stable_line_is_unique(pk):
    G, _ = pk
    V = PKView(G)
    Pt = V.Ptab
    z = Pt.commutator(Pt.named["f1"], Pt.named["f2"])
    upper = _upper(V)
    stable = []
    for c in range(3):
        x = Pt.m(Pt.named["f1"], Pt.power(z, c))
        T = set(closure(Pt, [x]).elements.tolist())
        if all({int(V.A[m, t]) for t in T} == T for m in upper):
            stable.append(x)
    assert stable == [borel_stable_line(G)]


def test_transvections_generate_sl2():
    SL = build_SL2(3)
    assert closure(SL, [SL.named["T"], SL.named["L"]]).order == 24


# ---------------------------------------------------------------------------
# C_n ⋊ S


def test_cyclic_extension_lemmas():
    checks = cyclic_extension_lemma_checks()
    assert [c.id for c in checks].count("lemngcd-complement-normalizer") == 5
    for c in checks:
        assert c.passed, (c.id, c.detail)


@pytest.mark.parametrize("n", [20, 36, 45, 100])
def test_fixed_points_factor_other_n(n):
    assert check_fixed_points_factor(n).passed


def test_order_two_commutators_k5():
    c = check_order_two_commutators(5)
    assert c.passed and c.cases == 2 * 16 * 2


# ---------------------------------------------------------------------------
# Roquette 2-groups


@pytest.mark.parametrize("kind,order", ROQUETTE_TWO_GROUPS, ids=lambda v: str(v))
def test_roquette_two_group_facts(kind, order):
    checks = roquette_two_group_facts(kind, order)
    assert checks
    for c in checks:
        assert c.passed, (c.id, c.detail)

