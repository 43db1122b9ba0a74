"""Group families and explicit automorphism actions.

Every constructor returns a validated :class:`GroupTable` whose element
order is deterministic, with the identity at index 0 and human-readable
labels.  Distinguished elements land in ``G.named`` and distinguished
subgroups in ``G.parts``.
"""

from __future__ import annotations

import itertools
from collections import deque
from math import gcd
from typing import Sequence

import numpy as np

from .group import (
    DEFAULT_ORDER_BOUND,
    GroupError,
    GroupTable,
    SubgroupSet,
    center,
    closure,
    homomorphism_from_generators,
    induced_table,
    prime_factors,
    quotient,
    subgroup_from_elements,
)


def _check_bound(order: int, bound: int) -> None:
    if order > bound:
        raise GroupError(f"group order {order} exceeds bound {bound}")


def _p_part(n: int, p: int) -> tuple[int, int]:
    """(k, p^k) with p^k the exact power of p dividing n."""
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, p**k


# ---------------------------------------------------------------------------
# actions


class ActionHomomorphism:
    """A homomorphism K -> Aut(N); ``auto_of[k]`` permutes N's indices.

    Validation checks that each ``auto_of[k]`` preserves N's multiplication
    and that ``auto_of[k1*k2] = auto_of[k1] o auto_of[k2]``.
    """

    def __init__(self, acting: GroupTable, target: GroupTable, auto_of, check: bool = True):
        self.acting = acting
        self.target = target
        self.auto_of = np.asarray(auto_of, dtype=np.int64)
        self.auto_of.setflags(write=False)
        if check:
            self.validate()

    def validate(self) -> None:
        K, N, A = self.acting, self.target, self.auto_of
        if A.shape != (K.order, N.order):
            raise GroupError("action array has the wrong shape")
        if not np.array_equal(A[0], np.arange(N.order)):
            raise GroupError("identity of K must act trivially")
        for k in range(K.order):
            a = A[k]
            if np.unique(a).size != N.order:
                raise GroupError(f"auto_of[{k}] is not a permutation")
            if not np.array_equal(a[N.mul], N.mul[a[:, None], a[None, :]]):
                raise GroupError(f"auto_of[{k}] does not preserve multiplication")
        # auto_of[k1 k2](x) == auto_of[k1](auto_of[k2](x))
        lhs = A[K.mul]
        rhs = A[np.arange(K.order)[:, None, None], A[None, :, :]]
        if not np.array_equal(lhs, rhs):
            raise GroupError("action is not a homomorphism K -> Aut(N)")

    def __call__(self, k: int, x: int) -> int:
        return int(self.auto_of[k, x])

    def restrict(self, sub: GroupTable, embedding: np.ndarray) -> "ActionHomomorphism":
        return ActionHomomorphism(sub, self.target, self.auto_of[embedding], check=False)


class AutomorphismGroup:
    """A group of automorphisms of ``base`` closed under composition.

    ``elements[i]`` is a permutation array; ``table`` multiplies by
    composition, ``(a*b)(x) = a(b(x))``, with the identity at index 0.
    """

    def __init__(self, base: GroupTable, elements: Sequence[np.ndarray], name: str = "Aut"):
        self.base = base
        elems = [np.asarray(e, dtype=np.int64) for e in elements]
        index = {e.tobytes(): i for i, e in enumerate(elems)}
        if len(index) != len(elems):
            raise GroupError("duplicate automorphisms")
        if not np.array_equal(elems[0], np.arange(base.order)):
            raise GroupError("identity automorphism must come first")
        n = len(elems)
        mul = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                c = index.get(a[b].tobytes())
                if c is None:
                    raise GroupError("automorphism set not closed under composition")
                mul[i, j] = c
        self.elements = elems
        self._index = index
        self.table = GroupTable(mul, name=name)

    @property
    def order(self) -> int:
        return len(self.elements)

    def index_of(self, perm) -> int:
        return self._index[np.asarray(perm, dtype=np.int64).tobytes()]

    def action(self) -> ActionHomomorphism:
        return ActionHomomorphism(self.table, self.base, np.stack(self.elements), check=False)


def automorphism_from_images(G: GroupTable, images: dict[int, int] | Sequence[int]) -> np.ndarray:
    """Extend an assignment on generators to an automorphism of G.

    ``images`` is either ``{generator: image}`` or a list of images for
    ``G.generators``.  Raises when the assignment is not an automorphism.
    """
    if isinstance(images, dict):
        gens, imgs = list(images), list(images.values())
    else:
        gens, imgs = list(G.generators), list(images)
    phi = homomorphism_from_generators(G, gens, G, imgs)
    if phi is None or (phi < 0).any():
        raise GroupError("generator assignment does not extend to an endomorphism")
    if np.unique(phi).size != G.order:
        raise GroupError("generator assignment is not bijective")
    return phi


def generate_automorphism_group(base: GroupTable, generators: Sequence[np.ndarray], name: str = "Aut") -> AutomorphismGroup:
    """Close a set of automorphisms under composition (breadth first, deterministic)."""
    ident = np.arange(base.order)
    seen = {ident.tobytes(): ident}
    order = [ident]
    queue = deque([ident])
    gens = [np.asarray(g, dtype=np.int64) for g in generators]
    while queue:
        a = queue.popleft()
        for g in gens:
            c = a[g]
            key = c.tobytes()
            if key not in seen:
                seen[key] = c
                order.append(c)
                queue.append(c)
    return AutomorphismGroup(base, order, name=name)


# ---------------------------------------------------------------------------
# basic families


def build_cyclic(n: int, bound: int = DEFAULT_ORDER_BOUND) -> GroupTable:
    """C_n with element i = g^i."""
    if n < 1:
        raise GroupError("cyclic order must be positive")
    _check_bound(n, bound)
    ar = np.arange(n)
    mul = (ar[:, None] + ar[None, :]) % n
    labels = ["1"] + [f"g^{i}" if i > 1 else "g" for i in range(1, n)]
    named = {"g": 1 % n}
    return GroupTable(mul, labels, name=f"C{n}", named=named, meta={"kind": "cyclic", "n": n}, bound=bound)


def build_two_group(kind: str, order: int, bound: int = DEFAULT_ORDER_BOUND) -> GroupTable:
    """Dihedral, semidihedral or generalized quaternion group of order 2^n.

    Elements are ``r^a s^b`` (index ``a + b*2^(n-1)``) with ``s r s^-1 = r^t``
    and ``s^2 = r^q``:

    * dihedral: ``t = -1``, ``q = 0``
    * semidihedral: ``t = -1 + 2^(n-2)``, ``q = 0``
    * quaternion: ``t = -1``, ``q = 2^(n-2)``

    Orders below the classification range (quaternion < 8, dihedral and
    semidihedral < 16) are built but flagged in ``meta``.
    """
    if order < 4 or order & (order - 1):
        raise GroupError("order must be a power of two, at least 4")
    if kind not in ("dihedral", "semidihedral", "quaternion"):
        raise GroupError(f"unknown two-group kind {kind!r}")
    _check_bound(order, bound)
    m = order // 2
    if kind == "dihedral":
        t, q = m - 1, 0
    elif kind == "semidihedral":
        t, q = (m // 2 - 1) % m, 0
    else:
        t, q = m - 1, m // 2
    if kind == "semidihedral" and order < 8:
        raise GroupError("semidihedral needs order >= 8")
    a = np.arange(order) % m
    b = np.arange(order) // m
    # r^a s^b r^c s^d = r^(a + t^b c) s^(b+d), and s^2 = r^q
    tb = np.where(b == 1, t, 1)
    A = (a[:, None] + tb[:, None] * a[None, :]) % m
    B = b[:, None] + b[None, :]
    A = np.where(B == 2, (A + q) % m, A)
    B = B % 2
    mul = A + m * B
    labels = []
    for i in range(order):
        ai, bi = i % m, i // m
        word = ("" if ai == 0 else ("r" if ai == 1 else f"r^{ai}")) + ("s" if bi else "")
        labels.append(word or "1")
    short = {"dihedral": "D", "semidihedral": "SD", "quaternion": "Q"}[kind]
    lower = {"dihedral": 16, "semidihedral": 16, "quaternion": 8}[kind]
    meta = {"kind": kind, "order": order, "outside_classification": order < lower}
    return GroupTable(mul, labels, name=f"{short}{order}", named={"r": 1, "s": m}, meta=meta, bound=bound)


def build_direct_product(G1: GroupTable, G2: GroupTable, bound: int = DEFAULT_ORDER_BOUND) -> GroupTable:
    """G1 x G2 with index ``a*|G2| + b``."""
    n1, n2 = G1.order, G2.order
    _check_bound(n1 * n2, bound)
    a = np.repeat(np.arange(n1), n2)
    b = np.tile(np.arange(n2), n1)
    mul = G1.mul[a[:, None], a[None, :]].astype(np.int64) * n2 + G2.mul[b[:, None], b[None, :]]
    labels = [f"({G1.label(x)},{G2.label(y)})" for x, y in zip(a, b)]
    parts = {"left": [x * n2 for x in range(n1)], "right": list(range(n2))}
    return GroupTable(mul, labels, name=f"{G1.name}x{G2.name}", parts=parts,
                      meta={"kind": "direct", "factors": (G1.name, G2.name)}, bound=bound)


def build_semidirect(N: GroupTable, K: GroupTable, act: ActionHomomorphism, bound: int = DEFAULT_ORDER_BOUND,
                     name: str | None = None) -> GroupTable:
    """N ⋊ K with ``(n1,k1)(n2,k2) = (n1 * act[k1](n2), k1 k2)``.

    Element ``(n, k)`` has index ``n*|K| + k``.  The embedded copies of N and
    K are recorded as ``parts["N"]`` and ``parts["K"]``.
    """
    if act.acting is not K and act.acting.order != K.order:
        raise GroupError("action is defined on a different acting group")
    if act.target.order != N.order:
        raise GroupError("action targets a different group")
    act.validate()
    nn, nk = N.order, K.order
    _check_bound(nn * nk, bound)
    n_of = np.repeat(np.arange(nn), nk)
    k_of = np.tile(np.arange(nk), nn)
    moved = act.auto_of[k_of[:, None], n_of[None, :]]  # act[k1](n2)
    new_n = N.mul[n_of[:, None], moved]
    new_k = K.mul[k_of[:, None], k_of[None, :]]
    mul = new_n.astype(np.int64) * nk + new_k
    labels = []
    for x, y in zip(n_of, k_of):
        ln, lk = N.label(x), K.label(y)
        if y == 0:
            labels.append(ln)
        elif x == 0:
            labels.append(lk)
        else:
            labels.append(f"{ln}*{lk}")
    named = {f"N.{k}": v * nk for k, v in N.named.items()}
    named.update({f"K.{k}": v for k, v in K.named.items()})
    for k, v in N.named.items():
        named.setdefault(k, v * nk)
    parts = {"N": [x * nk for x in range(nn)], "K": list(range(nk))}
    G = GroupTable(mul, labels, name=name or f"{N.name}:{K.name}", named=named, parts=parts,
                   meta={"kind": "semidirect", "N_order": nn, "K_order": nk}, bound=bound)
    G.meta["N_table"] = N
    G.meta["K_table"] = K
    G.meta["action"] = act
    return G


def semidirect_parts(G: GroupTable, x: int) -> tuple[int, int]:
    """Decompose element ``x`` of a semidirect product into (n, k) indices."""
    nk = G.meta["K_order"]
    return divmod(int(x), nk)


# ---------------------------------------------------------------------------
# cyclic automorphisms


def build_units_mod_n(n: int, bound: int = DEFAULT_ORDER_BOUND) -> AutomorphismGroup:
    """Aut(C_n) as the maps ``g -> g^u``, u a unit mod n, listed by increasing u."""
    _check_bound(n, bound)
    C = build_cyclic(n, bound)
    units = [u for u in range(1, max(n, 2)) if gcd(u, n) == 1] if n > 1 else [1]
    perms = [(np.arange(n) * u) % n for u in units]
    A = AutomorphismGroup(C, perms, name=f"Aut(C{n})")
    A.units = units  # type: ignore[attr-defined]
    A.table.labels = [f"u{u}" for u in units]
    return A


def unit_automorphism(n: int, u: int) -> np.ndarray:
    if gcd(u, n) != 1:
        raise GroupError(f"{u} is not a unit mod {n}")
    return (np.arange(n) * u) % n


def alpha_p(n: int, p: int) -> int:
    """The unit u with ``alpha_p(g) = g^u`` on C_n.

    u is 1 + p^(k-1) modulo the p-part p^k of n and 1 modulo the co-p part,
    so it raises the p-part generator to ``1 + p^(k-1)`` and fixes the rest.
    Of order p when k > 1, the identity (u = 1) when k = 1.
    """
    if p not in prime_factors(n):
        raise GroupError(f"{p} does not divide {n}")
    k, pk = _p_part(n, p)
    rest = n // pk
    target = 1 + p ** (k - 1) if k > 1 else 1
    # CRT: u = target mod pk, u = 1 mod rest
    for u in range(target, n + 1, pk):
        if u % rest == 1 % rest:
            return u % n if n > 1 else 1
    raise AssertionError("CRT failed")


def unit_order(u: int, n: int) -> int:
    k, x = 1, u % n
    while x != 1 % n:
        x = x * u % n
        k += 1
    return k


def units_subgroup(n: int, generators: Sequence[int]) -> list[int]:
    """Sorted list of the subgroup of (Z/n)^* generated by ``generators``."""
    seen = {1 % n}
    frontier = [1 % n]
    for g in generators:
        if gcd(g, n) != 1:
            raise GroupError(f"{g} is not a unit mod {n}")
    while frontier:
        x = frontier.pop()
        for g in generators:
            y = x * g % n
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return sorted(seen)


def build_cyclic_extension(n: int, unit_gens: Sequence[int], bound: int = DEFAULT_ORDER_BOUND) -> GroupTable:
    """The split extension C_n ⋊ S for S = <unit_gens> in Aut(C_n).

    ``G.meta["units"][k]`` is the unit by which K-element k acts, and
    ``parts["N"]`` is the normal cyclic subgroup.
    """
    units = units_subgroup(n, unit_gens) if n > 1 else [1]
    C = build_cyclic(n, bound)
    perms = [unit_automorphism(n, u) for u in units]
    S = AutomorphismGroup(C, perms, name=f"S{n}")
    S.table.labels = ["1"] + [f"u{u}" for u in units[1:]]
    gens = "".join(f",{u}" for u in sorted(set(unit_gens)) if u % n != 1 % n)
    G = build_semidirect(C, S.table, S.action(), bound=bound, name=f"C{n}:<{gens[1:]}>")
    G.meta.update({"kind": "cyclic_extension", "n": n, "units": units, "unit_gens": tuple(unit_gens)})
    return G


# ---------------------------------------------------------------------------
# extraspecial groups and SL(2, p)


def build_extraspecial(p: int, bound: int = DEFAULT_ORDER_BOUND) -> GroupTable:
    """Heisenberg model of the extraspecial group of order p^3, exponent p.

    ``(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`` over F_p with index
    ``a + p*b + p^2*c``; ``f1 = (1,0,0)``, ``f2 = (0,1,0)``, ``z = (0,0,1)``.
    """
    if p < 3 or prime_factors(p) != [p]:
        raise GroupError("extraspecial model needs an odd prime")
    _check_bound(p**3, bound)
    idx = np.arange(p**3)
    a, b, c = idx % p, (idx // p) % p, idx // (p * p)
    A = (a[:, None] + a[None, :]) % p
    B = (b[:, None] + b[None, :]) % p
    Cc = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
    mul = A + p * B + p * p * Cc
    labels = [f"({x},{y},{w})" for x, y, w in zip(a, b, c)]
    named = {"f1": 1, "f2": p, "z": p * p}
    return GroupTable(mul, labels, name=f"E{p**3}", named=named, meta={"kind": "extraspecial", "p": p}, bound=bound)


def build_central_product(G1: GroupTable, G2: GroupTable, Z1: SubgroupSet, Z2: SubgroupSet,
                          theta: dict[int, int], bound: int = DEFAULT_ORDER_BOUND) -> GroupTable:
    """``(G1 x G2)/N`` with ``N = {(z, theta(z)^-1) : z in Z1}``.

    ``theta`` maps the elements of Z1 to Z2 and must be an isomorphism; both
    subgroups must be central.  The images of G1 and G2 are recorded as
    ``parts["G1"]``, ``parts["G2"]``; names from G1 carry over.
    """
    z1c, z2c = center(G1), center(G2)
    if not (Z1 <= z1c and Z2 <= z2c):
        raise GroupError("central product needs central subgroups")
    theta = {int(k): int(v) for k, v in theta.items()}
    if set(theta) != set(Z1) or sorted(theta.values()) != sorted(Z2):
        raise GroupError("theta must be a bijection Z1 -> Z2")
    for x in Z1:
        for y in Z1:
            if theta[int(G1.mul[x, y])] != int(G2.mul[theta[x], theta[y]]):
                raise GroupError("theta is not a homomorphism")
    D = build_direct_product(G1, G2, bound=10**9)
    n2 = G2.order
    N = subgroup_from_elements(D, [z * n2 + int(G2.inv[theta[z]]) for z in Z1])
    Q, proj = quotient(D, N)
    _check_bound(Q.order, bound)
    named = {k: proj(v * n2) for k, v in G1.named.items()}
    for k, v in G2.named.items():
        named.setdefault(k, proj(v))
    parts = {
        "G1": sorted({proj(x * n2) for x in range(G1.order)}),
        "G2": sorted({proj(y) for y in range(n2)}),
    }
    labels = [D.label(r) for r in Q.meta["coset_reps"]]
    out = GroupTable(Q.mul, labels, name=f"{G1.name}o{G2.name}", named=named, parts=parts,
                     meta={"kind": "central_product"}, bound=bound)
    return out


def build_extraspecial_central(p: int, i: int, bound: int = DEFAULT_ORDER_BOUND) -> GroupTable:
    """P = E ∘ C_{p^i} amalgamating Z(E) with the order-p subgroup of C_{p^i}.

    ``named["z"]`` is a generator of Z(P), the image of the C_{p^i} generator.
    """
    if i < 1:
        raise GroupError("i must be at least 1")
    E = build_extraspecial(p, bound=10**9)
    C = build_cyclic(p**i, bound=10**9)
    ZE = subgroup_from_elements(E, [j * p * p for j in range(p)])
    step = p ** (i - 1)
    ZC = subgroup_from_elements(C, [j * step for j in range(p)])
    theta = {j * p * p: j * step for j in range(p)}
    P = build_central_product(E, C, ZE, ZC, theta, bound=bound)
    named = {"f1": P.named["f1"], "f2": P.named["f2"], "z": P.named["g"]}
    out = GroupTable(P.mul, P.labels, name=f"E{p**3}oC{p**i}", named=named, parts=P.parts,
                     meta={"kind": "extraspecial_central", "p": p, "i": i}, bound=bound)
    return out


def _mat_label(m) -> str:
    return f"[[{m[0]},{m[1]}],[{m[2]},{m[3]}]]"


def build_SL2(p: int, bound: int = DEFAULT_ORDER_BOUND) -> GroupTable:
    """SL(2, p): all determinant-one 2x2 matrices over F_p.

    Matrices ``(a, b, c, d)`` = ``[[a, b], [c, d]]`` in lexicographic order,
    which puts the identity first.  ``named["T"]`` is ``[[1,1],[0,1]]`` and
    ``named["L"]`` is ``[[1,0],[1,1]]``; ``meta["matrices"]`` is an
    ``(order, 2, 2)`` array.
    """
    if p < 2 or prime_factors(p) != [p]:
        raise GroupError("p must be prime")
    _check_bound(p * (p * p - 1), bound)
    mats = [m for m in itertools.product(range(p), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % p == 1]
    mats.sort(key=lambda m: (m != (1, 0, 0, 1), m))
    M = np.array(mats, dtype=np.int64).reshape(-1, 2, 2)
    index = {m: i for i, m in enumerate(mats)}
    prods = np.einsum("aij,bjk->abik", M, M) % p
    n = len(mats)
    code = prods.reshape(n, n, 4)
    mul = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            mul[i, j] = index[tuple(int(v) for v in code[i, j])]
    labels = [_mat_label(m) for m in mats]
    named = {"T": index[(1, 1, 0, 1)], "L": index[(1, 0, 1, 1)], "-I": index[(p - 1, 0, 0, p - 1)]}
    G = GroupTable(mul, labels, name=f"SL(2,{p})", named=named, meta={"kind": "SL2", "p": p}, bound=bound)
    G.meta["matrices"] = M
    G.meta["index"] = index
    return G


def matrix_index(SL: GroupTable, m) -> int:
    p = SL.meta["p"]
    flat = tuple(int(v) % p for v in np.asarray(m).reshape(4))
    return SL.meta["index"][flat]


def borel_subgroup(SL: GroupTable) -> SubgroupSet:
    """Upper triangular matrices of SL(2, p)."""
    M = SL.meta["matrices"]
    return subgroup_from_elements(SL, np.flatnonzero(M[:, 1, 0] == 0))


def build_sl2_action_on_P(p: int, i: int = 1, bound: int = DEFAULT_ORDER_BOUND
                          ) -> tuple[GroupTable, ActionHomomorphism]:
    """P = E ∘ C_{p^i} with SL(2, p) acting through the transvection lifts.

    ``[[1,1],[0,1]]``: f1 -> f1, f2 -> f1 f2, z -> z.
    ``[[1,0],[1,1]]``: f1 -> f1 f2, f2 -> f2, z -> z.

    The action of every other matrix is found by walking SL(2, p) along the
    two transvections while composing the automorphisms; the walk must be
    consistent (so the assignment is a homomorphism) and the automorphisms
    reached must be pairwise distinct (faithful).
    """
    _check_bound(p ** (2 + i) * p * (p * p - 1), bound)
    P = build_extraspecial_central(p, i, bound=bound)
    SL = build_SL2(p, bound=bound)
    f1, f2, z = P.named["f1"], P.named["f2"], P.named["z"]
    aT = automorphism_from_images(P, {f1: f1, f2: P.m(f1, f2), z: z})
    aL = automorphism_from_images(P, {f1: P.m(f1, f2), f2: f2, z: z})
    ident = np.arange(P.order)
    auto = [None] * SL.order
    auto[0] = ident
    queue = deque([0])
    steps = [(SL.named["T"], aT), (SL.named["L"], aL)]
    while queue:
        m = queue.popleft()
        for s, a in steps:
            nxt = int(SL.mul[m, s])
            comp = auto[m][a]  # act[m s] = act[m] o act[s]
            if auto[nxt] is None:
                auto[nxt] = comp
                queue.append(nxt)
            elif not np.array_equal(auto[nxt], comp):
                raise GroupError("transvection lifts do not define an action of SL(2,p)")
    if any(a is None for a in auto):
        raise GroupError("transvections did not reach all of SL(2,p)")
    distinct = {a.tobytes() for a in auto}
    if len(distinct) != SL.order:
        raise GroupError(f"generated automorphism group has order {len(distinct)}, expected {SL.order}")
    act = ActionHomomorphism(SL, P, np.stack(auto))
    return P, act


def build_pk(p: int, i: int, K: SubgroupSet | None = None, bound: int = DEFAULT_ORDER_BOUND) -> GroupTable:
    """P ⋊ K for K a subgroup of SL(2, p) (all of SL(2, p) by default)."""
    P, act = build_sl2_action_on_P(p, i, bound=bound)
    SL = act.acting
    if K is None:
        Ktab, emb, kname = SL, np.arange(SL.order), "SL(2,{})".format(p)
    else:
        Ktab, emb = induced_table(SL, K, name=f"K{K.order}")
        Ktab.meta["matrices"] = SL.meta["matrices"][emb]
        Ktab.meta["p"] = p
        kname = Ktab.name
    G = build_semidirect(P, Ktab, act.restrict(Ktab, emb), bound=bound, name=f"{P.name}:{kname}")
    G.meta.update({"kind": "pk", "p": p, "i": i, "K_matrices": SL.meta["matrices"][emb]})
    return G


def standard_sl2_subgroups(p: int) -> dict[str, SubgroupSet]:
    """Named subgroups of SL(2, p) used by the Borel dichotomy suite (p = 3)."""
    SL = build_SL2(p)
    T, L, mI = SL.named["T"], SL.named["L"], SL.named["-I"]
    w = matrix_index(SL, [[0, 1], [p - 1, 0]])
    lam = matrix_index(SL, [[2, 0], [0, (p + 1) // 2]])  # diag(2, 1/2)
    out = {
        "1": SL.trivial,
        "C2": closure(SL, [mI]),
        "Cp": closure(SL, [T]),
        "Borel": borel_subgroup(SL),
        "C4": closure(SL, [w]),
        "SL": SL.whole,
    }
    out["Cp(p-1)"] = closure(SL, [T, lam, mI])
    if p == 3:
        out["C6"] = out.pop("Cp(p-1)")
        # Q_8: w together with the first order-4 element outside <w>
        W = out["C4"]
        x = next(e for e in range(SL.order) if SL.element_orders[e] == 4 and e not in W)
        out["Q8"] = closure(SL, [w, x])
    return out


# ---------------------------------------------------------------------------
# Q_8 ⋊ S_3


def build_q8_s3(bound: int = DEFAULT_ORDER_BOUND) -> GroupTable:
    """Q_8 ⋊ S_3 with S_3 permuting the {i, j, k} axes.

    The 3-cycle sends i -> j -> k -> i; the involution swaps the axes <i>
    and <j> (i -> j^-1, j -> i^-1) and inverts k.  Of the two involutions
    swapping those axes, this is the one normalizing the 3-cycle.
    """
    Q = build_two_group("quaternion", 8)
    i_, j_ = Q.named["r"], Q.named["s"]
    k_ = Q.m(i_, j_)
    cyc = automorphism_from_images(Q, {i_: j_, j_: k_})
    inv_swap = automorphism_from_images(Q, {i_: int(Q.inv[j_]), j_: int(Q.inv[i_])})
    if Q.inv[k_] != inv_swap[k_]:
        raise GroupError("swap automorphism should invert k")
    S3 = generate_automorphism_group(Q, [cyc, inv_swap], name="S3")
    if S3.order != 6 or S3.table.is_abelian():
        raise GroupError("axis permutations did not generate S_3")
    # words in c (3-cycle, index 1) and t (involution, index 2)
    words = {0: ""}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, w in ((1, "c"), (2, "t")):
                y = int(S3.table.mul[x, g])
                if y not in words:
                    words[y] = words[x] + w
                    nxt.append(y)
        frontier = nxt
    S3.table.labels = [(words[x] or "1").replace("cc", "c^2") for x in range(6)]
    G = build_semidirect(Q, S3.table, S3.action(), bound=bound, name="Q8:S3")
    G.meta["kind"] = "q8s3"
    return G
