"""Brute-force reference implementations used only by the tests.

Everything here works on plain Python sets and the raw multiplication
table, sharing no code with the library beyond ``GroupTable.mul``.
"""

from __future__ import annotations

from itertools import combinations, product

import numpy as np


def mul(G, a, b):
    return int(G.mul[a, b])


def inverse(G, a):
    for b in range(G.order):
        if G.mul[a, b] == 0:
            return b
    raise AssertionError("no inverse")


def close(G, gens) -> frozenset:
    """Breadth-first search from 1 under right multiplication by the generators.

    In a finite group the monoid generated by a set is the subgroup it generates.
    """
    gens = [int(g) for g in gens]
    S = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(G, x, g)
                if y not in S:
                    S.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(S)


def subsets_closed(G, S) -> bool:
    return 0 in S and all(mul(G, a, b) in S for a in S for b in S)


def conj(G, g, x):
    return mul(G, mul(G, g, x), inverse(G, g))


def conj_set(G, g, S) -> frozenset:
    return frozenset(conj(G, g, x) for x in S)


def normalizer(G, S) -> frozenset:
    S = frozenset(S)
    return frozenset(g for g in range(G.order) if conj_set(G, g, S) == S)


def centralizer(G, X) -> frozenset:
    return frozenset(g for g in range(G.order) if all(mul(G, g, x) == mul(G, x, g) for x in X))


def core(G, N, X) -> frozenset:
    """Intersection of all N-conjugates of X."""
    out = frozenset(X)
    for g in N:
        out &= conj_set(G, g, X)
    return out


def conjugacy_classes_of_subgroups(G, subs) -> list[set[frozenset]]:
    remaining = set(subs)
    classes = []
    while remaining:
        S = min(remaining, key=lambda s: (len(s), sorted(s)))
        cls = {conj_set(G, g, S) for g in range(G.order)}
        classes.append(cls)
        remaining -= cls
    return classes


def is_abelian(G, S) -> bool:
    return all(mul(G, a, b) == mul(G, b, a) for a in S for b in S)


def element_order(G, x) -> int:
    k, y = 1, x
    while y != 0:
        y = mul(G, y, x)
        k += 1
    return k


def is_cyclic(G, S) -> bool:
    return any(element_order(G, x) == len(S) for x in S)


def is_expansive(G, T) -> bool:
    """Expansivity straight from the definition."""
    T = frozenset(T)
    N = normalizer(G, T)
    for g in range(G.order):
        if g in N:
            continue
        gT = conj_set(G, g, T)
        X = frozenset(mul(G, a, t) for a in gT & N for t in T)
        if core(G, N, X) == T:
            return False
    return True


def is_normal(G, S) -> bool:
    return all(conj_set(G, g, S) == frozenset(S) for g in range(G.order))


def is_nilpotent(G, S) -> bool:
    """A finite group is nilpotent iff each Sylow subgroup is normal in it."""
    S = frozenset(S)
    n = len(S)
    for p in [q for q in range(2, n + 1) if n % q == 0 and all(q % r for r in range(2, q))]:
        pk = 1
        while n % (pk * p) == 0:
            pk *= p
        p_elems = [x for x in S if pk % element_order(G, x) == 0]
        if len(p_elems) != pk:
            return False
    return True


# ---------------------------------------------------------------------------
# cohomology of a cyclic group <alpha> of order m acting on Z/n by x -> e*x


def _act(e, n, i, x):
    return (pow(e, i, n) * x) % n


def h1_cyclic_brute(n: int, e: int, m: int) -> int:
    """|Z^1| / |B^1| by enumerating normalized functions C_m -> Z/n."""
    z1 = 0
    for vals in product(range(n), repeat=m - 1):
        f = (0,) + vals
        if all(f[(i + j) % m] == (f[i] + _act(e, n, i, f[j])) % n for i in range(m) for j in range(m)):
            z1 += 1
    b1 = {tuple((_act(e, n, i, a) - a) % n for i in range(m)) for a in range(n)}
    return z1 // len(b1)


def h2_cyclic_brute(n: int, e: int, m: int) -> int:
    """|Z^2| / |B^2| over normalized 2-cochains (f(0, .) = f(., 0) = 0).

    Every cochain is enumerated; the cocycle identity is tested for all
    triples, vectorized over all but the first cochain value.
    """
    pairs = [(i, j) for i in range(1, m) for j in range(1, m)]
    if not pairs:
        return 1
    rest = len(pairs) - 1
    grid = np.indices((n,) * rest).reshape(rest, -1) if rest else np.zeros((0, 1), dtype=np.int64)
    z2 = 0
    for first in range(n):
        vals = np.vstack([np.full((1, grid.shape[1]), first), grid])
        f = {(i, j): np.zeros(grid.shape[1], dtype=np.int64) for i in range(m) for j in range(m)}
        for k, ij in enumerate(pairs):
            f[ij] = vals[k]
        ok = np.ones(grid.shape[1], dtype=bool)
        for a in range(m):
            for b in range(m):
                for c in range(m):
                    lhs = (pow(e, a, n) * f[b, c] + f[a, (b + c) % m]) % n
                    rhs = (f[(a + b) % m, c] + f[a, b]) % n
                    ok &= lhs == rhs
        z2 += int(ok.sum())
    # normalized coboundaries: d h(a, b) = a.h(b) - h(a + b) + h(a), h(0) = 0
    b2 = set()
    for hv in product(range(n), repeat=m - 1):
        h = (0,) + hv
        b2.add(tuple((_act(e, n, a, h[b]) - h[(a + b) % m] + h[a]) % n for a, b in pairs))
    return z2 // len(b2)


def power_closure_subgroups(G) -> set[frozenset]:
    """Closures of every subset of at most log2|G| non-identity elements.

    Each new generator of a subgroup at least doubles its order, so every
    subgroup has a generating set of that size and appears here.
    """
    n = G.order
    out = set()
    k = max(1, n.bit_length() - 1)
    for r in range(0, k + 1):
        for gens in combinations(range(1, n), r):
            out.add(close(G, gens))
    return out


def linear_cocycle_count(G, matrices, p: int, gens) -> int:
    """Number of 1-cocycles G -> F_p^d, by choosing values on generators.

    A cocycle is determined by its generator values through
    f(x g) = f(x) + x.f(g); a choice counts when this propagation is
    consistent on every edge of the Cayley graph.
    """
    M = np.asarray(matrices, dtype=np.int64) % p
    d = M.shape[1]
    count = 0
    for choice in product(product(range(p), repeat=d), repeat=len(gens)):
        vals = {g: np.array(v, dtype=np.int64) for g, v in zip(gens, choice)}
        f = {0: np.zeros(d, dtype=np.int64)}
        queue = [0]
        ok = True
        while queue and ok:
            x = queue.pop()
            for g in gens:
                y = mul(G, x, g)
                fy = (f[x] + M[x] @ vals[g]) % p
                if y in f:
                    if not np.array_equal(f[y], fy):
                        ok = False
                        break
                else:
                    f[y] = fy
                    queue.append(y)
        count += ok
    return count
