"""Low-degree cohomology and complements.

Cyclic case: a cyclic group <alpha> of order m acting on C_n = Z/n by
``x -> e*x``.  With the norm ``t = 1 + e + ... + e^(m-1)`` and the twisted
map ``d = e - 1``,

    H^1 = ker(t) / im(d)        H^2 = ker(d) / im(t).

Linear case: a finite group acting on F_p^dim through matrices; 1-cocycles
are solved for directly as the nullspace of the cocycle identities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

import numpy as np

from .group import (
    GroupError,
    GroupHomomorphism,
    GroupTable,
    SubgroupSet,
    closure,
    conjugate_subgroup,
    quotient,
)


@dataclass(frozen=True)
class CyclicModuleAction:
    """``alpha(g) = g^e`` on C_n, alpha of order m."""

    n: int
    e: int
    m: int = field(default=0)

    def __post_init__(self) -> None:
        n, e = self.n, self.e % self.n if self.n > 1 else 0
        if n > 1 and gcd(e, n) != 1:
            raise GroupError(f"{self.e} is not a unit mod {n}")
        object.__setattr__(self, "e", e)
        order, x = 1, e
        while n > 1 and x != 1:
            x = x * e % n
            order += 1
        if self.m and self.m != order:
            raise GroupError(f"e={e} has order {order} mod {n}, not {self.m}")
        object.__setattr__(self, "m", order)

    def norm(self) -> int:
        return sum(pow(self.e, i, self.n) for i in range(self.m)) % self.n if self.n > 1 else 0


@dataclass
class CohomologyResult:
    factors: list[int]
    cocycle_dim: int | None = None
    coboundary_dim: int | None = None

    def __post_init__(self) -> None:
        self.factors = sorted(f for f in self.factors if f > 1)

    @property
    def order(self) -> int:
        out = 1
        for f in self.factors:
            out *= f
        return out

    def is_trivial(self) -> bool:
        return not self.factors


def _kernel(mult: int, n: int) -> np.ndarray:
    x = np.arange(n)
    return x[(mult * x) % n == 0]


def _image(mult: int, n: int) -> np.ndarray:
    return np.unique((mult * np.arange(n)) % n)


def _cyclic_quotient(sub: np.ndarray, smaller: np.ndarray) -> CohomologyResult:
    if not set(smaller.tolist()) <= set(sub.tolist()):
        raise AssertionError("image not inside kernel")
    # subquotients of Z/n are cyclic
    return CohomologyResult([len(sub) // len(smaller)])


def h1_cyclic(act: CyclicModuleAction) -> CohomologyResult:
    n = act.n
    if n == 1:
        return CohomologyResult([])
    return _cyclic_quotient(_kernel(act.norm(), n), _image(act.e - 1, n))


def h2_cyclic(act: CyclicModuleAction) -> CohomologyResult:
    n = act.n
    if n == 1:
        return CohomologyResult([])
    return _cyclic_quotient(_kernel(act.e - 1, n), _image(act.norm(), n))


# ---------------------------------------------------------------------------
# linear algebra over F_p


def rref_mod_p(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p and the pivot columns."""
    R = np.array(A, dtype=np.int64) % p
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = R[r] * pow(int(R[r, c]), -1, p) % p
        col = R[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            R[hit] = (R[hit] - np.outer(col[hit], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank_mod_p(A, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref_mod_p(A, p)[1])


def nullspace_mod_p(A, p: int) -> np.ndarray:
    """Basis of ``{x : A x = 0}`` over F_p, one vector per row."""
    A = np.asarray(A, dtype=np.int64)
    cols = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, piv = rref_mod_p(A, p)
    free = [c for c in range(cols) if c not in piv]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(piv):
            basis[i, pc] = (-R[r, f]) % p
    return basis


@dataclass
class FpLinearAction:
    """``matrix_of[g]`` is the dim x dim matrix over F_p by which g acts."""

    group: GroupTable
    p: int
    matrix_of: np.ndarray

    def __post_init__(self) -> None:
        M = np.asarray(self.matrix_of, dtype=np.int64) % self.p
        if M.ndim != 3 or M.shape[0] != self.group.order or M.shape[1] != M.shape[2]:
            raise GroupError("matrix_of must have shape (order, dim, dim)")
        self.matrix_of = M
        prods = np.einsum("aij,bjk->abik", M, M) % self.p
        if not np.array_equal(prods, M[self.group.mul]):
            raise GroupError("matrices do not form a representation")
        if not np.array_equal(M[0], np.eye(self.dim, dtype=np.int64)):
            raise GroupError("identity must act trivially")

    @property
    def dim(self) -> int:
        return int(self.matrix_of.shape[1])

    def fixed_dim(self) -> int:
        d = self.dim
        stack = np.concatenate([m - np.eye(d, dtype=np.int64) for m in self.matrix_of], axis=0)
        return d - rank_mod_p(stack, self.p)


def h1_linear(act: FpLinearAction) -> CohomologyResult:
    """H^1 of a finite group on F_p^dim from all ``|G|^2`` cocycle identities.

    Unknowns are the values ``f(g)`` (``|G| * dim`` of them); each pair
    (g, h) contributes ``f(gh) - f(g) - g.f(h) = 0``.  Coboundaries
    ``g -> g.a - a`` span a space of dimension ``dim - dim(fixed points)``.
    """
    G, p, d = act.group, act.p, act.dim
    n = G.order
    M = act.matrix_of
    rows = []
    for g in range(n):
        for h in range(n):
            block = np.zeros((d, n * d), dtype=np.int64)
            gh = int(G.mul[g, h])
            block[:, gh * d:(gh + 1) * d] += np.eye(d, dtype=np.int64)
            block[:, g * d:(g + 1) * d] -= np.eye(d, dtype=np.int64)
            block[:, h * d:(h + 1) * d] -= M[g]
            rows.append(block % p)
    A = np.concatenate(rows, axis=0)
    cocycle_dim = n * d - rank_mod_p(A, p)
    # coboundary map a -> (g.a - a)_g
    B = np.concatenate([M[g] - np.eye(d, dtype=np.int64) for g in range(n)], axis=0) % p
    coboundary_dim = rank_mod_p(B, p)
    return CohomologyResult([p] * (cocycle_dim - coboundary_dim), cocycle_dim, coboundary_dim)


def sl2_natural_action(SL: GroupTable) -> FpLinearAction:
    return FpLinearAction(SL, SL.meta["p"], SL.meta["matrices"])


# ---------------------------------------------------------------------------
# complements


def _lift_candidates(G: GroupTable, proj: GroupHomomorphism, Q: GroupTable, h: int) -> list[int]:
    cands = np.flatnonzero(proj.image_of == h)
    want = Q.element_orders[h]
    # a complement maps isomorphically, so lifts keep the element order
    return [int(x) for x in cands if G.element_orders[x] == want]


def _quotient_data(G: GroupTable, N: SubgroupSet, projection: GroupHomomorphism | None):
    if projection is None:
        _, projection = quotient(G, N)
    if not np.array_equal(np.flatnonzero(projection.image_of == 0), N.elements):
        raise GroupError("projection kernel is not N")
    return projection.codomain, projection


def find_complement(G: GroupTable, N: SubgroupSet, H_image: SubgroupSet,
                    projection: GroupHomomorphism | None = None) -> SubgroupSet | None:
    """A subgroup D with ``D ∩ N = 1`` and ``pi(D) = H_image``, or None.

    Backtracks over order-preserving lifts of the generators of
    ``H_image``; a choice succeeds when the lifts generate a subgroup of
    order ``|H_image|``.  Deterministic: lifts are tried by index.
    """
    Q, proj = _quotient_data(G, N, projection)
    for D in _complements(G, Q, proj, H_image):
        return D
    return None


def all_complements(G: GroupTable, N: SubgroupSet, H_image: SubgroupSet,
                    projection: GroupHomomorphism | None = None) -> list[SubgroupSet]:
    Q, proj = _quotient_data(G, N, projection)
    seen: dict[int, SubgroupSet] = {}
    for D in _complements(G, Q, proj, H_image):
        seen.setdefault(D.bits, D)
    return sorted(seen.values(), key=lambda S: S.key())


def _complements(G, Q, proj, H_image):
    gens = list(H_image.generators)
    target = H_image.order
    lifts = [_lift_candidates(G, proj, Q, h) for h in gens]

    def rec(i: int, chosen: list[int]):
        if i == len(gens):
            D = closure(G, chosen)
            if D.order == target:
                yield D
            return
        for x in lifts[i]:
            trial = chosen + [x]
            if closure(G, trial).order > target:
                continue
            yield from rec(i + 1, trial)

    yield from rec(0, [])


@dataclass
class ComplementClasses:
    complements: int
    n_classes: int
    g_classes: int


def complement_conjugacy_classes(G: GroupTable, N: SubgroupSet, complements: Sequence[SubgroupSet]
                                 ) -> ComplementClasses:
    """Counts complements up to conjugation by N and by G."""

    def count(conj_by: Sequence[int]) -> int:
        keys = {D.bits for D in complements}
        remaining = set(keys)
        by_bits = {D.bits: D for D in complements}
        classes = 0
        while remaining:
            b = min(remaining)
            classes += 1
            D = by_bits[b]
            for x in conj_by:
                remaining.discard(conjugate_subgroup(G, x, D).bits)
        return classes

    return ComplementClasses(len(complements), count(list(N)), count(range(G.order)))
