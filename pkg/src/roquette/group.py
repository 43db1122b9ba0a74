"""Finite groups as explicit multiplication tables.

Elements are the integers ``0..order-1`` with the identity at index 0.
Subgroups carry their membership as a Python ``int`` bit-set (bit ``i`` set
iff element ``i`` is a member), which makes intersections, containment tests
and deduplication cheap.
"""

from __future__ import annotations

import hashlib
from collections import deque
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

DEFAULT_ORDER_BOUND = 2000
EXHAUSTIVE_ASSOC_LIMIT = 256
RANDOM_ASSOC_TRIPLES = 100_000


class GroupError(ValueError):
    """Raised for malformed tables or violated preconditions."""


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def bits_of(elements: Iterable[int]) -> int:
    elems = np.fromiter(elements, dtype=np.int64)
    if elems.size == 0:
        return 0
    arr = np.zeros(int(elems.max()) + 1, dtype=bool)
    arr[elems] = True
    return int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")


def mask_bits(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def elements_of_bits(bits: int, order: int) -> np.ndarray:
    raw = np.frombuffer(bits.to_bytes((order + 7) // 8, "little"), dtype=np.uint8)
    mask = np.unpackbits(raw, bitorder="little")[:order].astype(bool)
    return np.flatnonzero(mask)


class GroupTable:
    """A finite group given by its full multiplication table.

    ``mul[x, y]`` is the index of ``x*y``.  Tables are validated on
    construction (identity, inverses, Latin square, associativity: exhaustive
    up to order 256, randomized spot checks above).  Arrays are made
    read-only; treat instances as immutable.

    ``named`` maps symbolic names (``"f1"``, ``"z"``, ``"T"`` ...) to element
    indices and ``parts`` maps names to element lists of distinguished
    subgroups (the normal factor and complement of a semidirect product, for
    instance).  ``meta`` holds constructor parameters.
    """

    def __init__(
        self,
        mul,
        labels: Sequence[str] | None = None,
        *,
        name: str = "G",
        named: Mapping[str, int] | None = None,
        parts: Mapping[str, Sequence[int]] | None = None,
        meta: Mapping | None = None,
        bound: int = DEFAULT_ORDER_BOUND,
        validate: bool = True,
        seed: int = 0,
    ) -> None:
        mul = np.ascontiguousarray(mul, dtype=np.int32)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
            raise GroupError("multiplication table must be a non-empty square array")
        n = mul.shape[0]
        if n > bound:
            raise GroupError(f"group order {n} exceeds bound {bound}")
        self.order = n
        self.mul = mul
        self.name = name
        self.labels = list(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise GroupError("labels length does not match order")
        self.named = dict(named or {})
        self.parts = {k: tuple(int(x) for x in v) for k, v in (parts or {}).items()}
        self.meta = dict(meta or {})
        inv = np.empty(n, dtype=np.int32)
        rows, cols = np.nonzero(mul == 0)
        if len(rows) != n:
            raise GroupError("identity does not appear exactly once per row")
        inv[rows] = cols
        self.inv = inv
        if validate:
            self._validate(seed)
        self.mul.setflags(write=False)
        self.inv.setflags(write=False)

    def _validate(self, seed: int) -> None:
        n, mul = self.order, self.mul
        ar = np.arange(n)
        if not (np.array_equal(mul[0], ar) and np.array_equal(mul[:, 0], ar)):
            raise GroupError("index 0 is not a two-sided identity")
        if np.any(mul[ar, self.inv] != 0):
            raise GroupError("inverse table inconsistent")
        srt = np.sort(mul, axis=1)
        if not np.all(srt == ar):
            raise GroupError("a row of the table is not a permutation")
        srt = np.sort(mul, axis=0)
        if not np.all(srt == ar[:, None]):
            raise GroupError("a column of the table is not a permutation")
        if n <= EXHAUSTIVE_ASSOC_LIMIT:
            for a in range(n):
                # (a*b)*c versus a*(b*c) over all b, c
                if not np.array_equal(mul[mul[a]], mul[a][mul]):
                    raise GroupError(f"associativity fails for a={a}")
        else:
            rng = np.random.default_rng(seed)
            a, b, c = rng.integers(0, n, size=(3, RANDOM_ASSOC_TRIPLES))
            if np.any(mul[mul[a, b], c] != mul[a, mul[b, c]]):
                raise GroupError("associativity spot check failed")

    def __repr__(self) -> str:
        return f"GroupTable({self.name!r}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    @property
    def prime_factors(self) -> list[int]:
        return prime_factors(self.order)

    @cached_property
    def table_hash(self) -> str:
        data = self.mul.astype("<u4").tobytes()
        return hashlib.sha256(self.order.to_bytes(4, "little") + data).hexdigest()

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def m(self, *xs: int) -> int:
        """Product of the given elements, left to right."""
        out = 0
        for x in xs:
            out = int(self.mul[out, x])
        return out

    def power(self, x: int, k: int) -> int:
        k %= int(self.element_orders[x])
        out, base = 0, int(x)
        while k:
            if k & 1:
                out = int(self.mul[out, base])
            base = int(self.mul[base, base])
            k >>= 1
        return out

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return int(self.mul[self.mul[g, x], self.inv[g]])

    def commutator(self, x: int, y: int) -> int:
        """``x y x^-1 y^-1``."""
        return self.m(x, y, int(self.inv[x]), int(self.inv[y]))

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n, dtype=np.int64)
        ar = np.arange(n)
        k = 1
        while True:
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            if orders.min() > 0:
                break
            cur = self.mul[cur, ar]
            k += 1
        orders.setflags(write=False)
        return orders

    @cached_property
    def conj_table(self) -> np.ndarray:
        """Row ``g`` is the permutation ``x -> g x g^-1``."""
        t = self.mul[np.arange(self.order)[:, None], self.mul[:, self.inv].T]
        t.setflags(write=False)
        return t

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small deterministic generating set (greedy by element order)."""
        return closure(self, ()).extend_generators_to(self)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    @cached_property
    def whole(self) -> "SubgroupSet":
        return SubgroupSet(self, np.arange(self.order), self.generators)

    @cached_property
    def trivial(self) -> "SubgroupSet":
        return SubgroupSet(self, np.zeros(1, dtype=np.int64), ())

    def part(self, name: str) -> "SubgroupSet":
        return subgroup_from_elements(self, self.parts[name])


class SubgroupSet:
    """A subgroup: membership bit-set, sorted element array and generators.

    Equality and hashing are extensional (by the bit-set).  Construct through
    :func:`closure` or :func:`subgroup_from_elements`; the constructor itself
    trusts its input.
    """

    __slots__ = ("group", "elements", "bits", "_gens")

    def __init__(self, group: GroupTable, elements, generators=None, bits: int | None = None):
        self.group = group
        elems = np.asarray(elements, dtype=np.int64)
        elems = np.unique(elems)
        elems.setflags(write=False)
        self.elements = elems
        self.bits = bits if bits is not None else bits_of(elems)
        self._gens = tuple(int(g) for g in generators) if generators is not None else None

    @property
    def order(self) -> int:
        return int(self.elements.size)

    def __len__(self) -> int:
        return int(self.elements.size)

    @property
    def generators(self) -> tuple[int, ...]:
        if self._gens is None:
            self._gens = closure(self.group, ()).extend_generators_to(self)
        return self._gens

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.group.order, dtype=bool)
        m[self.elements] = True
        return m

    def __contains__(self, x: int) -> bool:
        return bool((self.bits >> int(x)) & 1)

    def __iter__(self):
        return (int(x) for x in self.elements)

    def __eq__(self, other) -> bool:
        return isinstance(other, SubgroupSet) and self.bits == other.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def __le__(self, other: "SubgroupSet") -> bool:
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "SubgroupSet") -> bool:
        return self <= other and self.bits != other.bits

    def __and__(self, other: "SubgroupSet") -> "SubgroupSet":
        b = self.bits & other.bits
        return SubgroupSet(self.group, elements_of_bits(b, self.group.order), bits=b)

    def __repr__(self) -> str:
        shown = ", ".join(self.group.label(x) for x in self.elements[:6])
        more = ", ..." if self.order > 6 else ""
        return f"SubgroupSet(order={self.order}, {{{shown}{more}}})"

    def is_trivial(self) -> bool:
        return self.bits == 1

    def key(self) -> tuple[int, tuple[int, ...]]:
        return (self.order, tuple(int(x) for x in self.elements))

    def extend_generators_to(self, target: "SubgroupSet | GroupTable") -> tuple[int, ...]:
        """Generators of ``self`` plus greedily chosen elements reaching ``target``."""
        G = self.group
        if isinstance(target, GroupTable):
            target = SubgroupSet(G, np.arange(G.order), ())
        cur = self if self._gens is not None else G.trivial
        gens = list(cur._gens)
        orders = G.element_orders
        while cur.bits != target.bits:
            outside = np.setdiff1d(target.elements, cur.elements)
            # largest order first, lowest index on ties
            pick = int(outside[np.argmax(orders[outside])])
            gens.append(pick)
            cur = closure(G, [pick], start=cur)
        return tuple(gens)


class GroupHomomorphism:
    """A homomorphism given by its value on every element of the domain."""

    def __init__(self, domain: GroupTable, codomain: GroupTable, image_of, check: bool = True):
        self.domain = domain
        self.codomain = codomain
        self.image_of = np.asarray(image_of, dtype=np.int64)
        self.image_of.setflags(write=False)
        if check:
            im = self.image_of
            if im.shape != (domain.order,) or im[0] != 0:
                raise GroupError("homomorphism must send identity to identity")
            lhs = im[domain.mul]
            rhs = codomain.mul[im[:, None], im[None, :]]
            if not np.array_equal(lhs, rhs):
                raise GroupError("map is not a homomorphism")

    def __call__(self, x: int) -> int:
        return int(self.image_of[x])

    def kernel(self) -> SubgroupSet:
        return SubgroupSet(self.domain, np.flatnonzero(self.image_of == 0))

    def image(self) -> SubgroupSet:
        return subgroup_from_elements(self.codomain, np.unique(self.image_of))

    def is_surjective(self) -> bool:
        return np.unique(self.image_of).size == self.codomain.order

    def preimage(self, S: SubgroupSet) -> SubgroupSet:
        return SubgroupSet(self.domain, np.flatnonzero(S.mask[self.image_of]))

    def apply(self, S: SubgroupSet) -> SubgroupSet:
        return subgroup_from_elements(self.codomain, np.unique(self.image_of[S.elements]))


def homomorphism_from_generators(
    G: GroupTable, gens: Sequence[int], H: GroupTable, images: Sequence[int]
) -> np.ndarray | None:
    """Extend ``gens[i] -> images[i]`` to a homomorphism on ``<gens>``.

    Walks the right Cayley graph of ``<gens>``; every edge ``x -> x*g`` must be
    compatible with ``phi(x)*phi(g)``, which is exactly well-definedness.
    Returns an array over all of ``G`` (``-1`` off the generated subgroup), or
    ``None`` when the assignment does not extend.
    """
    img = np.full(G.order, -1, dtype=np.int64)
    img[0] = 0
    queue = deque([0])
    gm, hm = G.mul, H.mul
    pairs = list(zip((int(g) for g in gens), (int(h) for h in images)))
    while queue:
        x = queue.popleft()
        ix = img[x]
        for g, h in pairs:
            y = gm[x, g]
            v = hm[ix, h]
            if img[y] < 0:
                img[y] = v
                queue.append(y)
            elif img[y] != v:
                return None
    return img


# ---------------------------------------------------------------------------
# closure and element-level subgroup operations


def closure(G: GroupTable, gens: Iterable[int], start: SubgroupSet | None = None) -> SubgroupSet:
    """Smallest subgroup containing ``gens`` (and ``start`` when given).

    Dimino-style: the result is grown as a union of right cosets of the
    current subgroup, so each step costs one vectorized table lookup.
    """
    gens = [int(g) for g in gens]
    if start is None:
        cur_elems = np.zeros(1, dtype=np.int64)
        all_gens: list[int] = []
        mask = np.zeros(G.order, dtype=bool)
        mask[0] = True
    else:
        cur_elems = start.elements
        all_gens = list(start.generators)
        mask = start.mask
    for g in gens:
        if mask[g]:
            if g not in all_gens:
                all_gens.append(g)
            continue
        all_gens.append(g)
        cur_elems, mask = _extend(G, cur_elems, mask, all_gens)
    out_gens = [g for g in all_gens if g != 0]
    return SubgroupSet(G, cur_elems, _dedup(out_gens), bits=mask_bits(mask))


def _dedup(xs):
    seen, out = set(), []
    for x in xs:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def _extend(G: GroupTable, H: np.ndarray, mask: np.ndarray, gens: list[int]):
    """Close subgroup ``H`` (element array + mask) under extra generators."""
    mul = G.mul
    mask = mask.copy()
    blocks = [H]
    reps = [0]
    i = 0
    while i < len(reps):
        r = reps[i]
        i += 1
        for s in gens:
            e = int(mul[r, s])
            if not mask[e]:
                coset = mul[H, e]
                mask[coset] = True
                blocks.append(coset.astype(np.int64))
                reps.append(e)
    elems = np.sort(np.concatenate(blocks)) if len(blocks) > 1 else np.sort(H)
    return elems, mask


def subgroup_from_elements(G: GroupTable, elements: Iterable[int], check: bool = True) -> SubgroupSet:
    elems = np.unique(np.fromiter((int(x) for x in elements), dtype=np.int64))
    S = SubgroupSet(G, elems)
    if check:
        if elems.size == 0 or elems[0] != 0:
            raise GroupError("subgroup must contain the identity")
        m = S.mask
        if not m[G.mul[np.ix_(elems, elems)]].all() or not m[G.inv[elems]].all():
            raise GroupError("element set is not closed under multiplication")
    return S


def _check_le(A: SubgroupSet, B: SubgroupSet, what: str) -> None:
    if not A <= B:
        raise GroupError(f"containment violated: {what}")


def conjugate_subgroup(G: GroupTable, g: int, S: SubgroupSet) -> SubgroupSet:
    """``g S g^-1``."""
    row = G.conj_table[g]
    gens = [int(row[x]) for x in S._gens] if S._gens is not None else None
    return SubgroupSet(G, row[S.elements], gens)


def is_normal(G: GroupTable, S: SubgroupSet, within: SubgroupSet | None = None) -> bool:
    """True iff every element of ``within`` (default: all of G) normalizes S."""
    if within is None:
        within = G.whole
    _check_le(S, within, "S <= within")
    m = S.mask
    ct = G.conj_table
    for g in within.generators:
        if not m[ct[g][S.elements]].all():
            return False
    return True


def normalizer(G: GroupTable, S: SubgroupSet, within: SubgroupSet | None = None) -> SubgroupSet:
    """``N_within(S)``; ``within`` defaults to G."""
    cand = np.arange(G.order) if within is None else within.elements
    m = S.mask
    gens = S.generators if S.order > 1 else ()
    ct = G.conj_table
    ok = np.ones(cand.size, dtype=bool)
    for s in gens:
        ok &= m[ct[cand, s]]
    return SubgroupSet(G, cand[ok])


def centralizer(G: GroupTable, X: Iterable[int] | SubgroupSet, within: SubgroupSet | None = None) -> SubgroupSet:
    if isinstance(X, SubgroupSet):
        xs = list(X.generators)
    else:
        xs = [int(x) for x in X]
    cand = np.arange(G.order) if within is None else within.elements
    ok = np.ones(cand.size, dtype=bool)
    for x in xs:
        ok &= G.mul[cand, x] == G.mul[x, cand]
    return SubgroupSet(G, cand[ok])


def core_in(G: GroupTable, N: SubgroupSet, X: SubgroupSet) -> SubgroupSet:
    """Largest subgroup of X normalized by N, the intersection of its N-conjugates.

    Iterates ``C <- C ∩ n C n^-1`` over generators ``n`` of N until stable;
    the fixed point is normal in N and contains every N-normal subgroup of X.
    """
    if not X <= N:
        raise GroupError("containment violated: X <= N")
    return _core(G, N.generators, X)


def _core(G: GroupTable, gens: Sequence[int], X: SubgroupSet) -> SubgroupSet:
    ct = G.conj_table
    mask = X.mask
    changed = True
    while changed:
        changed = False
        for n in gens:
            # x survives iff n^-1 x n is in C, i.e. x in n C n^-1
            new = mask & mask[ct[G.inv[n]]]
            if not np.array_equal(new, mask):
                mask = new
                changed = True
    if mask.sum() == X.order:
        return X
    return SubgroupSet(G, np.flatnonzero(mask), bits=mask_bits(mask))


def normal_core(G: GroupTable, X: SubgroupSet) -> SubgroupSet:
    """``core_G(X)``."""
    return _core(G, G.generators, X)


def center(G: GroupTable) -> SubgroupSet:
    return centralizer(G, G.generators)


def derived_subgroup(G: GroupTable, S: SubgroupSet | None = None) -> SubgroupSet:
    """Commutator subgroup of S (default G): normal closure of generator commutators."""
    S = G.whole if S is None else S
    gens = S.generators
    comms = {G.commutator(a, b) for a in gens for b in gens}
    D = closure(G, sorted(comms))
    # normal closure in S
    while True:
        extra = [G.conj(s, d) for s in gens for d in D.generators]
        D2 = closure(G, extra, start=D)
        if D2 == D:
            return D
        D = D2


def derived_length(G: GroupTable) -> int:
    """Length of the derived series, or -1 if it stabilizes above the identity."""
    S = G.whole
    k = 0
    while not S.is_trivial():
        D = derived_subgroup(G, S)
        if D == S:
            return -1
        S = D
        k += 1
    return k


def subgroup_product(G: GroupTable, A: SubgroupSet, B: SubgroupSet) -> SubgroupSet:
    """The set AB; raises if it is not a subgroup."""
    prods = np.unique(G.mul[np.ix_(A.elements, B.elements)])
    S = SubgroupSet(G, prods)
    m = S.mask
    if not m[G.mul[np.ix_(prods, prods)]].all():
        raise GroupError("product of subgroups is not a subgroup")
    return S


def join(G: GroupTable, subgroups: Iterable[SubgroupSet]) -> SubgroupSet:
    gens = []
    for S in subgroups:
        gens.extend(S.generators)
    return closure(G, gens)


def quotient(G: GroupTable, N: SubgroupSet) -> tuple[GroupTable, GroupHomomorphism]:
    """``G/N`` indexed by cosets ordered by their minimal element.

    Returns the quotient table and the projection.  Raises if N is not normal.
    """
    if not is_normal(G, N):
        raise GroupError("quotient by a non-normal subgroup")
    coset_of = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for x in range(G.order):
        if coset_of[x] < 0:
            coset_of[G.mul[x, N.elements]] = len(reps)
            reps.append(x)
    reps_arr = np.array(reps, dtype=np.int64)
    qmul = coset_of[G.mul[np.ix_(reps_arr, reps_arr)]]
    labels = [G.label(r) + ("N" if N.order > 1 else "") for r in reps]
    Q = GroupTable(qmul, labels, name=f"{G.name}/N", bound=max(G.order, DEFAULT_ORDER_BOUND))
    Q.meta["coset_reps"] = reps
    return Q, GroupHomomorphism(G, Q, coset_of, check=G.order <= 700)


def induced_table(G: GroupTable, S: SubgroupSet, name: str | None = None) -> tuple[GroupTable, np.ndarray]:
    """S as a standalone table; returns it and the embedding (new index -> old)."""
    elems = S.elements
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[elems] = np.arange(elems.size)
    sub = pos[G.mul[np.ix_(elems, elems)]]
    labels = [G.label(x) for x in elems]
    named = {k: int(pos[v]) for k, v in G.named.items() if pos[v] >= 0}
    H = GroupTable(sub, labels, name=name or f"{G.name}_sub", named=named)
    return H, elems


class SubgroupProperties(dict):
    """Dict with attribute access for the structural flags of a subgroup."""

    __getattr__ = dict.__getitem__


def subgroup_properties(G: GroupTable, S: SubgroupSet | None = None) -> SubgroupProperties:
    """Abelian/cyclic/elementary-abelian flags, rank, exponent and order census."""
    S = G.whole if S is None else S
    e = S.elements
    block = G.mul[np.ix_(e, e)]
    abelian = bool(np.array_equal(block, block.T))
    ords = G.element_orders[e]
    exponent = int(np.lcm.reduce(ords)) if ords.size else 1
    cyclic = bool(ords.max() == S.order)
    pf = prime_factors(S.order)
    elem_ab = abelian and len(pf) <= 1 and (S.order == 1 or exponent == pf[0])
    rank = None
    if elem_ab:
        rank = 0 if S.order == 1 else round(np.log(S.order) / np.log(pf[0]))
    census: dict[int, int] = {}
    for o in ords:
        census[int(o)] = census.get(int(o), 0) + 1
    return SubgroupProperties(
        order=S.order,
        is_abelian=abelian,
        is_cyclic=cyclic,
        is_elementary_abelian=elem_ab,
        rank=rank,
        exponent=exponent,
        element_orders=dict(sorted(census.items())),
    )


# ---------------------------------------------------------------------------
# isomorphism testing


def fingerprint(G: GroupTable) -> tuple:
    census = np.bincount(G.element_orders, minlength=G.order + 1)
    return (G.order, tuple(int(c) for c in census), center(G).order, derived_length(G))


def _class_sizes(G: GroupTable) -> np.ndarray:
    """Per-element centralizer order, a conjugation invariant."""
    mul = G.mul
    return (mul == mul.T).sum(axis=1)


def are_isomorphic(G: GroupTable, H: GroupTable) -> bool:
    return find_isomorphism(G, H) is not None


def find_isomorphism(G: GroupTable, H: GroupTable) -> np.ndarray | None:
    """An isomorphism G -> H as an index array, or None.

    Invariant fingerprints first; then backtracking over images of a small
    generating set of G, pruned by element order and centralizer order, and
    by consistency of the partial map on the subgroup generated so far.
    """
    if G.order != H.order:
        return None
    if fingerprint(G) != fingerprint(H):
        return None
    gens = list(G.generators)
    go, ho = G.element_orders, H.element_orders
    gc, hc = _class_sizes(G), _class_sizes(H)
    cands = [np.flatnonzero((ho == go[g]) & (hc == gc[g])) for g in gens]

    def search(i: int, images: list[int]):
        if i == len(gens):
            img = homomorphism_from_generators(G, gens, H, images)
            if img is None or (img < 0).any() or np.unique(img).size != H.order:
                return None
            return img
        for c in cands[i]:
            trial = images + [int(c)]
            if i + 1 < len(gens):
                if homomorphism_from_generators(G, gens[: i + 1], H, trial) is None:
                    continue
            got = search(i + 1, trial)
            if got is not None:
                return got
        return None

    return search(0, [])
