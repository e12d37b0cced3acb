"""Concrete finite groups given by multiplication tables, and their subgroups.

Subgroups are stored as Python ints used as bitsets over element indices, which
keeps hashing, intersection and containment cheap for the group sizes we care
about (a few hundred elements at most).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import GdegError, GroupTooLarge

DEFAULT_BOUND = 200


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def to_mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group on element indices ``0..order-1``.

    ``kind`` is one of ``"dihedral"``, ``"cyclic"``, ``"product"`` or
    ``"permutation"``; ``factors`` is non-empty only for direct products and
    ``perm`` holds the images of each element on the points ``0..degree-1`` when
    the group comes with a permutation action.
    """

    descriptor: str
    labels: tuple
    mul: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]
    identity: int
    generators: tuple[int, ...]
    generator_labels: tuple[str, ...]
    kind: str
    param: int | None = None
    factors: tuple["FiniteGroup", ...] = ()
    perm: tuple[tuple[int, ...], ...] | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._check_axioms()

    def __repr__(self):
        return f"FiniteGroup({self.descriptor}, order={self.order})"

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def degree(self) -> int | None:
        return None if self.perm is None else len(self.perm[0])

    @cached_property
    def table(self) -> np.ndarray:
        t = np.array(self.mul, dtype=np.int32)
        t.setflags(write=False)
        return t

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    @cached_property
    def conj(self) -> tuple[tuple[int, ...], ...]:
        """``conj[g][h] = g h g^-1``."""
        t = self.table
        inv = np.array(self.inverse)
        c = t[t, inv[:, None]]  # c[g, h] = (g*h)*g^-1
        return tuple(tuple(int(v) for v in row) for row in c)

    def _check_axioms(self):
        n = len(self.labels)
        t = np.array(self.mul, dtype=np.int64)
        if t.shape != (n, n) or t.min(initial=0) < 0 or t.max(initial=0) >= n:
            raise GdegError(f"{self.descriptor}: malformed multiplication table")
        rng = np.arange(n)
        if not (np.all(t[self.identity] == rng) and np.all(t[:, self.identity] == rng)):
            raise GdegError(f"{self.descriptor}: identity is not two-sided neutral")
        inv = np.array(self.inverse)
        if not (np.all(t[rng, inv] == self.identity) and np.all(t[inv, rng] == self.identity)):
            raise GdegError(f"{self.descriptor}: inverse table is wrong")
        # Light's test: associativity against a generating set suffices.
        for g in self.generators:
            if not np.array_equal(t[t[:, g], :], t[:, t[g, :]]):
                raise GdegError(f"{self.descriptor}: multiplication is not associative")
        if self.closure(self.generators) != self.full_mask:
            raise GdegError(f"{self.descriptor}: generators do not generate the group")

    def closure(self, gens: Iterable[int]) -> int:
        """Bitmask of the subgroup generated by ``gens``."""
        mul = self.mul
        gens = list(gens)
        mask = 1 << self.identity
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                row = mul[x]
                for g in gens:
                    y = row[g]
                    if not (mask >> y) & 1:
                        mask |= 1 << y
                        nxt.append(y)
            frontier = nxt
        return mask

    def conjugate_mask(self, mask: int, g: int) -> int:
        row = self.conj[g]
        out = 0
        for h in bits(mask):
            out |= 1 << row[h]
        return out

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul[x][g]
            k += 1
        return k

    def power(self, g: int, k: int) -> int:
        x = self.identity
        for _ in range(k % self.element_order(g)):
            x = self.mul[x][g]
        return x

    def is_subgroup(self, mask: int) -> bool:
        if not (mask >> self.identity) & 1:
            return False
        els = bits(mask)
        for a in els:
            row = self.mul[a]
            for b in els:
                if not (mask >> row[b]) & 1:
                    return False
        return True

    def project(self, index: int) -> tuple[int, int]:
        """Split an element of a two-factor direct product into factor indices."""
        if len(self.factors) != 2:
            raise GdegError(f"{self.descriptor} is not a two-factor product")
        nb = self.factors[1].order
        return divmod(index, nb)

    def embed(self, a: int, b: int) -> int:
        return a * self.factors[1].order + b


@dataclass(frozen=True)
class Subgroup:
    group: FiniteGroup
    mask: int

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(bits(self.mask))

    @property
    def order(self) -> int:
        return popcount(self.mask)

    def __le__(self, other: "Subgroup") -> bool:
        return self.mask & ~other.mask == 0

    def __contains__(self, g: int) -> bool:
        return bool((self.mask >> g) & 1)

    def __repr__(self):
        return f"Subgroup({self.group.descriptor}, order={self.order})"


def popcount(mask: int) -> int:
    return bin(mask).count("1")


# constructors ---------------------------------------------------------------


def build_dihedral(n: int) -> FiniteGroup:
    """D_n of order 2n: element ``(a, e)`` is r^a s^e with r an n-cycle and s a reflection.

    The permutation image of r^a s^e on points ``0..n-1`` is ``i -> a + (-1)^e i``,
    so r is the cycle (1,2,...,n) and s fixes the first point.
    """
    if n < 1:
        raise GdegError("dihedral group needs n >= 1")
    labels = tuple((a, e) for e in (0, 1) for a in range(n))
    index = {lab: i for i, lab in enumerate(labels)}

    def mult(x, y):
        (a, e), (b, f) = x, y
        return ((a + (b if e == 0 else -b)) % n, e ^ f)

    mul = tuple(tuple(index[mult(x, y)] for y in labels) for x in labels)
    inverse = tuple(index[((-a) % n, 0) if e == 0 else (a, 1)] for a, e in labels)
    perm = tuple(tuple((a + (i if e == 0 else -i)) % n for i in range(n)) for a, e in labels)
    gens = (index[(1 % n, 0)], index[(0, 1)]) if n > 1 else (index[(0, 1)],)
    glabels = ("r", "s") if n > 1 else ("s",)
    return FiniteGroup(
        descriptor=f"D{n}", labels=labels, mul=mul, inverse=inverse, identity=0,
        generators=gens, generator_labels=glabels, kind="dihedral", param=n, perm=perm,
    )


def build_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GdegError("cyclic group needs n >= 1")
    labels = tuple((k,) for k in range(n))
    mul = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    inverse = tuple((-a) % n for a in range(n))
    perm = tuple(tuple((i + a) % n for i in range(n)) for a in range(n))
    gens = (1 % n,)
    return FiniteGroup(
        descriptor=f"Z{n}", labels=labels, mul=mul, inverse=inverse, identity=0,
        generators=gens, generator_labels=("g",), kind="cyclic", param=n, perm=perm,
    )


def _inner(g: FiniteGroup) -> str:
    d = g.descriptor
    if g.kind == "product" and d.startswith("product(") and d.endswith(")"):
        return d[len("product("):-1]
    return d


def build_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    """Direct product A x B; element ``i * |B| + j`` is the pair (a_i, b_j)."""
    na, nb = A.order, B.order
    labels = tuple((la, lb) for la in A.labels for lb in B.labels)
    mul = tuple(
        tuple(A.mul[a][c] * nb + B.mul[b][d] for c in range(na) for d in range(nb))
        for a in range(na) for b in range(nb)
    )
    inverse = tuple(A.inverse[a] * nb + B.inverse[b] for a in range(na) for b in range(nb))
    ident = A.identity * nb + B.identity
    gens = tuple(g * nb + B.identity for g in A.generators) + tuple(
        A.identity * nb + g for g in B.generators
    )
    glabels = tuple(f"({x},1)" for x in A.generator_labels) + tuple(
        f"(1,{x})" for x in B.generator_labels
    )
    perm = None
    if A.perm is not None and B.perm is not None:
        # disjoint union action on degree(A) + degree(B) points
        da = A.degree
        perm = tuple(
            tuple(A.perm[a]) + tuple(da + p for p in B.perm[b])
            for a in range(na) for b in range(nb)
        )
    return FiniteGroup(
        descriptor=f"product({_inner(A)},{B.descriptor})", labels=labels, mul=mul,
        inverse=inverse, identity=ident, generators=gens, generator_labels=glabels,
        kind="product", factors=(A, B), perm=perm,
    )


def build_permutation_group(generators: Sequence[Sequence[int]], name: str | None = None) -> FiniteGroup:
    """Subgroup of S_n generated by 0-based permutation images; (p*q)(i) = p(q(i))."""
    gens = [tuple(int(x) for x in g) for g in generators]
    if not gens:
        raise GdegError("need at least one generator")
    n = len(gens[0])
    for g in gens:
        if len(g) != n or sorted(g) != list(range(n)):
            raise GdegError(f"not a permutation of {n} points: {g}")
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(n))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    perms = sorted(seen)
    if len(perms) > 100000:
        raise GroupTooLarge(len(perms), 100000)
    index = {p: i for i, p in enumerate(perms)}
    mul = tuple(tuple(index[tuple(p[q[i]] for i in range(n))] for q in perms) for p in perms)
    inverse = []
    for p in perms:
        inv = [0] * n
        for i, v in enumerate(p):
            inv[v] = i
        inverse.append(index[tuple(inv)])
    gen_idx = tuple(index[g] for g in gens)
    return FiniteGroup(
        descriptor=name or f"perm{n}[{';'.join(','.join(map(str, g)) for g in gens)}]",
        labels=tuple(perms), mul=mul, inverse=tuple(inverse), identity=index[ident],
        generators=gen_idx, generator_labels=tuple(f"g{i}" for i in range(len(gens))),
        kind="permutation", param=n, perm=tuple(perms),
    )


# subgroup enumeration -------------------------------------------------------


def cyclic_subgroups(G: FiniteGroup) -> dict[int, int]:
    """Map from cyclic-subgroup mask to one generator of it."""
    out: dict[int, int] = {}
    for g in range(G.order):
        m = G.closure([g])
        out.setdefault(m, g)
    return out


def enumerate_subgroups(G: FiniteGroup, bound: int = DEFAULT_BOUND) -> list[Subgroup]:
    """All subgroups of ``G``, each once, sorted by (order, sorted members).

    Cyclic-extension method: every subgroup is a join of cyclic subgroups, so we
    close the set of cyclic subgroups under joining with one more cyclic subgroup.
    """
    if G.order > bound:
        raise GroupTooLarge(G.order, bound)
    key = ("subgroups",)
    if key in G._cache:
        return G._cache[key]
    cyclic = cyclic_subgroups(G)
    cyc_items = sorted(cyclic.items())
    gens_of = {m: [g] for m, g in cyclic.items()}
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for U in frontier:
            ugens = gens_of[U]
            for C, g in cyc_items:
                if C & ~U == 0:
                    continue
                J = G.closure(ugens + [g])
                if J not in gens_of:
                    gens_of[J] = ugens + [g]
                    nxt.append(J)
        frontier = nxt
    found = gens_of
    subs = sorted(found, key=lambda m: (popcount(m), bits(m)))
    result = [Subgroup(G, m) for m in subs]
    G._cache[key] = result
    return result
