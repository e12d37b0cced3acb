"""Conjugacy classes of subgroups, their partial order, and class names."""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

from .errors import GdegError, NotAProduct
from .groups import (
    DEFAULT_BOUND,
    FiniteGroup,
    Subgroup,
    bits,
    enumerate_subgroups,
    popcount,
)

SCHEMA = "gdeg.ccs/1"

# subgroup names of D1 x Z2 by which non-identity elements they contain;
# element index is 2*a + b with a in D1 = {1, kappa} and b in Z2 = {1, -1}
_KLEIN_NAMES = {
    0b0001: ("Z1", "Z1"),
    0b0101: ("D1", "D1"),
    0b0011: ("Z2", "Z1p"),
    0b1001: ("D1z", "D1z"),
    0b1111: ("D1xZ2", "D1p"),
}


@dataclass(frozen=True)
class CcsClass:
    index: int
    representative: Subgroup
    members: tuple[int, ...]  # bitmasks of all conjugates
    weyl_order: int
    name: str
    gap_name: str

    @property
    def order(self) -> int:
        return self.representative.order

    @property
    def normalizer_order(self) -> int:
        return self.weyl_order * self.order

    def display(self, gap: bool = False) -> str:
        return self.gap_name if gap else self.name


@dataclass(frozen=True)
class GoursatName:
    H: str
    K: str
    L: str
    Z: str
    R: str
    rendered: str
    orders: tuple[int, int, int, int, int]  # |H|, |K|, |L|, |Z|, |R|


class CcsTable:
    """Conjugacy classes of subgroups of a finite group.

    Classes are ordered by subgroup order and then by the sorted member list of
    the canonical representative, so every strict overclass has a larger index.
    """

    def __init__(self, group: FiniteGroup, classes, leq, n_counts):
        self.group = group
        self.classes: tuple[CcsClass, ...] = tuple(classes)
        self.leq: tuple[tuple[bool, ...], ...] = tuple(tuple(r) for r in leq)
        self.n_counts: dict[tuple[int, int], int] = dict(n_counts)
        self._by_mask = {m: c.index for c in self.classes for m in c.members}
        self._by_name = {}
        for c in self.classes:
            self._by_name.setdefault(c.name, c.index)
            self._by_name.setdefault(c.gap_name, c.index)
        self._cache: dict = {}

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, i) -> CcsClass:
        return self.classes[i]

    def __repr__(self):
        return f"CcsTable({self.group.descriptor}, {len(self)} classes)"

    @property
    def top(self) -> int:
        return len(self.classes) - 1

    @property
    def subgroup_count(self) -> int:
        return sum(len(c.members) for c in self.classes)

    def index_of(self, mask: int) -> int:
        """Class index of the subgroup with bitmask ``mask``."""
        try:
            return self._by_mask[mask]
        except KeyError:
            raise GdegError("mask is not a subgroup of this group") from None

    def find(self, name: str) -> int:
        key = _normalize_name(name)
        for c in self.classes:
            if _normalize_name(c.name) == key or _normalize_name(c.gap_name) == key:
                return c.index
        raise KeyError(name)

    def weyl(self, i: int) -> int:
        return self.classes[i].weyl_order

    def n(self, i: int, j: int) -> int:
        return self.n_counts.get((i, j), 0)

    @cached_property
    def above(self) -> tuple[tuple[int, ...], ...]:
        """``above[i]``: indices j != i with (i) <= (j), ascending."""
        return tuple(
            tuple(j for j in range(i + 1, len(self)) if self.leq[i][j]) for i in range(len(self))
        )

    def maximal(self, indices) -> list[int]:
        idx = sorted(set(indices))
        return [i for i in idx if not any(j != i and self.leq[i][j] for j in idx)]

    def to_document(self) -> dict:
        return {
            "schema": SCHEMA,
            "group": self.group.descriptor,
            "classes": [
                {
                    "index": c.index,
                    "name": c.name,
                    "gap_name": c.gap_name,
                    "order": c.order,
                    "weyl_order": c.weyl_order,
                    "class_size": len(c.members),
                    "representative": list(c.representative.members),
                }
                for c in self.classes
            ],
            "leq": [[int(v) for v in row] for row in self.leq],
            "n_counts": [[i, j, v] for (i, j), v in sorted(self.n_counts.items())],
        }


def n_count(table: CcsTable, H: int, K: int) -> int:
    """Number of subgroups in the class (K) that contain the representative of (H)."""
    return table.n(H, K)


def _normalize_name(name: str) -> str:
    s = name.strip()
    if s.startswith("(") and s.endswith(")") and _balanced(s[1:-1]):
        s = s[1:-1]
    return re.sub(r"\s+", "", s).replace("×", "x").replace("{e}", "Z1")


def _balanced(s: str) -> bool:
    depth = 0
    for ch in s:
        depth += {"(": 1, ")": -1}.get(ch, 0)
        if depth < 0:
            return False
    return depth == 0


# naming ---------------------------------------------------------------------


def _is_klein_factor(G: FiniteGroup) -> bool:
    return (
        G.kind == "product"
        and len(G.factors) == 2
        and G.factors[0].descriptor == "D1"
        and G.factors[1].descriptor == "Z2"
    )


def _wrap(name: str) -> str:
    return name if re.fullmatch(r"[A-Za-z]+\d*[a-z]*(#\d+)?", name) else f"({name})"


def abstract_name(G: FiniteGroup, mask: int, kernel: int | None = None) -> str:
    """Isomorphism-type label Zk / Dk for the quotient of subgroup ``mask`` by normal ``kernel``."""
    kernel = kernel if kernel is not None else 1 << G.identity
    q = popcount(mask) // popcount(kernel)
    if q == 1:
        return "Z1"

    def coset_order(h):
        k, x = 1, h
        while not (kernel >> x) & 1:
            x = G.mul[x][h]
            k += 1
        return k

    orders = {h: coset_order(h) for h in bits(mask)}
    if max(orders.values()) == q:
        return f"Z{q}"
    if q % 2 == 0:
        half = q // 2
        for h, o in orders.items():
            if o != half:
                continue
            rot = kernel
            x = h
            for _ in range(half):
                for z in bits(kernel):
                    rot |= 1 << G.mul[x][z]
                x = G.mul[x][h]
            if all(orders[y] == 2 for y in bits(mask & ~rot)):
                return f"D{half}"
    return f"L{q}"


def subgroup_name(G: FiniteGroup, mask: int, gap: bool = False) -> str:
    """Short name of a subgroup of a factor group (not unique up to conjugacy in general)."""
    if G.kind == "dihedral":
        k = popcount(mask)
        has_reflection = any(G.labels[i][1] == 1 for i in bits(mask))
        return f"D{k // 2}" if has_reflection else f"Z{k}"
    if G.kind == "cyclic":
        return f"Z{popcount(mask)}"
    if _is_klein_factor(G):
        default, gapn = _KLEIN_NAMES[mask]
        return gapn if gap else default
    if G.kind == "product":
        return goursat_name(G, Subgroup(G, mask), gap=gap).rendered
    return abstract_name(G, mask)


def goursat_name(G: FiniteGroup, U: Subgroup, gap: bool = False) -> GoursatName:
    """Goursat quintuple (H, K, L, Z, R) of a subgroup of a two-factor direct product."""
    if G.kind != "product" or len(G.factors) != 2:
        raise NotAProduct(f"{G.descriptor} carries no direct-product factors")
    A, B = G.factors
    H = K = Z = R = 0
    for u in bits(U.mask):
        a, b = G.project(u)
        H |= 1 << a
        K |= 1 << b
        if b == B.identity:
            Z |= 1 << a
        if a == A.identity:
            R |= 1 << b
    hn, kn = subgroup_name(A, H, gap), subgroup_name(B, K, gap)
    zn, rn = subgroup_name(A, Z, gap), subgroup_name(B, R, gap)
    ln = abstract_name(A, H, Z)
    if Z == H and R == K:
        rendered = f"{_wrap(hn)} x {_wrap(kn)}"
    else:
        rendered = f"{_wrap(hn)}^{{{zn}}} x_{{{ln}}}^{{{rn}}} {_wrap(kn)}"
    orders = (popcount(H), popcount(K), popcount(H) // popcount(Z), popcount(Z), popcount(R))
    return GoursatName(hn, kn, ln, zn, rn, rendered, orders)


def _class_names(G: FiniteGroup, reps: list[int], gap: bool) -> list[str]:
    names = []
    for i, m in enumerate(reps):
        if G.kind == "product" and i == len(reps) - 1:
            names.append("G")
        else:
            names.append(subgroup_name(G, m, gap))
    seen: dict[str, int] = {}
    for i, nm in enumerate(names):
        seen[nm] = seen.get(nm, 0) + 1
        if seen[nm] > 1:
            names[i] = f"{nm}#{seen[nm]}"
    return names


# construction ---------------------------------------------------------------


def _conjugacy_orbit(G: FiniteGroup, mask: int) -> list[int]:
    orbit = {mask}
    frontier = [mask]
    while frontier:
        nxt = []
        for m in frontier:
            for g in G.generators:
                c = G.conjugate_mask(m, g)
                if c not in orbit:
                    orbit.add(c)
                    nxt.append(c)
        frontier = nxt
    return sorted(orbit, key=bits)


def _assemble(G: FiniteGroup, reps: list[int], orbits: list[list[int]], leq=None, n_counts=None):
    C = len(reps)
    if leq is None:
        leq = [[False] * C for _ in range(C)]
        n_counts = {}
        sizes = [popcount(r) for r in reps]
        for i in range(C):
            for j in range(i, C):
                if sizes[j] % sizes[i]:
                    continue
                rj = reps[j]
                if any(m & ~rj == 0 for m in orbits[i]):
                    leq[i][j] = True
                    ri = reps[i]
                    n_counts[(i, j)] = sum(1 for m in orbits[j] if ri & ~m == 0)
    names = _class_names(G, reps, gap=False)
    gap_names = _class_names(G, reps, gap=True)
    classes = [
        CcsClass(
            index=i,
            representative=Subgroup(G, reps[i]),
            members=tuple(orbits[i]),
            weyl_order=G.order // len(orbits[i]) // popcount(reps[i]),
            name=names[i],
            gap_name=gap_names[i],
        )
        for i in range(C)
    ]
    return CcsTable(G, classes, leq, n_counts)


def ccs(G: FiniteGroup, bound: int = DEFAULT_BOUND) -> CcsTable:
    """Conjugacy classes of subgroups of ``G`` with Weyl orders, order relation and n(H, K)."""
    key = ("ccs", bound)
    if key in G._cache:
        return G._cache[key]
    subs = enumerate_subgroups(G, bound)
    assigned: set[int] = set()
    reps, orbits = [], []
    for s in subs:  # sorted by (order, members), so the first member seen is canonical
        if s.mask in assigned:
            continue
        orb = _conjugacy_orbit(G, s.mask)
        assigned.update(orb)
        reps.append(s.mask)
        orbits.append(orb)
    table = _assemble(G, reps, orbits)
    G._cache[key] = table
    return table


def from_document(G: FiniteGroup, doc: dict) -> CcsTable:
    """Rebuild a table from :meth:`CcsTable.to_document` output without re-enumerating."""
    if doc.get("schema") != SCHEMA or doc.get("group") != G.descriptor:
        raise GdegError("cached table does not match this group or schema")
    reps, orbits = [], []
    for c in doc["classes"]:
        m = 0
        for i in c["representative"]:
            m |= 1 << i
        if not G.is_subgroup(m):
            raise GdegError("cached representative is not a subgroup")
        reps.append(m)
        orbits.append(_conjugacy_orbit(G, m))
    C = len(reps)
    leq = [[bool(v) for v in row] for row in doc["leq"]]
    if len(leq) != C:
        raise GdegError("cached leq matrix has the wrong size")
    n_counts = {(i, j): v for i, j, v in doc["n_counts"]}
    return _assemble(G, reps, orbits, leq, n_counts)


def cache_key(G: FiniteGroup, version: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.,()+-]", "_", f"{version}-{G.descriptor}") + ".json"


def load_or_build(G: FiniteGroup, cache_dir: str | os.PathLike | None, version: str,
                  bound: int = DEFAULT_BOUND) -> CcsTable:
    """CCS table for ``G``, read from / written to ``cache_dir`` when given."""
    if cache_dir is None:
        return ccs(G, bound)
    key = ("ccs", bound)
    path = Path(cache_dir) / cache_key(G, version)
    table = G._cache.get(key)
    if table is None and path.exists():
        try:
            table = from_document(G, json.loads(path.read_text()))
            G._cache[key] = table
            return table
        except (GdegError, ValueError, KeyError):
            pass
    if table is None:
        table = ccs(G, bound)
    if not path.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp%d" % os.getpid())
        tmp.write_text(json.dumps(table.to_document(), sort_keys=True))
        os.replace(tmp, path)
    return table
