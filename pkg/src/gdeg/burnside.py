"""The Burnside ring A(G) of a finite group and its table of marks."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable

from .ccs import CcsTable
from .errors import TableMismatch
from .groups import bits


class BurnsideElement:
    """Integer combination of conjugacy classes of subgroups; immutable."""

    __slots__ = ("table", "_coeffs")

    def __init__(self, table: CcsTable, coeffs=None):
        self.table = table
        items = coeffs.items() if isinstance(coeffs, dict) else (coeffs or ())
        acc: dict[int, int] = {}
        for i, c in items:
            c = int(c)
            if c:
                acc[i] = acc.get(i, 0) + c
        self._coeffs = tuple(sorted((i, c) for i, c in acc.items() if c))

    @classmethod
    def generator(cls, table: CcsTable, i: int) -> "BurnsideElement":
        return cls(table, {i: 1})

    @classmethod
    def unit(cls, table: CcsTable) -> "BurnsideElement":
        """The class (G), the multiplicative identity."""
        return cls(table, {table.top: 1})

    @classmethod
    def zero(cls, table: CcsTable) -> "BurnsideElement":
        return cls(table)

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def items(self):
        return iter(self._coeffs)

    def coeff(self, i: int) -> int:
        for j, c in self._coeffs:
            if j == i:
                return c
        return 0

    def __bool__(self):
        return bool(self._coeffs)

    def _check(self, other: "BurnsideElement"):
        if other.table is not self.table:
            raise TableMismatch("Burnside elements over different tables")

    def __add__(self, other):
        if isinstance(other, int):
            other = BurnsideElement.unit(self.table) * other
        self._check(other)
        acc = dict(self._coeffs)
        for i, c in other._coeffs:
            acc[i] = acc.get(i, 0) + c
        return BurnsideElement(self.table, acc)

    __radd__ = __add__

    def __neg__(self):
        return BurnsideElement(self.table, {i: -c for i, c in self._coeffs})

    def __sub__(self, other):
        if isinstance(other, int):
            other = BurnsideElement.unit(self.table) * other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return BurnsideElement(self.table, {i: c * other for i, c in self._coeffs})
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        return burnside_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = BurnsideElement.unit(self.table)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._coeffs
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        return self.table is other.table and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((id(self.table), self._coeffs))

    def pairs(self, gap: bool = False) -> list[tuple[str, int]]:
        """Sorted ``(class name, coefficient)`` pairs; the machine report format."""
        return sorted((self.table[i].display(gap), c) for i, c in self._coeffs)

    def render(self, gap: bool = False) -> str:
        if not self._coeffs:
            return "0"
        out = []
        for i, c in sorted(self._coeffs, reverse=True):
            term = f"({self.table[i].display(gap)})"
            mag = abs(c)
            body = term if mag == 1 else f"{mag}{term}"
            if not out:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(out)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"BurnsideElement({self.render()})"


def coeff(x: BurnsideElement, H: int) -> int:
    return x.coeff(H)


def generator_product(table: CcsTable, i: int, j: int) -> dict[int, int]:
    """(H_i) . (H_j) as {class: multiplicity}.

    G-orbits on G/H x G/K correspond to double cosets HgK; the orbit of
    (H, gK) has stabilizer H ∩ gKg^-1, whose class is counted.
    """
    if i > j:
        i, j = j, i
    memo = table._cache.setdefault("products", {})
    hit = memo.get((i, j))
    if hit is not None:
        return hit
    G = table.group
    mul = G.mul
    H = table[i].representative.mask
    K = table[j].representative.mask
    hs, ks = bits(H), bits(K)
    covered = 0
    out: dict[int, int] = defaultdict(int)
    for g in range(G.order):
        if (covered >> g) & 1:
            continue
        dc = 0
        for h in hs:
            row = mul[mul[h][g]]
            for k in ks:
                dc |= 1 << row[k]
        covered |= dc
        out[table.index_of(H & G.conjugate_mask(K, g))] += 1
    result = dict(sorted(out.items()))
    memo.setdefault((i, j), result)
    return result


def burnside_mul(x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
    if x.table is not y.table:
        raise TableMismatch("Burnside elements over different tables")
    table = x.table
    top = table.top
    acc: dict[int, int] = defaultdict(int)
    for i, a in x.items():
        for j, b in y.items():
            if i == top:
                acc[j] += a * b
            elif j == top:
                acc[i] += a * b
            else:
                for k, m in generator_product(table, i, j).items():
                    acc[k] += a * b * m
    return BurnsideElement(table, acc)


@dataclass(frozen=True)
class TableOfMarks:
    table: CcsTable
    marks: tuple[tuple[int, ...], ...]  # marks[K][H] = |(G/H)^K|

    def __getitem__(self, KH):
        K, H = KH
        return self.marks[K][H]


def table_of_marks(table: CcsTable) -> TableOfMarks:
    """Fixed-coset counts by direct scan: marks[K][H] = #{gH : K gH = gH}."""
    memo = table._cache.get("marks")
    if memo is not None:
        return memo
    G = table.group
    mul, inv = G.mul, G.inverse
    C = len(table)
    marks = [[0] * C for _ in range(C)]
    for h_idx in range(C):
        H = table[h_idx].representative.mask
        # coset representatives of G/H
        reps, seen = [], 0
        for g in range(G.order):
            if (seen >> g) & 1:
                continue
            reps.append(g)
            for h in bits(H):
                seen |= 1 << mul[g][h]
        for k_idx in range(C):
            Kgens = bits(table[k_idx].representative.mask)
            count = 0
            for g in reps:
                gi = inv[g]
                # K gH = gH  iff  g^-1 k g in H for every k in K
                if all((H >> mul[mul[gi][k]][g]) & 1 for k in Kgens):
                    count += 1
            marks[k_idx][h_idx] = count
    tom = TableOfMarks(table, tuple(tuple(r) for r in marks))
    table._cache.setdefault("marks", tom)
    return tom


def mark_vector(x: BurnsideElement) -> tuple[int, ...]:
    tom = table_of_marks(x.table)
    C = len(x.table)
    return tuple(sum(c * tom.marks[K][H] for H, c in x.items()) for K in range(C))


def from_marks(table: CcsTable, vector: Iterable[int]) -> BurnsideElement:
    """Inverse of :func:`mark_vector` (the marks matrix is triangular)."""
    tom = table_of_marks(table)
    v = list(vector)
    C = len(table)
    coeffs = [0] * C
    for H in reversed(range(C)):
        rest = v[H] - sum(coeffs[L] * tom.marks[H][L] for L in range(H + 1, C))
        d = tom.marks[H][H]
        if rest % d:
            raise ValueError("vector is not a mark vector of an integral element")
        coeffs[H] = rest // d
    return BurnsideElement(table, dict(enumerate(coeffs)))
