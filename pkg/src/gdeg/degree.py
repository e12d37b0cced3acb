"""Basic degrees, degrees of linear isomorphisms and maximal orbit types."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .burnside import BurnsideElement, table_of_marks
from .ccs import CcsTable
from .errors import NonIntegerCoefficient, TableMismatch
from .reps import RealIrrep, fixed_dim


@dataclass(frozen=True)
class BasicDegree:
    irrep: RealIrrep
    value: BurnsideElement

    def __str__(self):
        return self.value.render()


def fixed_dims(rep: RealIrrep, table: CcsTable) -> list[int]:
    return [fixed_dim(rep, c.representative.mask) for c in table]


def basic_degree(rep: RealIrrep, table: CcsTable, order: Sequence[int] | None = None) -> BasicDegree:
    """G-deg(-id, B(V)) from the recurrence

        n_H = ((-1)^dim V^H - sum_{(K) > (H)} n_K n(H,K) |W(K)|) / |W(H)|.

    ``order`` may be any descending linear extension of the class order; the
    default walks class indices downwards.
    """
    if rep.group is not table.group:
        raise TableMismatch("representation and table live on different groups")
    key = ("basic", id(rep))
    memo = table._cache.setdefault("basic_degrees", {})
    if order is None and key in memo:
        return memo[key]
    C = len(table)
    seq = list(order) if order is not None else list(range(C - 1, -1, -1))
    if sorted(seq) != list(range(C)):
        raise ValueError("order must be a permutation of the class indices")
    done = set()
    n = [0] * C
    dims = fixed_dims(rep, table)
    for H in seq:
        rest = 0
        for K in table.above[H]:
            if K not in done:
                raise ValueError("order is not a descending linear extension")
            if n[K]:
                rest += n[K] * table.n(H, K) * table.weyl(K)
        num = (-1) ** dims[H] - rest
        w = table.weyl(H)
        if num % w:
            raise NonIntegerCoefficient(f"{rep.name}: {num} not divisible by |W(H)| = {w} at class {H}")
        n[H] = num // w
        done.add(H)
    deg = BasicDegree(rep, BurnsideElement(table, dict(enumerate(n))))
    if order is None:
        memo.setdefault(key, deg)
        deg = memo[key]
    return deg


def fold(x: BurnsideElement) -> list[int]:
    """d_H = sum_K n_K n(H,K) |W(K)|, the fixed-point degree at each class."""
    table = x.table
    out = []
    for H in range(len(table)):
        d = x.coeff(H) * table.weyl(H)
        for K, c in x.items():
            if K in table.above[H]:
                d += c * table.n(H, K) * table.weyl(K)
        out.append(d)
    return out


def fold_marks(x: BurnsideElement) -> list[int]:
    """Same as :func:`fold`, via the table of marks (marks[H][K] = n(H,K)|W(K)|)."""
    tom = table_of_marks(x.table)
    return [sum(c * tom.marks[H][K] for K, c in x.items()) for H in range(len(x.table))]


def linear_iso_degree(assignments: Iterable[tuple[BasicDegree, int]], table: CcsTable) -> BurnsideElement:
    """prod deg^m over (degree, multiplicity), with exponents reduced mod 2 first."""
    parity: dict[int, list] = {}
    for deg, m in assignments:
        if m < 0:
            raise ValueError("multiplicities must be non-negative")
        if deg.value.table is not table:
            raise TableMismatch("basic degree over a different table")
        slot = parity.setdefault(id(deg.irrep), [deg, 0])
        slot[1] += m
    out = BurnsideElement.unit(table)
    for deg, m in parity.values():
        if m % 2:
            out = out * deg.value
    return out


def orbit_types(reps: Sequence[RealIrrep], table: CcsTable) -> list[int]:
    """Classes (H) with a nonzero H-fixed vector in the direct sum of ``reps``."""
    return [
        c.index for c in table
        if sum(fixed_dim(r, c.representative.mask) for r in reps) > 0
    ]


def maximal_orbit_types(reps: Sequence[RealIrrep], table: CcsTable) -> list[int]:
    """Maximal orbit types of the direct sum of ``reps`` away from the origin.

    If (H) is maximal among classes with W^H != 0, every nonzero point of W^H has
    isotropy containing some conjugate of H and still fixing a nonzero vector, so by
    maximality its isotropy is exactly that conjugate; hence the maximal orbit types
    are the maximal elements of {(H) : W^H != 0}.
    """
    return table.maximal(orbit_types(reps, table))
