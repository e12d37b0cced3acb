"""Real irreducible representations via exact characters."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .cyclo import Cyclo, parse_cyclo
from .errors import ConfigError, NonIntegerDimension, UnsupportedGroup
from .groups import FiniteGroup, Subgroup, bits, build_permutation_group, popcount


@dataclass(frozen=True, eq=False)
class RealIrrep:
    group: FiniteGroup
    dim: int
    character: tuple[Cyclo, ...]
    name: str
    gamma_index: int | None = None
    sign: str | None = None
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    def __repr__(self):
        return f"RealIrrep({self.name}, dim={self.dim}, group={self.group.descriptor})"

    @cached_property
    def _field(self) -> int:
        return math.lcm(*(c.N for c in self.character))

    @cached_property
    def _coords(self) -> np.ndarray:
        """Integer power-basis coordinates of the character values, one row per element."""
        N = self._field
        rows = []
        for c in self.character:
            co = c.lift(N).coeffs
            if any(q.denominator != 1 for q in co):
                raise NonIntegerDimension(f"{self.name}: character value {c} is not integral")
            rows.append([int(q) for q in co])
        return np.array(rows, dtype=object)

    def character_sum(self, mask: int) -> Cyclo:
        idx = bits(mask)
        total = self._coords[idx].sum(axis=0)
        return Cyclo(self._field, tuple(Fraction(int(v)) for v in total))

    def inner(self, other: "RealIrrep") -> Fraction:
        """<chi, psi> = (1/|G|) sum chi(g) conj(psi(g)) (rational for real characters)."""
        total = Cyclo.rational(0)
        for a, b in zip(self.character, other.character):
            total = total + a * b.conjugate()
        return (total / self.group.order).to_fraction()


def fixed_dim(rep: RealIrrep, H) -> int:
    """dim of the H-fixed subspace: the average of the character over H."""
    mask = H.mask if isinstance(H, Subgroup) else H
    hit = rep._memo.get(mask)
    if hit is not None:
        return hit
    s = rep.character_sum(mask) / popcount(mask)
    try:
        d = s.to_int()
    except ValueError:
        raise NonIntegerDimension(f"{rep.name}: fixed-point dimension {s} is not an integer") from None
    if d < 0 or d > rep.dim:
        raise NonIntegerDimension(f"{rep.name}: fixed-point dimension {d} out of range")
    rep._memo[mask] = d
    return d


# construction ---------------------------------------------------------------


def _rat(q) -> Cyclo:
    return Cyclo.rational(q)


def _trivial(G: FiniteGroup, name="U0", **tags) -> RealIrrep:
    return RealIrrep(G, 1, tuple(_rat(1) for _ in range(G.order)), name, **tags)


def _dihedral_irreps(G: FiniteGroup) -> list[RealIrrep]:
    n = G.param
    if n > 1 and n % 2 == 0:
        raise UnsupportedGroup(f"D{n}: only odd n is supported")
    out = [_trivial(G, "U0", gamma_index=0)]
    out.append(RealIrrep(G, 1, tuple(_rat(1 if e == 0 else -1) for a, e in G.labels), "Usgn"))
    for l in range(1, (n - 1) // 2 + 1):
        chars = tuple(
            Cyclo.cos2pi(Fraction(l * a, n)) * 2 if e == 0 else _rat(0) for a, e in G.labels
        )
        out.append(RealIrrep(G, 2, chars, f"U{l}", gamma_index=l))
    return out


def _cyclic_irreps(G: FiniteGroup) -> list[RealIrrep]:
    n = G.param
    if n == 1:
        return [_trivial(G, "U0", gamma_index=0)]
    if n == 2:
        return [
            _trivial(G, "U0", gamma_index=0),
            RealIrrep(G, 1, (_rat(1), _rat(-1)), "Usgn"),
        ]
    raise UnsupportedGroup(f"Z{n}: real irreducibles of complex type are not supported")


def tensor(a: RealIrrep, b: RealIrrep, G: FiniteGroup, name: str, **tags) -> RealIrrep:
    nb = b.group.order
    chars = tuple(a.character[i // nb] * b.character[i % nb] for i in range(G.order))
    return RealIrrep(G, a.dim * b.dim, chars, name, **tags)


def _is_klein(G: FiniteGroup) -> bool:
    return (
        G.kind == "product"
        and [f.descriptor for f in G.factors] == ["D1", "Z2"]
    )


def klein_irreps(G: FiniteGroup) -> list[RealIrrep]:
    """Irreducibles of D1 x Z2: trivial, V+, V-, Vk.

    V+ and V- both send (1,-1) to -1; (kappa,1) acts as +1 on V+ and -1 on V-.
    """
    # element index 2a + b, a = kappa exponent, b = 1 for the element -1
    def chars(f):
        return tuple(_rat(f(i >> 1, i & 1)) for i in range(4))

    return [
        RealIrrep(G, 1, chars(lambda a, b: 1), "1"),
        RealIrrep(G, 1, chars(lambda a, b: (-1) ** b), "V+", sign="+"),
        RealIrrep(G, 1, chars(lambda a, b: (-1) ** (a + b)), "V-", sign="-"),
        RealIrrep(G, 1, chars(lambda a, b: (-1) ** a), "Vk"),
    ]


def irreps_of(G: FiniteGroup, supplied: dict | None = None) -> list[RealIrrep]:
    """Complete list of real irreducibles for the supported families.

    ``supplied`` maps a factor descriptor to user-given irreducibles for groups we
    cannot handle ourselves.
    """
    supplied = supplied or {}
    if G.descriptor in supplied:
        return list(supplied[G.descriptor])
    if G.kind == "dihedral":
        return _dihedral_irreps(G)
    if G.kind == "cyclic":
        return _cyclic_irreps(G)
    if _is_klein(G):
        return klein_irreps(G)
    if G.kind == "product":
        A, B = G.factors
        ia, ib = irreps_of(A, supplied), irreps_of(B, supplied)
        out = []
        for a in ia:
            for b in ib:
                if _is_klein(A) and a.sign is not None:
                    name = f"{b.name}{a.sign}"
                    out.append(tensor(a, b, G, name, gamma_index=b.gamma_index, sign=a.sign))
                else:
                    out.append(tensor(a, b, G, f"{a.name}*{b.name}"))
        return out
    raise UnsupportedGroup(
        f"{G.descriptor}: supply an exact character table for this group in the config"
    )


# isotypic decomposition -------------------------------------------------------


@dataclass(frozen=True)
class Component:
    index: int  # l
    irrep: RealIrrep
    multiplicity: int  # m_l
    dim_Vl: int


@dataclass(frozen=True)
class IsotypicDecomposition:
    gamma: FiniteGroup
    components: tuple[Component, ...]

    @property
    def n(self) -> int:
        return sum(c.dim_Vl for c in self.components)

    def __len__(self):
        return len(self.components)


def permutation_character(G: FiniteGroup) -> tuple[int, ...]:
    if G.perm is None:
        raise UnsupportedGroup(f"{G.descriptor} carries no permutation action")
    return tuple(sum(1 for i, v in enumerate(p) if i == v) for p in G.perm)


def isotypic_decomposition(gamma: FiniteGroup, irreps: list[RealIrrep] | None = None) -> IsotypicDecomposition:
    """Split the permutation representation R^n of ``gamma`` into isotypic components."""
    irreps = irreps if irreps is not None else irreps_of(gamma)
    pc = permutation_character(gamma)
    comps = []
    for rep in irreps:
        total = Cyclo.rational(0)
        for v, ch in zip(pc, rep.character):
            if v:
                total = total + ch * v
        m = total / gamma.order
        if not m.is_rational() or m.to_fraction().denominator != 1:
            raise NonIntegerDimension(f"multiplicity of {rep.name} is {m}")
        m = m.to_int()
        if m:
            comps.append((rep, m))
    components = tuple(
        Component(l, rep, m, m * rep.dim) for l, (rep, m) in enumerate(comps)
    )
    dec = IsotypicDecomposition(gamma, components)
    if dec.n != gamma.degree:
        raise NonIntegerDimension(
            f"isotypic dimensions sum to {dec.n}, expected {gamma.degree}; character table incomplete?"
        )
    return dec


def signed_irreps(decomp: IsotypicDecomposition, G: FiniteGroup) -> list[tuple[RealIrrep, RealIrrep]]:
    """(U_l+, U_l-) = (V+ (x) U_l, V- (x) U_l) over G = (D1 x Z2) x Gamma, one pair per component."""
    if G.kind != "product" or not _is_klein(G.factors[0]):
        raise UnsupportedGroup(f"{G.descriptor} is not of the form (D1 x Z2) x Gamma")
    if G.factors[1] is not decomp.gamma:
        raise UnsupportedGroup("decomposition is over a different Gamma")
    kl = {r.name: r for r in klein_irreps(G.factors[0])}
    out = []
    for comp in decomp.components:
        U = comp.irrep
        plus = tensor(kl["V+"], U, G, f"{U.name}+", gamma_index=comp.index, sign="+")
        minus = tensor(kl["V-"], U, G, f"{U.name}-", gamma_index=comp.index, sign="-")
        out.append((plus, minus))
    return out


# user-supplied characters -------------------------------------------------------


def parse_cycles(text: str, n: int) -> tuple[int, ...]:
    """Cycle notation on points 1..n, e.g. ``"(1,2,3)(4,5)"`` or ``"()"``, to 0-based images."""
    img = list(range(n))
    s = text.replace(" ", "")
    if s in ("", "()", "e", "id"):
        return tuple(img)
    if not re.fullmatch(r"(\(\d+(,\d+)*\))+", s):
        raise ConfigError(f"bad cycle notation {text!r}")
    for cyc in re.findall(r"\(([^)]*)\)", s):
        pts = [int(x) - 1 for x in cyc.split(",")]
        if any(p < 0 or p >= n for p in pts):
            raise ConfigError(f"cycle {cyc} leaves the points 1..{n}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    if sorted(img) != list(range(n)):
        raise ConfigError(f"{text!r} is not a permutation")
    return tuple(img)


def element_classes(G: FiniteGroup) -> list[int]:
    """Conjugacy class id of each element."""
    cls = [-1] * G.order
    cid = 0
    for g in range(G.order):
        if cls[g] >= 0:
            continue
        for x in range(G.order):
            cls[G.conj[x][g]] = cid
        cid += 1
    return cls


def custom_gamma(n: int, generators, name: str | None = None) -> FiniteGroup:
    gens = [parse_cycles(g, n) if isinstance(g, str) else tuple(int(x) - 1 for x in g) for g in generators]
    return build_permutation_group(gens, name=name)


def custom_irreps(G: FiniteGroup, table: list[dict]) -> list[RealIrrep]:
    """Build irreducibles from ``[{name, values: {cycle word: cyclotomic expr}}]``.

    Every conjugacy class needs one representative word. The result is checked for
    orthonormality and real-valuedness.
    """
    n = G.degree
    index = {p: i for i, p in enumerate(G.perm)}
    cls = element_classes(G)
    out = []
    for entry in table:
        name = str(entry["name"])
        vals: dict[int, Cyclo] = {}
        for word, expr in entry["values"].items():
            p = parse_cycles(str(word), n)
            if p not in index:
                raise ConfigError(f"{name}: {word} is not an element of the group")
            try:
                vals[cls[index[p]]] = parse_cyclo(expr)
            except ValueError as exc:
                raise ConfigError(f"{name}: {exc}") from None
        missing = set(cls) - set(vals)
        if missing:
            raise ConfigError(f"{name}: character values missing for {len(missing)} class(es)")
        chars = tuple(vals[cls[g]] for g in range(G.order))
        dim = chars[G.identity]
        if not dim.is_rational() or dim.to_fraction().denominator != 1 or dim.to_int() < 1:
            raise ConfigError(f"{name}: value at the identity must be a positive integer")
        rep = RealIrrep(G, dim.to_int(), chars, name, gamma_index=len(out))
        if not all(c.is_real() for c in chars):
            raise ConfigError(f"{name}: only real-valued characters are supported")
        if rep.inner(rep) != 1:
            raise ConfigError(f"{name}: <chi, chi> != 1, not absolutely irreducible")
        for other in out:
            if rep.inner(other) != 0:
                raise ConfigError(f"{name} and {other.name} are not orthogonal")
        out.append(rep)
    return out
