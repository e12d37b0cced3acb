"""Spectrum of the linearized delay operator on its isotypic blocks.

Values stay exact (``Cyclo``) whenever the isotypic scalars are rational or cyclotomic
and every delay is a rational multiple of 2*pi; otherwise they are floats.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .cyclo import Cyclo, parse_cyclo
from .errors import (
    ComplexSpectrum,
    ConfigError,
    DegenerateLinearization,
    DelayRangeViolation,
    DelaySymmetryViolation,
    EvenN,
    MuPairingViolation,
    NonCommuting,
)

Number = Union[Cyclo, float]

DEFAULT_SYM_TOL = 1e-9
DEFAULT_SIGN_TOL = 1e-9
DEFAULT_CLUSTER_TOL = 1e-8


# delays ------------------------------------------------------------------------


@dataclass(frozen=True)
class Delay:
    """A delay tau; ``turns`` = tau / (2 pi) when that ratio is known to be rational."""

    value: float
    turns: Fraction | None = None
    text: str = ""

    @classmethod
    def exact(cls, turns) -> "Delay":
        t = Fraction(turns)
        return cls(float(2 * math.pi * t), t, _fmt_turns(t))

    def __str__(self):
        return self.text or repr(self.value)


def _fmt_turns(t: Fraction) -> str:
    if t == Fraction(1, 2):
        return "pi"
    if t.denominator == 1:
        return f"2*pi*{t.numerator}"
    return f"2*pi*{t.numerator}/{t.denominator}"


_NUM = re.compile(r"^[+]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


def parse_delay(text) -> Delay:
    """Accepts ``"2*pi*p/q"``, ``"pi"``, ``"p*pi/q"`` and plain decimal literals."""
    if isinstance(text, Delay):
        return text
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return Delay(float(text), None, repr(float(text)))
    s = str(text).replace(" ", "").lower().replace("π", "pi")
    if _NUM.match(s):
        return Delay(float(s), None, s)
    num, _, den = s.partition("/")
    factors = num.split("*")
    if factors.count("pi") != 1:
        raise ConfigError(f"cannot parse delay {text!r}")
    coef = Fraction(1)
    try:
        for f in factors:
            if f != "pi":
                coef *= Fraction(f)
        if den:
            coef /= Fraction(den)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"cannot parse delay {text!r}") from None
    return Delay.exact(coef / 2)


@dataclass(frozen=True)
class DelaySet:
    taus: tuple[Delay, ...]
    order: tuple[int, ...] = ()  # original position of each sorted delay

    @property
    def m(self) -> int:
        return len(self.taus)

    @property
    def epsilon_m(self) -> int:
        return self.m % 2

    @property
    def exact(self) -> bool:
        return all(t.turns is not None for t in self.taus)


def validate_delays(taus: Sequence, sym_tol: float = DEFAULT_SYM_TOL) -> DelaySet:
    """Sort and check 0 < tau_1 < ... < tau_m < 2 pi with tau_{m-j+1} = 2 pi - tau_j."""
    parsed = [parse_delay(t) for t in taus]
    for t in parsed:
        inside = (0 < t.turns < 1) if t.turns is not None else (0 < t.value < 2 * math.pi)
        if not inside:
            raise DelayRangeViolation(f"delay {t} is outside (0, 2*pi)")
    order = sorted(range(len(parsed)), key=lambda i: parsed[i].value)
    ds = [parsed[i] for i in order]
    for a, b in zip(ds, ds[1:]):
        same = a.turns == b.turns if (a.turns is not None and b.turns is not None) else abs(a.value - b.value) <= sym_tol
        if same:
            raise DelayRangeViolation(f"delays must be distinct, got {a} twice")
    m = len(ds)
    for j in range(m):
        a, b = ds[j], ds[m - 1 - j]
        if a.turns is not None and b.turns is not None:
            ok = a.turns + b.turns == 1
        else:
            ok = abs(a.value + b.value - 2 * math.pi) <= sym_tol
        if not ok:
            raise DelaySymmetryViolation(
                j + 1, f"tau_{m - j} = {b} but 2*pi - tau_{j + 1} = 2*pi - {a}"
            )
    return DelaySet(tuple(ds), tuple(order))


# mu tables -----------------------------------------------------------------------


@dataclass(frozen=True)
class MuTable:
    """mus[j][l] = mu_j^l for j = 0..m and isotypic index l."""

    mus: tuple[tuple[Number, ...], ...]
    multiplicities: tuple[int, ...]
    provenance: str = "user-supplied"

    @property
    def m(self) -> int:
        return len(self.mus) - 1

    @property
    def components(self) -> int:
        return len(self.multiplicities)

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Cyclo) for row in self.mus for v in row)

    def column(self, l: int) -> tuple[Number, ...]:
        return tuple(row[l] for row in self.mus)

    def reorder_delays(self, order: Sequence[int]) -> "MuTable":
        """Permute rows 1..m to follow delays sorted by ``order``."""
        rows = (self.mus[0],) + tuple(self.mus[1 + i] for i in order)
        return MuTable(rows, self.multiplicities, self.provenance)


def _num(v) -> Number:
    if isinstance(v, Cyclo):
        return v
    if isinstance(v, bool):
        raise ConfigError("booleans are not numbers")
    if isinstance(v, int):
        return Cyclo.rational(v)
    if isinstance(v, float):
        return v
    if isinstance(v, Fraction):
        return Cyclo.rational(v)
    s = str(v).strip()
    try:
        if "E(" in s or "/" in s or re.fullmatch(r"[+-]?\d+", s):
            return parse_cyclo(s)
        return float(s)
    except ValueError as exc:
        raise ConfigError(f"cannot read number {v!r}: {exc}") from None


def mu_table(rows: Sequence[Sequence], multiplicities: Sequence[int] | None = None,
             provenance: str = "user-supplied") -> MuTable:
    mus = tuple(tuple(_num(v) for v in row) for row in rows)
    if not mus:
        raise ConfigError("mu table needs at least the row j = 0")
    width = len(mus[0])
    if any(len(r) != width for r in mus):
        raise ConfigError("mu table rows have different lengths")
    mult = tuple(multiplicities) if multiplicities is not None else (1,) * width
    if len(mult) != width:
        raise ConfigError("multiplicity list does not match the mu table width")
    if any(int(x) != x or x < 1 for x in mult):
        raise ConfigError("multiplicities must be positive integers")
    return MuTable(mus, tuple(int(x) for x in mult), provenance)


def circulant_mu(coeffs: Sequence[tuple], n: int) -> MuTable:
    """mu_j^l = a_j + 2 b_j cos(2 pi l / n), l = 0..floor(n/2), for the symmetric circulant A_j."""
    if n % 2 == 0:
        raise EvenN(f"n = {n} is even; only odd n is supported")
    if n < 3:
        raise ConfigError("circulant matrices need n >= 3")
    rows = []
    for a, b in coeffs:
        a, b = _num(a), _num(b)
        row = []
        for l in range(n // 2 + 1):
            c = Cyclo.cos2pi(Fraction(l, n))
            if isinstance(a, Cyclo) and isinstance(b, Cyclo):
                row.append(a + b * c * 2)
            else:
                row.append(float(a) + 2 * float(b) * float(c))
        rows.append(tuple(row))
    return MuTable(tuple(rows), (1,) * (n // 2 + 1), f"circulant(n={n})")


def circulant_matrix(a: float, b: float, n: int) -> np.ndarray:
    A = np.zeros((n, n))
    for i in range(n):
        A[i, i] = a
        A[i, (i + 1) % n] += b
        A[i, (i - 1) % n] += b
    return A


def check_pairing(mu: MuTable, delays: DelaySet, tol: float = DEFAULT_SYM_TOL) -> None:
    """mu_j^l must equal mu_{m-j+1}^l for the cosine form to be valid."""
    if mu.m != delays.m:
        raise ConfigError(f"{delays.m} delays but {mu.m + 1} matrix rows (expected m + 1)")
    m = mu.m
    for l in range(mu.components):
        for j in range(1, m // 2 + 1):
            a, b = mu.mus[j][l], mu.mus[m - j + 1][l]
            if isinstance(a, Cyclo) and isinstance(b, Cyclo):
                bad = a != b
            else:
                bad = abs(float(a) - float(b)) > tol
            if bad:
                raise MuPairingViolation(l, j, f"mu_{j}^{l} = {a} differs from mu_{m - j + 1}^{l} = {b}")


# xi ------------------------------------------------------------------------------


def _exact_path(mu: MuTable, delays: DelaySet) -> bool:
    return mu.exact and delays.exact


def _cos(delay: Delay, k: int, exact: bool) -> Number:
    if exact:
        return Cyclo.cos2pi(delay.turns * k)
    return math.cos(k * delay.value)


def _as(v: Number, exact: bool) -> Number:
    return v if exact else float(v)


def block_sum(l: int, k: int, mu: MuTable, delays: DelaySet) -> Number:
    """S = mu_0 + sum_{j <= m/2} 2 mu_j cos(k tau_j) + eps_m (-1)^k mu_{(m+1)/2}."""
    exact = _exact_path(mu, delays)
    m = delays.m
    S = _as(mu.mus[0][l], exact)
    for j in range(1, m // 2 + 1):
        S = S + _as(mu.mus[j][l], exact) * 2 * _cos(delays.taus[j - 1], k, exact)
    if m % 2:
        S = S + _as(mu.mus[(m + 1) // 2][l], exact) * (-1) ** k
    return S


def xi(l: int, k: int, mu: MuTable, delays: DelaySet) -> Number:
    """Eigenvalue xi_{l,k} = 1 + (S - 1) / (k^2 + 1), cosine form."""
    S = block_sum(l, k, mu, delays)
    if isinstance(S, Cyclo):
        return (S - 1) / (k * k + 1) + 1
    return 1 + (S - 1) / (k * k + 1)


def xi_complex(l: int, k: int, mu: MuTable, delays: DelaySet, exact: bool | None = None):
    """Oracle: 1 + (mu_0 + sum_j mu_j exp(-i k tau_j) - 1) / (k^2 + 1) summed over every delay.

    Returns a ``Cyclo`` on the exact path (real part only meaningful if it is real)
    and a Python complex otherwise.
    """
    if exact is None:
        exact = _exact_path(mu, delays)
    if exact:
        total = mu.mus[0][l]
        for j, d in enumerate(delays.taus, start=1):
            t = -d.turns * k
            total = total + mu.mus[j][l] * Cyclo.zeta(t.denominator, t.numerator)
        return (total - 1) / (k * k + 1) + 1
    total = complex(float(mu.mus[0][l]))
    for j, d in enumerate(delays.taus, start=1):
        total += float(mu.mus[j][l]) * complex(math.cos(k * d.value), -math.sin(k * d.value))
    return 1 + (total - 1) / (k * k + 1)


def k_cutoff(mu: MuTable) -> int:
    """Beyond this k every block satisfies xi > 0 and the isomorphism condition strictly."""
    best = 0
    for l in range(mu.components):
        col = mu.column(l)
        S = abs(float(col[0]) - 1) + sum(abs(float(v)) for v in col[1:])
        S = S * (1 + 1e-12) + 1e-12  # never underestimate
        best = max(best, math.isqrt(math.floor(max(0.0, S - 1))) + 1)
    return best


def _sign(v: Number, tol: float) -> int:
    if isinstance(v, Cyclo):
        return v.sign()
    if abs(v) <= tol:
        return 0
    return 1 if v > 0 else -1


def isomorphism_check(mu: MuTable, delays: DelaySet, sign_tol: float = DEFAULT_SIGN_TOL) -> float:
    """Raise DegenerateLinearization at the first (l, k) with S + k^2 = 0; return the smallest margin."""
    check_pairing(mu, delays)
    margin = math.inf
    for l in range(mu.components):
        for k in range(k_cutoff(mu) + 1):
            q = block_sum(l, k, mu, delays) + k * k
            if _sign(q, sign_tol) == 0:
                raise DegenerateLinearization(l, k, abs(float(q)))
            margin = min(margin, abs(float(q)))
    return margin


def nu(l: int, k: int, mu: MuTable, delays: DelaySet, sign_tol: float = DEFAULT_SIGN_TOL) -> int:
    """m_l if S < -k^2 else 0."""
    q = block_sum(l, k, mu, delays) + k * k
    s = _sign(q, sign_tol)
    if s == 0:
        raise DegenerateLinearization(l, k, abs(float(q)))
    return mu.multiplicities[l] if s < 0 else 0


@dataclass(frozen=True)
class SpectralProfile:
    mu: MuTable
    delays: DelaySet
    xi: dict
    nu: dict
    frak_m_l: tuple[int, ...]
    k_max: int
    sign_margin: float
    exact: bool
    degenerate: tuple[tuple[int, int], ...] = ()

    @property
    def negative(self) -> list[tuple[int, int]]:
        """(l, k) with nu(l, k) > 0, sorted."""
        return sorted(key for key, v in self.nu.items() if v)

    def sign(self, l: int, k: int) -> int:
        """Sign of xi_{l,k}: -1, 0 (degenerate) or +1."""
        if (l, k) in self.degenerate:
            return 0
        if k > self.k_max:
            return 1
        return -1 if self.nu[(l, k)] else 1


def spectral_profile(mu: MuTable, delays: DelaySet, sign_tol: float = DEFAULT_SIGN_TOL,
                     strict: bool = True) -> SpectralProfile:
    """xi, nu and frak_m_l on the whole grid l, k <= k_max.

    With ``strict`` a degenerate block raises; otherwise it is recorded in
    ``degenerate`` (counted as nu = 0) so that an audit can still be reported.
    """
    check_pairing(mu, delays)
    K = k_cutoff(mu)
    xs, ns, bad = {}, {}, []
    margin = math.inf
    for l in range(mu.components):
        for k in range(K + 1):
            S = block_sum(l, k, mu, delays)
            q = S + k * k
            s = _sign(q, sign_tol)
            if s == 0:
                if strict:
                    raise DegenerateLinearization(l, k, abs(float(q)))
                bad.append((l, k))
            else:
                margin = min(margin, abs(float(q)))
            xs[(l, k)] = (S - 1) / (k * k + 1) + 1 if isinstance(S, Cyclo) else 1 + (S - 1) / (k * k + 1)
            ns[(l, k)] = mu.multiplicities[l] if s < 0 else 0
    fm = tuple(sum(ns[(l, k)] for k in range(1, K + 1)) for l in range(mu.components))
    return SpectralProfile(mu, delays, xs, ns, fm, K, margin, _exact_path(mu, delays), tuple(bad))


def frak_m_l(profile: SpectralProfile, l: int) -> int:
    return profile.frak_m_l[l]


def frak_m_H(H: int, minus_degrees: Sequence, frak_m: Sequence[int]) -> int:
    """Sum of m_l over the l with coeff^H(deg_{U_l^-}) != 0."""
    total = 0
    for deg, ml in zip(minus_degrees, frak_m):
        value = getattr(deg, "value", deg)
        if value.coeff(H):
            total += ml
    return total


# commuting dense matrices --------------------------------------------------------


def commuting_mu(matrices: Sequence, cluster_tol: float = DEFAULT_CLUSTER_TOL, seed: int = 0) -> MuTable:
    """Common eigenspaces of pairwise commuting real matrices A_0..A_m.

    Eigenvectors of a random combination separate the joint eigenspaces; each
    eigenvector is then assigned its tuple of A_j eigenvalues, and equal tuples are
    merged into one space V_l with m_l = dim V_l.
    """
    mats = [np.asarray(A, dtype=float) for A in matrices]
    if not mats:
        raise ConfigError("no matrices given")
    n = mats[0].shape[0]
    if any(A.shape != (n, n) for A in mats):
        raise ConfigError("matrices must all be square of the same size")
    scale = max(1.0, max(float(np.abs(A).max()) for A in mats))
    for j in range(len(mats)):
        for jp in range(j + 1, len(mats)):
            r = float(np.abs(mats[j] @ mats[jp] - mats[jp] @ mats[j]).max())
            if r > cluster_tol * scale * scale:
                raise NonCommuting(j, jp, r)
    rng = np.random.default_rng(seed)
    coeffs = rng.uniform(0.5, 1.5, size=len(mats))
    C = sum(c * A for c, A in zip(coeffs, mats))
    w, V = np.linalg.eig(C)
    if np.abs(w.imag).max(initial=0.0) > cluster_tol * scale:
        raise ComplexSpectrum("the matrices have non-real eigenvalues")
    V = V.real
    if np.linalg.matrix_rank(V, tol=cluster_tol) < n:
        raise ComplexSpectrum("the matrices are not simultaneously diagonalizable")
    tuples = []
    for i in range(n):
        v = V[:, i] / np.linalg.norm(V[:, i])
        mus = []
        for A in mats:
            Av = A @ v
            mu = float(v @ Av)
            if np.abs(Av - mu * v).max() > math.sqrt(cluster_tol) * scale:
                raise ComplexSpectrum("a joint eigenvector could not be separated")
            mus.append(mu)
        tuples.append(mus)
    clusters: list[list] = []
    for t in sorted(tuples):
        for c in clusters:
            if all(abs(a - b) <= math.sqrt(cluster_tol) * scale for a, b in zip(c[0], t)):
                c[1] += 1
                c[2].append(t)
                break
        else:
            clusters.append([t, 1, [t]])
    rows = []
    for j in range(len(mats)):
        rows.append(tuple(float(np.mean([t[j] for t in c[2]])) for c in clusters))
    return MuTable(tuple(rows), tuple(c[1] for c in clusters), "commuting-matrices")
